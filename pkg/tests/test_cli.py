import json

import pytest

from parakat.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_core_example(capsys):
    code, out = run_cli(capsys, "core", "--n", "9", "--R", "3,8", "--tuple", "7,9,6,5,5,9,8,9,9")
    assert code == 0 and out == "(4,5,6;4,5,7,8,9;9)\n"


def test_map_psi_example(capsys):
    code, out = run_cli(capsys, "map", "psi", "--n", "9", "--R", "3,8", "--perm", "2,4,6,1,5,7,8,9,3")
    assert code == 0 and out == "(2,4,6;5,6,7,8,9;9)\n"


def test_count_cnr_example(capsys):
    code, out = run_cli(capsys, "count", "cnr", "--n", "4", "--R", "1,2,3")
    assert code == 0 and out == "14\n"


def test_count_default_r_is_empty(capsys):
    code, out = run_cli(capsys, "count", "cnr", "--n", "5")
    assert code == 0 and out == "1\n"


def test_critlist_json_round_trips_through_make(capsys):
    code, out = run_cli(
        capsys, "critlist", "--n", "9", "--R", "3,8", "--tuple", "2,7,5,8,6,6,9,9,9", "--json"
    )
    assert code == 0
    payload = out.strip()
    code, out = run_cli(capsys, "make", "--kind", "increasing", "--critlist", payload)
    assert code == 0 and out == "(2,4,5;4,5,6,8,9;9)\n"


def test_classify_text_and_json(capsys):
    code, out = run_cli(capsys, "classify", "--n", "9", "--R", "3,8", "--tuple", "2,4,6,4,5,6,7,9,9", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["gapless"] is True and report["shell"] is False


def test_perm_commands(capsys):
    code, out = run_cli(capsys, "perm", "avoiding", "--n", "9", "--R", "3,8", "--perm", "2,3,6,1,4,5,8,9,7")
    assert code == 0 and out == "true\n"
    code, out = run_cli(capsys, "perm", "lift", "--n", "9", "--R", "3,8", "--perm", "2,3,6,1,4,5,8,9,7")
    assert code == 0 and out == "2,3,6,5,4,1,8,9,7\n"
    code, out = run_cli(capsys, "perm", "lifts", "--n", "4", "--R", "2", "--perm", "2,4,1,3")
    assert code == 0 and out == "2,4,3,1\n"
    code, out = run_cli(capsys, "perm", "project", "--n", "4", "--R", "2", "--perm", "2,4,3,1")
    assert code == 0 and out == "(2,4;1,3)\n"


def test_tab_and_set_commands(capsys):
    code, out = run_cli(capsys, "tab", "key", "--n", "3", "--lambda", "2,1", "--perm", "3,1,2", "--json")
    assert code == 0
    assert json.loads(out) == {"lambda": [2, 1, 0], "n": 3, "columns": [[1, 3], [3]]}
    code, out = run_cli(capsys, "tab", "scan", "--n", "3", "--lambda", "2,1",
                        "--tab", json.dumps({"lambda": [2, 1, 0], "n": 3, "columns": [[1, 3], [2]]}))
    assert code == 0 and out == "2 2\n3\n"
    code, out = run_cli(capsys, "set", "demazure", "--n", "3", "--lambda", "2,1", "--perm", "3,1,2")
    assert code == 0 and out.startswith("5 tableaux\n")


def test_set_stream_ndjson(capsys):
    code, out = run_cli(
        capsys, "set", "rowbound", "--n", "3", "--lambda", "1,1", "--tuple", "3,3,3", "--stream"
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 3
    assert all(json.loads(line)["lambda"] == [1, 1, 0] for line in lines)


def test_poly_commands(capsys):
    code, out = run_cli(capsys, "poly", "rowboundsum", "--n", "3", "--lambda", "1,1", "--tuple", "3,3,3")
    assert code == 0 and out == "x1*x2 + x1*x3 + x2*x3\n"
    code, out = run_cli(capsys, "poly", "dd", "--n", "3", "--lambda", "1,1", "--perm", "2,3,1", "--json")
    assert code == 0
    assert json.loads(out)["terms"] == [
        {"exp": [1, 1, 0], "coef": 1},
        {"exp": [1, 0, 1], "coef": 1},
        {"exp": [0, 1, 1], "coef": 1},
    ]
    code, out = run_cli(capsys, "poly", "compare", "--n", "3", "--lambda", "1,1",
                        "--tuple", "2,3,3", "--perm", "2,3,1")
    assert code == 0 and out == "poly_eq=true gf_identical=true\n"


def test_verify_command(capsys):
    code, out = run_cli(capsys, "verify", "tables", "--csv")
    assert code == 0 and out.startswith("tables,pass,")
    code, out = run_cli(capsys, "verify", "convexity", "--max-n", "3", "--json")
    assert code == 0
    (report,) = json.loads(out)
    assert report["verdict"] == "pass" and report["counterexamples"] == []


def test_usage_error_exit_64(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["core", "--n", "9"])  # missing --tuple
    assert exc.value.code == 64


def test_domain_error_exit_65(capsys):
    code = main(["core", "--n", "3", "--tuple", "1,1,1"])
    assert code == 65
    err = capsys.readouterr().err
    assert err.startswith("NotUpper")


def test_cap_error_exit_3(capsys):
    code = main(["set", "demazure", "--n", "4", "--lambda", "3,2,1", "--perm", "4,3,2,1", "--cap", "5"])
    assert code == 3
    assert capsys.readouterr().err.startswith("CapExceeded")


def test_manifest_written_and_reproducible(tmp_path, capsys):
    m1 = tmp_path / "run1.json"
    m2 = tmp_path / "run2.json"
    argv = ["core", "--n", "9", "--R", "3,8", "--tuple", "7,9,6,5,5,9,8,9,9"]
    assert main(argv + ["--manifest", str(m1)]) == 0
    assert main(argv + ["--manifest", str(m2)]) == 0
    capsys.readouterr()
    a = json.loads(m1.read_text())
    b = json.loads(m2.read_text())
    assert a["output_sha256"] == b["output_sha256"]
    assert a["deterministic"] is True
    assert a["version"]


def test_config_file_cap(tmp_path, capsys):
    cfg = tmp_path / "parakat.conf"
    cfg.write_text("# comment\nconfig_version=1\ncap=5\n")
    code = main(["set", "demazure", "--n", "4", "--lambda", "3,2,1", "--perm", "4,3,2,1",
                 "--config", str(cfg)])
    assert code == 3
    capsys.readouterr()


def test_csv_rendering(capsys):
    code, out = run_cli(capsys, "core", "--n", "3", "--R", "2", "--tuple", "3,3,3", "--csv")
    assert code == 0 and out == "2,3,3\n"
    code, out = run_cli(capsys, "critlist", "--n", "3", "--R", "2", "--tuple", "3,3,3", "--csv")
    assert code == 0 and out == "1,2,3\n2,3,3\n"


def test_missing_value_argument_is_usage_error(capsys):
    code = main(["map", "psi", "--n", "9", "--R", "3,8"])
    assert code == 64
    assert "perm" in capsys.readouterr().err
    code = main(["core", "--n", "3", "--tuple", "a,b,c"])
    assert code == 64
    capsys.readouterr()


def test_tab_rowendmax_and_rowboundmax(capsys):
    code, out = run_cli(capsys, "tab", "rowendmax", "--n", "3", "--lambda", "1,1", "--tuple", "2,3,3")
    assert code == 0 and out == "2\n3\n"
    code, out = run_cli(capsys, "tab", "rowboundmax", "--n", "3", "--lambda", "1,1", "--tuple", "3,3,3")
    assert code == 0 and out == "2\n3\n"


def test_verify_all_parallel(capsys):
    code, out = run_cli(capsys, "verify", "all", "--max-n", "2", "--poly-max-n", "2",
                        "--csv", "--jobs", "2")
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 8 and all(",pass," in line for line in lines)


def test_set_z_and_ideal(capsys):
    code, out = run_cli(capsys, "set", "z", "--n", "3", "--lambda", "1,1", "--tuple", "2,3,3")
    assert code == 0 and out == "1 tableaux\n[[2, 3]]\n"
    tab = json.dumps({"lambda": [1, 1, 0], "n": 3, "columns": [[2, 3]]})
    code, out = run_cli(capsys, "set", "ideal", "--n", "3", "--lambda", "1,1", "--tab", tab)
    assert code == 0 and out.startswith("3 tableaux\n")


def test_make_floor_and_ceiling(capsys):
    code, out = run_cli(capsys, "critlist", "--n", "9", "--R", "3,8",
                        "--tuple", "3,4,6,4,5,6,8,9,9", "--json")
    assert code == 0
    payload = out.strip()
    code, out = run_cli(capsys, "make", "--kind", "floor", "--critlist", payload)
    assert code == 0 and out == "(3,4,6;6,6,6,8,9;9)\n"
    code, out = run_cli(capsys, "make", "--kind", "canopy", "--critlist", payload)
    assert code == 0 and out == "(9,4,6;9,9,6,9,9;9)\n"
