import pytest

from parakat.errors import BudgetExceeded, CapExceeded
from parakat.tableaux import Shape
from parakat.verify import (
    SuiteReport,
    _Run,
    canonical_shape,
    catalan,
    dimension_tables,
    run_suite,
    search_accidental,
    shapes_in_range,
    subsets_of_interval,
    suite_bijections,
    suite_coincidence,
    suite_convexity,
    suite_counts,
    suite_lifts,
    suite_polynomials,
    suite_tables,
)


def test_catalan_values():
    assert [catalan(n) for n in range(1, 7)] == [1, 2, 5, 14, 42, 132]


def test_subsets_enumeration_order():
    assert list(subsets_of_interval(3)) == [(), (1,), (2,), (1, 2)]


def test_canonical_shape():
    assert canonical_shape(4, (1, 3)).parts == (2, 1, 1, 0)
    assert canonical_shape(4, ()).parts == (0, 0, 0, 0)
    assert canonical_shape(4, (1, 2, 3)).parts == (3, 2, 1, 0)
    for n in range(1, 6):
        for r in subsets_of_interval(n):
            assert canonical_shape(n, r).r_subset.elements == r


def test_shapes_in_range_dedup_vs_all():
    dedup = shapes_in_range(3, 3)
    full = shapes_in_range(3, 3, all_shapes=True)
    assert len(dedup) < len(full)
    assert {(s.n, s.r_subset.elements) for s in dedup} == {
        (s.n, s.r_subset.elements) for s in full
    }


def test_all_suites_pass_small():
    assert suite_tables().passed
    assert suite_bijections(4).passed
    assert suite_counts(4, poly_max_n=3).passed
    assert suite_convexity(3, 3).passed
    assert suite_coincidence(3, 3).passed
    assert suite_polynomials(3, 3).passed
    assert suite_lifts(4).passed
    assert search_accidental(3, 3).passed


def test_suites_are_deterministic():
    a = suite_convexity(3, 3)
    b = suite_convexity(3, 3)
    assert (a.suite, a.params, a.instances, a.verdict, a.counterexamples) == (
        b.suite,
        b.params,
        b.instances,
        b.verdict,
        b.counterexamples,
    )


def test_suite_cap():
    with pytest.raises(CapExceeded):
        suite_bijections(20)
    with pytest.raises(CapExceeded):
        suite_convexity(99, 3)


def test_accidental_budget():
    with pytest.raises(BudgetExceeded):
        search_accidental(3, 3, budget=0)


def test_report_invariant_enforced():
    with pytest.raises(ValueError):
        SuiteReport("x", (), 1, "pass", ({"bad": 1},), 0.0)
    with pytest.raises(ValueError):
        SuiteReport("x", (), 1, "fail", (), 0.0)


def test_failing_run_reports_sorted_counterexamples():
    run = _Run("demo", scope=1)
    run.check(True, {"id": 0})
    run.check(False, {"id": 2})
    run.check(False, {"id": 1})
    report = run.report()
    assert report.verdict == "fail" and not report.passed
    assert report.instances == 3
    assert [c["id"] for c in report.counterexamples] == [1, 2]
    assert "counterexamples" in report.to_text()
    assert report.to_json_dict()["params"] == {"scope": 1}


def test_run_suite_dispatch():
    assert run_suite("tables").passed
    with pytest.raises(ValueError):
        run_suite("nope")


def test_dimension_tables():
    tables = dimension_tables(Shape.of(3, (2, 1)))
    assert tables["n"] == 3 and tables["shape"] == [2, 1, 0]
    assert len(tables["demazure"]) == 6  # all carrel-sorted permutations
    assert len(tables["row_bound"]) == 6  # all increasing upper tuples
    sizes = {row["pi"]: row["size"] for row in tables["demazure"]}
    assert sizes["(3;1;2)"] == 5
    assert max(row["size"] for row in tables["row_bound"]) == 8
