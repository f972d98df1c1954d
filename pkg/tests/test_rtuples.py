import itertools

import pytest
from hypothesis import given, settings, strategies as st

from parakat.errors import DomainMismatch, NotFlagCriticalList, NotGapless, NotUpper
from parakat.rtuples import (
    CriticalList,
    RSubset,
    RTuple,
    ceiling_map,
    class_interval,
    classify,
    core,
    critical_list,
    enumerate_critical_lists,
    enumerate_tuples,
    equivalent,
    floor_map,
    from_critical_list,
    is_gapless,
    is_gapless_staircase,
    is_r_increasing,
    is_upper,
)

T38 = lambda entries: RTuple.of(9, (3, 8), entries)


def all_r_subsets(n):
    for k in range(n):
        yield from itertools.combinations(range(1, n), k)


# ---------------------------------------------------------------------------
# worked examples


def test_running_example_critical_list_and_core():
    t = T38((2, 7, 5, 8, 6, 6, 9, 9, 9))
    assert str(critical_list(t)) == "({(1,2),(3,5)};{(6,6),(8,9)};{(9,9)})"
    assert str(core(t)) == "(2,4,5;4,5,6,8,9;9)"


def test_core_map_example():
    assert str(core(T38((7, 9, 6, 5, 5, 9, 8, 9, 9)))) == "(4,5,6;4,5,7,8,9;9)"


@pytest.mark.parametrize(
    "entries,family,expected",
    [
        ((2, 6, 7, 4, 5, 7, 8, 9, 9), "increasing", True),
        ((3, 5, 5, 6, 4, 7, 8, 9, 9), "increasing", False),
        ((4, 5, 5, 4, 8, 7, 8, 8, 9), "gapless_core", True),
        ((4, 5, 5, 4, 8, 7, 8, 9, 9), "gapless_core", False),
        ((2, 4, 6, 4, 5, 6, 7, 9, 9), "gapless", True),
        ((2, 4, 6, 4, 6, 7, 8, 9, 9), "gapless", False),
        ((2, 4, 5, 5, 5, 6, 8, 9, 9), "floor_flag", True),
        ((2, 4, 5, 5, 5, 8, 8, 9, 9), "floor_flag", False),
        ((1, 4, 4, 5, 5, 9, 9, 9, 9), "ceiling_flag", True),
        ((1, 4, 4, 5, 5, 7, 8, 9, 9), "ceiling_flag", False),
    ],
)
def test_classification_table_rows(entries, family, expected):
    assert getattr(classify(T38(entries)), family) is expected


def test_gapless_core_example_is_not_gapless():
    rep = classify(T38((4, 5, 5, 4, 8, 7, 8, 8, 9)))
    assert rep.gapless_core and not rep.gapless


def test_floor_and_ceiling_map_examples():
    assert str(floor_map(T38((3, 4, 6, 4, 5, 6, 8, 9, 9)))) == "(3,4,6;6,6,6,8,9;9)"
    assert str(ceiling_map(T38((3, 4, 5, 4, 5, 6, 8, 9, 9)))) == "(5,5,5;6,6,6,9,9;9)"


def test_full_r_floor_and_ceiling_are_identity():
    n = 4
    full = tuple(range(1, n))
    for g in enumerate_tuples(n, full, "gapless"):
        assert floor_map(g) == g
        assert ceiling_map(g) == g


def test_critical_list_identity_full_r():
    n = 5
    t = RTuple.of(n, tuple(range(1, n)), tuple(range(1, n + 1)))
    c = critical_list(t)
    assert c.carrels == tuple(((i, i),) for i in range(1, n + 1))


def test_critical_list_hand_run_n3():
    c = critical_list(RTuple.of(3, (2,), (3, 3, 3)))
    assert c.carrels == (((2, 3),), ((3, 3),))
    assert from_critical_list(c, "increasing") == RTuple.of(3, (2,), (2, 3, 3))


def test_shell_construction_example():
    c = CriticalList(RSubset(3, (2,)), (((2, 3),), ((3, 3),)))
    shell = from_critical_list(c, "shell")
    assert shell == RTuple.of(3, (2,), (3, 3, 3))
    assert critical_list(shell) == c


def test_from_critical_list_flag_only_kinds_reject_nonflag():
    # critical entries 4, 3, 4 are not weakly increasing
    c = critical_list(RTuple.of(4, (1, 3), (4, 2, 3, 4)))
    assert not c.is_flag
    for kind in ("gapless", "canopy", "floor", "ceiling"):
        with pytest.raises(NotFlagCriticalList):
            from_critical_list(c, kind)
    from_critical_list(c, "increasing")
    from_critical_list(c, "shell")


def test_equivalent_examples():
    a = RTuple.of(3, (2,), (3, 3, 3))
    b = RTuple.of(3, (2,), (2, 3, 3))
    assert equivalent(a, b)
    assert equivalent(a, a)
    x = T38((2, 4, 6, 4, 5, 6, 7, 9, 9))
    y = T38((2, 3, 6, 4, 5, 6, 7, 9, 9))
    assert equivalent(x, y) == (core(x) == core(y))
    with pytest.raises(DomainMismatch):
        equivalent(a, RTuple.of(3, (1,), (2, 3, 3)))


def test_class_interval_examples():
    lo, hi = class_interval(RTuple.of(3, (2,), (3, 3, 3)))
    assert lo == RTuple.of(3, (2,), (2, 3, 3))
    assert hi == RTuple.of(3, (2,), (3, 3, 3))
    ui = RTuple.of(3, (2,), (1, 2, 3))
    assert class_interval(ui)[0] == ui


def test_class_interval_is_the_class_exhaustive():
    for n in range(1, 5):
        for r in all_r_subsets(n):
            tuples = list(enumerate_tuples(n, r, "upper"))
            for t in tuples:
                lo, hi = class_interval(t)
                boxed = {
                    u
                    for u in tuples
                    if all(a <= e <= b for a, e, b in zip(lo.entries, u.entries, hi.entries))
                }
                cls = {u for u in tuples if core(u) == core(t)}
                assert boxed == cls


def test_gapless_core_class_extremes():
    for n in range(1, 6):
        for r in all_r_subsets(n):
            for t in enumerate_tuples(n, r, "gapless-core"):
                lo, hi = class_interval(t)
                assert is_gapless(lo)
                assert classify(hi).canopy


# ---------------------------------------------------------------------------
# counting


def test_increasing_count_formula():
    assert sum(1 for _ in enumerate_tuples(9, (3, 8), "increasing")) == 504


def test_trivial_and_full_cases():
    assert sum(1 for _ in enumerate_tuples(5, (), "increasing")) == 1
    assert sum(1 for _ in enumerate_tuples(4, (1, 2, 3), "gapless")) == 14


def test_upper_count_is_factorial():
    import math

    for n in range(1, 6):
        assert sum(1 for _ in enumerate_tuples(n, (), "upper")) == math.factorial(n)


def test_enumeration_is_lexicographic_and_duplicate_free():
    for family in ("upper", "flag", "increasing", "gapless", "shell"):
        seen = [t.entries for t in enumerate_tuples(4, (2,), family)]
        assert seen == sorted(set(seen))


def test_prefix_sharding_partitions_enumeration():
    full = [t.entries for t in enumerate_tuples(4, (2,), "gapless")]
    sharded = []
    for first in range(1, 5):
        sharded += [t.entries for t in enumerate_tuples(4, (2,), "gapless", prefix=(first,))]
    assert sharded == full


def test_critical_list_enumeration_counts():
    import math

    for n in range(1, 6):
        for r in all_r_subsets(n):
            sizes = RSubset(n, r).block_sizes
            expected = math.factorial(n)
            for p in sizes:
                expected //= math.factorial(p)
            assert sum(1 for _ in enumerate_critical_lists(n, r)) == expected
            flags = sum(1 for _ in enumerate_critical_lists(n, r, flag_only=True))
            gapless = sum(1 for _ in enumerate_tuples(n, r, "gapless"))
            assert flags == gapless


def test_distinct_core_counts():
    import math

    for n in range(1, 6):
        for r in all_r_subsets(n):
            sizes = RSubset(n, r).block_sizes
            expected = math.factorial(n)
            for p in sizes:
                expected //= math.factorial(p)
            cores = {core(t).entries for t in enumerate_tuples(n, r, "upper")}
            assert len(cores) == expected
            gc_cores = {core(t).entries for t in enumerate_tuples(n, r, "gapless-core")}
            assert len(gc_cores) == sum(1 for _ in enumerate_tuples(n, r, "gapless"))


# ---------------------------------------------------------------------------
# laws


def test_core_idempotent_and_below_n6():
    for n in range(1, 7):
        for r in all_r_subsets(n):
            for t in enumerate_tuples(n, r, "upper"):
                d = core(t)
                assert core(d) == d
                assert all(x <= y for x, y in zip(d.entries, t.entries))
                assert critical_list(d) == critical_list(t)


def test_gapless_characterizations_agree_n6():
    for n in range(1, 7):
        for r in all_r_subsets(n):
            for t in enumerate_tuples(n, r, "increasing"):
                assert is_gapless(t) == is_gapless_staircase(t)


def test_construction_round_trips():
    for n in range(1, 6):
        for r in all_r_subsets(n):
            for c in enumerate_critical_lists(n, r):
                kinds = ["increasing", "shell"]
                if c.is_flag:
                    kinds += ["gapless", "canopy", "floor", "ceiling"]
                for kind in kinds:
                    t = from_critical_list(c, kind)
                    assert critical_list(t) == c
                    assert classify(t).as_dict()[
                        {
                            "increasing": "increasing",
                            "shell": "shell",
                            "gapless": "gapless",
                            "canopy": "canopy",
                            "floor": "floor_flag",
                            "ceiling": "ceiling_flag",
                        }[kind]
                    ]


def test_floor_ceiling_bound_flags():
    for n in range(1, 6):
        for r in all_r_subsets(n):
            for phi in enumerate_tuples(n, r, "flag"):
                g = core(phi)
                assert is_gapless(g)
                lo = floor_map(g)
                hi = ceiling_map(g)
                assert all(a <= b <= c for a, b, c in zip(lo.entries, phi.entries, hi.entries))


def test_not_upper_errors():
    bad = RTuple.of(3, (2,), (1, 1, 1))
    with pytest.raises(NotUpper):
        critical_list(bad)
    with pytest.raises(NotUpper):
        core(bad)
    rep = classify(bad)
    assert not rep.upper and not rep.gapless_core and rep.flag


def test_not_gapless_errors():
    t = RTuple.of(4, (1, 3), (4, 2, 3, 4))  # increasing upper, non-flag critical list
    with pytest.raises(NotGapless):
        floor_map(t)
    with pytest.raises(NotGapless):
        ceiling_map(t)


def test_validation_rejects_bad_inputs():
    with pytest.raises(ValueError):
        RSubset(4, (3, 1))
    with pytest.raises(ValueError):
        RSubset(4, (4,))
    with pytest.raises(ValueError):
        RTuple.of(3, (), (1, 2))
    with pytest.raises(ValueError):
        RTuple.of(3, (), (0, 2, 3))
    with pytest.raises(ValueError):
        CriticalList(RSubset(3, (2,)), (((2, 3), (1, 1)), ((3, 3),)))


# ---------------------------------------------------------------------------
# serialization


def test_json_round_trips():
    t = T38((2, 7, 5, 8, 6, 6, 9, 9, 9))
    assert RTuple.from_json_dict(t.to_json_dict()) == t
    c = critical_list(t)
    assert CriticalList.from_json_dict(c.to_json_dict()) == c
    assert t.to_json_dict() == {
        "n": 9,
        "R": [3, 8],
        "entries": [2, 7, 5, 8, 6, 6, 9, 9, 9],
    }
    assert c.to_json_dict() == {
        "carrels": [[[1, 2], [3, 5]], [[6, 6], [8, 9]], [[9, 9]]]
    }


def test_text_display():
    assert str(T38((2, 7, 5, 8, 6, 6, 9, 9, 9))) == "(2,7,5;8,6,6,9,9;9)"
    assert str(RTuple.of(3, (), (1, 2, 3))) == "(1,2,3)"


# ---------------------------------------------------------------------------
# property tests


@st.composite
def upper_tuples(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    r = ()
    if n > 1:
        r = tuple(sorted(draw(st.sets(st.integers(1, n - 1), max_size=n - 1))))
    entries = tuple(draw(st.integers(i, n)) for i in range(1, n + 1))
    return RTuple.of(n, r, entries)


@settings(max_examples=200, deadline=None)
@given(upper_tuples())
def test_core_laws_hold_on_random_tuples(t):
    d = core(t)
    assert is_upper(d) and is_r_increasing(d)
    assert core(d) == d
    assert critical_list(d) == critical_list(t)
    lo, hi = class_interval(t)
    assert lo == d
    assert all(a <= e <= b for a, e, b in zip(lo.entries, t.entries, hi.entries))
    assert equivalent(t, hi)


@settings(max_examples=200, deadline=None)
@given(upper_tuples())
def test_serialization_round_trip_random(t):
    assert RTuple.from_json_dict(t.to_json_dict()) == t
    c = critical_list(t)
    assert CriticalList.from_json_dict(c.to_json_dict()) == c
