"""Named verification suites: each one exhaustively instantiates a theorem at
desk scale and reports pass/fail with counterexample payloads.

Suites are deterministic and idempotent.  A fail verdict always carries the
counterexamples, sorted so the first is canonical-minimal.  Results depend
only on the carrel set of a shape, so by default each suite visits one
canonical shape per carrel set (one column of every length); ``all_shapes``
re-enables the full sweep as a consistency check.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass

from .errors import BudgetExceeded, CapExceeded
from .polys import compose_alpha, demazure_poly_dd, gen_fn
from .rperms import (
    RPermutation,
    RSubset,
    count_cnr,
    enumerate_rperms,
    inversions,
    is_312_avoiding,
    is_r312_avoiding,
    minimal_lift,
    all_lifts,
    pi_map,
    project_rank_core,
    r_projection,
    rank_tuple,
)
from .rtuples import (
    RTuple,
    ceiling_map,
    classify,
    core,
    critical_list,
    enumerate_critical_lists,
    enumerate_tuples,
    floor_map,
    is_gapless,
)
from .tableaux import (
    Shape,
    content,
    count_tableaux,
    demazure_set,
    ideal,
    is_convex,
    is_key,
    key_of_perm,
    row_bound_max,
    row_bound_set,
    row_end_max,
)

MAX_SUITE_N = 8
DEFAULT_BUDGET = 1_000_000

SUITE_NAMES = (
    "tables",
    "bijections",
    "counts",
    "convexity",
    "coincidence",
    "polynomials",
    "lifts",
    "accidental",
)


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    params: tuple[tuple[str, object], ...]
    instances: int
    verdict: str
    counterexamples: tuple
    wall_time: float

    def __post_init__(self):
        expected = "fail" if self.counterexamples else "pass"
        if self.verdict != expected:
            raise ValueError(
                f"verdict {self.verdict!r} inconsistent with "
                f"{len(self.counterexamples)} counterexamples"
            )

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "params": dict(self.params),
            "instances": self.instances,
            "verdict": self.verdict,
            "counterexamples": list(self.counterexamples),
            "wall_time": self.wall_time,
        }

    def to_text(self) -> str:
        head = (
            f"suite={self.suite} verdict={self.verdict} "
            f"instances={self.instances} wall={self.wall_time:.2f}s "
            f"params={dict(self.params)}"
        )
        if not self.counterexamples:
            return head
        shown = self.counterexamples[:5]
        lines = [head, f"counterexamples ({len(self.counterexamples)} total):"]
        lines += ["  " + json.dumps(c, sort_keys=True) for c in shown]
        return "\n".join(lines)


class _Run:
    """Accumulates instance checks and counterexamples for one suite."""

    def __init__(self, suite: str, **params):
        self.suite = suite
        self.params = tuple(sorted(params.items()))
        self.instances = 0
        self.bad: list = []
        self.started = time.perf_counter()

    def check(self, ok: bool, payload: dict) -> None:
        self.instances += 1
        if not ok:
            self.bad.append(payload)

    def report(self) -> SuiteReport:
        bad = tuple(sorted(self.bad, key=lambda c: json.dumps(c, sort_keys=True)))
        return SuiteReport(
            suite=self.suite,
            params=self.params,
            instances=self.instances,
            verdict="fail" if bad else "pass",
            counterexamples=bad,
            wall_time=time.perf_counter() - self.started,
        )


def _check_suite_n(max_n: int) -> None:
    if max_n > MAX_SUITE_N:
        raise CapExceeded(f"suite range n={max_n} exceeds the cap of {MAX_SUITE_N}")


def subsets_of_interval(n: int):
    """All divider sets inside [n-1], by size then lexicographically."""
    for k in range(n):
        yield from itertools.combinations(range(1, n), k)


def canonical_shape(n: int, r_elements: tuple[int, ...]) -> Shape:
    """One column of each length in R: the smallest shape with that carrel set."""
    parts = tuple(sum(1 for q in r_elements if q >= i) for i in range(1, n + 1))
    return Shape(n, parts)


def shapes_in_range(max_n: int, max_col: int, all_shapes: bool = False) -> list[Shape]:
    """Shapes with at most max_n rows and columns no longer than needed.

    With ``all_shapes`` every partition with at most max_col columns per row
    appears; otherwise one canonical shape per (n, carrel set).
    """
    out: list[Shape] = []
    for n in range(1, max_n + 1):
        if all_shapes:
            for parts in itertools.combinations_with_replacement(
                range(max_col, -1, -1), n
            ):
                out.append(Shape(n, parts))
        else:
            for r_elements in subsets_of_interval(n):
                if len(r_elements) > max_col:
                    continue
                out.append(canonical_shape(n, r_elements))
    return out


def catalan(n: int) -> int:
    out = 1
    for i in range(n):
        out = out * 2 * (2 * i + 1) // (i + 2)
    return out


# ---------------------------------------------------------------------------
# suites


def suite_bijections(max_n: int = 6) -> SuiteReport:
    """Rank tuple vs its inverse, and core vs floor/ceiling, are mutual inverses."""
    _check_suite_n(max_n)
    run = _Run("bijections", max_n=max_n)
    for n in range(1, max_n + 1):
        for r_elements in subsets_of_interval(n):
            for p in enumerate_rperms(n, r_elements, avoiding_only=True):
                run.check(
                    pi_map(rank_tuple(p)) == p,
                    {"n": n, "R": list(r_elements), "pi": str(p), "law": "pi(psi)=id"},
                )
            for g in enumerate_tuples(n, r_elements, "gapless"):
                payload = {"n": n, "R": list(r_elements), "gamma": str(g)}
                run.check(
                    rank_tuple(pi_map(g)) == g, {**payload, "law": "psi(pi)=id"}
                )
                run.check(
                    core(floor_map(g)) == g, {**payload, "law": "core(floor)=id"}
                )
                run.check(
                    core(ceiling_map(g)) == g, {**payload, "law": "core(ceiling)=id"}
                )
    return run.report()


def _distinct_cores(tuples) -> int:
    return len({core(t).entries for t in tuples})


def suite_counts(max_n: int = 6, poly_max_n: int = 4) -> SuiteReport:
    """Equinumerosity of the families counted by the parabolic Catalan number.

    Tuple-level families run to max_n; the polynomial-level counts (distinct
    Demazure and flag Schur polynomials, coincident pairs) are far costlier
    and run to poly_max_n on the canonical shape of each carrel set.
    """
    _check_suite_n(max_n)
    run = _Run("counts", max_n=max_n, poly_max_n=poly_max_n)
    for n in range(1, max_n + 1):
        total_by_filter = 0
        total_by_gapless = 0
        for r_elements in subsets_of_interval(n):
            cnr = count_cnr(n, r_elements)
            total_by_filter += cnr
            base = {"n": n, "R": list(r_elements), "cnr": cnr}
            counts = {
                "gapless": sum(1 for _ in enumerate_tuples(n, r_elements, "gapless")),
                "flag_critical_lists": sum(
                    1 for _ in enumerate_critical_lists(n, r_elements, flag_only=True)
                ),
                "canopy": sum(1 for _ in enumerate_tuples(n, r_elements, "canopy")),
                "floor": sum(1 for _ in enumerate_tuples(n, r_elements, "floor")),
                "ceiling": sum(1 for _ in enumerate_tuples(n, r_elements, "ceiling")),
                "classes_gapless_core": _distinct_cores(
                    enumerate_tuples(n, r_elements, "gapless-core")
                ),
                "classes_upper_flags": _distinct_cores(
                    enumerate_tuples(n, r_elements, "flag")
                ),
            }
            total_by_gapless += counts["gapless"]
            for family, value in counts.items():
                run.check(value == cnr, {**base, "family": family, "count": value})
            if r_elements == tuple(range(1, n)):
                run.check(
                    cnr == catalan(n), {**base, "family": "catalan", "count": cnr}
                )
            if n <= poly_max_n:
                shape = canonical_shape(n, r_elements)
                avoiding = [
                    p for p in enumerate_rperms(n, r_elements) if is_r312_avoiding(p)
                ]
                d_polys = {gen_fn(demazure_set(p, shape)).poly for p in avoiding}
                run.check(
                    len(d_polys) == cnr,
                    {**base, "family": "demazure_polynomials", "count": len(d_polys)},
                )
                flag_polys = {
                    gen_fn(row_bound_set(phi, shape)).poly
                    for phi in enumerate_tuples(n, r_elements, "flag")
                }
                run.check(
                    len(flag_polys) == cnr,
                    {**base, "family": "flag_schur_polynomials", "count": len(flag_polys)},
                )
                s_sets = {
                    row_bound_set(delta, shape).tableaux
                    for delta in enumerate_tuples(n, r_elements, "increasing")
                }
                d_sets = {
                    demazure_set(p, shape).tableaux
                    for p in enumerate_rperms(n, r_elements)
                }
                coincident = len(s_sets & d_sets)
                run.check(
                    coincident == cnr,
                    {**base, "family": "coincident_pairs", "count": coincident},
                )
        run.check(
            total_by_filter == total_by_gapless,
            {
                "n": n,
                "family": "total_two_routes",
                "by_avoidance_filter": total_by_filter,
                "by_gapless_enumeration": total_by_gapless,
            },
        )
    return run.report()


def suite_convexity(max_n: int = 4, max_col: int = 3, all_shapes: bool = False) -> SuiteReport:
    """Demazure sets are convex exactly for avoiding indexes, exactly as ideals."""
    _check_suite_n(max_n)
    run = _Run("convexity", max_n=max_n, max_col=max_col, all_shapes=all_shapes)
    for shape in shapes_in_range(max_n, max_col, all_shapes):
        for p in enumerate_rperms(shape.n, shape.r_subset.elements):
            y = key_of_perm(p, shape)
            dset = demazure_set(p, shape)
            avoiding = is_r312_avoiding(p)
            convex = is_convex(dset)
            is_ideal = dset == ideal(y)
            run.check(
                convex == avoiding == is_ideal,
                {
                    "shape": list(shape.parts),
                    "n": shape.n,
                    "pi": str(p),
                    "avoiding": avoiding,
                    "convex": convex,
                    "equals_ideal": is_ideal,
                },
            )
    return run.report()


def suite_coincidence(max_n: int = 4, max_col: int = 3, all_shapes: bool = False) -> SuiteReport:
    """Row-bound sets arise as Demazure sets exactly on gapless cores.

    For every upper bound tuple: if its core is gapless the unique matching
    index is the image of the core, the maxima agree, and no other index
    matches; otherwise no index matches at all.
    """
    _check_suite_n(max_n)
    run = _Run("coincidence", max_n=max_n, max_col=max_col, all_shapes=all_shapes)
    for shape in shapes_in_range(max_n, max_col, all_shapes):
        r_elements = shape.r_subset.elements
        perms = list(enumerate_rperms(shape.n, r_elements))
        dsets = {p: demazure_set(p, shape) for p in perms}
        gapless_images = {}
        for b in enumerate_tuples(shape.n, r_elements, "upper"):
            sset = row_bound_set(b, shape)
            delta = core(b)
            matches = [p for p in perms if dsets[p] == sset]
            payload = {
                "shape": list(shape.parts),
                "n": shape.n,
                "beta": str(b),
                "core": str(delta),
                "matches": [str(p) for p in matches],
            }
            if is_gapless(delta):
                p = pi_map(delta)
                ok = matches == [p] and row_bound_max(b, shape) == key_of_perm(p, shape)
                run.check(ok, payload)
                gapless_images[delta.entries] = sset.tableaux
            else:
                run.check(matches == [], payload)
        run.check(
            len(gapless_images) == len(set(gapless_images.values())),
            {
                "shape": list(shape.parts),
                "n": shape.n,
                "law": "gapless tuples index coincident sets faithfully",
            },
        )
    return run.report()


def suite_polynomials(max_n: int = 4, max_col: int = 3, all_shapes: bool = False) -> SuiteReport:
    """Polynomial-level laws: oracle agreement, set-level coincidences,
    injectivity of the two indexings, and content shape-detection."""
    _check_suite_n(max_n)
    run = _Run("polynomials", max_n=max_n, max_col=max_col, all_shapes=all_shapes)
    s_poly_owner: dict = {}
    d_poly_owner: dict = {}
    for shape in shapes_in_range(max_n, max_col, all_shapes):
        r_elements = shape.r_subset.elements
        shape_key = (shape.n, shape.parts)
        perms = list(enumerate_rperms(shape.n, r_elements))
        d_handles = {p: gen_fn(demazure_set(p, shape), label=f"d({p})") for p in perms}
        base = {"shape": list(shape.parts), "n": shape.n}

        for p in perms:
            dd = demazure_poly_dd(p, shape)
            run.check(
                d_handles[p].poly == dd,
                {**base, "pi": str(p), "law": "scanning route equals recursion route"},
            )
            run.check(
                compose_alpha(p, shape) == content(key_of_perm(p, shape)),
                {**base, "pi": str(p), "law": "key content is the placed composition"},
            )
            owner = d_poly_owner.setdefault((shape.n, d_handles[p].poly), (shape_key, p))
            run.check(
                owner == (shape_key, p),
                {**base, "pi": str(p), "law": "demazure polynomials are faithful"},
            )

        cores = list(enumerate_tuples(shape.n, r_elements, "increasing"))
        s_handles = {
            delta.entries: gen_fn(row_bound_set(delta, shape), label=f"s({delta})")
            for delta in cores
        }
        for b in enumerate_tuples(shape.n, r_elements, "upper"):
            # every bound's set is its core's set, so the core scan is exhaustive
            run.check(
                row_bound_set(b, shape) == s_handles[core(b).entries].tableau_set,
                {**base, "beta": str(b), "law": "bounds and their core agree"},
            )
        for delta in cores:
            h = s_handles[delta.entries]
            run.check(
                h.poly.total_degrees() <= {shape.size}
                and h.poly.coefficient(shape.parts) == 1,
                {**base, "core": str(delta), "law": "degree and leading weight"},
            )
            owner = s_poly_owner.setdefault((shape.n, h.poly), shape_key)
            run.check(
                owner == shape_key,
                {**base, "core": str(delta), "law": "row bound sums detect the shape"},
            )

        avoiding = [p for p in perms if is_r312_avoiding(p)]
        for p in avoiding:
            gamma = rank_tuple(p)
            run.check(
                d_handles[p].tableau_set == row_bound_set(gamma, shape),
                {**base, "pi": str(p), "law": "avoiding index matches its rank bounds"},
            )
        for eta in enumerate_tuples(shape.n, r_elements, "gapless-core"):
            p = pi_map(core(eta))
            run.check(
                row_bound_set(eta, shape) == d_handles[p].tableau_set,
                {**base, "eta": str(eta), "law": "gapless-core bounds match an index"},
            )

        avoiding_set = set(avoiding)
        for delta in cores:
            h = s_handles[delta.entries]
            for p in perms:
                if h.poly == d_handles[p].poly:
                    ok = (
                        p in avoiding_set
                        and is_gapless(delta)
                        and delta == rank_tuple(p)
                        and row_end_max(delta, shape) == key_of_perm(p, shape)
                        and h.tableau_set == d_handles[p].tableau_set
                    )
                    run.check(
                        ok,
                        {
                            **base,
                            "core": str(delta),
                            "pi": str(p),
                            "law": "polynomial coincidence forces the set coincidence",
                        },
                    )
            if not is_gapless(delta):
                continue
            for other in cores:
                if s_handles[other.entries].poly == h.poly:
                    run.check(
                        other == delta,
                        {
                            **base,
                            "core": str(other),
                            "eta": str(delta),
                            "law": "gapless-core sums admit no accidental equals",
                        },
                    )

        for phi in enumerate_tuples(shape.n, r_elements, "flag"):
            run.check(
                is_key(row_bound_max(phi, shape)),
                {**base, "phi": str(phi), "law": "row bound max of a flag is a key"},
            )
    return run.report()


def suite_lifts(max_n: int = 5) -> SuiteReport:
    """Minimal and general 312-avoiding lifts of avoiding carrel permutations."""
    _check_suite_n(max_n)
    run = _Run("lifts", max_n=max_n)
    for n in range(1, max_n + 1):
        perms312 = [
            w
            for w in itertools.permutations(range(1, n + 1))
            if is_312_avoiding(w)
        ]
        for r_elements in subsets_of_interval(n):
            rs = RSubset(n, r_elements)
            base = {"n": n, "R": list(r_elements)}
            for w in perms312:
                run.check(
                    is_r312_avoiding(r_projection(w, rs)),
                    {**base, "sigma": list(w), "law": "projection preserves avoidance"},
                )
            for p in enumerate_rperms(n, r_elements, avoiding_only=True):
                payload = {**base, "pi": str(p)}
                ml = minimal_lift(p)
                lifts = list(all_lifts(p))
                oracle = sorted(w for w in perms312 if r_projection(w, rs) == p)
                run.check(lifts == oracle, {**payload, "law": "lift recipe equals filter"})
                run.check(
                    is_312_avoiding(ml) and r_projection(ml, rs) == p,
                    {**payload, "law": "minimal lift is an avoiding lift"},
                )
                lm = inversions(ml)
                run.check(
                    ml in set(lifts)
                    and all(inversions(w) > lm for w in lifts if w != ml),
                    {**payload, "law": "minimal lift has strictly least length"},
                )
                psi = rank_tuple(p)
                run.check(
                    all(project_rank_core(w, rs) == psi for w in lifts),
                    {**payload, "law": "all lifts share the projected rank core"},
                )
    return run.report()


def search_accidental(
    max_n: int = 4,
    max_col: int = 3,
    budget: int | None = None,
    all_shapes: bool = False,
) -> SuiteReport:
    """Hunt for equal row-bound sums whose bounds are inequivalent.

    Only bounds outside the gapless-core family can participate, so the scan
    runs over non-gapless cores; a find is reported as a counterexample
    payload (it would answer an open search, so it is never suppressed).
    """
    _check_suite_n(max_n)
    limit = DEFAULT_BUDGET if budget is None else budget
    run = _Run("accidental", max_n=max_n, max_col=max_col, budget=limit, all_shapes=all_shapes)
    for shape in shapes_in_range(max_n, max_col, all_shapes):
        if count_tableaux(shape) > limit:
            raise BudgetExceeded(
                f"shape {shape} needs {count_tableaux(shape)} tableaux, over budget {limit}"
            )
        by_poly: dict = {}
        for delta in enumerate_tuples(shape.n, shape.r_subset.elements, "increasing"):
            if is_gapless(delta):
                continue
            poly = gen_fn(row_bound_set(delta, shape)).poly
            by_poly.setdefault(poly, []).append(delta)
        for poly, deltas in by_poly.items():
            payload = {
                "shape": list(shape.parts),
                "n": shape.n,
                "cores": [str(d) for d in deltas],
                "polynomial": str(poly),
            }
            run.check(len(deltas) == 1, payload)
    return run.report()


def suite_tables() -> SuiteReport:
    """Byte-exact fidelity of the worked classification and map examples."""
    run = _Run("tables")
    classify_rows = [
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
    ]
    for entries, family, expected in classify_rows:
        t = RTuple.of(9, (3, 8), entries)
        got = getattr(classify(t), family)
        run.check(
            got == expected,
            {"tuple": str(t), "family": family, "expected": expected, "got": got},
        )
    perm_rows = [
        ((2, 3, 6, 1, 4, 5, 8, 9, 7), True),
        ((2, 4, 6, 1, 3, 7, 8, 9, 5), False),
    ]
    for entries, expected in perm_rows:
        p = RPermutation.of(9, (3, 8), entries)
        run.check(
            is_r312_avoiding(p) == expected,
            {"perm": str(p), "expected": expected},
        )
    map_rows = [
        ("psi", (2, 4, 6, 1, 5, 7, 8, 9, 3), "(2,4,6;5,6,7,8,9;9)"),
        ("core", (7, 9, 6, 5, 5, 9, 8, 9, 9), "(4,5,6;4,5,7,8,9;9)"),
        ("pi", (2, 4, 6, 4, 5, 6, 7, 9, 9), "(2,4,6;1,3,5,7,9;8)"),
        ("floor", (3, 4, 6, 4, 5, 6, 8, 9, 9), "(3,4,6;6,6,6,8,9;9)"),
        ("ceiling", (3, 4, 5, 4, 5, 6, 8, 9, 9), "(5,5,5;6,6,6,9,9;9)"),
    ]
    for name, entries, expected in map_rows:
        if name == "psi":
            got = str(rank_tuple(RPermutation.of(9, (3, 8), entries)))
        elif name == "core":
            got = str(core(RTuple.of(9, (3, 8), entries)))
        elif name == "pi":
            got = str(pi_map(RTuple.of(9, (3, 8), entries)))
        elif name == "floor":
            got = str(floor_map(RTuple.of(9, (3, 8), entries)))
        else:
            got = str(ceiling_map(RTuple.of(9, (3, 8), entries)))
        run.check(got == expected, {"map": name, "expected": expected, "got": got})
    running = RTuple.of(9, (3, 8), (2, 7, 5, 8, 6, 6, 9, 9, 9))
    run.check(
        str(critical_list(running)) == "({(1,2),(3,5)};{(6,6),(8,9)};{(9,9)})",
        {"map": "critical_list", "got": str(critical_list(running))},
    )
    run.check(
        str(core(running)) == "(2,4,5;4,5,6,8,9;9)",
        {"map": "core_running_example", "got": str(core(running))},
    )
    return run.report()


def dimension_tables(shape: Shape) -> dict:
    """Sizes of every Demazure set and every row-bound set class on a shape."""
    r_elements = shape.r_subset.elements
    demazure = [
        {"pi": str(p), "size": len(demazure_set(p, shape))}
        for p in enumerate_rperms(shape.n, r_elements)
    ]
    row_bound = [
        {"alpha": str(a), "size": len(row_bound_set(a, shape))}
        for a in enumerate_tuples(shape.n, r_elements, "increasing")
    ]
    return {
        "shape": list(shape.parts),
        "n": shape.n,
        "demazure": demazure,
        "row_bound": row_bound,
    }


def run_suite(name: str, **kwargs) -> SuiteReport:
    """Dispatch a suite by name with its keyword parameters."""
    table = {
        "tables": suite_tables,
        "bijections": suite_bijections,
        "counts": suite_counts,
        "convexity": suite_convexity,
        "coincidence": suite_coincidence,
        "polynomials": suite_polynomials,
        "lifts": suite_lifts,
        "accidental": search_accidental,
    }
    if name not in table:
        raise ValueError(f"unknown suite {name!r}; expected one of {SUITE_NAMES}")
    return table[name](**kwargs)
