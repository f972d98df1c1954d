"""Carrel-divided tuples over [n] and their critical-list machinery.

A subset R = {q_1 < ... < q_r} of [n-1] splits the positions [n] into r+1
consecutive "carrels" (q_{h-1}, q_h], with q_0 = 0 and q_{r+1} = n.  An
R-tuple is an n-tuple with entries from [n] read against those dividers;
its text form shows the dividers as semicolons, e.g. ``(2,7,5;8,6,6,9,9;9)``
for n = 9 and R = {3, 8}.

Positions and values are 1-based everywhere in the public API.

The central structure is the critical list of an upper tuple: the per-carrel
skeleton of (index, entry) pairs that survives when each entry is lowered as
far as the entries to its right allow.  Two upper tuples are equivalent
exactly when they share a critical list; the minimum of such a class is the
core, the maximum is the shell, and when the critical list is a flag the
class meets the upper flags in the interval between the floor flag and the
ceiling flag.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, fields
from typing import Iterator, Sequence

from .errors import DomainMismatch, NotFlagCriticalList, NotGapless, NotUpper

FAMILIES = (
    "upper",
    "flag",
    "increasing",
    "gapless",
    "gapless-core",
    "floor",
    "ceiling",
    "shell",
    "canopy",
)

CONSTRUCTION_KINDS = ("increasing", "shell", "gapless", "canopy", "floor", "ceiling")

# Constructions that only make sense for flag critical lists.
_FLAG_ONLY_KINDS = frozenset(("gapless", "canopy", "floor", "ceiling"))


def rank_from_largest(values, d: int) -> int:
    """The d-th largest element of a set of integers (d = 1 gives the max).

    >>> rank_from_largest({1, 4, 7}, 1)
    7
    >>> rank_from_largest({1, 4, 7}, 3)
    1
    """
    return sorted(values, reverse=True)[d - 1]


@dataclass(frozen=True)
class RSubset:
    """A divider set R = {q_1 < ... < q_r} inside [n-1], possibly empty.

    >>> RSubset(9, (3, 8)).carrels
    ((0, 3), (3, 8), (8, 9))
    >>> RSubset(4).carrels
    ((0, 4),)
    """

    n: int
    elements: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        elems = tuple(self.elements)
        object.__setattr__(self, "elements", elems)
        if any(not 1 <= q <= self.n - 1 for q in elems):
            raise ValueError(f"elements of R must lie in [1, {self.n - 1}]: {elems}")
        if any(a >= b for a, b in zip(elems, elems[1:])):
            raise ValueError(f"elements of R must be strictly increasing: {elems}")

    @property
    def r(self) -> int:
        return len(self.elements)

    @property
    def qs(self) -> tuple[int, ...]:
        """(q_0, q_1, ..., q_r, q_{r+1}) = (0, elements..., n)."""
        return (0, *self.elements, self.n)

    @property
    def carrels(self) -> tuple[tuple[int, int], ...]:
        """Half-open index intervals (lo, hi], one per carrel."""
        qs = self.qs
        return tuple(zip(qs, qs[1:]))

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(hi - lo for lo, hi in self.carrels)

    def to_json_dict(self) -> dict:
        return {"n": self.n, "R": list(self.elements)}


def _carrel_text(entries: Sequence[int], qs: Sequence[int]) -> str:
    parts = []
    for lo, hi in zip(qs, qs[1:]):
        parts.append(",".join(str(e) for e in entries[lo:hi]))
    return "(" + ";".join(parts) + ")"


@dataclass(frozen=True)
class RTuple:
    """An n-tuple over [n] equipped with carrel dividers.

    >>> t = RTuple.of(9, (3, 8), (2, 7, 5, 8, 6, 6, 9, 9, 9))
    >>> str(t)
    '(2,7,5;8,6,6,9,9;9)'
    """

    r_subset: RSubset
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        n = self.r_subset.n
        if len(self.entries) != n:
            raise ValueError(f"expected {n} entries, got {len(self.entries)}")
        if any(not 1 <= e <= n for e in self.entries):
            raise ValueError(f"entries must lie in [1, {n}]: {self.entries}")

    @classmethod
    def of(cls, n: int, r_elements: Sequence[int], entries: Sequence[int]) -> "RTuple":
        return cls(RSubset(n, tuple(r_elements)), tuple(entries))

    @property
    def n(self) -> int:
        return self.r_subset.n

    def entry(self, i: int) -> int:
        """1-based entry access."""
        return self.entries[i - 1]

    def __str__(self) -> str:
        return _carrel_text(self.entries, self.r_subset.qs)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "R": list(self.r_subset.elements),
            "entries": list(self.entries),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "RTuple":
        return cls.of(d["n"], d["R"], d["entries"])


@dataclass(frozen=True)
class CriticalList:
    """The per-carrel critical pairs of an upper tuple, stored ascending by index.

    Each carrel h contributes a nonempty list of pairs (x, y) with x in the
    carrel, x <= y <= n, the last x equal to the carrel's right endpoint, and
    consecutive pairs (left, right) satisfying
    ``y_right - y_left > x_right - x_left``.
    """

    r_subset: RSubset
    carrels: tuple[tuple[tuple[int, int], ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "carrels",
            tuple(tuple((int(x), int(y)) for x, y in c) for c in self.carrels),
        )
        spans = self.r_subset.carrels
        if len(self.carrels) != len(spans):
            raise ValueError(
                f"expected {len(spans)} carrels of pairs, got {len(self.carrels)}"
            )
        n = self.r_subset.n
        for (lo, hi), pairs in zip(spans, self.carrels):
            if not pairs:
                raise ValueError("every carrel must carry at least one critical pair")
            if pairs[-1][0] != hi:
                raise ValueError(f"last critical index in carrel must be {hi}: {pairs}")
            for x, y in pairs:
                if not (lo < x <= hi):
                    raise ValueError(f"critical index {x} outside carrel ({lo}, {hi}]")
                if not (x <= y <= n):
                    raise ValueError(f"critical pair ({x}, {y}) must satisfy x <= y <= n")
            for (xl, yl), (xr, yr) in zip(pairs, pairs[1:]):
                if not (xl < xr and yr - yl > xr - xl):
                    raise ValueError(
                        f"consecutive pairs ({xl},{yl}), ({xr},{yr}) violate the gap condition"
                    )

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        """All critical pairs in left-to-right order."""
        return tuple(p for carrel in self.carrels for p in carrel)

    @property
    def is_flag(self) -> bool:
        """True when the critical entries are weakly increasing left to right."""
        ys = [y for _, y in self.pairs]
        return all(a <= b for a, b in zip(ys, ys[1:]))

    def __str__(self) -> str:
        carrel_strs = (
            "{" + ",".join(f"({x},{y})" for x, y in c) + "}" for c in self.carrels
        )
        return "(" + ";".join(carrel_strs) + ")"

    def to_json_dict(self) -> dict:
        return {"carrels": [[[x, y] for x, y in c] for c in self.carrels]}

    @classmethod
    def from_json_dict(cls, d: dict) -> "CriticalList":
        carrels = tuple(tuple((x, y) for x, y in c) for c in d["carrels"])
        n = carrels[-1][-1][0]
        elements = tuple(c[-1][0] for c in carrels[:-1])
        return cls(RSubset(n, elements), carrels)


@dataclass(frozen=True)
class ClassificationReport:
    """One boolean per tuple family.  ``increasing`` means increasing on each carrel."""

    upper: bool
    flag: bool
    increasing: bool
    gapless: bool
    gapless_core: bool
    shell: bool
    canopy: bool
    floor_flag: bool
    ceiling_flag: bool

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


# ---------------------------------------------------------------------------
# elementary predicates


def is_upper(t: RTuple) -> bool:
    return all(e >= i for i, e in enumerate(t.entries, start=1))


def is_weakly_increasing(t: RTuple) -> bool:
    return all(a <= b for a, b in zip(t.entries, t.entries[1:]))


def is_r_increasing(t: RTuple) -> bool:
    """Strictly increasing within each carrel."""
    e = t.entries
    return all(
        all(e[i] < e[i + 1] for i in range(lo, hi - 1))
        for lo, hi in t.r_subset.carrels
    )


def is_upper_flag(t: RTuple) -> bool:
    return is_upper(t) and is_weakly_increasing(t)


# ---------------------------------------------------------------------------
# critical lists and the core map


def _require_upper(t: RTuple) -> None:
    if not is_upper(t):
        raise NotUpper(f"tuple is not upper: {t}")


def critical_list(t: RTuple) -> CriticalList:
    """Critical pairs of an upper tuple, found right-to-left in each carrel.

    Within a carrel ending at q, the pair (q, entry at q) is always critical;
    from a critical index x, the next critical index to its left is the
    largest x' with ``entry(x) - entry(x') > x - x'``.

    >>> str(critical_list(RTuple.of(9, (3, 8), (2, 7, 5, 8, 6, 6, 9, 9, 9))))
    '({(1,2),(3,5)};{(6,6),(8,9)};{(9,9)})'
    """
    _require_upper(t)
    e = t.entries
    carrels = []
    for lo, hi in t.r_subset.carrels:
        pairs = [(hi, e[hi - 1])]
        x = hi
        while True:
            nxt = next(
                (c for c in range(x - 1, lo, -1) if e[x - 1] - e[c - 1] > x - c),
                None,
            )
            if nxt is None:
                break
            pairs.append((nxt, e[nxt - 1]))
            x = nxt
        carrels.append(tuple(reversed(pairs)))
    return CriticalList(t.r_subset, tuple(carrels))


def core(t: RTuple) -> RTuple:
    """The minimum member of the equivalence class of an upper tuple.

    Entries are pulled down onto the staircases ending at the critical pairs.

    >>> str(core(RTuple.of(9, (3, 8), (7, 9, 6, 5, 5, 9, 8, 9, 9))))
    '(4,5,6;4,5,7,8,9;9)'
    """
    return from_critical_list(critical_list(t), "increasing")


def from_critical_list(c: CriticalList, kind: str) -> RTuple:
    """The unique member of the requested family whose critical list is ``c``.

    ``increasing`` and ``shell`` exist for every critical list; ``gapless``,
    ``canopy``, ``floor`` and ``ceiling`` require a flag critical list.
    """
    if kind not in CONSTRUCTION_KINDS:
        raise ValueError(f"unknown construction kind {kind!r}")
    if kind in _FLAG_ONLY_KINDS and not c.is_flag:
        raise NotFlagCriticalList(f"construction {kind!r} needs a flag critical list")

    n = c.r_subset.n
    entries = [0] * n
    if kind in ("increasing", "gapless"):
        for pairs, (lo, _) in zip(c.carrels, c.r_subset.carrels):
            prev = lo
            for x, y in pairs:
                for i in range(prev + 1, x + 1):
                    entries[i - 1] = y - (x - i)
                prev = x
    elif kind in ("shell", "canopy"):
        entries = [n] * n
        for x, y in c.pairs:
            entries[x - 1] = y
    elif kind == "ceiling":
        prev = 0
        for x, y in c.pairs:
            for i in range(prev + 1, x + 1):
                entries[i - 1] = y
            prev = x
    else:  # floor
        carrel_start = {pairs[0][0]: lo for pairs, (lo, _) in zip(c.carrels, c.r_subset.carrels)}
        prev = 0
        for x, y in c.pairs:
            entries[x - 1] = y
            if x in carrel_start and carrel_start[x] > 0:
                q = carrel_start[x]
                for i in range(q + 1, x):
                    entries[i - 1] = max(entries[q - 1], y - (x - i))
            else:
                for i in range(prev + 1, x):
                    entries[i - 1] = y - (x - i)
            prev = x
    return RTuple(c.r_subset, tuple(entries))


# ---------------------------------------------------------------------------
# family predicates built on critical lists


def _critical_indices(t: RTuple) -> set[int]:
    return {x for x, _ in critical_list(t).pairs}


def is_gapless_core(t: RTuple) -> bool:
    """Upper with a flag critical list."""
    return is_upper(t) and critical_list(t).is_flag


def is_gapless(t: RTuple) -> bool:
    """Increasing on each carrel, upper, with a flag critical list."""
    return is_upper(t) and is_r_increasing(t) and critical_list(t).is_flag


def is_gapless_staircase(t: RTuple) -> bool:
    """The boundary-staircase characterization of gapless tuples.

    An increasing upper tuple fails only at a carrel boundary where the entry
    drops: there the next carrel must open with the run of consecutive values
    ending at the boundary entry.  Agrees with :func:`is_gapless` on every
    increasing upper tuple; kept separate so the two characterizations can be
    checked against each other.
    """
    if not (is_upper(t) and is_r_increasing(t)):
        return False
    e = t.entries
    qs = t.r_subset.qs
    for h in range(1, len(qs) - 1):
        q, q_next = qs[h], qs[h + 1]
        a, b = e[q - 1], e[q]
        if a > b:
            s = a - b + 1
            if s > q_next - q:
                return False
            if any(e[q + j - 1] != b + j - 1 for j in range(1, s + 1)):
                return False
    return True


def is_shell(t: RTuple) -> bool:
    """Upper with every non-critical entry equal to n."""
    if not is_upper(t):
        return False
    crit = _critical_indices(t)
    return all(e == t.n for i, e in enumerate(t.entries, start=1) if i not in crit)


def is_canopy(t: RTuple) -> bool:
    return is_shell(t) and critical_list(t).is_flag


def is_floor_flag(t: RTuple) -> bool:
    """Upper flag whose non-trivial plateaus each start at a carrel boundary."""
    if not is_upper_flag(t):
        return False
    boundary = set(t.r_subset.elements)
    e = t.entries
    i = 0
    while i < len(e):
        j = i
        while j + 1 < len(e) and e[j + 1] == e[i]:
            j += 1
        if j > i and (i + 1) not in boundary:
            return False
        i = j + 1
    return True


def is_ceiling_flag(t: RTuple) -> bool:
    """Upper flag that is constant between consecutive critical indices."""
    if not is_upper_flag(t):
        return False
    e = t.entries
    prev = 0
    for x, y in critical_list(t).pairs:
        if any(e[i - 1] != y for i in range(prev + 1, x + 1)):
            return False
        prev = x
    return True


def classify(t: RTuple) -> ClassificationReport:
    """Total classification of a tuple into all families at once.

    Non-upper tuples report ``upper=False`` and every critical-list family
    False; ``flag`` and ``increasing`` are pure conditions on the entries.
    """
    upper = is_upper(t)
    flag = is_weakly_increasing(t)
    increasing = is_r_increasing(t)
    if not upper:
        return ClassificationReport(
            upper=False,
            flag=flag,
            increasing=increasing,
            gapless=False,
            gapless_core=False,
            shell=False,
            canopy=False,
            floor_flag=False,
            ceiling_flag=False,
        )
    c = critical_list(t)
    gapless = increasing and c.is_flag
    if increasing and gapless != is_gapless_staircase(t):
        raise AssertionError(f"gapless characterizations disagree on {t}")
    crit = {x for x, _ in c.pairs}
    shell = all(e == t.n for i, e in enumerate(t.entries, start=1) if i not in crit)
    return ClassificationReport(
        upper=True,
        flag=flag,
        increasing=increasing,
        gapless=gapless,
        gapless_core=c.is_flag,
        shell=shell,
        canopy=shell and c.is_flag,
        floor_flag=flag and is_floor_flag(t),
        ceiling_flag=flag and is_ceiling_flag(t),
    )


# ---------------------------------------------------------------------------
# class structure


def equivalent(a: RTuple, b: RTuple) -> bool:
    """Whether two upper tuples share a critical list (equivalently, a core)."""
    if a.r_subset != b.r_subset:
        raise DomainMismatch(f"tuples live over different carrel sets: {a} vs {b}")
    return core(a) == core(b)


def class_interval(t: RTuple) -> tuple[RTuple, RTuple]:
    """(minimum, maximum) of the equivalence class of an upper tuple.

    The class is exactly the entrywise interval between the core and the
    shell built on the shared critical list.
    """
    c = critical_list(t)
    return from_critical_list(c, "increasing"), from_critical_list(c, "shell")


def floor_map(g: RTuple) -> RTuple:
    """The floor flag sharing a critical list with a gapless tuple."""
    if not is_gapless(g):
        raise NotGapless(f"tuple is not gapless: {g}")
    return from_critical_list(critical_list(g), "floor")


def ceiling_map(g: RTuple) -> RTuple:
    """The ceiling flag sharing a critical list with a gapless tuple."""
    if not is_gapless(g):
        raise NotGapless(f"tuple is not gapless: {g}")
    return from_critical_list(critical_list(g), "ceiling")


# ---------------------------------------------------------------------------
# enumeration


def _iter_entries_upper(n: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    ranges = [range(i, n + 1) for i in range(len(prefix) + 1, n + 1)]
    for rest in itertools.product(*ranges):
        yield prefix + rest


def _iter_entries_upper_flag(n: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    def rec(acc: list[int]) -> Iterator[tuple[int, ...]]:
        i = len(acc)
        if i == n:
            yield tuple(acc)
            return
        lo = max(i + 1, acc[-1] if acc else 1)
        for v in range(lo, n + 1):
            acc.append(v)
            yield from rec(acc)
            acc.pop()

    if any(b < a for a, b in zip(prefix, prefix[1:])):
        return
    yield from rec(list(prefix))


def _iter_entries_increasing(
    n: int, r: RSubset, prefix: tuple[int, ...]
) -> Iterator[tuple[int, ...]]:
    starts = {lo for lo, _ in r.carrels}

    def rec(acc: list[int]) -> Iterator[tuple[int, ...]]:
        i = len(acc)
        if i == n:
            yield tuple(acc)
            return
        lo = i + 1
        if i not in starts and acc:
            lo = max(lo, acc[-1] + 1)
        for v in range(lo, n + 1):
            acc.append(v)
            yield from rec(acc)
            acc.pop()

    yield from rec(list(prefix))


_FAMILY_PREDICATES = {
    "upper": is_upper,
    "flag": is_upper_flag,
    "increasing": lambda t: is_upper(t) and is_r_increasing(t),
    "gapless": is_gapless,
    "gapless-core": is_gapless_core,
    "floor": is_floor_flag,
    "ceiling": is_ceiling_flag,
    "shell": is_shell,
    "canopy": is_canopy,
}


def enumerate_tuples(
    n: int,
    r_elements: Sequence[int],
    family: str,
    prefix: Sequence[int] = (),
) -> Iterator[RTuple]:
    """All members of a family, each once, in lexicographic entry order.

    ``prefix`` restricts to tuples whose first entries equal it, which lets
    callers shard an enumeration by lexicographic prefix.

    >>> sum(1 for _ in enumerate_tuples(4, (1, 2, 3), "gapless"))
    14
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    r = RSubset(n, tuple(r_elements))
    pre = tuple(prefix)
    if len(pre) > n or any(pre[i] < i + 1 for i in range(len(pre))):
        return

    if family in ("increasing", "gapless"):
        base = _iter_entries_increasing(n, r, pre)
        pred = None if family == "increasing" else (lambda t: critical_list(t).is_flag)
    elif family in ("flag", "floor", "ceiling"):
        base = _iter_entries_upper_flag(n, pre)
        pred = {"flag": None, "floor": is_floor_flag, "ceiling": is_ceiling_flag}[family]
    else:
        base = _iter_entries_upper(n, pre)
        pred = {
            "upper": None,
            "gapless-core": lambda t: critical_list(t).is_flag,
            "shell": is_shell,
            "canopy": is_canopy,
        }[family]
    if pre:
        # a sharding prefix may itself break the family condition, so fall back
        # to the full membership predicate
        pred = _FAMILY_PREDICATES[family]

    for entries in base:
        t = RTuple(r, entries)
        if pred is None or pred(t):
            yield t


def enumerate_critical_lists(
    n: int, r_elements: Sequence[int], flag_only: bool = False
) -> Iterator[CriticalList]:
    """All critical lists over (n, R), built directly from the definition.

    Independent of the tuple enumerations: pairs are generated carrel by
    carrel from the index/entry constraints alone.
    """
    r = RSubset(n, tuple(r_elements))

    def carrel_options(lo: int, hi: int) -> list[tuple[tuple[int, int], ...]]:
        out = []

        def extend(pairs: list[tuple[int, int]], x: int, y: int) -> None:
            # pairs is built right-to-left; (x, y) is its current leftmost pair
            out.append(tuple(reversed(pairs)))
            for nx in range(lo + 1, x):
                # entry at nx must sit strictly below the staircase through (x, y)
                for ny in range(nx, y - (x - nx)):
                    pairs.append((nx, ny))
                    extend(pairs, nx, ny)
                    pairs.pop()

        for y in range(hi, n + 1):
            extend([(hi, y)], hi, y)
        return sorted(out)

    per_carrel = [carrel_options(lo, hi) for lo, hi in r.carrels]
    for combo in itertools.product(*per_carrel):
        c = CriticalList(r, combo)
        if flag_only and not c.is_flag:
            continue
        yield c
