"""Shapes, semistandard tableaux, keys, scanning, and row-bound tableau sets.

Tableaux are stored column-major: ``columns[j-1][i-1]`` is the value in
column j, row i.  Columns strictly increase downward, rows weakly increase
rightward, and values come from [n].  Column lengths of the shape determine
the carrel set used by every tuple-side computation: the distinct column
lengths below n, read as a divider set inside [n-1].

A latent inert 0th column holding 1..n backs the row-end conventions: the
row-end value of an empty row i is i.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .errors import CapExceeded, NotIncreasingUpper, NotUpper, ShapeMismatch
from .rperms import RChain, RPermutation, to_chain
from .rtuples import RSubset, RTuple, core, is_r_increasing, is_upper

DEFAULT_CAP = 10_000_000


def materialization_cap() -> int:
    """Active cap on explicit tableau-set sizes; PARAKAT_CAP overrides."""
    return int(os.environ.get("PARAKAT_CAP", DEFAULT_CAP))


@dataclass(frozen=True)
class Shape:
    """A partition with at most n parts, padded with zeros to length n.

    >>> Shape(3, (2, 1, 0)).column_lengths
    (2, 1)
    >>> Shape(3, (2, 1, 0)).r_subset.elements
    (1, 2)
    """

    n: int
    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if self.n < 1:
            raise ValueError("n must be positive")
        if len(self.parts) != self.n:
            raise ValueError(f"expected {self.n} parts (pad with zeros), got {self.parts}")
        if any(p < 0 for p in self.parts):
            raise ValueError(f"parts must be nonnegative: {self.parts}")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError(f"parts must weakly decrease: {self.parts}")

    @classmethod
    def of(cls, n: int, parts: Sequence[int]) -> "Shape":
        padded = tuple(parts) + (0,) * (n - len(parts))
        return cls(n, padded)

    @property
    def column_lengths(self) -> tuple[int, ...]:
        return tuple(
            sum(1 for p in self.parts if p >= j) for j in range(1, self.parts[0] + 1)
        )

    @property
    def r_subset(self) -> RSubset:
        """Distinct non-trivial column lengths, as a divider set."""
        lengths = sorted({z for z in self.column_lengths if z < self.n})
        return RSubset(self.n, tuple(lengths))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def shape_r(shape: Shape) -> RSubset:
    return shape.r_subset


@dataclass(frozen=True)
class Tableau:
    """A semistandard filling of a shape with values from [n]."""

    shape: Shape
    columns: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(tuple(c) for c in self.columns))
        zeta = self.shape.column_lengths
        n = self.shape.n
        if len(self.columns) != len(zeta):
            raise ValueError(f"expected {len(zeta)} columns, got {len(self.columns)}")
        for col, z in zip(self.columns, zeta):
            if len(col) != z:
                raise ValueError(f"column {col} has wrong length, expected {z}")
            if any(not 1 <= v <= n for v in col):
                raise ValueError(f"values must lie in [1, {n}]: {col}")
            if any(a >= b for a, b in zip(col, col[1:])):
                raise ValueError(f"columns must strictly increase: {col}")
        for left, right in zip(self.columns, self.columns[1:]):
            if any(left[i] > right[i] for i in range(len(right))):
                raise ValueError(f"rows must weakly increase: {left} | {right}")

    @property
    def n(self) -> int:
        return self.shape.n

    def entry(self, j: int, i: int) -> int:
        """Value in column j, row i (1-based); column 0 is the latent column."""
        if j == 0:
            return i
        return self.columns[j - 1][i - 1]

    def rows(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for i, p in enumerate(self.shape.parts, start=1):
            if p == 0:
                break
            out.append(tuple(self.columns[j][i - 1] for j in range(p)))
        return tuple(out)

    def __str__(self) -> str:
        rws = self.rows()
        if not rws:
            return "(null tableau)"
        return "\n".join(" ".join(str(v) for v in row) for row in rws)

    def to_json_dict(self) -> dict:
        return {
            "lambda": list(self.shape.parts),
            "n": self.n,
            "columns": [list(c) for c in self.columns],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "Tableau":
        shape = Shape.of(d["n"], tuple(d["lambda"]))
        return cls(shape, tuple(tuple(c) for c in d["columns"]))


def entrywise_le(t: Tableau, u: Tableau) -> bool:
    if t.shape != u.shape:
        raise ShapeMismatch("cannot compare tableaux of different shapes")
    return all(
        a <= b for tc, uc in zip(t.columns, u.columns) for a, b in zip(tc, uc)
    )


def tableau_meet(t: Tableau, u: Tableau) -> Tableau:
    """Entrywise minimum; semistandard because the lattice is distributive."""
    if t.shape != u.shape:
        raise ShapeMismatch("cannot meet tableaux of different shapes")
    cols = tuple(
        tuple(min(a, b) for a, b in zip(tc, uc)) for tc, uc in zip(t.columns, u.columns)
    )
    return Tableau(t.shape, cols)


def tableau_join(t: Tableau, u: Tableau) -> Tableau:
    if t.shape != u.shape:
        raise ShapeMismatch("cannot join tableaux of different shapes")
    cols = tuple(
        tuple(max(a, b) for a, b in zip(tc, uc)) for tc, uc in zip(t.columns, u.columns)
    )
    return Tableau(t.shape, cols)


def minimal_tableau(shape: Shape) -> Tableau:
    """Every value equals its row index."""
    return Tableau(
        shape, tuple(tuple(range(1, z + 1)) for z in shape.column_lengths)
    )


@dataclass(frozen=True)
class TableauSet:
    """An explicit, deduplicated, canonically ordered set of same-shape tableaux."""

    shape: Shape
    tableaux: tuple[Tableau, ...]
    _index: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for t in self.tableaux:
            if t.shape != self.shape:
                raise ShapeMismatch("all members must share the set's shape")
        ordered = tuple(sorted(set(self.tableaux), key=lambda t: t.columns))
        object.__setattr__(self, "tableaux", ordered)
        object.__setattr__(self, "_index", frozenset(ordered))

    def __contains__(self, t: Tableau) -> bool:
        return t in self._index

    def __iter__(self) -> Iterator[Tableau]:
        return iter(self.tableaux)

    def __len__(self) -> int:
        return len(self.tableaux)

    def join_of_all(self) -> Tableau:
        if not self.tableaux:
            raise ValueError("empty tableau set has no join")
        out = self.tableaux[0]
        for t in self.tableaux[1:]:
            out = tableau_join(out, t)
        return out

    def to_json_dict(self) -> dict:
        return {
            "lambda": list(self.shape.parts),
            "n": self.shape.n,
            "tableaux": [[list(c) for c in t.columns] for t in self.tableaux],
        }


# ---------------------------------------------------------------------------
# enumeration


def count_tableaux(shape: Shape) -> int:
    """Number of semistandard fillings, by the hook-content product."""
    total = Fraction(1)
    parts = shape.parts
    conj = shape.column_lengths
    for i in range(1, shape.n + 1):
        for j in range(1, parts[i - 1] + 1):
            hook = (parts[i - 1] - j) + (conj[j - 1] - i) + 1
            total *= Fraction(shape.n + j - i, hook)
    assert total.denominator == 1
    return int(total)


def enumerate_tableaux(shape: Shape) -> Iterator[Tableau]:
    """All semistandard tableaux, lexicographic in column-major entry order."""
    zeta = shape.column_lengths
    n = shape.n
    if not zeta:
        yield Tableau(shape, ())
        return

    def rec(cols: list[tuple[int, ...]], j: int) -> Iterator[Tableau]:
        if j == len(zeta):
            yield Tableau(shape, tuple(cols))
            return
        prev = cols[j - 1] if j else None
        for col in itertools.combinations(range(1, n + 1), zeta[j]):
            if prev is not None and any(col[i] < prev[i] for i in range(zeta[j])):
                continue
            cols.append(col)
            yield from rec(cols, j + 1)
            cols.pop()

    yield from rec([], 0)


def materialize(
    shape: Shape, source: Iterable[Tableau], cap: int | None = None
) -> TableauSet:
    """Collect tableaux into an explicit set, refusing to exceed the cap."""
    limit = materialization_cap() if cap is None else cap
    out = []
    for t in source:
        out.append(t)
        if len(out) > limit:
            raise CapExceeded(f"materialization exceeds cap of {limit} tableaux")
    return TableauSet(shape, tuple(out))


def _filtered_set(
    shape: Shape, pred: Callable[[Tableau], bool], cap: int | None = None
) -> TableauSet:
    limit = materialization_cap() if cap is None else cap
    if count_tableaux(shape) > limit:
        # the filter may still fit, but scanning the full family would not
        raise CapExceeded(
            f"shape {shape} has {count_tableaux(shape)} tableaux, over the cap of {limit}"
        )
    return materialize(shape, (t for t in enumerate_tableaux(shape) if pred(t)), cap)


# ---------------------------------------------------------------------------
# keys


def is_key(t: Tableau) -> bool:
    """Column value-sets weakly nest leftward."""
    sets = [set(c) for c in t.columns]
    return all(sets[j] >= sets[j + 1] for j in range(len(sets) - 1))


def key_of_chain(chain: RChain, shape: Shape) -> Tableau:
    """Juxtapose inert columns and one sorted column per chain level.

    Columns of length q_h are copies of the sorted h-th chain set; trivial
    columns are forced to 1..n.
    """
    if chain.r_subset != shape.r_subset:
        raise ShapeMismatch(
            f"chain over {chain.r_subset.elements} does not match shape {shape}"
        )
    n = shape.n
    cols: list[tuple[int, ...]] = []
    parts = shape.parts
    qs = shape.r_subset.qs
    r = shape.r_subset.r
    cols.extend([tuple(range(1, n + 1))] * parts[n - 1])
    for h in range(r, 0, -1):
        copies = parts[qs[h] - 1] - parts[qs[h + 1] - 1]
        col = tuple(sorted(chain.level(h)))
        cols.extend([col] * copies)
    return Tableau(shape, tuple(cols))


def key_of_perm(p: RPermutation, shape: Shape) -> Tableau:
    """The key of an R-permutation: columns collect its leading carrels."""
    if p.r_subset != shape.r_subset:
        raise ShapeMismatch(
            f"permutation over {p.r_subset.elements} does not match shape {shape}"
        )
    return key_of_chain(to_chain(p), shape)


# ---------------------------------------------------------------------------
# row ends, contents, row-bound sets


def row_end_list(t: Tableau) -> RTuple:
    """Last value of each row, with empty rows reading their latent value i."""
    parts = t.shape.parts
    entries = tuple(
        t.columns[parts[i - 1] - 1][i - 1] if parts[i - 1] else i
        for i in range(1, t.n + 1)
    )
    return RTuple(t.shape.r_subset, entries)


def content(t: Tableau) -> tuple[int, ...]:
    """How many times each value occurs; exponent vector of the weight monomial."""
    counts = [0] * t.n
    for col in t.columns:
        for v in col:
            counts[v - 1] += 1
    return tuple(counts)


def _require_increasing_upper(a: RTuple) -> None:
    if not (is_upper(a) and is_r_increasing(a)):
        raise NotIncreasingUpper(f"tuple is not increasing upper: {a}")


def row_end_max(a: RTuple, shape: Shape) -> Tableau:
    """The largest tableau whose row-end list is ``a``.

    Row ends are pinned; interior boxes take the largest value allowed by the
    neighbor to the right and the box below.
    """
    if a.r_subset != shape.r_subset:
        raise ShapeMismatch(f"tuple over {a.r_subset.elements} does not match {shape}")
    _require_increasing_upper(a)
    zeta = shape.column_lengths
    parts = shape.parts
    ncols = len(zeta)
    cols: list[list[int]] = [[0] * z for z in zeta]
    for j in range(ncols, 0, -1):
        z = zeta[j - 1]
        znext = zeta[j] if j < ncols else 0
        for i in range(z, 0, -1):
            if i > znext:  # row i ends at column j
                cols[j - 1][i - 1] = a.entry(i)
            else:
                v = cols[j][i - 1]
                if i < z:
                    v = min(v, cols[j - 1][i] - 1)
                cols[j - 1][i - 1] = v
    return Tableau(shape, tuple(tuple(c) for c in cols))


def z_set(a: RTuple, shape: Shape, cap: int | None = None) -> TableauSet:
    """All tableaux with the given row-end list."""
    if a.r_subset != shape.r_subset:
        raise ShapeMismatch(f"tuple over {a.r_subset.elements} does not match {shape}")
    _require_increasing_upper(a)
    return _filtered_set(shape, lambda t: row_end_list(t) == a, cap)


def in_row_bound_set(t: Tableau, b: RTuple) -> bool:
    """Streaming membership test: every row end at most the bound."""
    ends = row_end_list(t)
    return all(x <= y for x, y in zip(ends.entries, b.entries))


def row_bound_set(b: RTuple, shape: Shape, cap: int | None = None) -> TableauSet:
    """All tableaux whose row ends are bounded by the upper tuple ``b``."""
    if b.r_subset != shape.r_subset:
        raise ShapeMismatch(f"tuple over {b.r_subset.elements} does not match {shape}")
    if not is_upper(b):
        raise NotUpper(f"row bounds must be upper: {b}")
    return _filtered_set(shape, lambda t: in_row_bound_set(t, b), cap)


def row_bound_max(b: RTuple, shape: Shape) -> Tableau:
    """The largest tableau obeying the row bounds: row-end max of the core."""
    if b.r_subset != shape.r_subset:
        raise ShapeMismatch(f"tuple over {b.r_subset.elements} does not match {shape}")
    if not is_upper(b):
        raise NotUpper(f"row bounds must be upper: {b}")
    return row_end_max(core(b), shape)


# ---------------------------------------------------------------------------
# scanning (the right key)


def scanning(t: Tableau) -> Tableau:
    """The scanning tableau: final values of earliest weakly increasing paths.

    For each start column, its boxes are processed bottom to top.  A path
    carries a running value rightward through the later columns; in each
    column the open boxes are those above the boxes consumed by earlier paths
    from the same start column, and the path takes the bottommost open box
    whose value is not below the running value, skipping the column when
    there is none.  The final running value lands in the start box's
    position.

    Fixes every key, dominates its argument entrywise, and always produces a
    key.
    """
    cols = t.columns
    ncols = len(cols)
    out: list[tuple[int, ...]] = []
    for j0 in range(ncols):
        avail = [len(cols[k]) for k in range(ncols)]  # boxes still open per column
        col_out = [0] * len(cols[j0])
        for i in range(len(cols[j0]) - 1, -1, -1):
            v = cols[j0][i]
            for k in range(j0 + 1, ncols):
                a = avail[k]
                if a == 0 or cols[k][a - 1] < v:
                    continue
                v = cols[k][a - 1]
                avail[k] = a - 1
            col_out[i] = v
        out.append(tuple(col_out))
    return Tableau(t.shape, tuple(out))


def in_demazure_set(t: Tableau, y: Tableau) -> bool:
    """Streaming membership test against a key: scanning result below the key."""
    return entrywise_le(scanning(t), y)


def demazure_set(p: RPermutation, shape: Shape, cap: int | None = None) -> TableauSet:
    """All tableaux whose scanning tableau sits below the key of ``p``."""
    y = key_of_perm(p, shape)
    return _filtered_set(shape, lambda t: in_demazure_set(t, y), cap)


def ideal(t: Tableau, cap: int | None = None) -> TableauSet:
    """The principal ideal: all tableaux entrywise below ``t``."""
    return _filtered_set(t.shape, lambda u: entrywise_le(u, t), cap)


# ---------------------------------------------------------------------------
# convexity and gapless keys


def _between(lo: Tableau, hi: Tableau) -> Iterator[Tableau]:
    """Semistandard tableaux within an entrywise box, by column-major DFS."""
    zeta = lo.shape.column_lengths
    ncols = len(zeta)

    def rec(cols: list[list[int]], j: int, i: int) -> Iterator[Tableau]:
        if j == ncols:
            yield Tableau(lo.shape, tuple(tuple(c) for c in cols))
            return
        if i == zeta[j]:
            yield from rec(cols, j + 1, 0)
            return
        lo_v = lo.columns[j][i]
        hi_v = hi.columns[j][i]
        if i > 0:
            lo_v = max(lo_v, cols[j][i - 1] + 1)
        if j > 0 and i < zeta[j - 1]:
            lo_v = max(lo_v, cols[j - 1][i])
        for v in range(lo_v, hi_v + 1):
            cols[j].append(v)
            yield from rec(cols, j, i + 1)
            cols[j].pop()

    yield from rec([[] for _ in range(ncols)], 0, 0)


def is_interval_closed(ts: TableauSet) -> bool:
    """Every semistandard point entrywise between two members is a member."""
    members = ts.tableaux
    for a in range(len(members)):
        for b in range(a + 1, len(members)):
            lo = tableau_meet(members[a], members[b])
            hi = tableau_join(members[a], members[b])
            if any(v not in ts for v in _between(lo, hi)):
                return False
    return True


def is_convex(ts: TableauSet) -> bool:
    """Convexity in the form the tableau-set dichotomy takes.

    A set is accepted when it equals the principal ideal of its entrywise
    join and is closed under taking semistandard points between members.
    """
    if len(ts) == 0:
        return True
    top = ts.join_of_all()
    if top not in ts:
        return False
    if ts != ideal(top):
        return False
    return is_interval_closed(ts)


def is_gapless_key(y: Tableau) -> bool:
    """Staircase continuation across consecutive non-trivial column lengths.

    In a key, if the smallest value b that a longer column adds over the next
    shorter column does not clear that shorter column's bottom value m, the
    longer column must march from b up to m in consecutive steps.
    """
    if not is_key(y):
        raise ValueError("gapless test is defined for keys only")
    lengths = y.shape.r_subset.elements
    by_length = {len(c): c for c in y.columns}
    for h in range(len(lengths) - 1):
        col_s = by_length[lengths[h]]
        col_l = by_length[lengths[h + 1]]
        b = min(set(col_l) - set(col_s))
        m = col_s[-1]
        if b > m:
            continue
        i = col_l.index(b)
        k = col_l.index(m)
        if col_l[i : k + 1] != tuple(range(b, m + 1)):
            return False
    return True
