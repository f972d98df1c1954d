"""R-permutations: carrel-sorted permutations, their chains, 312-avoidance,
the rank-tuple bijection, clump machinery, and lifting to plain permutations.

An R-permutation is a permutation of [n] that increases within each carrel;
these are the minimal-length coset representatives for the parabolic quotient
of the symmetric group cut out by R.  The 312 pattern generalizes to carrels:
a witness needs its first position in some carrel h, its second in carrel
h + 1, and its third anywhere later.  The number of R-312-avoiding
R-permutations is the parabolic Catalan number, computed here by direct
filtering.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import NotAvoiding, NotGapless
from .rtuples import RSubset, RTuple, core, is_gapless, rank_from_largest


@dataclass(frozen=True)
class RPermutation:
    """A permutation of [n] that is strictly increasing on each carrel."""

    r_subset: RSubset
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        n = self.r_subset.n
        if sorted(self.entries) != list(range(1, n + 1)):
            raise ValueError(f"entries are not a permutation of [{n}]: {self.entries}")
        for lo, hi in self.r_subset.carrels:
            seg = self.entries[lo:hi]
            if any(a >= b for a, b in zip(seg, seg[1:])):
                raise ValueError(f"entries must increase within each carrel: {self.entries}")

    @classmethod
    def of(cls, n: int, r_elements: Sequence[int], entries: Sequence[int]) -> "RPermutation":
        return cls(RSubset(n, tuple(r_elements)), tuple(entries))

    @property
    def n(self) -> int:
        return self.r_subset.n

    def __str__(self) -> str:
        from .rtuples import _carrel_text

        return _carrel_text(self.entries, self.r_subset.qs)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "R": list(self.r_subset.elements),
            "one_line": list(self.entries),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "RPermutation":
        return cls.of(d["n"], d["R"], d["one_line"])


@dataclass(frozen=True)
class RChain:
    """A nested sequence of sets B_1 < ... < B_r with |B_h| = q_h.

    B_0 = {} and B_{r+1} = [n] are implicit; ``level(h)`` exposes them.
    """

    r_subset: RSubset
    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))
        qs = self.r_subset.elements
        if len(self.sets) != len(qs):
            raise ValueError(f"expected {len(qs)} sets, got {len(self.sets)}")
        full = frozenset(range(1, self.r_subset.n + 1))
        prev: frozenset[int] = frozenset()
        for q, s in zip(qs, self.sets):
            if len(s) != q:
                raise ValueError(f"|B_h| = {len(s)} but q_h = {q}")
            if not (prev < s <= full):
                raise ValueError("chain sets must be strictly nested subsets of [n]")
            prev = s

    def level(self, h: int) -> frozenset[int]:
        """B_h for h in [0, r+1]."""
        if h == 0:
            return frozenset()
        if h == self.r_subset.r + 1:
            return frozenset(range(1, self.r_subset.n + 1))
        return self.sets[h - 1]

    def to_json_dict(self) -> dict:
        return {
            "n": self.r_subset.n,
            "R": list(self.r_subset.elements),
            "sets": [sorted(s) for s in self.sets],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "RChain":
        return cls(RSubset(d["n"], tuple(d["R"])), tuple(frozenset(s) for s in d["sets"]))


@dataclass(frozen=True)
class ClumpDecomposition:
    """The maximal runs of consecutive integers in a finite set, in increasing order.

    >>> ClumpDecomposition.of({2, 3, 5, 6, 7, 10, 13, 14}).blocks
    ((2, 3), (5, 6, 7), (10,), (13, 14))
    """

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(tuple(b) for b in self.blocks))
        for b in self.blocks:
            if not b or any(y != x + 1 for x, y in zip(b, b[1:])):
                raise ValueError(f"block is not a run of consecutive integers: {b}")
        for a, b in zip(self.blocks, self.blocks[1:]):
            if b[0] <= a[-1] + 1:
                raise ValueError(f"blocks must be separated and increasing: {a}, {b}")

    @classmethod
    def of(cls, values) -> "ClumpDecomposition":
        vs = sorted(set(values))
        blocks: list[list[int]] = []
        for v in vs:
            if blocks and v == blocks[-1][-1] + 1:
                blocks[-1].append(v)
            else:
                blocks.append([v])
        return cls(tuple(tuple(b) for b in blocks))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(v for b in self.blocks for v in b)


# ---------------------------------------------------------------------------
# plain-permutation helpers


def is_312_avoiding(word: Sequence[int]) -> bool:
    """No positions a < b < c with word[a] > word[b] < word[c] and word[a] > word[c].

    >>> is_312_avoiding((3, 1, 2))
    False
    >>> is_312_avoiding((2, 3, 1))
    True
    """
    n = len(word)
    for b in range(1, n - 1):
        # any earlier entry above word[c] witnesses, so the left max suffices
        left_max = max(word[:b])
        if left_max <= word[b]:
            continue
        for c in range(b + 1, n):
            if word[b] < word[c] < left_max:
                return False
    return True


def inversions(word: Sequence[int]) -> int:
    """Coxeter length of a permutation in one-line notation."""
    return sum(
        1
        for a in range(len(word))
        for b in range(a + 1, len(word))
        if word[a] > word[b]
    )


def reduced_word(word: Sequence[int]) -> tuple[int, ...]:
    """Adjacent-transposition positions reducing the permutation to the identity.

    Repeatedly swaps a descent pair; applying the returned positions in order
    to the identity's columns rebuilds the permutation.  Length equals
    :func:`inversions`.
    """
    w = list(word)
    out = []
    i = 0
    while i < len(w) - 1:
        if w[i] > w[i + 1]:
            w[i], w[i + 1] = w[i + 1], w[i]
            out.append(i + 1)
            i = max(i - 1, 0)
        else:
            i += 1
    return tuple(out)


# ---------------------------------------------------------------------------
# projections, chains, avoidance


def r_projection(sigma: Sequence[int], r_subset: RSubset) -> RPermutation:
    """Sort a permutation within each carrel.

    >>> str(r_projection((2, 4, 3, 1), RSubset(4, (2,))))
    '(2,4;1,3)'
    """
    entries: list[int] = []
    for lo, hi in r_subset.carrels:
        entries.extend(sorted(sigma[lo:hi]))
    return RPermutation(r_subset, tuple(entries))


def is_r312_avoiding(p: RPermutation) -> bool:
    """No a <= q_h < b <= q_{h+1} < c with p_a > p_b < p_c and p_a > p_c."""
    e = p.entries
    qs = p.r_subset.qs
    n = p.n
    for h in range(1, p.r_subset.r):
        q, q_next = qs[h], qs[h + 1]
        left_max = max(e[:q])
        for b in range(q + 1, q_next + 1):
            if left_max <= e[b - 1]:
                continue
            for c in range(q_next + 1, n + 1):
                if e[b - 1] < e[c - 1] < left_max:
                    return False
    return True


def to_chain(p: RPermutation) -> RChain:
    """B_h collects the entries of the first h carrels."""
    sets = []
    acc: set[int] = set()
    for (lo, hi), q in zip(p.r_subset.carrels, p.r_subset.elements):
        acc.update(p.entries[lo:hi])
        sets.append(frozenset(acc))
    return RChain(p.r_subset, tuple(sets))


def from_chain(chain: RChain) -> RPermutation:
    entries: list[int] = []
    for h in range(1, chain.r_subset.r + 2):
        entries.extend(sorted(chain.level(h) - chain.level(h - 1)))
    return RPermutation(chain.r_subset, tuple(entries))


def is_rightmost_clump_deleting(chain: RChain) -> bool:
    """Each step removes whole top clumps plus a top segment of the next clump.

    Stepping down from B_{h+1} to B_h, the deleted elements B_{h+1} - B_h
    must be a union of the highest clumps of B_{h+1} together with a top
    segment of the next clump down.
    """
    for h in range(1, chain.r_subset.r + 1):
        new = chain.level(h + 1) - chain.level(h)
        blocks = ClumpDecomposition.of(chain.level(h + 1)).blocks
        ok = False
        for e in range(len(blocks)):
            above = set(itertools.chain.from_iterable(blocks[e + 1 :]))
            with_e = above | set(blocks[e])
            if above <= new <= with_e:
                ok = True
                break
        if not ok:
            return False
    return True


def rightmost_clump_deleting_variants(chain: RChain) -> tuple[bool, bool, bool]:
    """Three reformulations of :func:`is_rightmost_clump_deleting`.

    (interval containment, open-interval containment, new-low-elements are the
    largest available below max(B_h)); all three agree with the clump form.
    """
    closed = True
    open_ = True
    largest = True
    for h in range(1, chain.r_subset.r + 1):
        bh = chain.level(h)
        bh1 = chain.level(h + 1)
        new = bh1 - bh
        b = min(new)
        m = max(bh)
        if not all(v in bh1 for v in range(b, m + 1)):
            closed = False
        if not all(v in bh1 for v in range(b + 1, m)):
            open_ = False
        low = sorted(v for v in new if v < m)
        available = sorted(v for v in range(1, m + 1) if v not in bh)
        if low != available[len(available) - len(low) :]:
            largest = False
    return closed, open_, largest


# ---------------------------------------------------------------------------
# the rank-tuple bijection


def rank_tuple(p: RPermutation) -> RTuple:
    """Ranks of the largest entries seen so far, announced per carrel.

    After the h-th carrel, position i of carrel h records the
    (q_h - i + 1)-th largest element among the first q_h entries.

    >>> str(rank_tuple(RPermutation.of(9, (3, 8), (2, 4, 6, 1, 5, 7, 8, 9, 3))))
    '(2,4,6;5,6,7,8,9;9)'
    """
    chain = to_chain(p)
    entries = [0] * p.n
    qs = p.r_subset.qs
    for h in range(1, p.r_subset.r + 2):
        bh = chain.level(h)
        for i in range(qs[h - 1] + 1, qs[h] + 1):
            entries[i - 1] = rank_from_largest(bh, qs[h] - i + 1)
    return RTuple(p.r_subset, tuple(entries))


def pi_map(g: RTuple) -> RPermutation:
    """The R-312-avoiding permutation whose rank tuple is the gapless tuple g.

    Carrel h + 1 is filled on the right with the entries of g and on the left
    (when the carrel-boundary entry does not rise) with the largest unused
    values below it, placed in increasing order.

    >>> str(pi_map(RTuple.of(9, (3, 8), (2, 4, 6, 4, 5, 6, 7, 9, 9))))
    '(2,4,6;1,3,5,7,9;8)'
    """
    if not is_gapless(g):
        raise NotGapless(f"tuple is not gapless: {g}")
    e = g.entries
    qs = g.r_subset.qs
    entries: list[int] = list(e[: qs[1]])
    for h in range(1, g.r_subset.r + 1):
        q, q_next = qs[h], qs[h + 1]
        s = max(0, e[q - 1] - e[q] + 1)
        used = set(entries)
        pool = sorted(v for v in range(1, e[q - 1] + 1) if v not in used)
        entries.extend(pool[len(pool) - s :])
        entries.extend(e[q + s : q_next])
    return RPermutation(g.r_subset, tuple(entries))


# ---------------------------------------------------------------------------
# lifting avoiding R-permutations to avoiding permutations


def _lift_blocks(p: RPermutation) -> list[tuple[range, tuple[int, ...], int | None]]:
    """Per-carrel local blocks (positions, values, decreasing-threshold).

    Positions are 0-based ranges into the one-line word.  The threshold is
    None for a wholly-new clump; for the subclump straddling max(B_h) it is
    that maximum, and values below it must stay in decreasing order.
    """
    chain = to_chain(p)
    blocks: list[tuple[range, tuple[int, ...], int | None]] = []
    qs = p.r_subset.qs
    first = sorted(chain.level(1))
    pos = 0
    for blk in ClumpDecomposition.of(first).blocks:
        blocks.append((range(pos, pos + len(blk)), blk, None))
        pos += len(blk)
    for h in range(1, p.r_subset.r + 1):
        bh = chain.level(h)
        new = chain.level(h + 1) - bh
        m = max(bh)
        clumps = ClumpDecomposition.of(chain.level(h + 1)).blocks
        e = next(i for i, blk in enumerate(clumps) if m in blk)
        sub = tuple(sorted(set(clumps[e]) & new))
        pos = qs[h]
        if sub:
            blocks.append((range(pos, pos + len(sub)), sub, m))
            pos += len(sub)
        for blk in clumps[e + 1 :]:
            blocks.append((range(pos, pos + len(blk)), blk, None))
            pos += len(blk)
    return blocks


def minimal_lift(p: RPermutation) -> tuple[int, ...]:
    """The unique minimum-length 312-avoiding permutation projecting onto p.

    Carrel by carrel: the new values below the running maximum are placed
    first in decreasing order, then the remaining new values in increasing
    order.

    >>> minimal_lift(RPermutation.of(4, (2,), (2, 4, 1, 3)))
    (2, 4, 3, 1)
    """
    if not is_r312_avoiding(p):
        raise NotAvoiding(f"not R-312-avoiding: {p}")
    chain = to_chain(p)
    qs = p.r_subset.qs
    out: list[int] = list(p.entries[: qs[1]])
    for h in range(1, p.r_subset.r + 1):
        new = chain.level(h + 1) - chain.level(h)
        m = max(chain.level(h))
        low = sorted((v for v in new if v < m), reverse=True)
        high = sorted(v for v in new if v > m)
        out.extend(low)
        out.extend(high)
    return tuple(out)


def all_lifts(p: RPermutation) -> Iterator[tuple[int, ...]]:
    """All 312-avoiding permutations projecting onto p, in lexicographic order.

    Generated by rearranging the minimal lift clump-by-clump: each wholly-new
    clump may take any 312-avoiding arrangement; the subclump straddling the
    previous maximum may too, provided its values below that maximum stay in
    decreasing order.
    """
    if not is_r312_avoiding(p):
        raise NotAvoiding(f"not R-312-avoiding: {p}")
    blocks = _lift_blocks(p)
    choices: list[list[tuple[int, ...]]] = []
    for _, values, threshold in blocks:
        opts = []
        for arr in itertools.permutations(values):
            if not is_312_avoiding(arr):
                continue
            if threshold is not None:
                low = [v for v in arr if v < threshold]
                if any(a < b for a, b in zip(low, low[1:])):
                    continue
            opts.append(arr)
        choices.append(opts)
    results = []
    base = [0] * p.n
    for combo in itertools.product(*choices):
        word = base[:]
        for (positions, _, _), arr in zip(blocks, combo):
            for idx, v in zip(positions, arr):
                word[idx] = v
        results.append(tuple(word))
    results.sort()
    yield from results


# ---------------------------------------------------------------------------
# enumeration and counting


def enumerate_rperms(
    n: int,
    r_elements: Sequence[int],
    avoiding_only: bool = False,
    first_carrel: Sequence[int] = (),
) -> Iterator[RPermutation]:
    """All R-permutations in lexicographic one-line order.

    ``first_carrel`` pins the content of the first carrel, so a sweep can be
    sharded across its possible values.
    """
    r = RSubset(n, tuple(r_elements))
    sizes = r.block_sizes
    pin = tuple(sorted(first_carrel))
    if pin and len(pin) != sizes[0]:
        return

    def rec(remaining: tuple[int, ...], acc: tuple[int, ...], h: int) -> Iterator[tuple[int, ...]]:
        if h == len(sizes):
            yield acc
            return
        for combo in itertools.combinations(remaining, sizes[h]):
            if h == 0 and pin and combo != pin:
                continue
            left = tuple(v for v in remaining if v not in combo)
            yield from rec(left, acc + combo, h + 1)

    for entries in rec(tuple(range(1, n + 1)), (), 0):
        p = RPermutation(r, entries)
        if not avoiding_only or is_r312_avoiding(p):
            yield p


def count_cnr(n: int, r_elements: Sequence[int]) -> int:
    """The parabolic Catalan number: |R-312-avoiding R-permutations|.

    >>> count_cnr(4, (1, 2, 3))
    14
    >>> count_cnr(4, ())
    1
    """
    return sum(1 for _ in enumerate_rperms(n, r_elements, avoiding_only=True))


def count_total(n: int) -> int:
    """Sum of the parabolic Catalan numbers over all divider sets R."""
    total = 0
    for k in range(n):
        for r_elements in itertools.combinations(range(1, n), k):
            total += count_cnr(n, r_elements)
    return total


def full_rank_tuple(sigma: Sequence[int]) -> RTuple:
    """Rank tuple of a plain permutation (every position its own carrel)."""
    n = len(sigma)
    p = RPermutation.of(n, tuple(range(1, n)), tuple(sigma))
    return rank_tuple(p)


def project_rank_core(sigma: Sequence[int], r_subset: RSubset) -> RTuple:
    """Core of the full rank tuple of sigma, re-read against R's carrels."""
    psi = full_rank_tuple(sigma)
    return core(RTuple(r_subset, psi.entries))
