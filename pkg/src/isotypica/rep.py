"""Weights, partitions, semistandard tableaux and Gelfand-Tsetlin patterns.

Conventions:
  * a Weight is a plain tuple of k integers;
  * a Partition is a tuple of weakly decreasing positive integers with no
    trailing zeros (the empty partition is ());
  * tableau entries are 1-based and bounded by the variable count k;
  * all enumerations are lexicographically descending, so repeated runs and
    serialized reports are stable.

The module also computes the multiset of weights of a metapolynomial format
space and, from it, which isotypic types occur (the weight-multiplicity
matrix of semistandard tableau counts is unitriangular with respect to
dominance, so the type multiplicities follow by back-substitution).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import FormatError
from .meta import MetaMonomial, MetaPolynomial, enumerate_metamonomials

Weight = Tuple[int, ...]
Partition = Tuple[int, ...]


def partition(parts: Iterable[int]) -> Partition:
    """Normalize to a canonical partition: strip trailing zeros, validate."""
    parts = [int(p) for p in parts]
    while parts and parts[-1] == 0:
        parts.pop()
    for a, b in zip(parts, parts[1:]):
        if a < b:
            raise FormatError(f"not weakly decreasing: {tuple(parts)}")
    if parts and parts[-1] < 0:
        raise FormatError(f"negative part in {tuple(parts)}")
    return tuple(parts)


def pad_partition(lam: Iterable[int], k: int) -> Tuple[int, ...]:
    lam = tuple(lam)
    if len(lam) > k:
        raise FormatError(f"partition {lam} has more than {k} parts")
    return lam + (0,) * (k - len(lam))


def weight_of(mono: MetaMonomial, k: Optional[int] = None) -> Weight:
    """Componentwise sum of the factor indices of a metamonomial."""
    if not mono:
        if k is None:
            raise FormatError("weight of the empty metamonomial needs an explicit k")
        return (0,) * k
    total = [0] * len(mono[0])
    for mu in mono:
        for pos, e in enumerate(mu):
            total[pos] += e
    return tuple(total)


def weights_of(m: MetaPolynomial) -> List[Weight]:
    """Distinct weights occurring in m, descending; empty for the zero metapolynomial."""
    return sorted({weight_of(mono, m.k) for mono in m.terms}, reverse=True)


def weight_component(m: MetaPolynomial, w: Iterable[int]) -> MetaPolynomial:
    """Sum of the terms of m whose metamonomial weight equals w."""
    w = tuple(int(e) for e in w)
    if len(w) != m.k:
        raise FormatError(f"weight {w} has length {len(w)}, expected {m.k}")
    picked = {
        mono: coef for mono, coef in m.terms.items() if weight_of(mono, m.k) == w
    }
    if not picked:
        return MetaPolynomial.zero(m.delta, m.d, m.k)
    return MetaPolynomial(m.k, picked, d=m.d)


def enumerate_weights(delta: int, d: int, k: int) -> List[Weight]:
    """All w in N^k with sum(w) = delta*d, lexicographically descending."""
    total = delta * d
    out: List[Weight] = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    if k >= 1:
        rec((), total, k)
    return out


def enumerate_partitions(n: int, max_parts: int) -> List[Partition]:
    """All partitions of n with at most max_parts parts, lexicographically descending."""
    if n < 0 or max_parts < 1:
        raise FormatError(f"bad arguments n={n}, max_parts={max_parts}")
    out: List[Partition] = []

    def rec(prefix, remaining, cap, slots):
        if remaining == 0:
            out.append(prefix)
            return
        if slots == 0:
            return
        for part in range(min(cap, remaining), 0, -1):
            rec(prefix + (part,), remaining - part, part, slots - 1)

    rec((), n, n, max_parts)
    return out


@dataclass(frozen=True)
class Tableau:
    """A semistandard Young tableau, stored row by row."""

    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(e) for e in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        lengths = [len(r) for r in rows]
        if any(a < b for a, b in zip(lengths, lengths[1:])) or 0 in lengths:
            raise FormatError(f"row lengths {lengths} do not form a partition")
        for row in rows:
            if any(e < 1 for e in row):
                raise FormatError("tableau entries must be >= 1")
            if any(a > b for a, b in zip(row, row[1:])):
                raise FormatError(f"row {row} is not weakly increasing")
        for r in range(1, len(rows)):
            for c in range(len(rows[r])):
                if rows[r - 1][c] >= rows[r][c]:
                    raise FormatError(f"column {c} is not strictly increasing")

    @property
    def shape(self) -> Partition:
        return tuple(len(r) for r in self.rows)

    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    def max_entry(self) -> int:
        return max((e for row in self.rows for e in row), default=0)

    def content(self, k: int) -> Weight:
        counts = [0] * k
        for row in self.rows:
            for e in row:
                if e > k:
                    raise FormatError(f"entry {e} exceeds k={k}")
                counts[e - 1] += 1
        return tuple(counts)

    def is_superstandard(self) -> bool:
        return all(all(e == r + 1 for e in row) for r, row in enumerate(self.rows))

    def __str__(self) -> str:
        return "/".join("".join(str(e) for e in row) for row in self.rows)


@dataclass(frozen=True)
class GTPattern:
    """An interleaving chain of partitions, levels[l-1] having at most l parts."""

    levels: Tuple[Partition, ...]

    def __post_init__(self):
        levels = tuple(partition(lv) for lv in self.levels)
        object.__setattr__(self, "levels", levels)
        for l, lv in enumerate(levels, start=1):
            if len(lv) > l:
                raise FormatError(f"level {l} has {len(lv)} parts")
        for l in range(1, len(levels)):
            upper = pad_partition(levels[l], l + 1)
            lower = pad_partition(levels[l - 1], l + 1)
            for i in range(l):
                if not (upper[i] >= lower[i] >= upper[i + 1]):
                    raise FormatError(
                        f"levels {levels[l - 1]} and {levels[l]} do not interleave"
                    )

    @property
    def k(self) -> int:
        return len(self.levels)

    def weight(self) -> Weight:
        sizes = [sum(lv) for lv in self.levels]
        return tuple(b - a for a, b in zip([0] + sizes[:-1], sizes))


def tableau_to_pattern(t: Tableau, k: int) -> GTPattern:
    """Level l is the shape left after deleting entries greater than l."""
    if t.max_entry() > k:
        raise FormatError(f"entry {t.max_entry()} exceeds k={k}")
    levels = []
    for l in range(1, k + 1):
        shape = [sum(1 for e in row if e <= l) for row in t.rows]
        levels.append(partition([s for s in shape if s > 0]))
    return GTPattern(tuple(levels))


def pattern_to_tableau(p: GTPattern) -> Tableau:
    """Inverse of tableau_to_pattern: boxes added at level l get entry l."""
    k = p.k
    rows: List[List[int]] = []
    prev = ()
    for l in range(1, k + 1):
        cur = pad_partition(p.levels[l - 1], l)
        prev_p = pad_partition(prev, l)
        for r in range(l):
            grow = cur[r] - prev_p[r]
            if grow:
                while len(rows) <= r:
                    rows.append([])
                rows[r].extend([l] * grow)
        prev = p.levels[l - 1]
    return Tableau(tuple(tuple(r) for r in rows if r))


def enumerate_tableaux(shape: Iterable[int], k: int) -> List[Tableau]:
    """All semistandard fillings of shape with entries in 1..k, in a fixed order.

    Cells are filled row-major and candidate entries tried in increasing
    order, so the output order is deterministic.
    """
    shape = partition(shape)
    if len(shape) > k:
        return []
    cells = [(r, c) for r, row_len in enumerate(shape) for c in range(row_len)]
    grid = [[0] * row_len for row_len in shape]
    out: List[Tableau] = []

    def rec(pos: int):
        if pos == len(cells):
            out.append(Tableau(tuple(tuple(row) for row in grid)))
            return
        r, c = cells[pos]
        lo = 1
        if c > 0:
            lo = max(lo, grid[r][c - 1])
        if r > 0:
            lo = max(lo, grid[r - 1][c] + 1)
        for val in range(lo, k + 1):
            grid[r][c] = val
            rec(pos + 1)
        grid[r][c] = 0

    rec(0)
    return out


@lru_cache(maxsize=None)
def kostka_number(shape: Partition, content: Weight) -> int:
    """Number of semistandard tableaux of the given shape and content."""
    shape = partition(shape)
    content = tuple(int(e) for e in content)
    if sum(shape) != sum(content):
        return 0
    k = len(content)
    return sum(1 for t in enumerate_tableaux(shape, k) if t.content(k) == content)


def weight_dimensions(fmt: Tuple[int, int, int]) -> Dict[Weight, int]:
    """Dimension of each weight space of the format's metapolynomial space."""
    delta, d, k = fmt
    dims: Dict[Weight, int] = {w: 0 for w in enumerate_weights(delta, d, k)}
    for mono in enumerate_metamonomials(delta, d, k):
        dims[weight_of(mono, k)] += 1
    return dims


def isotypic_multiplicities(fmt: Tuple[int, int, int]) -> Dict[Partition, int]:
    """Multiplicity of each occurring isotypic type in the format space.

    Works purely combinatorially: the dimension of the weight-w space equals
    the sum over types lam of multiplicity(lam) * kostka(lam, w), and the
    Kostka matrix is unitriangular for the dominance order, which lex descent
    refines.  Only nonzero multiplicities are returned.
    """
    delta, d, k = fmt
    dims = weight_dimensions(fmt)
    mults: Dict[Partition, int] = {}
    for lam in enumerate_partitions(delta * d, k):
        expected = dims.get(pad_partition(lam, k), 0)
        for mu, m in mults.items():
            expected -= m * kostka_number(mu, pad_partition(lam, k))
        if expected < 0:
            raise FormatError("inconsistent weight dimensions")  # pragma: no cover
        if expected:
            mults[lam] = expected
    return mults
