"""Exact linear algebra over the rationals.

Matrices are lists of lists of Fraction, vectors are lists of Fraction.
Row reduction uses fraction-free Bareiss elimination on integer-rescaled
rows, which keeps intermediate entries as single integers instead of
ever-growing fractions; kernels and solves back-substitute exactly.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

Vector = List[Fraction]
Matrix = List[List[Fraction]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def mat_vec(a: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return [sum((row[j] * v[j] for j in range(len(v))), Fraction(0)) for row in a]


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    n, m = len(a), len(b[0])
    inner = len(b)
    out = zeros(n, m)
    for i in range(n):
        row = a[i]
        acc = out[i]
        for t in range(inner):
            c = row[t]
            if c == 0:
                continue
            brow = b[t]
            for j in range(m):
                if brow[j] != 0:
                    acc[j] += c * brow[j]
    return out


def _integer_rows(a: Sequence[Sequence[Fraction]]) -> List[List[int]]:
    """Rescale each row by the lcm of denominators; preserves row space and kernel."""
    out = []
    for row in a:
        scale = 1
        for x in row:
            den = x.denominator
            scale = scale * den // gcd(scale, den)
        out.append([int(x * scale) for x in row])
    return out


def _bareiss_echelon(rows: List[List[int]]) -> Tuple[List[List[int]], List[int]]:
    """Fraction-free row echelon form; returns (echelon rows, pivot columns)."""
    m = [row[:] for row in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    pivots: List[int] = []
    prev = 1
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pivots.append(c)
        pv = m[r][c]
        for i in range(r + 1, n_rows):
            if all(x == 0 for x in m[i]):
                continue
            factor = m[i][c]
            for j in range(n_cols):
                m[i][j] = (pv * m[i][j] - factor * m[r][j]) // prev
        prev = pv
        r += 1
        if r == n_rows:
            break
    return m[:r], pivots


def rank(a: Sequence[Sequence[Fraction]]) -> int:
    if not a or not a[0]:
        return 0
    _, pivots = _bareiss_echelon(_integer_rows(a))
    return len(pivots)


def nullspace(a: Sequence[Sequence[Fraction]]) -> List[Vector]:
    """Basis of the right kernel, one vector per free column."""
    if not a:
        return []
    n_cols = len(a[0])
    echelon, pivots = _bareiss_echelon(_integer_rows(a))
    free = [c for c in range(n_cols) if c not in pivots]
    basis: List[Vector] = []
    for fc in free:
        v = [Fraction(0)] * n_cols
        v[fc] = Fraction(1)
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            row = echelon[i]
            s = sum((Fraction(row[j]) * v[j] for j in range(pc + 1, n_cols)), Fraction(0))
            v[pc] = -s / row[pc]
        basis.append(v)
    return basis


def det(a: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(a)
    if n == 0:
        return Fraction(1)
    scales = []
    int_rows = []
    for row in a:
        scale = 1
        for x in row:
            den = x.denominator
            scale = scale * den // gcd(scale, den)
        scales.append(scale)
        int_rows.append([int(x * scale) for x in row])
    m = int_rows
    sign = 1
    prev = 1
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            sign = -sign
        pv = m[c][c]
        for i in range(c + 1, n):
            factor = m[i][c]
            for j in range(n):
                m[i][j] = (pv * m[i][j] - factor * m[c][j]) // prev
        prev = pv
    value = Fraction(sign * m[n - 1][n - 1])
    for s in scales:
        value /= s
    return value


def invert(a: Sequence[Sequence[Fraction]]) -> Matrix:
    """Inverse via Gauss-Jordan; raises ValueError on singular input."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(a)]
    r = 0
    for c in range(n):
        pivot_row = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if pivot_row is None:
            raise ValueError("singular matrix")
        aug[r], aug[pivot_row] = aug[pivot_row], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                factor = aug[i][c]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[r])]
        r += 1
    return [row[n:] for row in aug]


def solve(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> Optional[Vector]:
    """One solution of a x = b, or None if inconsistent."""
    n_rows = len(a)
    n_cols = len(a[0]) if n_rows else 0
    aug = [list(row) + [b[i]] for i, row in enumerate(a)]
    echelon, pivots = _bareiss_echelon(_integer_rows(aug))
    if n_cols in pivots:
        return None
    x = [Fraction(0)] * n_cols
    for i in range(len(pivots) - 1, -1, -1):
        pc = pivots[i]
        row = echelon[i]
        s = sum((Fraction(row[j]) * x[j] for j in range(pc + 1, n_cols)), Fraction(0))
        x[pc] = (Fraction(row[n_cols]) - s) / row[pc]
    return x


def column_space_basis(a: Sequence[Sequence[Fraction]]) -> List[Vector]:
    """The pivot columns of a, as vectors."""
    if not a or not a[0]:
        return []
    transposed = [list(col) for col in zip(*a)]
    # pivots of A identify independent columns; run elimination on A itself
    _, pivots = _bareiss_echelon(_integer_rows(a))
    return [transposed[c] for c in pivots]
