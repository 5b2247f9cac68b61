"""The gl_k action on polynomials and metapolynomials, and GL_k base change.

Basis elements of gl_k are index pairs (i, j), 1-based, standing for the
matrix unit with a single 1 in row i, column j.  On polynomials the pair
(i, j) acts as the shifted partial derivative -x_j d/dx_i; on metavariables
it sends c_mu to (mu_i + 1) c_{mu + e_i - e_j} for i != j and scales by mu_i
for i == j, extended to metamonomials as a derivation.  The two sign
conventions are consistent: evaluating the metavariable action against a
polynomial is the negative of pairing with the polynomial action, which the
test suite uses to pin the signs.

Group elements act by linear substitution: (g . m)(f) = m(g^{-1} . f).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from . import linalg
from .errors import FormatError
from .meta import MetaPolynomial, MultiIndex, Polynomial

BasisElement = Tuple[int, int]


def _check_basis_element(e: BasisElement, k: int) -> BasisElement:
    i, j = e
    if not (1 <= i <= k and 1 <= j <= k):
        raise FormatError(f"basis element {e} out of range for k={k}")
    return (int(i), int(j))


def act_on_poly(e: BasisElement, f: Polynomial) -> Polynomial:
    """Shifted partial derivative -x_j df/dx_i."""
    i, j = _check_basis_element(e, f.k)
    out: Dict[MultiIndex, Fraction] = {}
    for mu, coef in f.terms.items():
        if mu[i - 1] == 0:
            continue
        nu = list(mu)
        nu[i - 1] -= 1
        nu[j - 1] += 1
        key = tuple(nu)
        out[key] = out.get(key, Fraction(0)) - coef * mu[i - 1]
    result = Polynomial(f.k, out, d=f.d if out else None)
    return result if out else Polynomial.zero(f.k, f.d)


def act_on_metavariable(e: BasisElement, mu: MultiIndex) -> Optional[Tuple[int, MultiIndex]]:
    """Action on a single index: (coefficient, new index), or None when zero."""
    i, j = e
    if i == j:
        return (mu[i - 1], mu) if mu[i - 1] else None
    if mu[j - 1] == 0:
        return None
    nu = list(mu)
    nu[i - 1] += 1
    nu[j - 1] -= 1
    return (mu[i - 1] + 1, tuple(nu))


def act_on_meta(e: BasisElement, m: MetaPolynomial) -> MetaPolynomial:
    """Derivation action over the factors of each metamonomial."""
    e = _check_basis_element(e, m.k)
    out: Dict[tuple, Fraction] = {}
    for mono, coef in m.terms.items():
        for pos, mu in enumerate(mono):
            hit = act_on_metavariable(e, mu)
            if hit is None:
                continue
            scale, nu = hit
            key = tuple(sorted(mono[:pos] + (nu,) + mono[pos + 1:]))
            out[key] = out.get(key, Fraction(0)) + coef * scale
    result = MetaPolynomial(m.k, out, d=m.d)
    if result.is_zero:
        return MetaPolynomial.zero(m.delta, m.d, m.k)
    return result


@dataclass(frozen=True)
class GroupElement:
    """An invertible k x k rational matrix acting by base change."""

    matrix: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", rows)
        k = len(rows)
        if any(len(row) != k for row in rows):
            raise FormatError("matrix is not square")
        if linalg.det([list(r) for r in rows]) == 0:
            raise FormatError("matrix is singular")

    @property
    def k(self) -> int:
        return len(self.matrix)

    @classmethod
    def identity(cls, k: int) -> "GroupElement":
        return cls(tuple(tuple(Fraction(1 if i == j else 0) for j in range(k)) for i in range(k)))

    @classmethod
    def diagonal(cls, entries: Iterable) -> "GroupElement":
        entries = [Fraction(x) for x in entries]
        k = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else Fraction(0) for j in range(k)) for i in range(k)))

    def inverse(self) -> "GroupElement":
        inv = linalg.invert([list(r) for r in self.matrix])
        return GroupElement(tuple(tuple(row) for row in inv))

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        prod = linalg.mat_mul([list(r) for r in self.matrix], [list(r) for r in other.matrix])
        return GroupElement(tuple(tuple(row) for row in prod))


def substitute_linear(f: Polynomial, matrix) -> Polynomial:
    """The polynomial f(M x), where (M x)_i = sum_j M[i][j] x_j."""
    k = f.k
    rows = [list(r) for r in matrix]
    if len(rows) != k or any(len(r) != k for r in rows):
        raise FormatError(f"substitution matrix must be {k}x{k}")
    images = [Polynomial(k, {tuple(1 if t == j else 0 for t in range(k)): rows[i][j]
                             for j in range(k)}) for i in range(k)]
    out = Polynomial.zero(k, None)
    for mu, coef in f.terms.items():
        term = Polynomial.constant(k, coef)
        for i, power in enumerate(mu):
            for _ in range(power):
                term = term * images[i]
        out = out + term
    if out.is_zero:
        return Polynomial.zero(k, f.d)
    return out


def act_group_on_poly(g: GroupElement, f: Polynomial) -> Polynomial:
    """(g . f)(x) = f(g^{-1} x)."""
    if g.k != f.k:
        raise FormatError(f"variable counts differ: {g.k} vs {f.k}")
    return substitute_linear(f, g.inverse().matrix)


def act_group_on_meta(g: GroupElement, m: MetaPolynomial) -> MetaPolynomial:
    """(g . m)(f) = m(g^{-1} . f), realized by substitution on metavariables.

    Substituting x -> g x into a generic polynomial rewrites each coefficient
    c_mu as a linear combination of the c_nu, which is then substituted into
    m and expanded; no inversion of g is needed on this side.
    """
    if g.k != m.k:
        raise FormatError(f"variable counts differ: {g.k} vs {m.k}")
    if m.d is None:
        raise FormatError("group action needs a uniform inner degree")
    k, d = m.k, m.d
    # (g x)^nu = sum_mu S[nu][mu] x^mu; then c_mu(f(g x)) = sum_nu S[nu][mu] c_nu(f)
    replacement: Dict[MultiIndex, MetaPolynomial] = {}
    needed = {mu for mono in m.terms for mu in mono}
    columns: Dict[MultiIndex, Dict[MultiIndex, Fraction]] = {mu: {} for mu in needed}
    from .meta import enumerate_metavariables

    for nu in enumerate_metavariables(d, k):
        expanded = substitute_linear(Polynomial.monomial(nu), g.matrix)
        for mu in needed:
            coef = expanded.terms.get(mu)
            if coef:
                columns[mu][nu] = coef
    for mu in needed:
        replacement[mu] = MetaPolynomial(
            k, {(nu,): coef for nu, coef in columns[mu].items()}, d=d
        )
    out = MetaPolynomial.zero(m.delta, d, k)
    for mono, coef in m.terms.items():
        term = MetaPolynomial.constant(k, coef, d=d)
        for mu in mono:
            term = term * replacement[mu]
        out = out + term
    return out


def random_basis_change(k: int, seed: int, bound: int = 3) -> GroupElement:
    """Deterministic-by-seed invertible integer matrix with entries in [-bound, bound]."""
    if bound < 1:
        raise FormatError("bound must be >= 1")
    rng = random.Random(seed)
    while True:
        rows = tuple(
            tuple(Fraction(rng.randint(-bound, bound)) for _ in range(k)) for _ in range(k)
        )
        if linalg.det([list(r) for r in rows]) != 0:
            return GroupElement(rows)
