"""Exact sparse polynomials and metapolynomials over the rationals.

A polynomial in k variables is a dict mapping exponent tuples to Fraction
coefficients; the exponent tuple (2, 1) over k=2 stands for x1^2*x2.

A metapolynomial is a polynomial whose variables c_mu are themselves indexed
by exponent tuples mu: c_mu extracts the coefficient of x^mu from a degree-d
polynomial.  A metamonomial is a multiset of such indices, stored as a sorted
tuple; the empty tuple () is the constant metamonomial.  The format of a
metapolynomial is the triple (delta, d, k):

  delta  number of factors in every metamonomial (None if mixed),
  d      common degree |mu| of every index (None if mixed),
  k      number of underlying variables.

Mixed inner degree (d=None) occurs only transiently, e.g. while homogenizing;
mixed meta-degree (delta=None) occurs in affine circuit values.  Zero keeps
whatever format tag it was created with, and its weight is "every weight"
(weight queries return None for it).

All coefficients are fractions.Fraction, stored in lowest terms; zero
coefficients are never stored, so structural equality is semantic equality.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Optional, Tuple, Union

from .errors import FormatError

MultiIndex = Tuple[int, ...]
MetaMonomial = Tuple[MultiIndex, ...]
ScalarLike = Union[int, Fraction]

_INFER = object()


def _as_fraction(value: ScalarLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _check_index(mu: Iterable[int], k: Optional[int] = None) -> MultiIndex:
    mu = tuple(int(e) for e in mu)
    if any(e < 0 for e in mu):
        raise FormatError(f"negative exponent in index {mu}")
    if k is not None and len(mu) != k:
        raise FormatError(f"index {mu} has length {len(mu)}, expected {k}")
    return mu


class Polynomial:
    """Sparse exact polynomial in variables x1..xk.

    `d` is the common total degree of all monomials, or None when the
    polynomial is not homogeneous (or is zero without a declared degree).
    """

    __slots__ = ("k", "d", "terms")

    def __init__(self, k: int, terms: Mapping[MultiIndex, ScalarLike], d=_INFER):
        self.k = int(k)
        canon = {}
        for mu, coef in terms.items():
            coef = _as_fraction(coef)
            if coef == 0:
                continue
            canon[_check_index(mu, self.k)] = coef
        self.terms = canon
        if d is _INFER:
            degrees = {sum(mu) for mu in canon}
            self.d = degrees.pop() if len(degrees) == 1 else None
        else:
            self.d = None if d is None else int(d)
            if self.d is not None:
                bad = [mu for mu in canon if sum(mu) != self.d]
                if bad:
                    raise FormatError(f"monomial {bad[0]} has degree != {self.d}")

    @classmethod
    def zero(cls, k: int, d: Optional[int] = None) -> "Polynomial":
        return cls(k, {}, d=d)

    @classmethod
    def monomial(cls, mu: Iterable[int], coef: ScalarLike = 1) -> "Polynomial":
        mu = tuple(mu)
        return cls(len(mu), {mu: coef})

    @classmethod
    def variable(cls, k: int, i: int) -> "Polynomial":
        """The variable x_i (1-based) as a degree-1 polynomial."""
        if not 1 <= i <= k:
            raise FormatError(f"variable index {i} out of range 1..{k}")
        mu = [0] * k
        mu[i - 1] = 1
        return cls(k, {tuple(mu): 1})

    @classmethod
    def constant(cls, k: int, value: ScalarLike) -> "Polynomial":
        return cls(k, {(0,) * k: value})

    def coefficient(self, mu: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(mu), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _compatible(self, other: "Polynomial") -> Optional[int]:
        if self.k != other.k:
            raise FormatError(f"variable counts differ: {self.k} vs {other.k}")
        if self.is_zero:
            return other.d
        if other.is_zero:
            return self.d
        if self.d is None or other.d is None:
            return None
        return self.d if self.d == other.d else None

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._compatible(other)
        out = dict(self.terms)
        for mu, coef in other.terms.items():
            out[mu] = out.get(mu, Fraction(0)) + coef
        return Polynomial(self.k, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.k, {mu: -c for mu, c in self.terms.items()}, d=self.d)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            s = _as_fraction(other)
            return Polynomial(self.k, {mu: c * s for mu, c in self.terms.items()}, d=self.d)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.k != other.k:
            raise FormatError(f"variable counts differ: {self.k} vs {other.k}")
        out = {}
        for mu, a in self.terms.items():
            for nu, b in other.terms.items():
                key = tuple(x + y for x, y in zip(mu, nu))
                out[key] = out.get(key, Fraction(0)) + a * b
        return Polynomial(self.k, out)

    __rmul__ = __mul__

    def __truediv__(self, scalar: ScalarLike) -> "Polynomial":
        return self * (Fraction(1) / _as_fraction(scalar))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.k == other.k
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.k, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if self.is_zero:
            return f"Polynomial(k={self.k}, 0)"
        body = " + ".join(
            f"{c}*x^{mu}" for mu, c in sorted(self.terms.items())
        )
        return f"Polynomial(k={self.k}, {body})"


class MetaPolynomial:
    """Sparse exact metapolynomial with format (delta, d, k)."""

    __slots__ = ("k", "d", "delta", "terms")

    def __init__(
        self,
        k: int,
        terms: Mapping[MetaMonomial, ScalarLike],
        d=_INFER,
        delta=_INFER,
    ):
        self.k = int(k)
        canon = {}
        for mono, coef in terms.items():
            coef = _as_fraction(coef)
            if coef == 0:
                continue
            factors = tuple(sorted(_check_index(mu, self.k) for mu in mono))
            canon[factors] = canon.get(factors, Fraction(0)) + coef
        canon = {m: c for m, c in canon.items() if c != 0}
        self.terms = canon
        if d is _INFER:
            degrees = {sum(mu) for mono in canon for mu in mono}
            self.d = degrees.pop() if len(degrees) == 1 else None
        else:
            self.d = None if d is None else int(d)
            if self.d is not None:
                for mono in canon:
                    for mu in mono:
                        if sum(mu) != self.d:
                            raise FormatError(
                                f"index {mu} has degree {sum(mu)}, expected {self.d}"
                            )
        if delta is _INFER:
            sizes = {len(mono) for mono in canon}
            self.delta = sizes.pop() if len(sizes) == 1 else None
        else:
            self.delta = None if delta is None else int(delta)
            if self.delta is not None:
                for mono in canon:
                    if len(mono) != self.delta:
                        raise FormatError(
                            f"metamonomial {mono} has {len(mono)} factors, expected {self.delta}"
                        )

    @property
    def format(self) -> Tuple[Optional[int], Optional[int], int]:
        return (self.delta, self.d, self.k)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @classmethod
    def zero(cls, delta: Optional[int], d: Optional[int], k: int) -> "MetaPolynomial":
        return cls(k, {}, d=d, delta=delta)

    @classmethod
    def metavariable(cls, mu: Iterable[int]) -> "MetaPolynomial":
        mu = tuple(mu)
        return cls(len(mu), {(mu,): 1})

    @classmethod
    def monomial(cls, factors: Iterable[Iterable[int]], coef: ScalarLike = 1) -> "MetaPolynomial":
        factors = tuple(tuple(mu) for mu in factors)
        if not factors:
            raise FormatError("empty metamonomial needs an explicit k; use constant()")
        return cls(len(factors[0]), {factors: coef})

    @classmethod
    def constant(cls, k: int, value: ScalarLike, d: Optional[int] = None) -> "MetaPolynomial":
        return cls(k, {(): value}, d=d)

    def coefficient(self, mono: Iterable[Iterable[int]]) -> Fraction:
        key = tuple(sorted(tuple(mu) for mu in mono))
        return self.terms.get(key, Fraction(0))

    def _add_compat(self, other: "MetaPolynomial") -> None:
        if self.k != other.k:
            raise FormatError(f"variable counts differ: {self.k} vs {other.k}")
        da, db = self.d, other.d
        if da is not None and db is not None and da != db:
            if not (self.is_zero or other.is_zero):
                raise FormatError(f"inner degrees differ: {da} vs {db}")

    def _result_d(self, other: "MetaPolynomial") -> Optional[int]:
        if self.d == other.d:
            return self.d
        if self.is_zero or self.d is None:
            return other.d
        if other.is_zero or other.d is None:
            return self.d
        return None

    def __add__(self, other: "MetaPolynomial") -> "MetaPolynomial":
        if not isinstance(other, MetaPolynomial):
            return NotImplemented
        self._add_compat(other)
        out = dict(self.terms)
        for mono, coef in other.terms.items():
            out[mono] = out.get(mono, Fraction(0)) + coef
        result = MetaPolynomial(self.k, out, d=self._result_d(other))
        if result.is_zero and self.delta == other.delta:
            return MetaPolynomial.zero(self.delta, self._result_d(other), self.k)
        return result

    def __neg__(self) -> "MetaPolynomial":
        return MetaPolynomial(
            self.k, {m: -c for m, c in self.terms.items()}, d=self.d, delta=self.delta
        )

    def __sub__(self, other: "MetaPolynomial") -> "MetaPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "MetaPolynomial":
        if isinstance(other, (int, Fraction)):
            s = _as_fraction(other)
            if s == 0:
                return MetaPolynomial.zero(self.delta, self.d, self.k)
            return MetaPolynomial(
                self.k, {m: c * s for m, c in self.terms.items()}, d=self.d, delta=self.delta
            )
        if not isinstance(other, MetaPolynomial):
            return NotImplemented
        self._add_compat(other)
        out = {}
        for ma, a in self.terms.items():
            for mb, b in other.terms.items():
                key = tuple(sorted(ma + mb))
                out[key] = out.get(key, Fraction(0)) + a * b
        result = MetaPolynomial(self.k, out, d=self._result_d(other))
        if result.is_zero:
            delta = (
                self.delta + other.delta
                if self.delta is not None and other.delta is not None
                else None
            )
            return MetaPolynomial.zero(delta, self._result_d(other), self.k)
        return result

    __rmul__ = __mul__

    def __truediv__(self, scalar: ScalarLike) -> "MetaPolynomial":
        return self * (Fraction(1) / _as_fraction(scalar))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MetaPolynomial)
            and self.k == other.k
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.k, frozenset(self.terms.items())))

    def __str__(self) -> str:
        return format_metapolynomial(self)

    def __repr__(self) -> str:
        return f"MetaPolynomial({self.format}, {format_metapolynomial(self)})"


def format_metapolynomial(m: MetaPolynomial) -> str:
    """Canonical text form, e.g. ``c[1,1]^2 - 4*c[2,0]*c[0,2]``."""
    if m.is_zero:
        return "0"
    chunks = []
    for mono in sorted(m.terms):
        coef = m.terms[mono]
        sign = "-" if coef < 0 else "+"
        mag = -coef if coef < 0 else coef
        factors = []
        run_start = 0
        while run_start < len(mono):
            run_end = run_start
            while run_end < len(mono) and mono[run_end] == mono[run_start]:
                run_end += 1
            index = ",".join(str(e) for e in mono[run_start])
            power = run_end - run_start
            factors.append(f"c[{index}]" + (f"^{power}" if power > 1 else ""))
            run_start = run_end
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        chunks.append((sign, body))
    first_sign, first_body = chunks[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in chunks[1:]:
        text += f" {sign} {body}"
    return text


def meta_add(a: MetaPolynomial, b: MetaPolynomial) -> MetaPolynomial:
    """Coefficientwise sum; requires identical formats (zero matches any delta)."""
    if a.k != b.k:
        raise FormatError(f"variable counts differ: {a.k} vs {b.k}")
    if not (a.is_zero or b.is_zero):
        if a.d != b.d or a.delta != b.delta:
            raise FormatError(f"formats differ: {a.format} vs {b.format}")
    return a + b


def meta_mul(a: MetaPolynomial, b: MetaPolynomial) -> MetaPolynomial:
    """Distributive product; requires matching d and k, meta-degrees add."""
    if a.k != b.k:
        raise FormatError(f"variable counts differ: {a.k} vs {b.k}")
    if a.d is not None and b.d is not None and a.d != b.d and not (a.is_zero or b.is_zero):
        raise FormatError(f"inner degrees differ: {a.d} vs {b.d}")
    return a * b


def evaluate(m: MetaPolynomial, f: Polynomial) -> Fraction:
    """Evaluate m at f by substituting f's coefficient for each metavariable."""
    if m.k != f.k:
        raise FormatError(f"variable counts differ: {m.k} vs {f.k}")
    if m.d is not None and f.d is not None and m.d != f.d and not f.is_zero:
        raise FormatError(f"inner degrees differ: {m.d} vs {f.d}")
    total = Fraction(0)
    for mono, coef in m.terms.items():
        value = coef
        for mu in mono:
            value *= f.terms.get(mu, Fraction(0))
            if value == 0:
                break
        total += value
    return total


def homogenize_poly(f: Polynomial, d_target: int) -> Polynomial:
    """Degree-d homogenization: each monomial x^mu picks up x0^(d-|mu|).

    The homogenizing variable is prepended, so the result has k+1 variables
    with the new variable at position 0.
    """
    d_target = int(d_target)
    for mu in f.terms:
        if sum(mu) > d_target:
            raise FormatError(f"monomial {mu} has degree > {d_target}")
    out = {(d_target - sum(mu),) + mu: c for mu, c in f.terms.items()}
    return Polynomial(f.k + 1, out, d=d_target)


def homogenize_meta(m: MetaPolynomial, d_target: int) -> MetaPolynomial:
    """Replace each index mu by (d_target-|mu|,)+mu over k+1 variables.

    Together with homogenize_poly this preserves evaluation: the homogenized
    metapolynomial applied to the homogenized polynomial gives the original
    value.
    """
    d_target = int(d_target)
    for mono in m.terms:
        for mu in mono:
            if sum(mu) > d_target:
                raise FormatError(f"index {mu} has degree > {d_target}")
    out = {}
    for mono, coef in m.terms.items():
        new_mono = tuple((d_target - sum(mu),) + mu for mu in mono)
        out[new_mono] = coef
    return MetaPolynomial(m.k + 1, out, d=d_target, delta=m.delta)


def enumerate_metavariables(d: int, k: int) -> list:
    """All indices mu with |mu| = d over k variables, lexicographically descending."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    if k >= 1:
        rec((), d, k)
    return out


def enumerate_metamonomials(delta: int, d: int, k: int) -> list:
    """All metamonomials of the format, as sorted index tuples, in canonical order."""
    variables = sorted(enumerate_metavariables(d, k))
    return [tuple(combo) for combo in combinations_with_replacement(variables, delta)]
