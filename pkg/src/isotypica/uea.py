"""Noncommutative operator polynomials in the matrix-unit symbols.

A Word is a tuple of (i, j) pairs; the leftmost letter is applied last, so
the word (X, Y) acts on m as X.(Y.m).  A UeaElement is an exact-rational
linear combination of words over a fixed k.  Rewriting an element so that
every word is sorted by a chosen basis order (repeatedly transposing
adjacent out-of-order letters and adding the commutator correction on the
shorter word) yields the ordered normal form; the commutator of two matrix
units (a,b), (c,d) is delta_{bc} (a,d) - delta_{da} (c,b).

The module also builds the cyclic-sum central elements

    sum over i_1..i_p of (i_1,i_2)(i_2,i_3)...(i_p,i_1),

the level-restricted variants with indices bounded by l, and their exact
integer eigenvalues on the irreducible with highest weight lam, computed as
the sum of all entries of A^p for the triangular matrix A with diagonal
lam_i + k - i, zeros below and -1 above the diagonal.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .action import BasisElement, act_on_meta
from .errors import FormatError, NotNormalizedError
from .meta import MetaPolynomial

Word = Tuple[BasisElement, ...]
ExponentTuple = Tuple[int, ...]


def default_basis_order(k: int) -> Tuple[BasisElement, ...]:
    """The fixed public order: pairs (i, j) sorted lexicographically."""
    return tuple((i, j) for i in range(1, k + 1) for j in range(1, k + 1))


class UeaElement:
    """Exact-rational noncommutative polynomial in the (i, j) symbols."""

    __slots__ = ("k", "terms")

    def __init__(self, k: int, terms: Dict[Word, Fraction]):
        self.k = int(k)
        canon: Dict[Word, Fraction] = {}
        for word, coef in terms.items():
            coef = Fraction(coef)
            if coef == 0:
                continue
            word = tuple((int(i), int(j)) for i, j in word)
            for i, j in word:
                if not (1 <= i <= self.k and 1 <= j <= self.k):
                    raise FormatError(f"letter {(i, j)} out of range for k={self.k}")
            canon[word] = canon.get(word, Fraction(0)) + coef
        self.terms = {w: c for w, c in canon.items() if c != 0}

    @classmethod
    def zero(cls, k: int) -> "UeaElement":
        return cls(k, {})

    @classmethod
    def one(cls, k: int) -> "UeaElement":
        return cls(k, {(): Fraction(1)})

    @classmethod
    def generator(cls, k: int, i: int, j: int) -> "UeaElement":
        return cls(k, {((i, j),): Fraction(1)})

    @property
    def length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "UeaElement") -> "UeaElement":
        if self.k != other.k:
            raise FormatError(f"k differs: {self.k} vs {other.k}")
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return UeaElement(self.k, out)

    def __neg__(self) -> "UeaElement":
        return UeaElement(self.k, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "UeaElement") -> "UeaElement":
        return self + (-other)

    def __mul__(self, other) -> "UeaElement":
        if isinstance(other, (int, Fraction)):
            return UeaElement(self.k, {w: c * other for w, c in self.terms.items()})
        if not isinstance(other, UeaElement):
            return NotImplemented
        if self.k != other.k:
            raise FormatError(f"k differs: {self.k} vs {other.k}")
        out: Dict[Word, Fraction] = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                key = wa + wb
                out[key] = out.get(key, Fraction(0)) + ca * cb
        return UeaElement(self.k, out)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "UeaElement":
        return self * (Fraction(1) / Fraction(scalar))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, UeaElement)
            and self.k == other.k
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.k, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if self.is_zero:
            return f"UeaElement(k={self.k}, 0)"
        body = " + ".join(
            f"{c}*{'.'.join(f'E{i}{j}' for i, j in w) or '1'}"
            for w, c in sorted(self.terms.items())
        )
        return f"UeaElement(k={self.k}, {body})"


def bracket(x: BasisElement, y: BasisElement) -> List[Tuple[int, BasisElement]]:
    """Commutator of two matrix units as a signed list of at most two units."""
    (a, b), (c, d) = x, y
    out: List[Tuple[int, BasisElement]] = []
    if b == c:
        out.append((1, (a, d)))
    if d == a:
        out.append((-1, (c, b)))
    return out


_NORMAL_CACHE: Dict[Tuple[Tuple[BasisElement, ...], Word], Dict[Word, Fraction]] = {}


def _normalize_word(word: Word, order: Tuple[BasisElement, ...], ranks) -> Dict[Word, Fraction]:
    key = (order, word)
    cached = _NORMAL_CACHE.get(key)
    if cached is not None:
        return cached
    for a in range(len(word) - 1):
        if ranks[word[a]] > ranks[word[a + 1]]:
            x, y = word[a], word[a + 1]
            swapped = word[:a] + (y, x) + word[a + 2:]
            acc = dict(_normalize_word(swapped, order, ranks))
            for sign, z in bracket(x, y):
                shorter = word[:a] + (z,) + word[a + 2:]
                for w2, c2 in _normalize_word(shorter, order, ranks).items():
                    acc[w2] = acc.get(w2, Fraction(0)) + sign * c2
            acc = {w: c for w, c in acc.items() if c != 0}
            _NORMAL_CACHE[key] = acc
            return acc
    result = {word: Fraction(1)}
    _NORMAL_CACHE[key] = result
    return result


def pbw_normalize(e: UeaElement, order: Optional[Sequence[BasisElement]] = None) -> UeaElement:
    """Rewrite so that every word is nondecreasing in the basis order.

    The action on metapolynomials is unchanged; the result is the unique
    ordered form, so normalization is idempotent and linear.
    """
    order = tuple(order) if order is not None else default_basis_order(e.k)
    ranks = {el: r for r, el in enumerate(order)}
    for word in e.terms:
        for letter in word:
            if letter not in ranks:
                raise FormatError(f"letter {letter} not in the basis order")
    out: Dict[Word, Fraction] = {}
    for word, coef in e.terms.items():
        for w2, c2 in _normalize_word(word, order, ranks).items():
            out[w2] = out.get(w2, Fraction(0)) + coef * c2
    return UeaElement(e.k, out)


def is_normalized(e: UeaElement, order: Optional[Sequence[BasisElement]] = None) -> bool:
    order = tuple(order) if order is not None else default_basis_order(e.k)
    ranks = {el: r for r, el in enumerate(order)}
    return all(
        all(ranks[w[a]] <= ranks[w[a + 1]] for a in range(len(w) - 1)) for w in e.terms
    )


def casimir(k: int, p: int) -> UeaElement:
    """The degree-p cyclic-sum central element for gl_k."""
    if not 1 <= p <= k:
        raise FormatError(f"p={p} out of range 1..{k}")
    return casimir_gz(k, p, k)


def casimir_gz(l: int, p: int, k: Optional[int] = None) -> UeaElement:
    """Same cyclic sum with indices restricted to 1..l, inside gl_k (k >= l)."""
    k = l if k is None else int(k)
    if not 1 <= p <= l:
        raise FormatError(f"p={p} out of range 1..{l}")
    if l > k:
        raise FormatError(f"l={l} exceeds k={k}")
    terms: Dict[Word, Fraction] = {}
    for idx in product(range(1, l + 1), repeat=p):
        word = tuple((idx[t], idx[(t + 1) % p]) for t in range(p))
        terms[word] = terms.get(word, Fraction(0)) + 1
    return UeaElement(k, terms)


def apply_word(word: Word, m: MetaPolynomial) -> MetaPolynomial:
    """Apply right-to-left: the last letter acts first."""
    for e in reversed(word):
        m = act_on_meta(e, m)
    return m


def apply(e: UeaElement, m: MetaPolynomial) -> MetaPolynomial:
    """Apply an operator polynomial, linearly over its words."""
    if e.k != m.k:
        raise FormatError(f"k differs: {e.k} vs {m.k}")
    out = MetaPolynomial.zero(m.delta, m.d, m.k)
    for word, coef in e.terms.items():
        out = out + coef * apply_word(word, m)
    return out


def central_character(lam: Iterable[int], p: int, k: int) -> int:
    """Exact eigenvalue of the degree-p central element on the type-lam irreducible.

    lam is a weakly decreasing integer k-tuple (shorter input is padded with
    zeros, which must keep it weakly decreasing).  The value is the sum of
    all entries of A^p, where A is upper triangular with diagonal entries
    lam_i + k - i and -1 above the diagonal.
    """
    lam = [int(x) for x in lam]
    if len(lam) < k:
        lam = lam + [0] * (k - len(lam))
    if len(lam) != k:
        raise FormatError(f"{tuple(lam)} does not fit k={k}")
    if any(a < b for a, b in zip(lam, lam[1:])):
        raise FormatError(f"{tuple(lam)} is not weakly decreasing")
    if not 1 <= p <= k:
        raise FormatError(f"p={p} out of range 1..{k}")
    a = [[lam[i] + k - (i + 1) if i == j else (-1 if i < j else 0) for j in range(k)]
         for i in range(k)]
    power = a
    for _ in range(p - 1):
        power = [[sum(power[i][t] * a[t][j] for t in range(k)) for j in range(k)]
                 for i in range(k)]
    return sum(sum(row) for row in power)


def exponent_tuple(word: Word, k: int, order: Optional[Sequence[BasisElement]] = None) -> ExponentTuple:
    """Multiplicity vector of an ordered word in the fixed basis order."""
    order = tuple(order) if order is not None else default_basis_order(k)
    ranks = {el: r for r, el in enumerate(order)}
    counts = [0] * len(order)
    prev = -1
    for letter in word:
        r = ranks[letter]
        if r < prev:
            raise NotNormalizedError(f"word {word} is not ordered")
        counts[r] += 1
        prev = r
    return tuple(counts)


def word_from_exponents(exps: ExponentTuple, k: int,
                        order: Optional[Sequence[BasisElement]] = None) -> Word:
    order = tuple(order) if order is not None else default_basis_order(k)
    out: List[BasisElement] = []
    for r, count in enumerate(exps):
        out.extend([order[r]] * count)
    return tuple(out)


def bounded_exponents(length: int, slots: int) -> List[ExponentTuple]:
    """All tuples in N^slots with entry sum at most length, lexicographically."""
    out: List[ExponentTuple] = []

    def rec(prefix: Tuple[int, ...], budget: int, remaining: int):
        if remaining == 0:
            out.append(prefix)
            return
        for e in range(budget + 1):
            rec(prefix + (e,), budget - e, remaining - 1)

    rec((), length, slots)
    return out
