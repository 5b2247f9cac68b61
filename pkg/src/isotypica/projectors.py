"""Projector plans: products of linear factors in commuting operators.

Each factor is (U - shift) / divisor for a generator U acting diagonalizably
on the format space: it fixes the target component pointwise, annihilates
every component on which U acts by `shift`, and rescales the rest, which
later factors annihilate.  The factor list therefore realizes the unique
equivariant projection onto the target.

Four plan families are provided:

  * weight plans interpolate each diagonal generator separately over the
    integer range 0..delta*d (k*delta*d factors of length 1);
  * isotypic plans run over the types that actually occur in the format
    space (computed combinatorially), separating the target from each other
    type with the smallest-degree central element whose eigenvalues differ;
  * highest-weight plans concatenate the weight plan of the target partition
    with its isotypic plan;
  * tableau plans work level by level along the subalgebra chain, separating
    the target pattern's partition at each level from every candidate
    partition of any size up to delta*d (sizes split already at degree 1).

Factors with the same (operator, shift) annihilate the same components, so
duplicates are emitted once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import rep, uea
from .errors import FormatError, SeparationError
from .meta import MetaPolynomial
from .rep import Partition, Tableau, Weight

Format = Tuple[int, int, int]


@dataclass(frozen=True)
class ProjectorFactor:
    """One linear factor (op - shift) / divisor."""

    op: uea.UeaElement
    shift: Fraction
    divisor: Fraction

    def __post_init__(self):
        object.__setattr__(self, "shift", Fraction(self.shift))
        object.__setattr__(self, "divisor", Fraction(self.divisor))
        if self.divisor == 0:
            raise FormatError("projector factor with zero divisor")

    def as_element(self) -> uea.UeaElement:
        """The factor as a single operator polynomial (with a constant term)."""
        one = uea.UeaElement.one(self.op.k)
        return (self.op - self.shift * one) / self.divisor

    def apply(self, m: MetaPolynomial) -> MetaPolynomial:
        return (uea.apply(self.op, m) - self.shift * m) / self.divisor


@dataclass(frozen=True)
class ProjectorPlan:
    """An ordered factor list projecting onto one component of a format space."""

    target: Tuple
    fmt: Format
    factors: Tuple[ProjectorFactor, ...]

    def __len__(self) -> int:
        return len(self.factors)


def _check_fmt(fmt: Format) -> Format:
    delta, d, k = fmt
    if delta < 0 or d < 0 or k < 1:
        raise FormatError(f"bad format {fmt}")
    return (int(delta), int(d), int(k))


def plan_weight(w: Iterable[int], fmt: Format) -> ProjectorPlan:
    """Per-coordinate interpolation over the diagonal generators."""
    delta, d, k = _check_fmt(fmt)
    w = tuple(int(e) for e in w)
    n = delta * d
    if len(w) != k or any(e < 0 for e in w) or sum(w) != n:
        raise FormatError(f"{w} is not a weight of format {fmt}")
    factors: List[ProjectorFactor] = []
    for i in range(1, k + 1):
        gen = uea.UeaElement.generator(k, i, i)
        for v in range(n + 1):
            if v == w[i - 1]:
                continue
            factors.append(ProjectorFactor(gen, Fraction(v), Fraction(w[i - 1] - v)))
    return ProjectorPlan(("weight", w), fmt, tuple(factors))


def _separating_degree(lam: Sequence[int], mu: Sequence[int], l: int) -> Tuple[int, int, int]:
    """Smallest p in 1..l whose central eigenvalues differ, with both values."""
    for p in range(1, l + 1):
        a = uea.central_character(lam, p, l)
        b = uea.central_character(mu, p, l)
        if a != b:
            return p, a, b
    raise SeparationError(f"no generator separates {tuple(lam)} from {tuple(mu)}")


def occurring_types(fmt: Format) -> List[Partition]:
    """Isotypic types with nonzero multiplicity, in enumeration order."""
    delta, d, k = _check_fmt(fmt)
    mults = rep.isotypic_multiplicities(fmt)
    return [lam for lam in rep.enumerate_partitions(delta * d, k) if lam in mults]


def plan_isotypic(
    lam: Iterable[int],
    fmt: Format,
    candidates: Optional[Sequence[Iterable[int]]] = None,
) -> ProjectorPlan:
    """Separate lam from every other occurring type (or given candidate set)."""
    delta, d, k = _check_fmt(fmt)
    lam = rep.partition(lam)
    if sum(lam) != delta * d or len(lam) > k:
        raise FormatError(f"{lam} is not a type of format {fmt}")
    if candidates is None:
        cand = occurring_types(fmt)
    else:
        cand = [rep.partition(c) for c in candidates]
    factors: List[ProjectorFactor] = []
    seen = set()
    for mu in cand:
        if mu == lam:
            continue
        p, chi_lam, chi_mu = _separating_degree(lam, mu, k)
        key = (p, chi_mu)
        if key in seen:
            continue
        seen.add(key)
        factors.append(
            ProjectorFactor(uea.casimir(k, p), Fraction(chi_mu), Fraction(chi_lam - chi_mu))
        )
    return ProjectorPlan(("isotypic", lam), fmt, tuple(factors))


def plan_hwv(
    lam: Iterable[int],
    fmt: Format,
    candidates: Optional[Sequence[Iterable[int]]] = None,
) -> ProjectorPlan:
    """Weight-lam interpolation followed by the isotypic plan for lam."""
    delta, d, k = _check_fmt(fmt)
    lam = rep.partition(lam)
    weight_part = plan_weight(rep.pad_partition(lam, k), fmt)
    isotypic_part = plan_isotypic(lam, fmt, candidates)
    return ProjectorPlan(
        ("hwv", lam), fmt, weight_part.factors + isotypic_part.factors
    )


def plan_gz(t: Tableau, fmt: Format) -> ProjectorPlan:
    """Level-by-level separation of the pattern of t along the subalgebra chain."""
    delta, d, k = _check_fmt(fmt)
    n = delta * d
    if t.size() != n:
        raise FormatError(f"tableau has {t.size()} cells, expected {n}")
    if t.max_entry() > k:
        raise FormatError(f"tableau entry exceeds k={k}")
    pattern = rep.tableau_to_pattern(t, k)
    factors: List[ProjectorFactor] = []
    seen = set()
    for l in range(1, k + 1):
        target = pattern.levels[l - 1]
        for size in range(n + 1):
            for nu in rep.enumerate_partitions(size, l):
                if nu == target:
                    continue
                p, chi_target, chi_nu = _separating_degree(target, nu, l)
                key = (l, p, chi_nu)
                if key in seen:
                    continue
                seen.add(key)
                factors.append(
                    ProjectorFactor(
                        uea.casimir_gz(l, p, k),
                        Fraction(chi_nu),
                        Fraction(chi_target - chi_nu),
                    )
                )
    return ProjectorPlan(("gz", t), fmt, tuple(factors))


def apply_plan(plan: ProjectorPlan, m: MetaPolynomial) -> MetaPolynomial:
    """Apply the factors in order; the result lies in the target component."""
    delta, d, k = plan.fmt
    if m.k != k:
        raise FormatError(f"variable counts differ: {m.k} vs {k}")
    if m.d not in (None, d) and not m.is_zero:
        raise FormatError(f"inner degrees differ: {m.d} vs {d}")
    if m.delta not in (None, delta) and not m.is_zero:
        raise FormatError(f"meta-degrees differ: {m.delta} vs {delta}")
    out = m
    for factor in plan.factors:
        out = factor.apply(out)
    return out
