"""Brute-force decomposition by exact linear algebra, independent of the plans.

The metamonomials of a format space form a weight basis, which this module
verifies directly (each diagonal generator must scale every basis monomial).
All further computation happens inside the small weight blocks:

  * isotypic components are simultaneous eigenspaces of the central
    elements, intersected blockwise;
  * highest-weight spaces are the kernels of the raising operators inside
    the weight block of the target partition;
  * tableau components are simultaneous eigenspaces of the level-restricted
    central elements, inside the weight block of the tableau's content.

Projections onto a component along the rest of its family are computed by a
single exact base change per family.  Eliminations are fraction-free.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg, rep, uea
from .action import act_on_meta
from .errors import DimensionCapError, FormatError
from .meta import MetaMonomial, MetaPolynomial, enumerate_metamonomials
from .rep import Partition, Tableau, Weight

Format = Tuple[int, int, int]

DEFAULT_DIM_CAP = 5000
DIM_CAP_ENV = "ISOTYPICA_DIM_CAP"


def default_dim_cap() -> int:
    value = os.environ.get(DIM_CAP_ENV)
    if value:
        try:
            return int(value)
        except ValueError as exc:
            raise DimensionCapError(f"bad {DIM_CAP_ENV}={value!r}") from exc
    return DEFAULT_DIM_CAP


def metamonomial_basis(fmt: Format, cap: Optional[int] = None) -> List[MetaMonomial]:
    delta, d, k = fmt
    cap = default_dim_cap() if cap is None else cap
    import math

    n_vars = math.comb(d + k - 1, k - 1)
    dim = math.comb(n_vars + delta - 1, delta)
    if dim > cap:
        raise DimensionCapError(f"format {fmt} has dimension {dim} > cap {cap}")
    return enumerate_metamonomials(delta, d, k)


@dataclass
class ActionMatrix:
    """Matrix of an operator on the metamonomial basis of a format space."""

    fmt: Format
    basis: Tuple[MetaMonomial, ...]
    rows: List[List[Fraction]]


def _to_vector(m: MetaPolynomial, index: Dict[MetaMonomial, int]) -> List[Fraction]:
    v = [Fraction(0)] * len(index)
    for mono, coef in m.terms.items():
        pos = index.get(mono)
        if pos is None:
            raise FormatError(f"monomial {mono} outside the format space")
        v[pos] = coef
    return v


def _from_vector(v: Sequence[Fraction], basis: Sequence[MetaMonomial], fmt: Format) -> MetaPolynomial:
    delta, d, k = fmt
    terms = {basis[i]: c for i, c in enumerate(v) if c != 0}
    if not terms:
        return MetaPolynomial.zero(delta, d, k)
    return MetaPolynomial(k, terms, d=d)


def build_action_matrix(e: uea.UeaElement, fmt: Format, cap: Optional[int] = None) -> ActionMatrix:
    """Column j is the operator applied to basis monomial j."""
    delta, d, k = fmt
    if e.k != k:
        raise FormatError(f"k differs: {e.k} vs {k}")
    basis = metamonomial_basis(fmt, cap)
    index = {mono: i for i, mono in enumerate(basis)}
    n = len(basis)
    rows = linalg.zeros(n, n)
    for j, mono in enumerate(basis):
        image = uea.apply(e, MetaPolynomial(k, {mono: 1}, d=d))
        for target, coef in image.terms.items():
            rows[index[target]][j] = coef
    return ActionMatrix(fmt, tuple(basis), rows)


@dataclass
class Eigenprojection:
    """An eigenspace basis plus the projection along the complementary image."""

    eigenvalue: Fraction
    basis: List[List[Fraction]]
    projection: List[List[Fraction]]


def eigenprojection(mat: ActionMatrix, eigenvalue) -> Eigenprojection:
    """Eigenspace of the given eigenvalue; projection along im(M - c I).

    Assumes the operator is diagonalizable on the space (checked: kernel and
    image dimensions must add up).  An absent eigenvalue yields a zero space.
    """
    c = Fraction(eigenvalue)
    n = len(mat.rows)
    shifted = [[mat.rows[i][j] - (c if i == j else 0) for j in range(n)] for i in range(n)]
    kernel = linalg.nullspace(shifted)
    if not kernel:
        return Eigenprojection(c, [], linalg.zeros(n, n))
    image = linalg.column_space_basis(shifted)
    if len(kernel) + len(image) != n:
        raise FormatError("operator is not diagonalizable at this eigenvalue")
    columns = kernel + image
    basis_matrix = [[columns[j][i] for j in range(n)] for i in range(n)]
    inv = linalg.invert(basis_matrix)
    proj = linalg.zeros(n, n)
    for i in range(n):
        for j in range(n):
            proj[i][j] = sum(
                (columns[t][i] * inv[t][j] for t in range(len(kernel))), Fraction(0)
            )
    return Eigenprojection(c, kernel, proj)


class BruteDecomposition:
    """Exact component bases of one format space, with projection helpers."""

    def __init__(self, fmt: Format, cap: Optional[int] = None):
        delta, d, k = fmt
        self.fmt = (int(delta), int(d), int(k))
        self.basis = tuple(metamonomial_basis(self.fmt, cap))
        self.index = {mono: i for i, mono in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._blocks = self._split_weights()
        self._weight_bases: Dict[Weight, List[List[Fraction]]] = {
            w: [self._unit(i) for i in idxs] for w, idxs in self._blocks.items()
        }
        self._restricted_cache: Dict[Tuple, List[List[Fraction]]] = {}
        self._isotypic_bases = self._split_isotypic()
        self._hwv_bases = self._split_hwv()
        self._gz_bases = self._split_gz()
        self._family_change: Dict[str, Tuple] = {}

    # -- construction -----------------------------------------------------

    def _unit(self, i: int) -> List[Fraction]:
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return v

    def _split_weights(self) -> Dict[Weight, List[int]]:
        delta, d, k = self.fmt
        blocks: Dict[Weight, List[int]] = {}
        for i, mono in enumerate(self.basis):
            w = rep.weight_of(mono, k)
            # verify the basis really is a simultaneous eigenbasis of the
            # diagonal generators with these eigenvalues
            m = MetaPolynomial(k, {mono: 1}, d=d)
            for pos in range(1, k + 1):
                image = act_on_meta((pos, pos), m)
                if image != w[pos - 1] * m:
                    raise FormatError("metamonomial basis is not a weight basis")
            blocks.setdefault(w, []).append(i)
        return blocks

    def _restricted_matrix(self, e: uea.UeaElement, w: Weight) -> List[List[Fraction]]:
        """Matrix of e on the weight-w block (e must preserve the block)."""
        key = (frozenset(e.terms.items()), w)
        cached = self._restricted_cache.get(key)
        if cached is not None:
            return cached
        delta, d, k = self.fmt
        idxs = self._blocks[w]
        local = {self.basis[i]: pos for pos, i in enumerate(idxs)}
        n = len(idxs)
        rows = linalg.zeros(n, n)
        for j, i in enumerate(idxs):
            image = uea.apply(e, MetaPolynomial(k, {self.basis[i]: 1}, d=d))
            for mono, coef in image.terms.items():
                pos = local.get(mono)
                if pos is None:
                    raise FormatError("operator does not preserve the weight block")
                rows[pos][j] = coef
        self._restricted_cache[key] = rows
        return rows

    def _embed(self, local: Sequence[Fraction], w: Weight) -> List[Fraction]:
        v = [Fraction(0)] * self.dim
        for pos, i in enumerate(self._blocks[w]):
            v[i] = local[pos]
        return v

    def _common_eigenvectors(
        self, w: Weight, operators: List[Tuple[uea.UeaElement, Fraction]]
    ) -> List[List[Fraction]]:
        """Intersection of eigenspaces inside one weight block."""
        idxs = self._blocks.get(w)
        if not idxs:
            return []
        stacked: List[List[Fraction]] = []
        for e, value in operators:
            mat = self._restricted_matrix(e, w)
            n = len(mat)
            stacked.extend(
                [mat[i][j] - (value if i == j else 0) for j in range(n)] for i in range(n)
            )
        locals_ = linalg.nullspace(stacked) if stacked else [
            [Fraction(1 if t == s else 0) for t in range(len(idxs))] for s in range(len(idxs))
        ]
        return [self._embed(v, w) for v in locals_]

    def _split_isotypic(self) -> Dict[Partition, List[List[Fraction]]]:
        delta, d, k = self.fmt
        out: Dict[Partition, List[List[Fraction]]] = {}
        casimirs = [uea.casimir(k, p) for p in range(1, k + 1)]
        for lam in rep.enumerate_partitions(delta * d, k):
            values = [Fraction(uea.central_character(lam, p, k)) for p in range(1, k + 1)]
            vectors: List[List[Fraction]] = []
            for w in self._blocks:
                vectors.extend(
                    self._common_eigenvectors(w, list(zip(casimirs, values)))
                )
            if vectors:
                out[lam] = vectors
        total = sum(len(v) for v in out.values())
        if total != self.dim:
            raise FormatError(
                f"isotypic pieces span {total} of {self.dim} dimensions"
            )
        return out

    def _split_hwv(self) -> Dict[Partition, List[List[Fraction]]]:
        delta, d, k = self.fmt
        out: Dict[Partition, List[List[Fraction]]] = {}
        for lam in self._isotypic_bases:
            w = rep.pad_partition(lam, k)
            idxs = self._blocks.get(w)
            if not idxs:
                continue
            # constraints: every raising operator kills the vector
            constraint_rows: List[List[Fraction]] = []
            for i in range(1, k + 1):
                for j in range(i + 1, k + 1):
                    target_w = tuple(
                        w[t] + (1 if t == i - 1 else 0) - (1 if t == j - 1 else 0)
                        for t in range(k)
                    )
                    target_idxs = self._blocks.get(target_w, [])
                    local_target = {self.basis[t]: pos for pos, t in enumerate(target_idxs)}
                    rows = [[Fraction(0)] * len(idxs) for _ in range(len(target_idxs))]
                    nonzero = False
                    for col, t in enumerate(idxs):
                        image = act_on_meta((i, j), MetaPolynomial(k, {self.basis[t]: 1}, d=d))
                        for mono, coef in image.terms.items():
                            rows[local_target[mono]][col] = coef
                            nonzero = True
                    if nonzero:
                        constraint_rows.extend(rows)
            if constraint_rows:
                locals_ = linalg.nullspace(constraint_rows)
            else:
                locals_ = [
                    [Fraction(1 if t == s else 0) for t in range(len(idxs))]
                    for s in range(len(idxs))
                ]
            vectors = [self._embed(v, w) for v in locals_]
            if vectors:
                out[lam] = vectors
        return out

    def _split_gz(self) -> Dict[Tableau, List[List[Fraction]]]:
        delta, d, k = self.fmt
        out: Dict[Tableau, List[List[Fraction]]] = {}
        gens = [(l, p, uea.casimir_gz(l, p, k)) for l in range(1, k + 1) for p in range(1, l + 1)]
        total = 0
        for lam in self._isotypic_bases:
            for t in rep.enumerate_tableaux(lam, k):
                w = t.content(k)
                if w not in self._blocks:
                    continue
                pattern = rep.tableau_to_pattern(t, k)
                ops = [
                    (gen, Fraction(uea.central_character(pattern.levels[l - 1], p, l)))
                    for l, p, gen in gens
                ]
                vectors = self._common_eigenvectors(w, ops)
                if vectors:
                    out[t] = vectors
                    total += len(vectors)
        if total != self.dim:
            raise FormatError(f"tableau pieces span {total} of {self.dim} dimensions")
        return out

    # -- public views ------------------------------------------------------

    def weight_basis(self, w) -> List[MetaPolynomial]:
        return [self._meta(v) for v in self._weight_bases.get(tuple(w), [])]

    def isotypic_basis(self, lam) -> List[MetaPolynomial]:
        return [self._meta(v) for v in self._isotypic_bases.get(rep.partition(lam), [])]

    def hwv_basis(self, lam) -> List[MetaPolynomial]:
        return [self._meta(v) for v in self._hwv_bases.get(rep.partition(lam), [])]

    def gz_basis(self, t: Tableau) -> List[MetaPolynomial]:
        return [self._meta(v) for v in self._gz_bases.get(t, [])]

    def weight_labels(self) -> List[Weight]:
        return sorted(self._weight_bases, reverse=True)

    def isotypic_labels(self) -> List[Partition]:
        return sorted(self._isotypic_bases, reverse=True)

    def hwv_labels(self) -> List[Partition]:
        return sorted(self._hwv_bases, reverse=True)

    def gz_labels(self) -> List[Tableau]:
        return sorted(self._gz_bases, key=lambda t: t.rows)

    def _meta(self, v: Sequence[Fraction]) -> MetaPolynomial:
        return _from_vector(v, self.basis, self.fmt)

    # -- projections -------------------------------------------------------

    def _family(self, name: str):
        if name == "weight":
            return self._weight_bases
        if name == "isotypic":
            return self._isotypic_bases
        if name == "gz":
            return self._gz_bases
        raise FormatError(f"unknown family {name!r}")

    def _base_change(self, name: str):
        cached = self._family_change.get(name)
        if cached is not None:
            return cached
        family = self._family(name)
        labels = list(family)
        columns: List[List[Fraction]] = []
        spans: Dict[object, Tuple[int, int]] = {}
        for label in labels:
            start = len(columns)
            columns.extend(family[label])
            spans[label] = (start, len(columns))
        matrix = [[columns[j][i] for j in range(len(columns))] for i in range(self.dim)]
        inv = linalg.invert(matrix)
        self._family_change[name] = (columns, spans, inv)
        return self._family_change[name]

    def _project_family(self, name: str, label, m: MetaPolynomial) -> MetaPolynomial:
        delta, d, k = self.fmt
        if m.is_zero:
            return MetaPolynomial.zero(delta, d, k)
        columns, spans, inv = self._base_change(name)
        span = spans.get(label)
        if span is None:
            return MetaPolynomial.zero(delta, d, k)
        v = _to_vector(m, self.index)
        coords = linalg.mat_vec(inv, v)
        out = [Fraction(0)] * self.dim
        for t in range(span[0], span[1]):
            c = coords[t]
            if c:
                col = columns[t]
                for i in range(self.dim):
                    out[i] += c * col[i]
        return self._meta(out)

    def project_weight(self, m: MetaPolynomial, w) -> MetaPolynomial:
        return self._project_family("weight", tuple(w), m)

    def project_isotypic(self, m: MetaPolynomial, lam) -> MetaPolynomial:
        return self._project_family("isotypic", rep.partition(lam), m)

    def project_hwv(self, m: MetaPolynomial, lam) -> MetaPolynomial:
        lam = rep.partition(lam)
        delta, d, k = self.fmt
        return self.project_weight(
            self.project_isotypic(m, lam), rep.pad_partition(lam, k)
        )

    def project_gz(self, m: MetaPolynomial, t: Tableau) -> MetaPolynomial:
        return self._project_family("gz", t, m)


def brute_decompose(fmt: Format, cap: Optional[int] = None) -> BruteDecomposition:
    """Decompose a whole format space; see BruteDecomposition for the views."""
    return BruteDecomposition(fmt, cap)
