import math
import random
from fractions import Fraction

import pytest

from isotypica import (
    DimensionCapError,
    MetaPolynomial,
    brute_decompose,
    build_action_matrix,
    casimir,
    casimir_gz,
    eigenprojection,
    weight_dimensions,
)
from isotypica.linalg import mat_mul, rank
from isotypica.oracle import metamonomial_basis
from isotypica.rep import enumerate_tableaux, enumerate_weights, weight_of
from isotypica.uea import UeaElement

from conftest import mp, random_metapoly


class TestActionMatrix:
    def test_diagonal_generator_is_diagonal(self):
        fmt = (2, 3, 2)
        mat = build_action_matrix(UeaElement.generator(2, 1, 1), fmt)
        for i, row in enumerate(mat.rows):
            for j, value in enumerate(row):
                expected = weight_of(mat.basis[i])[0] if i == j else 0
                assert value == expected

    def test_degree_one_element_is_scalar(self):
        for fmt in [(2, 2, 2), (3, 2, 3), (2, 3, 2)]:
            delta, d, k = fmt
            mat = build_action_matrix(casimir(k, 1), fmt)
            n = len(mat.basis)
            for i in range(n):
                for j in range(n):
                    assert mat.rows[i][j] == (delta * d if i == j else 0)

    def test_zero_element(self):
        mat = build_action_matrix(UeaElement.zero(2), (2, 2, 2))
        assert all(v == 0 for row in mat.rows for v in row)

    def test_dimension_cap(self):
        with pytest.raises(DimensionCapError):
            metamonomial_basis((3, 2, 3), cap=10)

    def test_casimir_matrices_commute(self):
        fmt = (2, 2, 2)
        mats = [build_action_matrix(casimir(2, p), fmt).rows for p in (1, 2)]
        assert mat_mul(mats[0], mats[1]) == mat_mul(mats[1], mats[0])

    def test_gz_matrices_commute(self):
        fmt = (2, 2, 3)
        gens = [casimir_gz(l, p, k=3) for l in (1, 2, 3) for p in range(1, l + 1)]
        mats = [build_action_matrix(g, fmt).rows for g in gens]
        for a in mats:
            for b in mats:
                assert mat_mul(a, b) == mat_mul(b, a)


class TestEigenprojection:
    def test_invariant_line(self):
        fmt = (2, 2, 2)
        mat = build_action_matrix(casimir(2, 2), fmt)
        proj = eigenprojection(mat, 8)
        assert len(proj.basis) == 1
        vec = {mat.basis[i]: c for i, c in enumerate(proj.basis[0]) if c}
        line = MetaPolynomial(2, vec, d=2)
        target = mp("-c[1,1]^2 + 4*c[0,2]*c[2,0]")
        key = ((1, 1), (1, 1))
        ratio = line.terms[key] / target.terms[key]
        assert line == ratio * target

    def test_absent_eigenvalue(self):
        mat = build_action_matrix(casimir(2, 2), (2, 2, 2))
        proj = eigenprojection(mat, 7)
        assert proj.basis == []
        assert all(v == 0 for row in proj.projection for v in row)

    def test_projection_is_idempotent_and_commutes(self):
        mat = build_action_matrix(casimir(2, 2), (2, 2, 2))
        proj = eigenprojection(mat, 20)
        assert mat_mul(proj.projection, proj.projection) == proj.projection
        assert mat_mul(proj.projection, mat.rows) == mat_mul(mat.rows, proj.projection)

    def test_large_component_dimension(self):
        fmt = (3, 2, 3)
        mat = build_action_matrix(casimir(3, 2), fmt)
        proj = eigenprojection(mat, 48)
        assert len(proj.basis) == len(enumerate_tableaux((6,), 3)) == 28


class TestBruteDecompose:
    def test_occurring_types_3_2_3(self):
        dec = brute_decompose((3, 2, 3))
        assert dec.isotypic_labels() == [(6,), (4, 2), (2, 2, 2)]

    def test_highest_weight_line_3_2_3(self):
        dec = brute_decompose((3, 2, 3))
        basis = dec.hwv_basis((2, 2, 2))
        assert len(basis) == 1
        target = mp(
            "4*c[2,0,0]*c[0,2,0]*c[0,0,2] - c[0,0,2]*c[1,1,0]^2"
            " + c[1,0,1]*c[1,1,0]*c[0,1,1] - c[0,2,0]*c[1,0,1]^2 - c[2,0,0]*c[0,1,1]^2"
        )
        vec = basis[0]
        key = ((0, 0, 2), (0, 2, 0), (2, 0, 0))
        ratio = vec.terms[key] / target.terms[key]
        assert vec == ratio * target

    def test_weight_dimensions_2_3_2(self):
        dec = brute_decompose((2, 3, 2))
        dims = [len(dec.weight_basis(w)) for w in enumerate_weights(2, 3, 2)]
        assert dims == [1, 1, 2, 2, 2, 1, 1]
        assert dims == [
            weight_dimensions((2, 3, 2))[w] for w in enumerate_weights(2, 3, 2)
        ]

    def test_components_span_everything(self):
        for fmt in [(2, 2, 2), (2, 3, 2)]:
            dec = brute_decompose(fmt)
            vectors = []
            for lam in dec.isotypic_labels():
                for v in dec._isotypic_bases[lam]:
                    vectors.append(list(v))
            assert rank(vectors) == dec.dim

    def test_gz_pieces_count_tableaux(self):
        dec = brute_decompose((2, 3, 2))
        labels = dec.gz_labels()
        per_shape = {}
        for t in labels:
            per_shape[t.shape] = per_shape.get(t.shape, 0) + 1
        for shape, count in per_shape.items():
            assert count == len(enumerate_tableaux(shape, 2))

    def test_projection_recovers_membership(self, rng):
        fmt = (2, 2, 2)
        dec = brute_decompose(fmt)
        for _ in range(10):
            m = random_metapoly(rng, fmt, max_terms=3)
            total = MetaPolynomial.zero(*fmt)
            for lam in dec.isotypic_labels():
                part = dec.project_isotypic(m, lam)
                assert dec.project_isotypic(part, lam) == part
                total = total + part
            assert total == m
