import math
import random

import pytest

from isotypica import FormatError, MetaPolynomial
from isotypica.meta import enumerate_metamonomials
from isotypica.rep import (
    GTPattern,
    Tableau,
    enumerate_partitions,
    enumerate_tableaux,
    enumerate_weights,
    isotypic_multiplicities,
    kostka_number,
    pattern_to_tableau,
    tableau_to_pattern,
    weight_component,
    weight_dimensions,
    weight_of,
    weights_of,
)

from conftest import mp


class TestWeightOf:
    def test_square_of_top_variable(self):
        assert weight_of(((3, 0), (3, 0))) == (6, 0)

    def test_mixed_pair(self):
        assert weight_of(((1, 2), (0, 3))) == (1, 5)

    def test_three_variables(self):
        assert weight_of(((2, 0, 0), (0, 2, 0), (0, 0, 2))) == (2, 2, 2)

    def test_empty_needs_k(self):
        assert weight_of((), k=2) == (0, 0)
        with pytest.raises(FormatError):
            weight_of(())


class TestWeightComponent:
    def test_picks_matching_terms(self):
        m = mp("c[3,0]^2 + c[2,1]*c[1,2]")
        assert weight_component(m, (6, 0)) == mp("c[3,0]^2")

    def test_components_partition_terms(self):
        m = mp("c[3,0]^2 + 2*c[2,1]*c[1,2] - c[0,3]*c[3,0]")
        total = MetaPolynomial.zero(2, 3, 2)
        for w in weights_of(m):
            total = total + weight_component(m, w)
        assert total == m

    def test_zero_input(self):
        z = MetaPolynomial.zero(2, 3, 2)
        assert weight_component(z, (3, 3)).is_zero
        assert weights_of(z) == []


class TestEnumerateWeights:
    def test_two_variable_format(self):
        ws = enumerate_weights(2, 3, 2)
        assert ws == [(6 - p, p) for p in range(7)]

    def test_trivial_format(self):
        assert enumerate_weights(1, 1, 1) == [(1,)]

    def test_three_variable_count(self):
        assert len(enumerate_weights(3, 2, 3)) == 28

    def test_counts_match_binomials(self):
        for n in range(13):
            for k in range(1, 5):
                # any (delta, d) with delta*d = n gives the same weight set
                ws = enumerate_weights(1, n, k)
                assert len(ws) == math.comb(n + k - 1, k - 1)
                assert len(set(ws)) == len(ws)
                assert all(sum(w) == n and len(w) == k for w in ws)


class TestEnumeratePartitions:
    def test_partitions_of_six_up_to_three_parts(self):
        assert enumerate_partitions(6, 3) == [
            (6,), (5, 1), (4, 2), (4, 1, 1), (3, 3), (3, 2, 1), (2, 2, 2),
        ]

    def test_empty(self):
        assert enumerate_partitions(0, 3) == [()]

    def test_single_part(self):
        assert enumerate_partitions(6, 1) == [(6,)]


class TestTableauxAndPatterns:
    def test_pattern_of_reference_tableau(self):
        t = Tableau(((1, 1, 2, 2), (2, 3), (4, 4)))
        p = tableau_to_pattern(t, 4)
        assert p.levels == ((2,), (4, 1), (4, 2), (4, 2, 2))
        assert p.weight() == (2, 3, 1, 2)
        assert t.content(4) == (2, 3, 1, 2)

    def test_superstandard_pattern_is_truncation(self):
        lam = (4, 2, 1)
        t = Tableau(tuple(tuple([r + 1] * n) for r, n in enumerate(lam)))
        p = tableau_to_pattern(t, 3)
        assert p.levels == ((4,), (4, 2), (4, 2, 1))

    def test_single_box(self):
        p = tableau_to_pattern(Tableau(((1,),)), 1)
        assert p.levels == ((1,),)

    def test_non_semistandard_rejected(self):
        with pytest.raises(FormatError):
            Tableau(((2, 1),))
        with pytest.raises(FormatError):
            Tableau(((1, 1), (1, 2)))

    def test_pattern_interleaving_enforced(self):
        with pytest.raises(FormatError):
            GTPattern(((3,), (2, 1)))

    def test_bijection_with_patterns(self):
        for shape in [(4, 2), (2, 2, 2), (3, 1)]:
            for t in enumerate_tableaux(shape, 3):
                p = tableau_to_pattern(t, 3)
                assert pattern_to_tableau(p) == t

    def test_injective_on_enumeration(self):
        tabs = enumerate_tableaux((4, 2), 3)
        patterns = {tableau_to_pattern(t, 3) for t in tabs}
        assert len(patterns) == len(tabs)


class TestEnumerateTableaux:
    def test_shape_42_content_222(self):
        tabs = [
            t for t in enumerate_tableaux((4, 2), 3) if t.content(3) == (2, 2, 2)
        ]
        assert {t.rows for t in tabs} == {
            ((1, 1, 2, 2), (3, 3)),
            ((1, 1, 2, 3), (2, 3)),
            ((1, 1, 3, 3), (2, 2)),
        }

    def test_shape_42_total_count(self):
        # dimension of the corresponding irreducible for three variables
        assert len(enumerate_tableaux((4, 2), 3)) == 27

    def test_column_shape_forces_superstandard(self):
        tabs = enumerate_tableaux((2, 2, 2), 3)
        assert len(tabs) == 1 and tabs[0].is_superstandard()

    def test_single_row_single_entry(self):
        tabs = enumerate_tableaux((6,), 1)
        assert len(tabs) == 1 and tabs[0].rows == ((1,) * 6,)

    def test_too_many_rows(self):
        assert enumerate_tableaux((2, 1, 1), 2) == []


class TestDimensionsAndMultiplicities:
    def test_weight_dimensions_2_3_2(self):
        dims = weight_dimensions((2, 3, 2))
        ordered = [dims[w] for w in enumerate_weights(2, 3, 2)]
        assert ordered == [1, 1, 2, 2, 2, 1, 1]

    def test_weights_cover_monomials(self):
        fmt = (3, 2, 3)
        allowed = set(enumerate_weights(*fmt))
        for mono in enumerate_metamonomials(*fmt):
            assert weight_of(mono) in allowed

    def test_kostka_spot_values(self):
        assert kostka_number((4, 2), (2, 2, 2)) == 3
        assert kostka_number((6,), (2, 2, 2)) == 1
        assert kostka_number((2, 2, 2), (2, 2, 2)) == 1
        assert kostka_number((2, 2, 2), (4, 2, 0)) == 0

    def test_multiplicities_3_2_3(self):
        assert isotypic_multiplicities((3, 2, 3)) == {
            (6,): 1, (4, 2): 1, (2, 2, 2): 1,
        }

    def test_multiplicities_2_2_2(self):
        assert isotypic_multiplicities((2, 2, 2)) == {(4,): 1, (2, 2): 1}

    def test_multiplicities_account_for_dimension(self):
        rng = random.Random(5)
        for fmt in [(2, 2, 2), (2, 3, 2), (3, 2, 3), (2, 2, 3)]:
            mults = isotypic_multiplicities(fmt)
            total = sum(
                m * len(enumerate_tableaux(lam, fmt[2])) for lam, m in mults.items()
            )
            assert total == len(enumerate_metamonomials(*fmt))
