import math
import random
from fractions import Fraction

import pytest

from isotypica import (
    BudgetError,
    CircuitError,
    MetaPolynomial,
    NotNormalizedError,
    Polynomial,
    apply,
    apply_plan,
    casimir,
    eliminate_dead,
    eval_numeric,
    eval_symbolic,
    pbw_normalize,
    plan_isotypic,
    size,
    transform,
    transform_plan,
)
from isotypica.circuit import CircuitBuilder
from isotypica.uea import UeaElement

from conftest import mp, random_circuit, random_poly, random_uea


def discriminant_circuit():
    b = CircuitBuilder(k=2, d=2, delta=2)
    g11 = b.metavariable((1, 1))
    g20 = b.metavariable((2, 0))
    g02 = b.metavariable((0, 2))
    sq = b.mul(g11, g11)
    prod = b.mul(g20, g02)
    b.add(sq, prod, 1, -4)
    return b.build()


def intro_circuit():
    b = CircuitBuilder(k=3, d=2, delta=3)
    a = b.metavariable((2, 0, 0))
    c = b.metavariable((0, 2, 0))
    e = b.metavariable((0, 0, 2))
    first = b.mul(a, c)
    b.mul(first, e)
    return b.build()


DISC = mp("c[1,1]^2 - 4*c[2,0]*c[0,2]")


class TestEvalSymbolic:
    def test_six_gate_discriminant(self):
        c = discriminant_circuit()
        assert size(c) == 6
        assert eval_symbolic(c) == DISC

    def test_single_input_gate(self):
        b = CircuitBuilder(k=2, d=2, delta=1)
        b.metavariable((1, 1))
        assert eval_symbolic(b.build()) == mp("c[1,1]")

    def test_cancelling_sum(self):
        b = CircuitBuilder(k=2, d=2, delta=2)
        g = b.metavariable((1, 1))
        sq = b.mul(g, g)
        sq2 = b.mul(g, g)
        b.add(sq, sq2, 1, -1)
        assert eval_symbolic(b.build()).is_zero

    def test_declared_meta_degree_enforced(self):
        b = CircuitBuilder(k=2, d=2, delta=2)
        b.input(linear=[((1, 1), 1)], const=1)
        with pytest.raises(CircuitError):
            eval_symbolic(b.build())

    def test_forward_reference_rejected(self):
        from isotypica.circuit import Circuit, Gate

        with pytest.raises(CircuitError):
            Circuit(2, 2, None, (Gate(0, "add", args=(0, 1)),), 0)


class TestEvalNumeric:
    def test_matches_reference_values(self):
        c = discriminant_circuit()
        assert eval_numeric(c, Polynomial.monomial((1, 1))) == 1
        square = Polynomial(2, {(2, 0): 1, (1, 1): 2, (0, 2): 1})
        assert eval_numeric(c, square) == 0

    def test_zero_polynomial_gives_constant_part(self):
        b = CircuitBuilder(k=2, d=2, delta=None)
        b.input(linear=[((1, 1), 1)], const=5)
        c = b.build()
        assert eval_numeric(c, Polynomial.zero(2, 2)) == 5

    def test_agrees_with_symbolic_route(self, rng):
        from isotypica import evaluate

        for _ in range(15):
            k = rng.randint(2, 3)
            c = random_circuit(rng, k, 2, rng.randint(4, 10))
            f = random_poly(rng, 2, k)
            assert eval_numeric(c, f) == evaluate(eval_symbolic(c), f)


class TestTransform:
    def test_identity_element(self):
        c = discriminant_circuit()
        t = transform(c, UeaElement.one(2))
        assert eval_symbolic(t) == DISC
        assert size(t) <= size(c) + 1

    def test_degree_two_central_element(self):
        c = discriminant_circuit()
        t = transform(c, pbw_normalize(casimir(2, 2)))
        assert eval_symbolic(t) == 8 * DISC

    def test_size_law(self):
        c = discriminant_circuit()
        t = transform(c, pbw_normalize(casimir(2, 2)), eliminate=False)
        s = t.transform_stats
        K = 4
        L = 2
        assert s.basis_size == K
        assert s.tuple_count == math.comb(L + K, K)
        assert s.pair_count == math.comb(L + 2 * K, 2 * K)
        assert s.products_per_mul == s.pair_count
        assert s.products_per_mul + s.adds_per_mul <= 2 * s.pair_count - 1
        # every source gate contributes at most tuple_count gates except
        # product gates, which contribute products + adds
        mul_gates = 2
        other_gates = 4
        expected_raw = (
            other_gates * s.tuple_count
            + mul_gates * (s.products_per_mul + s.adds_per_mul)
            + s.combine_gates
        )
        assert s.size_raw == expected_raw

    def test_rejects_unnormalized(self):
        c = discriminant_circuit()
        with pytest.raises(NotNormalizedError):
            transform(c, casimir(2, 2))

    def test_zero_element(self):
        c = discriminant_circuit()
        t = transform(c, UeaElement.zero(2))
        assert eval_symbolic(t).is_zero

    def test_correctness_on_random_circuits(self, rng):
        for trial in range(30):
            k = 3 if trial % 4 == 0 else 2
            c = random_circuit(rng, k, rng.randint(1, 2), rng.randint(4, 12))
            p = pbw_normalize(random_uea(rng, k, max_len=3, max_terms=2))
            t = transform(c, p)
            assert eval_symbolic(t) == apply(p, eval_symbolic(c))
            s = t.transform_stats
            assert s.pair_count == math.comb(p.length + 2 * k * k, 2 * k * k)
            assert s.products_per_mul + s.adds_per_mul <= 2 * s.pair_count - 1

    def test_transformed_inputs_stay_affine(self):
        c = discriminant_circuit()
        t = transform(c, pbw_normalize(casimir(2, 2)), eliminate=False)
        for gate in t.gates:
            if gate.kind == "input":
                assert all(sum(mu) == 2 and len(mu) == 2 for mu, _ in gate.linear)


class TestTransformPlan:
    def test_projection_fixes_invariant_component(self):
        c = discriminant_circuit()
        out = transform_plan(c, plan_isotypic((2, 2), (2, 2, 2)))
        assert eval_symbolic(out) == DISC

    def test_projection_kills_other_component(self):
        c = discriminant_circuit()
        out = transform_plan(c, plan_isotypic((4,), (2, 2, 2)))
        assert eval_symbolic(out).is_zero

    def test_intro_pipeline(self):
        c = intro_circuit()
        assert size(c) == 5
        plan = plan_isotypic((6, 0, 0), (3, 2, 3))
        out = transform_plan(c, plan)
        assert 60 * eval_symbolic(out) == mp(
            "2*c[0,2,0]*c[1,0,1]^2 + 4*c[0,1,1]*c[1,0,1]*c[1,1,0]"
            " + 2*c[0,0,2]*c[1,1,0]^2 + 2*c[0,1,1]^2*c[2,0,0]"
            " + 4*c[0,0,2]*c[0,2,0]*c[2,0,0]"
        )
        assert len(out.stage_stats) == len(plan.factors)

    def test_single_pass_agrees_with_factor_mode(self):
        c = discriminant_circuit()
        plan = plan_isotypic((2, 2), (2, 2, 2))
        a = transform_plan(c, plan, mode="factor_by_factor")
        b = transform_plan(c, plan, mode="single_pass")
        assert eval_symbolic(a) == eval_symbolic(b)

    def test_single_pass_budget(self):
        c = intro_circuit()
        plan = plan_isotypic((6, 0, 0), (3, 2, 3))
        with pytest.raises(BudgetError):
            transform_plan(c, plan, mode="single_pass", term_budget=3)

    def test_weight_isotypic_hwv_plans_on_circuit(self, rng):
        from isotypica import plan_hwv, plan_weight

        fmt = (2, 2, 2)
        plans = [
            plan_weight((3, 1), fmt),
            plan_isotypic((2, 2), fmt),
            plan_hwv((2, 2), fmt),
        ]
        b = CircuitBuilder(k=2, d=2, delta=2)
        g1 = b.metavariable((1, 1))
        g2 = b.metavariable((2, 0))
        g3 = b.metavariable((0, 2))
        m1 = b.mul(g1, g1, rng.randint(-2, 2) or 1, 1)
        m2 = b.mul(g2, g3, 1, rng.randint(-2, 2) or 1)
        b.add(m1, m2, rng.randint(-2, 2) or 1, rng.randint(1, 3))
        c = b.build()
        value = eval_symbolic(c)
        for plan in plans:
            assert eval_symbolic(transform_plan(c, plan)) == apply_plan(plan, value)

    def test_gz_plan_on_circuit(self, rng):
        # meta-degree one keeps the stage count of the tableau plan small
        from isotypica import plan_gz
        from isotypica.rep import enumerate_tableaux

        fmt = (1, 2, 2)
        b = CircuitBuilder(k=2, d=2, delta=1)
        g1 = b.metavariable((2, 0))
        g2 = b.metavariable((1, 1))
        g3 = b.metavariable((0, 2))
        s1 = b.add(g1, g2, rng.randint(-2, 2) or 1, 2)
        b.add(s1, g3, 1, rng.randint(-2, 2) or 1)
        c = b.build()
        value = eval_symbolic(c)
        for t in enumerate_tableaux((2,), 2):
            plan = plan_gz(t, fmt)
            assert eval_symbolic(transform_plan(c, plan)) == apply_plan(plan, value)


class TestEliminateDead:
    def test_preserves_value(self, rng):
        for _ in range(10):
            c = random_circuit(rng, 2, 2, rng.randint(4, 10))
            slim = eliminate_dead(c)
            assert eval_symbolic(slim) == eval_symbolic(c)
            assert size(slim) <= size(c)

    def test_drops_unreachable(self):
        b = CircuitBuilder(k=2, d=2, delta=None)
        used = b.metavariable((1, 1))
        b.metavariable((2, 0))  # never referenced
        slim = eliminate_dead(b.build(output=used))
        assert size(slim) == 1
