"""Shared helpers: parsing shortcuts and seeded random generators."""

import random
from fractions import Fraction

import pytest

from isotypica import MetaPolynomial, Polynomial
from isotypica.circuit import CircuitBuilder
from isotypica.meta import enumerate_metamonomials, enumerate_metavariables
from isotypica.serialize import parse_metapolynomial
from isotypica.uea import UeaElement, default_basis_order


def mp(text, fmt=None):
    return parse_metapolynomial(text, fmt=fmt)


def random_metapoly(rng, fmt, max_terms=4):
    delta, d, k = fmt
    basis = enumerate_metamonomials(delta, d, k)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = basis[rng.randrange(len(basis))]
        terms[mono] = Fraction(rng.randint(-4, 4) or 1, rng.randint(1, 3))
    return MetaPolynomial(k, terms, d=d)


def random_poly(rng, d, k, max_terms=4):
    indices = enumerate_metavariables(d, k)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        mu = indices[rng.randrange(len(indices))]
        terms[mu] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return Polynomial(k, terms, d=d)


def random_word(rng, k, max_len):
    return tuple(
        (rng.randint(1, k), rng.randint(1, k)) for _ in range(rng.randint(0, max_len))
    )


def random_uea(rng, k, max_len=3, max_terms=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[random_word(rng, k, max_len)] = Fraction(rng.randint(-3, 3))
    return UeaElement(k, terms)


def random_circuit(rng, k, d, n_gates, max_meta_degree=4):
    """A random circuit over metavariables of degree d, affine inputs allowed.

    Tracks an upper bound on each gate's meta-degree so that chained
    products cannot blow the symbolic evaluation up.
    """
    b = CircuitBuilder(k=k, d=d, delta=None)
    indices = enumerate_metavariables(d, k)
    degree = []
    n_inputs = rng.randint(2, max(2, n_gates // 3))
    for _ in range(n_inputs):
        linear = {}
        for _ in range(rng.randint(1, 2)):
            linear[indices[rng.randrange(len(indices))]] = rng.randint(-3, 3)
        const = rng.choice([0, 0, rng.randint(-2, 2)])
        b.input(linear=list(linear.items()), const=const)
        degree.append(1)
    while len(b.gates) < n_gates:
        a = rng.randrange(len(b.gates))
        c = rng.randrange(len(b.gates))
        sa = Fraction(rng.choice([1, 1, -1, 2, rng.randint(-3, 3) or 1]))
        sb = Fraction(rng.choice([1, 1, -1, 2]))
        if rng.random() < 0.5 or degree[a] + degree[c] > max_meta_degree:
            b.add(a, c, sa, sb)
            degree.append(max(degree[a], degree[c]))
        else:
            b.mul(a, c, sa, sb)
            degree.append(degree[a] + degree[c])
    return b.build()


@pytest.fixture
def rng():
    return random.Random(20240817)


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    status = "PASS" if report.passed else ("FAIL" if report.failed else "SKIP")
    print(f"\n[acceptance] {name}: {status}")
