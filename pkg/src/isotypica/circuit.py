"""Arithmetic circuits for metapolynomials and the projection transformer.

A circuit is a DAG of gates.  Input gates carry an affine linear
metapolynomial payload (a constant plus a linear combination of
metavariables); computation gates are binary additions or multiplications
whose two incoming edges carry rational scalars: an addition gate computes
s1*v1 + s2*v2 and a multiplication gate computes (s1*v1)*(s2*v2).  Gate ids
are consecutive 0..n-1 and arguments always point to earlier gates, so the
gate list is a topological order.

The transformer rewrites a circuit C computing m into a circuit computing
P.m for an operator polynomial P in ordered normal form.  It tabulates, for
every gate value v and every exponent tuple t with |t| <= length(P), a gate
computing the iterated action X^t.v:

  * input gates are transformed symbolically (the action maps an affine
    payload to an affine payload);
  * addition gates transform componentwise;
  * multiplication gates expand by the Leibniz rule, with multinomial
    binomial products as edge scalars;
  * the output is the linear combination of the tabulated gates with the
    normal-form coefficients of P.

Per product gate this adds exactly |A| products and |A| - |B| additions,
where B is the tuple set and A the set of (tuple, subtuple) pairs; a
dead-gate sweep afterwards keeps only what the output needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iter_product
from typing import Dict, List, Optional, Sequence, Tuple

from . import uea
from .action import act_on_metavariable
from .errors import BudgetError, CircuitError, FormatError, NotNormalizedError
from .meta import MetaPolynomial, MultiIndex, Polynomial
from .projectors import ProjectorPlan

AffineLinear = Tuple[Fraction, Tuple[Tuple[MultiIndex, Fraction], ...]]


@dataclass(frozen=True)
class Gate:
    gid: int
    kind: str  # "input" | "add" | "mul"
    const: Optional[Fraction] = None
    linear: Tuple[Tuple[MultiIndex, Fraction], ...] = ()
    args: Tuple[int, int] = (-1, -1)
    scalars: Tuple[Fraction, Fraction] = (Fraction(1), Fraction(1))


@dataclass(frozen=True)
class TransformStats:
    """Instrumented gate accounting for one transformer pass."""

    word_length: int
    basis_size: int
    tuple_count: int        # |B|: exponent tuples with sum <= word_length
    pair_count: int         # |A|: (tuple, subtuple) pairs
    mul_gate_count: int     # product gates in the source circuit
    products_per_mul: int   # new product gates per source product gate
    adds_per_mul: int       # new addition gates per source product gate
    combine_gates: int      # gates of the final linear combination
    size_before: int
    size_raw: int           # before dead-gate elimination
    size_after: int


@dataclass
class Circuit:
    """A gate list in topological order with a single output gate."""

    k: int
    d: int
    delta: Optional[int]
    gates: Tuple[Gate, ...]
    output: int
    transform_stats: Optional[TransformStats] = None
    stage_stats: Tuple[TransformStats, ...] = ()

    def __post_init__(self):
        for pos, gate in enumerate(self.gates):
            if gate.gid != pos:
                raise CircuitError(f"gate id {gate.gid} at position {pos}")
            if gate.kind == "input":
                for mu, _ in gate.linear:
                    if len(mu) != self.k:
                        raise CircuitError(f"payload index {mu} has length != {self.k}")
                    if sum(mu) != self.d:
                        raise CircuitError(f"payload index {mu} has degree != {self.d}")
            elif gate.kind in ("add", "mul"):
                a, b = gate.args
                if not (0 <= a < pos and 0 <= b < pos):
                    raise CircuitError(f"gate {pos} references {gate.args}")
            else:
                raise CircuitError(f"unknown gate kind {gate.kind!r}")
        if not 0 <= self.output < len(self.gates):
            raise CircuitError(f"output {self.output} out of range")

    @property
    def fmt(self) -> Tuple[Optional[int], int, int]:
        return (self.delta, self.d, self.k)

    def size(self) -> int:
        return len(self.gates)


def size(c: Circuit) -> int:
    """Total number of gates."""
    return c.size()


class CircuitBuilder:
    """Incremental construction with validity checks."""

    def __init__(self, k: int, d: int, delta: Optional[int] = None):
        self.k = k
        self.d = d
        self.delta = delta
        self.gates: List[Gate] = []

    def input(self, linear=(), const=0) -> int:
        payload = []
        for mu, coef in dict(linear).items() if isinstance(linear, dict) else linear:
            coef = Fraction(coef)
            if coef:
                payload.append((tuple(mu), coef))
        payload.sort()
        gid = len(self.gates)
        self.gates.append(Gate(gid, "input", const=Fraction(const), linear=tuple(payload)))
        return gid

    def metavariable(self, mu) -> int:
        return self.input(linear=[(tuple(mu), 1)])

    def constant(self, value) -> int:
        return self.input(const=value)

    def add(self, a: int, b: int, sa=1, sb=1) -> int:
        gid = len(self.gates)
        self.gates.append(
            Gate(gid, "add", args=(a, b), scalars=(Fraction(sa), Fraction(sb)))
        )
        return gid

    def mul(self, a: int, b: int, sa=1, sb=1) -> int:
        gid = len(self.gates)
        self.gates.append(
            Gate(gid, "mul", args=(a, b), scalars=(Fraction(sa), Fraction(sb)))
        )
        return gid

    def build(self, output: Optional[int] = None) -> Circuit:
        if not self.gates:
            raise CircuitError("empty circuit")
        out = output if output is not None else len(self.gates) - 1
        return Circuit(self.k, self.d, self.delta, tuple(self.gates), out)


def eval_symbolic(c: Circuit) -> MetaPolynomial:
    """The metapolynomial computed at the output gate."""
    values: List[MetaPolynomial] = []
    for gate in c.gates:
        if gate.kind == "input":
            terms: Dict[tuple, Fraction] = {}
            if gate.const:
                terms[()] = gate.const
            for mu, coef in gate.linear:
                terms[(mu,)] = terms.get((mu,), Fraction(0)) + coef
            values.append(MetaPolynomial(c.k, terms, d=c.d if terms else c.d))
        else:
            a, b = gate.args
            sa, sb = gate.scalars
            if gate.kind == "add":
                values.append(sa * values[a] + sb * values[b])
            else:
                values.append((sa * values[a]) * (sb * values[b]))
    result = values[c.output]
    if c.delta is not None and not result.is_zero and result.delta != c.delta:
        raise CircuitError(
            f"circuit declares meta-degree {c.delta} but computes {result.delta}"
        )
    if result.is_zero:
        return MetaPolynomial.zero(c.delta, c.d, c.k)
    return result


def eval_numeric(c: Circuit, f: Polynomial) -> Fraction:
    """Evaluate the computed metapolynomial at a polynomial, gate by gate."""
    if f.k != c.k:
        raise FormatError(f"variable counts differ: {f.k} vs {c.k}")
    if f.d is not None and f.d != c.d and not f.is_zero:
        raise FormatError(f"inner degrees differ: {f.d} vs {c.d}")
    values: List[Fraction] = []
    for gate in c.gates:
        if gate.kind == "input":
            v = gate.const or Fraction(0)
            for mu, coef in gate.linear:
                v += coef * f.terms.get(mu, Fraction(0))
            values.append(v)
        else:
            a, b = gate.args
            sa, sb = gate.scalars
            if gate.kind == "add":
                values.append(sa * values[a] + sb * values[b])
            else:
                values.append(sa * values[a] * sb * values[b])
    return values[c.output]


def eliminate_dead(c: Circuit) -> Circuit:
    """Drop gates not reachable from the output; ids are renumbered."""
    needed = set()
    stack = [c.output]
    while stack:
        gid = stack.pop()
        if gid in needed:
            continue
        needed.add(gid)
        gate = c.gates[gid]
        if gate.kind != "input":
            stack.extend(gate.args)
    remap: Dict[int, int] = {}
    new_gates: List[Gate] = []
    for gate in c.gates:
        if gate.gid not in needed:
            continue
        new_id = len(new_gates)
        remap[gate.gid] = new_id
        if gate.kind == "input":
            new_gates.append(Gate(new_id, "input", const=gate.const, linear=gate.linear))
        else:
            new_gates.append(
                Gate(
                    new_id,
                    gate.kind,
                    args=(remap[gate.args[0]], remap[gate.args[1]]),
                    scalars=gate.scalars,
                )
            )
    return Circuit(
        c.k, c.d, c.delta, tuple(new_gates), remap[c.output],
        transform_stats=c.transform_stats, stage_stats=c.stage_stats,
    )


def _act_affine(e, payload: AffineLinear) -> AffineLinear:
    """One basis action on an affine payload; the constant part is killed."""
    _, linear = payload
    out: Dict[MultiIndex, Fraction] = {}
    for mu, coef in linear:
        hit = act_on_metavariable(e, mu)
        if hit is None:
            continue
        scale, nu = hit
        out[nu] = out.get(nu, Fraction(0)) + coef * scale
    return (Fraction(0), tuple(sorted((mu, c) for mu, c in out.items() if c)))


def _sub_tuples(t: Tuple[int, ...]):
    return iter_product(*[range(e + 1) for e in t])


def _multi_binom(t: Tuple[int, ...], s: Tuple[int, ...]) -> int:
    out = 1
    for a, b in zip(t, s):
        out *= math.comb(a, b)
    return out


def transform(
    c: Circuit,
    p: uea.UeaElement,
    order: Optional[Sequence] = None,
    eliminate: bool = True,
) -> Circuit:
    """Rewrite c into a circuit computing p applied to c's output value.

    p must be in ordered normal form for the given basis order (the public
    lexicographic order by default).  The returned circuit carries exact gate
    accounting in ``transform_stats``.
    """
    if p.k != c.k:
        raise FormatError(f"k differs: {p.k} vs {c.k}")
    order = tuple(order) if order is not None else uea.default_basis_order(c.k)
    if not uea.is_normalized(p, order):
        raise NotNormalizedError("transform requires an ordered normal form")
    slots = len(order)
    length = p.length
    tuples = uea.bounded_exponents(length, slots)
    b = CircuitBuilder(c.k, c.d, c.delta)
    table: List[Dict[Tuple[int, ...], int]] = []
    mul_gate_count = 0
    products_added = 0
    adds_added = 0

    for gate in c.gates:
        entry: Dict[Tuple[int, ...], int] = {}
        if gate.kind == "input":
            for t in tuples:
                payload: AffineLinear = (gate.const or Fraction(0), gate.linear)
                for e in reversed(uea.word_from_exponents(t, c.k, order)):
                    payload = _act_affine(e, payload)
                entry[t] = b.input(linear=payload[1], const=payload[0])
        elif gate.kind == "add":
            ga, gb = gate.args
            sa, sb = gate.scalars
            for t in tuples:
                entry[t] = b.add(table[ga][t], table[gb][t], sa, sb)
        else:
            mul_gate_count += 1
            ga, gb = gate.args
            sa, sb = gate.scalars
            for t in tuples:
                parts: List[Tuple[int, int]] = []
                for s in _sub_tuples(t):
                    rest = tuple(x - y for x, y in zip(t, s))
                    gid = b.mul(table[ga][s], table[gb][rest], sa, sb)
                    products_added += 1
                    parts.append((gid, _multi_binom(t, s)))
                if len(parts) == 1:
                    entry[t] = parts[0][0]
                else:
                    acc = b.add(parts[0][0], parts[1][0], parts[0][1], parts[1][1])
                    adds_added += 1
                    for gid, w in parts[2:]:
                        acc = b.add(acc, gid, 1, w)
                        adds_added += 1
                    entry[t] = acc
        table.append(entry)

    out_table = table[c.output]
    combine_gates = 0
    if p.is_zero:
        out_gate = b.constant(0)
        combine_gates += 1
    else:
        weighted = [
            (out_table[uea.exponent_tuple(word, c.k, order)], coef)
            for word, coef in sorted(p.terms.items())
        ]
        if len(weighted) == 1:
            gid, coef = weighted[0]
            if coef == 1:
                out_gate = gid
            else:
                out_gate = b.add(gid, gid, coef, 0)
                combine_gates += 1
        else:
            acc = b.add(weighted[0][0], weighted[1][0], weighted[0][1], weighted[1][1])
            combine_gates += 1
            for gid, coef in weighted[2:]:
                acc = b.add(acc, gid, 1, coef)
                combine_gates += 1
            out_gate = acc

    raw = b.build(out_gate)
    pair_count = sum(
        1 for t in tuples for _ in _sub_tuples(t)
    )
    stats = TransformStats(
        word_length=length,
        basis_size=slots,
        tuple_count=len(tuples),
        pair_count=pair_count,
        mul_gate_count=mul_gate_count,
        products_per_mul=pair_count,
        adds_per_mul=pair_count - len(tuples),
        combine_gates=combine_gates,
        size_before=c.size(),
        size_raw=raw.size(),
        size_after=raw.size(),
    )
    result = eliminate_dead(raw) if eliminate else raw
    result.transform_stats = TransformStats(
        **{**stats.__dict__, "size_after": result.size()}
    )
    return result


def transform_plan(
    c: Circuit,
    plan: ProjectorPlan,
    mode: str = "factor_by_factor",
    term_budget: int = 20000,
    order: Optional[Sequence] = None,
) -> Circuit:
    """Apply a whole projector plan to a circuit.

    factor_by_factor runs one transformer pass per factor, each with a short
    normal form; single_pass multiplies the whole plan out in the operator
    algebra first (refused beyond ``term_budget`` normal-form terms) and
    transforms once.
    """
    delta, d, k = plan.fmt
    if (c.k, c.d) != (k, d):
        raise FormatError(f"circuit format {(c.delta, c.d, c.k)} does not match plan {plan.fmt}")
    if mode == "factor_by_factor":
        stages: List[TransformStats] = []
        cur = c
        for factor in plan.factors:
            element = uea.pbw_normalize(factor.as_element(), order)
            cur = transform(cur, element, order=order)
            stages.append(cur.transform_stats)
        cur.stage_stats = tuple(stages)
        return cur
    if mode == "single_pass":
        product = uea.UeaElement.one(k)
        for factor in plan.factors:
            product = product * factor.as_element()
            product = uea.pbw_normalize(product, order)
            if len(product.terms) > term_budget:
                raise BudgetError(
                    f"normal form exceeds {term_budget} terms after {factor}"
                )
        result = transform(c, product, order=order)
        result.stage_stats = (result.transform_stats,)
        return result
    raise FormatError(f"unknown mode {mode!r}")
