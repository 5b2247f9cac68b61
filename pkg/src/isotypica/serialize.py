"""Text and JSON round-trip formats for every artifact the library emits.

Metapolynomial text grammar (whitespace is ignored everywhere):

    metapoly := '0' | ['-'] term (('+'|'-') term)*
    term     := coef | [coef '*'] factor ('*' factor)*
    factor   := 'c[' int (',' int)* ']' ['^' posint]
    coef     := ['-'] digits ['/' digits]

Examples: ``c[1,1]^2 - 4*c[2,0]*c[0,2]``, ``1/3*c[2,0,0]^3``.

JSON schemas (all coefficients are exact-rational strings "p/q" or "p"):

    metapolynomial  {"format": [delta, d, k], "terms":
                     [{"coef": "p/q", "monomial": [[i, ...], ...]}, ...]}
    circuit         {"format": [delta, d, k] | null, "gates": [
                     {"id": n, "kind": "input", "const": "p/q",
                      "linear": [[[i, ...], "p/q"], ...]} |
                     {"id": n, "kind": "add"|"mul", "args": [a, b],
                      "scalars": ["p/q", "p/q"]}], "output": n}
    operator        {"k": k, "terms": [{"coef": "p/q", "word": [[i, j], ...]}]}
    plan            {"target": {...}, "format": [delta, d, k], "factors":
                     [{"op": <operator>, "shift": "p/q", "divisor": "p/q"}]}

delta or d may be null where a value is mixed.  Gate ids in circuit JSON may
be arbitrary distinct integers as long as arguments refer to earlier gates;
they are renumbered 0..n-1 on load.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .circuit import Circuit, Gate
from .errors import CircuitError, ParseError
from .meta import MetaPolynomial, format_metapolynomial
from .projectors import ProjectorFactor, ProjectorPlan
from .rep import GTPattern, Tableau
from .uea import UeaElement


def format_fraction(x) -> str:
    return str(Fraction(x))


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}") from exc


# -- metapolynomial text -------------------------------------------------

_TOKEN = re.compile(
    r"""(?P<factor>c\[(?P<index>-?\d+(?:,-?\d+)*)\](?:\^(?P<power>\d+))?)
      | (?P<coef>\d+(?:/\d+)?)
      | (?P<op>[+\-*])
    """,
    re.VERBOSE,
)


def parse_metapolynomial(
    text: str, fmt: Optional[Tuple[Optional[int], Optional[int], int]] = None
) -> MetaPolynomial:
    """Parse the text grammar; fmt supplies (delta, d, k) when not inferable."""
    squeezed = "".join(text.split())
    if not squeezed:
        raise ParseError("empty metapolynomial text")
    tokens = []
    pos = 0
    while pos < len(squeezed):
        match = _TOKEN.match(squeezed, pos)
        if not match:
            raise ParseError(f"bad token at {squeezed[pos:pos + 12]!r}")
        tokens.append(match)
        pos = match.end()

    terms: Dict[tuple, Fraction] = {}
    sign = 1
    coef: Optional[Fraction] = None
    factors: List[tuple] = []
    in_term = False

    def flush():
        nonlocal sign, coef, factors, in_term
        if not in_term:
            raise ParseError("dangling sign or operator")
        value = (coef if coef is not None else Fraction(1)) * sign
        key = tuple(sorted(factors))
        terms[key] = terms.get(key, Fraction(0)) + value
        sign, coef, factors, in_term = 1, None, [], False

    for match in tokens:
        if match.group("op"):
            op = match.group("op")
            if op == "*":
                if not in_term:
                    raise ParseError("'*' without a preceding factor")
                continue
            if in_term:
                flush()
            if op == "-":
                sign = -sign
        elif match.group("coef"):
            value = parse_fraction(match.group("coef"))
            coef = value if coef is None else coef * value
            in_term = True
        else:
            index = tuple(int(x) for x in match.group("index").split(","))
            if any(e < 0 for e in index):
                raise ParseError(f"negative exponent in c[{match.group('index')}]")
            power = int(match.group("power") or 1)
            factors.extend([index] * power)
            in_term = True
    if in_term:
        flush()
    else:
        raise ParseError("trailing operator")

    ks = {len(mu) for mono in terms for mu in mono}
    if len(ks) > 1:
        raise ParseError(f"mixed variable counts {sorted(ks)}")
    if fmt is not None:
        delta, d, k = fmt
        if ks and ks != {k}:
            raise ParseError(f"indices have length {ks.pop()}, expected {k}")
        result = MetaPolynomial(k, terms, d=d if d is not None else _infer(terms, "d"),
                                delta=delta if delta is not None else _infer(terms, "delta"))
        return result
    if not ks:
        # a pure constant (or just "0"): cannot infer k
        if list(terms) in ([], [()]):
            raise ParseError("constant metapolynomial needs an explicit format")
    return MetaPolynomial(ks.pop(), terms)


def _infer(terms, which):
    if which == "d":
        degrees = {sum(mu) for mono in terms for mu in mono}
        return degrees.pop() if len(degrees) == 1 else None
    sizes = {len(mono) for mono in terms}
    return sizes.pop() if len(sizes) == 1 else None


# -- metapolynomial JSON -------------------------------------------------

def metapolynomial_to_json(m: MetaPolynomial) -> dict:
    return {
        "format": [m.delta, m.d, m.k],
        "terms": [
            {"coef": format_fraction(coef), "monomial": [list(mu) for mu in mono]}
            for mono, coef in sorted(m.terms.items())
        ],
    }


def metapolynomial_from_json(data: dict) -> MetaPolynomial:
    try:
        delta, d, k = data["format"]
        terms = {
            tuple(tuple(int(e) for e in mu) for mu in entry["monomial"]):
                parse_fraction(entry["coef"])
            for entry in data["terms"]
        }
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad metapolynomial JSON: {exc}") from exc
    return MetaPolynomial(int(k), terms,
                          d=None if d is None else int(d),
                          delta=None if delta is None else int(delta))


def metapolynomial_to_text(m: MetaPolynomial) -> str:
    return format_metapolynomial(m)


# -- circuits -------------------------------------------------------------

def circuit_to_json(c: Circuit) -> dict:
    gates = []
    for gate in c.gates:
        if gate.kind == "input":
            gates.append({
                "id": gate.gid,
                "kind": "input",
                "const": format_fraction(gate.const or 0),
                "linear": [[list(mu), format_fraction(coef)] for mu, coef in gate.linear],
            })
        else:
            gates.append({
                "id": gate.gid,
                "kind": gate.kind,
                "args": list(gate.args),
                "scalars": [format_fraction(s) for s in gate.scalars],
            })
    return {
        "format": [c.delta, c.d, c.k],
        "gates": gates,
        "output": c.output,
    }


def circuit_from_json(data: dict) -> Circuit:
    try:
        fmt = data.get("format")
        raw_gates = data["gates"]
        output = int(data["output"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad circuit JSON: {exc}") from exc
    remap: Dict[int, int] = {}
    gates: List[Gate] = []
    inferred_k: Optional[int] = None
    inferred_d: Optional[int] = None
    for entry in raw_gates:
        try:
            old_id = int(entry["id"])
            if old_id in remap:
                raise ParseError(f"duplicate gate id {old_id}")
            gid = len(gates)
            kind = entry["kind"]
            if kind == "input":
                linear = tuple(
                    (tuple(int(e) for e in mu), parse_fraction(coef))
                    for mu, coef in entry.get("linear", [])
                )
                for mu, _ in linear:
                    inferred_k = len(mu)
                    inferred_d = sum(mu)
                gates.append(Gate(gid, "input",
                                  const=parse_fraction(entry.get("const", "0")),
                                  linear=linear))
            elif kind in ("add", "mul"):
                a, b = entry["args"]
                if a not in remap or b not in remap:
                    raise ParseError(f"gate {old_id} references later gate")
                sa, sb = entry.get("scalars", ["1", "1"])
                gates.append(Gate(gid, kind, args=(remap[a], remap[b]),
                                  scalars=(parse_fraction(sa), parse_fraction(sb))))
            else:
                raise ParseError(f"unknown gate kind {kind!r}")
            remap[old_id] = gid
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad gate entry {entry!r}: {exc}") from exc
    if fmt is None:
        delta = None
        d, k = inferred_d, inferred_k
        if d is None or k is None:
            raise ParseError("circuit without format needs at least one metavariable")
    else:
        delta, d, k = fmt
        d, k = int(d), int(k)
        delta = None if delta is None else int(delta)
    if output not in remap:
        raise ParseError(f"output id {output} not among gates")
    try:
        return Circuit(k, d, delta, tuple(gates), remap[output])
    except CircuitError as exc:
        raise ParseError(str(exc)) from exc


# -- operators and plans ---------------------------------------------------

def uea_to_json(e: UeaElement) -> dict:
    return {
        "k": e.k,
        "terms": [
            {"coef": format_fraction(coef), "word": [list(letter) for letter in word]}
            for word, coef in sorted(e.terms.items())
        ],
    }


def uea_from_json(data: dict) -> UeaElement:
    try:
        k = int(data["k"])
        terms = {
            tuple((int(i), int(j)) for i, j in entry["word"]): parse_fraction(entry["coef"])
            for entry in data["terms"]
        }
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad operator JSON: {exc}") from exc
    return UeaElement(k, terms)


def target_to_json(target: Tuple) -> dict:
    kind = target[0]
    if kind == "weight":
        return {"kind": "weight", "weight": list(target[1])}
    if kind == "isotypic":
        return {"kind": "isotypic", "partition": list(target[1])}
    if kind == "hwv":
        return {"kind": "hwv", "partition": list(target[1])}
    if kind == "gz":
        return {"kind": "gz", "tableau": [list(row) for row in target[1].rows]}
    raise ParseError(f"unknown target kind {kind!r}")


def target_from_json(data: dict) -> Tuple:
    kind = data.get("kind")
    if kind == "weight":
        return ("weight", tuple(int(e) for e in data["weight"]))
    if kind in ("isotypic", "hwv"):
        return (kind, tuple(int(e) for e in data["partition"]))
    if kind == "gz":
        return ("gz", Tableau(tuple(tuple(int(e) for e in row) for row in data["tableau"])))
    raise ParseError(f"unknown target kind {kind!r}")


def plan_to_json(plan: ProjectorPlan) -> dict:
    return {
        "target": target_to_json(plan.target),
        "format": list(plan.fmt),
        "factors": [
            {
                "op": uea_to_json(f.op),
                "shift": format_fraction(f.shift),
                "divisor": format_fraction(f.divisor),
            }
            for f in plan.factors
        ],
    }


def plan_from_json(data: dict) -> ProjectorPlan:
    try:
        target = target_from_json(data["target"])
        fmt = tuple(int(x) for x in data["format"])
        factors = tuple(
            ProjectorFactor(
                uea_from_json(entry["op"]),
                parse_fraction(entry["shift"]),
                parse_fraction(entry["divisor"]),
            )
            for entry in data["factors"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad plan JSON: {exc}") from exc
    return ProjectorPlan(target, fmt, factors)


# -- combinatorial objects -------------------------------------------------

def partition_to_json(lam) -> list:
    return list(lam)


def tableau_to_json(t: Tableau) -> list:
    return [list(row) for row in t.rows]


def tableau_from_json(data) -> Tableau:
    return Tableau(tuple(tuple(int(e) for e in row) for row in data))


def pattern_to_json(p: GTPattern) -> list:
    return [list(level) for level in p.levels]


def pattern_from_json(data) -> GTPattern:
    return GTPattern(tuple(tuple(int(e) for e in level) for level in data))
