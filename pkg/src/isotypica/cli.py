"""Command-line front end.

Subcommands:

  decompose       split a metapolynomial into all nonzero components at one
                  level (weight | isotypic | hwv | gz), with a reconstruction
                  check
  project         apply a single projection and print the image
  characters      exact eigenvalues of the central elements on one type
  transform       rewrite a circuit into one computing a projection
  verify          run the projector laws and the linear-algebra cross-check
                  on random inputs for a format
  demo-corollary  generic-basis-change demo: project a transformed vector
                  onto the tableau components of a shape

Exit codes: 0 success, 1 usage/parse error, 2 math or verification failure.
The environment variable ISOTYPICA_DIM_CAP overrides the default dimension
cap of the exact linear-algebra engine.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import oracle, projectors, rep, serialize, uea
from .action import GroupElement, act_on_meta, act_group_on_meta, random_basis_change
from .circuit import eval_symbolic, transform_plan
from .errors import IsotypicaError, ParseError
from .meta import MetaPolynomial
from .projectors import apply_plan, plan_gz, plan_hwv, plan_isotypic, plan_weight
from .rep import Tableau


class UsageError(Exception):
    pass


class VerificationError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _read_metapolynomial(path: str, fmt) -> MetaPolynomial:
    raw = _read_text(path)
    stripped = raw.lstrip()
    if stripped.startswith("{"):
        m = serialize.metapolynomial_from_json(json.loads(raw))
        delta, d, k = fmt
        if (m.k != k) or (m.d not in (None, d)) or (m.delta not in (None, delta)):
            if not m.is_zero:
                raise ParseError(f"input format {m.format} does not match {fmt}")
        return m
    return serialize.parse_metapolynomial(raw, fmt=fmt)


def _parse_ints(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError as exc:
        raise UsageError(f"bad integer list {text!r}") from exc


def _format_args(parser: _Parser, required: bool = True) -> None:
    parser.add_argument(
        "--format", nargs=3, type=int, metavar=("DELTA", "D", "K"),
        required=required, help="metapolynomial format (delta, d, k)",
    )


def _metapoly_payload(m: MetaPolynomial, as_json: bool):
    return serialize.metapolynomial_to_json(m) if as_json else str(m)


# -- decompose --------------------------------------------------------------

def _gz_candidates(fmt, weights) -> List[Tableau]:
    """Tableaux whose content is a weight of the input; others project to zero."""
    out: List[Tableau] = []
    for lam in projectors.occurring_types(fmt):
        for t in rep.enumerate_tableaux(lam, fmt[2]):
            if t.content(fmt[2]) in weights:
                out.append(t)
    return out


def _decompose(m: MetaPolynomial, fmt, level: str):
    """Yield (label_text, target, plan, component) for all nonzero components."""
    delta, d, k = fmt
    weights = set(rep.weights_of(m))
    jobs = []
    if level == "weight":
        jobs = [(f"weight ({','.join(map(str, w))})", plan_weight(w, fmt))
                for w in sorted(weights, reverse=True)]
    elif level == "isotypic":
        jobs = [(f"isotypic ({','.join(map(str, lam))})", plan_isotypic(lam, fmt))
                for lam in projectors.occurring_types(fmt)]
    elif level == "hwv":
        jobs = [(f"hwv ({','.join(map(str, lam))})", plan_hwv(lam, fmt))
                for lam in projectors.occurring_types(fmt)]
    elif level == "gz":
        jobs = [(f"tableau {t}", plan_gz(t, fmt))
                for t in _gz_candidates(fmt, weights)]
    else:
        raise UsageError(f"unknown level {level!r}")
    results = []
    for label, plan in jobs:
        component = apply_plan(plan, m)
        results.append((label, plan, component))
    return results


def cmd_decompose(args) -> int:
    fmt = tuple(args.format)
    m = _read_metapolynomial(args.infile, fmt)
    results = _decompose(m, fmt, args.level)
    nonzero = [(label, comp) for label, _, comp in results if not comp.is_zero]

    if args.level == "hwv":
        # highest-weight projections do not sum back to the input; instead
        # verify each one is annihilated by every raising operator
        for label, comp in nonzero:
            for i in range(1, fmt[2] + 1):
                for j in range(i + 1, fmt[2] + 1):
                    if not act_on_meta((i, j), comp).is_zero:
                        raise VerificationError(f"{label}: image not highest-weight")
        check_name, check_ok = "raising-annihilation", True
    else:
        total = MetaPolynomial.zero(*fmt)
        for _, comp in nonzero:
            total = total + comp
        check_ok = total == m
        check_name = "reconstruction"
        if not check_ok:
            raise VerificationError("component sum does not equal the input")

    if args.json:
        payload = {
            "level": args.level,
            "format": list(fmt),
            "input": serialize.metapolynomial_to_json(m),
            "components": [
                {"label": label, "value": serialize.metapolynomial_to_json(comp)}
                for label, comp in nonzero
            ],
            check_name: check_ok,
        }
        _write_text(args.out, json.dumps(payload, indent=2))
    else:
        lines = [f"input: {m}", f"level: {args.level}"]
        for label, comp in nonzero:
            lines.append(f"{label}: {comp}")
        if not nonzero:
            lines.append("(no nonzero components)")
        lines.append(f"{check_name}: ok")
        _write_text(args.out, "\n".join(lines))
    return 0


# -- project ----------------------------------------------------------------

def _build_plan(level: str, target_text: str, fmt):
    if level == "weight":
        return plan_weight(_parse_ints(target_text), fmt)
    if level == "isotypic":
        return plan_isotypic(_parse_ints(target_text), fmt)
    if level == "hwv":
        return plan_hwv(_parse_ints(target_text), fmt)
    if level == "gz":
        try:
            rows = json.loads(target_text)
            tableau = Tableau(tuple(tuple(int(e) for e in row) for row in rows))
        except (ValueError, TypeError) as exc:
            raise UsageError(f"bad tableau {target_text!r}: {exc}") from exc
        return plan_gz(tableau, fmt)
    raise UsageError(f"unknown level {level!r}")


def cmd_project(args) -> int:
    fmt = tuple(args.format)
    plan = _build_plan(args.level, args.target, fmt)
    m = _read_metapolynomial(args.infile, fmt)
    image = apply_plan(plan, m)
    if args.plan_out:
        _write_text(args.plan_out, json.dumps(serialize.plan_to_json(plan), indent=2))
    if args.json:
        payload = {
            "target": serialize.target_to_json(plan.target),
            "factors": len(plan.factors),
            "image": serialize.metapolynomial_to_json(image),
        }
        _write_text(args.out, json.dumps(payload, indent=2))
    else:
        _write_text(args.out, str(image))
        print(f"factors: {len(plan.factors)}", file=sys.stderr)
    return 0


# -- characters ---------------------------------------------------------------

def cmd_characters(args) -> int:
    lam = _parse_ints(args.partition)
    k = args.k if args.k is not None else len(lam)
    values = [uea.central_character(lam, p, k) for p in range(1, k + 1)]
    if args.json:
        payload = {"partition": list(lam), "k": k, "values": values}
        _write_text(args.out, json.dumps(payload, indent=2))
    else:
        lines = [f"type ({','.join(map(str, lam))}) in gl_{k}"]
        lines += [f"C_{p}: {value}" for p, value in enumerate(values, start=1)]
        _write_text(args.out, "\n".join(lines))
    return 0


# -- transform ----------------------------------------------------------------

def cmd_transform(args) -> int:
    raw = json.loads(_read_text(args.infile))
    circ = serialize.circuit_from_json(raw)
    delta = circ.delta
    if delta is None:
        value = eval_symbolic(circ)
        delta = value.delta
        if delta is None:
            raise VerificationError("circuit computes a mixed meta-degree value")
        circ.delta = delta
    fmt = (delta, circ.d, circ.k)
    plan = _build_plan(args.level, args.target, fmt)
    mode = "factor_by_factor" if args.mode == "factor" else "single_pass"
    out = transform_plan(circ, plan, mode=mode, term_budget=args.term_budget)
    report = {
        "input_size": circ.size(),
        "output_size": out.size(),
        "factors": len(plan.factors),
        "stages": [
            {
                "word_length": s.word_length,
                "tuple_count": s.tuple_count,
                "pair_count": s.pair_count,
                "size_raw": s.size_raw,
                "size_after": s.size_after,
            }
            for s in out.stage_stats
        ],
    }
    if args.check:
        expected = apply_plan(plan, eval_symbolic(circ))
        actual = eval_symbolic(out)
        if expected != actual:
            raise VerificationError("transformed circuit disagrees with the projection")
        report["check"] = "ok"
    if args.out:
        _write_text(args.out, json.dumps(serialize.circuit_to_json(out), indent=2))
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(f"input size: {report['input_size']}")
        print(f"output size: {report['output_size']}")
        print(f"factors: {report['factors']}")
        for n, stage in enumerate(report["stages"], start=1):
            print(
                f"stage {n}: L={stage['word_length']} |B|={stage['tuple_count']} "
                f"|A|={stage['pair_count']} raw={stage['size_raw']} kept={stage['size_after']}"
            )
        if args.check:
            print("check: ok")
    return 0


# -- verify ---------------------------------------------------------------

def _random_metapolynomial(rng, fmt, max_terms=4) -> MetaPolynomial:
    from .meta import enumerate_metamonomials

    delta, d, k = fmt
    basis = enumerate_metamonomials(delta, d, k)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = basis[rng.randrange(len(basis))]
        terms[mono] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return MetaPolynomial(k, terms, d=d)


def cmd_verify(args) -> int:
    import random

    fmt = tuple(args.format)
    delta, d, k = fmt
    rng = random.Random(args.seed)
    decomp = oracle.brute_decompose(fmt)
    checks: List[Tuple[str, bool]] = []

    dims = rep.weight_dimensions(fmt)
    ok = all(
        len(decomp.weight_basis(w)) == dims.get(w, 0) for w in decomp.weight_labels()
    )
    checks.append(("weight dimensions (combinatorial vs linear algebra)", ok))

    mults = rep.isotypic_multiplicities(fmt)
    types = decomp.isotypic_labels()
    ok = set(types) == set(mults)
    checks.append(("occurring types (combinatorial vs linear algebra)", ok))

    weight_plans = {w: plan_weight(w, fmt) for w in decomp.weight_labels()}
    isotypic_plans = {lam: plan_isotypic(lam, fmt) for lam in types}
    for trial in range(args.trials):
        m = _random_metapolynomial(rng, fmt)
        for w, plan in weight_plans.items():
            if apply_plan(plan, m) != decomp.project_weight(m, w):
                checks.append((f"trial {trial}: weight plan vs oracle", False))
                break
        for lam, plan in isotypic_plans.items():
            image = apply_plan(plan, m)
            if image != decomp.project_isotypic(m, lam):
                checks.append((f"trial {trial}: isotypic plan vs oracle", False))
                break
            if apply_plan(plan, image) != image:
                checks.append((f"trial {trial}: idempotence", False))
                break
        total = MetaPolynomial.zero(*fmt)
        for plan in isotypic_plans.values():
            total = total + apply_plan(plan, m)
        if total != m:
            checks.append((f"trial {trial}: isotypic completeness", False))
    if len(checks) == 2:
        checks.append((f"{args.trials} random trials (plans vs oracle, laws)", True))

    failed = [name for name, ok in checks if not ok]
    for name, ok in checks:
        print(f"{name}: {'ok' if ok else 'FAIL'}")
    if failed:
        raise VerificationError(f"{len(failed)} checks failed")
    return 0


# -- demo-corollary -----------------------------------------------------------

def cmd_demo_corollary(args) -> int:
    fmt = (3, 2, 3)
    delta, d, k = fmt
    shape = rep.partition(_parse_ints(args.shape))
    if args.infile:
        start = _read_metapolynomial(args.infile, fmt)
    else:
        # a canonical vector of an irreducible component: the highest-weight
        # image of a monomial of the right weight
        seed_mono = MetaPolynomial(
            k, {((2, 0, 0), (2, 0, 0), (0, 2, 0)): 1}, d=d
        )
        start = apply_plan(plan_hwv(shape, fmt), seed_mono)
        if start.is_zero:
            raise VerificationError(f"no component of shape {shape} here")
    g = GroupElement.identity(k) if args.identity else random_basis_change(k, args.seed, args.bound)
    moved = act_group_on_meta(g, start)
    content = _parse_ints(args.content)
    tableaux = [
        t for t in rep.enumerate_tableaux(shape, k) if t.content(k) == content
    ]
    print(f"start: {start}")
    print(f"basis change: {'identity' if args.identity else f'seed {args.seed}'}")
    nonzero = 0
    for t in tableaux:
        image = apply_plan(plan_gz(t, fmt), moved)
        status = "zero" if image.is_zero else "nonzero"
        nonzero += not image.is_zero
        print(f"tableau {t}: {status}")
        if args.show and not image.is_zero:
            print(f"  {image}")
    print(f"nonzero projections: {nonzero} of {len(tableaux)}")
    return 0


# -- entry point ------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="isotypica", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="split into components at one level")
    _format_args(p)
    p.add_argument("--level", choices=["weight", "isotypic", "hwv", "gz"], required=True)
    p.add_argument("--in", dest="infile", default="-", help="metapolynomial file or - for stdin")
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("project", help="apply one projection")
    _format_args(p)
    p.add_argument("--level", choices=["weight", "isotypic", "hwv", "gz"], required=True)
    p.add_argument("--target", required=True,
                   help="weight/partition as comma list, tableau as JSON rows")
    p.add_argument("--in", dest="infile", default="-")
    p.add_argument("--out", default=None)
    p.add_argument("--plan-out", dest="plan_out", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("characters", help="central-element eigenvalue table")
    p.add_argument("--partition", required=True, help="weakly decreasing comma list")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_characters)

    p = sub.add_parser("transform", help="rewrite a circuit into a projected circuit")
    p.add_argument("--in", dest="infile", required=True, help="circuit JSON file")
    p.add_argument("--level", choices=["weight", "isotypic", "hwv", "gz"], required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--mode", choices=["factor", "single"], default="factor")
    p.add_argument("--term-budget", type=int, default=20000)
    p.add_argument("--out", default=None, help="output circuit JSON file")
    p.add_argument("--check", action="store_true",
                   help="verify the output symbolically against the projection")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("verify", help="projector laws and oracle agreement")
    _format_args(p)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("demo-corollary", help="generic basis change demo")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--bound", type=int, default=2)
    p.add_argument("--shape", default="4,2")
    p.add_argument("--content", default="2,2,2")
    p.add_argument("--identity", action="store_true")
    p.add_argument("--in", dest="infile", default=None)
    p.add_argument("--show", action="store_true", help="print nonzero projections")
    p.set_defaults(func=cmd_demo_corollary)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 2
    except IsotypicaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
