"""Command line entry point: ``liberator <subcommand> ...``; reports are JSON."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import repro
from .dynamics import Dynamics, flow_preserves, preservation_residual
from .hamiltonian import solve_hamiltonian
from .ncalgebra import GeneratorSet, NCPoly, NormalFormError
from .parser import ParseError, format_dynamics, format_relations, parse_dynamics, parse_relations
from .scalars import ParamPoly, format_rational
from .solver import (
    InvariantViolation,
    classify_2x2,
    generic_resonance_monomials,
    liberate,
    resonance_monomials,
)

EXIT_OK, EXIT_USAGE, EXIT_NO_SOLUTION, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def default_maxdeg() -> int:
    raw = os.environ.get("LIBERATOR_MAXDEG")
    if raw is None:
        return 6
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"LIBERATOR_MAXDEG must be an integer, got {raw!r}") from None
    if value < 0:
        raise UsageError("LIBERATOR_MAXDEG must be non-negative")
    return value


def rationals(text: str, count: int, flag: str) -> list[Fraction]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise UsageError(f"{flag} expects {count} comma-separated rationals")
    try:
        return [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{flag}: not a rational list: {text!r}") from None


def read_text(value: str) -> str:
    if value.startswith("@"):
        with open(value[1:]) as fh:
            return fh.read()
    return value


def dynamics_from(args) -> Dynamics:
    given = [x for x in ("matrix", "quad", "dynamics") if getattr(args, x, None)]
    if len(given) != 1:
        raise UsageError("give exactly one of --matrix, --quad, --dynamics")
    if args.matrix:
        a, b, c, d = rationals(args.matrix, 4, "--matrix")
        return Dynamics.linear([[a, b], [c, d]], transpose=args.transpose)
    if args.quad:
        return Dynamics.quadratic_pair(*rationals(args.quad, 6, "--quad"))
    return parse_dynamics(read_text(args.dynamics))


def generic_dynamics() -> Dynamics:
    gens = GeneratorSet(("X", "Y"))
    lam, mu = ParamPoly.var("lambda"), ParamPoly.var("mu")
    return Dynamics(gens, [NCPoly(gens, {(0,): lam}), NCPoly(gens, {(1,): mu})], allow_parameters=True)


def echo(args, dyn: Dynamics | None) -> dict:
    out = {"command": args.command}
    for key in ("matrix", "quad", "transpose", "generic_ratio", "ansatz", "maxdeg", "cap", "order", "rel"):
        value = getattr(args, key, None)
        if value not in (None, False):
            out[key] = value
    if dyn is not None:
        out["dynamics"] = format_dynamics(dyn) if all(p.is_concrete() for p in dyn.rhs) else repr(dyn)
    return out


def case_of(args):
    if not getattr(args, "matrix", None):
        return None
    a, b, c, d = rationals(args.matrix, 4, "--matrix")
    try:
        return classify_2x2([[a, b], [c, d]], args.transpose).to_dict()
    except ValueError:
        if getattr(args, "generic_ratio", False):
            return {"label": "GenericRatio", "case": None, "eigenvalues": [], "diagonal_form": True}
        raise


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(args) -> tuple[dict, int]:
    if not args.matrix:
        raise UsageError("classify needs --matrix")
    case = case_of(args)
    report = {"input": echo(args, None), "case": case}
    maxdeg = args.maxdeg
    if case["label"] == "GenericRatio":
        res = generic_resonance_monomials(maxdeg)
    elif case["label"] == "JordanBlock":
        res = None
    else:
        lam, mu = (Fraction(x) for x in case["eigenvalues"])
        res = resonance_monomials(lam, mu, maxdeg)
    report["resonance"] = None if res is None else [list(md) for md in sorted(res)]
    return report, EXIT_OK


def cmd_liberate(args) -> tuple[dict, int]:
    if args.generic_ratio:
        dyn = generic_dynamics()
        ansatz = "resonance"
        case = {"label": "GenericRatio", "case": None, "eigenvalues": [], "diagonal_form": True}
    else:
        dyn = dynamics_from(args)
        ansatz = args.ansatz
        case = case_of(args)
    cap = "auto" if args.cap is None else args.cap
    result = liberate(dyn, ansatz, args.maxdeg, cap, args.order, args.pbw_degree, args.generic_ratio,
                      None if args.generic_ratio or args.scan == 0 else args.scan)
    solutions = []
    for sol in result.solutions:
        item = sol.to_dict()
        if args.hamiltonian:
            item["hamiltonian"] = solve_hamiltonian(dyn, sol.rels, args.maxdeg).to_dict()
        solutions.append(item)
    body = result.to_dict()
    body.pop("solutions")
    report = {
        "input": echo(args, dyn),
        "case": case,
        "result": body,
        "solutions": solutions,
        "hamiltonian": solutions[0]["hamiltonian"] if args.hamiltonian and len(solutions) == 1 else None,
        "discrepancies": [],
    }
    if case and case.get("label") == "QuantumPlane" and ansatz == "resonance":
        lam, mu = (Fraction(x) for x in case["eigenvalues"])
        extra = sorted(resonance_monomials(lam, mu, args.maxdeg) - {(1, 1)})
        if extra:
            report["discrepancies"].append({
                "claim": "same-sign commensurable case keeps only XY",
                "paper": "{XY}",
                "computed": "extra resonant monomials " + ", ".join(f"X^{i} Y^{j}" for i, j in extra),
                "verdict": repro.DISCREPANT,
            })
    code = EXIT_OK
    if args.require_solution and result.status != "SolutionSpace":
        code = EXIT_NO_SOLUTION
    return report, code


def relations_for(args, dyn: Dynamics):
    if not args.rel:
        raise UsageError("--rel is required")
    return parse_relations(read_text(args.rel), dyn.gens, args.cap)


def cmd_hamiltonian(args) -> tuple[dict, int]:
    dyn = dynamics_from(args)
    rels = relations_for(args, dyn)
    residual_free = all(preservation_residual(dyn, rels, p).is_zero() for p in dyn.gens.pairs())
    ham = solve_hamiltonian(dyn, rels, args.maxdeg)
    report = {
        "input": echo(args, dyn),
        "relations": format_relations(rels),
        "preserved": residual_free,
        "hamiltonian": ham.to_dict(),
    }
    if ham.hamiltonian and not residual_free:
        raise InvariantViolation("Hamiltonian found for relations that the dynamics does not preserve")
    return report, EXIT_OK


def cmd_flow_verify(args) -> tuple[dict, int]:
    dyn = dynamics_from(args)
    rels = relations_for(args, dyn)
    check = flow_preserves(dyn, rels, args.order)
    residuals = {f"[{dyn.gens.names[i]},{dyn.gens.names[j]}]": str(preservation_residual(dyn, rels, (i, j)).value)
                 for i, j in dyn.gens.pairs()}
    report = {
        "input": echo(args, dyn),
        "relations": format_relations(rels),
        "preserved": check.preserved,
        "order": check.order,
        "residuals": residuals,
        "witness": None,
    }
    if check.witness is not None:
        (i, j), k, value = check.witness
        report["witness"] = {"pair": f"[{dyn.gens.names[i]},{dyn.gens.names[j]}]", "t_order": k,
                             "value": str(value)}
    if check.preserved != all(v == "0" for v in residuals.values()):
        raise InvariantViolation("flow check and preservation residual disagree")
    return report, EXIT_OK


def cmd_repro(args) -> tuple[dict, int]:
    return repro.run(args.example), EXIT_OK


# ---------------------------------------------------------------------------


def build_parser(maxdeg: int) -> argparse.ArgumentParser:
    parser = _Parser(prog="liberator", description="Flow-preserved commutation relations for operator ODEs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def dynamics_flags(p, required=True):
        p.add_argument("--matrix", help="2x2 linear dynamics a,b,c,d (d/dt (X,Y) = A (X,Y))")
        p.add_argument("--transpose", action="store_true", help="use A^T instead of A")
        p.add_argument("--quad", help="quadratic pair a,b,c,d,e,f")
        p.add_argument("--dynamics", help="equations as text, or @file")

    p = sub.add_parser("classify", help="case label of 2x2 linear dynamics")
    dynamics_flags(p)
    p.add_argument("--generic-ratio", action="store_true", help="treat the eigenvalue ratio as generic")
    p.add_argument("--maxdeg", type=int, default=maxdeg)

    p = sub.add_parser("liberate", help="find preserved relations")
    dynamics_flags(p)
    p.add_argument("--ansatz", choices=["resonance", "linear", "quadratic", "full"], default="full")
    p.add_argument("--maxdeg", type=int, default=maxdeg)
    p.add_argument("--cap", type=int, help="discard words longer than this")
    p.add_argument("--order", "--flow-order", dest="order", type=int, default=4, help="flow check order")
    p.add_argument("--pbw-degree", type=int, default=4)
    p.add_argument("--scan", type=int, default=8, help="bounded-height scan H (0 disables)")
    p.add_argument("--generic-ratio", action="store_true")
    p.add_argument("--hamiltonian", action="store_true", help="also solve for a Hamiltonian per solution")
    p.add_argument("--require-solution", action="store_true")

    p = sub.add_parser("hamiltonian", help="search for h with [h, X_i] = f_i")
    dynamics_flags(p)
    p.add_argument("--rel", help="relations, e.g. \"[X,Y]=1\"")
    p.add_argument("--maxdeg", type=int, default=maxdeg)
    p.add_argument("--cap", type=int)

    p = sub.add_parser("flow-verify", help="check the formal flow preserves given relations")
    dynamics_flags(p)
    p.add_argument("--rel", help="relations, e.g. \"[X,Y]=1+{X,Y}\"")
    p.add_argument("--order", "--flow-order", dest="order", type=int, default=6)
    p.add_argument("--cap", type=int)

    p = sub.add_parser("repro", help="reproduce the built-in examples with a discrepancy table")
    p.add_argument("--example", choices=["1", "2", "all"], default="all")
    return parser


COMMANDS = {
    "classify": cmd_classify,
    "liberate": cmd_liberate,
    "hamiltonian": cmd_hamiltonian,
    "flow-verify": cmd_flow_verify,
    "repro": cmd_repro,
}


def dumps(report) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=_json_default)


def _json_default(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def main(argv=None) -> int:
    try:
        parser = build_parser(default_maxdeg())
    except UsageError as exc:
        print(f"liberator: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    args = parser.parse_args(argv)
    try:
        report, code = COMMANDS[args.command](args)
    except (UsageError, ParseError, NormalFormError, ValueError) as exc:
        print(f"liberator: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvariantViolation, AssertionError) as exc:
        print(f"liberator: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    print(dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
