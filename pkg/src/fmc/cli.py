"""Command-line surface.

Subcommands: nests, h-poly, egf, mult, decompose, verify.  Every command
writes exactly one document to stdout (JSON, aligned text, or LaTeX for
decompositions); diagnostics go to stderr.  Exit status is 0 on success,
1 when a verification check fails, 2 on invalid input.

JSON output is canonical: fixed key order, compact separators, no floats.
Integers that fit a signed 64-bit word are emitted as JSON numbers; larger
ones as decimal strings, so documents survive consumers that read numbers
as doubles.  Re-serializing a parsed document reproduces it byte for byte.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import __version__
from .genfun import h_recurrence, multiplicity_table, recurrence_egf, verify_identity
from .nests import BudgetError, NEST_BUDGET, enumerate_nests, nest_stats
from .oracle import run_verification, solver_match
from .polyseries import IntPoly, format_poly
from .theory import (
    GroupDescriptor,
    SpaceDescriptor,
    betti_of_fm,
    builtin_space,
    decompose_formal,
    evaluate_decomposition,
    formal_evaluation,
    is_builtin_space,
    load_space,
    term_group_name,
)

_INT64_MIN = -(2**63)
_INT64_MAX = 2**63 - 1


def _json_ready(value: Any) -> Any:
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return value if _INT64_MIN <= value <= _INT64_MAX else str(value)
    if isinstance(value, str):
        return value
    if isinstance(value, (list, tuple)):
        return [_json_ready(v) for v in value]
    if isinstance(value, dict):
        return {key: _json_ready(v) for key, v in value.items()}
    raise TypeError(f"unexpected value in JSON document: {type(value).__name__}")


def render_json(doc: dict) -> str:
    return json.dumps(_json_ready(doc), separators=(",", ":"))


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer value: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _any_int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer value: {text!r}") from None


def _group_doc(group: GroupDescriptor) -> dict:
    doc: dict[str, Any] = {}
    if group.formal:
        if group.free_rank or group.torsion:
            doc["free_rank"] = group.free_rank
            doc["torsion"] = list(group.torsion)
        doc["formal"] = list(group.formal)
    else:
        doc["free_rank"] = group.free_rank
        doc["torsion"] = list(group.torsion)
    return doc


def _emit(text: str) -> None:
    sys.stdout.write(text + "\n")


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def cmd_nests(args: argparse.Namespace) -> int:
    found = enumerate_nests(args.n, allow_large=args.budget_override)
    if args.format == "json":
        doc = {
            "n": args.n,
            "count": len(found),
            "nests": [
                {
                    "members": [list(m) for m in nest.members],
                    "components": nest_stats(nest).components,
                    "sons": [
                        {"member": list(member), "count": count}
                        for member, count in sorted(nest_stats(nest).sons.items())
                    ],
                }
                for nest in found
            ],
        }
        _emit(render_json(doc))
    else:
        lines = [f"n={args.n} count={len(found)}"]
        for nest in found:
            stats = nest_stats(nest)
            sons = " ".join(
                "{" + ",".join(map(str, member)) + "}=" + str(count)
                for member, count in sorted(stats.sons.items())
            )
            line = f"{nest}  components={stats.components}"
            if sons:
                line += f" sons: {sons}"
            lines.append(line)
        _emit("\n".join(lines))
    return 0


def cmd_h_poly(args: argparse.Namespace) -> int:
    poly = h_recurrence(args.n, args.d)
    if args.format == "json":
        doc = {"n": args.n, "d": args.d, "coeffs": list(poly.coeffs)}
        _emit(render_json(doc))
    else:
        _emit(f"n={args.n} d={args.d} h = {format_poly(poly)}")
    return 0


def cmd_egf(args: argparse.Namespace) -> int:
    series = recurrence_egf(args.n, args.d)
    failures = []
    if args.verify:
        if not verify_identity(series, args.d).is_zero:
            failures.append("identity-residual")
        if not solver_match(args.n, args.d).passed:
            failures.append("solver-match")
    if args.format == "json":
        doc: dict[str, Any] = {
            "n": args.n,
            "d": args.d,
            "h": [list(c.coeffs) for c in series.coeffs],
        }
        if args.verify:
            doc["verified"] = not failures
            doc["failures"] = failures
        _emit(render_json(doc))
    else:
        lines = [f"n={args.n} d={args.d}"]
        for i, c in enumerate(series.coeffs):
            lines.append(f"h_{i} = {format_poly(c)}")
        if args.verify:
            lines.append(
                "verified: ok" if not failures else f"verified: FAILED ({', '.join(failures)})"
            )
        _emit("\n".join(lines))
    return 1 if failures else 0


def cmd_mult(args: argparse.Namespace) -> int:
    table = multiplicity_table(args.n, args.d)
    if args.format == "json":
        doc = {
            "n": args.n,
            "d": args.d,
            "entries": [
                {"m": m, "shift": i, "mult": a} for m, i, a in table.terms()
            ],
        }
        _emit(render_json(doc))
    else:
        lines = [f"n={args.n} d={args.d}"]
        for m in range(args.n, 0, -1):
            row = table.row_poly(m)
            if not row.is_zero:
                lines.append(f"m={m}: {format_poly(row)}")
        _emit("\n".join(lines))
    return 0


def _resolve_space(args: argparse.Namespace, n: int) -> SpaceDescriptor:
    if args.space is None:
        raise ValueError("--space is required in ranks mode")
    if is_builtin_space(args.space):
        return builtin_space(args.space, args.theory, max_power=n)
    space = load_space(args.space)
    if space.kind != args.theory:
        raise ValueError(
            f"space kind {space.kind!r} does not match --theory {args.theory!r}"
        )
    return space


def _latex_term(theory: str, m: int, shift: int, mult: int) -> str:
    base = "X" if m == 1 else f"X^{{{m}}}"
    if theory == "lawson":
        level = "p" if shift == 0 else f"p-{shift}"
        degree = "k" if shift == 0 else f"k-{2 * shift}"
        body = f"L_{{{level}}}H_{{{degree}}}({base})"
    elif theory == "chow":
        level = "p" if shift == 0 else f"p-{shift}"
        body = f"\\mathrm{{Ch}}_{{{level}}}({base})"
    elif theory == "db":
        level = "p" if shift == 0 else f"p-{shift}"
        degree = "k" if shift == 0 else f"k-{2 * shift}"
        body = f"H^{{{degree}}}_{{\\mathcal{{D}}}}({base},\\mathbb{{Z}}({level}))"
    else:  # betti
        degree = "k" if shift == 0 else f"k-{2 * shift}"
        body = f"H_{{{degree}}}({base})"
    if mult > 1:
        body += f"^{{\\oplus {mult}}}"
    return body


def cmd_decompose(args: argparse.Namespace) -> int:
    n, d, theory = args.n, args.d, args.theory
    p, k = args.p, args.k
    has_index = p is not None or k is not None
    if has_index:
        if theory == "lawson" or theory == "db":
            if p is None or k is None:
                raise ValueError(f"--theory {theory} needs both --p and --k")
        elif theory == "chow":
            if p is None:
                raise ValueError("--theory chow needs --p")
            if k is not None:
                raise ValueError("--theory chow takes no --k")
        else:  # betti
            if k is None:
                raise ValueError("--theory betti needs --k")
            if p is not None:
                raise ValueError("--theory betti takes no --p")
    if theory == "lawson" and has_index and not (k >= 2 * p >= 0):
        raise ValueError("lawson index must satisfy k >= 2p >= 0")
    if theory == "chow" and has_index and p < 0:
        raise ValueError("chow index p must be >= 0")

    dec = decompose_formal(n, d)

    if args.format == "latex":
        body = " \\oplus ".join(
            _latex_term(theory, m, shift, mult) for m, shift, mult in dec.terms
        )
        _emit(f"$ {body} $")
        return 0

    doc: dict[str, Any] = {"n": n, "d": d, "theory": theory, "mode": args.mode}
    header = f"n={n} d={d} theory={theory} mode={args.mode}"
    if has_index:
        if p is not None:
            doc["p"] = p
            header += f" p={p}"
        if k is not None:
            doc["k"] = k
            header += f" k={k}"

    value: GroupDescriptor | None = None
    poincare: IntPoly | None = None
    term_docs = []
    if args.mode == "formal":
        for m, shift, mult in dec.terms:
            entry: dict[str, Any] = {"m": m, "shift": shift, "mult": mult}
            if has_index:
                entry["group"] = term_group_name(theory, m, shift, p, k)
            term_docs.append(entry)
        if has_index:
            value = formal_evaluation(dec, theory, p, k)
    else:  # ranks
        space = _resolve_space(args, n)
        doc["space"] = space.name
        header += f" space={space.name}"
        for m, shift, mult in dec.terms:
            term_docs.append({"m": m, "shift": shift, "mult": mult})
        if theory == "betti" and k is None:
            if space.betti is None:
                raise ValueError(f"space {space.name!r} has no Betti polynomial")
            poincare = betti_of_fm(space.betti, d, n)
        else:
            value = evaluate_decomposition(dec, space, p, k)

    doc["terms"] = term_docs
    if value is not None:
        doc["value"] = _group_doc(value)
    if poincare is not None:
        doc["poincare"] = {"coeffs": list(poincare.coeffs)}

    if args.format == "json":
        _emit(render_json(doc))
    else:
        lines = [header]
        for entry in term_docs:
            line = f"m={entry['m']} shift={entry['shift']} mult={entry['mult']}"
            if "group" in entry:
                line += f" group={entry['group']}"
            lines.append(line)
        if value is not None:
            lines.append(f"value: {value}")
        if poincare is not None:
            lines.append(f"poincare = {format_poly(poincare, 'q')}")
        _emit("\n".join(lines))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    report = run_verification(args.max_n, args.max_d, allow_large=args.budget_override)
    if args.format == "json":
        doc = {
            "max_n": args.max_n,
            "max_d": args.max_d,
            "overall": report.overall,
            "checks": [
                {
                    "name": check.name,
                    "params": dict(check.params),
                    "pass": check.passed,
                    "detail": check.detail,
                }
                for check in report.checks
            ],
        }
        _emit(render_json(doc))
    else:
        lines = []
        for check in report.checks:
            status = "PASS" if check.passed else "FAIL"
            params = " ".join(f"{key}={val}" for key, val in check.params.items())
            lines.append(f"{status} {check.name} {params}: {check.detail}")
        lines.append(f"OVERALL {'PASS' if report.overall else 'FAIL'}")
        _emit("\n".join(lines))
    return 0 if report.overall else 1


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fmc",
        description=(
            "Exact decomposition tables for Fulton-MacPherson configuration "
            "spaces X[n]: multiplicity polynomials, nest enumeration, and "
            "evaluation over Lawson, Chow, Deligne-Beilinson, or Betti data."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_nests = sub.add_parser("nests", help="enumerate nests (labeled forests) of {1..n}")
    p_nests.add_argument("--n", type=_positive_int, required=True, help="number of labels")
    p_nests.add_argument("--format", choices=("json", "text"), default="text")
    p_nests.add_argument(
        "--budget-override",
        action="store_true",
        help=f"enumerate past the default budget of n <= {NEST_BUDGET}",
    )
    p_nests.set_defaults(handler=cmd_nests)

    p_h = sub.add_parser("h-poly", help="connected multiplicity polynomial h_n")
    p_h.add_argument("--n", type=_positive_int, required=True)
    p_h.add_argument("--d", type=_positive_int, required=True, help="dimension of the base")
    p_h.add_argument("--format", choices=("json", "text"), default="text")
    p_h.set_defaults(handler=cmd_h_poly)

    p_egf = sub.add_parser("egf", help="generating function h_0..h_n of the multiplicities")
    p_egf.add_argument("--n", type=_positive_int, required=True)
    p_egf.add_argument("--d", type=_positive_int, required=True)
    p_egf.add_argument(
        "--verify",
        action="store_true",
        help="also check the functional identity and the independent solver",
    )
    p_egf.add_argument("--format", choices=("json", "text"), default="text")
    p_egf.set_defaults(handler=cmd_egf)

    p_mult = sub.add_parser("mult", help="multiplicity table a_{m,i} for X[n]")
    p_mult.add_argument("--n", type=_positive_int, required=True)
    p_mult.add_argument("--d", type=_positive_int, required=True)
    p_mult.add_argument("--format", choices=("json", "text"), default="text")
    p_mult.set_defaults(handler=cmd_mult)

    p_dec = sub.add_parser("decompose", help="decomposition of X[n] for a chosen theory")
    p_dec.add_argument(
        "--theory", choices=("lawson", "chow", "db", "betti"), required=True
    )
    p_dec.add_argument("--n", type=_positive_int, required=True)
    p_dec.add_argument("--d", type=_positive_int, required=True)
    p_dec.add_argument("--p", type=_any_int, default=None, help="level index")
    p_dec.add_argument("--k", type=_any_int, default=None, help="degree index")
    p_dec.add_argument(
        "--space",
        default=None,
        help="descriptor file, or a built-in name (point, p1, p2)",
    )
    p_dec.add_argument("--mode", choices=("formal", "ranks"), default="formal")
    p_dec.add_argument("--format", choices=("json", "text", "latex"), default="text")
    p_dec.set_defaults(handler=cmd_decompose)

    p_verify = sub.add_parser("verify", help="run the oracle cross-check matrix")
    p_verify.add_argument("--max-n", type=_positive_int, default=4)
    p_verify.add_argument("--max-d", type=_positive_int, default=3)
    p_verify.add_argument(
        "--budget-override",
        action="store_true",
        help=f"allow brute-force enumeration past n = {NEST_BUDGET}",
    )
    p_verify.add_argument("--format", choices=("json", "text"), default="text")
    p_verify.set_defaults(handler=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 2
    try:
        return args.handler(args)
    except BudgetError as exc:
        print(f"fmc: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, OSError, json.JSONDecodeError) as exc:
        print(f"fmc: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
