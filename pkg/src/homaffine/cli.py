"""Command-line front end.

Exit codes: 0 answered (either verdict) or check passed, 1 validation or
verification failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .certify import verify
from .documents import (
    DocumentError,
    ProblemInstance,
    certificate_to_dict,
    dumps,
    load_certificate,
    load_problem,
    trace_to_dict,
)
from .engine import Branch, InvalidInstanceError, Kind, Verdict, decide
from .linalg import format_rational
from .lie import format_element, is_nilpotent_element, validate_algebra, validate_levi

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


def _vec(v) -> str:
    return "(" + ", ".join(format_rational(c) for c in v) + ")"


def narrate(p: ProblemInstance, verdict: Verdict) -> list[str]:
    g, ld = p.algebra, p.levi_data
    lines = [
        f"instance {p.name}: dim g = {g.dim}, dim l = {ld.levi.dim}, dim n = {ld.nilradical.dim}",
        f"element x = {format_element(g, p.element)}",
    ]
    if not verdict.trace:
        lines.append("nilradical is zero: no levels to process")
    for rec in verdict.trace:
        head = (f"level {rec.index}: dim V = {rec.quotient_dim}, rank A = {rec.image.dim}, "
                f"vbar = {_vec(rec.vbar)}")
        if rec.branch is Branch.CONJUGATE:
            lines.append(f"{head}, vbar in Im A -> CONJUGATE by y = {format_element(g, rec.y)}")
        else:
            lines.append(f"{head}, vbar not in Im A -> SECTION with phi = {_vec(rec.phi)}")
    if verdict.kind is Kind.AFFINE:
        lines.append(f"verdict AFFINE: section at level {verdict.certificate.level}")
    else:
        lines.append(
            f"base case: x is conjugate to {format_element(g, verdict.final)} in the Levi part, "
            "so H lies in a reductive subgroup"
        )
        lines.append("verdict NOT_AFFINE")
    return lines


def _load(path: str, err) -> ProblemInstance | None:
    try:
        return load_problem(path)
    except (DocumentError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return None


def cmd_validate(args, out, err) -> int:
    p = _load(args.path, err)
    if p is None:
        return EXIT_FAIL
    for report in (validate_algebra(p.algebra), validate_levi(p.algebra, p.levi_data)):
        if not report:
            print(f"invalid: {report.first}", file=out)
            return EXIT_FAIL
    if all(c == 0 for c in p.element):
        print("invalid: element is zero", file=out)
        return EXIT_FAIL
    if not is_nilpotent_element(p.algebra, p.levi_data, p.element):
        print("invalid: element is not nilpotent", file=out)
        return EXIT_FAIL
    print("valid", file=out)
    return EXIT_OK


def _decide(path: str, err) -> tuple[ProblemInstance, Verdict] | None:
    p = _load(path, err)
    if p is None:
        return None
    try:
        return p, decide(p.algebra, p.levi_data, p.element)
    except InvalidInstanceError as exc:
        print(f"error: invalid input: {exc}", file=err)
        return None


def cmd_decide(args, out, err) -> int:
    result = _decide(args.path, err)
    if result is None:
        return EXIT_INVALID
    p, verdict = result
    print(verdict.kind.value, file=out)
    if args.trace:
        if args.format == "json":
            out.write(dumps(trace_to_dict(p, verdict)))
        else:
            print("\n".join(narrate(p, verdict)), file=out)
    if args.cert:
        Path(args.cert).write_text(dumps(certificate_to_dict(verdict.certificate)), encoding="utf-8")
    return EXIT_OK


def cmd_verify(args, out, err) -> int:
    p = _load(args.problem, err)
    if p is None:
        return EXIT_INVALID
    try:
        cert = load_certificate(args.cert)
    except DocumentError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INVALID
    check = verify(p.algebra, p.levi_data, p.element, cert)
    print(("PASS: " if check else "FAIL: ") + check.diagnostic, file=out)
    return EXIT_OK if check else EXIT_FAIL


def cmd_explain(args, out, err) -> int:
    result = _decide(args.path, err)
    if result is None:
        return EXIT_INVALID
    p, verdict = result
    if args.format == "json":
        out.write(dumps(trace_to_dict(p, verdict)))
    else:
        print("\n".join(narrate(p, verdict)), file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homaffine",
        description="Decide affinity of G/H for a one-dimensional unipotent subgroup H.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a problem file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("decide", help="print AFFINE or NOT_AFFINE")
    p.add_argument("path")
    p.add_argument("--trace", action="store_true", help="emit the decision trace after the verdict")
    p.add_argument("--cert", metavar="PATH", help="write the certificate to PATH")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("verify", help="check a certificate (or trace) against a problem")
    p.add_argument("problem")
    p.add_argument("cert")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("explain", help="per-level account of the decision")
    p.add_argument("path")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_explain)
    return parser


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    return args.func(args, out, err)


if __name__ == "__main__":
    sys.exit(main())
