"""Command-line interface.

Exit codes: 0 success, 1 certificate failed re-verification, 2 unparsable
input, 3 precondition violated, 4 sampling budget exhausted, 5 a gallery
check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from typing import List, Optional

from .closure import bracket_closure_audit, generated_subalgebra
from .construct import (
    DEFAULT_BUDGET,
    OutsideHypothesesWarning,
    consistent_set,
    nilpotent_partner,
    split_diagonal,
    verify_consistent,
)
from .errors import BudgetExhausted, NilgenError, NoConsistentSet
from .field import Q, FieldSpec
from .gallery import example1_pair, example2_pair, f2_counterexample, lambda12_check, lambda_subalgebra
from .matrix import Matrix, is_nilpotent, rank

EXIT_OK = 0
EXIT_UNVERIFIED = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_BUDGET = 4
EXIT_GALLERY = 5


class CliError(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _field_arg(tag: str) -> FieldSpec:
    try:
        return FieldSpec.from_tag(tag)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _budget_arg(s: str) -> int:
    b = int(s)
    if b < 1:
        raise argparse.ArgumentTypeError("budget must be >= 1")
    return b


def read_matrix(path: str, field: Optional[FieldSpec] = None) -> Matrix:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path) as fh:
                text = fh.read()
        m = Matrix.from_json(json.loads(text))
    except (OSError, ValueError, NilgenError) as exc:
        raise CliError(EXIT_PARSE, f"cannot read matrix from {path}: {exc}")
    if field is not None and m.field != field:
        raise CliError(EXIT_PRECONDITION, f"{path} is over {m.field}, --field says {field}")
    return m


def emit(args, obj: dict, text: str):
    if args.format == "json":
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _matrix_text(m: Matrix) -> str:
    fmt = m.field.format
    cells = [[fmt(x) for x in r] for r in m.rows]
    width = max(len(c) for r in cells for c in r)
    return "\n".join("  [" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)


# -- commands ------------------------------------------------------------------


def cmd_partner(args) -> int:
    x = read_matrix(args.matrix, args.field)
    if x.is_zero() or not is_nilpotent(x):
        raise CliError(EXIT_PRECONDITION, "nonzero nilpotent required")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", OutsideHypothesesWarning)
        cert = nilpotent_partner(x, seed=args.seed, budget=args.budget, audit=args.audit)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    ok = cert.verified and cert.recheck(audit=args.audit)
    text = "\n".join([
        f"closure dim: {cert.closure_dim} / {cert.expected_dim}",
        f"x nilpotent: {cert.x_nilpotent}",
        f"y nilpotent: {cert.y_nilpotent}",
        f"audit: {cert.audit}",
        f"verified: {ok}",
        "y =",
        _matrix_text(cert.y),
    ])
    emit(args, cert.to_json(), text)
    return EXIT_OK if ok else EXIT_UNVERIFIED


def cmd_verify(args) -> int:
    x = read_matrix(args.x, args.field)
    y = read_matrix(args.y, args.field)
    if x.field != y.field or x.n != y.n:
        raise CliError(EXIT_PRECONDITION, "matrices differ in field or dimension")
    if x.trace() or y.trace():
        raise CliError(EXIT_PRECONDITION, "generators of sl_n must be traceless")
    cb = generated_subalgebra([x, y])
    audit = bracket_closure_audit(cb) if args.audit else None
    out = {
        "n": x.n,
        "field": x.field.tag,
        "closure_dim": cb.dim,
        "expected_dim": x.n ** 2 - 1,
        "generates": cb.is_full,
        "x_nilpotent": is_nilpotent(x),
        "y_nilpotent": is_nilpotent(y),
        "audit": audit,
    }
    emit(args, out, "\n".join(f"{k}: {v}" for k, v in out.items()))
    return EXIT_OK if audit is not False else EXIT_UNVERIFIED


def cmd_closure(args) -> int:
    gens = [read_matrix(p, args.field) for p in args.matrices]
    for g in gens[1:]:
        if g.field != gens[0].field or g.n != gens[0].n:
            raise CliError(EXIT_PRECONDITION, "matrices differ in field or dimension")
    cb = generated_subalgebra(gens)
    audit = bracket_closure_audit(cb) if args.audit else None
    out = {
        "n": cb.n,
        "field": cb.field.tag,
        "dim": cb.dim,
        "full_sl_n": cb.is_full,
        "audit": audit,
        "basis": [b.to_json() for b in cb.basis],
    }
    text = f"dim: {cb.dim} / {cb.n ** 2 - 1}\nfull sl_n: {cb.is_full}\naudit: {audit}"
    emit(args, out, text)
    return EXIT_OK if audit is not False else EXIT_UNVERIFIED


def cmd_consistent(args) -> int:
    field = args.field or Q
    s = consistent_set(args.n, field, seed=args.seed)
    values = [field.format(v) for v in s.values]
    out = {"n": args.n, "field": field.tag, "values": values, "consistent": verify_consistent(s)}
    emit(args, out, " ".join(values))
    return EXIT_OK


def cmd_split(args) -> int:
    c = read_matrix(args.matrix, args.field)
    a, b = split_diagonal(c)
    checks = {
        "sum_ok": a + b == c,
        "a_nilpotent": is_nilpotent(a),
        "a_rank": rank(a),
        "a_all_nonzero": a.nonzero_count() == c.n * c.n,
        "b_nilpotent": is_nilpotent(b),
    }
    out = {"a": a.to_json(), "b": b.to_json(), **checks}
    text = "a =\n" + _matrix_text(a) + "\nb =\n" + _matrix_text(b) + "\n" + "\n".join(
        f"{k}: {v}" for k, v in checks.items())
    emit(args, out, text)
    return EXIT_OK


def cmd_examples(args) -> int:
    field = args.field or Q
    name = args.name
    if name == "example1":
        alphas = args.alphas.split(",") if args.alphas else None
        report = example1_pair(args.n or 3, alphas, field, seed=args.seed, audit=args.audit)
    elif name == "example2":
        report = example2_pair(args.n or 3, field, audit=args.audit)
    elif name == "lambda":
        report = lambda_subalgebra(args.n or 4, field, audit=args.audit)
    else:
        report = lambda12_check()
    emit(args, report.to_json(), report.to_text())
    return EXIT_OK if report.ok else EXIT_GALLERY


def cmd_f2check(args) -> int:
    report = f2_counterexample()
    emit(args, report.to_json(), report.to_text())
    return EXIT_OK if report.ok else EXIT_GALLERY


# -- wiring ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field_arg, default=None,
                        help="q (default) or fp:<p>; must match matrix files")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=_budget_arg, default=DEFAULT_BUDGET)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--audit", action="store_true",
                        help="also check every pairwise bracket of the closure basis")

    parser = argparse.ArgumentParser(prog="nilgen",
                                     description="Nilpotent generating pairs for sl_n, with certificates.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partner", parents=[common], help="nilpotent partner for a nilpotent matrix")
    p.add_argument("matrix", help="matrix JSON file, or - for stdin")
    p.set_defaults(func=cmd_partner)

    p = sub.add_parser("verify", parents=[common], help="do two matrices generate sl_n?")
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("closure", parents=[common], help="basis of the generated subalgebra")
    p.add_argument("matrices", nargs="+")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("consistent", parents=[common], help="a consistent set of size n")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_consistent)

    p = sub.add_parser("split", parents=[common], help="split a diagonal matrix into nilpotents")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("examples", parents=[common], help="run a worked example")
    p.add_argument("name", choices=["example1", "example2", "lambda", "lambda12"])
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--alphas", help="comma-separated scalars for example1")
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser("f2check", parents=[common], help="exhaustive sl_3(F_2) counterexample")
    p.set_defaults(func=cmd_f2check)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except BudgetExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except NoConsistentSet as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (NilgenError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
