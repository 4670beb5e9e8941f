"""Command line entry point.

Exit codes: 0 certified or verified, 1 not certified or a failed check,
2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .certify import algebra_from_arg, canonical_json, certify_diagonal, certify_pair, verify_bn_suite
from .exact import DimensionError
from .liealg.chevalley import ChevalleyError
from .liealg.roots import RootSystemError
from .pairs import DescriptorError, load_descriptor
from .strata import StrataError
from .weyl import WeylDimensionError, WeylParseError, fourier, parse, to_text

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{Path(path).name}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_report(args) -> int:
    arg = args.algebra
    if arg.endswith(".json"):
        arg = _load_json(arg)
        if not (isinstance(arg, list) and all(isinstance(r, list) for r in arg)):
            raise InputError("matrix file must hold a JSON integer matrix")
    nil = _load_json(args.nilpotent_data) if args.nilpotent_data else None
    try:
        alg = algebra_from_arg(arg)
    except (KeyError, ValueError) as exc:
        raise InputError(f"cannot read algebra {args.algebra!r}: {exc}") from None
    rep = certify_diagonal(args.algebra if isinstance(arg, str) else alg, nil)
    _emit(rep.dumps(), args.out)
    return EXIT_OK if rep.certified else EXIT_FAIL


def cmd_pair_report(args) -> int:
    pair = load_descriptor(_load_json(args.descriptor))
    rep = certify_pair(pair)
    _emit(rep.dumps(), args.out)
    return EXIT_OK if rep.certified else EXIT_FAIL


def cmd_verify_bn(args) -> int:
    if min(args.max_d, args.max_weight, args.max_n) < 1:
        raise InputError("bounds must be positive")
    summary = verify_bn_suite(args.max_d, args.max_weight, args.max_n)
    _emit(canonical_json(summary.to_json()), args.out)
    return EXIT_OK if summary.ok else EXIT_FAIL


def cmd_fourier(args) -> int:
    p = parse(args.expr, args.dim)
    sys.stdout.write(to_text(fourier(p)) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tamecert", description="Exact tameness certificates.")
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("report", help="certificate report for a semisimple algebra")
    r.add_argument("--algebra", required=True, help="type string such as A3 or a JSON Cartan matrix file")
    r.add_argument("--nilpotent-data", help="JSON orbit data for factors not of type A")
    r.add_argument("--out")
    r.set_defaults(func=cmd_report)
    p = sub.add_parser("pair-report", help="certificate report for a symmetric pair descriptor")
    p.add_argument("--descriptor", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_pair_report)
    v = sub.add_parser("verify-bn", help="re-expand membership certificates")
    v.add_argument("--max-d", type=int, default=3)
    v.add_argument("--max-weight", type=int, default=3)
    v.add_argument("--max-n", type=int, default=5)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify_bn)
    f = sub.add_parser("fourier", help="print the Fourier transform of an operator")
    f.add_argument("--expr", required=True)
    f.add_argument("--dim", type=int, required=True)
    f.set_defaults(func=cmd_fourier)
    return ap


INPUT_ERRORS = (InputError, DescriptorError, RootSystemError, StrataError, WeylParseError, WeylDimensionError,
                DimensionError)


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except ChevalleyError as exc:
        sys.stderr.write(f"internal check failed: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
