"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 precision error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import serialize
from .logstalk import comp_k, interpolation_check
from .measures import DEFAULT_DENSE_CAP, FiniteMeasure, Measure, measure_at_level
from .moments import amice, laplace, mom_hat, mom_k
from .padic import PrecisionExhausted, check_prime
from .serialize import MalformedInput
from .towers import StabilizedAt, Undetermined, ZeroAt, ml_report, tower_from_json
from .verify import SUITES, report, run_suites

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_PRECISION = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _read_json(path: str | None):
    try:
        if path in (None, "-"):
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        return json.loads(text)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def _write(args, obj):
    text = serialize.dumps(obj)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_measure(args, check_r: bool = True) -> FiniteMeasure:
    mu = serialize.measure_from_json(_read_json(args.infile))
    if len(mu.support()) > args.dense_cap:
        raise InputError(f"measure has {len(mu.support())} entries, above the cap {args.dense_cap}")
    for flag, value in (("p", mu.p), ("r", mu.r if check_r else None), ("d", mu.d)):
        given = getattr(args, flag, None)
        if given is not None and value is not None and given != value:
            raise InputError(f"--{flag} {given} does not match the measure file ({value})")
    return mu


def cmd_moments(args):
    mu = _load_measure(args)
    if args.degree is not None:
        return serialize.gamma_to_json(mom_k(mu, args.degree)) | {"p": mu.p, "r": mu.r, "d": mu.d}
    K = 0 if args.cutoff is None else args.cutoff
    return serialize.gamma_series_to_json(mom_hat(mu, K))


def cmd_amice(args):
    mu = _load_measure(args, check_r=False)
    n_max = 0 if args.n_max is None else args.n_max
    return serialize.series_to_json(amice(Measure(mu), n_max, args.r))


def cmd_laplace(args):
    mu = _load_measure(args)
    K = 0 if args.cutoff is None else args.cutoff
    return {"p": mu.p, "r": mu.r, "coeffs": [c.value for c in laplace(mu, K)]}


def cmd_trace(args):
    mu = _load_measure(args, check_r=False)
    level = mu.r - 1 if args.level is None else args.level
    if level < 1:
        raise InputError("the target level must be >= 1")
    return serialize.measure_to_json(measure_at_level(Measure(mu), level))


def cmd_comp(args):
    mu = _load_measure(args)
    k = 0 if args.degree is None else args.degree
    return serialize.gamma_to_json(comp_k(mu, k)) | {"p": mu.p, "r": mu.r, "d": mu.d}


def cmd_interpolate(args):
    mu = _load_measure(args)
    if args.N is None or args.N < 1:
        raise InputError("--N must be a positive integer")
    k = 0 if args.degree is None else args.degree
    w = interpolation_check(mu, args.N, k)
    args.exit_code = EXIT_OK if w.holds else EXIT_VERIFY
    return {"N": args.N, "k": k, "holds": w.holds, "lhs": serialize.gamma_to_json(w.lhs), "rhs": serialize.gamma_to_json(w.rhs)}


def cmd_ml(args):
    try:
        tower = tower_from_json(_read_json(args.infile))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed tower: {exc}") from exc
    base = 0 if args.r is None else args.r
    try:
        rep = ml_report(tower, base)
    except IndexError as exc:
        raise InputError(str(exc)) from exc
    v = rep.verdict
    if isinstance(v, ZeroAt):
        verdict = {"verdict": "ZeroAt", "s": v.s}
    elif isinstance(v, StabilizedAt):
        verdict = {"verdict": "StabilizedAt", "s": v.s}
    else:
        assert isinstance(v, Undetermined)
        verdict = {"verdict": "Undetermined", "window": v.window}
    return verdict | {
        "base": base,
        "stabilized_at": rep.stabilized_at,
        "zero_at": rep.zero_at,
        "images": [[list(row) for row in im] for im in rep.images],
    }


def cmd_verify(args):
    results = run_suites(args.seed, args.suite)
    rep = report(args.seed, results)
    args.exit_code = EXIT_OK if rep["passed"] else EXIT_VERIFY
    return rep


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="infile", metavar="PATH", help="input JSON (default: stdin)")
    common.add_argument("--out", metavar="PATH", help="output JSON (default: stdout)")
    common.add_argument("--p", type=int)
    common.add_argument("--r", type=int)
    common.add_argument("--d", type=int)
    common.add_argument("--degree", "-k", type=int)
    common.add_argument("--cutoff", "-K", type=int)
    common.add_argument("--n-max", type=int)
    common.add_argument("--N", type=int)
    common.add_argument("--dense-cap", type=int, default=DEFAULT_DENSE_CAP)

    parser = argparse.ArgumentParser(prog="iwasawa", description="Exact p-adic measures and moment maps.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("moments", parents=[common], help="moment map mom_0..mom_K (or mom_k with -k)").set_defaults(func=cmd_moments)
    sub.add_parser("amice", parents=[common], help="Amice transform; --r is the coefficient precision").set_defaults(func=cmd_amice)
    sub.add_parser("laplace", parents=[common], help="Laplace transform in the t^[n] basis").set_defaults(func=cmd_laplace)
    tr = sub.add_parser("trace", parents=[common], help="component of the measure at a lower level")
    tr.add_argument("--level", type=int)
    tr.set_defaults(func=cmd_trace)
    sub.add_parser("comp", parents=[common], help="comparison map into the log stalk").set_defaults(func=cmd_comp)
    sub.add_parser("interpolate", parents=[common], help="check mom_k([N]_* mu) = N^k mom_k(mu)").set_defaults(func=cmd_interpolate)
    sub.add_parser("ml", parents=[common], help="Mittag-Leffler diagnostics of a tower; --r is the base index").set_defaults(func=cmd_ml)
    ver = sub.add_parser("verify", parents=[common], help="run the seeded verification suites")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--suite", action="append", choices=sorted(SUITES))
    ver.set_defaults(func=cmd_verify)
    return parser


def _error(kind: str, message: str, **extra) -> None:
    sys.stderr.write(serialize.dumps({"error": kind, "message": message} | extra))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.exit_code = EXIT_OK
    try:
        if args.p is not None:
            check_prime(args.p)
        for name in ("degree", "cutoff", "n_max"):
            if (getattr(args, name) or 0) < 0:
                raise InputError(f"--{name.replace('_', '-')} must be nonnegative")
        out = args.func(args)
    except PrecisionExhausted as exc:
        _error("PrecisionExhausted", str(exc), needed=exc.needed, available=exc.available)
        return EXIT_PRECISION
    except (InputError, MalformedInput, ValueError) as exc:
        _error(type(exc).__name__, str(exc))
        return EXIT_INPUT
    _write(args, out)
    return args.exit_code


if __name__ == "__main__":
    sys.exit(main())
