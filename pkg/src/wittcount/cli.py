"""Command-line verification harness.

Subcommands: ``verify-all`` runs the whole check grid and exits 0 only if
every record passes; ``count`` evaluates the closed-form counts (optionally
against the enumeration oracles); ``normalize`` brings a generator vector
to normal form; ``witt-eval``, ``carlitz`` and ``infinity`` expose the
corresponding calculators.

Every flag is mirrored by an environment variable with the ``WITTCOUNT_``
prefix (e.g. ``WITTCOUNT_CAP``).  Exit codes: 0 all passed, 1 some check
failed, 2 usage error, 3 a requested oracle was infeasible under the cap.

The json-lines output is byte-deterministic for a fixed config and seed;
the ``millis`` field is 0 unless ``--timing`` is given (wall-clock values
would break byte-for-byte diffing of CI artifacts).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .asw import AswGenerator, conductor_exponent, infinity_behavior, is_single_ramified_form, witt_normalize
from .carlitz import carlitz_eval, carlitz_poly
from .checks import ALL_CHECK_GROUPS, CheckConfig
from .counting import (
    CountParams,
    NotStabilizedError,
    VerificationReport,
    oracle_asw_classes,
    oracle_cyclic_subgroups,
    s_n,
    t1,
    v_n,
    w,
)
from .fields import field
from .polys import CapExceededError, DEFAULT_ENUM_CAP, parse_poly
from .witt import MAX_WITT_LENGTH, parse_witt
from .counting import DEFAULT_SATURATION_ROUNDS

ENV_PREFIX = "WITTCOUNT_"

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3


def _env(name: str, fallback):
    raw = os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"))
    if raw is None:
        return fallback
    if isinstance(fallback, bool):
        return raw.lower() in ("1", "true", "yes", "on")
    if isinstance(fallback, int):
        return int(raw)
    return raw


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--p", type=int, default=_env("p", 2), help="characteristic")
    parser.add_argument("--s", type=int, default=_env("s", 1), help="extension degree, q = p^s")
    parser.add_argument("--d", type=int, default=_env("d", 1), help="degree of the prime P")
    parser.add_argument("--alpha", type=int, default=_env("alpha", 3),
                        help="conductor bound exponent")
    parser.add_argument("--n", type=int, default=_env("n", 1), help="extension log-degree")
    parser.add_argument("--prime", type=str, default=_env("prime", None),
                        help="override the canonical prime P (polynomial text)")
    parser.add_argument("--cap", type=int, default=_env("cap", DEFAULT_ENUM_CAP),
                        help="enumeration cap (ring elements)")
    parser.add_argument("--witt-max", type=int, default=_env("witt_max", MAX_WITT_LENGTH),
                        help="maximum Witt vector length")
    parser.add_argument("--saturation-rounds", type=int,
                        default=_env("saturation_rounds", DEFAULT_SATURATION_ROUNDS),
                        help="maximum saturation rounds for the class oracle")
    parser.add_argument("--format", choices=("table", "jsonl"),
                        default=_env("format", "table"), help="report format")
    parser.add_argument("--seed", type=int, default=_env("seed", 0),
                        help="seed for sampled property checks")
    parser.add_argument("--timing", action="store_true", default=_env("timing", False),
                        help="include wall-clock millis in records (breaks byte determinism)")


def _record_to_json(rec: VerificationReport) -> str:
    payload = {
        "check_id": rec.check_id,
        "params": rec.params,
        "formula": _jsonable(rec.formula_value),
        "oracle": _jsonable(rec.oracle_value),
        "status": rec.status,
        "millis": rec.wall_time_ms,
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _jsonable(value):
    if value is None or isinstance(value, (int, str, bool)):
        return value
    return str(value)


def _emit(records, fmt: str, out=None):
    out = out or sys.stdout
    records = sorted(records, key=lambda r: r.check_id)
    if fmt == "jsonl":
        for rec in records:
            print(_record_to_json(rec), file=out)
        return
    width = max((len(r.check_id) for r in records), default=10) + 2
    print(f"{'check':<{width}}{'formula':>14}{'oracle':>14}  {'status':<8}{'millis':>8}", file=out)
    for rec in records:
        formula = "-" if rec.formula_value is None else str(rec.formula_value)
        oracle = "-" if rec.oracle_value is None else str(rec.oracle_value)
        print(f"{rec.check_id:<{width}}{formula:>14}{oracle:>14}  {rec.status:<8}"
              f"{rec.wall_time_ms:>8}", file=out)
        for name, flag in rec.identity_checks:
            if not flag:
                print(f"{'':<{width}}  !! {name}", file=out)


def _exit_code(records) -> int:
    return EXIT_FAIL if any(r.status == "fail" for r in records) else EXIT_PASS


def cmd_verify_all(args) -> int:
    cfg = CheckConfig(cap=args.cap, witt_max=args.witt_max,
                      saturation_rounds=args.saturation_rounds,
                      seed=args.seed, timing=args.timing)
    records = []
    for name, group in ALL_CHECK_GROUPS:
        if args.only and not any(name == prefix or name.startswith(prefix + "-")
                                 for prefix in args.only):
            continue
        records.extend(group(cfg))
    _emit(records, args.format)
    return _exit_code(records)


def _params_from_args(args) -> CountParams:
    return CountParams(p=args.p, s=args.s, d=args.d, alpha=args.alpha, n=args.n)


def _prime_from_args(args, fld):
    if args.prime is None:
        return None
    return parse_poly(fld, args.prime)


def cmd_count(args) -> int:
    par = _params_from_args(args)
    fld = field(par.p, par.s)
    prime = _prime_from_args(args, fld)
    records = [
        VerificationReport("count/v_n", par.as_dict(), v_n(par)),
        VerificationReport("count/w", par.as_dict(), w(par.alpha, par)),
        VerificationReport("count/t1", par.as_dict(), t1(par.alpha, par)),
        VerificationReport("count/s_n", par.as_dict(), s_n(par)),
    ]
    if args.oracle:
        try:
            records.append(VerificationReport.compare(
                "count/oracle-cyclic", par.as_dict(), v_n(par),
                oracle_cyclic_subgroups(par, prime=prime, cap=args.cap)))
            if par.n <= 3:
                records.append(VerificationReport.compare(
                    "count/oracle-classes", par.as_dict(), v_n(par),
                    oracle_asw_classes(par, prime=prime, cap=args.cap,
                                       max_rounds=args.saturation_rounds)))
        except (CapExceededError, NotStabilizedError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INFEASIBLE
    _emit(records, args.format)
    return _exit_code(records)


def cmd_normalize(args) -> int:
    fld = field(args.p, args.s)
    try:
        beta = parse_witt(fld, args.p, args.beta)
    except ValueError as exc:
        print(f"error: cannot parse Witt vector: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if beta.n > args.witt_max:
        print(f"error: Witt length {beta.n} exceeds bound {args.witt_max}", file=sys.stderr)
        return EXIT_USAGE
    nf = witt_normalize(AswGenerator(beta), bound=args.witt_max)
    record = nf.to_record()
    conductors = {}
    for block in nf.primes:
        lams = block.lambdas()
        if lams[0] > 0:
            m_n = conductor_exponent(lams, args.p)
            conductors[str(block.prime)] = {"M_n": m_n, "conductor_exponent": m_n + 1}
        else:
            conductors[str(block.prime)] = {"note": "not ramified from level 1"}
    record["conductors"] = conductors if conductors else "unramified at every finite prime"
    prime = _prime_from_args(args, fld)
    if prime is None and len(nf.primes) == 1:
        prime = nf.primes[0].prime
    if prime is not None:
        record["single_ramified"] = {"prime": str(prime), "verdict": is_single_ramified_form(nf, prime)}
    b = infinity_behavior(nf)
    record["infinity"] = {"e": b.e, "f": b.f, "g": b.g, "label": b.label}
    print(json.dumps(record, sort_keys=True, indent=2))
    return EXIT_PASS


def cmd_witt_eval(args) -> int:
    fld = field(args.p, args.s)
    try:
        x = parse_witt(fld, args.p, args.x)
        y = parse_witt(fld, args.p, args.y) if args.y else None
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if x.n > args.witt_max:
        print(f"error: Witt length {x.n} exceeds bound {args.witt_max}", file=sys.stderr)
        return EXIT_USAGE
    op = args.op
    try:
        if op in ("add", "sub", "mul"):
            if y is None:
                print("error: --y required for binary operations", file=sys.stderr)
                return EXIT_USAGE
            result = getattr(x, op)(y)
        elif op == "neg":
            result = x.neg()
        elif op == "frobenius":
            result = x.frobenius()
        elif op == "wp":
            result = x.wp()
        elif op == "int-mul":
            result = x.int_mul(args.m)
        else:
            raise AssertionError(op)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(str(result))
    return EXIT_PASS


def cmd_carlitz(args) -> int:
    fld = field(args.p, args.s)
    try:
        m = parse_poly(fld, args.poly)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cp = carlitz_poly(m)
    payload = {"M": str(m), "coeffs": cp.serialize(), "u_degree": cp.u_degree()}
    if args.eval_at is not None:
        x = parse_poly(fld, args.eval_at)
        payload["value"] = str(carlitz_eval(m, x))
    print(json.dumps(payload, sort_keys=True, indent=2))
    return EXIT_PASS


def cmd_infinity(args) -> int:
    fld = field(args.p, args.s)
    try:
        beta = parse_witt(fld, args.p, args.beta)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    nf = witt_normalize(AswGenerator(beta), bound=args.witt_max)
    b = infinity_behavior(nf)
    print(json.dumps({"s": b.s, "t": b.t, "e": b.e, "f": b.f, "g": b.g, "label": b.label},
                     sort_keys=True))
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wittcount",
        description="Exact verification of cyclic p-power extension counts over F_q(T)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify-all", help="run the full verification grid")
    _add_common(p_verify)
    p_verify.add_argument("--only", action="append", default=[],
                          help="restrict to check groups with this name prefix (repeatable)")
    p_verify.set_defaults(func=cmd_verify_all)

    p_count = sub.add_parser("count", help="closed-form counts, optionally vs oracles")
    _add_common(p_count)
    p_count.add_argument("--oracle", action="store_true", help="also run enumeration oracles")
    p_count.set_defaults(func=cmd_count)

    p_norm = sub.add_parser("normalize", help="normalize a generator Witt vector")
    _add_common(p_norm)
    p_norm.add_argument("--beta", required=True, help='vector text, e.g. "(1/T^2, 0)"')
    p_norm.set_defaults(func=cmd_normalize)

    p_we = sub.add_parser("witt-eval", help="evaluate Witt vector operations")
    _add_common(p_we)
    p_we.add_argument("--op", required=True,
                      choices=("add", "sub", "mul", "neg", "frobenius", "wp", "int-mul"))
    p_we.add_argument("--x", required=True, help="first operand vector text")
    p_we.add_argument("--y", help="second operand vector text")
    p_we.add_argument("--m", type=int, default=1, help="integer multiplier for int-mul")
    p_we.set_defaults(func=cmd_witt_eval)

    p_car = sub.add_parser("carlitz", help="Carlitz-module polynomial of M")
    _add_common(p_car)
    p_car.add_argument("--poly", required=True, help="the acting polynomial M")
    p_car.add_argument("--eval-at", help="optional evaluation point (polynomial text)")
    p_car.set_defaults(func=cmd_carlitz)

    p_inf = sub.add_parser("infinity", help="splitting type of the infinite place")
    _add_common(p_inf)
    p_inf.add_argument("--beta", required=True, help="generator vector text")
    p_inf.set_defaults(func=cmd_infinity)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
