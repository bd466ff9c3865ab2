"""Command-line front end: ``etaq <command> [options]``.

Reports go to stdout as newline-delimited JSON (or ``key=value`` text).
Exit status: 0 all verdicts hold, 1 some verification failed, 2 usage
error, 3 a resource cap was hit.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Iterable, Sequence

from .arith import is_prime
from .congruences import (
    IDENTITIES,
    verify_identity,
    verify_kz_b25_vanishing,
    verify_theorem_b3,
    verify_theorem_b21,
    verify_theorem_b25,
)
from .eta import Verdict, classify_sum, expand_sum, format_eta, parse_eta
from .hecke import ResourceCapError, annihilation_test, prime_search
from .partitions import OracleRangeError, ParityOracle
from .series import Ring

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

DEFAULT_CAPS = {"precision": 10**6, "oracle": 10**6}
SLOW_CAPS = {"precision": 2 * 10**7, "oracle": 10**7}

TARGETS = {
    "thm-b3": verify_theorem_b3,
    "thm-b25": verify_theorem_b25,
    "thm-b21": verify_theorem_b21,
    "kz-b25": verify_kz_b25_vanishing,
}


class UsageError(Exception):
    pass


def emit_report(report: Any, fmt: str = "json") -> str:
    """One line per report; field order is fixed by the report's ``to_dict``."""
    data = report.to_dict() if hasattr(report, "to_dict") else dict(report)
    if fmt == "json":
        return json.dumps(data)
    parts = []
    for k, v in data.items():
        if isinstance(v, list) and v and isinstance(v[0], list):
            v = ",".join(f"{a}:{b}" for a, b in v)
        elif isinstance(v, list):
            v = "[" + ",".join(str(x) for x in v) + "]"
        parts.append(f"{k}={v}")
    return " ".join(parts)


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--slow", action="store_true", help="raise size caps for large-prime runs")
    common.add_argument("--max-precision", type=_positive_int, default=None)
    common.add_argument("--max-oracle-n", type=_positive_int, default=None)

    parser = argparse.ArgumentParser(prog="etaq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="q-expansion of an eta-quotient (sum)")
    p.add_argument("--spec", required=True)
    p.add_argument("--terms", type=_positive_int, default=50)
    p.add_argument("--ring", choices=("int", "gf2"), default="int")

    p = sub.add_parser("eta-check", parents=[common], help="weight, character, cusp orders, verdict")
    p.add_argument("--spec", required=True)

    p = sub.add_parser("hecke", parents=[common], help="Sturm-certified T_p annihilation mod 2")
    p.add_argument("--spec", required=True)
    p.add_argument("--prime", type=int, required=True)

    p = sub.add_parser("search", parents=[common], help="annihilation test over a residue class of primes")
    p.add_argument("--spec", required=True)
    p.add_argument("--residue", type=int, default=-1)
    p.add_argument("--modulus", type=_positive_int, required=True)
    p.add_argument("--pmax", type=_positive_int, required=True)
    p.add_argument("--workers", type=_positive_int, default=1)

    p = sub.add_parser("verify", parents=[common], help="check a self-similarity theorem on a range")
    p.add_argument("--target", choices=sorted(TARGETS), required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--nmax", type=_nonneg_int, default=500)
    p.add_argument("--literal", action="store_true", help="thm-b21 only: check the literal n+1 form")

    p = sub.add_parser("identities", parents=[common], help="check the named mod-2 identities")
    p.add_argument("--name", action="append", choices=IDENTITIES, help="repeatable; default all")
    p.add_argument("--terms", type=_positive_int, default=10**4)
    return parser


def _caps(args: argparse.Namespace) -> tuple[int, int]:
    base = SLOW_CAPS if args.slow else DEFAULT_CAPS
    prec = args.max_precision or int(os.environ.get("ETAQ_MAX_PRECISION", 0) or base["precision"])
    orc = args.max_oracle_n or int(os.environ.get("ETAQ_MAX_ORACLE_N", 0) or base["oracle"])
    if args.slow:
        prec, orc = max(prec, base["precision"]), max(orc, base["oracle"])
    return prec, orc


def _spec(text: str):
    try:
        return parse_eta(text)
    except ValueError as exc:
        raise UsageError(f"bad --spec: {exc}") from None


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise UsageError(f"--prime {p} is not prime")


def _dispatch(args: argparse.Namespace, prec_cap: int, oracle: ParityOracle) -> tuple[list, bool]:
    cmd = args.command
    if cmd == "expand":
        eqs = _spec(args.spec)
        if args.terms > prec_cap:
            raise ResourceCapError(f"{args.terms} terms exceeds precision cap {prec_cap}")
        try:
            s = expand_sum(eqs, args.terms, Ring(args.ring))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        rec = {
            "spec": " + ".join(format_eta(e) for e in eqs),
            "ring": args.ring,
            "precision": s.precision,
            "valuation": s.valuation,
            "coeffs": s.coeffs,
        }
        return [rec], True
    if cmd == "eta-check":
        eqs = _spec(args.spec)
        cls = classify_sum(eqs)
        rec = {"spec": " + ".join(format_eta(e) for e in eqs), **cls.to_dict()}
        return [rec], cls.verdict in (Verdict.CUSP_FORM, Verdict.MODULAR_FORM)
    if cmd == "hecke":
        eqs = _spec(args.spec)
        _require_prime(args.prime)
        try:
            rep = annihilation_test(eqs, args.prime, prec_cap)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return [rep], bool(rep.annihilated_mod2)
    if cmd == "search":
        eqs = _spec(args.spec)
        cls = classify_sum(eqs)
        if cls.verdict is not Verdict.CUSP_FORM:
            raise UsageError(f"spec is not a cusp form ({cls.verdict.value})")
        reps = prime_search(eqs, args.residue, args.modulus, args.pmax, prec_cap, args.workers)
        return reps, True
    if cmd == "verify":
        _require_prime(args.prime)
        fn = TARGETS[args.target]
        kwargs = {"oracle": oracle}
        if args.literal:
            if args.target != "thm-b21":
                raise UsageError("--literal only applies to thm-b21")
            kwargs["literal"] = True
        try:
            rep = fn(args.prime, args.nmax, **kwargs)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return [rep], rep.holds
    if cmd == "identities":
        names = args.name or list(IDENTITIES)
        try:
            reps = [verify_identity(n, args.terms, oracle) for n in names]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return reps, all(r.holds for r in reps)
    raise UsageError(f"unknown command {cmd!r}")  # pragma: no cover


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    prec_cap, oracle_cap = _caps(args)
    oracle = ParityOracle(max_n=oracle_cap)
    try:
        reports, ok = _dispatch(args, prec_cap, oracle)
    except UsageError as exc:
        print(f"etaq {args.command}: error: {exc}", file=err)
        return EXIT_USAGE
    except (ResourceCapError, OracleRangeError) as exc:
        print(f"etaq {args.command}: resource cap: {exc}", file=err)
        return EXIT_CAP
    _write(out, reports, args.format)
    return EXIT_OK if ok else EXIT_FAIL


def _write(out, reports: Iterable[Any], fmt: str) -> None:
    for rep in reports:
        out.write(emit_report(rep, fmt) + "\n")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
