"""Command-line surface: reproducible runs over all modules.

Every subcommand is a pure function of its flags plus the seed; outputs
are JSON or CSV artifacts.  Exit codes: 0 success, 1 computation error
(dead window, undecidable root, precision cap), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import chain as chain_mod
from . import evaluator, gaps, pisot, residues
from .chain import ChainExhaustedError, DeadWindowError, ExponentSeq, PrimeChain
from .intervals import PrecisionCapError, sci_str
from .primality import CertaintyPolicy
from .pisot import MonicIntPoly, ReduciblePolynomialError, UndecidableError


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    rounds: int = 5
    precision_cap: int | None = None
    threads: int | None = None

    @property
    def policy(self) -> CertaintyPolicy:
        return CertaintyPolicy(extra_rounds=self.rounds, seed=self.seed)


def _fraction(text: str) -> Fraction:
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected p/q or integer, got {text!r}") from exc


def _int_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def _open_out(path: str):
    return sys.stdout if path == "-" else open(path, "w", newline="")


def _close_out(handle):
    if handle is not sys.stdout:
        handle.close()


def _add_chain_source(sub):
    sub.add_argument("--chain", help="chain JSON file produced by build-chain")
    sub.add_argument("--c", type=int, help="constant exponent")
    sub.add_argument("--explicit", type=_int_list, help="comma-separated exponents")
    sub.add_argument("--periodic", type=_int_list, help="comma-separated repeating pattern")
    sub.add_argument("--depth", type=int, help="chain length when building")
    sub.add_argument("--start", type=int, help="first prime candidate (default 2)")


def _exponents_from_args(args) -> ExponentSeq:
    picked = [v for v in (args.c, args.explicit, args.periodic) if v is not None]
    if len(picked) != 1:
        raise argparse.ArgumentTypeError("specify exactly one of --c/--explicit/--periodic")
    if args.c is not None:
        return ExponentSeq.constant(args.c)
    if args.explicit is not None:
        return ExponentSeq.explicit(args.explicit)
    return ExponentSeq.periodic(args.periodic)


def _chain_from_args(args, config: RunConfig) -> PrimeChain:
    if args.chain:
        with open(args.chain) as fh:
            return PrimeChain.from_json(fh.read())
    if args.depth is None:
        raise argparse.ArgumentTypeError("need --depth when building a chain")
    exps = _exponents_from_args(args)
    return chain_mod.build_min_chain(exps, args.depth, start=args.start, policy=config.policy)


def _poly_from_coeffs(values: list[int]) -> MonicIntPoly:
    if len(values) == 2:
        return MonicIntPoly(2, values[0], values[1])
    if len(values) == 3:
        return MonicIntPoly(3, values[0], values[1], values[2])
    raise argparse.ArgumentTypeError("--coeffs takes a,b (quadratic) or a,b,c (cubic)")


# -- subcommand bodies -------------------------------------------------------


def _cmd_build_chain(args, config):
    built = _chain_from_args(args, config)
    out = _open_out(args.out)
    out.write(built.to_json() + "\n")
    _close_out(out)
    return 0


def _cmd_verify(args, config):
    built = _chain_from_args(args, config)
    report = chain_mod.verify_chain(built)
    payload = {
        "depth": built.depth,
        "certainty": built.certainty,
        "key1_pass": report.key1_pass_count,
        "key2_pass": report.key2_pass_count,
        "steps": [
            {
                "k": s.k,
                "key1_ok": s.key1_ok,
                "key2_ok": s.key2_ok,
                "window": [str(s.window[0]), str(s.window[1])],
                "chosen": str(s.chosen),
            }
            for s in report.steps
        ],
    }
    out = _open_out(args.out)
    json.dump(payload, out, indent=2)
    out.write("\n")
    _close_out(out)
    return 0 if report.key1_all_ok else 1


def _cmd_digits(args, config):
    built = _chain_from_args(args, config)
    result = evaluator.certified_digits(built, digits=args.digits)
    print(result.digits)
    sidecar = {
        "digits": result.digits,
        "depth": result.depth,
        "precision_bits": result.precision_bits,
        "conditional": result.conditional,
    }
    if args.sidecar:
        with open(args.sidecar, "w") as fh:
            json.dump(sidecar, fh, indent=2)
            fh.write("\n")
    return 0


def _cmd_nearness(args, config):
    built = _chain_from_args(args, config)
    rows = evaluator.nearness_table(built)
    out = _open_out(args.out)
    writer = csv.writer(out)
    writer.writerow(["k", "C_k", "dist_lo", "dist_hi", "bound_simple", "bound_gamma"])
    for rec in rows:
        writer.writerow(
            [
                rec.k,
                rec.C_k,
                sci_str(rec.distance.lo, 17, "down"),
                sci_str(rec.distance.hi, 17, "up"),
                sci_str(rec.bound_simple.lo, 17, "down"),
                sci_str(rec.bound_gamma.lo, 17, "down"),
            ]
        )
    _close_out(out)
    return 0


def _cmd_mahler(args, config):
    rows = evaluator.mahler_table(args.num, args.den, args.n_max, args.eps)
    out = _open_out(args.out)
    writer = csv.writer(out)
    writer.writerow(["n", "distance", "bound_lo", "bound_hi", "holds"])
    for r in rows:
        writer.writerow(
            [
                r.n,
                f"{r.distance.numerator}/{r.distance.denominator}",
                sci_str(r.bound.lo, 17, "down"),
                sci_str(r.bound.hi, 17, "up"),
                int(r.holds),
            ]
        )
    _close_out(out)
    return 0


def _cmd_residues(args, config):
    built = _chain_from_args(args, config)
    report = residues.residue_report(built, modulus=args.modulus)
    witnesses = set(report.witness_pairs)
    out = _open_out(args.out)
    writer = csv.writer(out)
    writer.writerow(["k", "p_k", "residue", "witness"])
    for k, (p, r) in enumerate(zip(built.primes, report.residues), start=1):
        writer.writerow([k, str(p), r, int(k in witnesses)])
    _close_out(out)
    return 0


def _cmd_degree_bound(args, config):
    res = pisot.degree_bound(args.b)
    degs = ",".join(str(d) for d in sorted(res.allowed_degrees)) or "none"
    print(f"theta_b={res.theta_b} bound={res.bound} degrees={degs}")
    return 0


def _cmd_pisot_check(args, config):
    poly = _poly_from_coeffs(args.coeffs)
    verdict = pisot.is_pisot(poly)
    cs = verdict.conjugates
    payload = {
        "poly": str(poly),
        "pisot": verdict.pisot,
        "moduli": [[float(r.modulus[0]), float(r.modulus[1])] for r in cs.roots],
        "unit_circle_margin": float(cs.unit_circle_margin),
        "resolved": cs.resolved,
    }
    print(json.dumps(payload, indent=2))
    return 0


def _cmd_pisot_scan(args, config):
    built = _chain_from_args(args, config)
    survivors = pisot.cubic_scan(built, args.m, b_limit=args.b_limit, slack=args.slack)
    payload = [
        {
            "a": s.poly.a,
            "b": s.poly.b,
            "c": s.poly.c,
            "poly": str(s.poly),
            "moduli": [[float(r.modulus[0]), float(r.modulus[1])] for r in s.conjugates.roots],
        }
        for s in survivors
    ]
    out = _open_out(args.out)
    json.dump(payload, out, indent=2)
    out.write("\n")
    _close_out(out)
    return 0


def _cmd_tail_bound(args, config):
    poly = _poly_from_coeffs(args.coeffs)
    report = pisot.tail_bound_check(poly, range(0, args.n_max + 1))
    out = _open_out(args.out)
    writer = csv.writer(out)
    writer.writerow(["n", "tail_lo", "tail_hi", "lambda_required", "vanished"])
    for row in report.rows:
        writer.writerow(
            [
                row.n,
                sci_str(row.tail.lo, 17, "down"),
                sci_str(row.tail.hi, 17, "up"),
                "" if row.lambda_required is None else f"{row.lambda_required:.6g}",
                int(row.vanished),
            ]
        )
    _close_out(out)
    print(
        f"fitted_lambda={report.fitted_lambda:.6g}"
        + (f" at n={report.n_attained}" if report.n_attained else ""),
        file=sys.stderr,
    )
    return 0


def _cmd_gap_survey(args, config):
    xs = list(args.x or [])
    if args.random:
        import random

        rng = random.Random(config.seed)
        xs.extend(rng.randrange(args.x_min, args.x_max + 1) for _ in range(args.random))
    if not xs:
        raise argparse.ArgumentTypeError("need --x values or --random COUNT")
    records = gaps.gap_survey(xs, args.theta, policy=config.policy)
    out = _open_out(args.out)
    writer = csv.writer(out)
    writer.writerow(["x", "theta", "width", "prime_count", "ratio_lo", "ratio_hi"])
    for r in records:
        writer.writerow(
            [
                r.x,
                str(r.theta),
                r.interval_width,
                r.prime_count,
                sci_str(r.density_ratio.lo, 17, "down"),
                sci_str(r.density_ratio.hi, 17, "up"),
            ]
        )
    _close_out(out)
    return 0


def _cmd_exceptional(args, config):
    survey = gaps.exceptional_survey(args.x, args.gamma, args.d, big_d=args.big_d, policy=config.policy)
    payload = {
        "x": survey.x,
        "gamma": str(survey.gamma),
        "d": str(survey.d),
        "tiles": survey.tiles,
        "exceptional_count": survey.exceptional_count,
        "matomaki_bound": [
            sci_str(survey.matomaki_bound.lo, 17, "down"),
            sci_str(survey.matomaki_bound.hi, 17, "up"),
        ],
    }
    print(json.dumps(payload, indent=2))
    return 0


# -- parser ------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prclab",
        description="Prime-representing-constant laboratory",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for probable-prime rounds and sampling")
    parser.add_argument("--rounds", type=int, default=5, help="extra strong-probable-prime rounds above 2^64")
    parser.add_argument("--precision-cap", type=int, help="working-precision cap in bits")
    parser.add_argument("--threads", type=int, help="worker threads (results are thread-count independent)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-chain", help="build the minimal chain and emit its JSON")
    _add_chain_source(p)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_build_chain)

    p = sub.add_parser("verify", help="exact window / proximity checks per step")
    _add_chain_source(p)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("digits", help="certified decimal prefix of the chain limit")
    _add_chain_source(p)
    p.add_argument("--digits", type=int, help="requested decimal precision (default: auto)")
    p.add_argument(
        "--sidecar",
        default="digits.json",
        help="path for the JSON sidecar (empty string skips it)",
    )
    p.set_defaults(func=_cmd_digits)

    p = sub.add_parser("nearness", help="distance of chain powers from their primes (CSV)")
    _add_chain_source(p)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_nearness)

    p = sub.add_parser("mahler", help="nearest-integer distances of (num/den)^n (CSV)")
    p.add_argument("--num", type=int, required=True)
    p.add_argument("--den", type=int, required=True)
    p.add_argument("--n-max", type=int, default=60)
    p.add_argument("--eps", type=_fraction, default=Fraction(1, 10))
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_mahler)

    p = sub.add_parser("residues", help="chain residues and cubic-step jump witnesses (CSV)")
    _add_chain_source(p)
    p.add_argument("--modulus", type=int, default=3)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_residues)

    p = sub.add_parser("degree-bound", help="exact admissible Pisot degrees for step size b")
    p.add_argument("--b", type=int, required=True)
    p.set_defaults(func=_cmd_degree_bound)

    p = sub.add_parser("pisot-check", help="certified Pisot verdict for a monic polynomial")
    p.add_argument("--coeffs", type=_int_list, required=True, help="a,b for x^2-a*x+b or a,b,c for x^3-a*x^2+b*x-c")
    p.set_defaults(func=_cmd_pisot_check)

    p = sub.add_parser("pisot-scan", help="cubic trace scan from level m")
    _add_chain_source(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--b-limit", type=int)
    p.add_argument("--slack", type=int, default=0, help="ignore this many of the earliest deep-trace comparisons")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_pisot_scan)

    p = sub.add_parser("tail-bound", help="non-dominant power-sum tail vs decay bound (CSV)")
    p.add_argument("--coeffs", type=_int_list, required=True)
    p.add_argument("--n-max", type=int, default=100)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_tail_bound)

    p = sub.add_parser("gap-survey", help="prime counts in [x, x+x^theta] (CSV)")
    p.add_argument("--x", type=int, action="append", help="survey point (repeatable)")
    p.add_argument("--random", type=int, help="add this many seeded random points")
    p.add_argument("--x-min", type=int, default=10**6)
    p.add_argument("--x-max", type=int, default=10**7)
    p.add_argument("--theta", type=_fraction, default=Fraction(21, 40))
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_gap_survey)

    p = sub.add_parser("exceptional", help="greedy tiling of [x,2x]: sparse-interval count")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--gamma", type=_fraction, default=Fraction(1, 2))
    p.add_argument("--d", type=_fraction, default=Fraction(1, 2))
    p.add_argument("--big-d", type=_fraction, default=Fraction(1))
    p.set_defaults(func=_cmd_exceptional)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(
        seed=args.seed,
        rounds=args.rounds,
        precision_cap=args.precision_cap,
        threads=args.threads,
    )
    if config.precision_cap:
        os.environ["PRC_LAB_PRECISION_CAP"] = str(config.precision_cap)
    try:
        return args.func(args, config)
    except (DeadWindowError, ChainExhaustedError, UndecidableError, PrecisionCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ReduciblePolynomialError, ValueError, argparse.ArgumentTypeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())
