"""Command line interface.

Subcommands: gen, validate, spectrum, scan, transform, verify. Tuple
files are JSON with keys n, A1, A2 (entries as [re, im] pairs); scans
emit CSV for external plotting. Exit codes: 0 success, 1 validation or
verification failure, 2 I/O or parse trouble.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import TaylorSpecError, TupleFormatError
from .koszul import classify_point, taylor_spectrum
from .linalg import Tolerance
from .moebius import Automorphism, phi_tuple
from .pair import gen_commuting_pure, load_pair, save_pair
from .verification import format_result, run_suite

CSV_HEADER = "re_z1,im_z1,re_z2,im_z2,lap0_min,lap1_min,lap2_min,s1,s2,s3"


def _parse_complex(text: str) -> complex:
    """Accept scalars like 0.3, -0.1+0.2i, 0.5i."""
    try:
        return complex(text.strip().replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse complex scalar {text!r}")


def _parse_lambda(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError('expected two comma-separated scalars, e.g. "0.3,0.1i"')
    return _parse_complex(parts[0]), _parse_complex(parts[1])


def _tolerance(args) -> Tolerance:
    return Tolerance(rank_rel=args.rank_tol, residual_abs=args.tol)


def _fmt_complex(c: complex) -> str:
    return f"{c.real:.12g}{c.imag:+.12g}i"


def _print_pair_summary(pair) -> None:
    comm = float(np.linalg.norm(pair.a1 @ pair.a2 - pair.a2 @ pair.a1))
    kind = "pure commuting 2-contraction" if pair.is_pure else "commuting 2-contraction"
    print(f"n = {pair.n}")
    print(f"{kind}, purity_index {pair.purity_index:.3f}")
    print(f"commutator residual {comm:.3e}")
    print(f"defect injective: {pair.defect_injective}, "
          f"defect_star injective: {pair.defect_star_injective}")
    if not pair.is_pure:
        print("warning: pair is not pure; kernel criteria need purity")


def cmd_validate(args) -> int:
    pair = load_pair(args.input, _tolerance(args))
    _print_pair_summary(pair)
    return 0


def cmd_spectrum(args) -> int:
    tol = _tolerance(args)
    pair = load_pair(args.input, tol)
    result = taylor_spectrum(pair, tol, seed=args.seed)
    if args.json:
        doc = {
            "method": result.method,
            "points": [
                {
                    "z1": [sp.point.z1.real, sp.point.z1.imag],
                    "z2": [sp.point.z2.real, sp.point.z2.imag],
                    "multiplicity": sp.multiplicity,
                    "in_sigma1": sp.classification.in_sigma1,
                    "in_sigma2": sp.classification.in_sigma2,
                    "in_sigma3": sp.classification.in_sigma3,
                }
                for sp in result.points
            ],
        }
        print(json.dumps(doc, indent=2))
        return 0
    print(f"method: {result.method}")
    for sp in result.points:
        c = sp.classification
        flags = f"s1={int(c.in_sigma1)} s2={int(c.in_sigma2)} s3={int(c.in_sigma3)}"
        print(f"({_fmt_complex(sp.point.z1)}, {_fmt_complex(sp.point.z2)})"
              f"  multiplicity {sp.multiplicity}  {flags}")
    return 0


def _scan_points(args) -> list:
    grid = np.linspace(-args.radius, args.radius, args.res)
    limit = args.radius ** 2
    points = []
    if args.mode == "re-re":
        for x in grid:
            for y in grid:
                if x * x + y * y < limit:
                    points.append((complex(x), complex(y)))
    else:
        fixed = args.fix
        base = abs(fixed) ** 2
        for x in grid:
            for y in grid:
                z = complex(x, y)
                if abs(z) ** 2 + base < limit:
                    points.append((z, fixed) if args.mode == "fix-z2" else (fixed, z))
    return points


def cmd_scan(args) -> int:
    if args.res < 2:
        print("error: --res must be at least 2", file=sys.stderr)
        return 2
    if not 0.0 < args.radius < 1.0:
        print("error: --radius must lie in (0, 1)", file=sys.stderr)
        return 2
    if args.mode != "re-re" and args.fix is None:
        print(f"error: mode {args.mode} needs --fix", file=sys.stderr)
        return 2
    tol = _tolerance(args)
    pair = load_pair(args.input, tol)
    points = _scan_points(args)
    workers = min(8, os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(lambda z: classify_point(pair, z, tol), points))
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(CSV_HEADER + "\n")
        for c in rows:
            fields = [
                repr(c.point.z1.real), repr(c.point.z1.imag),
                repr(c.point.z2.real), repr(c.point.z2.imag),
                repr(c.lap0_min), repr(c.lap1_min), repr(c.lap2_min),
                str(int(c.in_sigma1)), str(int(c.in_sigma2)), str(int(c.in_sigma3)),
            ]
            fh.write(",".join(fields) + "\n")
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def cmd_transform(args) -> int:
    tol = _tolerance(args)
    pair = load_pair(args.input, tol)
    auto = Automorphism(*args.lam)
    image = phi_tuple(auto, pair, tol)
    save_pair(image, args.out)
    _print_pair_summary(image)
    return 0


def cmd_verify(args) -> int:
    results = run_suite(args.n, args.trials, args.seed, _tolerance(args))
    for res in results:
        print(format_result(res))
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} properties passed")
    return 0 if passed == len(results) else 1


def cmd_gen(args) -> int:
    pair = gen_commuting_pure(args.n, seed=args.seed, target_norm=args.norm,
                              tol=_tolerance(args))
    save_pair(pair, args.out)
    print(f"wrote n={pair.n} pair to {args.out}, "
          f"purity_index {pair.purity_index:.12f}, is_pure {pair.is_pure}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-8,
                        help="residual threshold (default 1e-8)")
    common.add_argument("--rank-tol", dest="rank_tol", type=float, default=1e-10,
                        help="relative rank cutoff (default 1e-10)")

    parser = argparse.ArgumentParser(
        prog="taylorspec",
        description="Joint spectra of commuting matrix contraction pairs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common],
                       help="check a tuple file is a commuting 2-contraction")
    p.add_argument("input")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("spectrum", parents=[common], help="compute the joint spectrum")
    p.add_argument("input")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("scan", parents=[common],
                       help="classify a 2-D slice of the ball into CSV")
    p.add_argument("input")
    p.add_argument("--mode", choices=["re-re", "fix-z2", "fix-z1"], default="re-re")
    p.add_argument("--fix", type=_parse_complex, default=None,
                   help="fixed coordinate for fix-z1/fix-z2 modes")
    p.add_argument("--res", type=int, default=41, help="grid points per axis")
    p.add_argument("--radius", type=float, default=0.999)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("transform", parents=[common],
                       help="apply a ball automorphism to a tuple")
    p.add_argument("input")
    p.add_argument("--lambda", dest="lam", type=_parse_lambda, required=True,
                   metavar="L1,L2", help='base point, e.g. "0.3,0.1i"')
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("verify", parents=[common], help="run the property suite")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--seed", type=int, default=7)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", parents=[common], help="generate a pure commuting pair")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--norm", type=float, default=0.9, help="target row norm in (0, 1)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "verify":
        if args.n < 2 or args.trials < 1:
            print("error: need --n >= 2 and --trials >= 1", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except TupleFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TaylorSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
