"""Command-line interface.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 file I/O error,
4 numeric or precondition error. Slice indices in output are 1-based.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .. import harness, quantum, structured
from ..errors import TSympError
from ..tcore import to_domain, tprod
from ..williamson import real_symmetrize_factors, t_williamson
from .codec import TensorFileError, read_tensor, write_csv, write_tensor

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_IO, EXIT_NUMERIC = 0, 1, 2, 3, 4
CHECK_TOL = 1e-10


def _verdict(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def cmd_tprod(args) -> int:
    a, b = read_tensor(args.a), read_tensor(args.b)
    write_tensor(args.output, tprod(a, to_domain(b, a.domain)))
    return EXIT_OK


def cmd_check(args) -> int:
    t = read_tensor(args.tensor)
    if args.structure == "hamiltonian":
        res = structured.hamiltonian_residual(t)
        ok = res <= CHECK_TOL
        print(f"hamiltonian residual {res:.3e} {_verdict(ok)}")
    elif args.structure == "symplectic":
        res = structured.symplectic_residual(t)
        ok = res <= CHECK_TOL
        print(f"symplectic residual {res:.3e} {_verdict(ok)}")
    else:
        rep = structured.t_pd_residual(t)
        ok = rep.ok
        lo = float(np.nanmin(rep.smallest_eigenvalues))
        failing = ",".join(str(i + 1) for i in rep.failing_slices) or "none"
        print(f"pd smallest eigenvalue {lo:.3e} failing slices {failing} {_verdict(ok)}")
    return EXIT_OK if ok else EXIT_CHECK


def cmd_expm(args) -> int:
    write_tensor(args.output, structured.t_expm(read_tensor(args.h)))
    return EXIT_OK


def cmd_decompose(args) -> int:
    m = read_tensor(args.tensor)
    if args.real_recover:
        factors = real_symmetrize_factors(m)
    else:
        factors = t_williamson(m, workers=args.threads)
    s_path, d_path = args.output
    write_tensor(s_path, factors.S)
    write_tensor(d_path, factors.D)
    if args.lambdas:
        n = factors.lambdas.shape[1]
        header = ["slice"] + [f"lambda_{j + 1}" for j in range(n)]
        write_csv(args.lambdas, header, ([i + 1, *lam] for i, lam in enumerate(factors.lambdas)))
    return EXIT_OK


def cmd_random(args) -> int:
    if args.kind == "hamiltonian":
        t = structured.random_t_hamiltonian(args.n, args.p, args.seed)
    else:
        t = harness.random_spd_slices(args.n, args.p, args.seed)
    write_tensor(args.output, t)
    return EXIT_OK


def _parse_sizes(text: str):
    try:
        sizes = []
        for item in text.split(","):
            n, p = item.lower().split("x")
            sizes.append((int(n), int(p)))
    except ValueError:
        raise argparse.ArgumentTypeError(f"sizes must look like 4x8,8x16, got {text!r}") from None
    return sizes


def _parse_points(text: str):
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"points must be comma-separated integers, got {text!r}") from None


RESIDUAL_COLUMNS = ["n", "p", "res_symp", "res_wnf", "res_wsp", "res_spec"]


def cmd_validate(args) -> int:
    table = harness.residual_suite(args.sizes, args.seed)
    print(table.format_text())
    ok = table.passed()
    print(f"gate 1e-10 (res_Symp 1e-9 at the largest size): {_verdict(ok)}")
    if args.output:
        write_csv(args.output, RESIDUAL_COLUMNS,
                  ((r.n, r.p, r.res_symp, r.res_wnf, r.res_wsp, r.res_spec) for r in table.rows))
    return EXIT_OK if ok else EXIT_CHECK


def cmd_spectrum(args) -> int:
    ds = harness.spectrum_of(read_tensor(args.h))
    write_csv(args.output, harness.SPECTRUM_COLUMNS, ds.rows())
    ok = ds.max_distance <= structured.SYMMETRY_TOL
    print(f"max reflection match distance {ds.max_distance:.3e} {_verdict(ok)}")
    return EXIT_OK if ok else EXIT_CHECK


BENCH_COLUMNS = ["axis", "fixed", "point", "mean_seconds", "runs", "workers", "slope"]


def cmd_bench(args) -> int:
    rec = harness.bench_sweep(args.axis, args.points, args.fixed, runs=args.runs,
                              seed=args.seed, workers=args.threads or 1)
    slope = "" if rec.slope is None else rec.slope
    for pt, t in zip(rec.points, rec.mean_times):
        print(f"{rec.axis}={pt:<6d} mean {t:.6f} s")
    print("log-log slope (upper half):", "n/a" if rec.slope is None else f"{rec.slope:.3f}")
    if args.output:
        write_csv(args.output, BENCH_COLUMNS,
                  ((rec.axis, rec.fixed, pt, t, rec.runs, rec.workers, slope)
                   for pt, t in zip(rec.points, rec.mean_times)))
    return EXIT_OK


PROFILE_COLUMNS = ["t", "entropy", "log_negativity", "lambda_1", "lambda_2", "lambda_pt_1", "lambda_pt_2"]


def cmd_quantum(args) -> int:
    try:
        params = quantum.QuantumParams(args.r, args.nth, args.kappa, args.p, args.tmax)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    prof = quantum.quantum_profiles(params)
    write_csv(args.output, PROFILE_COLUMNS, prof.rows())
    agree = prof.spectral_agreement()
    ok = agree <= CHECK_TOL
    print(f"S: {prof.entropy[0]:.6f} -> {prof.entropy[-1]:.6f}   "
          f"E_N: {prof.negativity[0]:.6f} -> {prof.negativity[-1]:.6f}")
    print(f"Williamson vs oracle eigenvalues: relative error {agree:.3e} {_verdict(ok)}")
    return EXIT_OK if ok else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tsymp",
        description="T-product algebra for Hamiltonian/symplectic tensors.",
        epilog="Exit codes: 0 ok, 1 check failed, 2 usage, 3 file I/O, 4 numeric/precondition.",
    )
    parser.add_argument("--threads", type=int, default=None,
                        help="worker threads for slice-parallel decomposition")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tprod", help="T-product of two tensor files")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_tprod)

    p = sub.add_parser("check", help="structural residual check at tolerance 1e-10")
    p.add_argument("--structure", choices=["hamiltonian", "symplectic", "pd"], required=True)
    p.add_argument("tensor")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("expm", help="tensor exponential")
    p.add_argument("h")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_expm)

    p = sub.add_parser("decompose", help="T-Williamson normal form M = S^H * D * S",
                       epilog="--lambdas CSV columns: slice, lambda_1..lambda_n (descending).")
    p.add_argument("tensor")
    p.add_argument("-o", "--output", nargs=2, metavar=("S", "D"), required=True)
    p.add_argument("--real-recover", action="store_true",
                   help="require Fourier conjugate symmetry and return real spatial factors")
    p.add_argument("--lambdas", metavar="CSV")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("random", help="random T-Hamiltonian or SPD-slice tensor (Fourier domain)")
    p.add_argument("--kind", choices=["hamiltonian", "spd"], required=True)
    p.add_argument("--n", type=int, required=True, help="half of the slice size 2n")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("validate", help="consistency residual table",
                       epilog="CSV columns: " + ", ".join(RESIDUAL_COLUMNS))
    p.add_argument("--sizes", type=_parse_sizes, default=list(harness.RESIDUAL_SIZES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("spectrum", help="T-spectrum with reflected values",
                       epilog="CSV columns: " + ", ".join(harness.SPECTRUM_COLUMNS))
    p.add_argument("h")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("bench", help="runtime sweep of the T-Williamson decomposition",
                       epilog="CSV columns: " + ", ".join(BENCH_COLUMNS))
    p.add_argument("--axis", choices=["n", "p"], required=True)
    p.add_argument("--points", type=_parse_points, required=True)
    p.add_argument("--fixed", type=int, required=True)
    p.add_argument("--runs", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("quantum-demo", help="entropy and log-negativity profiles of a decohering TMSV",
                       epilog="CSV columns: " + ", ".join(PROFILE_COLUMNS))
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--nth", type=float, default=0.5)
    p.add_argument("--kappa", type=float, default=0.3)
    p.add_argument("--p", type=int, default=64)
    p.add_argument("--tmax", type=float, default=12.0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_quantum)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TensorFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (TSympError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
