"""Command-line entry point.

Exit codes: 0 ok, 1 I/O or parse failure, 2 invalid parameters,
3 verification failure.
"""

import argparse
import json
import sys

import numpy as np

from . import anomaly, bench, minimax, oracle, signal_io
from .errors import PftError, TableFormatError
from .pft2d import build_plan_2d, execute_2d
from .planner import DEFAULT_EPSILON, build_plan
from .transform import TargetRange, execute

EXIT_OK = 0
EXIT_IO = 1
EXIT_PARAMS = 2
EXIT_VERIFY = 3
VERIFY_THRESHOLD = 1e-6


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARAMS, f"{self.prog}: error: {message}\n")


def _common(sub, with_p=True):
    sub.add_argument("--table", help="scope table file (default: packaged table)")
    sub.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON,
                     help=f"target approximation error (default {DEFAULT_EPSILON:g})")
    if with_p:
        sub.add_argument("--p", type=int, help="divisor of N (default: cost-model choice)")
    sub.add_argument("--json", action="store_true", help="machine-readable output")


def _table(args):
    return minimax.load_table(args.table) if args.table else None


def _fit_length(x, N):
    """Truncate or zero-pad ``x`` to length ``N``."""
    if N is None or N == x.size:
        return x
    if N < 1:
        raise PftError(f"N must be >= 1, got {N}")
    if N < x.size:
        return x[:N].copy()
    out = np.zeros(N, dtype=x.dtype)
    out[:x.size] = x
    return out


def _emit(args, payload, text=None):
    if args.json or text is None:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_gen_table(args):
    eps = [float(e) for e in args.epsilons.split(",")] if args.epsilons else minimax.DEFAULT_EPSILONS
    progress = None
    if args.verbose:
        def progress(e, r, xi):
            print(f"epsilon={e:g} r={r} xi={xi:.6g}", file=sys.stderr)
    table = minimax.build_table(eps, args.r_max, progress)
    minimax.save_table(table, args.out)
    if args.csv:
        minimax.export_csv(table, args.csv)
    _emit(args, {"path": args.out, "entries": len(table.entries)},
          f"wrote {len(table.entries)} entries to {args.out}")
    return EXIT_OK


def cmd_plan(args):
    plan = build_plan(args.N, args.M, args.mu, args.p, args.epsilon, _table(args))
    summary = plan.summary()
    _emit(args, summary, "\n".join(f"{k}: {v}" for k, v in summary.items()))
    return EXIT_OK


def _write_out(path, writer, spectrum):
    if path == "-":
        writer(sys.stdout, spectrum)
    else:
        writer(path, spectrum)


def _spectrum_to(fh_or_path, spectrum):
    if hasattr(fh_or_path, "write"):
        fh_or_path.write("m,re,im\n")
        for m, v in zip(spectrum.indices, spectrum.values):
            fh_or_path.write(f"{int(m)},{float(v.real)!r},{float(v.imag)!r}\n")
    else:
        signal_io.write_spectrum(fh_or_path, spectrum)


def _spectrum2d_to(fh_or_path, spectrum):
    if hasattr(fh_or_path, "write"):
        fh_or_path.write("m1,m2,re,im\n")
        for i, m1 in enumerate(spectrum.range1.indices):
            for j, m2 in enumerate(spectrum.range2.indices):
                v = spectrum.values[i, j]
                fh_or_path.write(f"{int(m1)},{int(m2)},{float(v.real)!r},{float(v.imag)!r}\n")
    else:
        signal_io.write_spectrum_2d(fh_or_path, spectrum)


def _report(args, report):
    # the spectrum owns stdout when no output file was given
    stream = sys.stderr if args.output == "-" else sys.stdout
    print(json.dumps(report.as_dict(), indent=2), file=stream)
    return EXIT_VERIFY if not report.relative_l2 < VERIFY_THRESHOLD else EXIT_OK


def cmd_transform(args):
    x = _fit_length(signal_io.read_signal(args.input, args.format), args.N)
    plan = build_plan(x.size, args.M, args.mu, args.p, args.epsilon, _table(args))
    spectrum = execute(plan, x)
    _write_out(args.output, _spectrum_to, spectrum)
    if args.verify:
        exact = oracle.naive_dft(x, TargetRange(plan.mu, plan.M))
        rep = oracle.compare(exact, spectrum, np.abs(x).sum(), plan.achieved_epsilon)
        return _report(args, rep)
    return EXIT_OK


def cmd_transform2d(args):
    grid = signal_io.read_grid(args.input)
    p1 = args.p1 if args.p1 is not None else args.p
    p2 = args.p2 if args.p2 is not None else args.p
    plan = build_plan_2d(grid.shape[0], grid.shape[1], args.M1, args.M2, args.mu1, args.mu2,
                         p1, p2, args.epsilon, _table(args))
    spectrum = execute_2d(plan, grid)
    _write_out(args.output, _spectrum2d_to, spectrum)
    if args.verify:
        exact = oracle.naive_dft_2d(grid, spectrum.range1, spectrum.range2)
        rep = oracle.compare(exact, spectrum, np.abs(grid).sum(), plan.achieved_epsilon,
                             two_d_bound=True)
        return _report(args, rep)
    return EXIT_OK


def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def cmd_bench(args):
    extras = {"numpy_fft": bench.numpy_fft_baseline} if args.numpy_baseline else None
    runner = bench.Runner(reps=args.reps, warmup=args.warmup, epsilon=args.epsilon,
                          oracle_max_n=args.oracle_max_n, seed=args.seed, table=_table(args),
                          with_naive=not args.no_naive, extra_baselines=extras, force=args.force)
    if args.mode == "vary-n":
        sizes = args.sizes or bench.VARY_N_SIZES
        for N in sizes:
            if N > bench.MAX_N and not args.force:
                raise PftError(f"N={N} exceeds {bench.MAX_N}; pass --force to run it anyway")
        records = runner.vary_n(sizes, args.M if args.M is not None else 1 << 9, args.mu)
    else:
        N = args.N if args.N is not None else 1 << 22
        if N > bench.MAX_N and not args.force:
            raise PftError(f"N={N} exceeds {bench.MAX_N}; pass --force to run it anyway")
        halfwidths = args.halfwidths or bench.VARY_M_SIZES
        if args.mode == "vary-m":
            records = runner.vary_m(N, halfwidths, args.mu)
        else:
            records = runner.vary_ratio(N, halfwidths, mu=args.mu)
    if args.out == "-":
        bench.write_csv(records, sys.stdout)
    else:
        bench.write_csv(records, args.out)
    return EXIT_OK


def cmd_anomaly(args):
    x = signal_io.read_signal(args.input, args.format)
    report = anomaly.detect_anomalies(x, args.M, args.k, args.source, args.epsilon, _table(args))
    payload = report.as_dict()
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2)
    lines = [f"{i},{s!r}" for i, s in zip(payload["indices"], payload["scores"])]
    _emit(args, payload, "index,score\n" + "\n".join(lines))
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="pft", description="Partial Fourier transform toolkit")
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = subs.add_parser("gen-table", help="build a scope table file")
    s.add_argument("--out", required=True)
    s.add_argument("--epsilons", help="comma-separated list (default 1e-1..1e-8)")
    s.add_argument("--r-max", type=int, default=minimax.DEFAULT_R_MAX)
    s.add_argument("--csv", help="also export a CSV view of the table")
    s.add_argument("--verbose", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_gen_table)

    s = subs.add_parser("plan", help="print the configuration chosen for (N, M, mu)")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--M", type=int, required=True)
    s.add_argument("--mu", type=int, default=0)
    _common(s)
    s.set_defaults(func=cmd_plan)

    s = subs.add_parser("transform", help="coefficients of a 1-D signal file")
    s.add_argument("input")
    s.add_argument("--M", type=int, required=True)
    s.add_argument("--mu", type=int, default=0)
    s.add_argument("--N", type=int, help="truncate or zero-pad the signal to this length")
    s.add_argument("--format", choices=["csv", "f64le"], help="input format (default: detect)")
    s.add_argument("-o", "--output", default="-", help="spectrum CSV (default stdout)")
    s.add_argument("--verify", action="store_true", help="compare against the direct DFT")
    _common(s)
    s.set_defaults(func=cmd_transform)

    s = subs.add_parser("transform2d", help="coefficients of a 2-D grid (.npy or CSV)")
    s.add_argument("input")
    s.add_argument("--M1", type=int, required=True)
    s.add_argument("--M2", type=int, required=True)
    s.add_argument("--mu1", type=int, default=0)
    s.add_argument("--mu2", type=int, default=0)
    s.add_argument("--p1", type=int)
    s.add_argument("--p2", type=int)
    s.add_argument("-o", "--output", default="-")
    s.add_argument("--verify", action="store_true")
    _common(s)
    s.set_defaults(func=cmd_transform2d)

    s = subs.add_parser("bench", help="timing sweeps, CSV output")
    s.add_argument("--mode", choices=["vary-n", "vary-m", "vary-ratio"], required=True)
    s.add_argument("--N", type=int, help="signal length for vary-m / vary-ratio (default 2^22)")
    s.add_argument("--M", type=int, help="half-width for vary-n (default 2^9)")
    s.add_argument("--mu", type=int, default=0)
    s.add_argument("--sizes", type=_int_list, help="N grid for vary-n")
    s.add_argument("--halfwidths", type=_int_list, help="M grid for vary-m / vary-ratio")
    s.add_argument("--reps", type=int, default=bench.DEFAULT_REPS)
    s.add_argument("--warmup", type=int, default=bench.DEFAULT_WARMUP)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--oracle-max-n", type=int, default=bench.DEFAULT_ORACLE_MAX_N)
    s.add_argument("--no-naive", action="store_true", help="skip the direct-DFT timing rows")
    s.add_argument("--numpy-baseline", action="store_true", help="add numpy.fft rows (report only)")
    s.add_argument("--force", action="store_true", help=f"allow N > {bench.MAX_N}")
    s.add_argument("--out", default="-")
    _common(s, with_p=False)
    s.set_defaults(func=cmd_bench)

    s = subs.add_parser("anomaly", help="top-k deviations from a low-frequency fit")
    s.add_argument("input")
    s.add_argument("--M", type=int, required=True)
    s.add_argument("--k", type=int, default=20)
    s.add_argument("--source", choices=list(anomaly.SOURCES), default="pft")
    s.add_argument("--format", choices=["csv", "f64le"])
    s.add_argument("--out", help="write the report as JSON")
    _common(s, with_p=False)
    s.set_defaults(func=cmd_anomaly)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TableFormatError, signal_io.SignalFormatError, OSError) as exc:
        print(f"pft: {exc}", file=sys.stderr)
        return EXIT_IO
    except PftError as exc:
        print(f"pft: {exc}", file=sys.stderr)
        return EXIT_PARAMS


if __name__ == "__main__":
    sys.exit(main())
