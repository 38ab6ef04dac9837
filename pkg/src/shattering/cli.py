"""Command-line front end.

Exit codes: 0 on success, 2 for usage or input errors, 3 for domain
failures (collisions, no separating sigma, off-grid angles, pursuit not
converging). The resolved configuration of every run goes to stderr as one
JSON line so stdout stays clean for tables and CSV.
"""

import argparse
import json
import sys

from . import io as sio
from .bench import (
    SWEEP_FIELDS,
    choose_sigma,
    rows_to_csv,
    sweep_measurements,
    table1,
)
from .exceptions import ShatteringError
from .matrixform import build_stacked, stacked_to_csv
from .recon import decode
from .shatter import DEFAULT_THRESHOLD, ShatterConfig, encode
from .sigcore import dft, generate_sparse, occupied_bins
from .validation import check_signal

EXIT_USAGE = 2
EXIT_DOMAIN = 3


def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _report(cmd, **cfg):
    print(json.dumps({"command": cmd, **cfg}, sort_keys=True), file=sys.stderr)


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args):
    _report("gen", n=args.n, sparsity=args.sparsity, seed=args.seed,
            support=args.support, out=args.out, format=args.format)
    x = generate_sparse(args.n, args.sparsity, args.seed, support=args.support)
    sio.write_signal(args.out, x, args.format)


def cmd_encode(args):
    x = check_signal(sio.read_signal(args.inp, args.format))
    n = x.size
    sigma = args.sigma
    if sigma is None:
        sigma = choose_sigma(n, args.filters, occupied_bins(dft(x)))
    _report("encode", n=n, filters=args.filters, sigma=sigma,
            threshold=args.threshold, inp=args.inp, out=args.out)
    ms = encode(x, ShatterConfig(n, args.filters, sigma, args.threshold))
    sio.write_measurements(args.out, ms)
    print(f"retained {len(ms)} of {args.filters} filters, "
          f"{ms.stored_real_measurements} real measurements", file=sys.stderr)


def cmd_decode(args):
    ms = sio.read_measurements(args.inp)
    _report("decode", n=ms.n, filters=ms.t, sigma=ms.sigma, threshold=ms.threshold,
            entries=len(ms), inp=args.inp, out=args.out, format=args.format)
    sio.write_signal(args.out, decode(ms), args.format)


def cmd_table1(args):
    m_values = args.m_values or [5, 25]
    _report("table1", n=args.n, filters=args.filters, m_values=m_values,
            multiplier=args.multiplier, sigma=args.sigma, seed=args.seed)
    rows = table1(args.n, args.filters, m_values, args.multiplier, sigma=args.sigma, seed=args.seed)
    if args.csv:
        _emit(rows_to_csv(rows), args.out)
        return
    head = ("N", "m", "T", "meas CS", "meas CSh", "add CS", "add CSh", "mul CS", "mul CSh")
    keys = ("n", "m", "t", "meas_cs", "meas_shatter", "add_cs", "add_shatter", "mul_cs", "mul_shatter")
    lines = ["  ".join(f"{h:>9}" for h in head)]
    for r in rows:
        lines.append("  ".join(f"{r[k]:>9}" for k in keys))
    _emit("\n".join(lines) + "\n", args.out)


def cmd_sweep(args):
    m_values = args.m_values
    if m_values is None:
        m_values = [1 << p for p in range(2, 64) if (1 << p) <= args.filters // 2]
    seeds = list(range(args.seed, args.seed + args.trials))
    _report("sweep", n=args.n, filters=args.filters, m_values=m_values,
            multiplier=args.multiplier, m_max=args.m_max, seeds=seeds, sigma=args.sigma,
            threshold=args.threshold, support=args.support, jobs=args.jobs)
    rows = sweep_measurements(
        args.n, args.filters, m_values, args.multiplier, args.m_max, seeds,
        sigma=args.sigma, threshold=args.threshold, support=args.support, n_jobs=args.jobs,
    )
    _emit(rows_to_csv(rows, SWEEP_FIELDS), args.out)


def cmd_dump_matrix(args):
    config = ShatterConfig(args.n, args.filters, args.sigma)
    _report("dump-matrix", n=args.n, filters=args.filters, sigma=args.sigma, out=args.out)
    stacked = build_stacked(config)
    if args.out:
        with open(args.out, "w") as fh:
            stacked_to_csv(stacked, fh)
    else:
        stacked_to_csv(stacked, sys.stdout)


def build_parser():
    p = argparse.ArgumentParser(prog="shattering", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a random frequency-sparse real signal")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--sparsity", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--support", choices=("random", "clustered"), default="random")
    g.add_argument("--out", required=True)
    g.add_argument("--format", choices=sio.FORMATS)
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("encode", help="encode a signal file into measurement JSON")
    e.add_argument("--in", dest="inp", required=True)
    e.add_argument("--filters", type=int, required=True)
    e.add_argument("--sigma", type=int, help="permutation parameter (omit to search)")
    e.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    e.add_argument("--out", required=True)
    e.add_argument("--format", choices=sio.FORMATS, help="input signal format")
    e.set_defaults(func=cmd_encode)

    d = sub.add_parser("decode", help="reconstruct a signal from measurement JSON")
    d.add_argument("--in", dest="inp", required=True)
    d.add_argument("--out", required=True)
    d.add_argument("--format", choices=sio.FORMATS, help="output signal format")
    d.set_defaults(func=cmd_decode)

    t = sub.add_parser("table1", help="measurement and operation counts, both methods")
    t.add_argument("--n", type=int, default=1000)
    t.add_argument("--filters", type=int, default=100)
    t.add_argument("--m-values", type=_int_list)
    t.add_argument("--multiplier", type=float, default=7.0)
    t.add_argument("--sigma", type=int, default=11)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--csv", action="store_true")
    t.add_argument("--out")
    t.set_defaults(func=cmd_table1)

    s = sub.add_parser("sweep", help="stored measurements versus sparsity, as CSV")
    s.add_argument("--n", type=int, default=1 << 14)
    s.add_argument("--filters", type=int, default=2048)
    s.add_argument("--m-values", type=_int_list, help="default: powers of two from 4 to T/2")
    s.add_argument("--m-max", type=int, help="design sparsity for the CS baseline (default: max m)")
    s.add_argument("--multiplier", type=float, default=6.0)
    s.add_argument("--sigma", type=int)
    s.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=1)
    s.add_argument("--support", choices=("random", "clustered"), default="random")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)

    m = sub.add_parser("dump-matrix", help="write the stacked 2T x N operator as CSV")
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--filters", type=int, required=True)
    m.add_argument("--sigma", type=int, default=1)
    m.add_argument("--out")
    m.set_defaults(func=cmd_dump_matrix)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except ShatteringError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
