"""Command-line entry point: ``nbldpc {simulate,decode,lut,complexity,gen-code}``."""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from . import complexity
from .code import load_code, read_alistq, write_alistq
from .decoders import DecoderConfig, FixedPointFormat, build_lut, decode
from .gf import GaloisField
from .sim import SimConfig, parse_decoders, run


def _floats(text):
    return [float(t) for t in text.split(",") if t]


def cmd_simulate(args):
    decs = parse_decoders(args.alg, args.c, args.kappa_max, args.fixed_point)
    cfg = SimConfig(args.code, _floats(args.snr), decs,
                    modulation=args.modulation, channel=args.channel,
                    min_block_errors=args.min_block_errors,
                    max_blocks=args.max_blocks, seed=args.seed,
                    workers=args.workers, batch_size=args.batch_size)
    res = run(cfg)
    print(res.table())
    if args.out:
        res.write(args.out)
    if args.csv:
        res.write_csv(args.csv)
    return 0


def read_llr_file(path, q):
    """One symbol per line, ``q`` whitespace-separated reliabilities."""
    rows = np.loadtxt(path, ndmin=2)
    if rows.shape[1] != q:
        raise ValueError(f"{path}: expected {q} values per line, "
                         f"got {rows.shape[1]}")
    return rows


def cmd_decode(args):
    H = read_alistq(args.code)
    llrs = read_llr_file(args.llr, H.gf.q)
    if llrs.shape[0] != H.n:
        raise ValueError(f"{args.llr}: {llrs.shape[0]} symbols, code has n={H.n}")
    fx = FixedPointFormat.parse(args.fixed_point) if args.fixed_point else None
    cfg = DecoderConfig(args.alg, args.c, args.kappa_max, fx)
    out = decode(llrs, H, cfg)
    print("word: " + " ".join(map(str, out.word)))
    print(f"iterations: {out.iterations_used}")
    print(f"converged: {str(out.converged).lower()}")
    return 0 if out.converged else 1


def cmd_lut(args):
    print(build_lut(GaloisField(args.p)).format())
    return 0


def cmd_complexity(args):
    for alg in args.alg.split(","):
        print(complexity.format_table(alg, args.q, args.dc, args.w))
    return 0


def cmd_gen_code(args):
    if args.spec:
        spec = args.spec
    elif args.type == "regular":
        spec = f"regular:n={args.n},dv={args.dv},dc={args.dc},p={args.p},seed={args.seed}"
    else:
        spec = (f"qc:rows={args.rows},cols={args.cols},z={args.z},p={args.p},"
                f"seed={args.seed}")
    H = load_code(spec)
    write_alistq(H, args.out)
    print(f"wrote {args.out}: n={H.n} m={H.m} q={H.gf.q} rank={H.rank} "
          f"rate={H.rate:.4f} 4-cycles={H.count_4cycles()}")
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="nbldpc", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", help="Monte-Carlo BER/BLER sweep")
    s.add_argument("--code", required=True,
                   help="alistq file or spec such as regular:n=192,dv=3,dc=6,p=3")
    s.add_argument("--alg", default="smsa2", help="comma-separated algorithms")
    s.add_argument("--snr", required=True, help="comma-separated Eb/N0 values (dB)")
    s.add_argument("--c", default=None,
                   help="scaling factor, one value or one per algorithm")
    s.add_argument("--kappa-max", type=int, default=50)
    s.add_argument("--fixed-point", default=None, metavar="I,F")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--min-block-errors", type=int, default=100)
    s.add_argument("--max-blocks", type=int, default=1_000_000)
    s.add_argument("--batch-size", type=int, default=32)
    s.add_argument("--modulation", choices=("bpsk", "qam64"), default="bpsk")
    s.add_argument("--channel", choices=("awgn", "rayleigh"), default="awgn")
    s.add_argument("--out", help="write JSON result document here")
    s.add_argument("--csv", help="also write a CSV table here")
    s.set_defaults(func=cmd_simulate)

    d = sub.add_parser("decode", help="decode one frame of LLR vectors")
    d.add_argument("--code", required=True, help="alistq file")
    d.add_argument("--llr", required=True,
                   help="text file, one line of q reliabilities per symbol")
    d.add_argument("--alg", default="smsa2")
    d.add_argument("--c", type=float, default=None)
    d.add_argument("--kappa-max", type=int, default=50)
    d.add_argument("--fixed-point", default=None, metavar="I,F")
    d.set_defaults(func=cmd_decode)

    lt = sub.add_parser("lut", help="print the pair table for GF(2^p)")
    lt.add_argument("--p", type=int, required=True)
    lt.set_defaults(func=cmd_lut)

    c = sub.add_parser("complexity", help="per-check operation counts")
    c.add_argument("--alg", required=True, help="smsa1, smsa2, emsa (comma list ok)")
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--dc", type=int, required=True)
    c.add_argument("--w", type=int, default=5)
    c.set_defaults(func=cmd_complexity)

    g = sub.add_parser("gen-code", help="construct a code and write it as alistq")
    g.add_argument("--out", required=True)
    g.add_argument("--spec", help="code spec string (overrides the options below)")
    g.add_argument("--type", choices=("regular", "qc"), default="regular")
    g.add_argument("--n", type=int, default=192)
    g.add_argument("--dv", type=int, default=3)
    g.add_argument("--dc", type=int, default=6)
    g.add_argument("--rows", type=int, default=10)
    g.add_argument("--cols", type=int, default=20)
    g.add_argument("--z", type=int, default=31)
    g.add_argument("--p", type=int, default=3)
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_gen_code)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"nbldpc: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
