"""Monte-Carlo error-rate simulation.

The all-zero codeword is transmitted.  Block ``b`` at SNR index ``s``
draws its noise from ``default_rng([seed, s, b])``, so every decoder sees
the same channel realizations and results do not depend on how blocks are
spread over worker processes.  Blocks are decoded in fixed chunks of
``batch_size`` consecutive indices; the stop rule is applied block by block
in index order.
"""

from __future__ import annotations

import csv
import json
import logging
import platform
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .channel import ChannelConfig, transmit_llrs
from .code import ParityCheckMatrix, load_code, syndrome
from .decoders import DecoderConfig, FixedPointFormat, decode_batch
from .gf import popcount

log = logging.getLogger(__name__)


@dataclass
class SimConfig:
    code: ParityCheckMatrix | str
    snrs: list
    decoders: list
    modulation: str = "bpsk"
    channel: str = "awgn"
    min_block_errors: int = 100
    max_blocks: int = 1_000_000
    seed: int = 0
    workers: int = 1
    batch_size: int = 32

    def __post_init__(self):
        if not len(self.snrs):
            raise ValueError("SNR list is empty")
        if not len(self.decoders):
            raise ValueError("no decoders configured")
        if self.min_block_errors < 1 or self.max_blocks < 1:
            raise ValueError("stop rule values must be positive")
        if self.workers < 1 or self.batch_size < 1:
            raise ValueError("workers and batch_size must be positive")
        # validates modulation/channel names early
        ChannelConfig(self.modulation, self.channel)


@dataclass
class PointResult:
    decoder: str
    snr_db: float
    blocks_sent: int = 0
    block_errors: int = 0
    bit_errors: int = 0
    total_bits: int = 0
    symbol_errors: int = 0
    iteration_sum: int = 0
    undetected_errors: int = 0
    syndrome_violations: int = 0

    @property
    def ber(self):
        return self.bit_errors / self.total_bits if self.total_bits else 0.0

    @property
    def bler(self):
        return self.block_errors / self.blocks_sent if self.blocks_sent else 0.0

    @property
    def avg_iterations(self):
        return self.iteration_sum / self.blocks_sent if self.blocks_sent else 0.0

    def to_dict(self):
        d = asdict(self)
        d.update(ber=self.ber, bler=self.bler,
                 avg_iterations=self.avg_iterations)
        return d


@dataclass
class SimResult:
    points: list
    metadata: dict = field(default_factory=dict)

    def point(self, decoder, snr_db):
        for pt in self.points:
            if pt.decoder == decoder and pt.snr_db == snr_db:
                return pt
        raise KeyError((decoder, snr_db))

    def to_dict(self):
        return {"metadata": self.metadata,
                "points": [pt.to_dict() for pt in self.points]}

    def write(self, path):
        with open(path, "w") as f:
            json.dump(self.to_dict(), f, indent=2)
            f.write("\n")

    def write_csv(self, path):
        cols = ["decoder", "snr_db", "blocks_sent", "block_errors",
                "bit_errors", "total_bits", "ber", "bler", "avg_iterations"]
        with open(path, "w", newline="") as f:
            wr = csv.DictWriter(f, fieldnames=cols, extrasaction="ignore")
            wr.writeheader()
            for pt in self.points:
                wr.writerow(pt.to_dict())

    @classmethod
    def read(cls, path):
        with open(path) as f:
            doc = json.load(f)
        fields_ = PointResult.__dataclass_fields__
        pts = [PointResult(**{k: v for k, v in d.items() if k in fields_})
               for d in doc["points"]]
        return cls(pts, doc["metadata"])

    def table(self):
        lines = [f"{'decoder':14s} {'Eb/N0':>6s} {'blocks':>8s} {'errors':>7s} "
                 f"{'BER':>10s} {'BLER':>10s} {'avg it':>7s}"]
        for pt in self.points:
            lines.append(f"{pt.decoder:14s} {pt.snr_db:6.2f} {pt.blocks_sent:8d} "
                         f"{pt.block_errors:7d} {pt.ber:10.3e} {pt.bler:10.3e} "
                         f"{pt.avg_iterations:7.2f}")
        return "\n".join(lines)


def block_rng(seed, snr_index, block):
    return np.random.default_rng([seed, snr_index, block])


def simulate_chunk(H, dec: DecoderConfig, chan: ChannelConfig, seed,
                   snr_index, start, stop):
    """Decode blocks ``start .. stop-1``; returns per-block records."""
    zero = np.zeros(H.n, dtype=np.int64)
    llrs = np.stack([transmit_llrs(zero, chan, H.gf,
                                   block_rng(seed, snr_index, b))
                     for b in range(start, stop)])
    words, conv, iters, _ = decode_batch(llrs, H, dec)
    wrong = words != 0
    bad_syn = conv & np.any(syndrome(words, H) != 0, axis=-1)
    return {
        "block_error": wrong.any(axis=-1),
        "bit_errors": popcount(words).sum(axis=-1),
        "symbol_errors": wrong.sum(axis=-1),
        "iterations": iters,
        "undetected": conv & wrong.any(axis=-1),
        "syndrome_violation": bad_syn,
    }


_worker_code = None


def _init_worker(H):
    global _worker_code
    _worker_code = H


def _worker_chunk(args):
    return simulate_chunk(_worker_code, *args)


def _accumulate(pt: PointResult, rec, p, n, min_errors, max_blocks):
    """Add records in block order; return True once the stop rule fires."""
    for k in range(len(rec["block_error"])):
        pt.blocks_sent += 1
        pt.block_errors += int(rec["block_error"][k])
        pt.bit_errors += int(rec["bit_errors"][k])
        pt.symbol_errors += int(rec["symbol_errors"][k])
        pt.iteration_sum += int(rec["iterations"][k])
        pt.undetected_errors += int(rec["undetected"][k])
        pt.syndrome_violations += int(rec["syndrome_violation"][k])
        pt.total_bits += n * p
        if pt.block_errors >= min_errors or pt.blocks_sent >= max_blocks:
            return True
    return False


def run(cfg: SimConfig) -> SimResult:
    H = cfg.code if isinstance(cfg.code, ParityCheckMatrix) else load_code(cfg.code)
    rate = H.rate
    pool = None
    if cfg.workers > 1:
        pool = ProcessPoolExecutor(cfg.workers, initializer=_init_worker,
                                   initargs=(H,))
    points = []
    try:
        for dec in cfg.decoders:
            for s_idx, snr in enumerate(cfg.snrs):
                chan = ChannelConfig(cfg.modulation, cfg.channel, float(snr),
                                     rate, cfg.seed)
                pt = PointResult(dec.label, float(snr))
                _run_point(pt, H, dec, chan, cfg, s_idx, pool)
                log.info("%s %.2f dB: %d/%d block errors", pt.decoder, snr,
                         pt.block_errors, pt.blocks_sent)
                points.append(pt)
    finally:
        if pool is not None:
            pool.shutdown()
    return SimResult(points, _metadata(cfg, H))


def _run_point(pt, H, dec, chan, cfg, s_idx, pool):
    B = cfg.batch_size
    next_block = 0
    while True:
        wave = []
        for _ in range(cfg.workers):
            if next_block >= cfg.max_blocks:
                break
            stop = min(next_block + B, cfg.max_blocks)
            wave.append((dec, chan, cfg.seed, s_idx, next_block, stop))
            next_block = stop
        if not wave:
            return
        if pool is None:
            results = [simulate_chunk(H, *args) for args in wave]
        else:
            results = list(pool.map(_worker_chunk, wave))
        for rec in results:
            if _accumulate(pt, rec, H.gf.p, H.n, cfg.min_block_errors,
                           cfg.max_blocks):
                return


def _decoder_dict(dec: DecoderConfig):
    fx = dec.fixed_point
    return {"algorithm": dec.algorithm, "c": dec.c,
            "kappa_max": dec.kappa_max,
            "fixed_point": None if fx is None else {"I": fx.I, "F": fx.F}}


def _metadata(cfg, H):
    return {
        "version": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "seed": cfg.seed,
        "code": {"n": H.n, "m": H.m, "q": H.gf.q, "prim_poly": H.gf.prim_poly,
                 "rank": H.rank, "rate": H.rate, "sha256": H.digest(),
                 "source": cfg.code if isinstance(cfg.code, str) else None},
        "snr_convention": "Eb/N0 in dB per information bit, unit-energy "
                          "constellation",
        "modulation": cfg.modulation,
        "channel": cfg.channel,
        "decoders": [_decoder_dict(d) for d in cfg.decoders],
        "snrs": [float(s) for s in cfg.snrs],
        "stop_rule": {"min_block_errors": cfg.min_block_errors,
                      "max_blocks": cfg.max_blocks},
        "batch_size": cfg.batch_size,
    }


def parse_decoders(algs, c=None, kappa_max=50, fixed_point=None):
    """Build decoder configs from CLI-style strings.

    ``c`` may be one value for every decoder or one per algorithm.
    """
    algs = [a for a in algs.split(",") if a] if isinstance(algs, str) else list(algs)
    if c is None:
        cs = [None] * len(algs)
    else:
        cs = [float(x) for x in str(c).split(",")] if isinstance(c, str) else list(np.atleast_1d(c))
        if len(cs) == 1:
            cs = cs * len(algs)
        if len(cs) != len(algs):
            raise ValueError("give one scaling factor, or one per algorithm")
    fx = FixedPointFormat.parse(fixed_point) if isinstance(fixed_point, str) else fixed_point
    out = []
    for alg, ci in zip(algs, cs):
        use_fx = fx if alg.upper() != "QSPA" else None
        out.append(DecoderConfig(alg, ci, kappa_max, use_fx))
    return out
