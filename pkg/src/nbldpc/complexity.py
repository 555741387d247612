"""Per-iteration operation and memory counts of one check node.

``predict`` evaluates the closed forms; ``measure`` runs the instrumented
decoder and reports what it actually executed, per check per iteration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .decoders.counting import OpCounter
from .decoders.decoder import DecoderConfig, decode_batch


@dataclass(frozen=True)
class OpCounts:
    field_adds: int
    summations: int
    compare_selects: int
    memory_bits: int

    def __post_init__(self):
        for name in ("field_adds", "summations", "compare_selects",
                     "memory_bits"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")


def predict(alg: str, q: int, d_c: int, w: int, p: int | None = None) -> OpCounts:
    """Closed-form counts for a degree-``d_c`` check over GF(q), ``w``-bit
    sub-messages."""
    alg = alg.upper().replace("-", "")
    if q < 4 or q & (q - 1):
        raise ValueError(f"q must be a power of two >= 4, got {q}")
    if p is None:
        p = q.bit_length() - 1
    elif 1 << p != q:
        raise ValueError(f"q = {q} is not 2^{p}")
    if d_c < 2:
        raise ValueError("d_c must be at least 2")
    if alg in ("SMSA1", "SMSA2"):
        mem = (2 * w + math.ceil(math.log2(d_c))) * (q - 1) + p * d_c
        if alg == "SMSA1":
            sums = (q // 2 - 1) * (q - 1) * d_c
            cmps = ((q // 2 + 2) * d_c - 3) * (q - 1)
        else:
            sums = (3 * q // 4 - 2) * (q - 1) * d_c
            cmps = ((3 * q // 4 + 1) * d_c - 3) * (q - 1)
        return OpCounts(2 * d_c - 1, sums, cmps, mem)
    if alg == "EMSA":
        return OpCounts(0, 3 * (d_c - 2) * q * q, 3 * (d_c - 2) * q * (q - 1),
                        w * d_c * q)
    raise ValueError(f"no complexity model for {alg!r}")


def measure(llrs, H, cfg: DecoderConfig, iterations=1, w=5):
    """Run ``iterations`` instrumented iterations and return
    ``(per-check-per-iteration OpCounts, OpCounter)``.

    Counts are averaged over every check update executed; for a regular
    code they are exact integers.
    """
    cfg = DecoderConfig(cfg.algorithm, cfg.c, iterations, cfg.fixed_point)
    counter = OpCounter()
    llrs = np.asarray(llrs)
    if llrs.ndim == 2:
        llrs = llrs[None]
    decode_batch(llrs, H, cfg, counter=counter, w=w)
    if counter.cn_updates == 0:
        raise ValueError("no check-node update ran; the input was already "
                         "a codeword")
    k = counter.cn_updates

    def avg(x):
        return x // k if x % k == 0 else x / k

    return OpCounts(avg(counter.field_adds), avg(counter.summations),
                    avg(counter.compare_selects), counter.memory_bits), counter


def format_table(alg, q, d_c, w):
    c = predict(alg, q, d_c, w)
    return (f"{alg.upper():6s} q={q} d_c={d_c} w={w}: "
            f"field_adds={c.field_adds} summations={c.summations} "
            f"compare_selects={c.compare_selects} memory_bits={c.memory_bits}")
