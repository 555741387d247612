"""Scalar check-node kernels that tally the operations they execute.

These follow the hardware datapath operation by operation: a comparator
plus its multiplexer counts as one compare-select, a two-operand addition
of reliabilities counts as one summation, an XOR of two symbols counts as
one field addition.  They are slow and exist to cross-check the closed-form
counts in :mod:`nbldpc.complexity`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lut import Lut


@dataclass
class OpCounter:
    field_adds: int = 0
    summations: int = 0
    compare_selects: int = 0
    memory_bits: int = 0       # largest per-check workspace seen
    cn_updates: int = 0        # number of (check, iteration) pairs processed
    stages: int = 0            # semiring convolutions (forward-backward only)

    def reset(self):
        self.__init__()


@dataclass
class CnWorkspace:
    """Compressed state of one check: XOR accumulator and, per nonzero
    deviation, the (min1, min2, idx) triple."""

    acc: int
    min1: list
    min2: list
    idx: list
    hard: list

    def bits(self, w):
        d = len(self.hard)
        q = len(self.min1) + 1
        p = int(math.log2(q))
        return (2 * w + math.ceil(math.log2(d))) * (q - 1) + p * d


def counted_smsa(hard, soft, lut: Lut, steps, counter: OpCounter, w=5):
    """One SMSA check update; returns ``(b, beta_dev)`` before scaling."""
    hard = [int(h) for h in hard]
    soft = np.asarray(soft, dtype=np.float64)
    d, q = soft.shape
    if d < 2:
        raise ValueError("a check of degree < 2 carries no extrinsic information")

    acc = hard[0]
    for t in range(1, d):
        acc ^= hard[t]
        counter.field_adds += 1
    b = []
    for t in range(d):
        b.append(hard[t] ^ acc)
        counter.field_adds += 1

    ws = CnWorkspace(acc, [], [], [], hard)
    for delta in range(1, q):
        v0, v1 = soft[0, delta], soft[1, delta]
        counter.compare_selects += 1
        if v1 < v0:
            m1, m2, ix = v1, v0, 1
        else:
            m1, m2, ix = v0, v1, 0
        for t in range(2, d):
            v = soft[t, delta]
            counter.compare_selects += 2
            if v < m1:
                m1, m2, ix = v, m1, t
            elif v < m2:
                m2 = v
        ws.min1.append(m1)
        ws.min2.append(m2)
        ws.idx.append(ix)
    counter.memory_bits = max(counter.memory_bits, ws.bits(w))

    beta = np.zeros((d, q))
    for t in range(d):
        for delta in range(1, q):
            counter.compare_selects += 1
            k = delta - 1
            beta[t, delta] = ws.min2[k] if t == ws.idx[k] else ws.min1[k]

    for step in range(steps):
        cols = q // 2 if step == 0 else q // 4
        prev = beta
        beta = np.zeros((d, q))
        for t in range(d):
            for delta in range(1, q):
                row = lut.pairs[delta - 1]
                best = prev[t, delta]            # column 0 is (0, delta)
                for f in range(1, cols):
                    s = prev[t, row[f, 0]] + prev[t, row[f, 1]]
                    counter.summations += 1
                    counter.compare_selects += 1
                    if s < best:
                        best = s
                beta[t, delta] = best
    counter.cn_updates += 1
    return np.array(b, dtype=np.int64), beta


def _counted_conv(u, v, counter):
    q = len(u)
    out = np.empty(q)
    for x in range(q):
        best = u[0] + v[x]
        counter.summations += 1
        for y in range(1, q):
            s = u[y] + v[x ^ y]
            counter.summations += 1
            counter.compare_selects += 1
            if s < best:
                best = s
        out[x] = best
    counter.stages += 1
    return out


def counted_emsa(alpha, counter: OpCounter, w=5):
    """Forward-backward min-sum over one row in absolute space, unscaled."""
    alpha = np.asarray(alpha, dtype=np.float64)
    d, q = alpha.shape
    if d < 2:
        raise ValueError("a check of degree < 2 carries no extrinsic information")
    fwd = [alpha[0]]
    for k in range(1, d - 1):
        fwd.append(_counted_conv(fwd[-1], alpha[k], counter))
    bwd = [alpha[d - 1]]
    for k in range(d - 2, 0, -1):
        bwd.append(_counted_conv(bwd[-1], alpha[k], counter))
    bwd.reverse()
    out = np.empty_like(alpha)
    out[0] = bwd[0]
    out[d - 1] = fwd[d - 2]
    for k in range(1, d - 1):
        out[k] = _counted_conv(fwd[k - 1], bwd[k], counter)
    counter.memory_bits = max(counter.memory_bits, w * d * q)
    counter.cn_updates += 1
    return out
