"""Brute-force check-node reference (test use only).

Enumerates every configuration of the row, so it is restricted to small
rows: ``d_c <= 6`` and ``q <= 16``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .check import reorder

MAX_DEGREE = 6
MAX_Q = 16


def _guard(soft):
    d, q = soft.shape
    if d > MAX_DEGREE or q > MAX_Q:
        raise ValueError(f"oracle limited to d_c <= {MAX_DEGREE} and "
                         f"q <= {MAX_Q}, got d_c={d}, q={q}")
    if d < 2:
        raise ValueError("a check of degree < 2 carries no extrinsic information")


def oracle_by_order(hard, soft, j, mode="sum"):
    """Row ``k`` holds ``beta^(k)(d)`` for all absolute ``d``.

    ``hard``/``soft`` describe the V2C messages of one row (soft in
    deviation space); ``j`` is the edge position the output is for.  The
    result has ``d`` rows (orders ``0 .. d-1``), cumulative in ``k``.
    """
    hard = np.asarray(hard, dtype=np.int64)
    soft = np.asarray(soft, dtype=np.float64)
    _guard(soft)
    d, q = soft.shape
    others = [t for t in range(d) if t != j]
    alpha = reorder(soft, hard)                    # absolute space
    sym = np.arange(q)

    val = np.zeros(())
    order = np.zeros((), dtype=np.int64)
    xor = np.zeros((), dtype=np.int64)
    for t in others:
        a = alpha[t]
        dev = (sym != hard[t]).astype(np.int64)
        if mode == "sum":
            val = val[..., None] + a
        else:
            val = np.maximum(val[..., None], a)
        order = order[..., None] + dev
        xor = xor[..., None] ^ sym
    # the excluded symbol must cancel the others: x_j = XOR of the rest
    key = (order * q + xor).ravel()
    best = np.full(len(others) * q + q, np.inf)
    np.minimum.at(best, key, val.ravel())
    best = best.reshape(len(others) + 1, q)
    return np.minimum.accumulate(best, axis=0)


def cn_oracle(hard, soft, j, d=None, order_cap=None, mode="sum"):
    """Exact configuration minimum for edge ``j`` (no scaling).

    Returns the reliability of absolute symbol ``d`` or, if ``d`` is None,
    the whole vector.  ``order_cap`` restricts to configurations with at
    most that many deviating edges; ``mode`` is ``"sum"`` or ``"max"``.
    """
    if mode not in ("sum", "max"):
        raise ValueError(f"mode must be 'sum' or 'max', got {mode!r}")
    table = oracle_by_order(hard, soft, j, mode)
    k = table.shape[0] - 1 if order_cap is None else min(order_cap,
                                                          table.shape[0] - 1)
    out = table[k]
    return out if d is None else float(out[d])


@lru_cache(maxsize=None)
def independent_tuples(q, k):
    """All ``k``-tuples of nonzero symbols with no zero-XOR subset."""
    nz = np.arange(1, q)
    grid = np.stack(np.meshgrid(*([nz] * k), indexing="ij"), -1).reshape(-1, k)
    ok = np.ones(grid.shape[0], dtype=bool)
    for mask in range(1, 1 << k):
        acc = np.zeros(grid.shape[0], dtype=np.int64)
        for t in range(k):
            if mask >> t & 1:
                acc ^= grid[:, t]
        ok &= acc != 0
    out = grid[ok]
    out.setflags(write=False)
    return out


def cn_oracle_pruned(hard, soft, j, order_cap):
    """Order-``k`` sum-mode minimum searched only over deviation sets that
    contain no zero-sum subset; returns the absolute-space vector.
    """
    hard = np.asarray(hard, dtype=np.int64)
    soft = np.asarray(soft, dtype=np.float64)
    _guard(soft)
    d, q = soft.shape
    others = [t for t in range(d) if t != j]
    best = np.full(q, np.inf)
    best[0] = 0.0
    for k in range(1, min(order_cap, len(others)) + 1):
        tuples = independent_tuples(q, k)
        if tuples.size == 0:
            continue
        target = np.bitwise_xor.reduce(tuples, axis=1)
        for chosen in itertools.combinations(others, k):
            vals = np.zeros(tuples.shape[0])
            for pos, t in enumerate(chosen):
                vals += soft[t][tuples[:, pos]]
            np.minimum.at(best, target, vals)
    b = np.bitwise_xor.reduce(np.delete(hard, j))
    return reorder(best, b)
