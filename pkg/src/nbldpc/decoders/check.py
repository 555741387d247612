"""Check-node kernels.

Every kernel works on stacked rows: soft inputs have shape ``(..., d, q)``
(``d`` edges of one check, ``q`` entries each) and hard inputs ``(..., d)``.
Leading axes are batch/row axes and are processed independently, so the
same code serves single-row calls and whole-graph decoding.

Symbols are in the check domain ``x = h (x) X``, so no field multiplication
appears here; only XOR.
"""

from __future__ import annotations

import numpy as np

from .lut import Lut

QSPA_FLOOR = 1e-30


def reorder(vec, sym):
    """``out[..., k] = vec[..., k ^ sym]``.

    Maps absolute space to deviation space around ``sym`` and back (the
    map is an involution).
    """
    q = vec.shape[-1]
    idx = np.asarray(sym)[..., None] ^ np.arange(q)
    return np.take_along_axis(vec, idx, axis=-1)


def xor_table(q):
    k = np.arange(q)
    return k[:, None] ^ k[None, :]


def hard_outputs(hard):
    """C2V hard messages ``b_j = a_j ^ A`` with ``A`` the XOR of the row."""
    acc = np.bitwise_xor.reduce(hard, axis=-1)
    return hard ^ acc[..., None], acc


def min_tracking(soft):
    """Per deviation: smallest entry over the row, its edge, and the
    runner-up.  ``soft`` is ``(..., d, q)``; results are ``(..., q)``.

    Ties pick the lowest edge position for ``idx``.
    """
    idx = np.argmin(soft, axis=-2)
    min1 = np.take_along_axis(soft, idx[..., None, :], axis=-2)[..., 0, :]
    d = soft.shape[-2]
    pos = np.arange(d)[:, None]
    masked = np.where(pos == idx[..., None, :], np.inf, soft)
    min2 = masked.min(axis=-2)
    return min1, min2, idx


def step1_messages(soft):
    """Extrinsic order-1 minimum for each edge, via (min1, min2, idx)."""
    min1, min2, idx = min_tracking(soft)
    d = soft.shape[-2]
    pos = np.arange(d)[:, None]
    out = np.where(pos == idx[..., None, :], min2[..., None, :],
                   min1[..., None, :])
    out[..., 0] = 0.0
    return out


def lut_combine(vec, lut: Lut, half=False):
    """``out[delta] = min_f vec[D(delta, f, 0)] + vec[D(delta, f, 1)]``."""
    left, right = lut.gather_index(half)
    return (vec[..., left] + vec[..., right]).min(axis=-1)


def smsa_stages(soft, lut: Lut, steps):
    """Soft part of the simplified min-sum CN, before scaling.

    Returns the list ``[beta1, beta', beta'']`` truncated to ``steps + 1``
    entries, all in deviation space.
    """
    beta1 = step1_messages(soft)
    out = [beta1]
    if steps >= 1:
        out.append(lut_combine(beta1, lut))
    if steps >= 2:
        out.append(lut_combine(out[-1], lut, half=True))
    return out


def semiring_conv(u, v, mode="sum"):
    """``out[x] = min_y u[y] (+ or max) v[x ^ y]`` over the last axis."""
    q = u.shape[-1]
    vv = v[..., xor_table(q)]                    # [..., x, y] = v[x ^ y]
    uu = u[..., None, :]
    comb = uu + vv if mode == "sum" else np.maximum(uu, vv)
    return comb.min(axis=-1)


def forward_backward(alpha, mode="sum"):
    """Exact extrinsic min-sum (or min-max) over a row.

    ``alpha`` is absolute-space ``(..., d, q)`` with ``d >= 2``.  Uses
    ``d - 2`` forward, ``d - 2`` backward and ``d - 2`` merge convolutions.
    """
    d = alpha.shape[-2]
    if d < 2:
        raise ValueError("a check of degree < 2 carries no extrinsic information")
    fwd = [alpha[..., 0, :]]
    for k in range(1, d - 1):
        fwd.append(semiring_conv(fwd[-1], alpha[..., k, :], mode))
    bwd = [alpha[..., d - 1, :]]
    for k in range(d - 2, 0, -1):
        bwd.append(semiring_conv(bwd[-1], alpha[..., k, :], mode))
    bwd.reverse()                                # bwd[k - 1] covers edges k..d-1
    out = np.empty_like(alpha)
    out[..., 0, :] = bwd[0]
    out[..., d - 1, :] = fwd[d - 2]
    for k in range(1, d - 1):
        out[..., k, :] = semiring_conv(fwd[k - 1], bwd[k], mode)
    return out


def fwht(x):
    """Unnormalized Walsh-Hadamard transform along the last axis."""
    x = np.array(x, dtype=np.float64, copy=True)
    q = x.shape[-1]
    lead = x.shape[:-1]
    h = 1
    while h < q:
        y = x.reshape(lead + (q // (2 * h), 2, h))
        a = y[..., 0, :].copy()
        b = y[..., 1, :]
        y[..., 0, :] += b
        y[..., 1, :] = a - b
        x = y.reshape(lead + (q,))
        h *= 2
    return x


def qspa_check(prob):
    """Extrinsic XOR-convolution of probability vectors ``(..., d, q)``.

    Products of the other edges' transforms are formed with prefix and
    suffix products (no division), then transformed back and renormalized.
    """
    prob = np.asarray(prob, dtype=np.float64)
    d = prob.shape[-2]
    if d < 2:
        raise ValueError("a check of degree < 2 carries no extrinsic information")
    tot = prob.sum(axis=-1)
    if np.any(tot <= 0):
        raise ValueError("probability vector with zero total mass")
    spec = fwht(prob / tot[..., None])
    ones = np.ones_like(spec[..., :1, :])
    prefix = np.cumprod(np.concatenate([ones, spec[..., :-1, :]], axis=-2),
                        axis=-2)
    suffix = np.flip(np.cumprod(
        np.concatenate([ones, np.flip(spec[..., 1:, :], axis=-2)], axis=-2),
        axis=-2), axis=-2)
    out = fwht(prefix * suffix) / spec.shape[-1]
    out = np.maximum(out, QSPA_FLOOR)
    return out / out.sum(axis=-1, keepdims=True)


def direct_group_conv(probs):
    """Nested-loop XOR convolution of a list of probability vectors."""
    q = len(probs[0])
    acc = np.zeros(q)
    acc[0] = 1.0
    for p in probs:
        nxt = np.zeros(q)
        for x in range(q):
            for y in range(q):
                nxt[x ^ y] += acc[x] * p[y]
        acc = nxt
    return acc
