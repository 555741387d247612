"""Iterative message-passing decoding of q-ary LDPC codes.

Messages live on the edges of the Tanner graph, indexed in the check
domain ``x = h (x) X``.  Multiplication by ``h`` is applied at the variable
node boundary through precomputed per-edge permutations.

The decoder runs a batch of frames at once; frames leave the batch as soon
as their tentative decision satisfies every check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..code import ParityCheckMatrix, syndrome
from . import check
from .counting import OpCounter, counted_emsa, counted_smsa
from .fixed import FixedPointFormat, quantize
from .lut import Lut, build_lut

ALGORITHMS = ("QSPA", "EMSA", "MMA", "SMSA1", "SMSA2")

# MMA is unscaled; QSPA does not use a factor.
DEFAULT_SCALING = {"SMSA1": 0.60, "SMSA2": 0.75, "EMSA": 0.73, "MMA": 1.0,
                   "QSPA": 1.0}


@dataclass(frozen=True)
class DecoderConfig:
    algorithm: str = "SMSA2"
    c: float | None = None
    kappa_max: int = 50
    fixed_point: FixedPointFormat | None = None

    def __post_init__(self):
        alg = self.algorithm.upper().replace("-", "")
        if alg not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}; "
                             f"choose from {', '.join(ALGORITHMS)}")
        object.__setattr__(self, "algorithm", alg)
        if self.c is None:
            object.__setattr__(self, "c", DEFAULT_SCALING[alg])
        if not 0 < self.c <= 1:
            raise ValueError(f"scaling factor must be in (0, 1], got {self.c}")
        if self.kappa_max < 1:
            raise ValueError("kappa_max must be at least 1")
        if alg == "QSPA" and self.fixed_point is not None:
            raise ValueError("QSPA runs in the probability domain; "
                             "fixed-point mode is not supported")

    @property
    def label(self):
        s = self.algorithm
        if self.fixed_point is not None:
            s += f"-fx{self.fixed_point.I}.{self.fixed_point.F}"
        return s


@dataclass
class EdgeMessages:
    """Per-edge hard symbols and deviation-space soft vectors."""

    hard: np.ndarray     # (..., E)
    soft: np.ndarray     # (..., E, q), soft[..., 0] == 0

    def absolute(self):
        return check.reorder(self.soft, self.hard)

    @classmethod
    def from_absolute(cls, alpha, hard=None):
        if hard is None:
            hard = np.argmin(alpha, axis=-1)
        return cls(np.asarray(hard), check.reorder(alpha, hard))


@dataclass
class DecodeOutcome:
    word: np.ndarray
    converged: bool
    iterations_used: int
    syndrome_trace: list = field(default_factory=list)


class _Graph:
    """Index arrays derived from ``H`` that the decoder needs every
    iteration."""

    def __init__(self, H: ParityCheckMatrix):
        gf = H.gf
        q = gf.q
        sym = np.arange(q)
        self.H = H
        self.q = q
        self.edge_col = H.edge_col
        self.edge_coef = H.edge_coef
        # mul_perm[e, d] = h_e (x) d ; div_perm[e, x] = x / h_e
        self.mul_perm = gf.mul_table[H.edge_coef[:, None], sym[None, :]]
        self.div_perm = gf.mul_table[gf.inv_table[H.edge_coef][:, None],
                                     sym[None, :]]
        self.row_groups = [(d, edges) for d, (_, edges) in H.row_groups.items()
                           if d > 0]
        self.col_groups = [(cols, edges)
                           for d, (cols, edges) in H.col_groups.items() if d > 0]
        self.lut = build_lut(q)


@lru_cache(maxsize=16)
def _graph(H):
    return _Graph(H)


def _store(x, fmt):
    return x if fmt is None else quantize(x, fmt)


def init_messages(llrs, H: ParityCheckMatrix):
    """Initial V2C messages: ``a = h (x) z`` and the channel vector permuted
    into the check domain and re-indexed by deviation."""
    g = _graph(H)
    llrs = np.asarray(llrs, dtype=np.float64)
    z = np.argmin(llrs, axis=-1)
    alpha = np.take_along_axis(llrs[..., g.edge_col, :],
                               np.broadcast_to(g.div_perm,
                                               llrs.shape[:-2] + g.div_perm.shape),
                               axis=-1)
    hard = H.gf.mul_table[g.edge_coef, z[..., g.edge_col]]
    return EdgeMessages(hard, check.reorder(alpha, hard))


def _cn_update(g: _Graph, alpha, hard, cfg: DecoderConfig, counter, w):
    """All check nodes at once; returns absolute-space C2V ``(B, E, q)``."""
    alg = cfg.algorithm
    fmt = cfg.fixed_point
    beta = np.empty_like(alpha)
    for d, edges in g.row_groups:
        if d < 2:
            raise ValueError("parity-check matrix has a degree-1 row")
        a = alpha[:, edges]                       # (B, R, d, q)
        hd = hard[:, edges]                       # (B, R, d)
        if alg in ("SMSA1", "SMSA2"):
            steps = 1 if alg == "SMSA1" else 2
            soft = check.reorder(a, hd)
            if counter is None:
                b, _ = check.hard_outputs(hd)
                pre = check.smsa_stages(soft, g.lut, steps)[-1]
            else:
                b = np.empty_like(hd)
                pre = np.empty_like(soft)
                for ix in np.ndindex(hd.shape[:-1]):
                    b[ix], pre[ix] = counted_smsa(hd[ix], soft[ix], g.lut,
                                                  steps, counter, w)
            out = _store(cfg.c * pre, fmt)
            out[..., 0] = 0.0
            beta[:, edges] = check.reorder(out, b)
        elif alg in ("EMSA", "MMA"):
            mode = "sum" if alg == "EMSA" else "max"
            if counter is None:
                pre = check.forward_backward(a, mode)
            else:
                if mode != "sum":
                    raise ValueError("operation counting covers EMSA and SMSA only")
                pre = np.empty_like(a)
                for ix in np.ndindex(hd.shape[:-1]):
                    pre[ix] = counted_emsa(a[ix], counter, w)
            beta[:, edges] = _store(cfg.c * pre, fmt)
        else:
            prob = np.exp(-a)
            out = -np.log(check.qspa_check(prob))
            beta[:, edges] = out - out.min(axis=-1, keepdims=True)
    return beta


def _vn_update(g: _Graph, lam, beta, fmt):
    """Returns new absolute V2C messages, their hard symbols and the
    tentative decision."""
    bv = np.take_along_axis(beta, np.broadcast_to(g.mul_perm, beta.shape),
                            axis=-1)              # variable domain
    total = lam.copy()
    for cols, edges in g.col_groups:
        for k in range(edges.shape[1]):
            total[:, cols] += bv[:, edges[:, k]]
    ext = total[:, g.edge_col] - bv
    alpha_hat = np.take_along_axis(ext, np.broadcast_to(g.div_perm, ext.shape),
                                   axis=-1)
    hard = np.argmin(alpha_hat, axis=-1)
    alpha = alpha_hat - np.take_along_axis(alpha_hat, hard[..., None], axis=-1)
    alpha = _store(alpha, fmt)
    z = np.argmin(total, axis=-1)
    return alpha, hard, z


def vn_process(llr, c2v, coefs, gf, fixed_point=None):
    """Variable-node update for a single column.

    ``llr`` is the column's channel vector, ``c2v`` the absolute-space
    check-domain C2V vectors ``(d_v, q)`` and ``coefs`` the matching
    ``h_{i,j}``.  Returns ``(EdgeMessages, z_j)``.
    """
    llr = np.asarray(llr, dtype=np.float64)
    c2v = np.asarray(c2v, dtype=np.float64).reshape(-1, gf.q)
    coefs = np.asarray(coefs, dtype=np.int64)
    sym = np.arange(gf.q)
    bv = np.array([c2v[k][gf.mul_table[coefs[k], sym]]
                   for k in range(len(coefs))]).reshape(-1, gf.q)
    total = llr + bv.sum(axis=0)
    hard, soft = [], []
    for k in range(len(coefs)):
        ext = llr + bv.sum(axis=0) - bv[k]
        hat = np.empty(gf.q)
        hat[gf.mul_table[coefs[k], sym]] = ext
        a = int(np.argmin(hat))
        alpha = _store(hat - hat[a], fixed_point)
        hard.append(a)
        soft.append(check.reorder(alpha, a))
    msgs = EdgeMessages(np.array(hard, dtype=np.int64),
                        np.array(soft).reshape(-1, gf.q))
    return msgs, int(np.argmin(total))


def decode_batch(llrs, H: ParityCheckMatrix, cfg: DecoderConfig,
                 counter: OpCounter | None = None, w=None):
    """Decode ``B`` frames; ``llrs`` has shape ``(B, n, q)``.

    Returns ``(words, converged, iterations, traces)`` where ``traces[b]``
    lists the number of unsatisfied checks seen at each parity test.
    ``counter`` switches the check nodes to the instrumented scalar
    kernels; ``w`` is the sub-message width used for memory accounting
    (defaults to the fixed-point width, else 5).
    """
    g = _graph(H)
    fmt = cfg.fixed_point
    if w is None:
        w = fmt.w if fmt is not None else 5
    lam = np.asarray(llrs, dtype=np.float64)
    if lam.ndim != 3 or lam.shape[1:] != (H.n, H.gf.q):
        raise ValueError(f"expected LLRs of shape (B, {H.n}, {H.gf.q}), "
                         f"got {lam.shape}")
    lam = lam - lam.min(axis=-1, keepdims=True)
    lam = _store(lam, fmt)
    B = lam.shape[0]

    msgs = init_messages(lam, H)
    alpha = msgs.absolute()
    hard = msgs.hard
    z = np.argmin(lam, axis=-1)

    words = np.zeros((B, H.n), dtype=np.int64)
    converged = np.zeros(B, dtype=bool)
    iterations = np.zeros(B, dtype=np.int64)
    traces = [[] for _ in range(B)]
    active = np.arange(B)
    kappa = 0
    while active.size:
        weight = np.count_nonzero(syndrome(z, H), axis=-1)
        for k, b in enumerate(active):
            traces[b].append(int(weight[k]))
        ok = weight == 0
        finished = ok | (kappa == cfg.kappa_max)
        if finished.any():
            done = active[finished]
            words[done] = z[finished]
            converged[done] = ok[finished]
            iterations[done] = kappa
            keep = ~finished
            active, lam, alpha, hard, z = (active[keep], lam[keep],
                                           alpha[keep], hard[keep], z[keep])
            if not active.size:
                break
        beta = _cn_update(g, alpha, hard, cfg, counter, w)
        kappa += 1
        alpha, hard, z = _vn_update(g, lam, beta, fmt)
    return words, converged, iterations, traces


def decode(llrs, H: ParityCheckMatrix, cfg: DecoderConfig | None = None,
           counter: OpCounter | None = None):
    """Decode one frame from its ``(n, q)`` channel reliabilities."""
    cfg = cfg or DecoderConfig()
    words, conv, its, traces = decode_batch(np.asarray(llrs)[None], H, cfg,
                                            counter)
    return DecodeOutcome(words[0], bool(conv[0]), int(its[0]), traces[0])


def cn_smsa(hard, soft, cfg: DecoderConfig | None = None, lut: Lut | None = None):
    """Simplified min-sum update of one row (deviation-space in and out).

    Returns ``EdgeMessages`` holding ``b`` and the scaled soft vectors.
    """
    cfg = cfg or DecoderConfig("SMSA2")
    hard = np.asarray(hard, dtype=np.int64)
    soft = np.asarray(soft, dtype=np.float64)
    if soft.shape[-2] < 2:
        raise ValueError("a check of degree < 2 carries no extrinsic information")
    lut = lut or build_lut(soft.shape[-1])
    steps = 1 if cfg.algorithm == "SMSA1" else 2
    b, _ = check.hard_outputs(hard)
    out = _store(cfg.c * check.smsa_stages(soft, lut, steps)[-1],
                 cfg.fixed_point)
    out[..., 0] = 0.0
    return EdgeMessages(b, out)


def _cn_semiring(hard, soft, cfg, mode):
    hard = np.asarray(hard, dtype=np.int64)
    soft = np.asarray(soft, dtype=np.float64)
    beta = check.forward_backward(check.reorder(soft, hard), mode)
    beta = _store(cfg.c * beta, cfg.fixed_point)
    b, _ = check.hard_outputs(hard)
    return EdgeMessages(b, check.reorder(beta, b))


def cn_emsa(hard, soft, cfg: DecoderConfig | None = None):
    """Exact scaled min-sum update of one row via forward-backward."""
    return _cn_semiring(hard, soft, cfg or DecoderConfig("EMSA"), "sum")


def cn_mma(hard, soft, cfg: DecoderConfig | None = None):
    """Min-max update of one row via forward-backward."""
    return _cn_semiring(hard, soft, cfg or DecoderConfig("MMA"), "max")


def cn_qspa(prob):
    """Sum-product update of one row of probability vectors ``(d, q)``."""
    return check.qspa_check(prob)
