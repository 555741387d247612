"""Modulation, noisy channels and a-priori symbol reliabilities.

Reliabilities follow the min-sum convention: ``llr[j, d]`` is
``log P(X_j = z_j) - log P(X_j = d)`` where ``z_j`` is the most likely
symbol, so every vector is nonnegative with a zero at its ML symbol.

SNR is always E_b/N_0 per information bit, in dB, for unit-energy
constellations: ``sigma^2 = 1 / (2 * rate * bits_per_symbol * EbN0)`` per
real dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gf import GaloisField

MODULATIONS = ("bpsk", "qam64")
CHANNELS = ("awgn", "rayleigh")

# Standard deviation used for the noiseless limit (snr_db = inf).
NOISELESS_SIGMA = 1e-6


@dataclass(frozen=True)
class ChannelConfig:
    modulation: str = "bpsk"
    channel: str = "awgn"
    snr_db: float = 0.0
    rate: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.modulation not in MODULATIONS:
            raise ValueError(f"unknown modulation {self.modulation!r}")
        if self.channel not in CHANNELS:
            raise ValueError(f"unknown channel {self.channel!r}")
        if not 0 < self.rate <= 1:
            raise ValueError(f"code rate must be in (0, 1], got {self.rate}")

    @property
    def bits_per_channel_symbol(self):
        return 1 if self.modulation == "bpsk" else 6

    @property
    def sigma(self):
        return ebn0_to_sigma(self.snr_db, self.rate,
                             self.bits_per_channel_symbol)


def ebn0_to_sigma(snr_db, rate, bits_per_channel_symbol=1):
    """Per-dimension noise standard deviation for a given E_b/N_0 in dB."""
    if rate <= 0:
        raise ValueError(f"rate must be positive, got {rate}")
    if math.isinf(snr_db) and snr_db > 0:
        return NOISELESS_SIGMA
    ebn0 = 10.0 ** (snr_db / 10.0)
    return math.sqrt(1.0 / (2.0 * rate * bits_per_channel_symbol * ebn0))


def normalize_llrs(costs):
    """Subtract the per-symbol minimum so the ML entry is exactly zero."""
    costs = np.asarray(costs, dtype=np.float64)
    return costs - costs.min(axis=-1, keepdims=True)


def check_llrs(llrs, q):
    """Raise if ``llrs`` is not a valid ``(n, q)`` reliability array."""
    llrs = np.asarray(llrs)
    if llrs.ndim != 2 or llrs.shape[1] != q:
        raise ValueError(f"expected reliabilities of shape (n, {q}), "
                         f"got {llrs.shape}")
    if np.any(llrs < 0) or not np.all(llrs.min(axis=1) == 0):
        raise ValueError("reliability vectors must be nonnegative with a "
                         "zero minimum")


def hard_decision(llrs):
    """ML symbol per position (smallest label on ties)."""
    return np.argmin(llrs, axis=-1)


def bpsk_points(p):
    """``(q, p)`` array of +-1 levels: bit k of label d -> 1 - 2*bit."""
    labels = np.arange(1 << p)
    return 1.0 - 2.0 * ((labels[:, None] >> np.arange(p)) & 1)


def bpsk_symbol_llrs(y, sigma, p, fading=None):
    """Symbol reliabilities from received BPSK samples.

    ``y`` has shape ``(..., p)``: the p bits of each symbol, LSB first.
    ``fading`` (same shape) holds known real channel gains.
    """
    y = np.asarray(y, dtype=np.float64)
    pts = bpsk_points(p)                          # (q, p)
    h = 1.0 if fading is None else np.asarray(fading)[..., None, :]
    cost = ((y[..., None, :] - h * pts) ** 2).sum(axis=-1) / (2 * sigma ** 2)
    return normalize_llrs(cost)


def _gray(k):
    return k ^ (k >> 1)


def qam64_constellation():
    """Unit-average-energy Gray-labelled square 64-QAM.

    Bits 5..3 of the label select the in-phase level and bits 2..0 the
    quadrature level; on each axis the 3-bit value at position ``k`` of the
    levels ``-7, -5, ..., 7`` is the reflected Gray code of ``k``.
    """
    levels = np.arange(-7, 8, 2, dtype=np.float64)
    axis = np.empty(8)
    for k in range(8):
        axis[_gray(k)] = levels[k]
    labels = np.arange(64)
    pts = axis[labels >> 3] + 1j * axis[labels & 7]
    return pts / math.sqrt(42.0)


def qam64_symbol_llrs(y, sigma, fading=None):
    """Exact symbol reliabilities for complex received samples ``y``."""
    y = np.asarray(y, dtype=np.complex128)
    pts = qam64_constellation()
    h = 1.0 if fading is None else np.asarray(fading)[..., None]
    cost = np.abs(y[..., None] - h * pts) ** 2 / (2 * sigma ** 2)
    return normalize_llrs(cost)


def rayleigh_gains(rng, shape):
    """Rayleigh amplitudes with ``E[h^2] = 1``."""
    g = rng.standard_normal(shape + (2,))
    return np.sqrt((g ** 2).sum(axis=-1) / 2.0)


def transmit_llrs(word, cfg: ChannelConfig, gf: GaloisField, rng=None):
    """Send ``word`` over the configured channel and return ``(n, q)`` LLRs.

    ``rng`` is a :class:`numpy.random.Generator`; if omitted one is seeded
    from ``cfg.seed``.  Gaussian variates come from the generator's
    ``standard_normal`` (ziggurat), fading amplitudes from two of them.
    """
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    word = np.asarray(word, dtype=np.int64)
    sigma = cfg.sigma
    n = word.shape[0]
    if cfg.modulation == "bpsk":
        x = bpsk_points(gf.p)[word]                 # (n, p)
        fade = None
        if cfg.channel == "rayleigh":
            fade = rayleigh_gains(rng, x.shape)
            x = fade * x
        y = x + sigma * rng.standard_normal(x.shape)
        return bpsk_symbol_llrs(y, sigma, gf.p, fade)

    if gf.q != 64:
        raise ValueError("64-QAM maps one field symbol per constellation "
                         f"point and needs q = 64, got q = {gf.q}")
    x = qam64_constellation()[word]
    fade = None
    if cfg.channel == "rayleigh":
        fade = rayleigh_gains(rng, (n,))
        x = fade * x
    noise = rng.standard_normal((n, 2))
    y = x + sigma * (noise[:, 0] + 1j * noise[:, 1])
    return qam64_symbol_llrs(y, sigma, fade)
