"""Unsigned fixed-point storage format for soft sub-messages."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FixedPointFormat:
    """``I`` integer bits and ``F`` fraction bits, unsigned.

    Representable values are ``0, 2^-F, ..., 2^I - 2^-F``.
    """

    I: int = 3
    F: int = 2

    def __post_init__(self):
        if self.I < 0 or self.F < 0 or self.I + self.F < 1:
            raise ValueError(f"invalid fixed-point format I={self.I}, F={self.F}")

    @property
    def w(self):
        return self.I + self.F

    @property
    def step(self):
        return 2.0 ** -self.F

    @property
    def max_value(self):
        return 2.0 ** self.I - self.step

    @classmethod
    def parse(cls, text):
        """``"3,2"`` -> ``FixedPointFormat(I=3, F=2)``."""
        i, f = (int(t) for t in text.split(","))
        return cls(i, f)


def quantize(x, fmt: FixedPointFormat):
    """Round to the nearest grid point (ties away from zero) and saturate.

    Negative inputs clamp to 0.  Works on scalars and arrays.
    """
    scaled = np.asarray(x, dtype=np.float64) * (1 << fmt.F)
    # for nonnegative values floor(v + 0.5) rounds half away from zero
    q = np.floor(np.maximum(scaled, 0.0) + 0.5) / (1 << fmt.F)
    q = np.minimum(q, fmt.max_value)
    return float(q) if q.ndim == 0 else q
