"""Two-symbol decomposition table used by the simplified min-sum CN."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..gf import GaloisField


@dataclass(frozen=True, eq=False)
class Lut:
    """``pairs[delta - 1, f] = (D(0), D(1))`` with ``D(0) ^ D(1) == delta``.

    Row ``delta`` lists all ``q/2`` unordered pairs summing to ``delta``,
    sorted by their smaller element, so column 0 is always ``(0, delta)``.
    """

    q: int
    pairs: np.ndarray  # (q - 1, q // 2, 2)

    def row(self, delta):
        if not 0 < delta < self.q:
            raise ValueError(f"LUT rows are indexed by nonzero symbols, got {delta}")
        return [tuple(int(v) for v in pr) for pr in self.pairs[delta - 1]]

    def gather_index(self, half=False):
        """Index arrays ``(left, right)`` of shape ``(q, cols)``.

        Row 0 points at ``(0, 0)`` so combining a vector with zero at
        deviation 0 leaves that entry at zero.  ``half`` keeps only the
        first ``q/4`` columns.
        """
        cols = self.q // 4 if half else self.q // 2
        cols = max(cols, 1)
        left = np.zeros((self.q, cols), dtype=np.int64)
        right = np.zeros((self.q, cols), dtype=np.int64)
        left[1:] = self.pairs[:, :cols, 0]
        right[1:] = self.pairs[:, :cols, 1]
        return left, right

    def format(self):
        """Plain-text rendering, one row per nonzero symbol."""
        lines = []
        width = len(f"({self.q - 1},{self.q - 1})")
        head = "d\\f " + " ".join(f"{f:>{width}}" for f in range(self.q // 2))
        lines.append(head)
        for delta in range(1, self.q):
            cells = " ".join(f"({a},{b})".rjust(width) for a, b in self.row(delta))
            lines.append(f"{delta:>3} {cells}")
        return "\n".join(lines)


def build_lut(gf: GaloisField | int) -> Lut:
    """Enumerate every nonzero pair ``d1 < d2`` once and file it under
    ``d1 ^ d2``; each row then gets ``(0, delta)`` in front.
    """
    q = gf if isinstance(gf, int) else gf.q
    rows = [[(0, delta)] for delta in range(q)]
    for d1 in range(1, q):
        for d2 in range(d1 + 1, q):
            rows[d1 ^ d2].append((d1, d2))
    pairs = np.array(rows[1:], dtype=np.int64)
    pairs.setflags(write=False)
    return Lut(q, pairs)
