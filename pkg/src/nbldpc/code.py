"""Sparse q-ary parity-check matrices and their Tanner graphs."""

from __future__ import annotations

import hashlib
import io
import os
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .gf import GaloisField


@dataclass(frozen=True, eq=False)
class ParityCheckMatrix:
    """An ``m x n`` sparse parity-check matrix over GF(q).

    The nonzero entries are stored edge-wise in row-major order: edge ``e``
    connects check ``edge_row[e]`` with variable ``edge_col[e]`` and carries
    coefficient ``edge_coef[e]``.  Within a row, columns are strictly
    increasing.
    """

    m: int
    n: int
    gf: GaloisField
    edge_row: np.ndarray
    edge_col: np.ndarray
    edge_coef: np.ndarray

    def __post_init__(self):
        row = np.asarray(self.edge_row, dtype=np.int64)
        col = np.asarray(self.edge_col, dtype=np.int64)
        coef = np.asarray(self.edge_coef, dtype=np.int64)
        if not (row.shape == col.shape == coef.shape) or row.ndim != 1:
            raise ValueError("edge arrays must be 1-D and of equal length")
        if row.size:
            if row.min() < 0 or row.max() >= self.m:
                raise ValueError("row index out of range")
            if col.min() < 0 or col.max() >= self.n:
                raise ValueError("column index out of range")
            if coef.min() <= 0 or coef.max() >= self.gf.q:
                raise ValueError(
                    f"coefficients must lie in GF({self.gf.q}) minus 0")
            key = row * self.n + col
            if np.any(np.diff(key) <= 0):
                raise ValueError(
                    "edges must be row-major with strictly increasing columns")
        for name, arr in (("edge_row", row), ("edge_col", col),
                          ("edge_coef", coef)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def from_entries(cls, m, n, gf, entries):
        """Build from an iterable of ``(row, col, coef)`` triples in any order."""
        entries = sorted((int(i), int(j), int(h)) for i, j, h in entries)
        if not entries:
            z = np.zeros(0, dtype=np.int64)
            return cls(m, n, gf, z, z, z)
        arr = np.array(entries, dtype=np.int64)
        return cls(m, n, gf, arr[:, 0], arr[:, 1], arr[:, 2])

    @classmethod
    def from_dense(cls, dense, gf):
        dense = np.asarray(dense, dtype=np.int64)
        rows, cols = np.nonzero(dense)
        return cls(dense.shape[0], dense.shape[1], gf, rows, cols,
                   dense[rows, cols])

    def to_dense(self):
        h = np.zeros((self.m, self.n), dtype=np.int64)
        h[self.edge_row, self.edge_col] = self.edge_coef
        return h

    def __eq__(self, other):
        return (isinstance(other, ParityCheckMatrix)
                and (self.m, self.n, self.gf) == (other.m, other.n, other.gf)
                and np.array_equal(self.edge_row, other.edge_row)
                and np.array_equal(self.edge_col, other.edge_col)
                and np.array_equal(self.edge_coef, other.edge_coef))

    __hash__ = object.__hash__

    @property
    def num_edges(self):
        return self.edge_row.size

    @cached_property
    def row_weights(self):
        return np.bincount(self.edge_row, minlength=self.m)

    @cached_property
    def col_weights(self):
        return np.bincount(self.edge_col, minlength=self.n)

    @cached_property
    def row_ptr(self):
        ptr = np.zeros(self.m + 1, dtype=np.int64)
        np.cumsum(self.row_weights, out=ptr[1:])
        return ptr

    def row(self, i):
        """``N_i`` as ``(columns, coefficients)``."""
        s, e = self.row_ptr[i], self.row_ptr[i + 1]
        return self.edge_col[s:e], self.edge_coef[s:e]

    @cached_property
    def col_edges(self):
        """Edge indices grouped by column: list of arrays (``M_j`` order)."""
        order = np.argsort(self.edge_col, kind="stable")
        ptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(self.col_weights, out=ptr[1:])
        return [order[ptr[j]:ptr[j + 1]] for j in range(self.n)]

    def col(self, j):
        """``M_j`` as ``(rows, coefficients)``."""
        e = self.col_edges[j]
        return self.edge_row[e], self.edge_coef[e]

    @cached_property
    def row_groups(self):
        """Rows bucketed by degree: ``{d: (row_ids, edge_ids[R, d])}``."""
        groups = {}
        for d in np.unique(self.row_weights):
            rows = np.flatnonzero(self.row_weights == d)
            edges = self.row_ptr[rows][:, None] + np.arange(d)
            groups[int(d)] = (rows, edges)
        return groups

    @cached_property
    def col_groups(self):
        """Columns bucketed by degree: ``{d: (col_ids, edge_ids[C, d])}``."""
        groups = {}
        ce = self.col_edges
        for d in np.unique(self.col_weights):
            cols = np.flatnonzero(self.col_weights == d)
            edges = (np.array([ce[j] for j in cols], dtype=np.int64)
                     .reshape(len(cols), d))
            groups[int(d)] = (cols, edges)
        return groups

    @cached_property
    def rank(self):
        return gf_rank(self.to_dense(), self.gf)

    @property
    def r(self):
        """Code dimension ``n - rank(H)``."""
        return self.n - self.rank

    @property
    def rate(self):
        return self.r / self.n

    def count_4cycles(self):
        """Number of length-4 cycles in the Tanner graph."""
        a = np.zeros((self.m, self.n), dtype=np.int64)
        a[self.edge_row, self.edge_col] = 1
        shared = a @ a.T
        np.fill_diagonal(shared, 0)
        return int((shared * (shared - 1) // 2).sum() // 2)

    def digest(self):
        """SHA-256 of the alistq serialization."""
        buf = io.StringIO()
        _write_alistq(self, buf)
        return hashlib.sha256(buf.getvalue().encode()).hexdigest()


def gf_rank(dense, gf):
    """Rank of a dense matrix over GF(q) by Gaussian elimination."""
    a = np.array(dense, dtype=np.int64)
    m, n = a.shape
    rank = 0
    for c in range(n):
        if rank == m:
            break
        piv = np.flatnonzero(a[rank:, c])
        if piv.size == 0:
            continue
        p = rank + piv[0]
        if p != rank:
            a[[rank, p]] = a[[p, rank]]
        a[rank] = gf.mul_table[gf.inv_table[a[rank, c]], a[rank]]
        below = rank + 1 + np.flatnonzero(a[rank + 1:, c])
        if below.size:
            factors = a[below, c]
            a[below] ^= gf.mul_table[factors[:, None], a[rank][None, :]]
        rank += 1
    return rank


def syndrome(z, H: ParityCheckMatrix):
    """``z (x) H^T``; also accepts a batch of words with shape ``(B, n)``."""
    z = np.asarray(z, dtype=np.int64)
    if z.shape[-1] != H.n:
        raise ValueError(f"word length {z.shape[-1]} != n = {H.n}")
    if z.size and (z.min() < 0 or z.max() >= H.gf.q):
        raise ValueError(f"word contains symbols outside GF({H.gf.q})")
    prod = H.gf.mul_table[H.edge_coef, z[..., H.edge_col]]
    out = np.zeros(z.shape[:-1] + (H.m,), dtype=np.int64)
    for d, (rows, edges) in H.row_groups.items():
        if d == 0:
            continue
        out[..., rows] = np.bitwise_xor.reduce(prod[..., edges], axis=-1)
    return out


def dense_syndrome(z, dense, gf):
    """Straight nested-loop ``z (x) H^T`` used to cross-check :func:`syndrome`."""
    m, n = np.shape(dense)
    s = []
    for i in range(m):
        acc = 0
        for j in range(n):
            acc ^= gf.mul(int(dense[i][j]), int(z[j]))
        s.append(acc)
    return np.array(s, dtype=np.int64)


ZERO = None


def qc_expand(base, circ_size: int, gf: GaloisField) -> ParityCheckMatrix:
    """Expand a base matrix of circulant descriptors.

    ``base[I][J]`` is either ``None`` (the all-zero block) or a pair
    ``(shift, coef)``: block row ``r`` has its nonzero at column
    ``(r + shift) mod circ_size``, equal to ``coef``.
    """
    rows_b = len(base)
    cols_b = len(base[0]) if rows_b else 0
    entries = []
    for bi, brow in enumerate(base):
        if len(brow) != cols_b:
            raise ValueError("base matrix rows have unequal lengths")
        for bj, desc in enumerate(brow):
            if desc is None:
                continue
            shift, coef = desc
            if not 0 <= shift < circ_size:
                raise ValueError(
                    f"shift {shift} at ({bi}, {bj}) outside [0, {circ_size})")
            if not 0 < coef < gf.q:
                raise ValueError(
                    f"coefficient {coef} at ({bi}, {bj}) is not a nonzero "
                    f"element of GF({gf.q})")
            for r in range(circ_size):
                entries.append((bi * circ_size + r,
                                bj * circ_size + (r + shift) % circ_size,
                                coef))
    return ParityCheckMatrix.from_entries(rows_b * circ_size,
                                          cols_b * circ_size, gf, entries)


def random_qc_base(rows, cols, circ_size, gf, seed, density=1.0):
    """Random shifts and nonzero coefficients for :func:`qc_expand`.

    With ``density < 1`` each block is independently ZERO with probability
    ``1 - density``.
    """
    rng = np.random.default_rng(seed)
    base = []
    for _ in range(rows):
        brow = []
        for _ in range(cols):
            if density < 1.0 and rng.random() >= density:
                brow.append(ZERO)
            else:
                brow.append((int(rng.integers(circ_size)),
                             int(rng.integers(1, gf.q))))
        base.append(brow)
    return base


def random_regular(n: int, d_v: int, d_c: int, gf: GaloisField,
                   seed: int) -> ParityCheckMatrix:
    """Random ``(d_v, d_c)``-regular matrix via socket matching.

    Parallel edges are removed by swapping sockets, so the result is
    exactly regular.  Coefficients are uniform on the nonzero elements.
    No girth conditioning is done; see :meth:`ParityCheckMatrix.count_4cycles`.
    """
    if n <= 0 or d_v <= 0 or d_c <= 0:
        raise ValueError("n, d_v and d_c must be positive")
    if (n * d_v) % d_c:
        raise ValueError(f"n*d_v = {n * d_v} is not divisible by d_c = {d_c}")
    m = n * d_v // d_c
    if d_c > n or d_v > m:
        raise ValueError("degrees too large for a simple graph")
    rng = np.random.default_rng(seed)
    var_sockets = np.repeat(np.arange(n), d_v)
    chk_sockets = np.repeat(np.arange(m), d_c)
    perm = rng.permutation(var_sockets.size)
    cols = var_sockets[perm]
    for _ in range(10000):
        key = chk_sockets * n + cols
        order = np.argsort(key, kind="stable")
        dup = order[1:][np.diff(key[order]) == 0]
        if dup.size == 0:
            break
        for s in dup:
            t = rng.integers(cols.size)
            cols[s], cols[t] = cols[t], cols[s]
    else:
        raise RuntimeError("could not remove parallel edges")
    coefs = rng.integers(1, gf.q, size=cols.size)
    return ParityCheckMatrix.from_entries(
        m, n, gf, zip(chk_sockets, cols, coefs))


class AlistqError(ValueError):
    """Malformed alistq file; ``lineno`` is 1-based."""

    def __init__(self, msg, lineno=None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}" if lineno else msg)


def _write_alistq(H, f):
    cw, rw = H.col_weights, H.row_weights
    maxc = int(cw.max()) if H.n else 0
    maxr = int(rw.max()) if H.m else 0
    f.write(f"{H.n} {H.m} {H.gf.q}\n")
    f.write(f"{maxc} {maxr}\n")
    f.write(" ".join(map(str, cw)) + "\n")
    f.write(" ".join(map(str, rw)) + "\n")
    for j in range(H.n):
        rows, coefs = H.col(j)
        items = [f"{i + 1} {h}" for i, h in zip(rows, coefs)]
        items += ["0 0"] * (maxc - len(items))
        f.write(" ".join(items) + "\n")
    for i in range(H.m):
        cols, coefs = H.row(i)
        items = [f"{j + 1} {h}" for j, h in zip(cols, coefs)]
        items += ["0 0"] * (maxr - len(items))
        f.write(" ".join(items) + "\n")


def write_alistq(H: ParityCheckMatrix, path):
    with open(path, "w") as f:
        _write_alistq(H, f)


def _ints(line, lineno):
    try:
        return [int(t) for t in line.split()]
    except ValueError:
        raise AlistqError("expected whitespace-separated integers", lineno)


def read_alistq(path, gf: GaloisField | None = None) -> ParityCheckMatrix:
    """Parse an alistq file.

    The field is taken from ``gf`` if given (its order must match the
    header), else built with the default primitive polynomial.
    """
    with open(path) as f:
        lines = [(k + 1, ln) for k, ln in enumerate(f) if ln.strip()]
    if len(lines) < 4:
        raise AlistqError("file too short for alistq header")

    it = iter(lines)
    lineno, ln = next(it)
    hdr = _ints(ln, lineno)
    if len(hdr) != 3:
        raise AlistqError("header must be 'n m q'", lineno)
    n, m, q = hdr
    p = q.bit_length() - 1
    if q < 4 or q != 1 << p or p > 8:
        raise AlistqError(f"q = {q} is not 2^p with 2 <= p <= 8", lineno)
    if gf is None:
        gf = GaloisField(p)
    elif gf.q != q:
        raise AlistqError(f"file declares q={q} but field has q={gf.q}",
                          lineno)

    lineno, ln = next(it)
    mx = _ints(ln, lineno)
    if len(mx) != 2:
        raise AlistqError("second line must be 'max_col_weight max_row_weight'",
                          lineno)
    maxc, maxr = mx
    lineno, ln = next(it)
    cw = _ints(ln, lineno)
    if len(cw) != n or max(cw, default=0) > maxc or min(cw, default=0) < 0:
        raise AlistqError("column weight line inconsistent with header", lineno)
    lineno, ln = next(it)
    rw = _ints(ln, lineno)
    if len(rw) != m or max(rw, default=0) > maxr or min(rw, default=0) < 0:
        raise AlistqError("row weight line inconsistent with header", lineno)
    if sum(cw) != sum(rw):
        raise AlistqError("column and row weights disagree on edge count",
                          lineno)

    def block(weight, limit, bound, lineno, ln):
        vals = _ints(ln, lineno)
        if len(vals) % 2 or len(vals) // 2 not in (weight, limit):
            raise AlistqError(
                f"expected {weight} or {limit} 'index coefficient' pairs",
                lineno)
        out = []
        for k in range(0, len(vals), 2):
            idx, h = vals[k], vals[k + 1]
            if k // 2 >= weight:
                if (idx, h) != (0, 0):
                    raise AlistqError("padding entries must be '0 0'", lineno)
                continue
            if not 1 <= idx <= bound:
                raise AlistqError(f"index {idx} outside [1, {bound}]", lineno)
            if not 0 < h < q:
                raise AlistqError(
                    f"coefficient {h} is not a nonzero element of GF({q})",
                    lineno)
            out.append((idx - 1, h))
        return out

    by_col = set()
    by_row = set()
    try:
        for j in range(n):
            lineno, ln = next(it)
            for i, h in block(cw[j], maxc, m, lineno, ln):
                by_col.add((i, j, h))
        for i in range(m):
            lineno, ln = next(it)
            row = block(rw[i], maxr, n, lineno, ln)
            cols = [j for j, _ in row]
            if len(set(cols)) != len(cols):
                raise AlistqError("duplicate column in row block", lineno)
            for j, h in row:
                by_row.add((i, j, h))
    except StopIteration:
        raise AlistqError("unexpected end of file", lineno)
    extra = next(it, None)
    if extra is not None:
        raise AlistqError("trailing data after row blocks", extra[0])
    if by_col != by_row:
        raise AlistqError("column blocks and row blocks describe different "
                          "matrices")
    return ParityCheckMatrix.from_entries(m, n, gf, by_row)


def load_code(spec: str, gf: GaloisField | None = None) -> ParityCheckMatrix:
    """Resolve a code description used by the CLI and the simulator.

    Accepted forms: a path to an alistq file;
    ``regular:n=192,dv=3,dc=6,p=3,seed=1``;
    ``qc:rows=10,cols=20,z=31,p=5,seed=0``.
    """
    if os.path.exists(spec):
        return read_alistq(spec, gf)
    kind, _, rest = spec.partition(":")
    params = {}
    for item in filter(None, rest.split(",")):
        k, _, v = item.partition("=")
        params[k.strip()] = v.strip()
    try:
        if kind == "regular":
            field_ = gf or GaloisField(int(params["p"]))
            return random_regular(int(params["n"]), int(params["dv"]),
                                  int(params["dc"]), field_,
                                  int(params.get("seed", 0)))
        if kind == "qc":
            field_ = gf or GaloisField(int(params["p"]))
            z = int(params["z"])
            base = random_qc_base(int(params["rows"]), int(params["cols"]), z,
                                  field_, int(params.get("seed", 0)),
                                  float(params.get("density", 1.0)))
            return qc_expand(base, z, field_)
    except KeyError as exc:
        raise ValueError(f"code spec {spec!r} is missing {exc}") from None
    raise ValueError(f"unrecognised code spec {spec!r}")
