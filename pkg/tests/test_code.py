import numpy as np
import pytest

from nbldpc.code import (AlistqError, ParityCheckMatrix, dense_syndrome,
                         gf_rank, load_code, qc_expand, random_qc_base,
                         random_regular, read_alistq, syndrome, write_alistq)
from nbldpc.gf import GaloisField


def test_syndrome_trivial(gf8):
    H = ParityCheckMatrix.from_dense([[1, 1]], gf8)
    for d in range(8):
        assert list(syndrome([d, d], H)) == [0]
    H = random_regular(24, 2, 4, gf8, seed=3)
    assert not syndrome(np.zeros(24, dtype=int), H).any()


def test_syndrome_matches_dense_oracle(gf16, rng):
    for trial in range(10):
        dense = rng.integers(0, 16, size=(5, 9)) * (rng.random((5, 9)) < 0.5)
        H = ParityCheckMatrix.from_dense(dense, gf16)
        z = rng.integers(0, 16, size=9)
        assert np.array_equal(syndrome(z, H), dense_syndrome(z, dense, gf16))
    batch = rng.integers(0, 16, size=(4, 9))
    assert np.array_equal(syndrome(batch, H)[2], dense_syndrome(batch[2], dense, gf16))


def test_syndrome_length_mismatch(gf8):
    H = ParityCheckMatrix.from_dense([[1, 1, 0]], gf8)
    with pytest.raises(ValueError):
        syndrome([0, 0], H)


def _null_space_word(H, rng):
    """A random codeword found by solving for pivot columns."""
    gf = H.gf
    a = H.to_dense().copy()
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        rows = r + np.flatnonzero(a[r:, c])
        if rows.size == 0:
            continue
        a[[r, rows[0]]] = a[[rows[0], r]]
        a[r] = gf.mul_table[gf.inv_table[a[r, c]], a[r]]
        for i in range(m):
            if i != r and a[i, c]:
                a[i] ^= gf.mul_table[a[i, c], a[r]]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivots]
    x = np.zeros(n, dtype=np.int64)
    x[free] = rng.integers(0, gf.q, size=len(free))
    for row, c in enumerate(pivots):
        acc = 0
        for f in free:
            acc ^= gf.mul(int(a[row, f]), int(x[f]))
        x[c] = acc
    return x


def test_codeword_has_zero_syndrome(gf8, rng):
    H = random_regular(36, 3, 6, gf8, seed=7)
    for _ in range(5):
        x = _null_space_word(H, rng)
        assert not syndrome(x, H).any()


def test_qc_identity(gf8):
    H = qc_expand([[(0, 1)]], 3, gf8)
    assert np.array_equal(H.to_dense(), np.eye(3, dtype=int))


def test_qc_shape_of_620_310_analogue():
    gf = GaloisField(5)
    base = random_qc_base(10, 20, 31, gf, seed=0)
    H = qc_expand(base, 31, gf)
    assert (H.m, H.n) == (310, 620)
    assert set(H.row_weights) == {20}
    assert set(H.col_weights) == {10}


def test_qc_weights_follow_base(gf8):
    base = random_qc_base(3, 5, 7, gf8, seed=2, density=0.6)
    H = qc_expand(base, 7, gf8)
    nz = np.array([[d is not None for d in row] for row in base])
    assert np.array_equal(H.row_weights.reshape(3, 7)[:, 0], nz.sum(1))
    assert np.array_equal(H.col_weights.reshape(5, 7)[:, 0], nz.sum(0))
    # every descriptor's coefficient appears on its block
    dense = H.to_dense()
    for I, row in enumerate(base):
        for J, desc in enumerate(row):
            blk = dense[I * 7:(I + 1) * 7, J * 7:(J + 1) * 7]
            if desc is None:
                assert not blk.any()
            else:
                s, c = desc
                assert blk[0, s] == c and np.count_nonzero(blk) == 7


@pytest.mark.parametrize("desc", [(3, 1), (-1, 1), (0, 0), (0, 8)])
def test_qc_bad_descriptor(gf8, desc):
    with pytest.raises(ValueError):
        qc_expand([[desc]], 3, gf8)


def test_random_regular(gf8):
    H = random_regular(12, 2, 4, gf8, seed=0)
    assert H.m == 6
    assert set(H.row_weights) == {4} and set(H.col_weights) == {2}
    assert H == random_regular(12, 2, 4, gf8, seed=0)
    assert H.count_4cycles() >= 0
    with pytest.raises(ValueError):
        random_regular(10, 3, 4, gf8, seed=0)


def test_4cycle_count(gf8):
    # rows 0 and 1 share columns 0 and 1 -> exactly one 4-cycle
    H = ParityCheckMatrix.from_dense([[1, 1, 0], [1, 1, 1], [0, 0, 1]], gf8)
    assert H.count_4cycles() == 1


def test_rank(gf8):
    dense = np.array([[1, 2, 3], [2, 4, 6]])  # row 2 = 2 * row 1 in GF(8)
    assert gf8.mul(2, 3) == 6
    assert gf_rank(dense, gf8) == 1
    H = ParityCheckMatrix.from_dense(dense, gf8)
    assert H.r == 2


def test_alistq_round_trip(tmp_path, gf16):
    H = random_regular(30, 2, 5, gf16, seed=4)
    path = tmp_path / "h.alistq"
    write_alistq(H, path)
    assert read_alistq(path) == H
    base = random_qc_base(2, 3, 5, gf16, seed=1, density=0.7)
    Hq = qc_expand(base, 5, gf16)
    write_alistq(Hq, path)
    assert read_alistq(path) == Hq


HAND_WRITTEN = """\
3 2 4
2 2
2 1 1
2 2
1 3 2 2
2 2 0 0
1 1 0 0
1 3 3 1
1 2 2 2
"""


def test_alistq_hand_written(tmp_path):
    # H = [[3, 0, 1], [2, 2, 0]] over GF(4)
    path = tmp_path / "small.alistq"
    path.write_text(HAND_WRITTEN)
    H = read_alistq(path)
    assert (H.m, H.n, H.gf.q) == (2, 3, 4)
    assert np.array_equal(H.to_dense(), [[3, 0, 1], [2, 2, 0]])


def test_alistq_rejects_bad_coefficient(tmp_path):
    text = HAND_WRITTEN.replace("3 2 4", "3 2 8").replace("1 3 3 1", "1 3 3 9")
    path = tmp_path / "bad.alistq"
    path.write_text(text)
    with pytest.raises(AlistqError) as err:
        read_alistq(path)
    assert err.value.lineno == 8


def test_alistq_rejects_zero_and_mismatch(tmp_path):
    path = tmp_path / "bad.alistq"
    path.write_text(HAND_WRITTEN.replace("1 1 0 0", "1 0 0 0"))
    with pytest.raises(AlistqError, match="line 7"):
        read_alistq(path)
    path.write_text(HAND_WRITTEN.replace("2 2 0 0", "2 3 0 0"))
    with pytest.raises(AlistqError, match="different"):
        read_alistq(path)
    path.write_text("3 2 4\n2 2\n1 2\n")
    with pytest.raises(AlistqError):
        read_alistq(path)


def test_load_code_specs(gf8):
    H = load_code("regular:n=24,dv=3,dc=6,p=3,seed=5")
    assert H == random_regular(24, 3, 6, GaloisField(3), seed=5)
    Hq = load_code("qc:rows=2,cols=4,z=5,p=3,seed=1")
    assert (Hq.m, Hq.n) == (10, 20)
    with pytest.raises(ValueError):
        load_code("nonsense:x=1")
