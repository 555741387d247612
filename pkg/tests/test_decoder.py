import numpy as np
import pytest

from conftest import random_row
from nbldpc.code import ParityCheckMatrix, random_regular, syndrome
from nbldpc.decoders import (DecoderConfig, FixedPointFormat, build_lut,
                             decode, decode_batch, init_messages, vn_process)
from nbldpc.decoders.check import reorder, smsa_stages
from nbldpc.decoders.counting import OpCounter, counted_emsa, counted_smsa
from nbldpc.decoders.check import forward_backward
from nbldpc.gf import GaloisField


@pytest.fixture(scope="module")
def code():
    return random_regular(48, 2, 4, GaloisField(3), seed=3)


def codeword(H, seed):
    """Random codeword by back-substitution through the dense matrix."""
    gf = H.gf
    A = H.to_dense().copy()
    m, n = A.shape
    rng = np.random.default_rng(seed)
    pivots, r = [], 0
    for c in range(n):
        rows = [i for i in range(r, m) if A[i, c]]
        if not rows:
            continue
        A[[r, rows[0]]] = A[[rows[0], r]]
        A[r] = gf.mul_table[gf.inv_table[A[r, c]], A[r]]
        for i in range(m):
            if i != r and A[i, c]:
                A[i] ^= gf.mul_table[A[i, c], A[r]]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    x = np.zeros(n, dtype=np.int64)
    x[free] = rng.integers(0, gf.q, len(free))
    for i, c in enumerate(pivots):
        acc = 0
        for f in free:
            acc ^= int(gf.mul_table[A[i, f], x[f]])
        x[c] = acc
    assert not syndrome(x, H).any()
    return x


def clean_llrs(word, q, gap=6.0):
    llr = np.full((len(word), q), gap)
    llr[np.arange(len(word)), word] = 0.0
    return llr


def test_init_messages_identity_coefficient():
    gf = GaloisField(2)
    H = ParityCheckMatrix.from_dense(np.array([[1, 1]]), gf)
    lam = np.array([[0, 2, 5, 7], [3, 0, 1, 4]], dtype=float)
    msgs = init_messages(lam, H)
    assert list(msgs.hard) == [0, 1]
    assert np.array_equal(msgs.soft[0], [0, 2, 5, 7])
    assert np.array_equal(msgs.absolute()[1], lam[1])


def test_init_messages_general_coefficient(gf8):
    H = ParityCheckMatrix.from_dense(np.array([[3, 5, 6]]), gf8)
    rng = np.random.default_rng(2)
    lam = rng.random((3, 8))
    lam -= lam.min(axis=1, keepdims=True)
    msgs = init_messages(lam, H)
    for e, h in enumerate([3, 5, 6]):
        alpha = np.empty(8)
        for X in range(8):
            alpha[gf8.mul(h, X)] = lam[e, X]
        assert msgs.hard[e] == gf8.mul(h, int(np.argmin(lam[e])))
        assert np.array_equal(msgs.absolute()[e], alpha)


def test_vn_process_by_hand():
    gf = GaloisField(2)
    llr = np.array([0.0, 3.0, 1.0, 4.0])
    c2v = np.array([[0.0, 0.0, 2.0, 2.0], [0.0, 1.0, 0.0, 5.0]])
    msgs, z = vn_process(llr, c2v, [1, 1], gf)
    # totals: [0, 4, 3, 11]
    assert z == 0
    assert np.array_equal(msgs.absolute()[0], [0, 4, 1, 9])
    assert np.array_equal(msgs.absolute()[1], [0, 3, 3, 6])


def test_vn_process_extrinsic_is_nonnegative_and_normalized(gf16, rng):
    llr = rng.random(16) * 4
    c2v = rng.random((3, 16)) * 4
    msgs, z = vn_process(llr, c2v, [2, 7, 11], gf16)
    assert np.all(msgs.soft >= 0)
    assert not msgs.soft[:, 0].any()
    fx = FixedPointFormat(3, 2)
    qm, _ = vn_process(llr, c2v, [2, 7, 11], gf16, fx)
    assert np.all(qm.soft * 4 == np.round(qm.soft * 4))


@pytest.mark.parametrize("alg", ["QSPA", "EMSA", "MMA", "SMSA1", "SMSA2"])
def test_noiseless_codeword_converges_immediately(code, alg):
    x = codeword(code, 1)
    out = decode(clean_llrs(x, 8), code, DecoderConfig(alg))
    assert out.converged and out.iterations_used == 0
    assert np.array_equal(out.word, x)
    assert out.syndrome_trace == [0]


def test_noiseless_fixed_point(code):
    x = codeword(code, 2)
    cfg = DecoderConfig("SMSA2", fixed_point=FixedPointFormat(3, 2))
    out = decode(clean_llrs(x, 8, gap=20.0), code, cfg)
    assert out.converged and np.array_equal(out.word, x)


def test_iteration_cap(code):
    rng = np.random.default_rng(0)
    llrs = rng.random((code.n, 8)) * 0.01
    out = decode(llrs, code, DecoderConfig("SMSA2", kappa_max=4))
    assert not out.converged
    assert out.iterations_used == 4
    assert len(out.syndrome_trace) == 5


@pytest.mark.parametrize("alg", ["SMSA2", "SMSA1", "EMSA", "QSPA", "MMA"])
def test_single_symbol_error_corrected(code, alg):
    x = codeword(code, 5)
    llr = clean_llrs(x, 8, gap=4.0)
    j = 7
    wrong = x[j] ^ 3
    llr[j] = 2.0
    llr[j, wrong] = 0.0
    llr[j, x[j]] = 0.5
    out = decode(llr, code, DecoderConfig(alg))
    assert out.converged and out.iterations_used <= 3
    assert np.array_equal(out.word, x)


def test_batch_matches_single_frames(code):
    rng = np.random.default_rng(4)
    frames = []
    for s in range(6):
        x = codeword(code, 10 + s)
        llr = clean_llrs(x, 8, gap=2.0) + rng.normal(0, 0.8, (code.n, 8))
        frames.append(llr - llr.min(axis=1, keepdims=True))
    frames = np.stack(frames)
    cfg = DecoderConfig("EMSA", kappa_max=10)
    words, conv, its, traces = decode_batch(frames, code, cfg)
    for b in range(len(frames)):
        one = decode(frames[b], code, cfg)
        assert np.array_equal(one.word, words[b])
        assert one.converged == conv[b] and one.iterations_used == its[b]
        assert one.syndrome_trace == traces[b]


def test_converged_words_satisfy_checks(code):
    rng = np.random.default_rng(6)
    llr = np.abs(rng.normal(0, 1.5, (20, code.n, 8)))
    words, conv, _, _ = decode_batch(llr, code, DecoderConfig("SMSA2"))
    assert not syndrome(words[conv], code).any()


def test_counted_kernels_match_vectorized():
    rng = np.random.default_rng(11)
    for q in (4, 8, 16):
        lut = build_lut(q)
        for _ in range(10):
            hard, soft = random_row(rng, q, int(rng.integers(2, 7)))
            for steps in (1, 2):
                b, pre = counted_smsa(hard, soft, lut, steps, OpCounter())
                assert np.array_equal(pre, smsa_stages(soft, lut, steps)[-1])
            alpha = reorder(soft, hard)
            assert np.array_equal(counted_emsa(alpha, OpCounter()),
                                  forward_backward(alpha, "sum"))


def test_counted_decoder_path_matches_fast_path(code):
    rng = np.random.default_rng(12)
    llr = np.abs(rng.normal(0, 1.5, (2, code.n, 8)))
    for alg in ("SMSA1", "SMSA2", "EMSA"):
        cfg = DecoderConfig(alg, kappa_max=3)
        fast = decode_batch(llr, code, cfg)
        slow = decode_batch(llr, code, cfg, counter=OpCounter())
        assert np.array_equal(fast[0], slow[0])
        assert np.array_equal(fast[2], slow[2])


def test_config_validation():
    assert DecoderConfig("smsa-2").algorithm == "SMSA2"
    assert DecoderConfig("EMSA").c == 0.73
    assert DecoderConfig("SMSA2", fixed_point=FixedPointFormat()).label == "SMSA2-fx3.2"
    for bad in [dict(algorithm="bp"), dict(c=0.0), dict(c=1.5),
                dict(kappa_max=0),
                dict(algorithm="QSPA", fixed_point=FixedPointFormat())]:
        with pytest.raises(ValueError):
            DecoderConfig(**bad)


def test_llr_shape_checked(code):
    with pytest.raises(ValueError):
        decode_batch(np.zeros((1, code.n, 4)), code, DecoderConfig())


@pytest.mark.parametrize("fmt", [None, FixedPointFormat(3, 2)])
def test_batched_vn_matches_column_reference(code, fmt):
    from nbldpc.decoders.decoder import _graph, _vn_update
    g = _graph(code)
    rng = np.random.default_rng(13)
    lam = np.abs(rng.normal(0, 2, (1, code.n, 8)))
    beta = np.abs(rng.normal(0, 2, (1, len(code.edge_col), 8)))
    alpha, hard, z = _vn_update(g, lam, beta, fmt)
    for j in range(code.n):
        edges = np.flatnonzero(code.edge_col == j)
        msgs, zj = vn_process(lam[0, j], beta[0, edges], code.edge_coef[edges],
                              code.gf, fmt)
        assert z[0, j] == zj
        assert np.array_equal(hard[0, edges], msgs.hard)
        assert np.allclose(alpha[0, edges], msgs.absolute(), atol=1e-12)
