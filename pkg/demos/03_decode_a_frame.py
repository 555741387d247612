"""Send the all-zero word through BPSK/AWGN and decode it."""

import numpy as np

from nbldpc import (ChannelConfig, DecoderConfig, GaloisField, decode,
                    random_regular, transmit_llrs)

gf = GaloisField(3)
H = random_regular(192, 3, 6, gf, seed=1)
print(f"code: n={H.n} m={H.m} rate={H.rate:.3f} 4-cycles={H.count_4cycles()}")

chan = ChannelConfig("bpsk", "awgn", snr_db=2.0, rate=H.rate)
rng = np.random.default_rng(11)
llrs = transmit_llrs(np.zeros(H.n, dtype=int), chan, gf, rng)
print("symbol errors before decoding:", np.count_nonzero(llrs.argmin(axis=1)))

for alg in ("QSPA", "EMSA", "SMSA1", "SMSA2", "MMA"):
    out = decode(llrs, H, DecoderConfig(alg))
    print(f"{alg:6s} converged={out.converged!s:5s} iterations={out.iterations_used:2d} "
          f"errors={np.count_nonzero(out.word)}  unsatisfied checks: {out.syndrome_trace[:8]}")
