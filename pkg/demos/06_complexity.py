"""Per-check operation counts: closed form versus instrumented run."""

import numpy as np

from nbldpc import GaloisField, random_regular
from nbldpc.complexity import measure, predict
from nbldpc.decoders import DecoderConfig

for alg in ("SMSA1", "SMSA2", "EMSA"):
    print(alg, predict(alg, 32, 6, 5))

# the instrumented kernels count what they execute, one check at a time
gf = GaloisField(4)
H = random_regular(24, 2, 6, gf, seed=0)
llr = np.abs(np.random.default_rng(0).normal(0, 2, (H.n, gf.q)))
for alg in ("SMSA1", "SMSA2", "EMSA"):
    counts, counter = measure(llr, H, DecoderConfig(alg), iterations=1)
    print(f"{alg}: measured {counts}  predicted {predict(alg, 16, 6, 5)}")
