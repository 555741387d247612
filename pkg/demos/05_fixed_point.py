"""Fixed-point SMSA-2 with 3 integer and 2 fractional bits."""

import numpy as np

from nbldpc import FixedPointFormat, GaloisField, random_regular
from nbldpc.decoders import DecoderConfig, quantize
from nbldpc.sim import SimConfig, run

fmt = FixedPointFormat(3, 2)
print("width", fmt.w, "bits, step", fmt.step, "max", fmt.max_value)
print(quantize(np.array([0.1, 0.125, 1.3, 3.14, 9.0, -2.0]), fmt))

H = random_regular(192, 3, 6, GaloisField(3), seed=1)
decs = [DecoderConfig("SMSA2"), DecoderConfig("SMSA2", fixed_point=fmt)]
res = run(SimConfig(H, [2.0], decs, min_block_errors=30, max_blocks=5000))
print(res.table())
