"""Short BLER sweep.  Raise min_block_errors for smoother curves."""

from nbldpc import GaloisField, random_regular
from nbldpc.sim import SimConfig, parse_decoders, run

H = random_regular(192, 3, 6, GaloisField(3), seed=1)
cfg = SimConfig(H, snrs=[1.5, 2.0, 2.5],
                decoders=parse_decoders("emsa,smsa1,smsa2"),
                min_block_errors=20, max_blocks=5000, seed=1)
res = run(cfg)
print(res.table())
# res.write("sweep.json"); res.write_csv("sweep.csv")
