"""Update one check node with every algorithm and compare to brute force.

Soft messages are given in deviation space: entry k is the cost of moving
the edge from its hard symbol to (hard XOR k).
"""

import numpy as np

from nbldpc.decoders import (DecoderConfig, cn_emsa, cn_mma, cn_oracle,
                             cn_smsa)
from nbldpc.decoders.check import reorder

rng = np.random.default_rng(3)
q, d = 8, 4
hard = rng.integers(0, q, d)
soft = rng.integers(0, 16, (d, q)).astype(float)
soft[:, 0] = 0

print("hard messages a:", hard)
print("soft messages (deviation space):")
print(soft)

raw = lambda alg: DecoderConfig(alg, c=1.0)       # no scaling, to compare
e = cn_emsa(hard, soft, raw("EMSA"))
s1 = cn_smsa(hard, soft, raw("SMSA1"))
s2 = cn_smsa(hard, soft, raw("SMSA2"))
m = cn_mma(hard, soft, raw("MMA"))

print("\nhard outputs b (same for all):", e.hard)

j = 0
print(f"\nedge {j}, deviation space")
print("EMSA  ", e.soft[j])
print("SMSA-1", s1.soft[j])
print("SMSA-2", s2.soft[j])
print("MMA   ", m.soft[j])

for k in (1, 2, 4, None):
    ref = reorder(cn_oracle(hard, soft, j, order_cap=k), e.hard[j])
    print(f"oracle order<={k}:", ref)

# SMSA-1 never exceeds the order-2 search and SMSA-2 never exceeds SMSA-1;
# both undershoot EMSA, which is why they want a smaller scaling factor
print("\nSMSA-2 <= SMSA-1 <= EMSA:",
      bool(np.all(s2.soft <= s1.soft) and np.all(s1.soft <= e.soft)))
