"""GF(8) arithmetic and the pair table used by the simplified check node."""

import numpy as np

from nbldpc import GaloisField, build_lut

gf = GaloisField(3)               # x^3 + x + 1
print("q =", gf.q, " primitive polynomial =", bin(gf.prim_poly))

# addition is XOR, multiplication goes through log/antilog tables
print("2 + 4 =", gf.add(2, 4))
print("2 * 4 =", gf.mul(2, 4))
print("inverse of 5 =", gf.inv(5), " check:", gf.mul(5, gf.inv(5)))

print("\nmultiplication table:")
print(gf.mul_table)

# every delta splits GF(8) into q/2 disjoint pairs whose XOR is delta
lut = build_lut(gf)
print("\npair table:")
print(lut.format())

row = lut.row(6)
print("\ndelta = 6:", row, " XORs:", [a ^ b for a, b in row])

# pass 2 only needs the left half of each row
print("pass 2 combines columns f < q/4:", row[: gf.q // 4])
