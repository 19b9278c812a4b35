"""The quaternion symbol of the degree-2 component, and Hilbert symbols.

For a noncommutative RBA with exactly one nonreal pair, the image of
d = b_p - b_p* squares to a negative scalar, some *-invariant element
gives an anticommuting symmetric generator with positive square, and the
resulting symbol (a, beta) always satisfies beta > 0. Over the rationals,
splitness is decided place by place with exact Hilbert symbols.
"""

from rbakit import hilbert_places, hilbert_symbol, symbol
from rbakit.fixtures import load_fixture

for name in ("s3", "d8"):
    rba = load_fixture(name)
    sym = symbol(rba)
    print(f"{name}: x^2 = {sym.a_exact} I, y^2 = {sym.beta_exact} I  "
          f"(pair {sym.pair}, y from element {sym.y_label})")
    print(f"   local Hilbert symbols: {sym.local_symbols} -> verdict {sym.verdict}")

# the classical division algebra: (-1, -1) ramifies exactly at 2 and infinity
print("\n(-1,-1):", hilbert_places(-1, -1), "-> division algebra")

# multiplying either argument by a square never changes the symbol
for p in (2, 3, 5, "inf"):
    assert hilbert_symbol(-3, 4, p) == 1  # 4 is a square, so always split
print("(-3, 4) splits everywhere: a square argument is always a norm")

# the product over all places is +1 (here: the two -1s cancel)
places = hilbert_places(-1, -1)
prod = 1
for v in places.values():
    prod *= v
print("product formula:", prod)
