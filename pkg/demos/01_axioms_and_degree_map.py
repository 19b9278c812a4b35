"""The basics: build an RBA, check its axioms, find the degree map.

A reality-based algebra is presented by a structure-constant tensor
lam[i,j,k] (coefficient of b_k in b_i b_j) and an involution on basis
indices. Group algebras are the motivating example: lam[i,j,k] = 1 exactly
when g_i g_j = g_k, and * is inversion.
"""

import numpy as np

from rbakit import RBA, degree_map, gram_matrix, standardize, validate
from rbakit.fixtures import load_fixture

s3 = load_fixture("s3")
print("S3 group algebra:", s3)
print("star permutation (inversion):", s3.star)
print("nonreal pairs:", s3.nonreal_pairs(), " *-fixed elements:", s3.star_fixed_count())

report = validate(s3)
print("\naxiom checks:")
print(report.summary())

dm = degree_map(s3)
print("\ndegree map values:", list(dm.values), " order n =", dm.n)

g = gram_matrix(s3, dm)
print("Gram matrix of the trace form (diagonal n*delta_i for a standard basis):")
print(g)

# a rescaled basis is not standard; standardization restores it
from fractions import Fraction
import itertools

scale = [Fraction(1), Fraction(3), Fraction(3), Fraction(1), Fraction(1), Fraction(1)]
lam = s3.lam.copy()
for i, j, k in itertools.product(range(6), repeat=3):
    lam[i, j, k] = s3.lam[i, j, k] * scale[i] * scale[j] / scale[k]
rescaled = RBA(lam, s3.star)
print("\nrescaled b_1 by 3: lam[1,1*,0] =", rescaled.lam[1, 2, 0])
dm2 = degree_map(rescaled)
restored = standardize(rescaled, dm2)
print("standardize recovers the original tensor:", np.array_equal(restored.lam, s3.lam))

# the text format round-trips exactly
text = s3.to_text()
print("\nfirst lines of the .rba serialization:")
print("\n".join(text.splitlines()[:6]))
assert np.array_equal(RBA.from_text(text).lam, s3.lam)
