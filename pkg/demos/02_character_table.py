"""Semisimple decomposition: idempotents, character table, *-representations.

The span of the basis is semisimple; a random central element separates
the simple components by Lagrange interpolation, and the character table
(with multiplicities) falls out of the central primitive idempotents.
"""

import numpy as np

from rbakit import (
    center_basis,
    central_idempotents,
    character_table,
    charpoly_check,
    degree_map,
    star_rep_extract,
    symmetrize,
)
from rbakit.fixtures import load_fixture

s3 = load_fixture("s3")
dm = degree_map(s3)

print("center dimension (= number of irreducible characters):",
      center_basis(s3).shape[0])

idems = central_idempotents(s3)
print("\ncentral primitive idempotents (block dimensions):",
      [e.block_dim for e in idems])

table = character_table(s3, dm, idems)
print("\ncharacter table (degree | values | multiplicity):")
for char in table:
    print(f"  {char.degree}  {[str(v) for v in char.values]}  m = {char.multiplicity}")

# extract a real 2x2 *-representation of the degree-2 character
chi = table.degree_two()[0]
rep = star_rep_extract(s3, dm, chi.idempotent)
print("\n2x2 *-representation: X(b_{i*}) = X(b_i)^T with residual",
      f"{rep.star_residual(s3):.2e}")
print("X(r) =")
print(np.round(rep.matrices[1], 6))
print("traces match the character row:",
      np.allclose(rep.traces(), chi.values_raw.real))

# characteristic polynomials snap to rationals (rational field of definition)
poly = charpoly_check(rep, s3)
print("\nchar poly of X(r):", [str(c) for c in poly.entries[1].coeffs_exact],
      "(t^2 + t + 1)")

# symmetrization: conjugate a *-rep away and recover *-compatibility
rng = np.random.default_rng(1)
m = rng.uniform(-1, 1, (2, 2)) + np.eye(2)
phi = np.array([m @ rep.matrices[i] @ np.linalg.inv(m) for i in range(6)])
fixed = symmetrize(s3, dm, phi)
print("\nafter a random conjugation, symmetrize restores *-compatibility:",
      f"{fixed.star_residual(s3):.2e}")
