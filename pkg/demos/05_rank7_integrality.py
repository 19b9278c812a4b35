"""The rank-7 witness: a quaternionic component and a 2-adic obstruction.

A noncommutative rank-7 RBA with a single *-fixed basis element has
indicator pattern (1,1,1,-1): its degree-2 character is quaternionic, so
no real 2x2 *-representation exists, and the structure constants can
never be algebraic integers: each linear character phi != delta satisfies
1 + 2 phi_1 + 2 phi_2 + 2 phi_3 = 0, and 1 + 2(phi_1 + phi_2) is odd.
"""

from rbakit import (
    NumericalError,
    central_idempotents,
    character_table,
    degree_map,
    integral_check,
    quaternion_verify,
    star_rep_extract,
    two_adic_obstruction,
    validate,
)
from rbakit.integrality import RANK7_IMAGES, build_rank7_example, rank7_exact_data

rba = build_rank7_example()
print(rba)
print("axioms pass:", validate(rba).passed)

dm = degree_map(rba)
idems = central_idempotents(rba)
table = character_table(rba, dm, idems)
print("\nrecovered character table:")
for char in table:
    print(f"  deg {char.degree}: {[str(v) for v in char.values]}  m = {char.multiplicity}")

# the degree-2 character is quaternionic: extraction of a real 2x2 rep fails
chi = table.degree_two()[0]
try:
    star_rep_extract(rba, dm, chi.idempotent)
except NumericalError as exc:
    print("\nreal 2x2 extraction fails as it must:", exc)

# ... but the quaternion-valued representation works
check = quaternion_verify(rba, RANK7_IMAGES, table)
print("quaternion-valued representation verifies:", check.passed)

# integrality: the tensor provably contains +-sqrt(5)/4
result = integral_check(rba)
print("\nintegral structure constants:", bool(result),
      f"({len(result.offenders)}+ offenders)")
exact = rank7_exact_data()
irrational = [v for v in exact["lam"].values() if not v.is_rational]
print("irrational entries (exact):", len(irrational), "all equal to +-sqrt(5)/4:",
      all(abs(float(v)) == float(abs(v.coef)) * 5 ** 0.5 for v in irrational))
non_integers = [v for v in exact["lam"].values() if not v.is_algebraic_integer()]
print("entries that are not algebraic integers:", len(non_integers))

# the 2-adic obstruction, straight from the character table
report = two_adic_obstruction(table)
print("\n2-adic verdict:", report.verdict)
for row in report.rows:
    print(f"  pair values {tuple(str(v) for v in row.values)}: "
          f"forced third value {row.phi3_formula_value}, "
          f"2-adic valuations {row.valuations}")
