"""Shared fixtures and independent oracles for the test suite."""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from rbakit.core import RBA, ToleranceConfig
from rbakit.ingest import from_group
from rbakit.integrality import build_rank7_example

TOL = ToleranceConfig()


# ---------------------------------------------------------------------------
# group tables (built here, independently of the bundled fixture files)
# ---------------------------------------------------------------------------

def s3_table():
    """S3 as permutations of {0,1,2}; order: e, r, r2, s, rs, r2s."""
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]

    def mul(p, q):
        return tuple(p[q[x]] for x in range(3))

    idx = {p: i for i, p in enumerate(perms)}
    return np.array([[idx[mul(perms[i], perms[j])] for j in range(6)] for i in range(6)])


def d8_table():
    """Dihedral group of order 8; order: e, r, r2, r3, s, rs, r2s, r3s."""
    elems = [("r", k) for k in range(4)] + [("s", k) for k in range(4)]

    def mul(a, b):
        (ta, ka), (tb, kb) = a, b
        if ta == "r" and tb == "r":
            return ("r", (ka + kb) % 4)
        if ta == "r" and tb == "s":
            return ("s", (ka + kb) % 4)
        if ta == "s" and tb == "r":
            return ("s", (ka - kb) % 4)
        return ("r", (ka - kb) % 4)

    idx = {e: i for i, e in enumerate(elems)}
    return np.array([[idx[mul(elems[i], elems[j])] for j in range(8)] for i in range(8)])


def c_n_table(n):
    return np.array([[(i + j) % n for j in range(n)] for i in range(n)])


# classical character tables, frozen from the representation theory of the
# groups themselves (degrees, values in the element order above)
S3_CLASSICAL = {
    "degrees": [1, 1, 2],
    "multiplicities": [Fraction(1), Fraction(1), Fraction(2)],
    "rows": {
        (1, 1, 1, 1, 1, 1): Fraction(1),
        (1, 1, 1, -1, -1, -1): Fraction(1),
        (2, -1, -1, 0, 0, 0): Fraction(2),
    },
    "nu": [1, 1, 1],
    "s": 4,
}

D8_CLASSICAL = {
    "degrees": [1, 1, 1, 1, 2],
    "rows": {
        (1, 1, 1, 1, 1, 1, 1, 1): Fraction(1),
        (1, 1, 1, 1, -1, -1, -1, -1): Fraction(1),
        (1, -1, 1, -1, 1, -1, 1, -1): Fraction(1),
        (1, -1, 1, -1, -1, 1, -1, 1): Fraction(1),
        (2, 0, -2, 0, 0, 0, 0, 0): Fraction(2),
    },
    "nu": [1, 1, 1, 1, 1],
    "s": 6,
}

RANK7_TABLE = {
    "degrees": [1, 1, 1, 2],
    "delta": tuple(Fraction(v) for v in (1, 2, 2, 2, 2, 2, 2)),
    "phi": (Fraction(1), Fraction(-5, 2), Fraction(-5, 2), Fraction(0),
            Fraction(0), Fraction(2), Fraction(2)),
    "psi": (Fraction(1), Fraction(2), Fraction(2), Fraction(-9, 2),
            Fraction(-9, 2), Fraction(2), Fraction(2)),
    "chi": tuple(Fraction(v) for v in (2, 0, 0, 0, 0, -1, -1)),
    "multiplicities": [Fraction(1), Fraction(52, 45), Fraction(4, 9), Fraction(26, 5)],
    "nu": [1, 1, 1, -1],
    "s": 1,
    "n": Fraction(13),
}


@pytest.fixture(scope="session")
def tol():
    return TOL


@pytest.fixture(scope="session")
def s3_rba():
    return from_group(s3_table())


@pytest.fixture(scope="session")
def d8_rba():
    return from_group(d8_table())


@pytest.fixture(scope="session")
def c2_rba():
    return from_group(c_n_table(2))


@pytest.fixture(scope="session")
def c3_rba():
    return from_group(c_n_table(3))


@pytest.fixture(scope="session")
def rank1_rba():
    return RBA(np.full((1, 1, 1), Fraction(1), dtype=object), [0])


@pytest.fixture(scope="session")
def rank7_rba():
    return build_rank7_example()


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

def cayley_check(table):
    """Direct group-axiom check of a Cayley table (identity, Latin, associativity)."""
    table = np.asarray(table)
    m = len(table)
    if not np.array_equal(table[0], np.arange(m)):
        return False
    if not np.array_equal(table[:, 0], np.arange(m)):
        return False
    for i in range(m):
        if sorted(table[i]) != list(range(m)):
            return False
    for i, j, k in itertools.product(range(m), repeat=3):
        if table[table[i, j], k] != table[i, table[j, k]]:
            return False
    return True


def squarefree_part(n: int) -> int:
    """n modulo squares (sign kept), by trial division."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    f = 2
    while f * f <= n:
        e = 0
        while n % f == 0:
            n //= f
            e += 1
        if e % 2:
            out *= f
        f += 1
    return sign * out * n


def padic_norm_oracle(a, b, p) -> int:
    """Brute-force local solvability of z^2 = a x^2 + b y^2.

    Reduces a, b modulo squares, then searches primitive solutions modulo
    p^3 (odd p) or 2^6; Hensel's lemma lifts any such solution (every
    primitive solution has x or y a unit, whose gradient coordinate has
    small enough valuation). Returns +1 / -1 like a Hilbert symbol.
    """
    a = Fraction(a)
    b = Fraction(b)
    if p == "inf":
        return -1 if (a < 0 and b < 0) else 1
    aa = squarefree_part(a.numerator * a.denominator)
    bb = squarefree_part(b.numerator * b.denominator)
    modulus = 2**6 if p == 2 else p**3
    xs = np.arange(modulus, dtype=np.int64)
    squares = np.unique((xs * xs) % modulus)
    is_square = np.zeros(modulus, dtype=bool)
    is_square[squares] = True
    ax2 = (aa * xs * xs) % modulus
    by2 = (bb * xs * xs) % modulus
    unit = (xs % p) != 0
    # x or y must be a unit in any primitive solution
    w1 = (ax2[unit][:, None] + by2[None, :]) % modulus
    if is_square[w1].any():
        return 1
    w2 = (ax2[~unit][:, None] + by2[None, unit]) % modulus
    if is_square[w2].any():
        return 1
    return -1


def two_dim_s3_star_rep():
    """Orthogonal 2-dim irreducible *-representation of S3: the permutation
    action on the plane x+y+z = 0 in an orthonormal basis."""
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]
    basis = np.array([[1.0, -1.0, 0.0], [1.0, 1.0, -2.0]]).T
    basis /= np.linalg.norm(basis, axis=0)
    mats = []
    for p in perms:
        perm_mat = np.zeros((3, 3))
        for x in range(3):
            perm_mat[p[x], x] = 1.0
        mats.append(basis.T @ perm_mat @ basis)
    return np.array(mats)
