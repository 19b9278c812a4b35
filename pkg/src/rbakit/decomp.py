"""Semisimple decomposition of the span of an RBA basis.

Regular representation, center, central primitive idempotents (Lagrange
interpolation at the eigenvalues of a random central element), character
table with multiplicities by two independent routes, extraction of an
irreducible real *-representation, and symmetrization of an arbitrary real
representation into a *-representation.

All eigenwork is done in doubles; derived values are snapped back to small
rationals where they fit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core import (
    DEFAULT_TOL,
    DegreeMap,
    NumericalError,
    RBA,
    ToleranceConfig,
    as_float_array,
    gram_matrix,
    snap_value,
)

__all__ = [
    "RegularRep",
    "CentralIdempotent",
    "Character",
    "CharacterTable",
    "StarRep",
    "regular_rep",
    "center_basis",
    "central_idempotents",
    "character_table",
    "star_rep_extract",
    "symmetrize",
    "averaging_matrix",
    "charpoly_check",
    "CharpolyReport",
]


@dataclass
class RegularRep:
    """Left regular matrices L_i with (L_i)[k, j] = lam[i, j, k]."""

    matrices: np.ndarray  # (r, r, r) float64

    def product_residual(self, rba: RBA) -> float:
        lam = rba.lam_float
        L = self.matrices
        worst = 0.0
        for i in range(rba.rank):
            prod = L[i] @ L
            expect = np.einsum("jk,kab->jab", lam[i], L)
            worst = max(worst, float(abs(prod - expect).max()))
        return worst


def regular_rep(rba: RBA) -> RegularRep:
    return RegularRep(np.ascontiguousarray(rba.lam_float.transpose(0, 2, 1)))


def center_basis(rba: RBA, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal coefficient vectors spanning the center, shape (m, r).

    Null space of the commutation system sum_i z_i (lam[i,j,k] - lam[j,i,k]) = 0.
    """
    r = rba.rank
    lam = rba.lam_float
    comm = (lam - lam.transpose(1, 0, 2)).transpose(1, 2, 0).reshape(r * r, r)
    _, svals, vt = np.linalg.svd(comm)
    svals = np.concatenate([svals, np.zeros(max(0, r - len(svals)))])
    thr = tol.eps_cluster * max(float(svals[0]) if len(svals) else 0.0, tol.eps_zero)
    null_mask = svals <= thr
    kept = svals[~null_mask]
    dropped = svals[null_mask & (svals > 0)]
    if kept.size and dropped.size and kept.min() < 100.0 * dropped.max():
        raise NumericalError(
            "center rank ambiguous: singular values "
            f"{dropped.max():.3e} vs {kept.min():.3e} straddle the eps_cluster gap; "
            "adjust tolerances"
        )
    m = int(null_mask.sum())
    return vt[r - m:, :]


@dataclass
class CentralIdempotent:
    """A central primitive idempotent e = sum coeffs[i] b_i of the complexified span."""

    coeffs: np.ndarray   # complex128, length r
    block_dim: int       # n_chi, from rank L(e) = n_chi^2
    eigenvalue: complex  # separating eigenvalue (diagnostic)
    rank_is_square: bool = True

    @property
    def is_real(self) -> bool:
        return bool(abs(self.coeffs.imag).max() < 1e-7)


def _left_mult_matrix(rba: RBA, coeffs) -> np.ndarray:
    """Matrix of left multiplication by the element with the given coefficients."""
    lam = rba.lam_float
    if np.iscomplexobj(coeffs):
        return np.einsum("i,ijk->kj", np.asarray(coeffs), lam.astype(complex))
    return np.einsum("i,ijk->kj", np.asarray(coeffs, dtype=float), lam)


def _cluster(values, eps: float):
    """Group complex values by the relative gap |a-b| < eps*(1+|a|); returns index lists."""
    values = np.asarray(values)
    k = len(values)
    parent = list(range(k))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(k):
        for b in range(a + 1, k):
            if abs(values[a] - values[b]) < eps * (1.0 + abs(values[a])):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
    groups = {}
    for a in range(k):
        groups.setdefault(find(a), []).append(a)
    return sorted(groups.values(), key=lambda g: (values[g[0]].real, values[g[0]].imag))


def _matrix_rank(mat, tol: ToleranceConfig) -> int:
    svals = np.linalg.svd(mat, compute_uv=False)
    if svals.size == 0 or svals[0] == 0:
        return 0
    return int((svals > tol.eps_cluster * svals[0]).sum())


def central_idempotents(rba: RBA, tol: ToleranceConfig = DEFAULT_TOL):
    """Central primitive idempotents via Lagrange interpolation.

    A seeded random central element whose action on the center has all
    eigenvalues distinct separates the components; up to 8 reseeds.
    """
    zb = center_basis(rba, tol)
    m = zb.shape[0]
    r = rba.rank
    for attempt in range(8):
        rng = tol.rng(attempt)
        z = rng.uniform(-1.0, 1.0, m) @ zb
        zmat = _left_mult_matrix(rba, z)
        zc, *_ = np.linalg.lstsq(zb.T, zmat @ zb.T, rcond=None)
        evals = np.linalg.eigvals(zc)
        if len(_cluster(evals, tol.eps_cluster)) != m:
            continue
        unit0 = np.zeros(r, dtype=complex)
        unit0[0] = 1.0
        out = []
        for a in range(m):
            v = unit0.copy()
            for b in range(m):
                if b != a:
                    v = (zmat @ v - evals[b] * v) / (evals[a] - evals[b])
            if abs(v.imag).max() < tol.eps_zero:
                v = v.real.astype(complex)
            le = _left_mult_matrix(rba, v)
            rank = _matrix_rank(le, tol)
            block = round(rank ** 0.5)
            out.append(
                CentralIdempotent(
                    coeffs=v,
                    block_dim=block,
                    eigenvalue=complex(evals[a]),
                    rank_is_square=(block * block == rank),
                )
            )
        out.sort(key=lambda e: (e.eigenvalue.real, e.eigenvalue.imag))
        return out
    raise NumericalError("idempotent separation failed after 8 reseeds")


# ---------------------------------------------------------------------------
# character table
# ---------------------------------------------------------------------------

@dataclass
class Character:
    """One irreducible character: degree, values on the basis, multiplicity, indicator."""

    degree: int
    values_raw: np.ndarray          # complex128, length r
    multiplicity_raw: float
    values: list = field(default_factory=list)   # per-entry Fraction when snapped
    multiplicity: object = None                  # Fraction | float
    nu: object = None                            # -1 | 0 | +1 once computed
    idempotent: CentralIdempotent = None

    @property
    def is_real(self) -> bool:
        return bool(abs(self.values_raw.imag).max() < 1e-7)

    @property
    def is_exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.values)


@dataclass
class CharacterTable:
    """Ordered characters, the degree map first."""

    characters: list
    order: object                    # n (Fraction | float)
    warnings: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.characters)

    def __len__(self):
        return len(self.characters)

    def __getitem__(self, i) -> Character:
        return self.characters[i]

    @property
    def delta(self) -> Character:
        return self.characters[0]

    def degrees(self):
        return [c.degree for c in self.characters]

    def multiplicities(self):
        return [c.multiplicity for c in self.characters]

    def values_matrix(self) -> np.ndarray:
        return np.array([c.values_raw for c in self.characters])

    def degree_two(self):
        """The characters of degree 2 (handles for the quaternion pipeline)."""
        return [c for c in self.characters if c.degree == 2]


def character_table(
    rba: RBA,
    dm: DegreeMap,
    idempotents=None,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> CharacterTable:
    """Character values, degrees and multiplicities of every irreducible character.

    Multiplicities come from two independent routes that must agree:
    (a) m = n * e[0] / n_chi from the idempotent expansion, and
    (b) the linear solve sum_psi m_psi psi(b_i) = n * [i = 0].
    """
    if idempotents is None:
        idempotents = central_idempotents(rba, tol)
    r = rba.rank
    L = regular_rep(rba).matrices.astype(complex)
    n = dm.n_float
    warnings = []
    chars = []
    for idem in idempotents:
        if not idem.rank_is_square:
            warnings.append(
                f"non-split component detected (rank L(e) = {idem.block_dim}^2 fails)"
            )
        le = _left_mult_matrix(rba, idem.coeffs)
        deg = idem.block_dim
        vals = np.einsum("iab,ba->i", L, le) / deg
        mult_a = n * idem.coeffs[0] / deg
        chars.append(
            Character(
                degree=deg,
                values_raw=vals,
                multiplicity_raw=float(mult_a.real),
                idempotent=idem,
            )
        )
        if abs(mult_a.imag) > tol.eps_residual:
            raise NumericalError("complex multiplicity: idempotents are inconsistent")

    # route (b): the trace functional decomposes over the characters
    vmat = np.array([c.values_raw for c in chars])
    rhs = np.zeros(r, dtype=complex)
    rhs[0] = n
    mult_b, *_ = np.linalg.lstsq(vmat.T, rhs, rcond=None)
    solve_residual = float(abs(vmat.T @ mult_b - rhs).max())
    scale = max(1.0, abs(vmat).max())
    for c, mb in zip(chars, mult_b):
        if abs(c.multiplicity_raw - mb) > tol.eps_residual * scale or solve_residual > tol.eps_residual * scale:
            raise NumericalError(
                "multiplicity inconsistency: idempotent route gives "
                f"{c.multiplicity_raw}, trace solve gives {mb}"
            )

    # identify the degree-map row, snap, and order deterministically
    dvals = dm.values_float
    delta_idx = None
    for i, c in enumerate(chars):
        if c.degree == 1 and abs(c.values_raw - dvals).max() < tol.eps_cluster * scale:
            delta_idx = i
            break
    if delta_idx is None:
        raise NumericalError("degree map not found among the characters")

    for c in chars:
        c.values = [snap_value(v, tol.eps_zero) for v in c.values_raw]
        c.multiplicity = snap_value(c.multiplicity_raw, tol.eps_zero)
    delta_char = chars.pop(delta_idx)
    delta_char.multiplicity = Fraction(1)

    def sort_key(c: Character):
        return (c.degree, [(round(v.real, 6), round(v.imag, 6)) for v in c.values_raw])

    chars.sort(key=sort_key)
    table = CharacterTable([delta_char] + chars, order=snap_value(n, tol.eps_zero))
    table.warnings = warnings
    return table


# ---------------------------------------------------------------------------
# *-representations
# ---------------------------------------------------------------------------

@dataclass
class StarRep:
    """A real representation with X(b_{i*}) = X(b_i)^T."""

    dim: int
    matrices: np.ndarray  # (r, dim, dim) float64

    def product_residual(self, rba: RBA) -> float:
        lam = rba.lam_float
        X = self.matrices
        worst = 0.0
        for i in range(rba.rank):
            expect = np.einsum("jk,kab->jab", lam[i], X)
            worst = max(worst, float(abs(X[i] @ X - expect).max()))
        return worst

    def star_residual(self, rba: RBA) -> float:
        X = self.matrices
        return float(abs(X[rba.star] - X.transpose(0, 2, 1)).max())

    def traces(self) -> np.ndarray:
        return np.einsum("iaa->i", self.matrices)


def _orthonormalized_regular(rba: RBA, dm: DegreeMap, tol: ToleranceConfig):
    """Regular matrices conjugated by the Gram square root, plus the conjugators.

    In these coordinates left multiplication by b_{i*} is the transpose of
    left multiplication by b_i. Standard bases have a diagonal Gram matrix,
    so the conjugation is a diagonal scaling there.
    """
    L = regular_rep(rba).matrices
    g = gram_matrix(rba, dm)
    off = abs(g - np.diag(np.diag(g))).max()
    if off <= tol.eps_residual * max(1.0, abs(g).max()):
        d = np.sqrt(np.diag(g))
        ghalf = np.diag(d)
        ginvhalf = np.diag(1.0 / d)
        y = d[None, :, None] * L * (1.0 / d)[None, None, :]
        return y, ghalf, ginvhalf
    w, v = np.linalg.eigh((g + g.T) / 2)
    ghalf = v @ np.diag(np.sqrt(w)) @ v.T
    ginvhalf = v @ np.diag(1.0 / np.sqrt(w)) @ v.T
    return np.einsum("ab,ibc,cd->iad", ghalf, L, ginvhalf), ghalf, ginvhalf


def star_rep_extract(
    rba: RBA,
    dm: DegreeMap,
    idem: CentralIdempotent,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> StarRep:
    """Irreducible real *-representation for a component split over the reals.

    Restricts right multiplication by a seeded random *-symmetric element to
    the isotypic subspace; its eigenvalue clusters of size n_chi span
    irreducible submodules (right multiplications are the commutant of the
    left regular action, and *-symmetry makes them self-adjoint for the Gram
    form). Quaternionic or non-real components produce the wrong cluster
    size, which is reported as an extraction failure.
    """
    if not idem.is_real:
        raise NumericalError(
            "component is not split over the reals (idempotent has complex coefficients)"
        )
    r = rba.rank
    nchi = idem.block_dim
    lam = rba.lam_float
    y, ghalf, ginvhalf = _orthonormalized_regular(rba, dm, tol)
    proj = np.einsum("i,iab->ab", idem.coeffs.real, y)
    pw, pv = np.linalg.eigh((proj + proj.T) / 2)
    basis = pv[:, pw > 0.5]
    chi_vals = np.einsum("iab,ba->i", y, proj) / nchi

    for attempt in range(8):
        rng = tol.rng(1000 + attempt)
        c = rng.uniform(-1.0, 1.0, r)
        c = (c + c[rba.star]) / 2.0
        rmat = np.einsum("i,jik->kj", c, lam)
        ry = ghalf @ rmat @ ginvhalf
        restricted = basis.T @ ry @ basis
        mw, mv = np.linalg.eigh((restricted + restricted.T) / 2)
        clusters = _cluster(mw.astype(complex), tol.eps_cluster)
        pick = next((g for g in clusters if len(g) == nchi), None)
        if pick is None:
            continue
        emb = basis @ mv[:, pick]
        mats = np.einsum("pa,ipq,qb->iab", emb, y, emb)
        rep = StarRep(dim=nchi, matrices=mats)
        scale = max(1.0, abs(lam).max())
        if (
            rep.product_residual(rba) < tol.eps_residual * scale
            and rep.star_residual(rba) < tol.eps_residual * scale
            and abs(rep.traces() - chi_vals.real).max() < tol.eps_residual * scale
        ):
            return rep
    raise NumericalError(
        "irreducible subspace extraction failed after 8 reseeds "
        f"(component of degree {nchi} is likely not split over the reals)"
    )


def averaging_matrix(dm: DegreeMap, phi) -> np.ndarray:
    """The positive definite average sum_i Phi(b_i)^T Phi(b_i) / delta_i."""
    phi = as_float_array(phi)
    weights = 1.0 / dm.values_float
    return np.einsum("i,iba,ibc->ac", weights, phi, phi)


def symmetrize(
    rba: RBA,
    dm: DegreeMap,
    phi,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> StarRep:
    """Turn a real representation into a *-representation by conjugation.

    Steps: (i) form the positive definite symmetric average A of the images,
    (ii) take its symmetric square root B, (iii) conjugate: X = B Phi B^{-1}.
    Then A Phi(b_j) = Phi(b_{j*})^T A forces X(b_{i*}) = X(b_i)^T.
    """
    phi = as_float_array(phi)
    r = rba.rank
    if phi.shape[0] != r or phi.ndim != 3 or phi.shape[1] != phi.shape[2]:
        raise ValueError(f"expected (r, d, d) images, got {phi.shape}")
    lam = rba.lam_float
    scale = max(1.0, abs(lam).max(), float(abs(phi).max()) ** 2)
    prod_res = max(
        float(abs(phi[i] @ phi - np.einsum("jk,kab->jab", lam[i], phi)).max())
        for i in range(r)
    )
    if prod_res > tol.eps_residual * scale:
        raise ValueError(f"Phi is not a representation (product residual {prod_res:.3e})")
    avg = averaging_matrix(dm, phi)
    avg = (avg + avg.T) / 2
    w, v = np.linalg.eigh(avg)
    if w.min() <= tol.eps_zero * max(1.0, w.max()):
        raise NumericalError(
            f"averaging matrix not positive definite: eigenvalue {w.min():.3e} failed"
        )
    b = v @ np.diag(np.sqrt(w)) @ v.T
    binv = v @ np.diag(1.0 / np.sqrt(w)) @ v.T
    mats = np.einsum("ab,ibc,cd->iad", b, phi, binv)
    rep = StarRep(dim=phi.shape[1], matrices=mats)
    if rep.star_residual(rba) > tol.eps_residual * scale:
        raise NumericalError(
            f"symmetrization failed to restore *-compatibility (residual {rep.star_residual(rba):.3e})"
        )
    return rep


# ---------------------------------------------------------------------------
# characteristic polynomials
# ---------------------------------------------------------------------------

@dataclass
class CharpolyEntry:
    index: int
    coeffs: np.ndarray            # float64, leading coefficient 1
    coeffs_exact: list = None     # Fractions when every coefficient snapped
    snapped: bool = False


@dataclass
class CharpolyReport:
    entries: list
    expect_rational: bool

    @property
    def all_rational(self) -> bool:
        return all(e.snapped for e in self.entries)

    @property
    def violations(self):
        if not self.expect_rational:
            return []
        return [e.index for e in self.entries if not e.snapped]


def charpoly_check(
    rep: StarRep,
    rba: RBA,
    tol: ToleranceConfig = DEFAULT_TOL,
    expect_rational=None,
) -> CharpolyReport:
    """Snap the characteristic-polynomial coefficients of every image to rationals.

    With a rational field of definition and rational character values the
    coefficients must land in the rationals; a snap failure there is a
    violation (surfaced via .violations), otherwise it just means the field
    of the character is bigger than the rationals (or noise).
    """
    if expect_rational is None:
        expect_rational = rba.exact
    entries = []
    for i in range(rba.rank):
        coeffs = np.poly(rep.matrices[i])
        snapped = [snap_value(c, tol.eps_zero) for c in coeffs]
        ok = all(isinstance(s, Fraction) for s in snapped)
        entries.append(
            CharpolyEntry(
                index=i,
                coeffs=coeffs,
                coeffs_exact=snapped if ok else None,
                snapped=ok,
            )
        )
    return CharpolyReport(entries=entries, expect_rational=expect_rational)
