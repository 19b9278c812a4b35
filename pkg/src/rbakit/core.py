"""Core data model for reality-based algebras (RBAs).

An RBA is held as a dense structure-constant tensor lam[i, j, k] (the
coefficient of b_k in b_i*b_j), a basis involution ``star`` acting on
indices, and a mode flag: exact (every entry a Fraction) or float.
Eigen-computations always run in doubles; exact mode only changes how
identities are checked and how derived values are snapped back.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

__all__ = [
    "RBAError",
    "StructuralError",
    "AxiomError",
    "NumericalError",
    "ToleranceConfig",
    "RBA",
    "DegreeMap",
    "FeasibleTrace",
    "CheckResult",
    "ValidationReport",
    "snap_rational",
    "snap_value",
    "validate",
    "degree_map",
    "standardize",
    "gram_matrix",
]

SNAP_MAX_DENOMINATOR = 10**6


class RBAError(Exception):
    """Base class for errors raised by this package."""


class StructuralError(RBAError):
    """Malformed input (bad dimensions, bad permutation, unparseable file)."""


class AxiomError(RBAError):
    """An operation was applied to data violating the RBA axioms."""


class NumericalError(RBAError):
    """A numerical procedure could not reach a trustworthy answer."""


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds and the seed used by randomized procedures."""

    eps_zero: float = 1e-9
    eps_cluster: float = 1e-6
    eps_residual: float = 1e-8
    rng_seed: int = 0

    def __post_init__(self):
        if min(self.eps_zero, self.eps_cluster, self.eps_residual) <= 0:
            raise StructuralError("tolerances must be strictly positive")
        if self.eps_zero > self.eps_cluster:
            raise StructuralError("eps_zero must not exceed eps_cluster")

    def rng(self, attempt: int = 0) -> np.random.Generator:
        """Deterministic generator for a given retry attempt."""
        return np.random.default_rng((self.rng_seed, attempt))


DEFAULT_TOL = ToleranceConfig()


# ---------------------------------------------------------------------------
# scalar helpers
# ---------------------------------------------------------------------------

def snap_rational(x: float, eps: float, max_denominator: int = SNAP_MAX_DENOMINATOR):
    """Nearest small-denominator rational within eps of x, else None.

    Continued-fraction snap via Fraction.limit_denominator, with a margin
    guard: the error must also be well below the 1/q^2 scale at which the
    convergents of irrationals live, otherwise sqrt(2) and friends would
    snap onto their own convergents.
    """
    if isinstance(x, Fraction):
        return x
    if not math.isfinite(x):
        return None
    cand = Fraction(x).limit_denominator(max_denominator)
    err = abs(float(cand) - x)
    if err > eps:
        return None
    if err > 1e-6 / cand.denominator**2:
        return None
    return cand


def snap_value(x, eps: float):
    """Snap a float/complex to a Fraction when possible, else return a float/complex."""
    if isinstance(x, Fraction):
        return x
    z = complex(x)
    if abs(z.imag) > eps:
        return z
    snapped = snap_rational(z.real, eps)
    return snapped if snapped is not None else z.real

def as_float_array(values) -> np.ndarray:
    """Coerce a (possibly Fraction-valued) array to float64."""
    arr = np.asarray(values)
    if arr.dtype == object:
        return np.array([float(v) for v in arr.ravel()], dtype=float).reshape(arr.shape)
    return arr.astype(float)


def _parse_scalar(token: str):
    """Parse an .rba numeric token: 'p/q' and integer stay exact, decimals are floats."""
    token = token.strip()
    try:
        if "/" in token:
            num, den = token.split("/")
            return Fraction(int(num), int(den))
        if token.lstrip("+-").isdigit():
            return Fraction(int(token))
        return float(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise StructuralError(f"bad numeric token {token!r}") from exc


def format_scalar(v) -> str:
    """Canonical text form: exact rationals as p/q or integer, floats via repr."""
    if isinstance(v, Fraction):
        return str(v)
    return repr(float(v))


# ---------------------------------------------------------------------------
# the RBA object
# ---------------------------------------------------------------------------

class RBA:
    """A reality-based algebra presented by its structure-constant tensor.

    Parameters
    ----------
    lam : (r, r, r) array-like
        lam[i, j, k] is the coefficient of b_k in the product b_i b_j.
        If every entry is a Fraction (or int) the RBA is exact; any float
        entry puts the whole RBA in float mode.
    star : length-r iterable of ints
        The involution on basis indices, star[i] = i*.
    labels : optional list of basis-element names.
    """

    def __init__(self, lam, star, labels=None):
        lam = np.asarray(lam, dtype=object)
        if lam.ndim != 3 or len(set(lam.shape)) != 1:
            raise StructuralError(f"lambda tensor must be r x r x r, got shape {lam.shape}")
        r = lam.shape[0]
        star = np.asarray(star, dtype=int)
        if star.shape != (r,) or sorted(star.tolist()) != list(range(r)):
            raise StructuralError("star must be a permutation of 0..r-1")
        flat = lam.ravel()
        exact = True
        for v in flat:
            if isinstance(v, (Fraction, int, np.integer)):
                continue
            exact = False
            break
        if exact:
            self.lam = np.array([Fraction(v) for v in flat], dtype=object).reshape(lam.shape)
        else:
            self.lam = as_float_array(lam)
        self.exact = exact
        self.rank = r
        self.star = star
        self.labels = list(labels) if labels is not None else None
        self._lam_float = None

    @property
    def lam_float(self) -> np.ndarray:
        """float64 view of the tensor (cached)."""
        if self._lam_float is None:
            self._lam_float = as_float_array(self.lam)
        return self._lam_float

    # -- basis structure ----------------------------------------------------

    def real_indices(self):
        return [i for i in range(self.rank) if self.star[i] == i]

    def nonreal_pairs(self):
        """Unordered {i, i*} pairs with i < i*, one tuple per pair."""
        return [(i, int(self.star[i])) for i in range(self.rank) if i < self.star[i]]

    def star_fixed_count(self) -> int:
        return len(self.real_indices())

    # -- algebra operations on coefficient vectors --------------------------

    def mul(self, u, v):
        """Product of two elements given by basis-coefficient vectors."""
        u = np.asarray(u)
        v = np.asarray(v)
        if u.dtype == object or v.dtype == object:
            out = np.empty(self.rank, dtype=object)
            for k in range(self.rank):
                out[k] = sum(
                    u[i] * v[j] * self.lam[i, j, k]
                    for i in range(self.rank)
                    for j in range(self.rank)
                    if u[i] and v[j]
                ) or Fraction(0)
            return out
        return np.einsum("i,j,ijk->k", u, v, self.lam_float)

    def star_coeffs(self, u):
        """Coefficient vector of the *-image of the element with coefficients u."""
        u = np.asarray(u)
        out = np.empty_like(u)
        out[self.star] = np.conj(u) if np.iscomplexobj(u) else u
        return out

    # -- text format ---------------------------------------------------------

    def to_text(self) -> str:
        """Canonical line-oriented text form (rank/star/lambda lines)."""
        lines = [f"rank {self.rank}", "star " + " ".join(str(int(s)) for s in self.star)]
        for i, j, k in itertools.product(range(self.rank), repeat=3):
            v = self.lam[i, j, k]
            if (v == 0) if self.exact else (v == 0.0):
                continue
            lines.append(f"lambda {i} {j} {k} {format_scalar(v)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RBA":
        rank = None
        star = None
        entries = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            try:
                if fields[0] == "rank":
                    rank = int(fields[1])
                elif fields[0] == "star":
                    star = [int(t) for t in fields[1:]]
                elif fields[0] == "lambda":
                    i, j, k = int(fields[1]), int(fields[2]), int(fields[3])
                    entries.append((i, j, k, _parse_scalar(fields[4])))
                else:
                    raise StructuralError(f"line {lineno}: unknown directive {fields[0]!r}")
            except (IndexError, ValueError) as exc:
                raise StructuralError(f"line {lineno}: {raw!r}") from exc
        if rank is None or rank < 1:
            raise StructuralError("missing or invalid 'rank' line")
        if star is None or len(star) != rank:
            raise StructuralError("missing or wrong-length 'star' line")
        exact = all(isinstance(v, Fraction) for _, _, _, v in entries)
        if exact:
            lam = np.full((rank, rank, rank), Fraction(0), dtype=object)
        else:
            lam = np.zeros((rank, rank, rank))
        for i, j, k, v in entries:
            if not (0 <= i < rank and 0 <= j < rank and 0 <= k < rank):
                raise StructuralError(f"lambda index ({i},{j},{k}) out of range for rank {rank}")
            lam[i, j, k] = v if exact else float(v)
        return cls(lam, star)

    @classmethod
    def from_file(cls, path) -> "RBA":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_text(fh.read())

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_text())

    def __repr__(self):
        mode = "exact" if self.exact else "float"
        return f"RBA(rank={self.rank}, mode={mode}, pairs={len(self.nonreal_pairs())})"


# ---------------------------------------------------------------------------
# degree map and trace
# ---------------------------------------------------------------------------

@dataclass
class DegreeMap:
    """The positive one-dimensional representation: values on the basis and the order n."""

    values: np.ndarray          # object array of Fractions when exact, else float64
    exact: bool

    @property
    def n(self):
        return sum(self.values) if self.exact else float(self.values.sum())

    @property
    def values_float(self) -> np.ndarray:
        return as_float_array(self.values)

    @property
    def n_float(self) -> float:
        return float(self.values_float.sum())


@dataclass
class FeasibleTrace:
    """The trace functional picking n times the b_0-coefficient."""

    dm: DegreeMap

    def __call__(self, coeffs):
        return self.dm.n_float * float(np.asarray(coeffs, dtype=float)[0])


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: float
    detail: str = ""

    def __post_init__(self):
        self.passed = bool(self.passed)
        self.residual = float(self.residual)


@dataclass
class ValidationReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def summary(self) -> str:
        lines = []
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            extra = f"  {c.detail}" if c.detail else ""
            lines.append(f"[{status}] {c.name}: residual {c.residual:.3e}{extra}")
        return "\n".join(lines)


def _exact_max_abs(diff_iter) -> float:
    worst = Fraction(0)
    for d in diff_iter:
        if abs(d) > worst:
            worst = abs(d)
    return float(worst)


def validate(rba: RBA, tol: ToleranceConfig = DEFAULT_TOL) -> ValidationReport:
    """Check every defining axiom, reporting a residual per check.

    Exact mode checks identities exactly; float mode compares residuals
    against tol.eps_residual (tol.eps_zero for is-zero decisions).
    """
    r = rba.rank
    star = rba.star
    lam = rba.lam_float
    report = ValidationReport()

    # star is an involution fixing 0
    invol_ok = bool(np.all(star[star] == np.arange(r)) and star[0] == 0)
    report.checks.append(CheckResult("star-involution", invol_ok, 0.0 if invol_ok else 1.0))

    # b_0 is the two-sided identity
    eye = np.eye(r)
    res_id = max(abs(lam[0] - eye).max(), abs(lam[:, 0, :] - eye).max())
    report.checks.append(CheckResult("identity", res_id <= tol.eps_residual, float(res_id)))

    # anti-automorphism: lam[i,j,k] = lam[j*,i*,k*]
    res_star = abs(lam - lam[star][:, star][:, :, star].transpose(1, 0, 2)).max()
    report.checks.append(
        CheckResult("anti-automorphism", res_star <= tol.eps_residual, float(res_star))
    )

    # pseudo-inverse condition
    col0 = lam[:, :, 0]
    off = col0.copy()
    off[np.arange(r), star] = 0.0
    diag = col0[np.arange(r), star]
    diag_sym = abs(diag - col0[star, np.arange(r)]).max()
    worst_off = abs(off).max()
    pos_ok = bool(diag.min() > tol.eps_zero)
    detail = ""
    if not pos_ok or worst_off > tol.eps_zero:
        bad = int(np.argmax(np.abs(off).max(axis=1) + (diag <= tol.eps_zero)))
        detail = f"failing index pair ({bad}, {int(star[bad])})"
    res_pi = max(float(worst_off), float(diag_sym))
    report.checks.append(
        CheckResult(
            "pseudo-inverse",
            pos_ok and worst_off <= tol.eps_zero and diag_sym <= tol.eps_residual,
            res_pi,
            detail,
        )
    )

    # associativity: sum_m lam[i,j,m] lam[m,k,l] = sum_m lam[j,k,m] lam[i,m,l]
    detail = ""
    if rba.exact:
        t = rba.lam
        lhs = t.reshape(r * r, r).dot(t.reshape(r, r * r)).reshape(r, r, r, r)
        # rhs[(j,k),(i,l)] = sum_m lam[j,k,m] lam[i,m,l]
        rhs = (
            t.reshape(r * r, r)
            .dot(t.transpose(1, 0, 2).reshape(r, r * r))
            .reshape(r, r, r, r)
            .transpose(2, 0, 1, 3)
        )
        res_assoc = _exact_max_abs((lhs - rhs).ravel())
        assoc_ok = res_assoc == 0.0
    else:
        lhs = np.einsum("ijm,mkl->ijkl", lam, lam)
        rhs = np.einsum("jkm,iml->ijkl", lam, lam)
        res_assoc = float(abs(lhs - rhs).max())
        assoc_ok = res_assoc <= tol.eps_residual
        if not assoc_ok:
            i, j, k, l = np.unravel_index(int(abs(lhs - rhs).argmax()), lhs.shape)
            detail = f"worst quadruple ({i},{j},{k},{l})"
    report.checks.append(CheckResult("associativity", assoc_ok, float(res_assoc), detail))
    return report


# ---------------------------------------------------------------------------
# degree map computation
# ---------------------------------------------------------------------------

def _one_dim_reps(rba: RBA, tol: ToleranceConfig):
    """All one-dimensional representations, found as common eigenvectors of the
    transposed left regular matrices and filtered by the homomorphism property."""
    r = rba.rank
    lam = rba.lam_float
    found = []
    for attempt in range(8):
        rng = tol.rng(attempt)
        c = rng.uniform(-1.0, 1.0, r)
        m = np.einsum("i,ijk->jk", c, lam)  # acts on value vectors: (Mw)_j = sum_k c.lam[.,j,k] w_k
        _, vecs = np.linalg.eig(m)
        scale = max(1.0, abs(lam).max())
        for t in range(r):
            v = vecs[:, t]
            if abs(v[0]) < tol.eps_zero:
                continue
            v = v / v[0]
            if abs(v.imag).max() < tol.eps_zero:
                v = v.real
            res = abs(np.einsum("ijk,k->ij", lam, v) - np.outer(v, v)).max()
            if res > tol.eps_residual * scale * r:
                continue
            if not any(abs(v - u).max() < tol.eps_cluster * scale for u in found):
                found.append(v)
        if found:
            break
    return found


def degree_map(rba: RBA, tol: ToleranceConfig = DEFAULT_TOL) -> DegreeMap:
    """The unique all-positive one-dimensional representation, plus the order n."""
    reps = _one_dim_reps(rba, tol)
    positive = [v for v in reps if np.isrealobj(v) and v.min() > tol.eps_zero]
    if not positive:
        raise NumericalError("no positive degree map")
    if len(positive) > 1:
        raise NumericalError(
            f"{len(positive)} all-positive one-dimensional representations found; "
            "input is not a valid RBA"
        )
    vals = positive[0]
    if rba.exact:
        snapped = [snap_rational(x, tol.eps_zero) for x in vals]
        if all(s is not None for s in snapped) and _is_exact_hom(rba, snapped):
            return DegreeMap(np.array(snapped, dtype=object), exact=True)
    return DegreeMap(vals, exact=False)


def _is_exact_hom(rba: RBA, vals) -> bool:
    r = rba.rank
    for i, j in itertools.product(range(r), repeat=2):
        if sum(rba.lam[i, j, k] * vals[k] for k in range(r)) != vals[i] * vals[j]:
            return False
    return True


# ---------------------------------------------------------------------------
# standard basis and Gram matrix
# ---------------------------------------------------------------------------

def standardize(rba: RBA, dm: DegreeMap) -> RBA:
    """Rescale the basis so the b_0-coefficient of b_i b_i* equals the degree of b_i.

    b_i' = t_i b_i with t_i = delta_i / lam[i,i*,0]; idempotent.
    """
    r = rba.rank
    star = rba.star
    if rba.exact and dm.exact:
        diag = [rba.lam[i, star[i], 0] for i in range(r)]
        if any(d <= 0 for d in diag):
            raise AxiomError("lam[i,i*,0] must be positive (pseudo-inverse violation)")
        t = [dm.values[i] / diag[i] for i in range(r)]
        lam = np.empty((r, r, r), dtype=object)
        for i, j, k in itertools.product(range(r), repeat=3):
            lam[i, j, k] = rba.lam[i, j, k] * t[i] * t[j] / t[k]
        return RBA(lam, star, rba.labels)
    lamf = rba.lam_float
    diag = lamf[np.arange(r), star, 0]
    if diag.min() <= 0:
        raise AxiomError("lam[i,i*,0] must be positive (pseudo-inverse violation)")
    t = dm.values_float / diag
    lam = lamf * t[:, None, None] * t[None, :, None] / t[None, None, :]
    return RBA(lam, star, rba.labels)


def gram_matrix(rba: RBA, dm: DegreeMap) -> np.ndarray:
    """Gram matrix G[i,j] = tau(b_i b_j*) = n * lam[i, j*, 0] of the trace form."""
    lam = rba.lam_float
    g = dm.n_float * lam[:, rba.star, 0]
    if np.linalg.eigvalsh((g + g.T) / 2).min() <= 0:
        raise AxiomError("trace form is not positive definite; RBA axioms fail upstream")
    return g
