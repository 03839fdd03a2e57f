"""
Dense complex linear algebra for small matrices and the tolerance policy.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; scalars are
Python ``complex``. Every comparison against zero in the package goes
through a :class:`TolerancePolicy`.
"""

from dataclasses import dataclass
from fractions import Fraction
import math

import numpy as np

from .errors import ConvergenceFailure, NonSquare, SizeExceeded


@dataclass(frozen=True)
class TolerancePolicy:
    """Thresholds governing equality, rank and rationality decisions.

    Parameters
    ----------
    eq_tol : float
        Scalar equality threshold (relative where a scale is available).
    rank_tol : float
        Singular-value / pivot threshold, relative to the matrix norm.
    rational_denominator_bound : int
        Largest denominator accepted by :func:`is_rational`.
    rational_tol : float
        Maximal distance between a number and its rational approximation.
    check_tol : float
        Relative threshold used when verifying witnesses (triangular and
        diagonal forms) by re-multiplication.
    max_size : int
        Largest matrix dimension accepted by the eigen solver.
    divergence_cap : float
        Bound on the 1-norm of gauge coefficients in the splitting recursion.
    """

    eq_tol: float = 1e-9
    rank_tol: float = 1e-9
    rational_denominator_bound: int = 10**6
    rational_tol: float = 1e-6
    check_tol: float = 1e-6
    max_size: int = 16
    divergence_cap: float = 1e12

    def __post_init__(self):
        for name in ("eq_tol", "rank_tol", "rational_tol", "check_tol", "divergence_cap"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
        if self.rational_denominator_bound < 1:
            raise ValueError("rational_denominator_bound must be >= 1")
        if self.max_size < 1:
            raise ValueError("max_size must be >= 1")

    def as_dict(self):
        return {
            "eq_tol": self.eq_tol,
            "rank_tol": self.rank_tol,
            "rational_denominator_bound": self.rational_denominator_bound,
            "rational_tol": self.rational_tol,
            "check_tol": self.check_tol,
        }


DEFAULT_TOL = TolerancePolicy()


def as_cmatrix(m):
    """Return ``m`` as a finite 2-D complex array (copy)."""
    a = np.array(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def mat_norm1(m):
    """Induced 1-norm: maximum absolute column sum."""
    a = np.asarray(m, dtype=complex)
    if a.size == 0:
        return 0.0
    return float(np.abs(a).sum(axis=0).max())


def normalize_vector(v):
    """Scale ``v`` to unit 1-norm with its first nonzero entry positive real.

    Entries below ``1e-14`` of the largest magnitude are not considered
    "nonzero" when choosing the phase, so that rounding noise does not
    decide the sign.
    """
    v = np.asarray(v, dtype=complex)
    n1 = np.abs(v).sum()
    if n1 == 0:
        return v.copy()
    v = v / n1
    mags = np.abs(v)
    k = int(np.argmax(mags > 1e-14 * mags.max()))
    phase = v[k] / abs(v[k])
    return v / phase


def eigenvalue_key(z, ndigits=10):
    """Deterministic sort key for complex eigenvalues (re, then im)."""
    z = complex(z)
    return (round(z.real, ndigits), round(z.imag, ndigits))


def eigen_decompose(m, tol=DEFAULT_TOL):
    """Eigenvalues and eigenvectors of a square matrix.

    Eigenvalues are sorted by (real, imaginary) part; column ``j`` of the
    returned matrix is an eigenvector for eigenvalue ``j``, normalized with
    :func:`normalize_vector`.

    Raises
    ------
    NonSquare, SizeExceeded, ConvergenceFailure
    """
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSquare(f"eigen_decompose needs a square matrix, got shape {a.shape}")
    p = a.shape[0]
    if p > tol.max_size:
        raise SizeExceeded(f"matrix size {p} exceeds the configured cap {tol.max_size}")
    try:
        w, v = np.linalg.eig(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    order = sorted(range(p), key=lambda j: eigenvalue_key(w[j]))
    w = w[order]
    v = np.column_stack([normalize_vector(v[:, j]) for j in order]) if p else v
    bound = tol.rank_tol * max(mat_norm1(a), np.finfo(float).tiny)
    for j in range(p):
        res = np.abs(a @ v[:, j] - w[j] * v[:, j]).sum()
        if res > bound and res > 64 * np.finfo(float).eps * max(mat_norm1(a), 1.0):
            raise ConvergenceFailure(
                f"eigenpair {j} residual {res:.3e} exceeds {bound:.3e}"
            )
    return [complex(x) for x in w], v


def eigenvalues(m, tol=DEFAULT_TOL):
    return eigen_decompose(m, tol)[0]


def distinct(values, tol=DEFAULT_TOL):
    """True iff all pairwise gaps exceed ``eq_tol * (1 + max|value|)``."""
    values = [complex(x) for x in values]
    if len(values) < 2:
        return True
    thr = tol.eq_tol * (1.0 + max(abs(x) for x in values))
    return min_gap(values) > thr


def distinct_eigenpairs(values, vectors, tol=DEFAULT_TOL):
    """Distinctness that also catches numerically split defective eigenvalues.

    A Jordan block perturbed by rounding ``eps`` splits into eigenvalues about
    ``sqrt(eps)`` apart with nearly parallel eigenvectors, which the plain
    ``eq_tol`` gap test would call distinct. Pairs closer than
    ``sqrt(eq_tol) * (1 + max|value|)`` whose eigenvectors make an angle with
    sine at most ``sqrt(eq_tol)`` are treated as one eigenvalue.
    """
    values = [complex(x) for x in values]
    if not distinct(values, tol):
        return False
    if len(values) < 2:
        return True
    near = math.sqrt(tol.eq_tol) * (1.0 + max(abs(x) for x in values))
    V = np.asarray(vectors, dtype=complex)
    V = V / np.linalg.norm(V, axis=0)
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            if abs(values[i] - values[j]) <= near:
                c = abs(np.vdot(V[:, i], V[:, j]))
                if math.sqrt(max(0.0, 1.0 - c * c)) <= math.sqrt(tol.eq_tol):
                    return False
    return True


def min_gap(values):
    values = [complex(x) for x in values]
    gaps = [abs(x - y) for i, x in enumerate(values) for y in values[i + 1:]]
    return min(gaps) if gaps else math.inf


def cluster(values, radius):
    """Group values into clusters of mutually ``radius``-close members.

    Single linkage in input order; returns a list of index lists.
    """
    values = [complex(x) for x in values]
    groups = []
    for i, x in enumerate(values):
        hits = [g for g in groups if any(abs(x - values[j]) <= radius for j in g)]
        merged = [i]
        for g in hits:
            merged.extend(g)
            groups.remove(g)
        groups.append(sorted(merged))
    groups.sort(key=lambda g: g[0])
    return groups


def rank_and_nullspace(m, tol=DEFAULT_TOL):
    """Numerical rank and an orthonormal nullspace basis.

    A singular value counts as zero when it is at most
    ``rank_tol * ||m||_1 / sqrt(rows)``; with that cut every returned basis
    column ``v`` satisfies ``||m v||_1 <= rank_tol ||m||_1 ||v||_1``.
    """
    a = np.asarray(m, dtype=complex)
    rows, cols = a.shape
    if a.size == 0:
        return 0, np.eye(cols, dtype=complex)
    _, s, vh = np.linalg.svd(a)
    thr = tol.rank_tol * mat_norm1(a) / math.sqrt(rows)
    rank = int(np.sum(s > thr))
    null = vh[rank:].conj().T
    return rank, null


def rank(m, tol=DEFAULT_TOL):
    return rank_and_nullspace(m, tol)[0]


def nullspace(m, tol=DEFAULT_TOL):
    return rank_and_nullspace(m, tol)[1]


def inverse(m, tol=DEFAULT_TOL):
    """Inverse of a square matrix; ``ValueError`` if numerically singular."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSquare(f"cannot invert shape {a.shape}")
    if rank(a, tol) < a.shape[0]:
        raise ValueError("matrix is numerically singular")
    return np.linalg.inv(a)


def commutator(x, y):
    return x @ y - y @ x


def _continued_fraction_convergents(x, max_terms=64):
    h0, h1 = 0, 1
    k0, k1 = 1, 0
    for _ in range(max_terms):
        a = math.floor(x)
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        yield h1, k1
        frac = x - a
        if frac == 0:
            return
        x = 1.0 / frac
        if not math.isfinite(x):
            return


def is_rational(x, tol=DEFAULT_TOL, strict=False):
    """Detect a small-denominator rational close to ``x``.

    Walks the continued-fraction convergents of ``Re x`` and returns the
    first one ``p/q`` with ``q <= rational_denominator_bound`` and
    ``|x - p/q| <= rational_tol``, provided ``|Im x| <= rational_tol``.
    Returns ``None`` otherwise.

    With the default bounds every real number passes (a convergent with
    ``q <= 10**6`` is always within ``1/(q * 10**6)``). ``strict=True``
    tightens the distance to ``rational_tol / q**2``, which exact rationals
    meet up to rounding while a typical irrational does not.

    >>> is_rational(0.5)
    Fraction(1, 2)
    """
    z = complex(x)
    if abs(z.imag) > tol.rational_tol or not math.isfinite(z.real):
        return None
    for p, q in _continued_fraction_convergents(z.real):
        if q > tol.rational_denominator_bound:
            return None
        allowed = tol.rational_tol / (q * q) if strict else tol.rational_tol
        if abs(z.real - p / q) <= allowed:
            return Fraction(p, q)
    return None


def near_integer(x, tol=DEFAULT_TOL):
    """Nearest integer to ``x`` if within ``eq_tol * (1 + |x|)``, else None."""
    z = complex(x)
    n = round(z.real)
    if abs(z - n) <= tol.eq_tol * (1.0 + abs(z)):
        return int(n)
    return None
