"""
Formal reduction of a non-resonant irregular point to diagonal form.

At a point of Poincare rank ``r >= 1`` with leading coefficient having
pairwise distinct eigenvalues ``alpha^1..alpha^p``, a formal gauge
transformation ``T(z) = I + T^(1) z + T^(2) z^2 + ...`` (after conjugating
the leading term to ``diag(alpha)``) produces a diagonal system
``A(z) = z^-(r+1) (A^(0) + A^(1) z + ...)``. Order by order::

    H^(k) = sum_{l=1}^{k-1} (T^(l) A^(k-l) - B^(k-l) T^(l)) + (k - r) T^(k-r)
    A^(k)_jj = B^(k)_jj - H^(k)_jj
    T^(k)_ij = (B^(k)_ij - H^(k)_ij) / (alpha^j - alpha^i),   i != j

where the last summand of ``H^(k)`` is absent for ``k <= r``. The formal
exponents are the diagonal of ``A^(r)``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DivergenceGuard, NotFuchsian, ResonantPoint
from .numeric import (
    DEFAULT_TOL,
    distinct_eigenpairs,
    eigen_decompose,
    eigenvalues,
    mat_norm1,
    min_gap,
)


@dataclass(frozen=True, eq=False)
class LocalFormalData:
    """Result of :func:`split` at one point.

    Attributes
    ----------
    exponents : list of complex
        Formal exponents, one per leading eigenvalue, in the order of
        ``leading_eigenvalues`` (sorted by real, then imaginary part).
    leading_eigenvalues : list of complex
    q_coeffs : list of ndarray
        ``[A^(0), ..., A^(r-1)]``; the irregular part is
        ``Q(1/z) = -A^(0)/(r z^r) - ... - A^(r-1)/z``.
    t_series, a_series : list of ndarray
        ``T^(1)..T^(K)`` and ``A^(1)..A^(K)``, in the eigenbasis of the
        leading term.
    leading_eigvecs : ndarray
        Columns are eigenvectors of the original leading term, so that
        ``V^-1 B^(0) V = A^(0)``.
    conjugated : list of ndarray
        ``V^-1 B^(k) V`` for ``k = 0..K`` (zero-padded past the input).
    rank, order : int
    """

    exponents: list
    leading_eigenvalues: list
    q_coeffs: list
    t_series: list
    a_series: list
    leading_eigvecs: np.ndarray
    conjugated: list
    rank: int
    order: int

    def gauge(self):
        """Full truncated gauge ``V (I + T^(1) z + ...)`` as a coefficient list."""
        p = self.leading_eigvecs.shape[0]
        return [self.leading_eigvecs @ np.eye(p)] + [self.leading_eigvecs @ t for t in self.t_series]

    def irregular_part(self):
        """Coefficients ``c_m`` of ``Q = sum_m c_m z^-m`` for ``m = r..1``.

        Each ``c_m`` is a diagonal matrix; ``c_(r-k) = -A^(k)/(r-k)``.
        """
        r = self.rank
        return [-self.q_coeffs[k] / (r - k) for k in range(r)]


@dataclass(frozen=True)
class ExponentBound:
    delta: float
    rho: float
    bound: float


def _conjugate_series(coeffs, order, p):
    padded = [np.asarray(c, dtype=complex) for c in coeffs[: order + 1]]
    while len(padded) < order + 1:
        padded.append(np.zeros((p, p), dtype=complex))
    return padded


def split(s, K=None, tol=DEFAULT_TOL, tail=()):
    """Run the splitting recursion at a non-resonant irregular point.

    Parameters
    ----------
    s : SingularPoint
        Point of positive Poincare rank, in local coordinates.
    K : int, optional
        Truncation order, ``K >= r``; defaults to ``r``.
    tail : sequence of ndarray
        Extra coefficients ``B^(r+1), B^(r+2), ...`` (the local Taylor data of
        the regular part, see :func:`quadsolv.system.local_series`). Missing
        ones are taken as zero.

    Raises
    ------
    ResonantPoint
        If ``r == 0`` or the leading eigenvalues are not distinct.
    DivergenceGuard
        If some ``||T^(k)||_1`` exceeds ``tol.divergence_cap``.
    """
    r = s.poincare_rank
    if r < 1:
        raise ResonantPoint("splitting needs a point of positive Poincare rank")
    if K is None:
        K = r
    if K < r:
        raise ValueError(f"truncation order K={K} is below the Poincare rank {r}")
    p = s.dimension
    alphas, V = eigen_decompose(s.leading, tol)
    if not distinct_eigenpairs(alphas, V, tol):
        raise ResonantPoint(
            f"leading eigenvalues {alphas} are not pairwise distinct (gap {min_gap(alphas):.3e})"
        )
    Vinv = np.linalg.inv(V)
    B = [Vinv @ c @ V for c in _conjugate_series(list(s.coeffs) + list(tail), K, p)]
    alpha = np.array(alphas)
    # denom[i, j] = alpha^j - alpha^i, unit on the diagonal (unused there)
    denom = alpha[None, :] - alpha[:, None]
    np.fill_diagonal(denom, 1.0)
    offdiag = ~np.eye(p, dtype=bool)

    A = [np.diag(alpha)]
    T = [np.eye(p, dtype=complex)]
    for k in range(1, K + 1):
        H = np.zeros((p, p), dtype=complex)
        for l in range(1, k):
            H += T[l] @ A[k - l] - B[k - l] @ T[l]
        if k > r:
            H += (k - r) * T[k - r]
        R = B[k] - H
        A.append(np.diag(np.diag(R)))
        Tk = np.where(offdiag, R / denom, 0.0)
        if mat_norm1(Tk) > tol.divergence_cap:
            raise DivergenceGuard(f"||T^({k})||_1 = {mat_norm1(Tk):.3e} exceeds the cap")
        T.append(Tk)

    exponents = [complex(x) for x in np.diag(A[r])]
    return LocalFormalData(
        exponents=exponents,
        leading_eigenvalues=list(alphas),
        q_coeffs=A[:r],
        t_series=T[1:],
        a_series=A[1:],
        leading_eigvecs=V,
        conjugated=B,
        rank=r,
        order=K,
    )


def fuchsian_exponents(s, tol=DEFAULT_TOL):
    """Eigenvalues of the residue at a Fuchsian point, with multiplicity."""
    if s.poincare_rank != 0:
        raise NotFuchsian(f"Poincare rank {s.poincare_rank} is not zero")
    return eigenvalues(s.leading, tol)


def pk_polynomial(k):
    """Integer coefficients of ``P_k`` in ascending degree (``P_k(0) = 0``).

    ``P_1(x) = 2x`` and for ``k >= 2``::

        P_k = 2k x + sum_{l=2}^{k} 3x P_(l-1) + sum_{l=2}^{k-1} x P_(l-1) P_(k-l)

    >>> pk_polynomial(2)
    [0, 4, 6]
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    polys = {1: [0, 2]}

    def add(a, b):
        n = max(len(a), len(b))
        return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return out

    for m in range(2, k + 1):
        acc = [0, 2 * m]
        for l in range(2, m + 1):
            acc = add(acc, mul([0, 3], polys[l - 1]))
        for l in range(2, m):
            acc = add(acc, mul([0, 1], mul(polys[l - 1], polys[m - l])))
        polys[m] = acc
    return polys[k]


def eval_poly(coeffs, x):
    return sum(c * x**i for i, c in enumerate(coeffs))


def exponent_bound(s, tol=DEFAULT_TOL):
    """Explicit bound ``delta (1 + P_(r-1)(delta/rho))`` on the formal exponents.

    ``delta`` is the largest 1-norm of ``B^(1)..B^(r)`` in the eigenbasis of
    the leading term (normalized as in :func:`eigen_decompose`); ``rho`` the
    smallest gap between leading eigenvalues. ``P_0`` is taken as zero.
    """
    r = s.poincare_rank
    if r < 1:
        raise ResonantPoint("exponent bound needs a point of positive Poincare rank")
    alphas, V = eigen_decompose(s.leading, tol)
    if not distinct_eigenpairs(alphas, V, tol):
        raise ResonantPoint("leading eigenvalues are not pairwise distinct")
    Vinv = np.linalg.inv(V)
    delta = max(mat_norm1(Vinv @ c @ V) for c in s.coeffs[1:])
    rho = min_gap(alphas) if len(alphas) > 1 else float("inf")
    if r == 1 or delta == 0:
        bound = delta
    else:
        bound = delta * (1 + eval_poly(pk_polynomial(r - 1), delta / rho))
    return ExponentBound(delta=float(delta), rho=float(rho), bound=float(bound))
