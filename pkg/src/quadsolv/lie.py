"""
Matrix Lie algebras generated by finitely many matrices.

Solvability is decided three ways: by the derived series, by the trace
form ``Tr(u v)`` between the algebra and its derived algebra (Cartan's
criterion), and constructively by simultaneous triangularization through
repeated common-eigenvector deflation.

Spans are tracked on vectorized matrices (``p*p`` complex vectors). Before
closure the generators are divided by their largest Frobenius norm, and
every adjoined bracket is capped at unit norm, so a single absolute
threshold ``rank_tol`` decides independence. Elements are stored
unnormalized below unit norm: a bracket that vanishes as a parameter
tends to a special value shrinks with it, which keeps Cartan pairings
continuous in the parameters.
"""

from dataclasses import dataclass, field
import logging
import math

import numpy as np

from .errors import NotClosed, SizeExceeded, SizeMismatch
from .numeric import DEFAULT_TOL, cluster, eigenvalues, mat_norm1, normalize_vector

log = logging.getLogger(__name__)


def bracket(x, y):
    return x @ y - y @ x


def _check_set(ms, tol):
    mats = [np.asarray(m, dtype=complex) for m in ms]
    if not mats:
        raise SizeMismatch("empty matrix set")
    p = mats[0].shape[0]
    for m in mats:
        if m.ndim != 2 or m.shape != (p, p):
            raise SizeMismatch(f"matrices must all be {p}x{p}, got {m.shape}")
    if p > tol.max_size:
        raise SizeExceeded(f"matrix size {p} exceeds the configured cap {tol.max_size}")
    return mats, p


class _Span:
    """Incrementally built orthonormal basis of a subspace of C^n."""

    def __init__(self, n, thr):
        self.n = n
        self.thr = thr
        self.q = np.zeros((n, 0), dtype=complex)

    def residual(self, v):
        r = v - self.q @ (self.q.conj().T @ v)
        return r - self.q @ (self.q.conj().T @ r)

    def add(self, v):
        if self.q.shape[1] >= self.n:
            return False
        r = self.residual(v)
        nr = np.linalg.norm(r)
        if nr <= self.thr:
            return False
        self.q = np.column_stack([self.q, r / nr])
        return True


def _cap(x):
    n = np.linalg.norm(x)
    return x / n if n > 1.0 else x


@dataclass(frozen=True, eq=False)
class LieBasis:
    """Spanning data of a matrix Lie algebra.

    ``basis`` holds independent elements of the algebra scaled by ``1/scale``
    (``scale`` being the largest generator Frobenius norm); ``span`` is an
    orthonormal basis of the same subspace in vectorized form.
    """

    generators: list
    basis: list
    dim: int
    closed: bool
    scale: float
    span: np.ndarray = field(repr=False)

    @property
    def size(self):
        return self.generators[0].shape[0]


def _extend(elements, candidates, span, normalize=False):
    for x in candidates:
        if span.add(x.ravel()):
            elements.append(x / np.linalg.norm(x) if normalize else _cap(x))


def lie_closure(gens, tol=DEFAULT_TOL):
    """Basis of the Lie algebra generated by ``gens``.

    Seeds with an independent subset of the (rescaled) generators, then
    adjoins brackets of basis pairs that enlarge the span until every pair
    has been bracketed.
    """
    mats, p = _check_set(gens, tol)
    scale = max(np.linalg.norm(m) for m in mats)
    span = _Span(p * p, tol.rank_tol)
    basis = []
    if scale > 0:
        _extend(basis, [m / scale for m in mats], span)
        k = 0
        while k < len(basis) and len(basis) < p * p:
            _extend(basis, [bracket(basis[j], basis[k]) for j in range(k)], span)
            k += 1
    return LieBasis(
        generators=mats,
        basis=basis,
        dim=len(basis),
        closed=True,
        scale=float(scale) if scale > 0 else 1.0,
        span=span.q,
    )


def in_span(lb, x, tol=DEFAULT_TOL):
    """Least-squares residual test of ``x`` (already scaled) against the basis."""
    v = np.asarray(x, dtype=complex).ravel()
    if lb.dim == 0:
        return np.linalg.norm(v) <= tol.rank_tol
    A = np.column_stack([b.ravel() for b in lb.basis])
    coef, *_ = np.linalg.lstsq(A, v, rcond=None)
    return np.linalg.norm(A @ coef - v) <= tol.rank_tol * max(1.0, np.linalg.norm(v))


def verify_closed(lb, tol=DEFAULT_TOL):
    """Check every bracket of basis elements against the span (independent of closure)."""
    return all(
        in_span(lb, bracket(x, y), tol)
        for i, x in enumerate(lb.basis)
        for y in lb.basis[i + 1:]
    )


def derived_algebra(elements, tol=DEFAULT_TOL, normalize=False):
    """Independent elements spanning ``[g, g]`` for ``g = span(elements)``.

    Brackets are kept at their own magnitude (capped at unit norm) unless
    ``normalize`` is set, in which case each is scaled to unit norm once it
    has passed the independence test.
    """
    if not elements:
        return []
    p = elements[0].shape[0]
    span = _Span(p * p, tol.rank_tol)
    out = []
    _extend(
        out,
        [bracket(x, y) for i, x in enumerate(elements) for y in elements[i + 1:]],
        span,
        normalize,
    )
    return out


def derived_series_solvable(lb, tol=DEFAULT_TOL):
    """Solvability through the derived series ``g, [g,g], [[g,g],[g,g]], ...``.

    Returns ``(solvable, dims)`` where ``dims`` lists the dimensions of the
    terms until they vanish or stabilize. Terms are renormalized level by
    level so that higher brackets are not lost to the absolute threshold.
    """
    if not lb.closed:
        raise NotClosed("derived series needs a closed Lie basis")
    dims = [lb.dim]
    current = lb.basis
    for _ in range(lb.size**2 + 1):
        if not current:
            return True, dims
        nxt = derived_algebra(current, tol, normalize=True)
        dims.append(len(nxt))
        if len(nxt) == len(current):
            return False, dims
        current = nxt
    return not current, dims


def _ad_matrices(lb, elements):
    A = np.column_stack([b.ravel() for b in lb.basis])
    out = []
    for u in elements:
        cols = [bracket(u, b).ravel() for b in lb.basis]
        coef, *_ = np.linalg.lstsq(A, np.column_stack(cols), rcond=None)
        out.append(coef)
    return out


def cartan_pairings(lb, tol=DEFAULT_TOL, form="trace"):
    """Pairing matrix ``f_ij`` between basis ``u_i`` and derived basis ``v_j``.

    ``form="trace"`` uses ``Tr(u_i v_j)``; ``form="killing"`` uses
    ``Tr(ad u_i ad v_j)`` on the algebra itself. Returns ``(f, scale)`` where
    ``scale = max_i ||u_i|| * max_j ||v_j||`` in the matching norm.
    """
    if not lb.closed:
        raise NotClosed("Cartan criterion needs a closed Lie basis")
    derived = derived_algebra(lb.basis, tol)
    if not derived:
        return np.zeros((lb.dim, 0), dtype=complex), 1.0
    if form == "trace":
        us, vs = lb.basis, derived
        f = np.array([[np.trace(u @ v) for v in vs] for u in us])
    elif form == "killing":
        us = _ad_matrices(lb, lb.basis)
        vs = _ad_matrices(lb, derived)
        f = np.array([[np.trace(u @ v) for v in vs] for u in us])
    else:
        raise ValueError(f"unknown form {form!r}")
    scale = max(mat_norm1(u) for u in us) * max(mat_norm1(v) for v in vs)
    return f, scale


def cartan_solvable(lb, tol=DEFAULT_TOL, form="trace"):
    """Cartan's criterion: solvable iff the pairing of ``g`` with ``[g,g]`` vanishes.

    Returns ``(solvable, max_pairing)`` with ``max_pairing = max |f_ij|``.
    """
    f, scale = cartan_pairings(lb, tol, form)
    if f.size == 0:
        return True, 0.0
    m = float(np.abs(f).max())
    return m <= tol.rank_tol * scale, m


def cartan_indicator(lb, tol=DEFAULT_TOL):
    """Scale-free pairing ``max |Tr(u_i v_j)| / (max ||u|| max ||v||)``."""
    f, scale = cartan_pairings(lb, tol)
    if f.size == 0:
        return 0.0
    return float(np.abs(f).max() / scale)


# ---------------------------------------------------------------------------
# common eigenvectors and triangularization


def _null(a, thr):
    """Orthonormal basis of the singular subspace with singular values <= thr."""
    if a.shape[1] == 0:
        return np.zeros((a.shape[1], 0), dtype=complex)
    _, s, vh = np.linalg.svd(a)
    s = np.concatenate([s, np.zeros(a.shape[1] - len(s))])
    return vh[s <= thr].conj().T


def _largest_invariant(Q, M, thr):
    """Largest ``M``-invariant subspace inside ``span(Q)`` (``Q`` orthonormal)."""
    while Q.shape[1] > 0:
        MQ = M @ Q
        E = MQ - Q @ (Q.conj().T @ MQ)
        Z = _null(E, thr)
        if Z.shape[1] == Q.shape[1]:
            return Q
        Q = Q @ Z
    return Q


def _cluster_radius(values, tol):
    big = max((abs(x) for x in values), default=0.0)
    return math.sqrt(tol.eq_tol) * (1.0 + big)


def _eigenspaces(R, thr, tol):
    """Eigenspaces of ``R`` as (eigenvalue, orthonormal basis) pairs.

    Eigenvalues closer than a cluster radius are grouped and their mean is
    tried first; if that yields nothing, the members are tried one by one.
    """
    n = R.shape[0]
    eig = eigenvalues(R, tol)
    out = []
    for group in cluster(eig, _cluster_radius(eig, tol)):
        mu = complex(np.mean([eig[i] for i in group]))
        N = _null(R - mu * np.eye(n), thr)
        if N.shape[1] == 0 and len(group) > 1:
            pieces = [_null(R - eig[i] * np.eye(n), thr) for i in group]
            pieces = [x for x in pieces if x.shape[1]]
            if pieces:
                stacked = np.column_stack(pieces)
                u, s, _ = np.linalg.svd(stacked, full_matrices=False)
                N = u[:, s > 0.5]
                mu = complex(np.mean([eig[i] for i in group]))
        if N.shape[1]:
            out.append((mu, N, len(group)))
    return out


def _scale(mats):
    return max(mat_norm1(m) for m in mats)


def _common_eigenvector(mats, thr, tol):
    p = mats[0].shape[0]
    active = [m for m in mats if np.any(np.abs(m) > 0)]

    def search(Q, idx):
        if idx == len(active):
            return Q[:, 0]
        M = active[idx]
        W = _largest_invariant(Q, M, thr)
        if W.shape[1] == 0:
            return None
        R = W.conj().T @ M @ W
        for _, N, _ in _eigenspaces(R, thr, tol):
            found = search(W @ N, idx + 1)
            if found is not None:
                return found
        return None

    return search(np.eye(p, dtype=complex), 0)


def common_eigenvector(ms, tol=DEFAULT_TOL):
    """A vector that is an eigenvector of every matrix in ``ms``, or ``None``.

    Processes the matrices in order, keeping a subspace on which all
    matrices seen so far act as scalars, and branching over the eigenvalues
    of each new matrix restricted to its largest invariant subspace inside
    that candidate subspace.
    """
    mats, p = _check_set(ms, tol)
    scale = _scale(mats)
    if scale == 0:
        return normalize_vector(np.eye(p, dtype=complex)[:, 0])
    v = _common_eigenvector(mats, tol.rank_tol * scale, tol)
    return None if v is None else normalize_vector(v)


def _complete_basis(v):
    """Unitary matrix with first column ``v/|v|``.

    The standard basis vector most collinear with ``v`` is dropped; the rest
    are orthogonalized (twice) against what is already there.
    """
    n = v.shape[0]
    u = v / np.linalg.norm(v)
    drop = int(np.argmax(np.abs(u)))
    cols = [u]
    for k in range(n):
        if k == drop:
            continue
        e = np.zeros(n, dtype=complex)
        e[k] = 1.0
        for _ in range(2):
            for c in cols:
                e = e - c * np.vdot(c, e)
        cols.append(e / np.linalg.norm(e))
    return np.column_stack(cols), drop


@dataclass(frozen=True, eq=False)
class TriangularWitness:
    p_matrix: np.ndarray
    flag_order: list

    def transform(self, ms):
        Pinv = np.linalg.inv(self.p_matrix)
        return [Pinv @ np.asarray(m, dtype=complex) @ self.p_matrix for m in ms]


def triangular_defect(P, ms):
    """Largest below-diagonal magnitude of ``P^-1 M P`` over ``ms``."""
    Pinv = np.linalg.inv(P)
    worst = 0.0
    for m in ms:
        t = Pinv @ np.asarray(m, dtype=complex) @ P
        low = np.tril(t, -1)
        worst = max(worst, float(np.abs(low).max()) if low.size else 0.0)
    return worst


def diagonal_defect(C, ms):
    """Largest off-diagonal magnitude of ``C M C^-1`` over ``ms``."""
    Cinv = np.linalg.inv(C)
    worst = 0.0
    for m in ms:
        t = C @ np.asarray(m, dtype=complex) @ Cinv
        off = t - np.diag(np.diag(t))
        worst = max(worst, float(np.abs(off).max()))
    return worst


def simultaneous_triangularize(ms, tol=DEFAULT_TOL):
    """Unitary ``P`` with every ``P^-1 M P`` upper triangular, or ``None``.

    Deflates one common eigenvector at a time and recurses on the trailing
    blocks. ``flag_order`` records, per level, which standard basis vector
    was dropped when completing the eigenvector to a basis.
    """
    mats, p = _check_set(ms, tol)
    scale = _scale(mats)
    if scale == 0:
        return TriangularWitness(np.eye(p, dtype=complex), [])
    thr = tol.rank_tol * scale
    P = np.eye(p, dtype=complex)
    current = mats
    flags = []
    for level in range(p - 1):
        v = _common_eigenvector(current, thr, tol)
        if v is None:
            return None
        Q, drop = _complete_basis(v)
        flags.append(level + drop)
        current = [(Q.conj().T @ m @ Q)[1:, 1:] for m in current]
        step = np.eye(p, dtype=complex)
        step[level:, level:] = Q
        P = P @ step
    if triangular_defect(P, mats) > tol.check_tol * scale:
        log.warning("triangular witness failed verification; reporting no witness")
        return None
    return TriangularWitness(P, flags)


def simultaneous_diagonalize(ms, tol=DEFAULT_TOL):
    """``C`` with every ``C M C^-1`` diagonal, or ``None``.

    Requires pairwise commuting, individually diagonalizable matrices; the
    common eigenbasis is built by splitting eigenspaces matrix by matrix.
    """
    mats, p = _check_set(ms, tol)
    scale = _scale(mats)
    if scale == 0:
        return np.eye(p, dtype=complex)
    thr = tol.rank_tol * scale
    for i, x in enumerate(mats):
        for y in mats[i + 1:]:
            if mat_norm1(bracket(x, y)) > tol.rank_tol * scale * scale:
                return None
    blocks = [np.eye(p, dtype=complex)]
    for m in mats:
        refined = []
        for Q in blocks:
            R = Q.conj().T @ m @ Q
            spaces = _eigenspaces(R, thr, tol)
            if sum(N.shape[1] for _, N, _ in spaces) != Q.shape[1]:
                return None
            refined.extend(Q @ N for _, N, _ in spaces)
        blocks = refined
    V = np.column_stack(blocks)
    C = np.linalg.inv(V)
    if diagonal_defect(C, mats) > tol.check_tol * scale:
        log.warning("diagonalizer failed verification; reporting no witness")
        return None
    return C
