"""Random generators and exact oracles shared by the test modules."""

import numpy as np
import sympy as sp

from quadsolv.numeric import mat_norm1
from quadsolv.system import LinearSystem, SingularPoint

# Matrices as printed for the first 3x3 example (integer part only).
M1 = [[-5, -4, -4], [17, 14, 13], [-10, -8, -7]]
M2 = [[-6, -5, -5], [23, 17, 15], [-14, -9, -7]]
M3 = [[1, 1, 1], [-11, -7, -6], [8, 4, 3]]
M1M2 = [[-1, -1, -1], [14, 10, 10], [-13, -9, -9]]


def ex1_matrices(a, b, c):
    M4 = [
        [2 * a - c, a - c, a - c],
        [-3 - 6 * a + 5 * c, -2 - 3 * a + 5 * c, -2 - 3 * a + 5 * c],
        [3 + 4 * a - 3 * c, 2 + 2 * a - 3 * c, 2 + 2 * a - 3 * c],
    ]
    M5 = [[0, 0, 0], [b + 2, -b + 1, -2 * b + 1], [-b - 2, b - 1, 2 * b - 1]]
    M6 = [
        [-2 * a + c, -a + c, -a + c],
        [-b + 6 * a + 1 - 5 * c, b + 3 * a + 1 - 5 * c, 2 * b + 3 * a + 1 - 5 * c],
        [b - 4 * a - 1 + 3 * c, -b - 2 * a - 1 + 3 * c, -2 * b - 2 * a - 1 + 3 * c],
    ]
    return [np.array(m, dtype=complex) for m in (M1, M2, M3, M4, M5, M6)]


def ex2_matrices(a, b):
    return [
        np.array([[1, 0, 0], [0, -1, 0], [0, 0, 2]], dtype=complex),
        np.array([[0, 0, 0], [3 * a, 3 + b, 1], [-3 * a * b, -b * b - 5 * b, -2 - b]], dtype=complex),
        np.array([[-1, 0, 0], [0, 4, 0], [-2, 0, 1]], dtype=complex),
    ]


def ex2_printed_brackets(a, b):
    """The four extra matrices of the printed Lie algebra list (a, b bound)."""
    return [
        np.array([[0, 0, 0], [-6 * a, 0, -3], [-3 * a * b, -3 * b * b - 15 * b, 0]], dtype=complex),
        np.array([[0, 0, 0], [0, 0, 0], [-2, 0, 0]], dtype=complex),
        np.array(
            [[0, 0, 0], [-15 * a - 2, 0, -3], [6 * a * b + 2 * b + 4, -3 * b * b - 15 * b, 0]],
            dtype=complex,
        ),
        np.array([[0, 0, 0], [12 * a, 0, 9], [-3 * a * b, -9 * b * b - 45 * b, 0]], dtype=complex),
    ]


# ---------------------------------------------------------------------------
# random data


def rand_complex(rng, shape, scale=1.0):
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def rand_invertible(rng, p, cond_max=50.0):
    while True:
        S = rand_complex(rng, (p, p))
        if np.linalg.cond(S) < cond_max:
            return S


def spaced_eigenvalues(rng, p, rho, radius=3.0):
    """``p`` complex numbers with pairwise gaps at least ``rho``."""
    out = []
    while len(out) < p:
        z = complex(*rng.uniform(-radius, radius, 2))
        if all(abs(z - w) >= rho for w in out):
            out.append(z)
    return out


def scaled_to_norm1(m, target):
    n = np.abs(m).sum(axis=0).max()
    return m if n == 0 else m * (target / n)


def random_nonresonant_point(rng, p, r, delta, rho, conjugate=True):
    """Irregular point with ``max_k ||B~^(k)||_1 <= delta`` in the eigenbasis.

    Returns the point and the diagonalizing matrix used to build it.
    """
    alphas = spaced_eigenvalues(rng, p, rho)
    S = rand_invertible(rng, p) if conjugate else np.eye(p, dtype=complex)
    # normalize columns like the library does so the eigenbasis delta matches
    S = S / np.abs(S).sum(axis=0)
    Sinv = np.linalg.inv(S)
    coeffs = [S @ np.diag(alphas) @ Sinv]
    for _ in range(r):
        t = rand_complex(rng, (p, p))
        t = scaled_to_norm1(t, delta * rng.uniform(0.0, 1.0))
        coeffs.append(S @ t @ Sinv)
    return SingularPoint(0j, r, coeffs), S


def random_triangularizable(rng, p, k, conjugate=True):
    S = rand_invertible(rng, p) if conjugate else np.eye(p)
    Sinv = np.linalg.inv(S)
    return [S @ np.triu(rand_complex(rng, (p, p))) @ Sinv for _ in range(k)]


def random_matrix_set(rng, kind, p, k):
    """One of several families used for the Lie cross-checks."""
    if kind == "triangularizable":
        return random_triangularizable(rng, p, k)
    if kind == "generic":
        return [rand_complex(rng, (p, p)) for _ in range(k)]
    if kind == "real":
        return [rng.integers(-3, 4, (p, p)).astype(complex) for _ in range(k)]
    if kind == "commuting":
        M = rand_complex(rng, (p, p))
        polys = [np.eye(p), M, M @ M, M @ M @ M]
        return [sum(rng.standard_normal() * P for P in polys) for _ in range(k)]
    if kind == "defective":
        J = np.eye(p, k=1) + 2 * np.eye(p)
        S = rand_invertible(rng, p)
        Sinv = np.linalg.inv(S)
        polys = [np.eye(p), J, J @ J]
        return [S @ sum(rng.standard_normal() * P for P in polys) @ Sinv for _ in range(k)]
    if kind == "block":
        # block upper triangular with a random 2x2 block: solvable only by accident
        S = rand_invertible(rng, p)
        Sinv = np.linalg.inv(S)
        out = []
        for _ in range(k):
            m = np.triu(rand_complex(rng, (p, p)))
            m[1, 0] = rand_complex(rng, ())
            out.append(S @ m @ Sinv)
        return out
    if kind == "sl2":
        e = np.zeros((p, p))
        f = np.zeros((p, p))
        e[0, 1] = 1
        f[1, 0] = 1
        S = rand_invertible(rng, p)
        Sinv = np.linalg.inv(S)
        return [S @ e @ Sinv, S @ f @ Sinv][:max(k, 2)]
    raise ValueError(kind)


def leading_terms_system(rng, p, n, triangularizable):
    """System with only leading terms at ``n`` finite points of random ranks."""
    if triangularizable:
        S = rand_invertible(rng, p)
        Sinv = np.linalg.inv(S)
    pts = []
    for i in range(n):
        alphas = spaced_eigenvalues(rng, p, 0.5)
        if triangularizable:
            m = np.triu(rand_complex(rng, (p, p)))
            np.fill_diagonal(m, alphas)
            lead = S @ m @ Sinv
        else:
            V = rand_invertible(rng, p)
            lead = V @ np.diag(alphas) @ np.linalg.inv(V)
        r = int(rng.integers(1, 4))
        coeffs = [lead] + [np.zeros((p, p), dtype=complex)] * r
        pts.append(SingularPoint(complex(i, 0.5 * i), r, coeffs))
    return LinearSystem(p, pts)


# ---------------------------------------------------------------------------
# series oracle, written independently of the recursion


def smul(X, Y, K):
    p = X[0].shape[0]
    out = [np.zeros((p, p), dtype=complex) for _ in range(K + 1)]
    for i, x in enumerate(X[: K + 1]):
        for j, y in enumerate(Y[: K + 1 - i]):
            out[i + j] += x @ y
    return out


def sinv(X, K):
    """Inverse of a power series with invertible constant term."""
    X0inv = np.linalg.inv(X[0])
    out = [X0inv]
    for k in range(1, K + 1):
        acc = sum(X[j] @ out[k - j] for j in range(1, min(k, len(X) - 1) + 1))
        out.append(-X0inv @ acc)
    return out


def pad(X, K):
    p = X[0].shape[0]
    return list(X[: K + 1]) + [np.zeros((p, p), dtype=complex)] * max(0, K + 1 - len(X))


def gauge_residual(point, data, K, tail=()):
    """Coefficients of G A - B G + z^(r+1) G' with G = V T, in the ORIGINAL basis."""
    r = point.poincare_rank
    B = pad(list(point.coeffs) + list(tail), K)
    V = data.leading_eigvecs
    G = [V @ t for t in [np.eye(V.shape[0])] + list(data.t_series)]
    A = [np.diag(data.leading_eigenvalues)] + list(data.a_series)
    lhs = smul(G, A, K)
    rhs = smul(B, G, K)
    out = []
    for k in range(K + 1):
        deriv = (k - r) * G[k - r] if k - r >= 1 else 0
        out.append(lhs[k] - rhs[k] + deriv)
    scale = max(1.0, max(mat_norm1(b) for b in B)) * max(1.0, max(mat_norm1(g) for g in G))
    return out, scale


def reexpanded(point, data, K, tail=()):
    """A~ = G^-1 (B G - z^(r+1) G') re-expanded as a series up to z^K."""
    r = point.poincare_rank
    B = pad(list(point.coeffs) + list(tail), K)
    V = data.leading_eigvecs
    G = [V @ t for t in [np.eye(V.shape[0])] + list(data.t_series)]
    BG = smul(B, G, K)
    for k in range(r + 1, K + 1):
        BG[k] = BG[k] - (k - r) * G[k - r]
    return smul(sinv(G, K), BG, K)




# ---------------------------------------------------------------------------
# exact oracle


def _to_exact(m):
    m = np.asarray(m)
    return sp.Matrix(
        [[sp.nsimplify(complex(x).real) + sp.I * sp.nsimplify(complex(x).imag) for x in row] for row in m]
    )


def exact_closure_dim(mats, max_rounds=20):
    """Dimension of the generated Lie algebra, in exact rational arithmetic."""
    gens = [_to_exact(m) for m in mats]
    basis = []
    vecs = sp.Matrix.zeros(0, gens[0].rows ** 2)

    def add(x):
        nonlocal vecs
        row = x.reshape(1, x.rows * x.cols)
        trial = vecs.col_join(row)
        if trial.rank() > vecs.rows:
            vecs = trial
            basis.append(x)
            return True
        return False

    for g in gens:
        add(g)
    for _ in range(max_rounds):
        grew = False
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                if add(basis[i] * basis[j] - basis[j] * basis[i]):
                    grew = True
        if not grew:
            break
    return len(basis)


def exact_rank(m):
    return _to_exact(m).rank()


def exact_eigenvalues(m):
    out = []
    for ev, mult in _to_exact(m).eigenvals().items():
        out.extend([complex(ev)] * mult)
    return out
