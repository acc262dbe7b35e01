"""Independent reference computations used by the test suite.

Nothing here calls into the library's numerical routines; each oracle is a
separate (usually slower, more literal) route to the same quantity.
"""
import numpy as np

# --------------------------------------------------------------- eigenvalues


def jacobi_eigvalsh(a, tol=1e-14, max_sweeps=100):
    """Eigenvalues of a complex hermitian matrix by cyclic Jacobi rotations.

    The matrix is embedded as the real symmetric block matrix
    [[Re, -Im], [Im, Re]], whose spectrum is that of ``a`` with every
    eigenvalue doubled; one copy of each pair is returned.
    """
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    m = np.block([[a.real, -a.imag], [a.imag, a.real]]).astype(float)
    size = 2 * n
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(m ** 2) - np.sum(np.diag(m) ** 2))
        if off < tol:
            break
        for p in range(size - 1):
            for q in range(p + 1, size):
                if abs(m[p, q]) < 1e-300:
                    continue
                theta = (m[q, q] - m[p, p]) / (2.0 * m[p, q])
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta != 0 else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rot = np.eye(size)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                m = rot.T @ m @ rot
    vals = np.sort(np.diag(m))
    return vals[::2]


# ------------------------------------------------------------------ geometry


def koszul_bruteforce(c):
    """Solve metric compatibility + torsion-freeness as one linear system for all n^3 unknowns."""
    n = c.shape[0]
    idx = lambda i, j, k: (i * n + j) * n + k  # noqa: E731
    rows, rhs = [], []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                r = np.zeros(n ** 3)
                r[idx(i, j, k)] += 1.0
                r[idx(i, k, j)] += 1.0
                rows.append(r)
                rhs.append(0.0)
                r = np.zeros(n ** 3)
                r[idx(i, j, k)] += 1.0
                r[idx(j, i, k)] -= 1.0
                rows.append(r)
                rhs.append(c[i, j, k])
    sol, *_ = np.linalg.lstsq(np.array(rows), np.array(rhs), rcond=None)
    return sol.reshape(n, n, n)


def curvature_by_endomorphisms(c, gamma):
    """R(e_i, e_j) = [N_i, N_j] - sum_m c_ij^m N_m with N_i the matrix of nabla_{e_i}.

    Returns riemann[i, j, k, l] = g(R(e_i, e_j) e_k, e_l).
    """
    n = c.shape[0]
    N = [gamma[i].T for i in range(n)]  # column k = nabla_i e_k
    R = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(n):
            op = N[i] @ N[j] - N[j] @ N[i] - sum(c[i, j, m] * N[m] for m in range(n))
            R[i, j] = op.T
    return R


def jacobi_sum(c):
    n = c.shape[0]
    worst = 0.0
    for i in range(n):
        for j in range(n):
            for k in range(n):
                tot = np.zeros(n)
                for a, b, d in ((i, j, k), (j, k, i), (k, i, j)):
                    for m in range(n):
                        tot += c[a, b, m] * c[m, d]
                worst = max(worst, float(np.max(np.abs(tot))))
    return worst


# ------------------------------------------------------- random Lie algebras


def random_orthogonal(rng, n):
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    return q * np.sign(np.diag(r))


def rotate(c, o):
    """Structure constants in the frame f_a = sum_i o[a, i] e_i (written with explicit loops)."""
    n = c.shape[0]
    out = np.zeros_like(c)
    for a in range(n):
        for b in range(n):
            br = np.zeros(n)
            for i in range(n):
                for j in range(n):
                    br += o[a, i] * o[b, j] * c[i, j]
            out[a, b] = o @ br
    return out


def heisenberg_type(rng, m, twist=True):
    """Central extension of R^2m by xi = e_{2m+1}; for m = 1 optionally twisted by ad_xi = d omega.

    The flow along xi is Riemannian and minimal; h|_Q = omega / 2.  The twist
    is only used for m = 1: for m >= 2 the cyclic term omega_ab D c breaks Jacobi.
    """
    n = 2 * m + 1
    a = rng.normal(size=(2 * m, 2 * m))
    omega = a - a.T
    c = np.zeros((n, n, n))
    xi = n - 1
    c[:2 * m, :2 * m, xi] = omega
    if twist and m == 1:
        d = rng.normal() * omega
        for a_ in range(2 * m):
            for b_ in range(2 * m):
                c[xi, a_, b_] = d[b_, a_]
                c[a_, xi, b_] = -d[b_, a_]
    return c


def semidirect(rng, k, skew=False):
    """R acting on R^k by a matrix A: [e_0, e_i] = sum_j A[j, i] e_j."""
    n = k + 1
    A = rng.normal(size=(k, k))
    if skew:
        A = A - A.T
    c = np.zeros((n, n, n))
    for i in range(k):
        for j in range(k):
            c[0, i + 1, j + 1] = A[j, i]
            c[i + 1, 0, j + 1] = -A[j, i]
    return c


def su2_plus_abelian(rng, extra, scale=None):
    n = 3 + extra
    s = rng.uniform(0.3, 2.0) if scale is None else scale
    c = np.zeros((n, n, n))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        c[i, j, k] = 2 * s
        c[j, i, k] = -2 * s
    return c


def random_lie_algebra(rng, max_dim=6):
    """A Jacobi-satisfying structure-constant array from one of several families, randomly rotated."""
    family = rng.integers(0, 4)
    if family == 0:
        c = heisenberg_type(rng, int(rng.integers(1, (max_dim - 1) // 2 + 1)))
    elif family == 1:
        c = semidirect(rng, int(rng.integers(1, max_dim)))
    elif family == 2:
        c = su2_plus_abelian(rng, int(rng.integers(0, max_dim - 2)))
    else:
        c = semidirect(rng, int(rng.integers(2, max_dim)), skew=True)
    return rotate(c, random_orthogonal(rng, c.shape[0]))


def riemannian_flow_data(rng, max_m=2):
    """Riemannian flow along the last frame vector, with Q rotated by a random orthogonal map.

    Families: Heisenberg-type (possibly twisted), a scaled su(2) with its Hopf
    field, a product R x H with the flow along the R factor, and real
    hyperbolic space R x_s R^k with the flow inside the abelian ideal (not minimal).
    """
    family = rng.integers(0, 4)
    if family == 3:
        k = int(rng.integers(1, 2 * max_m + 1))
        s_ = rng.uniform(0.3, 2.0)
        c = np.zeros((k + 1, k + 1, k + 1))
        for i in range(1, k + 1):
            c[0, i, i] = s_
            c[i, 0, i] = -s_
        # move the ideal direction e_1 to the last slot
        perm = np.eye(k + 1)[[0] + list(range(2, k + 1)) + [1]]
        c = rotate(c, perm)
    elif family == 0:
        m = int(rng.integers(1, max_m + 1))
        c = heisenberg_type(rng, m)
    elif family == 1:
        c = su2_plus_abelian(rng, 0)
    else:
        h = random_lie_algebra(rng, max_dim=2 * max_m)
        k = h.shape[0]
        if k % 2:
            h = np.pad(h, ((0, 1), (0, 1), (0, 1)))
            k += 1
        c = np.zeros((k + 1, k + 1, k + 1))
        c[:k, :k, :k] = h
    n = c.shape[0]
    o = np.eye(n)
    o[:n - 1, :n - 1] = random_orthogonal(rng, n - 1)
    return rotate(c, o), n - 1


# ------------------------------------------------------------------- spinors


def random_spinor(rng, N):
    return rng.normal(size=N) + 1j * rng.normal(size=N)


def random_skew_hermitian(rng, N):
    a = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
    return a - a.conj().T


def random_matrix(rng, N):
    return rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))


def levi_civita_symbol3():
    eps = np.zeros((3, 3, 3))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        eps[i, j, k] = 1.0
        eps[j, i, k] = -1.0
    return eps
