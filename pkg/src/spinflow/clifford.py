"""Complex spinor representations of the Euclidean Clifford algebra.

Vectors act by skew-hermitian gamma matrices with ``gamma_i gamma_j +
gamma_j gamma_i = -2 delta_ij``.  The representation is the Jordan-Wigner
tensor-product construction; in odd dimension the last generator is fixed
so that the complex volume element acts as ``+Id``.  For ``n = 3`` this gives
``gamma_j = -i sigma_j`` and ``-gamma_3 gamma_1 gamma_2 = Id``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .errors import DimensionError

MAX_DIM = 10

_I2 = np.eye(2, dtype=complex)
_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SZ = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class CliffordAlgebraRep:
    n: int
    gamma: tuple  # n complex (N, N) arrays

    @property
    def N(self) -> int:
        return self.gamma[0].shape[0] if self.gamma else 1

    def identity(self) -> np.ndarray:
        return np.eye(self.N, dtype=complex)

    def vector(self, v) -> np.ndarray:
        """Matrix of Clifford multiplication by ``sum_i v_i e_i``."""
        v = np.asarray(v, dtype=float)
        if v.shape != (self.n,):
            raise DimensionError(f"vector of length {v.shape} for n={self.n}")
        return np.tensordot(v, np.stack(self.gamma), axes=1)

    def bivector(self, a) -> np.ndarray:
        """Matrix of ``sum_{j<k} a_jk e_j e_k`` (lower triangle of ``a`` ignored)."""
        a = np.asarray(a, dtype=float)
        if a.shape != (self.n, self.n):
            raise DimensionError(f"bivector of shape {a.shape} for n={self.n}")
        out = np.zeros((self.N, self.N), dtype=complex)
        for j in range(self.n):
            for k in range(j + 1, self.n):
                if a[j, k] != 0.0:
                    out += a[j, k] * (self.gamma[j] @ self.gamma[k])
        return out

    def volume(self) -> np.ndarray:
        """Complex volume element ``i^floor((n+1)/2) gamma_1 ... gamma_n``."""
        prod = reduce(np.matmul, self.gamma, self.identity())
        return (1j ** ((self.n + 1) // 2)) * prod


@dataclass(frozen=True)
class CliffordElement:
    """Scalar + vector + bivector element; the only grades the geometry needs."""

    n: int
    scalar: complex = 0.0
    vector: np.ndarray = None
    bivector: np.ndarray = None

    def __post_init__(self):
        if self.vector is None:
            object.__setattr__(self, "vector", np.zeros(self.n))
        if self.bivector is None:
            object.__setattr__(self, "bivector", np.zeros((self.n, self.n)))
        object.__setattr__(self, "vector", np.asarray(self.vector, dtype=float))
        object.__setattr__(self, "bivector", np.asarray(self.bivector, dtype=float))

    def matrix(self, rep: CliffordAlgebraRep) -> np.ndarray:
        if rep.n != self.n:
            raise DimensionError(f"element of dimension {self.n} acting in rep of dimension {rep.n}")
        return self.scalar * rep.identity() + rep.vector(self.vector) + rep.bivector(self.bivector)


def _kron(*ms):
    return reduce(np.kron, ms, np.eye(1, dtype=complex))


def _even_hermitian_generators(k: int) -> list:
    """Jordan-Wigner: 2k hermitian matrices squaring to Id, pairwise anticommuting."""
    gens = []
    for j in range(k):
        left = [_SZ] * j
        right = [_I2] * (k - j - 1)
        gens.append(_kron(*left, _SX, *right))
        gens.append(_kron(*left, _SY, *right))
    return gens


def build_rep(n: int) -> CliffordAlgebraRep:
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_DIM:
        raise DimensionError(f"supported dimensions are 1..{MAX_DIM}, got {n!r}")
    k = n // 2
    gamma = [-1j * e for e in _even_hermitian_generators(k)]
    if n % 2:
        # gamma_n = -i * omega_{2k}; forces the odd volume element to be +Id
        even = CliffordAlgebraRep(2 * k, tuple(gamma)) if k else None
        omega = even.volume() if even else np.eye(1, dtype=complex)
        gamma.append(-1j * omega)
    return CliffordAlgebraRep(n, tuple(g.copy() for g in gamma))


def element_matrix(rep: CliffordAlgebraRep, element) -> np.ndarray:
    """Accept a CliffordElement, a raw vector, or an (N, N) matrix."""
    if isinstance(element, CliffordElement):
        return element.matrix(rep)
    arr = np.asarray(element)
    if arr.shape == (rep.n,):
        return rep.vector(arr.real)
    if arr.shape == (rep.N, rep.N):
        return arr.astype(complex)
    raise DimensionError(f"cannot interpret element of shape {arr.shape} for n={rep.n}")


def clifford_mul(rep: CliffordAlgebraRep, element, psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (rep.N,):
        raise DimensionError(f"spinor of shape {psi.shape}, expected ({rep.N},)")
    return element_matrix(rep, element) @ psi


def spinor_inner(phi, psi) -> complex:
    """Hermitian product, conjugate-linear in the second slot: (phi, psi) = sum phi_a conj(psi_a)."""
    phi = np.asarray(phi, dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    if phi.shape != psi.shape:
        raise DimensionError(f"spinor shapes differ: {phi.shape} vs {psi.shape}")
    return complex(np.vdot(psi, phi))


def re_inner(phi, psi) -> float:
    return spinor_inner(phi, psi).real


def restrict_rep(rep: CliffordAlgebraRep, normal_index: int) -> CliffordAlgebraRep:
    """Representation of the orthogonal complement of ``e_nu`` on the same spinors.

    ``gamma^Q_j = gamma_nu gamma_j`` for ``j != nu`` (kept in increasing order),
    so ``Y .Q Psi = nu . Y . Psi`` with the identification map equal to the identity.
    """
    if rep.n % 2 == 0:
        raise DimensionError("restriction from even dimension needs two spinor copies; unsupported")
    if not 0 <= normal_index < rep.n:
        raise DimensionError(f"normal index {normal_index} out of range for n={rep.n}")
    g_nu = rep.gamma[normal_index]
    gammas = tuple(g_nu @ rep.gamma[j] for j in range(rep.n) if j != normal_index)
    return CliffordAlgebraRep(rep.n - 1, gammas)


def anticommutator_residual(rep: CliffordAlgebraRep) -> float:
    eye = rep.identity()
    worst = 0.0
    for i, gi in enumerate(rep.gamma):
        for j, gj in enumerate(rep.gamma):
            target = -2.0 * eye if i == j else 0.0
            worst = max(worst, float(np.max(np.abs(gi @ gj + gj @ gi - target))))
    return worst


def skew_residual(rep: CliffordAlgebraRep) -> float:
    return max(float(np.max(np.abs(g.conj().T + g))) for g in rep.gamma)
