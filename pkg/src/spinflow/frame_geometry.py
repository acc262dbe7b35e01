"""Left-invariant geometry of an orthonormal frame with constant structure constants.

All index conventions are 0-based and follow

* ``c[i, j, k]``: ``[e_i, e_j] = sum_k c[i, j, k] e_k``
* ``gamma[i, j, k] = g(nabla_{e_i} e_j, e_k)``
* ``riemann[i, j, k, l] = g(R(e_i, e_j) e_k, e_l)`` with
  ``R(X, Y) = nabla_X nabla_Y - nabla_Y nabla_X - nabla_[X,Y]``
* ``ricci[a, b] = sum_i riemann[a, i, i, b]``, i.e. ``Ric(Y) = sum_i R(Y, e_i) e_i``
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvalidFrameError

JACOBI_TOL = 1e-10


@dataclass(frozen=True)
class FrameManifold:
    n: int
    c: np.ndarray
    name: str = ""

    def bracket(self, x, y) -> np.ndarray:
        """Bracket of two constant-coefficient frame vectors."""
        return np.einsum("i,j,ijk->k", x, y, self.c)


@dataclass(frozen=True)
class LeviCivitaConnection:
    gamma: np.ndarray

    @property
    def n(self) -> int:
        return self.gamma.shape[0]

    def matrix(self, i: int) -> np.ndarray:
        """Endomorphism ``Z -> nabla_{e_i} Z`` on constant-coefficient fields (column convention)."""
        return self.gamma[i].T

    def covariant(self, x, z) -> np.ndarray:
        """``nabla_x z`` for constant-coefficient vectors ``x, z``."""
        return np.einsum("i,j,ijk->k", x, z, self.gamma)


@dataclass(frozen=True)
class CurvatureData:
    riemann: np.ndarray
    ricci: np.ndarray
    scal: float

    def sectional(self, i: int, j: int) -> float:
        return float(self.riemann[i, j, j, i])


def jacobi_residual(c: np.ndarray) -> tuple[float, tuple]:
    """Largest component of sum_cyc [[e_i, e_j], e_k] and the triple where it occurs."""
    n = c.shape[0]
    # [[e_i,e_j],e_k] = sum_m c_ij^m c_mk^l
    double = np.einsum("ijm,mkl->ijkl", c, c)
    cyc = double + np.transpose(double, (1, 2, 0, 3)) + np.transpose(double, (2, 0, 1, 3))
    worst = float(np.max(np.abs(cyc))) if n else 0.0
    idx = np.unravel_index(np.argmax(np.abs(cyc)), cyc.shape) if n else ()
    return worst, tuple(int(t) for t in idx[:3])


def frame_from_array(c, name: str = "") -> FrameManifold:
    """Validate a full (n, n, n) array of structure constants."""
    c = np.array(c, dtype=float)
    if c.ndim != 3 or len(set(c.shape)) != 1:
        raise DimensionError(f"structure constants must be (n, n, n), got {c.shape}")
    if np.max(np.abs(c + np.transpose(c, (1, 0, 2))), initial=0.0) > 1e-12:
        raise InvalidFrameError("structure constants are not antisymmetric in the first two indices")
    c = 0.5 * (c - np.transpose(c, (1, 0, 2)))
    worst, triple = jacobi_residual(c)
    if worst > JACOBI_TOL:
        i, j, k = (t + 1 for t in triple)
        raise InvalidFrameError(f"Jacobi identity violated by {worst:.3g} at (e_{i}, e_{j}, e_{k})")
    return FrameManifold(c.shape[0], c, name)


def validate_frame(n: int, entries, name: str = "") -> FrameManifold:
    """Build a FrameManifold from ``(i, j, k, value)`` entries with 1-based indices.

    Each entry sets ``c_ij^k = value`` and ``c_ji^k = -value``.
    """
    if n < 1:
        raise DimensionError(f"dimension must be positive, got {n}")
    c = np.zeros((n, n, n))
    for entry in entries:
        i, j, k, value = entry
        for idx in (i, j, k):
            if not 1 <= int(idx) <= n:
                raise InvalidFrameError(f"index {idx} out of range 1..{n} in entry {tuple(entry)}")
        i, j, k = int(i) - 1, int(j) - 1, int(k) - 1
        if i == j:
            if value != 0:
                raise InvalidFrameError(f"[e_{i + 1}, e_{i + 1}] must vanish")
            continue
        c[i, j, k] = value
        c[j, i, k] = -value
    return frame_from_array(c, name)


def levi_civita(m: FrameManifold) -> LeviCivitaConnection:
    # Koszul formula for an orthonormal frame
    c = m.c
    # gamma_ij^k = (c_ij^k - c_jk^i + c_ki^j) / 2
    gamma = 0.5 * (c - np.transpose(c, (2, 0, 1)) + np.transpose(c, (1, 2, 0)))
    return LeviCivitaConnection(gamma)


def riemann_curvature(m: FrameManifold, conn: LeviCivitaConnection) -> CurvatureData:
    g, c = conn.gamma, m.c
    if g.shape[0] != m.n:
        raise DimensionError("connection and frame dimensions differ")
    # nabla_i nabla_j e_k = sum_m g[j,k,m] g[i,m,l] e_l
    term = np.einsum("jkm,iml->ijkl", g, g)
    riemann = term - np.transpose(term, (1, 0, 2, 3)) - np.einsum("ijm,mkl->ijkl", c, g)
    ricci = np.einsum("aiib->ab", riemann)
    return CurvatureData(riemann, ricci, float(np.trace(ricci)))


def lie_derivative_metric(conn: LeviCivitaConnection, x) -> np.ndarray:
    """``(L_x g)(e_i, e_j) = g(nabla_i x, e_j) + g(nabla_j x, e_i)`` for constant-coefficient ``x``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (conn.n,):
        raise DimensionError(f"vector of length {x.shape} for n={conn.n}")
    d = np.einsum("m,imj->ij", x, conn.gamma)  # d[i, j] = g(nabla_i x, e_j)
    return d + d.T


def basis(n: int, i: int) -> np.ndarray:
    v = np.zeros(n)
    v[i] = 1.0
    return v


def koszul_residuals(m: FrameManifold, conn: LeviCivitaConnection) -> dict:
    """Metric compatibility and torsion residuals of a connection."""
    g = conn.gamma
    return {
        "metric": float(np.max(np.abs(g + np.transpose(g, (0, 2, 1))))),
        "torsion": float(np.max(np.abs(g - np.transpose(g, (1, 0, 2)) - m.c))),
    }


def curvature_residuals(curv: CurvatureData) -> dict:
    r = curv.riemann
    bianchi = r + np.transpose(r, (1, 2, 0, 3)) + np.transpose(r, (2, 0, 1, 3))
    return {
        "antisym_12": float(np.max(np.abs(r + np.transpose(r, (1, 0, 2, 3))))),
        "antisym_34": float(np.max(np.abs(r + np.transpose(r, (0, 1, 3, 2))))),
        "pair_symmetry": float(np.max(np.abs(r - np.transpose(r, (2, 3, 0, 1))))),
        "bianchi": float(np.max(np.abs(bianchi))),
        "ricci_symmetric": float(np.max(np.abs(curv.ricci - curv.ricci.T))),
        "scal_trace": abs(curv.scal - float(np.trace(curv.ricci))),
    }


def is_unimodular(m: FrameManifold, tol: float = 1e-12) -> bool:
    return bool(np.max(np.abs(np.einsum("ijj->i", m.c)), initial=0.0) <= tol)


def rotate_frame(c: np.ndarray, o: np.ndarray) -> np.ndarray:
    """Structure constants in the orthonormal frame ``f_a = sum_i o[a, i] e_i``."""
    return np.einsum("ai,bj,ijk,ck->abc", o, o, c, o)


__all__ = [
    "FrameManifold",
    "LeviCivitaConnection",
    "CurvatureData",
    "validate_frame",
    "frame_from_array",
    "levi_civita",
    "riemann_curvature",
    "lie_derivative_metric",
    "jacobi_residual",
    "koszul_residuals",
    "curvature_residuals",
    "is_unimodular",
    "rotate_frame",
    "basis",
]
