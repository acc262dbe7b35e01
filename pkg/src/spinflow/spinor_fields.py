"""Spinor fields given by their covariant derivatives, and Dirac-type operators on them.

A field is a base spinor ``psi0`` together with matrices ``M_i`` meaning
``nabla_{e_i} Psi = M_i Psi``.  Two sources are supported:

``from_spin_connection``
    ``Psi`` has constant components in a left-invariant frame, so
    ``M_i = omega_i`` (the spin connection) and every frame-constant spinor
    is differentiated the same way.  Second derivatives follow from
    ``nabla_k (A Psi) = omega_k A Psi`` for frame-constant ``A Psi``.

``prescribed``
    ``M_i`` is the action of a Clifford element ``A_i`` with constant
    coefficients in a frame that is synchronous at the evaluation point,
    so Clifford coefficients are parallel there:
    ``nabla_k (A Psi) = A M_k Psi``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clifford import CliffordAlgebraRep, element_matrix, re_inner
from .errors import DimensionError, InvalidComplexStructure, NotAnEigenspinor, ZeroSpinorError
from .frame_geometry import LeviCivitaConnection

FROM_SPIN_CONNECTION = "from_spin_connection"
PRESCRIBED = "prescribed"

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class SpinorField:
    rep: CliffordAlgebraRep
    psi0: np.ndarray
    deriv: tuple  # n complex (N, N) matrices
    source: str = PRESCRIBED
    constant_norm: bool = True
    norm_drift: float = 0.0  # max_i |Re(M_i Psi, Psi)| / |Psi|^2

    @property
    def n(self) -> int:
        return self.rep.n

    @property
    def norm_sq(self) -> float:
        return float(np.vdot(self.psi0, self.psi0).real)

    def derivative(self, i: int) -> np.ndarray:
        return self.deriv[i] @ self.psi0

    def gradient(self) -> np.ndarray:
        """Rows are ``nabla_{e_i} Psi``."""
        return np.stack([m @ self.psi0 for m in self.deriv])


@dataclass(frozen=True)
class DiracData:
    dirac_matrix: np.ndarray
    value: np.ndarray
    second: np.ndarray  # D^2 Psi
    lambda_sq: float | None
    residual: float


def spin_connection(conn: LeviCivitaConnection, rep: CliffordAlgebraRep) -> list:
    """``omega_i = 1/2 sum_{j<k} Gamma_ij^k gamma_j gamma_k``."""
    if conn.n != rep.n:
        raise DimensionError(f"connection of dimension {conn.n} with rep of dimension {rep.n}")
    return [0.5 * rep.bivector(conn.gamma[i]) for i in range(rep.n)]


def make_field(rep: CliffordAlgebraRep, psi0, deriv) -> SpinorField:
    """Build a field from ``psi0`` and either a LeviCivitaConnection or a list of prescriptions.

    Prescriptions may be CliffordElements, vectors, or raw (N, N) matrices.
    """
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (rep.N,):
        raise DimensionError(f"spinor of shape {psi0.shape}, expected ({rep.N},)")
    norm_sq = float(np.vdot(psi0, psi0).real)
    if norm_sq == 0.0:
        raise ZeroSpinorError("base spinor is zero")
    if isinstance(deriv, LeviCivitaConnection):
        mats = spin_connection(deriv, rep)
        source = FROM_SPIN_CONNECTION
    else:
        deriv = list(deriv)
        if len(deriv) != rep.n:
            raise DimensionError(f"{len(deriv)} prescriptions for n={rep.n}")
        mats = [element_matrix(rep, a) for a in deriv]
        source = PRESCRIBED
    drift = max(abs(re_inner(m @ psi0, psi0)) for m in mats) / norm_sq
    return SpinorField(rep, psi0, tuple(mats), source, drift <= 1e-12, drift)


def with_spinor(fld: SpinorField, psi0) -> SpinorField:
    """Same derivative rule applied to another base spinor (meaningful for frame-constant fields)."""
    psi0 = np.asarray(psi0, dtype=complex)
    norm_sq = float(np.vdot(psi0, psi0).real)
    if norm_sq == 0.0:
        raise ZeroSpinorError("base spinor is zero")
    drift = max(abs(re_inner(m @ psi0, psi0)) for m in fld.deriv) / norm_sq
    return SpinorField(fld.rep, psi0, fld.deriv, fld.source, drift <= 1e-12, drift)


def dirac_matrix(fld: SpinorField) -> np.ndarray:
    return sum(g @ m for g, m in zip(fld.rep.gamma, fld.deriv))


def dirac_squared(fld: SpinorField) -> np.ndarray:
    """``D^2 Psi`` under the field's differentiation rule (see module docstring)."""
    d = dirac_matrix(fld)
    psi = fld.psi0
    if fld.source == FROM_SPIN_CONNECTION:
        return d @ (d @ psi)
    return sum(g @ (d @ (m @ psi)) for g, m in zip(fld.rep.gamma, fld.deriv))


def dirac(fld: SpinorField, tol: float = DEFAULT_TOL) -> DiracData:
    d = dirac_matrix(fld)
    second = dirac_squared(fld)
    lam, res = _rayleigh(second, fld.psi0)
    return DiracData(d, d @ fld.psi0, second, lam if res <= tol else None, res)


def _rayleigh(image: np.ndarray, psi: np.ndarray) -> tuple[float, float]:
    norm_sq = float(np.vdot(psi, psi).real)
    lam = re_inner(image, psi) / norm_sq
    res = float(np.linalg.norm(image - lam * psi) / np.sqrt(norm_sq))
    return lam, res


def rayleigh_eigencheck(fld: SpinorField, tol: float = DEFAULT_TOL) -> float:
    lam, res = _rayleigh(dirac_squared(fld), fld.psi0)
    if res > tol:
        raise NotAnEigenspinor(f"||D^2 Psi - lambda^2 Psi|| / ||Psi|| = {res:.3g} exceeds {tol:g}", res)
    return lam


def check_complex_structure(J, tol: float = 1e-10) -> np.ndarray:
    J = np.asarray(J, dtype=float)
    n = J.shape[0]
    if J.shape != (n, n):
        raise InvalidComplexStructure(f"J must be square, got {J.shape}")
    if n % 2:
        raise InvalidComplexStructure(f"complex structure needs even dimension, got {n}")
    eye = np.eye(n)
    if np.max(np.abs(J @ J + eye)) > tol:
        raise InvalidComplexStructure("J^2 != -Id")
    if np.max(np.abs(J.T @ J - eye)) > tol:
        raise InvalidComplexStructure("J is not orthogonal")
    return J


def standard_complex_structure(n: int) -> np.ndarray:
    """``J e_{2a} = e_{2a+1}``, ``J e_{2a+1} = -e_{2a}`` (column convention, 0-based)."""
    J = np.zeros((n, n))
    for a in range(0, n - 1, 2):
        J[a + 1, a] = 1.0
        J[a, a + 1] = -1.0
    return J


def twisted_dirac_matrix(fld: SpinorField, J) -> np.ndarray:
    """``sum_i J(e_i) . M_i`` with ``J(e_i) = sum_j J[j, i] e_j``."""
    J = check_complex_structure(J)
    if J.shape[0] != fld.n:
        raise DimensionError(f"J of size {J.shape[0]} for n={fld.n}")
    return sum(fld.rep.vector(J[:, i]) @ m for i, m in enumerate(fld.deriv))


def twisted_dirac(fld: SpinorField, J) -> np.ndarray:
    return twisted_dirac_matrix(fld, J) @ fld.psi0


def kahler_commutation_report(fld: SpinorField, J) -> dict:
    """Matrix-level size of twisted D^2 - D^2 and of the anticommutator with D.

    Only meaningful for frame-constant fields; reported, never asserted.
    """
    d = dirac_matrix(fld)
    dt = twisted_dirac_matrix(fld, J)
    return {
        "square_difference": float(np.max(np.abs(dt @ dt - d @ d))),
        "anticommutator": float(np.max(np.abs(dt @ d + d @ dt))),
    }


def hermiticity_residual(matrix: np.ndarray) -> float:
    return float(np.max(np.abs(matrix - matrix.conj().T)))


__all__ = [
    "SpinorField",
    "DiracData",
    "spin_connection",
    "make_field",
    "with_spinor",
    "dirac",
    "dirac_matrix",
    "dirac_squared",
    "twisted_dirac",
    "twisted_dirac_matrix",
    "rayleigh_eigencheck",
    "check_complex_structure",
    "standard_complex_structure",
    "kahler_commutation_report",
    "hermiticity_residual",
    "FROM_SPIN_CONNECTION",
    "PRESCRIBED",
]
