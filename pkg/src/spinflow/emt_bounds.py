"""Energy-momentum tensors of a spinor field and the Dirac eigenvalue bounds built on them."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .clifford import re_inner
from .errors import DimensionError, ZeroSpinorError
from .spinor_fields import (
    DEFAULT_TOL,
    SpinorField,
    check_complex_structure,
    dirac_matrix,
    rayleigh_eigencheck,
    twisted_dirac,
)


@dataclass(frozen=True)
class BilinearTensor:
    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", np.asarray(self.entries, dtype=float))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def sym(self) -> "BilinearTensor":
        return BilinearTensor(0.5 * (self.entries + self.entries.T))

    def skew(self) -> "BilinearTensor":
        return BilinearTensor(0.5 * (self.entries - self.entries.T))

    def frob_sq(self) -> float:
        # sum over ordered pairs (i, j): off-diagonal entries count twice
        return float(np.sum(self.entries ** 2))

    def trace(self) -> float:
        return float(np.trace(self.entries))

    def pairing(self, other) -> float:
        other = other.entries if isinstance(other, BilinearTensor) else np.asarray(other)
        return float(np.sum(self.entries * other))

    def __getitem__(self, idx):
        return self.entries[idx]


def _unit_check(fld: SpinorField) -> float:
    norm_sq = fld.norm_sq
    if norm_sq == 0.0:
        raise ZeroSpinorError("energy-momentum tensors are undefined where Psi = 0")
    return norm_sq


def energy_tensor(fld: SpinorField) -> BilinearTensor:
    """``E(e_i, e_j) = Re(e_j . nabla_i Psi, Psi) / |Psi|^2``."""
    norm_sq = _unit_check(fld)
    grad = fld.gradient()
    e = np.array([[re_inner(g @ grad[i], fld.psi0) for g in fld.rep.gamma] for i in range(fld.n)])
    return BilinearTensor(e / norm_sq)


def energy_momentum(fld: SpinorField) -> BilinearTensor:
    """``T(X, Y) = 1/2 Re(X . nabla_Y Psi + Y . nabla_X Psi, Psi) / |Psi|^2``."""
    norm_sq = _unit_check(fld)
    grad, gam, psi = fld.gradient(), fld.rep.gamma, fld.psi0
    n = fld.n
    t = np.empty((n, n))
    for a in range(n):
        for b in range(n):
            t[a, b] = 0.5 * re_inner(gam[a] @ grad[b] + gam[b] @ grad[a], psi)
    return BilinearTensor(t / norm_sq)


def skew_energy(fld: SpinorField) -> BilinearTensor:
    """``Q(X, Y) = 1/2 Re(Y . nabla_X Psi - X . nabla_Y Psi, Psi) / |Psi|^2``."""
    norm_sq = _unit_check(fld)
    grad, gam, psi = fld.gradient(), fld.rep.gamma, fld.psi0
    n = fld.n
    q = np.empty((n, n))
    for a in range(n):
        for b in range(n):
            q[a, b] = 0.5 * re_inner(gam[b] @ grad[a] - gam[a] @ grad[b], psi)
    return BilinearTensor(q / norm_sq)


def emt_tensors(fld: SpinorField) -> tuple[BilinearTensor, BilinearTensor, BilinearTensor]:
    """``(E, T, Q)``, each evaluated from its own defining formula."""
    return energy_tensor(fld), energy_momentum(fld), skew_energy(fld)


def flow_energy_tensor(fld: SpinorField, xi_index: int) -> BilinearTensor:
    """``E_xi(X, Y) = Re(xi . Y . nabla_X Psi, Psi) / |Psi|^2``."""
    norm_sq = _unit_check(fld)
    if not 0 <= xi_index < fld.n:
        raise DimensionError(f"xi index {xi_index} out of range for n={fld.n}")
    g_xi = fld.rep.gamma[xi_index]
    grad = fld.gradient()
    e = np.array([[re_inner(g_xi @ g @ grad[i], fld.psi0) for g in fld.rep.gamma] for i in range(fld.n)])
    return BilinearTensor(e / norm_sq)


def transverse_norm_sq(tensor: BilinearTensor, xi_index: int) -> float:
    keep = [i for i in range(tensor.n) if i != xi_index]
    return float(np.sum(tensor.entries[np.ix_(keep, keep)] ** 2))


def equality_residual(fld: SpinorField, E) -> float:
    """``max_i ||nabla_i Psi + E(e_i) . Psi|| / ||Psi||``; zero exactly when nabla Psi = -E . Psi."""
    norm_sq = _unit_check(fld)
    E = E.entries if isinstance(E, BilinearTensor) else np.asarray(E, dtype=float)
    if E.shape != (fld.n, fld.n):
        raise DimensionError(f"tensor of shape {E.shape} for n={fld.n}")
    worst = 0.0
    for i in range(fld.n):
        r = fld.derivative(i) + fld.rep.vector(E[i]) @ fld.psi0
        worst = max(worst, float(np.linalg.norm(r)))
    return worst / np.sqrt(norm_sq)


def modified_connection_identity(fld: SpinorField) -> tuple[float, float]:
    """Both sides of ``|nabla Psi + E . Psi|^2 = |nabla Psi|^2 - |E|^2 |Psi|^2``."""
    norm_sq = _unit_check(fld)
    E = energy_tensor(fld)
    lhs = 0.0
    for i in range(fld.n):
        v = fld.derivative(i) + fld.rep.vector(E.entries[i]) @ fld.psi0
        lhs += float(np.vdot(v, v).real)
    grad = fld.gradient()
    rhs = float(np.sum(np.abs(grad) ** 2)) - E.frob_sq() * norm_sq
    return lhs, rhs


def complex_structure_form(J) -> BilinearTensor:
    """Bilinear form ``g(J e_i, e_j)`` of a column-convention endomorphism ``J``."""
    return BilinearTensor(np.asarray(J, dtype=float).T)


@dataclass(frozen=True)
class PairingReport:
    re_twisted: float
    paired: float
    q_norm_sq: float
    jq_bound: float  # (J, Q)^2 / n
    t_norm_sq: float
    trace_bound: float  # tr(T)^2 / n


def pairing_identity(fld: SpinorField, J) -> PairingReport:
    J = check_complex_structure(J)
    norm_sq = _unit_check(fld)
    re_twisted = re_inner(twisted_dirac(fld, J), fld.psi0)
    Q = skew_energy(fld)
    T = energy_momentum(fld)
    jq = complex_structure_form(J).pairing(Q)
    n = fld.n
    return PairingReport(re_twisted, jq * norm_sq, Q.frob_sq(), jq ** 2 / n, T.frob_sq(), T.trace() ** 2 / n)


@dataclass(frozen=True)
class BoundCheck:
    rhs: float
    holds: bool
    equality: bool
    applicable: bool = True
    note: str = ""


@dataclass(frozen=True)
class BoundReport:
    lambda_sq: float
    scal: float
    T_norm_sq: float
    Q_norm_sq: float
    friedrich: BoundCheck
    emt: BoundCheck
    main: BoundCheck
    flow: BoundCheck | None = None
    flow_transverse: BoundCheck | None = None
    equality_residual: float = 0.0
    gradient_sq: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def friedrich_rhs(self) -> float:
        return self.friedrich.rhs

    @property
    def emt_rhs(self) -> float:
        return self.emt.rhs

    @property
    def main_rhs(self) -> float:
        return self.main.rhs

    @property
    def flow_rhs(self) -> float | None:
        return self.flow.rhs if self.flow else None


def _bound(lam: float, rhs: float, tol: float, applicable: bool = True, note: str = "") -> BoundCheck:
    return BoundCheck(rhs, lam >= rhs - tol, abs(lam - rhs) <= tol, applicable, note)


def is_dirac_eigenspinor(fld: SpinorField, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Whether ``D Psi`` is a real multiple of ``Psi``; returns the flag and the multiple."""
    d_psi = dirac_matrix(fld) @ fld.psi0
    mu = re_inner(d_psi, fld.psi0) / fld.norm_sq
    return bool(np.linalg.norm(d_psi - mu * fld.psi0) <= tol * np.sqrt(fld.norm_sq)), mu


def check_bounds(fld: SpinorField, scal: float, xi_index: int | None = None, tol: float = DEFAULT_TOL) -> BoundReport:
    """Evaluate every lower bound for ``lambda^2`` at the (homogeneous) point.

    Infima over the manifold collapse to the pointwise value.  Raises
    NotAnEigenspinor when ``Psi`` is not an eigenspinor of ``D^2``.
    """
    lam = rayleigh_eigencheck(fld, tol)
    n = fld.n
    E, T, Q = emt_tensors(fld)
    t2, q2 = T.frob_sq(), Q.frob_sq()
    if n > 1:
        friedrich = _bound(lam, n * scal / (4.0 * (n - 1)), tol)
    else:
        friedrich = BoundCheck(float("nan"), True, False, False, "n = 1")
    eigen, _ = is_dirac_eigenspinor(fld, tol)
    emt = _bound(lam, scal / 4.0 + t2, tol, eigen, "" if eigen else "D Psi is not a multiple of Psi")
    main = _bound(lam, scal / 4.0 + t2 + q2, tol)
    flow = flow_q = None
    if xi_index is not None:
        Ex = flow_energy_tensor(fld, xi_index)
        flow = _bound(lam, scal / 4.0 + Ex.frob_sq(), tol)
        flow_q = _bound(lam, scal / 4.0 + transverse_norm_sq(Ex, xi_index), tol)
    grad_sq = float(np.sum(np.abs(fld.gradient()) ** 2)) / fld.norm_sq
    return BoundReport(
        lambda_sq=lam,
        scal=scal,
        T_norm_sq=t2,
        Q_norm_sq=q2,
        friedrich=friedrich,
        emt=emt,
        main=main,
        flow=flow,
        flow_transverse=flow_q,
        equality_residual=equality_residual(fld, E),
        gradient_sq=grad_sq,
    )


__all__ = [
    "BilinearTensor",
    "BoundCheck",
    "BoundReport",
    "PairingReport",
    "energy_tensor",
    "energy_momentum",
    "skew_energy",
    "emt_tensors",
    "flow_energy_tensor",
    "transverse_norm_sq",
    "equality_residual",
    "modified_connection_identity",
    "complex_structure_form",
    "pairing_identity",
    "is_dirac_eigenspinor",
    "check_bounds",
]
