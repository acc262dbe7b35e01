"""Sasakian axioms, eta-Einstein fits and the Kahler-form action on transversal spinors."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .clifford import CliffordAlgebraRep
from .errors import DimensionError, NotEtaEinstein
from .foliation import FlowStructure
from .frame_geometry import FrameManifold, LeviCivitaConnection
from .spinor_fields import SpinorField, check_complex_structure

SASAKI_TOL = 1e-10


@dataclass(frozen=True)
class EtaEinstein:
    beta: float
    gamma: float
    residual: float
    m: int

    @property
    def sum_residual(self) -> float:
        """``|beta + gamma - 2m|``."""
        return abs(self.beta + self.gamma - 2 * self.m)


@dataclass(frozen=True)
class SasakiReport:
    is_unit_killing: bool
    killing_residual: float
    axiom1_residual: float
    axiom2_residual: float
    is_sasakian: bool
    eta_einstein: EtaEinstein | None = None


def _endomorphism(flow_h: np.ndarray) -> np.ndarray:
    """Column-convention matrix of ``X -> h(X)`` from the bilinear form ``h[i, j]``."""
    return flow_h.T


def check_sasakian(m: FrameManifold, conn: LeviCivitaConnection, xi_index: int, tol: float = SASAKI_TOL, ric=None) -> SasakiReport:
    """Residuals of ``h^2 = -Id + xi (x) xi`` and ``(nabla_X h) Y = g(xi, Y) X - g(X, Y) xi``.

    When ``ric`` is given, an eta-Einstein fit is attached if it succeeds.
    """
    n = m.n
    if not 0 <= xi_index < n:
        raise DimensionError(f"xi index {xi_index} out of range for n={n}")
    h = conn.gamma[:, xi_index, :]
    H = _endomorphism(h)
    e_xi = np.eye(n)[xi_index]
    killing = float(np.max(np.abs(h + h.T)))
    ax1 = float(np.max(np.abs(H @ H + np.eye(n) - np.outer(e_xi, e_xi))))
    ax2 = 0.0
    for a in range(n):
        G = conn.matrix(a)
        lhs = G @ H - H @ G  # (nabla_a h) as an endomorphism
        e_a = np.eye(n)[a]
        # column y: g(xi, e_y) e_a - g(e_a, e_y) xi
        rhs = np.outer(e_a, e_xi) - np.outer(e_xi, e_a)
        ax2 = max(ax2, float(np.max(np.abs(lhs - rhs))))
    eta = None
    if ric is not None:
        try:
            eta = eta_einstein_fit(ric, xi_index, tol=tol)
        except NotEtaEinstein:
            eta = None
    return SasakiReport(
        is_unit_killing=killing <= tol,
        killing_residual=killing,
        axiom1_residual=ax1,
        axiom2_residual=ax2,
        is_sasakian=killing <= tol and ax1 <= tol and ax2 <= tol,
        eta_einstein=eta,
    )


def eta_einstein_fit(ric, xi_index: int, m: int | None = None, tol: float = SASAKI_TOL) -> EtaEinstein:
    """Least-squares ``Ric = beta g + gamma xi (x) xi``; raises NotEtaEinstein above ``tol``."""
    ric = np.asarray(ric, dtype=float)
    n = ric.shape[0]
    if ric.shape != (n, n):
        raise DimensionError(f"Ricci matrix must be square, got {ric.shape}")
    if not 0 <= xi_index < n:
        raise DimensionError(f"xi index {xi_index} out of range for n={n}")
    if m is None:
        m = (n - 1) // 2
    q = [i for i in range(n) if i != xi_index]
    beta = float(np.mean(np.diag(ric)[q])) if q else 0.0
    gamma = float(ric[xi_index, xi_index]) - beta
    e_xi = np.eye(n)[xi_index]
    residual = float(np.linalg.norm(ric - beta * np.eye(n) - gamma * np.outer(e_xi, e_xi)))
    if residual > tol:
        raise NotEtaEinstein(f"Ricci tensor is not eta-Einstein (fit residual {residual:.3g})", residual)
    return EtaEinstein(beta, gamma, residual, m)


def transversal_ricci_relation(ric, ric_transversal, xi_index: int, m: int | None = None) -> dict:
    """Residuals of ``Ric^nabla Z = Ric_M Z + 2Z`` on Q and of ``Ric_M xi = 2m xi``."""
    ric = np.asarray(ric, dtype=float)
    n = ric.shape[0]
    if m is None:
        m = (n - 1) // 2
    q = [i for i in range(n) if i != xi_index]
    ric_q = ric[np.ix_(q, q)]
    e_xi = np.eye(n)[xi_index]
    return {
        "transversal": float(np.max(np.abs(np.asarray(ric_transversal) - ric_q - 2.0 * np.eye(len(q))))),
        "xi": float(np.max(np.abs(ric[:, xi_index] - 2.0 * m * e_xi))),
    }


def einstein_like_relation(ric, xi_index: int, m: int | None = None) -> dict:
    """Residuals of ``Ric Z = -2Z`` on Q and ``Ric xi = 2m xi``."""
    ric = np.asarray(ric, dtype=float)
    n = ric.shape[0]
    if m is None:
        m = (n - 1) // 2
    q = [i for i in range(n) if i != xi_index]
    e_xi = np.eye(n)[xi_index]
    return {
        "transversal": float(np.max(np.abs(ric[np.ix_(q, q)] + 2.0 * np.eye(len(q))))),
        "xi": float(np.max(np.abs(ric[:, xi_index] - 2.0 * m * e_xi))),
    }


# ----------------------------------------------------------------- Kahler form


@dataclass(frozen=True)
class KahlerDecomposition:
    omega_matrix: np.ndarray
    mu: tuple  # mu_r = 2r - m, r = 0..m
    multiplicities: tuple
    projectors: tuple
    spectrum_residual: float  # worst distance of an eigenvalue of Omega from i(2r - m)
    expected_multiplicities: tuple

    @property
    def m(self) -> int:
        return len(self.mu) - 1

    @property
    def eigenvalues(self) -> tuple:
        return tuple(1j * mu for mu in self.mu)

    def spectrum_ok(self, tol: float = 1e-10) -> bool:
        return self.spectrum_residual <= tol and self.multiplicities == self.expected_multiplicities


def kahler_form_matrix(rep_q: CliffordAlgebraRep, J) -> np.ndarray:
    """``Omega = 1/2 sum_i e_i . J(e_i) .`` in the representation ``rep_q``."""
    if rep_q.n % 2:
        raise DimensionError(f"Kahler form needs an even-dimensional representation, got {rep_q.n}")
    J = check_complex_structure(J)
    if J.shape[0] != rep_q.n:
        raise DimensionError(f"J of size {J.shape[0]} for a rep of dimension {rep_q.n}")
    return 0.5 * sum(g @ rep_q.vector(J[:, i]) for i, g in enumerate(rep_q.gamma))


def kahler_form_spinor(rep_q: CliffordAlgebraRep, J) -> KahlerDecomposition:
    omega = kahler_form_matrix(rep_q, J)
    m = rep_q.n // 2
    # -i Omega is hermitian with eigenvalues mu_r
    vals, vecs = np.linalg.eigh(-1j * omega)
    mus = tuple(2 * r - m for r in range(m + 1))
    nearest = np.clip(np.rint((vals + m) / 2.0), 0, m).astype(int)
    residual = float(np.max(np.abs(vals - (2 * nearest - m))))
    mults, projs = [], []
    for r in range(m + 1):
        cols = vecs[:, nearest == r]
        mults.append(cols.shape[1])
        projs.append(cols @ cols.conj().T)
    return KahlerDecomposition(
        omega_matrix=omega,
        mu=mus,
        multiplicities=tuple(mults),
        projectors=tuple(projs),
        spectrum_residual=residual,
        expected_multiplicities=tuple(comb(m, r) for r in range(m + 1)),
    )


def projector_residuals(dec: KahlerDecomposition) -> dict:
    """Resolution of identity, pairwise orthogonality and idempotence of the Sigma_r projectors."""
    N = dec.omega_matrix.shape[0]
    total = sum(dec.projectors)
    ortho = 0.0
    idem = 0.0
    for a, pa in enumerate(dec.projectors):
        idem = max(idem, float(np.max(np.abs(pa @ pa - pa))))
        for pb in dec.projectors[a + 1:]:
            ortho = max(ortho, float(np.max(np.abs(pa @ pb))))
    return {
        "identity": float(np.max(np.abs(total - np.eye(N)))),
        "orthogonal": ortho,
        "idempotent": idem,
        "trace": abs(complex(np.trace(dec.omega_matrix))),
    }


def xi_sign_rule(xi_action: np.ndarray, dec: KahlerDecomposition) -> float:
    """Worst ``||xi . P_r - (-1)^(r+1) i P_r||`` over the eigenbundles."""
    worst = 0.0
    for r, p in enumerate(dec.projectors):
        worst = max(worst, float(np.max(np.abs(xi_action @ p - ((-1) ** (r + 1)) * 1j * p))))
    return worst


def omega2(rep_q: CliffordAlgebraRep) -> np.ndarray:
    """Complex volume ``i e_1 .Q e_2`` of a two-dimensional representation."""
    if rep_q.n != 2:
        raise DimensionError(f"omega_2 needs a 2-dimensional rep, got {rep_q.n}")
    return 1j * rep_q.gamma[0] @ rep_q.gamma[1]


def flow_complex_structure(flow: FlowStructure) -> np.ndarray:
    """``J = h|_Q`` in column convention on the ordered Q frame."""
    q = flow.q_indices
    return flow.h[np.ix_(q, q)].T.copy()


@dataclass(frozen=True)
class SasakiSpinorReport:
    xi_residual: float  # ||nabla_xi Psi - 1/2 Omega Psi|| / ||Psi||
    q_residual: float  # max_Z ||nabla_Z Psi - 1/2 xi.h(Z).Psi|| / ||Psi||
    omega_b_residual: float | None  # ||Omega Psi - b xi Psi|| / ||Psi||, n = 3 only


def sasaki_spinor_equations(fld: SpinorField, flow: FlowStructure, rep_q: CliffordAlgebraRep, J=None) -> SasakiSpinorReport:
    """Residuals of the two spinor equations satisfied by a transversal parallel spinor on a Sasakian manifold."""
    J = flow_complex_structure(flow) if J is None else J
    omega = kahler_form_matrix(rep_q, J)
    rep, psi, xi = fld.rep, fld.psi0, flow.xi_index
    g_xi = rep.gamma[xi]
    scale = np.sqrt(fld.norm_sq)
    r_xi = float(np.linalg.norm(fld.deriv[xi] @ psi - 0.5 * omega @ psi)) / scale
    r_q = max(
        float(np.linalg.norm(fld.deriv[a] @ psi - 0.5 * g_xi @ rep.vector(flow.h[a]) @ psi)) for a in flow.q_indices
    ) / scale
    r_b = None
    if fld.n == 3:
        r_b = float(np.linalg.norm(omega @ psi - flow.b * g_xi @ psi)) / scale
    return SasakiSpinorReport(r_xi, r_q, r_b)


__all__ = [
    "EtaEinstein",
    "SasakiReport",
    "KahlerDecomposition",
    "SasakiSpinorReport",
    "check_sasakian",
    "eta_einstein_fit",
    "transversal_ricci_relation",
    "einstein_like_relation",
    "kahler_form_matrix",
    "kahler_form_spinor",
    "projector_residuals",
    "xi_sign_rule",
    "omega2",
    "flow_complex_structure",
    "sasaki_spinor_equations",
]
