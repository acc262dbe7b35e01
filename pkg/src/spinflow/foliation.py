"""Foliations by hypersurfaces and by flows on frame-presented manifolds.

Two sign conventions for the shape operator coexist and are never mixed:

* hypersurface mode: ``h(X) = -nabla_X nu`` (``weingarten``),
* flow mode: ``h(X) = +nabla_X xi`` (``FlowStructure.h``).

Matrices ``h`` are stored as bilinear forms, ``h[i, j] = g(h(e_i), e_j)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .clifford import CliffordAlgebraRep, re_inner, restrict_rep
from .emt_bounds import BilinearTensor, flow_energy_tensor
from .errors import DimensionError, NonRiemannianFlow
from .frame_geometry import (
    FrameManifold,
    LeviCivitaConnection,
    lie_derivative_metric,
    riemann_curvature,
)
from .spinor_fields import FROM_SPIN_CONNECTION, SpinorField, dirac_matrix

FLAG_TOL = 1e-10
KERNEL_TOL = 1e-10


@dataclass(frozen=True)
class FlowStructure:
    xi_index: int
    h: np.ndarray
    kappa: np.ndarray
    riemannian: bool
    minimal: bool
    b: float | None
    xi_column_residual: float
    manifold: FrameManifold | None = None
    connection: LeviCivitaConnection | None = None

    @property
    def n(self) -> int:
        return self.h.shape[0]

    @property
    def q_indices(self) -> list:
        return [i for i in range(self.n) if i != self.xi_index]

    def lie_derivative(self) -> np.ndarray:
        """``(L_xi g)(e_i, e_j) = h[i, j] + h[j, i]``."""
        return self.h + self.h.T

    def h_q_norm_sq(self) -> float:
        q = self.q_indices
        return float(np.sum(self.h[np.ix_(q, q)] ** 2))


def _flow_from_h(h, xi_index, manifold=None, connection=None, tol=FLAG_TOL) -> FlowStructure:
    h = np.asarray(h, dtype=float)
    n = h.shape[0]
    if not 0 <= xi_index < n:
        raise DimensionError(f"xi index {xi_index} out of range for n={n}")
    q = [i for i in range(n) if i != xi_index]
    hq = h[np.ix_(q, q)]
    kappa = h[xi_index].copy()
    b = float(h[q[0], q[1]]) if n == 3 else None
    return FlowStructure(
        xi_index=xi_index,
        h=h,
        kappa=kappa,
        riemannian=bool(np.max(np.abs(hq + hq.T), initial=0.0) <= tol),
        minimal=bool(np.max(np.abs(kappa)) <= tol),
        b=b,
        xi_column_residual=float(np.max(np.abs(h[:, xi_index]))),
        manifold=manifold,
        connection=connection,
    )


def flow_structure(m: FrameManifold, conn: LeviCivitaConnection, xi_index: int, tol: float = FLAG_TOL) -> FlowStructure:
    if not 0 <= xi_index < m.n:
        raise DimensionError(f"xi index {xi_index} out of range for n={m.n}")
    h = conn.gamma[:, xi_index, :].copy()  # g(nabla_i xi, e_j)
    return _flow_from_h(h, xi_index, m, conn, tol)


def prescribed_flow(h, xi_index: int, tol: float = FLAG_TOL) -> FlowStructure:
    """Flow data without an underlying frame geometry (prescription-mode fields)."""
    return _flow_from_h(h, xi_index, tol=tol)


def weingarten(conn: LeviCivitaConnection, nu_index: int) -> np.ndarray:
    """Hypersurface-mode shape operator ``h[i, j] = -g(nabla_i nu, e_j)``."""
    return -conn.gamma[:, nu_index, :].copy()


# --------------------------------------------------------------------------- O'Neill


@dataclass(frozen=True)
class OneillReport:
    A: np.ndarray  # A[a, b] = A_{e_a} e_b
    a_xi_residual: float  # A_Z xi - h(Z)
    a_zw_residual: float  # A_Z W + g(h(Z), W) xi
    bracket_residual: float  # A_Z W - 1/2 pi_perp [Z, W]
    skew_residual: float


def oneill(flow: FlowStructure) -> OneillReport:
    if not flow.riemannian:
        raise NonRiemannianFlow("O'Neill tensor identities need h|_Q skew-symmetric")
    if flow.connection is None:
        raise DimensionError("O'Neill tensor needs the frame geometry")
    g, c = flow.connection.gamma, flow.manifold.c
    n, xi, q = flow.n, flow.xi_index, flow.q_indices
    A = np.zeros((n, n, n))
    for a in q:
        for b in q:
            A[a, b, xi] = g[a, b, xi]  # pi_perp(nabla_Z W)
        A[a, xi, q] = g[a, xi, q]  # pi(nabla_Z xi)
    a_xi = max(float(np.max(np.abs(A[a, xi] - flow.h[a]))) for a in q)
    a_zw = bracket = skew = 0.0
    for a in q:
        for b in q:
            expected = np.zeros(n)
            expected[xi] = -flow.h[a, b]
            a_zw = max(a_zw, float(np.max(np.abs(A[a, b] - expected))))
            half = np.zeros(n)
            half[xi] = 0.5 * c[a, b, xi]
            bracket = max(bracket, float(np.max(np.abs(A[a, b] - half))))
            skew = max(skew, float(np.max(np.abs(A[a, b] + A[b, a]))))
    return OneillReport(A, a_xi, a_zw, bracket, skew)


# ------------------------------------------------------------------ hypersurfaces


@dataclass(frozen=True)
class HypersurfaceReport:
    rep_leaf: CliffordAlgebraRep
    induced: tuple  # nabla^L_{e_i} as matrices, i = 0..n-1
    T_phi: BilinearTensor
    weingarten_prediction: np.ndarray  # -1/2 g(h(X), Y) on L, symmetrised
    lie_prediction: np.ndarray  # 1/4 (L_nu g)(X, Y) on L
    normal_row: np.ndarray  # T_phi(nu, X), X in L
    normal_prediction: np.ndarray  # -1/4 g(X, h(nu))
    ambient_parallel: bool
    riemannian: bool  # h(nu) = 0


def hypersurface_restrict(fld: SpinorField, nu_index: int, h=None, conn: LeviCivitaConnection | None = None) -> HypersurfaceReport:
    """Induced spinor derivative on the leaves through the spinorial Gauss formula.

    ``h`` is the hypersurface-mode shape operator; when omitted it is derived
    from ``conn``.  ``L_nu g`` comes from ``conn`` when available, otherwise
    from ``-(h + h^T)``.
    """
    n = fld.n
    if not 0 <= nu_index < n:
        raise DimensionError(f"normal index {nu_index} out of range for n={n}")
    if h is None:
        if conn is None:
            raise DimensionError("need either h or a connection")
        h = weingarten(conn, nu_index)
    h = np.asarray(h, dtype=float)
    rep = fld.rep
    rep_leaf = restrict_rep(rep, nu_index)
    g_nu = rep.gamma[nu_index]
    induced = tuple(fld.deriv[i] - 0.5 * rep.vector(h[i]) @ g_nu for i in range(n))

    psi = fld.psi0
    norm_sq = fld.norm_sq
    leaf = [i for i in range(n) if i != nu_index]
    # Clifford action of pi(e_a) in the leaf representation
    act = {a: rep_leaf.gamma[k] for k, a in enumerate(leaf)}
    grad = [m @ psi for m in induced]
    t = np.zeros((n, n))
    for a in range(n):
        for b in range(n):
            val = 0.0
            if a in act:
                val += re_inner(act[a] @ grad[b], psi)
            if b in act:
                val += re_inner(act[b] @ grad[a], psi)
            t[a, b] = 0.5 * val / norm_sq

    lie = lie_derivative_metric(conn, np.eye(n)[nu_index]) if conn is not None else -(h + h.T)
    ll = np.ix_(leaf, leaf)
    parallel = max(float(np.linalg.norm(g)) for g in fld.gradient()) <= 1e-12 * np.sqrt(norm_sq)
    return HypersurfaceReport(
        rep_leaf=rep_leaf,
        induced=induced,
        T_phi=BilinearTensor(t),
        weingarten_prediction=-0.25 * (h + h.T)[ll],
        lie_prediction=0.25 * lie[ll],
        normal_row=t[nu_index, leaf],
        normal_prediction=-0.25 * h[nu_index, leaf],
        ambient_parallel=parallel,
        riemannian=bool(np.max(np.abs(h[nu_index])) <= FLAG_TOL),
    )


# ------------------------------------------------------- transversal connection


@dataclass(frozen=True)
class TransversalConnection:
    rep_q: CliffordAlgebraRep
    xi_index: int
    derivatives: tuple  # nabla_{e_a} on spinors, a = 0..n-1
    kernel_dim: int
    kernel: np.ndarray  # columns span the common nullspace
    parallel_residual: float  # for the field's own spinor
    gamma_q: np.ndarray | None = None  # gamma_q[a, p, r] = g(nabla_{e_a} e_p, e_r), p, r in Q
    riemann: np.ndarray | None = None  # riemann[a, b, p, r] = g(R(e_a, e_b) e_p, e_r)
    ricci: np.ndarray | None = None
    scal_direct: float | None = None
    scal_oneill: float | None = None  # Scal_M - 2 div_Q kappa + 2 |kappa|^2 + |h|_Q^2
    xi_curvature_residual: float | None = None
    spinor_route_residual: float | None = None
    notes: list = field(default_factory=list)

    def dirac_tr(self, phi) -> np.ndarray:
        """Transversal Dirac operator ``sum_p e_p .Q nabla_{e_p} Phi``."""
        return self._dirac_tr_matrix() @ np.asarray(phi, dtype=complex)

    def _dirac_tr_matrix(self) -> np.ndarray:
        q = self._q
        return sum(g @ self.derivatives[a] for g, a in zip(self.rep_q.gamma, q))

    @property
    def _q(self) -> list:
        return [a for a in range(len(self.derivatives)) if a != self.xi_index]


def common_kernel(mats, tol: float = KERNEL_TOL) -> np.ndarray:
    stack = np.vstack(mats)
    _, s, vh = np.linalg.svd(stack)
    rank = int(np.sum(s > tol))
    return vh[rank:].conj().T


def transversal_spinor_derivatives(fld: SpinorField, flow: FlowStructure) -> tuple:
    """``nabla_{e_a}`` on spinors of Q under the identification, via the flow Gauss formulas."""
    rep = fld.rep
    xi = flow.xi_index
    g_xi = rep.gamma[xi]
    out = []
    for a in range(fld.n):
        if a == xi:
            twist = sum(rep.gamma[p] @ rep.vector(flow.h[p]) for p in flow.q_indices)
            out.append(fld.deriv[a] - 0.25 * twist - 0.5 * g_xi @ rep.vector(flow.kappa))
        else:
            out.append(fld.deriv[a] - 0.5 * g_xi @ rep.vector(flow.h[a]))
    return tuple(out)


def _transversal_geometry(flow: FlowStructure) -> dict:
    m, conn = flow.manifold, flow.connection
    g, c = conn.gamma, m.c
    n, xi, q = flow.n, flow.xi_index, flow.q_indices
    k = len(q)
    gq = np.zeros((n, k, k))
    for a in range(n):
        for i, p in enumerate(q):
            for j, r in enumerate(q):
                gq[a, i, j] = c[xi, p, r] if a == xi else g[a, p, r]
    # R(e_a, e_b) e_p = nabla_a nabla_b e_p - nabla_b nabla_a e_p - nabla_[e_a, e_b] e_p
    term = np.einsum("bps,asr->abpr", gq, gq)
    riem = term - np.transpose(term, (1, 0, 2, 3)) - np.einsum("abm,mpr->abpr", c, gq)
    rq = riem[np.ix_(q, q, range(k), range(k))]
    ricci = np.einsum("aiir->ar", rq)
    scal_direct = float(np.trace(ricci))

    kappa = flow.kappa
    div_q = float(sum(kappa[kk] * g[i, kk, i] for i in q for kk in range(n)))
    scal_m = riemann_curvature(m, conn).scal
    scal_oneill = scal_m - 2.0 * div_q + 2.0 * float(kappa @ kappa) + flow.h_q_norm_sq()
    return {
        "gamma_q": gq,
        "riemann": riem,
        "ricci": ricci,
        "scal_direct": scal_direct,
        "scal_oneill": scal_oneill,
        "xi_curvature_residual": float(np.max(np.abs(riem[xi]))),
    }


def transversal_connection(fld: SpinorField, flow: FlowStructure) -> TransversalConnection:
    if not flow.riemannian:
        raise NonRiemannianFlow("the transversal Levi-Civita connection needs a Riemannian flow")
    rep_q = restrict_rep(fld.rep, flow.xi_index)
    derivs = transversal_spinor_derivatives(fld, flow)
    kernel = common_kernel(derivs)
    psi = fld.psi0
    residual = max(float(np.linalg.norm(d @ psi)) for d in derivs) / np.sqrt(fld.norm_sq)
    extra = {}
    notes = []
    if flow.connection is not None:
        extra = _transversal_geometry(flow)
        if fld.source == FROM_SPIN_CONNECTION:
            # independent route: spin connection of the transversal Christoffel symbols
            gq = extra["gamma_q"]
            q = flow.q_indices
            worst = 0.0
            for a in range(fld.n):
                om = np.zeros_like(derivs[a])
                for i in range(len(q)):
                    for j in range(i + 1, len(q)):
                        om += 0.5 * gq[a, i, j] * rep_q.gamma[i] @ rep_q.gamma[j]
                worst = max(worst, float(np.max(np.abs(om - derivs[a]))))
            extra["spinor_route_residual"] = worst
    else:
        notes.append("no frame geometry: transversal curvature not computed")
    return TransversalConnection(
        rep_q=rep_q,
        xi_index=flow.xi_index,
        derivatives=derivs,
        kernel_dim=kernel.shape[1],
        kernel=kernel,
        parallel_residual=residual,
        notes=notes,
        **extra,
    )


# ------------------------------------------------------------ flow tensors


@dataclass(frozen=True)
class FlowEmtReport:
    E: BilinearTensor
    T: BilinearTensor
    Q: BilinearTensor
    gauss_q_residual: float  # max_Z ||nabla_Z Psi - 1/2 xi.h(Z).Psi|| / ||Psi||
    gauss_xi_residual: float  # ||nabla_xi Psi - 1/2 xi.kappa.Psi|| / ||Psi||
    checks: dict  # name -> (computed, expected, hypothesis)


def flow_emt(fld: SpinorField, flow: FlowStructure, tol: float = 1e-12) -> FlowEmtReport:
    """Flow energy-momentum tensors and, where their hypotheses hold, the identities they obey.

    Hypothesis labels: ``"gauss-Q"`` means the projected-connection Gauss
    relation annihilates Psi along Q; ``"gauss-full"`` adds the xi direction;
    ``"riemannian"`` additionally needs h|_Q skew.
    """
    E = flow_energy_tensor(fld, flow.xi_index)
    T, Q = E.sym(), E.skew()
    rep, psi, xi = fld.rep, fld.psi0, flow.xi_index
    g_xi = rep.gamma[xi]
    scale = np.sqrt(fld.norm_sq)
    r_q = max(
        float(np.linalg.norm((fld.deriv[a] - 0.5 * g_xi @ rep.vector(flow.h[a])) @ psi)) for a in flow.q_indices
    ) / scale
    r_xi = float(np.linalg.norm((fld.deriv[xi] - 0.5 * g_xi @ rep.vector(flow.kappa)) @ psi)) / scale

    q = flow.q_indices
    qq = np.ix_(q, q)
    checks = {}
    if r_q <= tol:
        checks["T_QQ_vs_lie"] = (T.entries[qq], -0.25 * flow.lie_derivative()[qq], "gauss-Q")
        if flow.manifold is not None:
            bracket_xi = flow.manifold.c[:, :, xi]
            checks["Q_QQ_vs_bracket"] = (Q.entries[qq], 0.25 * bracket_xi[qq], "gauss-Q")
        if flow.riemannian:
            # g(A_Z W, xi) = -g(h(Z), W)
            checks["Q_QQ_vs_oneill"] = (Q.entries[qq], -0.5 * flow.h[qq], "riemannian")
        if r_xi <= tol:
            checks["T_xiQ_vs_kappa"] = (T.entries[xi, q], -0.25 * flow.kappa[q], "gauss-full")
    return FlowEmtReport(E, T, Q, r_q, r_xi, checks)


# ------------------------------------------------------------ dimension three


@dataclass(frozen=True)
class ThreeDReport:
    kernel_dim: int
    solution_dim: int  # frame-constant solutions of D Psi = b/2 Psi
    field_residual: float  # ||D Psi - b/2 Psi|| for the field's unit spinor
    scal_transversal: float | None
    scal_nonnegative: bool | None
    dirac_tr: np.ndarray
    nabla_xi: np.ndarray
    gauss_identity_residual: float  # (D - b/2) Psi = xi . (nabla_xi - D_tr) Phi
    equivalent: bool


def three_d_equivalence(fld: SpinorField, flow: FlowStructure, tc: TransversalConnection, tol: float = 1e-9) -> ThreeDReport:
    if fld.n != 3:
        raise DimensionError(f"three-dimensional statement applied to n={fld.n}")
    if not flow.riemannian:
        raise NonRiemannianFlow("needs a Riemannian flow")
    if not flow.minimal:
        raise NonRiemannianFlow("needs a minimal flow (kappa = 0)")
    rep = fld.rep
    d = dirac_matrix(fld)
    shifted = d - 0.5 * flow.b * rep.identity()
    psi = fld.psi0 / np.sqrt(fld.norm_sq)
    field_res = float(np.linalg.norm(shifted @ psi))
    if fld.source == FROM_SPIN_CONNECTION:
        solution_dim = common_kernel([shifted], tol=KERNEL_TOL).shape[1]
    else:
        solution_dim = int(field_res <= tol)
    xi = flow.xi_index
    dtr = tc.dirac_tr(psi)
    nxi = tc.derivatives[xi] @ psi
    gauss = float(np.linalg.norm(shifted @ psi - rep.gamma[xi] @ (nxi - dtr)))
    scal_tr = tc.scal_direct
    nonneg = None if scal_tr is None else bool(scal_tr >= -tol)
    return ThreeDReport(
        kernel_dim=tc.kernel_dim,
        solution_dim=solution_dim,
        field_residual=field_res,
        scal_transversal=scal_tr,
        scal_nonnegative=nonneg,
        dirac_tr=dtr,
        nabla_xi=nxi,
        gauss_identity_residual=gauss,
        equivalent=(tc.kernel_dim > 0) == (solution_dim > 0),
    )


__all__ = [
    "FlowStructure",
    "OneillReport",
    "HypersurfaceReport",
    "TransversalConnection",
    "FlowEmtReport",
    "ThreeDReport",
    "flow_structure",
    "prescribed_flow",
    "weingarten",
    "oneill",
    "hypersurface_restrict",
    "transversal_spinor_derivatives",
    "transversal_connection",
    "common_kernel",
    "flow_emt",
    "three_d_equivalence",
]
