"""Run every applicable check on a ManifoldSpec and collect a VerificationReport.

Observables are named ``<group>.<quantity>`` with 1-based ``[a,b]``
suffixes for matrix entries.  A golden value in ``spec.expected`` turns any
observable (including single matrix entries) into an equality check; the
structural identities are checked against zero on every run.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import ALL_GROUPS
from .clifford import build_rep, re_inner, restrict_rep
from .emt_bounds import (
    emt_tensors,
    equality_residual,
    modified_connection_identity,
    pairing_identity,
    check_bounds,
)
from .errors import SpinflowError
from .foliation import (
    flow_emt,
    flow_structure,
    hypersurface_restrict,
    oneill,
    prescribed_flow,
    three_d_equivalence,
    transversal_connection,
)
from .frame_geometry import (
    curvature_residuals,
    is_unimodular,
    jacobi_residual,
    koszul_residuals,
    levi_civita,
    lie_derivative_metric,
    riemann_curvature,
)
from .report import EQUALITY, INEQUALITY, INFO, CheckRecord, VerificationReport
from .sasaki_kahler import (
    check_sasakian,
    einstein_like_relation,
    eta_einstein_fit,
    flow_complex_structure,
    kahler_form_spinor,
    omega2,
    projector_residuals,
    sasaki_spinor_equations,
    transversal_ricci_relation,
    xi_sign_rule,
)
from .spec_io import ManifoldSpec
from .spinor_fields import (
    FROM_SPIN_CONNECTION,
    dirac,
    hermiticity_residual,
    kahler_commutation_report,
    make_field,
    standard_complex_structure,
)

DEFAULT_TOL = 1e-9


@dataclass
class _Obs:
    id: str
    description: str
    value: object
    auto: float | None
    kind: str


class _Collector:
    def __init__(self):
        self.items: list[_Obs] = []
        self.lookup: dict = {}
        self.errors: list[CheckRecord] = []

    def eq(self, oid, desc, value, expected=0.0):
        self.items.append(_Obs(oid, desc, float(value), float(expected), EQUALITY))

    def ineq(self, oid, desc, slack):
        self.items.append(_Obs(oid, desc, float(slack), 0.0, INEQUALITY))

    def info(self, oid, desc, value):
        if isinstance(value, (bool, np.bool_)):
            value = float(value)
        self.items.append(_Obs(oid, desc, value, None, INFO))
        if np.ndim(value) == 0 and value is not None:
            self.lookup[oid] = float(value)

    def matrix(self, oid, desc, mat):
        mat = np.asarray(mat, dtype=float)
        self.items.append(_Obs(oid, desc, mat, None, INFO))
        for idx in np.ndindex(*mat.shape):
            key = ",".join(str(i + 1) for i in idx)
            self.lookup[f"{oid}[{key}]"] = float(mat[idx])

    def error(self, group, exc):
        self.errors.append(
            CheckRecord(f"{group}.error", f"{type(exc).__name__}: {exc}", None, None, None, False, EQUALITY, "error")
        )


class _Context:
    """Geometry, field and flow shared by all groups."""

    def __init__(self, spec: ManifoldSpec):
        self.spec = spec
        self.n = spec.dim
        self.frame = spec.frame
        self.conn = levi_civita(self.frame) if self.frame is not None else None
        self.curv = riemann_curvature(self.frame, self.conn) if self.frame is not None else None
        self.scal = spec.overrides.get("scal", self.curv.scal if self.curv else None)
        self.ric = spec.overrides.get("ric", self.curv.ricci if self.curv else None)
        self.rep = build_rep(self.n)
        if spec.derivatives == "spin_connection":
            self.field = make_field(self.rep, spec.components, self.conn)
        else:
            self.field = make_field(self.rep, spec.components, list(spec.derivatives))
        self.xi = spec.xi_index
        self.flow = None
        if self.xi is not None:
            if self.frame is not None:
                self.flow = flow_structure(self.frame, self.conn, self.xi)
            elif "h" in spec.overrides:
                self.flow = prescribed_flow(spec.overrides["h"], self.xi)
        self.dirac = dirac(self.field)
        self.tc = None


def _geometry(ctx: _Context, out: _Collector):
    m, conn, curv = ctx.frame, ctx.conn, ctx.curv
    out.eq("geometry.jacobi_residual", "Jacobi identity of the structure constants", jacobi_residual(m.c)[0])
    for key, val in koszul_residuals(m, conn).items():
        out.eq(f"geometry.levi_civita_{key}_residual", f"Levi-Civita connection: {key} condition", val)
    for key, val in curvature_residuals(curv).items():
        out.eq(f"geometry.curvature_{key}_residual", f"curvature symmetry: {key}", val)
    out.info("geometry.scal", "scalar curvature", curv.scal)
    out.matrix("geometry.ricci", "Ricci tensor Ric(e_a, e_b)", curv.ricci)
    out.matrix("geometry.christoffel", "Christoffel symbols g(nabla_i e_j, e_k)", conn.gamma)
    out.info("geometry.unimodular", "trace of ad vanishes", is_unimodular(m))
    if ctx.xi is not None:
        lie = lie_derivative_metric(conn, np.eye(ctx.n)[ctx.xi])
        out.matrix("geometry.lie_xi", "Lie derivative of the metric along xi", lie)
    if "scal" in ctx.spec.overrides:
        out.eq("geometry.scal_override_residual", "override scal agrees with computed scal", abs(ctx.spec.overrides["scal"] - curv.scal))


def _spinor(ctx: _Context, out: _Collector):
    fld, d = ctx.field, ctx.dirac
    psi, norm = fld.psi0, np.sqrt(fld.norm_sq)
    if fld.source == FROM_SPIN_CONNECTION:
        skew = max(float(np.max(np.abs(w + w.conj().T))) for w in fld.deriv)
        out.eq("spinor.spin_connection_skew_residual", "spin connection is skew-hermitian", skew)
        if is_unimodular(ctx.frame):
            out.eq("spinor.dirac_hermiticity_residual", "D hermitian on frame-constant spinors (unimodular)", hermiticity_residual(d.dirac_matrix))
    out.info("spinor.norm_drift", "max_i |Re(M_i Psi, Psi)| / |Psi|^2", fld.norm_drift)
    mu = re_inner(d.value, psi) / fld.norm_sq
    out.info("spinor.dirac_eigenvalue", "Re(D Psi, Psi) / |Psi|^2", mu)
    out.info("spinor.dirac_eigen_residual", "||D Psi - mu Psi|| / ||Psi||", float(np.linalg.norm(d.value - mu * psi)) / norm)
    out.info("spinor.dirac_norm", "||D Psi|| / ||Psi||", float(np.linalg.norm(d.value)) / norm)
    if ctx.xi is not None:
        xi_psi = ctx.rep.gamma[ctx.xi] @ psi
        out.info("spinor.dirac_xi_residual", "||D Psi - xi.Psi|| / ||Psi||", float(np.linalg.norm(d.value - xi_psi)) / norm)
    out.info("spinor.dirac_squared_residual", "||D^2 Psi - lambda^2 Psi|| / ||Psi||", d.residual)
    out.info("spinor.lambda_sq", "lambda^2 from the Rayleigh quotient of D^2", d.lambda_sq)


def _emt(ctx: _Context, out: _Collector):
    fld = ctx.field
    E, T, Q = emt_tensors(fld)
    n = ctx.n
    out.eq("emt.sym_residual", "sym(E) equals T computed directly", np.max(np.abs(E.sym().entries - T.entries)))
    out.eq("emt.skew_residual", "skew(E) equals Q computed directly", np.max(np.abs(E.skew().entries - Q.entries)))
    out.eq("emt.pythagoras_residual", "|E|^2 = |T|^2 + |Q|^2", abs(E.frob_sq() - T.frob_sq() - Q.frob_sq()))
    lhs, rhs = modified_connection_identity(fld)
    out.eq("emt.modified_connection_residual", "|nabla Psi + E.Psi|^2 = |nabla Psi|^2 - |E|^2 |Psi|^2", abs(lhs - rhs))
    tr_d = re_inner(ctx.dirac.value, fld.psi0) / fld.norm_sq
    out.eq("emt.trace_residual", "tr T = Re(D Psi, Psi) / |Psi|^2", abs(T.trace() - tr_d))
    out.ineq("emt.cauchy_schwarz_T", "|T|^2 - tr(T)^2 / n", T.frob_sq() - T.trace() ** 2 / n)
    out.matrix("emt.T", "energy-momentum tensor T", T.entries)
    out.matrix("emt.Q", "skew tensor Q", Q.entries)
    out.info("emt.T_norm_sq", "|T|^2", T.frob_sq())
    out.info("emt.Q_norm_sq", "|Q|^2", Q.frob_sq())
    out.info("emt.E_norm_sq", "|E|^2", E.frob_sq())
    out.info("emt.equality_residual", "max_i ||nabla_i Psi + E(e_i).Psi|| / ||Psi||", equality_residual(fld, E))
    if n % 2 == 0:
        J = standard_complex_structure(n)
        rep = pairing_identity(fld, J)
        out.eq("emt.pairing_residual", "Re(twisted D Psi, Psi) = (J, Q) |Psi|^2", abs(rep.re_twisted - rep.paired))
        out.ineq("emt.cauchy_schwarz_Q", "|Q|^2 - (J, Q)^2 / n", rep.q_norm_sq - rep.jq_bound)
        for key, val in kahler_commutation_report(fld, J).items():
            out.info(f"emt.twisted_{key}", f"twisted Dirac operator: {key.replace('_', ' ')} (reported only)", val)


def _bounds(ctx: _Context, out: _Collector, tol: float):
    if ctx.scal is None:
        raise SpinflowError("no scalar curvature available")
    if ctx.dirac.lambda_sq is None:
        out.info("bounds.applicable", "Psi is an eigenspinor of D^2", 0.0)
        return
    r = check_bounds(ctx.field, ctx.scal, ctx.xi, tol)
    lam = r.lambda_sq
    out.info("bounds.applicable", "Psi is an eigenspinor of D^2", 1.0)
    out.info("bounds.friedrich_rhs", "n Scal / (4 (n - 1)), pointwise", r.friedrich.rhs)
    if r.friedrich.applicable:
        out.ineq("bounds.friedrich", "lambda^2 >= Friedrich bound", lam - r.friedrich.rhs)
        out.info("bounds.friedrich_slack", "lambda^2 - Friedrich bound", lam - r.friedrich.rhs)
    out.info("bounds.emt_rhs", "Scal / 4 + |T|^2, pointwise", r.emt.rhs)
    if r.emt.applicable:
        out.ineq("bounds.emt", "lambda^2 >= Scal/4 + |T|^2", lam - r.emt.rhs)
    else:
        out.info("bounds.emt_applicable", "Scal/4 + |T|^2 bound needs D Psi proportional to Psi", 0.0)
    out.info("bounds.main_rhs", "Scal / 4 + |T|^2 + |Q|^2, pointwise", r.main.rhs)
    out.ineq("bounds.main", "lambda^2 >= Scal/4 + |T|^2 + |Q|^2", lam - r.main.rhs)
    out.info("bounds.main_equality", "lambda^2 equals Scal/4 + |T|^2 + |Q|^2", r.main.equality)
    out.info("bounds.lichnerowicz_residual", "|lambda^2 - Scal/4 - |nabla Psi|^2 / |Psi|^2| (reported only)", abs(lam - ctx.scal / 4 - r.gradient_sq))
    if r.flow is not None:
        out.info("bounds.flow_rhs", "Scal / 4 + |E_xi|^2, pointwise", r.flow.rhs)
        out.ineq("bounds.flow", "lambda^2 >= Scal/4 + |E_xi|^2", lam - r.flow.rhs)
        out.ineq("bounds.flow_transverse", "lambda^2 >= Scal/4 + |E_xi restricted to Q|^2", lam - r.flow_transverse.rhs)


def _flow(ctx: _Context, out: _Collector, tol: float):
    fl, fld = ctx.flow, ctx.field
    out.eq("flow.xi_column_residual", "g(nabla_X xi, xi) = 0", fl.xi_column_residual)
    out.info("flow.riemannian", "h restricted to Q is skew", fl.riemannian)
    out.info("flow.minimal", "kappa = nabla_xi xi vanishes", fl.minimal)
    out.matrix("flow.h", "g(nabla_{e_a} xi, e_b)", fl.h)
    if fl.b is not None:
        out.info("flow.b", "b with h(e_1) = b e_2 on Q", fl.b)
    if fl.riemannian and fl.connection is not None:
        o = oneill(fl)
        out.eq("flow.oneill_xi_residual", "A_Z xi = h(Z)", o.a_xi_residual)
        out.eq("flow.oneill_h_residual", "A_Z W = -g(h(Z), W) xi", o.a_zw_residual)
        out.eq("flow.oneill_bracket_residual", "A_Z W = 1/2 pi_perp [Z, W]", o.bracket_residual)
        out.eq("flow.oneill_skew_residual", "A_Z W = -A_W Z", o.skew_residual)
    if fl.riemannian:
        tc = transversal_connection(fld, fl)
        ctx.tc = tc
        out.info("flow.kernel_dim", "dimension of the transversal parallel kernel", tc.kernel_dim)
        out.info("flow.parallel_residual", "max_a ||nabla_a Phi|| / ||Phi|| for the given spinor", tc.parallel_residual)
        if tc.scal_direct is not None:
            out.eq("flow.transversal_xi_curvature_residual", "R(xi, .) = 0 for the transversal connection", tc.xi_curvature_residual)
            out.info("flow.scal_transversal_direct", "transversal scalar curvature from its curvature", tc.scal_direct)
            out.info("flow.scal_transversal_oneill", "Scal_M - 2 div_Q kappa + 2|kappa|^2 + |h|_Q^2", tc.scal_oneill)
            out.eq("flow.scal_transversal_residual", "both transversal scalar curvatures agree", abs(tc.scal_direct - tc.scal_oneill))
            out.matrix("flow.ricci_transversal", "transversal Ricci tensor on Q", tc.ricci)
        if tc.spinor_route_residual is not None:
            out.eq("flow.spinor_route_residual", "Gauss formulas equal the transversal spin connection", tc.spinor_route_residual)
    fe = flow_emt(fld, fl, tol=1e-12)
    out.matrix("flow.T_flow", "symmetric part of E_xi", fe.T.entries)
    out.matrix("flow.Q_flow", "skew part of E_xi", fe.Q.entries)
    out.info("flow.gauss_q_residual", "nabla_Z Psi - 1/2 xi.h(Z).Psi on Q", fe.gauss_q_residual)
    out.info("flow.gauss_xi_residual", "nabla_xi Psi - 1/2 xi.kappa.Psi", fe.gauss_xi_residual)
    for key, (computed, expected, hyp) in fe.checks.items():
        out.eq(f"flow.{key}_residual", f"flow tensor identity {key} (hypothesis: {hyp})", np.max(np.abs(computed - expected), initial=0.0))
    if ctx.n == 3 and fl.riemannian and fl.minimal and ctx.tc is not None:
        r = three_d_equivalence(fld, fl, ctx.tc)
        out.info("flow.three_d_solution_dim", "frame-constant solutions of D Psi = b/2 Psi", r.solution_dim)
        out.info("flow.three_d_residual", "||D Psi - b/2 Psi|| for |Psi| = 1", r.field_residual)
        out.eq("flow.three_d_equivalence", "transversal parallel kernel nonempty iff D Psi = b/2 Psi solvable", float(r.equivalent), 1.0)
        out.eq("flow.three_d_gauss_residual", "(D - b/2) Psi = xi.(nabla_xi - D_tr) Phi", r.gauss_identity_residual)
        if r.scal_nonnegative is not None:
            out.info("flow.three_d_scal_nonnegative", "transversal scalar curvature >= 0", r.scal_nonnegative)
    if ctx.n % 2 == 1:
        hr = hypersurface_restrict(fld, ctx.xi, h=None if ctx.conn is not None else -fl.h, conn=ctx.conn)
        out.info("flow.hypersurface_ambient_parallel", "ambient spinor is parallel", hr.ambient_parallel)
        if hr.ambient_parallel:
            out.eq("flow.hypersurface_shape_residual", "T_Phi on leaves = -1/2 g(h., .)", np.max(np.abs(hr.T_phi.entries[_leaf(ctx)] - hr.weingarten_prediction)))
            out.eq("flow.hypersurface_lie_residual", "T_Phi on leaves = 1/4 L_nu g", np.max(np.abs(hr.T_phi.entries[_leaf(ctx)] - hr.lie_prediction)))
            out.eq("flow.hypersurface_normal_residual", "T_Phi(nu, X) = -1/4 g(X, h(nu))", np.max(np.abs(hr.normal_row - hr.normal_prediction)))


def _leaf(ctx):
    q = [i for i in range(ctx.n) if i != ctx.xi]
    return np.ix_(q, q)


def _sasaki(ctx: _Context, out: _Collector, tol: float):
    n, xi = ctx.n, ctx.xi
    rep_s = check_sasakian(ctx.frame, ctx.conn, xi, tol=1e-10)
    out.info("sasaki.unit_killing", "xi is a unit Killing field", rep_s.is_unit_killing)
    out.info("sasaki.axiom1_residual", "h^2 + Id - xi (x) xi", rep_s.axiom1_residual)
    out.info("sasaki.axiom2_residual", "(nabla_X h) Y - g(xi, Y) X + g(X, Y) xi", rep_s.axiom2_residual)
    out.info("sasaki.axiom1_holds", "first Sasakian axiom holds", rep_s.axiom1_residual <= 1e-10)
    out.info("sasaki.is_sasakian", "both Sasakian axioms hold", rep_s.is_sasakian)
    rep_q = restrict_rep(ctx.rep, xi)
    if n == 3:
        xi_action = -1j * omega2(rep_q)
        out.eq("sasaki.xi_identification_residual", "xi. acts as -i omega_2 on transversal spinors", np.max(np.abs(xi_action - ctx.rep.gamma[xi])))
        dec = kahler_form_spinor(rep_q, standard_complex_structure(2))
        out.eq("sasaki.xi_sign_rule_residual", "xi.Psi_r = (-1)^(r+1) i Psi_r (J e_1 = e_2)", xi_sign_rule(xi_action, dec))
    if not rep_s.is_sasakian:
        return
    eta = eta_einstein_fit(ctx.ric, xi, tol=1e-10)
    out.info("sasaki.beta", "eta-Einstein beta", eta.beta)
    out.info("sasaki.gamma", "eta-Einstein gamma", eta.gamma)
    out.eq("sasaki.eta_einstein_residual", "Ric = beta g + gamma xi (x) xi", eta.residual)
    out.eq("sasaki.eta_sum_residual", "beta + gamma = 2m", eta.sum_residual)
    tc = ctx.tc
    if tc is not None and tc.ricci is not None:
        rel = transversal_ricci_relation(ctx.ric, tc.ricci, xi)
        out.eq("sasaki.transversal_ricci_residual", "Ric^nabla Z = Ric_M Z + 2Z", rel["transversal"])
        out.eq("sasaki.ricci_xi_residual", "Ric_M xi = 2m xi", rel["xi"])
    J = flow_complex_structure(ctx.flow)
    dec = kahler_form_spinor(rep_q, J)
    out.eq("sasaki.omega_spectrum_residual", "Omega eigenvalues are i(2r - m)", dec.spectrum_residual)
    out.eq("sasaki.omega_multiplicities", "eigenbundle ranks are binom(m, r)", float(dec.multiplicities == dec.expected_multiplicities), 1.0)
    for key, val in projector_residuals(dec).items():
        out.eq(f"sasaki.projector_{key}_residual", f"eigenbundle projectors: {key}", val)
    if tc is not None and tc.parallel_residual <= 1e-12:
        s = sasaki_spinor_equations(ctx.field, ctx.flow, rep_q, J)
        out.eq("sasaki.spinor_xi_residual", "nabla_xi Psi = 1/2 Omega.Psi", s.xi_residual)
        out.eq("sasaki.spinor_q_residual", "nabla_Z Psi = 1/2 xi.h(Z).Psi", s.q_residual)
        if s.omega_b_residual is not None:
            out.eq("sasaki.omega_b_residual", "Omega.Psi = b xi.Psi", s.omega_b_residual)
        rel = einstein_like_relation(ctx.ric, xi)
        out.info("sasaki.ricci_minus_two_residual", "Ric Z + 2Z on Q (reported only)", rel["transversal"])


def _applicable(ctx: _Context, group: str) -> str | None:
    """Reason a group is skipped, or None when it runs."""
    if group == "geometry" and ctx.frame is None:
        return "geometry skipped: prescription-mode spec without structure constants"
    if group == "flow" and ctx.flow is None:
        return "flow skipped: no flow_index (or no h override in prescription mode)"
    if group == "sasaki":
        if ctx.frame is None or ctx.flow is None:
            return "sasaki skipped: needs structure constants and a flow"
        if ctx.n % 2 == 0 or ctx.n < 3:
            return "sasaki skipped: needs odd dimension >= 3"
    return None


def _finalise(spec: ManifoldSpec, out: _Collector, tol: float) -> list:
    records = []
    scalar_ids = set()
    for o in out.items:
        golden = spec.expected.get(o.id)
        scalar = np.ndim(o.value) == 0 and o.value is not None
        if scalar:
            scalar_ids.add(o.id)
        if golden is not None and scalar:
            err = abs(float(o.value) - golden)
            records.append(CheckRecord(o.id, o.description, o.value, golden, err, err <= tol, EQUALITY, "golden"))
        elif o.kind == INEQUALITY:
            err = max(0.0, -o.value)
            records.append(CheckRecord(o.id, o.description, o.value, 0.0, err, o.value >= -tol, INEQUALITY, "bound"))
        elif o.kind == EQUALITY:
            err = abs(o.value - o.auto)
            records.append(CheckRecord(o.id, o.description, o.value, o.auto, err, err <= tol, EQUALITY, "identity"))
        else:
            records.append(CheckRecord(o.id, o.description, o.value, None, None, True, INFO, "info"))
    for key, golden in spec.expected.items():
        if key in scalar_ids:
            continue
        if key in out.lookup:
            val = out.lookup[key]
            err = abs(val - golden)
            records.append(CheckRecord(key, "matrix entry", val, golden, err, err <= tol, EQUALITY, "golden"))
        else:
            records.append(CheckRecord(key, "expected value has no computed scalar observable", None, golden, None, False, EQUALITY, "golden"))
    return records + out.errors


def run_verification(spec: ManifoldSpec, tol: float = DEFAULT_TOL) -> VerificationReport:
    out = _Collector()
    notes = []
    try:
        ctx = _Context(spec)
    except (SpinflowError, ValueError, np.linalg.LinAlgError) as exc:
        out.error("setup", exc)
        return VerificationReport(spec.name, tol, _finalise(spec, out, tol), notes)
    runners = {
        "geometry": lambda: _geometry(ctx, out),
        "spinor": lambda: _spinor(ctx, out),
        "emt": lambda: _emt(ctx, out),
        "bounds": lambda: _bounds(ctx, out, tol),
        "flow": lambda: _flow(ctx, out, tol),
        "sasaki": lambda: _sasaki(ctx, out, tol),
    }
    for group in ALL_GROUPS:
        if group not in spec.checks:
            continue
        reason = _applicable(ctx, group)
        if reason:
            notes.append(reason)
            continue
        try:
            runners[group]()
        except (SpinflowError, ValueError, np.linalg.LinAlgError) as exc:
            out.error(group, exc)
    return VerificationReport(spec.name, tol, _finalise(spec, out, tol), notes)


__all__ = ["run_verification", "DEFAULT_TOL"]
