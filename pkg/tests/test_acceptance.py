"""Acceptance criteria, one test per criterion.

Each criterion prints a single ``PASS``/``FAIL`` line (also under pytest's
output capture).  Run directly with ``python tests/test_acceptance.py`` to
get just the summary lines; the exit status is nonzero if any criterion fails.
"""
import contextlib
import io
import json
import os
import shutil
import subprocess
import sys
import tempfile
import time

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from fields import setup  # noqa: E402
from oracles import (  # noqa: E402
    koszul_bruteforce,
    random_lie_algebra,
    random_matrix,
    random_orthogonal,
    random_spinor,
    riemannian_flow_data,
)
from spinflow import catalog  # noqa: E402
from spinflow.cli import main  # noqa: E402
from spinflow.clifford import build_rep, re_inner, restrict_rep  # noqa: E402
from spinflow.emt_bounds import emt_tensors, modified_connection_identity, pairing_identity  # noqa: E402
from spinflow.foliation import (  # noqa: E402
    flow_emt,
    flow_structure,
    oneill,
    three_d_equivalence,
    transversal_connection,
)
from spinflow.frame_geometry import frame_from_array, levi_civita  # noqa: E402
from spinflow.sasaki_kahler import (  # noqa: E402
    check_sasakian,
    eta_einstein_fit,
    kahler_form_spinor,
    omega2,
    xi_sign_rule,
)
from spinflow.spec_io import spec_from_dict  # noqa: E402
from spinflow.spinor_fields import dirac, make_field, standard_complex_structure  # noqa: E402
from spinflow.verify import run_verification  # noqa: E402

GOLDEN_TOL = 1e-9
PROPERTY_TOL = 1e-10
CASES = 1000


class Criterion:
    """Collects named sub-checks; the criterion passes when all of them do."""

    def __init__(self):
        self.failures = []
        self.count = 0

    def close(self, name, value, expected, tol):
        self.count += 1
        err = float(np.max(np.abs(np.asarray(value, dtype=complex) - np.asarray(expected, dtype=complex))))
        if not err <= tol:
            self.failures.append(f"{name}: got {value!r}, want {expected!r} (err {err:.3g})")

    def true(self, name, flag, detail=""):
        self.count += 1
        if not flag:
            self.failures.append(f"{name} {detail}".strip())

    @property
    def ok(self):
        return not self.failures


def report(number, title, crit):
    status = "PASS" if crit.ok else "FAIL"
    line = f"{status}  criterion {number}: {title} ({crit.count} checks)"
    if crit.failures:
        line += " -- " + "; ".join(crit.failures[:3])
    return line


# ----------------------------------------------------------------- criterion 1


def criterion_1():
    c = Criterion()
    for tau in (0.5, 1.0, 2.0):
        t2 = tau * tau
        start = time.perf_counter()
        rep = run_verification(spec_from_dict(catalog.get("nil3", tau)), GOLDEN_TOL)
        elapsed = time.perf_counter() - start
        c.true(f"tau={tau} report", rep.failed == 0, str([r.id for r in rep.checks if not r.passed]))
        c.true(f"tau={tau} runtime", elapsed < 0.1, f"{elapsed:.3f} s")

        s = setup("nil3", tau)
        g = s.conn.gamma
        c.close("Scal", s.curv.scal, -2 * t2, GOLDEN_TOL)
        c.close("Ric", s.curv.ricci, np.diag([-2 * t2, -2 * t2, 2 * t2]), GOLDEN_TOL)
        c.close("Gamma_12^3", g[0, 1, 2], tau, GOLDEN_TOL)
        c.close("Gamma_23^1", g[1, 2, 0], tau, GOLDEN_TOL)
        c.close("-Gamma_13^2", -g[0, 2, 1], tau, GOLDEN_TOL)
        c.close("-Gamma_21^3", -g[1, 0, 2], tau, GOLDEN_TOL)
        d = dirac(s.field)
        c.close("D Psi", d.value, -0.5 * tau * s.field.psi0, GOLDEN_TOL)
        E, T, Q = emt_tensors(s.field)
        c.close("T", T.entries, np.diag([-tau / 2, -tau / 2, tau / 2]), GOLDEN_TOL)
        c.close("Q", Q.entries, np.zeros((3, 3)), GOLDEN_TOL)
        c.close("|T|^2", T.frob_sq(), 3 * t2 / 4, GOLDEN_TOL)
        main_rhs = s.scal / 4 + T.frob_sq() + Q.frob_sq()
        c.close("main rhs", main_rhs, t2 / 4, GOLDEN_TOL)
        c.close("lambda^2", d.lambda_sq, t2 / 4, GOLDEN_TOL)
        c.true("riemannian", s.flow.riemannian)
        c.true("minimal", s.flow.minimal)
        tc = transversal_connection(s.field, s.flow)
        c.true("kernel dim 2", tc.kernel_dim == 2, str(tc.kernel_dim))
        fe = flow_emt(s.field, s.flow)
        c.close("Q_flow(e1,e2)", fe.Q[0, 1], tau / 2, GOLDEN_TOL)
        c.close("-1/2 g(h e1, e2)", -0.5 * s.flow.h[0, 1], tau / 2, GOLDEN_TOL)
        c.close("Scal transversal direct", tc.scal_direct, 0.0, GOLDEN_TOL)
        c.close("Scal transversal O'Neill", tc.scal_oneill, 0.0, GOLDEN_TOL)
    return c


# ----------------------------------------------------------------- criterion 2


def criterion_2():
    c = Criterion()
    rep = run_verification(spec_from_dict(catalog.sol3()), GOLDEN_TOL)
    c.true("report", rep.failed == 0, str([r.id for r in rep.checks if not r.passed]))
    s = setup("sol3")
    c.close("Scal", s.curv.scal, -2.0, GOLDEN_TOL)
    d = dirac(s.field)
    c.close("D", d.dirac_matrix, np.zeros((2, 2)), GOLDEN_TOL)
    E, T, Q = emt_tensors(s.field)
    c.close("T(e1,e2)", T[0, 1], -0.5, GOLDEN_TOL)
    c.close("diag T", np.diag(T.entries), np.zeros(3), GOLDEN_TOL)
    c.close("|T|^2", T.frob_sq(), 0.5, GOLDEN_TOL)
    c.close("Q", Q.entries, np.zeros((3, 3)), GOLDEN_TOL)
    c.close("main rhs", s.scal / 4 + T.frob_sq() + Q.frob_sq(), 0.0, GOLDEN_TOL)
    c.close("lambda^2", d.lambda_sq, 0.0, GOLDEN_TOL)
    c.true("minimal", s.flow.minimal)
    c.true("not riemannian", not s.flow.riemannian)
    fe = flow_emt(s.field, s.flow)
    c.close("T_flow(e1,e1)", fe.T[0, 0], -0.5, GOLDEN_TOL)
    c.close("-1/4 L_xi g(e1,e1)", -0.25 * s.flow.lie_derivative()[0, 0], -0.5, GOLDEN_TOL)
    c.close("Q_flow(e1,e2)", fe.Q[0, 1], 0.0, GOLDEN_TOL)
    return c


# ----------------------------------------------------------------- criterion 3


def criterion_3():
    c = Criterion()
    rep = run_verification(spec_from_dict(catalog.s1xs2()), GOLDEN_TOL)
    c.true("report", rep.failed == 0, str([r.id for r in rep.checks if not r.passed]))
    s = setup("s1xs2")
    xi = s.rep.gamma[s.spec.xi_index]
    d = dirac(s.field)
    c.close("D Psi = xi.Psi", d.value, xi @ s.field.psi0, GOLDEN_TOL)
    c.close("D^2 Psi = Psi", d.second, s.field.psi0, GOLDEN_TOL)
    c.close("lambda^2", d.lambda_sq, 1.0, GOLDEN_TOL)
    E, T, Q = emt_tensors(s.field)
    c.close("T", T.entries, np.zeros((3, 3)), GOLDEN_TOL)
    c.close("|Q|^2", Q.frob_sq(), 0.5, GOLDEN_TOL)
    c.close("main rhs", s.scal / 4 + T.frob_sq() + Q.frob_sq(), 1.0, GOLDEN_TOL)
    friedrich = 3 * s.scal / 8
    c.close("Friedrich rhs", friedrich, 0.75, GOLDEN_TOL)
    c.close("Friedrich slack", d.lambda_sq - friedrich, 0.25, GOLDEN_TOL)
    return c


# ----------------------------------------------------------------- criterion 4


def _unit(rng, n):
    v = rng.normal(size=n)
    return v / np.linalg.norm(v)


def _random_field(rng, n):
    rep = build_rep(n)
    return make_field(rep, random_spinor(rng, rep.N), [random_matrix(rng, rep.N) for _ in range(n)])


def criterion_4():
    c = Criterion()
    rng = np.random.default_rng(2024)
    reps = {n: build_rep(n) for n in range(1, 8)}

    worst = {"anticommutation": 0.0, "unitarity": 0.0, "metric": 0.0}
    for _ in range(CASES):
        n = int(rng.integers(1, 8))
        rep = reps[n]
        z, w = rng.normal(size=n), rng.normal(size=n)
        gz, gw = rep.vector(z), rep.vector(w)
        worst["anticommutation"] = max(worst["anticommutation"], float(np.max(np.abs(gz @ gw + gw @ gz + 2 * (z @ w) * rep.identity()))))
        u = rep.vector(_unit(rng, n))
        worst["unitarity"] = max(worst["unitarity"], float(np.max(np.abs(u.conj().T @ u - rep.identity()))))
        psi = random_spinor(rng, rep.N)
        lhs = re_inner(gz @ psi, gw @ psi)
        worst["metric"] = max(worst["metric"], abs(lhs - (z @ w) * np.vdot(psi, psi).real) / max(1.0, abs(lhs)))
    for key, val in worst.items():
        c.close(key, val, 0.0, PROPERTY_TOL)

    worst = {"E=T+Q": 0.0, "pythagoras": 0.0, "modified connection": 0.0}
    for _ in range(CASES):
        fld = _random_field(rng, int(rng.integers(2, 7)))
        E, T, Q = emt_tensors(fld)
        worst["E=T+Q"] = max(worst["E=T+Q"], float(np.max(np.abs(E.entries - T.entries - Q.entries))))
        worst["pythagoras"] = max(worst["pythagoras"], abs(E.frob_sq() - T.frob_sq() - Q.frob_sq()) / max(1.0, E.frob_sq()))
        lhs, rhs = modified_connection_identity(fld)
        worst["modified connection"] = max(worst["modified connection"], abs(lhs - rhs) / max(1.0, abs(rhs)))
    for key, val in worst.items():
        c.close(key, val, 0.0, PROPERTY_TOL)

    worst = {"pairing": 0.0, "CS T": 0.0, "CS Q": 0.0}
    for _ in range(CASES):
        n = 2 * int(rng.integers(1, 4))
        fld = _random_field(rng, n)
        o = random_orthogonal(rng, n)
        J = o @ standard_complex_structure(n) @ o.T
        p = pairing_identity(fld, J)
        worst["pairing"] = max(worst["pairing"], abs(p.re_twisted - p.paired) / max(1.0, abs(p.paired)))
        worst["CS T"] = max(worst["CS T"], p.trace_bound - p.t_norm_sq)
        worst["CS Q"] = max(worst["CS Q"], p.jq_bound - p.q_norm_sq)
    for key, val in worst.items():
        c.true(key, val <= PROPERTY_TOL, f"worst {val:.3g}")

    worst_k = 0.0
    for _ in range(100):
        m = frame_from_array(random_lie_algebra(rng))
        worst_k = max(worst_k, float(np.max(np.abs(levi_civita(m).gamma - koszul_bruteforce(m.c)))))
    c.close("Koszul vs brute force", worst_k, 0.0, 1e-12)

    worst_a = worst_r = 0.0
    done = 0
    while done < 100:
        cst, xi = riemannian_flow_data(rng)
        if cst.shape[0] % 2 == 0:
            continue
        m = frame_from_array(cst)
        conn = levi_civita(m)
        fl = flow_structure(m, conn, xi)
        worst_a = max(worst_a, oneill(fl).bracket_residual)
        fld = make_field(build_rep(m.n), random_spinor(rng, 2 ** (m.n // 2)), conn)
        worst_r = max(worst_r, transversal_connection(fld, fl).xi_curvature_residual)
        done += 1
    c.close("A_Z W = 1/2 pi_perp [Z, W]", worst_a, 0.0, PROPERTY_TOL)
    c.close("R(xi, .) = 0", worst_r, 0.0, PROPERTY_TOL)
    return c


# ----------------------------------------------------------------- criterion 5


def criterion_5():
    c = Criterion()
    for name, tau in (("nil3", 1.0), ("su2", 1.0)):
        s = setup(name, tau)
        rep = check_sasakian(s.frame, s.conn, 2)
        c.close(f"{name} axiom 1", rep.axiom1_residual, 0.0, 1e-12)
        c.close(f"{name} axiom 2", rep.axiom2_residual, 0.0, 1e-12)
    s = setup("nil3", 2.0)
    c.true("nil3 tau=2 fails axiom 1", check_sasakian(s.frame, s.conn, 2).axiom1_residual > 1e-6)
    for name, beta, gamma in (("nil3", -2.0, 4.0), ("su2", 2.0, 0.0)):
        fit = eta_einstein_fit(setup(name, 1.0).curv.ricci, 2)
        c.close(f"{name} beta", fit.beta, beta, 1e-12)
        c.close(f"{name} gamma", fit.gamma, gamma, 1e-12)
        c.close(f"{name} beta + gamma = 2m", fit.beta + fit.gamma, 2 * fit.m, 1e-12)
    d1 = kahler_form_spinor(build_rep(2), standard_complex_structure(2))
    c.true("m=1 spectrum", d1.spectrum_ok() and d1.eigenvalues == (-1j, 1j) and d1.multiplicities == (1, 1))
    d2 = kahler_form_spinor(build_rep(4), standard_complex_structure(4))
    c.true("m=2 spectrum", d2.spectrum_ok() and d2.eigenvalues == (-2j, 0j, 2j) and d2.multiplicities == (1, 2, 1))
    rep3 = build_rep(3)
    rep_q = restrict_rep(rep3, 2)
    dec = kahler_form_spinor(rep_q, standard_complex_structure(2))
    c.close("xi = -i omega_2", rep3.gamma[2], -1j * omega2(rep_q), 1e-12)
    c.close("xi sign rule", xi_sign_rule(-1j * omega2(rep_q), dec), 0.0, 1e-12)
    return c


# ----------------------------------------------------------------- criterion 6


def criterion_6():
    c = Criterion()
    for name in ("nil3", "t3"):
        s = setup(name)
        r = three_d_equivalence(s.field, s.flow, transversal_connection(s.field, s.flow))
        c.true(f"{name} kernel nonempty", r.kernel_dim > 0)
        c.true(f"{name} unit solution of D Psi = b/2 Psi", r.solution_dim > 0 and r.field_residual <= GOLDEN_TOL)
        c.true(f"{name} equivalence", r.equivalent)
    s = setup("su2")
    r = three_d_equivalence(s.field, s.flow, transversal_connection(s.field, s.flow))
    c.true("su2 kernel empty", r.kernel_dim == 0)
    c.true("su2 residual nonzero", r.field_residual > 1e-3, f"{r.field_residual:.3g}")
    c.close("su2 residual value", r.field_residual, 1.0, GOLDEN_TOL)
    return c


# ----------------------------------------------------------------- criterion 7


def _quiet_main(argv):
    with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(io.StringIO()):
        return main(argv)


def criterion_7():
    c = Criterion()
    exe = shutil.which("spinflow")
    cmd = [exe] if exe else [sys.executable, "-m", "spinflow"]
    start = time.perf_counter()
    proc = subprocess.run(cmd + ["verify", "--manifold", "nil3", "--tau", "1"], capture_output=True, text=True)
    elapsed = time.perf_counter() - start
    c.true("exit 0", proc.returncode == 0, f"exit {proc.returncode}")
    c.true("under 1 s", elapsed < 1.0, f"{elapsed:.3f} s")

    entries = [catalog.get("nil3", t) for t in (0.5, 1.0, 2.0)] + [catalog.get(n) for n in ("sol3", "s1xs2", "su2", "t3")]
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "spec.json")
        for d in entries:
            with open(path, "w") as fh:
                json.dump(d, fh)
            c.true(f"{d['name']} baseline exit 0", _quiet_main(["verify", "--file", path]) == 0)
            for key in d["expected"]:
                bad = json.loads(json.dumps(d))
                bad["expected"][key] += 1e-6
                with open(path, "w") as fh:
                    json.dump(bad, fh)
                code = _quiet_main(["verify", "--file", path])
                c.true(f"{d['name']} corrupt {key}", code == 1, f"exit {code}")
    return c


CRITERIA = [
    (1, "Nil3 golden suite", criterion_1),
    (2, "Sol3 golden suite", criterion_2),
    (3, "S1 x S2 golden suite", criterion_3),
    (4, "property suites", criterion_4),
    (5, "Sasaki suite", criterion_5),
    (6, "three-dimensional equivalence suite", criterion_6),
    (7, "end-to-end CLI", criterion_7),
]


@pytest.mark.parametrize("number, title, fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn, capsys):
    crit = fn()
    with capsys.disabled():
        print("\n" + report(number, title, crit))
    assert crit.ok, crit.failures


if __name__ == "__main__":
    failed = 0
    for number, title, fn in CRITERIA:
        crit = fn()
        print(report(number, title, crit))
        failed += not crit.ok
    sys.exit(1 if failed else 0)
