"""Built-in manifold specifications with their reference values.

Every entry is a plain JSON-compatible dict in the same schema that
``spec_io.load_spec`` accepts, so catalog entries and user files share one
code path.  Indices are 1-based; complex numbers are ``[re, im]`` pairs.
The ``expected`` map holds hand-derived reference values keyed by
observable id.
"""
from __future__ import annotations

import json

ALL_GROUPS = ["geometry", "spinor", "emt", "bounds", "flow", "sasaki"]

_SPINOR_2 = [[1.0, 0.0], [0.0, 0.0]]


def nil3(tau: float = 1.0) -> dict:
    t = float(tau)
    if t == 0.0:
        raise ValueError("tau must be nonzero")
    lam_sq = t * t / 4.0
    expected = {
        "geometry.scal": -2 * t * t,
        "geometry.christoffel[1,2,3]": t,
        "geometry.christoffel[2,3,1]": t,
        "geometry.christoffel[1,3,2]": -t,
        "geometry.christoffel[2,1,3]": -t,
        "spinor.dirac_eigenvalue": -t / 2,
        "spinor.dirac_eigen_residual": 0.0,
        "spinor.lambda_sq": lam_sq,
        "emt.T_norm_sq": 3 * t * t / 4,
        "emt.Q_norm_sq": 0.0,
        "bounds.main_rhs": lam_sq,
        "bounds.main_equality": 1.0,
        "flow.riemannian": 1.0,
        "flow.minimal": 1.0,
        "flow.b": -t,
        "flow.kernel_dim": 2.0,
        "flow.Q_flow[1,2]": t / 2,
        "flow.scal_transversal_direct": 0.0,
        "flow.scal_transversal_oneill": 0.0,
        "flow.three_d_solution_dim": 2.0,
    }
    for a in range(3):
        for b in range(3):
            ric = 0.0
            if a == b:
                ric = 2 * t * t if a == 2 else -2 * t * t
            expected[f"geometry.ricci[{a + 1},{b + 1}]"] = ric
            tt = 0.0
            if a == b:
                tt = t / 2 if a == 2 else -t / 2
            expected[f"emt.T[{a + 1},{b + 1}]"] = tt
            expected[f"emt.Q[{a + 1},{b + 1}]"] = 0.0
    if abs(t) == 1.0:
        expected.update({"sasaki.is_sasakian": 1.0, "sasaki.beta": -2.0, "sasaki.gamma": 4.0})
    else:
        expected["sasaki.axiom1_holds"] = 0.0
    return {
        "name": "nil3",
        "dim": 3,
        "parameters": {"tau": t},
        "structure_constants": [{"i": 1, "j": 2, "k": 3, "value": 2 * t}],
        "flow_index": 3,
        "spinor": {"components": _SPINOR_2, "derivatives": "spin_connection"},
        "checks": list(ALL_GROUPS),
        "expected": expected,
    }


def sol3() -> dict:
    expected = {
        "geometry.scal": -2.0,
        "geometry.christoffel[1,1,3]": -1.0,
        "geometry.christoffel[1,3,1]": 1.0,
        "geometry.christoffel[2,2,3]": 1.0,
        "geometry.christoffel[2,3,2]": -1.0,
        "geometry.lie_xi[1,1]": 2.0,
        "spinor.dirac_eigenvalue": 0.0,
        "spinor.dirac_norm": 0.0,
        "spinor.lambda_sq": 0.0,
        "emt.T[1,1]": 0.0,
        "emt.T[2,2]": 0.0,
        "emt.T[3,3]": 0.0,
        "emt.T[1,2]": -0.5,
        "emt.T_norm_sq": 0.5,
        "emt.Q_norm_sq": 0.0,
        "bounds.main_rhs": 0.0,
        "bounds.main_equality": 1.0,
        "flow.riemannian": 0.0,
        "flow.minimal": 1.0,
        "flow.T_flow[1,1]": -0.5,
        "flow.Q_flow[1,2]": 0.0,
    }
    return {
        "name": "sol3",
        "dim": 3,
        # [e_1, e_3] = e_1, [e_2, e_3] = -e_2
        "structure_constants": [
            {"i": 1, "j": 3, "k": 1, "value": 1.0},
            {"i": 2, "j": 3, "k": 2, "value": -1.0},
        ],
        "flow_index": 3,
        "spinor": {"components": _SPINOR_2, "derivatives": "spin_connection"},
        "checks": list(ALL_GROUPS),
        "expected": expected,
    }


def s1xs2() -> dict:
    # frame order (xi, e_1, e_2); prescriptions nabla_xi = 0, nabla_1 = 1/2 e_2., nabla_2 = -1/2 e_1.
    expected = {
        "spinor.dirac_xi_residual": 0.0,
        "spinor.lambda_sq": 1.0,
        "emt.T_norm_sq": 0.0,
        "emt.Q_norm_sq": 0.5,
        "emt.Q[2,3]": -0.5,
        "bounds.main_rhs": 1.0,
        "bounds.main_equality": 1.0,
        "bounds.friedrich_rhs": 0.75,
        "bounds.friedrich_slack": 0.25,
        "flow.riemannian": 1.0,
        "flow.minimal": 1.0,
    }
    for a in range(3):
        for b in range(3):
            expected[f"emt.T[{a + 1},{b + 1}]"] = 0.0
    return {
        "name": "s1xs2",
        "dim": 3,
        "flow_index": 1,
        "spinor": {
            "components": _SPINOR_2,
            "derivatives": [
                {},
                {"vector": [0.0, 0.0, 0.5]},
                {"vector": [0.0, -0.5, 0.0]},
            ],
        },
        "overrides": {
            "scal": 2.0,
            "ric": [[0.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            "h": [[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]],
        },
        "checks": ["spinor", "emt", "bounds", "flow"],
        "expected": expected,
    }


def su2() -> dict:
    expected = {
        "geometry.scal": 6.0,
        "spinor.dirac_eigenvalue": -1.5,
        "spinor.lambda_sq": 2.25,
        "bounds.friedrich_rhs": 2.25,
        "flow.riemannian": 1.0,
        "flow.minimal": 1.0,
        "flow.kernel_dim": 0.0,
        "flow.scal_transversal_direct": 8.0,
        "flow.three_d_solution_dim": 0.0,
        "sasaki.is_sasakian": 1.0,
        "sasaki.beta": 2.0,
        "sasaki.gamma": 0.0,
    }
    for a in range(3):
        for b in range(3):
            expected[f"geometry.ricci[{a + 1},{b + 1}]"] = 2.0 if a == b else 0.0
    return {
        "name": "su2",
        "dim": 3,
        "structure_constants": [
            {"i": 1, "j": 2, "k": 3, "value": 2.0},
            {"i": 2, "j": 3, "k": 1, "value": 2.0},
            {"i": 1, "j": 3, "k": 2, "value": -2.0},
        ],
        "flow_index": 3,
        "spinor": {"components": _SPINOR_2, "derivatives": "spin_connection"},
        "checks": list(ALL_GROUPS),
        "expected": expected,
    }


def t3() -> dict:
    expected = {
        "geometry.scal": 0.0,
        "spinor.dirac_norm": 0.0,
        "spinor.lambda_sq": 0.0,
        "emt.T_norm_sq": 0.0,
        "emt.Q_norm_sq": 0.0,
        "flow.riemannian": 1.0,
        "flow.minimal": 1.0,
        "flow.b": 0.0,
        "flow.kernel_dim": 2.0,
        "flow.three_d_solution_dim": 2.0,
    }
    return {
        "name": "t3",
        "dim": 3,
        "structure_constants": [],
        "flow_index": 3,
        "spinor": {"components": _SPINOR_2, "derivatives": "spin_connection"},
        "checks": list(ALL_GROUPS),
        "expected": expected,
    }


CATALOG = {"nil3": nil3, "sol3": sol3, "s1xs2": s1xs2, "su2": su2, "t3": t3}

DESCRIPTIONS = {
    "nil3": "Heisenberg group, [e1,e2] = 2 tau e3, flow along e3",
    "sol3": "solvable group, flow along e3 (minimal, not Riemannian)",
    "s1xs2": "product S^1 x S^2 in prescription mode, flow along the circle",
    "su2": "round 3-sphere as SU(2), Hopf flow along e3",
    "t3": "flat torus, flow along e3",
}


def names() -> list:
    return list(CATALOG)


def get(name: str, tau: float = 1.0) -> dict:
    if name not in CATALOG:
        raise KeyError(f"unknown catalog manifold {name!r}; choose from {', '.join(CATALOG)}")
    return CATALOG[name](tau) if name == "nil3" else CATALOG[name]()


def to_json(name: str, tau: float = 1.0) -> str:
    return json.dumps(get(name, tau), indent=2)


__all__ = ["ALL_GROUPS", "CATALOG", "DESCRIPTIONS", "names", "get", "to_json", "nil3", "sol3", "s1xs2", "su2", "t3"]
