"""Parsing and validation of JSON manifold specifications."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .catalog import ALL_GROUPS
from .clifford import CliffordElement
from .errors import DimensionError, InvalidFrameError, SpecError
from .frame_geometry import FrameManifold, validate_frame

PARSE, SCHEMA, SEMANTIC = "parse", "schema", "semantic"


class SpecParseError(SpecError):
    kind = PARSE


class SpecSchemaError(SpecError):
    kind = SCHEMA


class SpecSemanticError(SpecError):
    kind = SEMANTIC


@dataclass(frozen=True)
class ManifoldSpec:
    name: str
    dim: int
    structure_constants: tuple | None  # (i, j, k, value), 1-based; None in prescription mode
    flow_index: int | None  # 1-based
    components: np.ndarray
    derivatives: object  # "spin_connection" or tuple of CliffordElement
    overrides: dict = field(default_factory=dict)
    checks: tuple = tuple(ALL_GROUPS)
    expected: dict = field(default_factory=dict)
    parameters: dict = field(default_factory=dict)
    frame: FrameManifold | None = None

    @property
    def prescription_mode(self) -> bool:
        return self.structure_constants is None

    @property
    def xi_index(self) -> int | None:
        """0-based flow index."""
        return None if self.flow_index is None else self.flow_index - 1


def _require(d: dict, key: str, where: str):
    if key not in d:
        raise SpecSchemaError(f"missing field '{where}{key}'")
    return d[key]


def _number(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise SpecSchemaError(f"field '{where}' must be a number, got {x!r}")
    return float(x)


def _integer(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise SpecSchemaError(f"field '{where}' must be an integer, got {x!r}")
    return x


def _matrix(x, n: int, where: str) -> np.ndarray:
    if not isinstance(x, list) or len(x) != n or any(not isinstance(r, list) or len(r) != n for r in x):
        raise SpecSchemaError(f"field '{where}' must be a {n}x{n} matrix")
    return np.array([[_number(v, f"{where}[{a}][{b}]") for b, v in enumerate(r)] for a, r in enumerate(x)])


def _complex(x, where: str) -> complex:
    if not isinstance(x, list) or len(x) != 2:
        raise SpecSchemaError(f"field '{where}' must be a [re, im] pair")
    return complex(_number(x[0], where + "[0]"), _number(x[1], where + "[1]"))


def _structure_constants(raw, n: int) -> tuple:
    if not isinstance(raw, list):
        raise SpecSchemaError("field 'structure_constants' must be a list")
    out = []
    for idx, entry in enumerate(raw):
        where = f"structure_constants[{idx}]"
        if isinstance(entry, dict):
            vals = [_require(entry, key, where + ".") for key in ("i", "j", "k", "value")]
        elif isinstance(entry, list) and len(entry) == 4:
            vals = entry
        else:
            raise SpecSchemaError(f"field '{where}' must be an object {{i, j, k, value}}")
        i, j, k = (_integer(v, f"{where}.{key}") for v, key in zip(vals[:3], "ijk"))
        value = _number(vals[3], f"{where}.value")
        for v in (i, j, k):
            if not 1 <= v <= n:
                raise SpecSemanticError(f"index {v} in '{where}' outside 1..{n}")
        if i >= j:
            raise SpecSchemaError(f"'{where}' must list i < j (got i={i}, j={j})")
        out.append((i, j, k, value))
    return tuple(out)


def _prescription(raw, n: int, where: str) -> CliffordElement:
    if raw is None or raw == 0:
        return CliffordElement(n)
    if not isinstance(raw, dict):
        raise SpecSchemaError(f"field '{where}' must be an object with scalar/vector/bivector")
    unknown = set(raw) - {"scalar", "vector", "bivector"}
    if unknown:
        raise SpecSchemaError(f"unknown key(s) {sorted(unknown)} in '{where}'")
    scalar = _complex(raw["scalar"], where + ".scalar") if "scalar" in raw else 0.0
    vector = np.zeros(n)
    if "vector" in raw:
        v = raw["vector"]
        if not isinstance(v, list) or len(v) != n:
            raise SpecSchemaError(f"field '{where}.vector' must have length {n}")
        vector = np.array([_number(x, f"{where}.vector[{a}]") for a, x in enumerate(v)])
    biv = np.zeros((n, n))
    for idx, entry in enumerate(raw.get("bivector", [])):
        w = f"{where}.bivector[{idx}]"
        if not isinstance(entry, list) or len(entry) != 3:
            raise SpecSchemaError(f"field '{w}' must be [j, k, value]")
        j, k = _integer(entry[0], w), _integer(entry[1], w)
        if not (1 <= j < k <= n):
            raise SpecSchemaError(f"'{w}' needs 1 <= j < k <= {n}")
        biv[j - 1, k - 1] += _number(entry[2], w)
    return CliffordElement(n, scalar, vector, biv)


def spec_from_dict(d) -> ManifoldSpec:
    if not isinstance(d, dict):
        raise SpecSchemaError("top-level JSON value must be an object")
    name = _require(d, "name", "")
    if not isinstance(name, str):
        raise SpecSchemaError("field 'name' must be a string")
    n = _integer(_require(d, "dim", ""), "dim")
    if not 1 <= n <= 10:
        raise SpecSemanticError(f"dimension {n} outside supported range 1..10")

    overrides = d.get("overrides", {}) or {}
    if not isinstance(overrides, dict):
        raise SpecSchemaError("field 'overrides' must be an object")
    ov = {}
    if "scal" in overrides:
        ov["scal"] = _number(overrides["scal"], "overrides.scal")
    if "ric" in overrides:
        ov["ric"] = _matrix(overrides["ric"], n, "overrides.ric")
    if "h" in overrides:
        ov["h"] = _matrix(overrides["h"], n, "overrides.h")

    sc = None
    frame = None
    if "structure_constants" in d:
        sc = _structure_constants(d["structure_constants"], n)
        try:
            frame = validate_frame(n, sc, name)
        except (InvalidFrameError, DimensionError) as exc:
            raise SpecSemanticError(str(exc)) from exc
    elif "scal" not in ov:
        raise SpecSchemaError("need either 'structure_constants' or 'overrides.scal'")

    flow_index = d.get("flow_index")
    if flow_index is not None:
        flow_index = _integer(flow_index, "flow_index")
        if not 1 <= flow_index <= n:
            raise SpecSemanticError(f"flow_index {flow_index} outside 1..{n}")

    spinor = _require(d, "spinor", "")
    if not isinstance(spinor, dict):
        raise SpecSchemaError("field 'spinor' must be an object")
    comps = _require(spinor, "components", "spinor.")
    big_n = 2 ** (n // 2)
    if not isinstance(comps, list) or len(comps) != big_n:
        raise SpecSchemaError(f"field 'spinor.components' must list {big_n} [re, im] pairs")
    psi = np.array([_complex(c, f"spinor.components[{a}]") for a, c in enumerate(comps)])
    if not np.any(psi):
        raise SpecSemanticError("spinor is zero")
    deriv = _require(spinor, "derivatives", "spinor.")
    if deriv == "spin_connection":
        if frame is None:
            raise SpecSemanticError("'spin_connection' derivatives need structure_constants")
    elif isinstance(deriv, list):
        if len(deriv) != n:
            raise SpecSchemaError(f"field 'spinor.derivatives' must list {n} prescriptions")
        deriv = tuple(_prescription(p, n, f"spinor.derivatives[{a}]") for a, p in enumerate(deriv))
    else:
        raise SpecSchemaError("field 'spinor.derivatives' must be \"spin_connection\" or a list")

    checks = d.get("checks", list(ALL_GROUPS))
    if not isinstance(checks, list) or any(c not in ALL_GROUPS for c in checks):
        raise SpecSchemaError(f"field 'checks' must be a list drawn from {ALL_GROUPS}")

    expected = d.get("expected", {}) or {}
    if not isinstance(expected, dict):
        raise SpecSchemaError("field 'expected' must be an object")
    expected = {str(k): _number(v, f"expected.{k}") for k, v in expected.items()}

    params = d.get("parameters", {}) or {}
    return ManifoldSpec(
        name=name,
        dim=n,
        structure_constants=sc,
        flow_index=flow_index,
        components=psi,
        derivatives=deriv,
        overrides=ov,
        checks=tuple(checks),
        expected=expected,
        parameters=dict(params),
        frame=frame,
    )


def load_spec(text: str) -> ManifoldSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"JSON parse error at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return spec_from_dict(data)


__all__ = [
    "ManifoldSpec",
    "SpecParseError",
    "SpecSchemaError",
    "SpecSemanticError",
    "load_spec",
    "spec_from_dict",
]
