"""Loading and emission of robot descriptions, states, and results.

All numeric output goes through :func:`json.dumps`/``repr``, which emit
the shortest decimal string that round-trips to the same IEEE-754
double — lossless and stable across platforms, so emitted files can be
compared byte-for-byte.

Schema errors (wrong shape, missing keys, wrong JSON types, unknown
enum values) raise :class:`~dacr.errors.SchemaError`; value-domain
problems inside a well-formed document surface as
:class:`~dacr.errors.DomainError` from the constructors, or as
violations from :func:`~dacr.model.validate_robot`.
"""

from __future__ import annotations

import json
from typing import IO, Any

import numpy as np

from .arc import ArcParameters, BackbonePolyline
from .chain import ChainClarke, ChainState
from .clarke import ClarkeCoordinates
from .errors import SchemaError
from .model import (
    Coupling,
    JointArrangement,
    RobotSpec,
    SegmentSpec,
    SegmentType,
    Violation,
    make_symmetric_arrangement,
)
from .segments import Convention, ExtendedClarkeState, JointState

# ---------------------------------------------------------------------------
# parsing


def _reject_constant(name: str) -> float:
    raise SchemaError(f"non-finite JSON constant {name!r} is not allowed")


def loads_strict(text: str) -> Any:
    """Parse JSON, rejecting the NaN/Infinity extensions."""
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from exc


def _load_json_file(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        return loads_strict(fh.read())


def _as_mapping(value: Any, where: str) -> dict:
    if not isinstance(value, dict):
        raise SchemaError(f"{where} must be a JSON object")
    return value


def _get(mapping: dict, key: str, where: str) -> Any:
    if key not in mapping:
        raise SchemaError(f"{where} is missing required key {key!r}")
    return mapping[key]


def _as_number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{where} must be a number")
    return float(value)


def _as_int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{where} must be an integer")
    return value


def _as_number_list(value: Any, where: str) -> list[float]:
    if not isinstance(value, list):
        raise SchemaError(f"{where} must be an array of numbers")
    return [_as_number(x, f"{where}[{i}]") for i, x in enumerate(value)]


def _parse_arrangement(joints: Any, where: str) -> JointArrangement:
    joints = _as_mapping(joints, where)
    if ("symmetric" in joints) == ("explicit" in joints):
        raise SchemaError(f"{where} must have exactly one of 'symmetric' or 'explicit'")
    if "symmetric" in joints:
        sym = _as_mapping(joints["symmetric"], f"{where}.symmetric")
        n = _as_int(_get(sym, "n", f"{where}.symmetric"), f"{where}.symmetric.n")
        d = _as_number(_get(sym, "d", f"{where}.symmetric"), f"{where}.symmetric.d")
        return make_symmetric_arrangement(n, d)
    explicit = joints["explicit"]
    if not isinstance(explicit, list):
        raise SchemaError(f"{where}.explicit must be an array")
    psi, d = [], []
    for i, entry in enumerate(explicit):
        entry = _as_mapping(entry, f"{where}.explicit[{i}]")
        psi.append(_as_number(_get(entry, "psi", f"{where}.explicit[{i}]"), f"{where}.explicit[{i}].psi"))
        d.append(_as_number(_get(entry, "d", f"{where}.explicit[{i}]"), f"{where}.explicit[{i}].d"))
    return JointArrangement(psi=np.array(psi), d=np.array(d))


def parse_robot(data: Any) -> RobotSpec:
    """Build a RobotSpec from decoded robot-description JSON.

    Expected shape::

        { "coupling": "independent" | "interdependent",   (default independent)
          "segments": [
            { "type": "type0"|"type1"|"type2"|"type3",    (default type0)
              "length": <number>,
              "joints": { "symmetric": {"n": <int>, "d": <number>} }
                      | { "explicit": [ {"psi": <rad>, "d": <number>}, ... ] } } ] }

    Raises:
        SchemaError: structural problems.
        DomainError: well-formed but out-of-domain values (propagated
            from the constructors, e.g. a symmetric arrangement with
            n < 3).
    """
    data = _as_mapping(data, "robot description")
    coupling_raw = data.get("coupling", "independent")
    try:
        coupling = Coupling(coupling_raw)
    except ValueError:
        raise SchemaError(f"unknown coupling {coupling_raw!r}") from None
    segments_raw = _get(data, "segments", "robot description")
    if not isinstance(segments_raw, list):
        raise SchemaError("'segments' must be an array")
    segments = []
    for j, seg in enumerate(segments_raw):
        where = f"segments[{j}]"
        seg = _as_mapping(seg, where)
        type_raw = seg.get("type", "type0")
        try:
            seg_type = SegmentType(type_raw)
        except ValueError:
            raise SchemaError(f"{where} has unknown type {type_raw!r}") from None
        length = _as_number(_get(seg, "length", where), f"{where}.length")
        arrangement = _parse_arrangement(_get(seg, "joints", where), f"{where}.joints")
        segments.append(SegmentSpec(arrangement=arrangement, length=length, seg_type=seg_type))
    return RobotSpec(segments=tuple(segments), coupling=coupling)


def load_robot(path: str) -> RobotSpec:
    """Load a robot description from a JSON file."""
    return parse_robot(_load_json_file(path))


def parse_joint_state(data: Any) -> JointState:
    """Build a JointState from decoded joint-state JSON.

    Expected shape: ``{"convention": "rho"|"q", "values": [...],
    "beta": <num, optional>, "alpha": <num, optional>}``.
    """
    data = _as_mapping(data, "joint state")
    convention_raw = _get(data, "convention", "joint state")
    try:
        convention = Convention(convention_raw)
    except ValueError:
        raise SchemaError(f"unknown convention {convention_raw!r}") from None
    values = _as_number_list(_get(data, "values", "joint state"), "values")
    beta = None if data.get("beta") is None else _as_number(data["beta"], "beta")
    alpha = None if data.get("alpha") is None else _as_number(data["alpha"], "alpha")
    return JointState(convention=convention, values=np.array(values), beta=beta, alpha=alpha)


def parse_chain_state(data: Any) -> ChainState:
    """Build a ChainState from decoded chain-state JSON.

    Expected shape: ``{"convention": "rho"|"q",
    "segments": [{"values": [...]}, ...]}``.
    """
    data = _as_mapping(data, "chain state")
    convention_raw = _get(data, "convention", "chain state")
    try:
        convention = Convention(convention_raw)
    except ValueError:
        raise SchemaError(f"unknown convention {convention_raw!r}") from None
    segments_raw = _get(data, "segments", "chain state")
    if not isinstance(segments_raw, list):
        raise SchemaError("'segments' must be an array")
    vectors = []
    for i, seg in enumerate(segments_raw):
        seg = _as_mapping(seg, f"segments[{i}]")
        vectors.append(np.array(_as_number_list(_get(seg, "values", f"segments[{i}]"), f"segments[{i}].values")))
    return ChainState(convention=convention, per_segment=tuple(vectors))


def load_state(path: str) -> JointState | ChainState:
    """Load a state file, dispatching on shape.

    A document with a ``segments`` key is a chain state; one with a
    ``values`` key is a single-segment joint state.
    """
    data = _as_mapping(_load_json_file(path), "state")
    if "segments" in data:
        return parse_chain_state(data)
    return parse_joint_state(data)


def _parse_cc(value: Any, where: str) -> ClarkeCoordinates:
    pair = _as_number_list(value, where)
    if len(pair) != 2:
        raise SchemaError(f"{where} must hold exactly two numbers")
    return ClarkeCoordinates(pair[0], pair[1])


def parse_clarke_state(data: Any) -> ExtendedClarkeState:
    """Build an ExtendedClarkeState from decoded JSON.

    Expected shape: ``{"cc": [<re>, <im>], "beta": <num, optional>,
    "alpha": <num, optional>}``.
    """
    data = _as_mapping(data, "Clarke state")
    cc = _parse_cc(_get(data, "cc", "Clarke state"), "cc")
    beta = None if data.get("beta") is None else _as_number(data["beta"], "beta")
    alpha = None if data.get("alpha") is None else _as_number(data["alpha"], "alpha")
    return ExtendedClarkeState(cc=cc, beta=beta, alpha=alpha)


def parse_chain_clarke(data: Any) -> ChainClarke:
    """Build a ChainClarke from decoded JSON.

    Expected shape: ``{"segments": [{"cc": [<re>, <im>]}, ...]}``.
    """
    data = _as_mapping(data, "chain Clarke state")
    segments_raw = _get(data, "segments", "chain Clarke state")
    if not isinstance(segments_raw, list):
        raise SchemaError("'segments' must be an array")
    ccs = []
    for i, seg in enumerate(segments_raw):
        seg = _as_mapping(seg, f"segments[{i}]")
        ccs.append(_parse_cc(_get(seg, "cc", f"segments[{i}]"), f"segments[{i}].cc"))
    return ChainClarke(per_segment=tuple(ccs))


def load_clarke(path: str) -> ExtendedClarkeState | ChainClarke:
    """Load a Clarke-side state file, dispatching on shape."""
    data = _as_mapping(_load_json_file(path), "Clarke state")
    if "segments" in data:
        return parse_chain_clarke(data)
    return parse_clarke_state(data)


def parse_arc(data: Any) -> ArcParameters:
    """Build ArcParameters from decoded JSON.

    Expected shape: ``{"kappa": <num>, "theta": <num>, "l": <num>}``
    (theta optional, default 0).
    """
    data = _as_mapping(data, "arc parameters")
    kappa = _as_number(_get(data, "kappa", "arc parameters"), "kappa")
    theta = _as_number(data.get("theta", 0.0), "theta")
    l = _as_number(_get(data, "l", "arc parameters"), "l")
    return ArcParameters(kappa=kappa, theta=theta, l=l)


def load_arc(path: str) -> ArcParameters:
    """Load arc parameters from a JSON file."""
    return parse_arc(_load_json_file(path))


# ---------------------------------------------------------------------------
# emission


def matrix_rows(matrix: np.ndarray) -> list[list[float]]:
    """Row-major nested lists of Python floats."""
    return [[float(x) for x in row] for row in np.asarray(matrix, dtype=float)]


def clarke_state_dict(state: ExtendedClarkeState) -> dict:
    out: dict[str, Any] = {"cc": [state.cc.rho_re, state.cc.rho_im]}
    if state.beta is not None:
        out["beta"] = state.beta
    if state.alpha is not None:
        out["alpha"] = state.alpha
    return out


def joint_state_dict(state: JointState) -> dict:
    out: dict[str, Any] = {
        "convention": state.convention.value,
        "values": [float(x) for x in state.values],
    }
    if state.beta is not None:
        out["beta"] = state.beta
    if state.alpha is not None:
        out["alpha"] = state.alpha
    return out


def chain_clarke_dict(cc: ChainClarke) -> dict:
    return {"segments": [{"cc": [c.rho_re, c.rho_im]} for c in cc.per_segment]}


def chain_state_dict(state: ChainState) -> dict:
    return {
        "convention": state.convention.value,
        "segments": [{"values": [float(x) for x in v]} for v in state.per_segment],
    }


def arc_dict(arc: ArcParameters) -> dict:
    return {
        "kappa": arc.kappa,
        "theta": arc.theta,
        "l": arc.l,
        "phi": arc.phi,
        "theta_defined": arc.theta_defined,
    }


def violations_dict(violations: list[Violation]) -> dict:
    return {
        "valid": not violations,
        "violations": [
            {"segment": v.segment, "field": v.field, "message": v.message}
            for v in violations
        ],
    }


def dump_json(obj: Any, stream: IO[str]) -> None:
    """Write an object as two-space-indented JSON with a trailing newline."""
    stream.write(json.dumps(obj, indent=2))
    stream.write("\n")


def write_matrix_csv(name: str, matrix: np.ndarray, stream: IO[str]) -> None:
    """Write one matrix as a name line followed by comma-separated rows."""
    stream.write(name + "\n")
    for row in matrix_rows(matrix):
        stream.write(",".join(repr(x) for x in row) + "\n")


def write_polyline_csv(polyline: BackbonePolyline, stream: IO[str]) -> None:
    """Write a sampled backbone as ``s,x,y,z`` rows, full precision."""
    stream.write("s,x,y,z\n")
    for s, (x, y, z) in zip(polyline.s, polyline.points):
        stream.write(f"{float(s)!r},{float(x)!r},{float(y)!r},{float(z)!r}\n")
