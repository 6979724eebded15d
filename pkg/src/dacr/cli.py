"""Command-line front end.

Loads robot descriptions and joint states from JSON, runs the library
operations, and emits results as JSON (or CSV for matrices and sampled
backbones). Exit codes are a stable contract:

    0  success
    1  input is well-formed but invalid (failed validation, off-manifold
       joint lengths, out-of-domain values)
    2  unreadable input or schema violation
    3  degenerate joint arrangement
    4  dimension or convention mismatch
    5  arrangement lacks the offset-filtering property required by the
       requested operation

Every command is deterministic; identical inputs produce byte-identical
outputs.
"""

from __future__ import annotations

import argparse
import sys
from typing import IO, Callable

from . import io
from .arc import arc_to_clarke, clarke_to_arc, sample_backbone
from .chain import (
    ChainClarke,
    ChainState,
    independent_forward,
    interdependent_accumulate,
    interdependent_forward,
    interdependent_inverse,
)
from .clarke import (
    ClarkeCoordinates,
    ClarkePair,
    _as_vector,
    build_pair,
    forward,
    inverse,
    project,
    validate_displacement,
)
from .errors import (
    ArrangementMismatch,
    ConventionMismatch,
    DacrError,
    DegenerateArrangement,
    DimensionMismatch,
    DomainError,
    FilterPropertyUnavailable,
    OffManifold,
    SchemaError,
    UnsupportedArrangement,
)
from .model import Coupling, RobotSpec, SegmentSpec, SegmentType, validate_robot
from .segments import (
    Convention,
    ExtendedClarkeState,
    JointState,
    common_radius,
    helical_offset,
    recover_length,
    type1_forward,
    type1_forward_from_q,
    type1_inverse_to_q,
    type2_forward,
    type3_forward,
    type3_forward_from_q,
)

DEFAULT_VALIDATE_TOL = 1e-9

# Most-derived classes first; the first match decides the exit code.
_EXIT_CODES: tuple[tuple[type[Exception], int], ...] = (
    (SchemaError, 2),
    (DegenerateArrangement, 3),
    (DimensionMismatch, 4),
    (ConventionMismatch, 4),
    (ArrangementMismatch, 4),
    (UnsupportedArrangement, 4),
    (FilterPropertyUnavailable, 5),
    (OffManifold, 1),
    (DomainError, 1),
)


class _InvalidInput(Exception):
    """Well-formed input that failed validation; details already on stderr."""


# ---------------------------------------------------------------------------
# shared plumbing


def _emit(args: argparse.Namespace, write: Callable[[IO[str]], None]) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            write(fh)
    else:
        write(sys.stdout)


def _emit_json(args: argparse.Namespace, obj) -> None:
    _emit(args, lambda fh: io.dump_json(obj, fh))


def _load_robot(args: argparse.Namespace) -> RobotSpec:
    """Load the robot description, refusing descriptions with violations."""
    robot = io.load_robot(args.robot)
    violations = validate_robot(robot)
    if violations:
        for v in violations:
            where = "robot" if v.segment is None else f"segment {v.segment}"
            print(f"invalid robot: {where}: {v.field}: {v.message}", file=sys.stderr)
        raise _InvalidInput()
    return robot


def _segment_pair(robot: RobotSpec, index: int) -> tuple[SegmentSpec, ClarkePair]:
    if not (0 <= index < len(robot.segments)):
        raise DimensionMismatch(
            f"segment index {index} out of range for {len(robot.segments)} segment(s)"
        )
    seg = robot.segments[index]
    return seg, build_pair(seg.arrangement)


def _require_filter(pair: ClarkePair) -> None:
    if not pair.filter_ok:
        raise FilterPropertyUnavailable(
            "this operation needs an arrangement that filters constant offsets"
        )


def _with_alpha_override(state: JointState, args: argparse.Namespace) -> JointState:
    if getattr(args, "alpha", None) is None:
        return state
    return JointState(
        convention=state.convention,
        values=state.values,
        beta=state.beta,
        alpha=args.alpha,
    )


def _require_chain(state) -> ChainState:
    if not isinstance(state, ChainState):
        raise SchemaError("chain commands need a chain-shaped state with 'segments'")
    return state


# ---------------------------------------------------------------------------
# per-segment dispatch


def _forward_segment(
    seg: SegmentSpec,
    pair: ClarkePair,
    state: JointState,
    tol: float | None,
    l_hint: float | None,
) -> ExtendedClarkeState:
    """Dispatch the forward map on segment type and state convention."""
    t = seg.seg_type
    if state.beta is not None and not (t is SegmentType.TYPE1 or t is SegmentType.TYPE3):
        raise ConventionMismatch(f"{t.value} segment takes no beta")
    if state.alpha is not None and not t.has_twist_joint:
        raise ConventionMismatch(f"{t.value} segment takes no alpha")
    if t.has_twist_joint and state.alpha is None:
        raise ConventionMismatch(f"{t.value} segment needs alpha (in the state or via --alpha)")

    if t is SegmentType.TYPE0 or t is SegmentType.TYPE2:
        alpha = state.alpha  # None for type0, required for type2 (checked above)
        if state.convention is Convention.RHO:
            if t is SegmentType.TYPE2:
                return type2_forward(pair, state.values, alpha)
            return ExtendedClarkeState(cc=forward(pair, state.values))
        # q convention: the fixed length (plus any twist-induced offset)
        # is an additive constant, so -mp @ q needs the filter property.
        _require_filter(pair)
        q = _as_vector(state.values, pair.n, "q")
        cc = -(pair.mp @ q)
        return ExtendedClarkeState(
            cc=ClarkeCoordinates(float(cc[0]), float(cc[1])), alpha=alpha
        )

    if t is SegmentType.TYPE1:
        if state.convention is Convention.RHO:
            if state.beta is None:
                raise ConventionMismatch("type1 forward on rho needs beta")
            return type1_forward(pair, state.values, state.beta)
        if state.beta is not None:
            raise ConventionMismatch("q already encodes the length; drop beta or use rho")
        return type1_forward_from_q(pair, state.values, tol=tol)

    # TYPE3
    if state.convention is Convention.RHO:
        if state.beta is None:
            raise ConventionMismatch("type3 forward on rho needs beta")
        cc = forward(pair, state.values)
        return ExtendedClarkeState(cc=cc, beta=state.beta, alpha=state.alpha)
    if state.beta is not None:
        return type3_forward(pair, state.values, state.beta, state.alpha)
    d = common_radius(pair.arrangement)
    hint = l_hint if l_hint is not None else seg.length
    return type3_forward_from_q(pair, state.values, state.alpha, d, hint, tol=tol)


def _inverse_segment(
    seg: SegmentSpec, pair: ClarkePair, state: ExtendedClarkeState
) -> JointState:
    """Dispatch the inverse map on segment type."""
    t = seg.seg_type
    if state.beta is not None and not t.has_length_joint:
        raise ConventionMismatch(f"{t.value} segment takes no beta")
    if state.alpha is not None and not t.has_twist_joint:
        raise ConventionMismatch(f"{t.value} segment takes no alpha")
    if t.has_twist_joint and state.alpha is None:
        raise ConventionMismatch(f"{t.value} segment needs alpha (in the state or via --alpha)")
    if t.has_length_joint and state.beta is None:
        raise ConventionMismatch(f"{t.value} inverse needs beta")

    if t is SegmentType.TYPE0:
        return JointState(convention=Convention.RHO, values=inverse(pair, state.cc))
    if t is SegmentType.TYPE1:
        return JointState(convention=Convention.Q, values=type1_inverse_to_q(pair, state))
    if t is SegmentType.TYPE2:
        return JointState(
            convention=Convention.RHO,
            values=inverse(pair, state.cc),
            alpha=state.alpha,
        )
    # TYPE3: q = (beta + helix offset) * ones - rho
    d = common_radius(pair.arrangement)
    offset = helical_offset(state.alpha, d, state.beta)
    q = -inverse(pair, state.cc) + (state.beta + offset)
    return JointState(
        convention=Convention.Q, values=q, beta=state.beta, alpha=state.alpha
    )


# ---------------------------------------------------------------------------
# chain dispatch


def _chain_forward(robot: RobotSpec, state: ChainState) -> ChainClarke:
    if robot.coupling is Coupling.INTERDEPENDENT:
        return interdependent_forward(robot, state)
    return independent_forward(robot, state)


def _chain_inverse(robot: RobotSpec, cc: ChainClarke) -> ChainState:
    if robot.coupling is Coupling.INTERDEPENDENT:
        return interdependent_inverse(robot, cc)
    if len(cc.per_segment) != len(robot.segments):
        raise DimensionMismatch(
            f"state has {len(cc.per_segment)} segments, robot has {len(robot.segments)}"
        )
    vectors = tuple(
        inverse(build_pair(seg.arrangement), c)
        for seg, c in zip(robot.segments, cc.per_segment)
    )
    return ChainState(convention=Convention.RHO, per_segment=vectors)


# ---------------------------------------------------------------------------
# command handlers


def _cmd_matrix(args: argparse.Namespace) -> int:
    robot = _load_robot(args)
    _, pair = _segment_pair(robot, args.segment)
    if args.format == "csv":
        def write(fh: IO[str]) -> None:
            io.write_matrix_csv("mp", pair.mp, fh)
            io.write_matrix_csv("mp_inv", pair.mp_inv, fh)
            io.write_matrix_csv("projector", pair.projector, fh)
            fh.write(f"filter_ok\n{'true' if pair.filter_ok else 'false'}\n")

        _emit(args, write)
        return 0
    _emit_json(
        args,
        {
            "mp": io.matrix_rows(pair.mp),
            "mp_inv": io.matrix_rows(pair.mp_inv),
            "projector": io.matrix_rows(pair.projector),
            "filter_ok": pair.filter_ok,
        },
    )
    return 0


def _cmd_forward(args: argparse.Namespace) -> int:
    robot = _load_robot(args)
    state = io.load_state(args.input)
    if isinstance(state, ChainState):
        _emit_json(args, io.chain_clarke_dict(_chain_forward(robot, state)))
        return 0
    seg, pair = _segment_pair(robot, args.segment)
    state = _with_alpha_override(state, args)
    result = _forward_segment(seg, pair, state, args.tol, args.l)
    _emit_json(args, io.clarke_state_dict(result))
    return 0


def _cmd_inverse(args: argparse.Namespace) -> int:
    robot = _load_robot(args)
    state = io.load_clarke(args.input)
    if isinstance(state, ChainClarke):
        _emit_json(args, io.chain_state_dict(_chain_inverse(robot, state)))
        return 0
    seg, pair = _segment_pair(robot, args.segment)
    if args.alpha is not None:
        state = ExtendedClarkeState(cc=state.cc, beta=state.beta, alpha=args.alpha)
    _emit_json(args, io.joint_state_dict(_inverse_segment(seg, pair, state)))
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    robot = io.load_robot(args.robot)
    violations = validate_robot(robot)
    if args.input is None:
        _emit_json(args, io.violations_dict(violations))
        return 0 if not violations else 1
    if violations:
        for v in violations:
            where = "robot" if v.segment is None else f"segment {v.segment}"
            print(f"invalid robot: {where}: {v.field}: {v.message}", file=sys.stderr)
        return 1
    tol = args.tol if args.tol is not None else DEFAULT_VALIDATE_TOL
    state = io.load_state(args.input)
    if isinstance(state, ChainState):
        if state.convention is not Convention.RHO:
            raise ConventionMismatch("displacement validation applies to rho states")
        if len(state.per_segment) != len(robot.segments):
            raise DimensionMismatch(
                f"state has {len(state.per_segment)} segments, "
                f"robot has {len(robot.segments)}"
            )
        checks = [
            validate_displacement(build_pair(seg.arrangement), values, tol)
            for seg, values in zip(robot.segments, state.per_segment)
        ]
        _emit_json(
            args,
            {
                "valid": all(c.valid for c in checks),
                "segments": [
                    {"valid": c.valid, "residual_norm": c.residual_norm} for c in checks
                ],
            },
        )
        return 0 if all(c.valid for c in checks) else 1
    if state.convention is not Convention.RHO:
        raise ConventionMismatch("displacement validation applies to rho states")
    _, pair = _segment_pair(robot, args.segment)
    check = validate_displacement(pair, state.values, tol)
    _emit_json(args, {"valid": check.valid, "residual_norm": check.residual_norm})
    return 0 if check.valid else 1


def _cmd_project(args: argparse.Namespace) -> int:
    robot = _load_robot(args)
    state = io.load_state(args.input)
    if isinstance(state, ChainState) or state.convention is not Convention.RHO:
        raise ConventionMismatch("projection applies to a single rho state")
    _, pair = _segment_pair(robot, args.segment)
    projected = project(pair, state.values)
    _emit_json(
        args,
        io.joint_state_dict(
            JointState(convention=Convention.RHO, values=projected)
        ),
    )
    return 0


def _cmd_recover_length(args: argparse.Namespace) -> int:
    robot = _load_robot(args)
    state = io.load_state(args.input)
    if isinstance(state, ChainState) or state.convention is not Convention.Q:
        raise ConventionMismatch("length recovery applies to a single q state")
    _, pair = _segment_pair(robot, args.segment)
    _emit_json(args, {"length": recover_length(pair, state.values, tol=args.tol)})
    return 0


def _cmd_arc_to_clarke(args: argparse.Namespace) -> int:
    arc = io.load_arc(args.input)
    cc = arc_to_clarke(arc, args.d)
    _emit_json(args, {"cc": [cc.rho_re, cc.rho_im]})
    return 0


def _cmd_arc_from_clarke(args: argparse.Namespace) -> int:
    state = io.load_clarke(args.input)
    if isinstance(state, ChainClarke):
        raise SchemaError("arc from-clarke takes a single Clarke state, not a chain")
    arc = clarke_to_arc(state.cc, args.d, args.l)
    _emit_json(args, io.arc_dict(arc))
    return 0


def _cmd_sample(args: argparse.Namespace) -> int:
    arc = io.load_arc(args.input)
    polyline = sample_backbone(arc, args.points)
    if args.format == "json":
        _emit_json(
            args,
            {
                "s": [float(x) for x in polyline.s],
                "points": io.matrix_rows(polyline.points),
            },
        )
        return 0
    _emit(args, lambda fh: io.write_polyline_csv(polyline, fh))
    return 0


def _cmd_chain_forward(args: argparse.Namespace) -> int:
    robot = _load_robot(args)
    state = _require_chain(io.load_state(args.input))
    _emit_json(args, io.chain_clarke_dict(_chain_forward(robot, state)))
    return 0


def _cmd_chain_inverse(args: argparse.Namespace) -> int:
    robot = _load_robot(args)
    state = io.load_clarke(args.input)
    if not isinstance(state, ChainClarke):
        raise SchemaError("chain inverse needs a chain-shaped state with 'segments'")
    _emit_json(args, io.chain_state_dict(_chain_inverse(robot, state)))
    return 0


def _cmd_chain_accumulate(args: argparse.Namespace) -> int:
    robot = _load_robot(args)
    state = _require_chain(io.load_state(args.input))
    if state.convention is not Convention.RHO:
        raise ConventionMismatch("accumulation starts from per-segment rho vectors")
    result = interdependent_accumulate(robot, state.per_segment)
    _emit_json(args, io.chain_state_dict(result))
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_robot(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--robot", required=True, help="robot description JSON file")


def _add_out(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--out", help="output file (default: standard output)")


def _add_segment(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--segment", type=int, default=0, help="segment index (default 0)")


def _add_input(sp: argparse.ArgumentParser, help_text: str) -> None:
    sp.add_argument("--input", required=True, help=help_text)


def _add_tol(sp: argparse.ArgumentParser, help_text: str) -> None:
    sp.add_argument("--tol", type=float, default=None, help=help_text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dacr",
        description="Clarke-transform kinematics for displacement-actuated "
        "continuum robots.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("matrix", help="emit the transform matrices of one segment")
    _add_robot(p)
    _add_segment(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    _add_out(p)
    p.set_defaults(handler=_cmd_matrix)

    p = sub.add_parser("forward", help="joint state to Clarke state")
    _add_robot(p)
    _add_input(p, "joint-state or chain-state JSON file")
    _add_segment(p)
    _add_tol(p, "off-manifold tolerance for q-side mappings")
    p.add_argument("--alpha", type=float, default=None, help="twist joint value override")
    p.add_argument("--l", type=float, default=None, help="length hint for twist compensation")
    _add_out(p)
    p.set_defaults(handler=_cmd_forward)

    p = sub.add_parser("inverse", help="Clarke state to joint state")
    _add_robot(p)
    _add_input(p, "Clarke-state or chain Clarke JSON file")
    _add_segment(p)
    p.add_argument("--alpha", type=float, default=None, help="twist joint value override")
    _add_out(p)
    p.set_defaults(handler=_cmd_inverse)

    p = sub.add_parser("validate", help="validate a robot or a displacement state")
    _add_robot(p)
    p.add_argument("--input", help="optional joint-state or chain-state JSON file")
    _add_segment(p)
    _add_tol(p, f"residual tolerance (default {DEFAULT_VALIDATE_TOL})")
    _add_out(p)
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("project", help="project a vector onto the displacement manifold")
    _add_robot(p)
    _add_input(p, "joint-state JSON file (rho convention)")
    _add_segment(p)
    _add_out(p)
    p.set_defaults(handler=_cmd_project)

    p = sub.add_parser("recover-length", help="recover segment length from joint lengths")
    _add_robot(p)
    _add_input(p, "joint-state JSON file (q convention)")
    _add_segment(p)
    _add_tol(p, "off-manifold tolerance")
    _add_out(p)
    p.set_defaults(handler=_cmd_recover_length)

    p = sub.add_parser("arc", help="constant-curvature arc bridge")
    arc_sub = p.add_subparsers(dest="subcommand", required=True, metavar="direction")

    q = arc_sub.add_parser("to-clarke", help="arc parameters to Clarke coordinates")
    _add_input(q, "arc-parameter JSON file {kappa, theta, l}")
    q.add_argument("--d", type=float, required=True, help="radial joint distance")
    _add_out(q)
    q.set_defaults(handler=_cmd_arc_to_clarke)

    q = arc_sub.add_parser("from-clarke", help="Clarke coordinates to arc parameters")
    _add_input(q, "Clarke-state JSON file {cc: [re, im]}")
    q.add_argument("--d", type=float, required=True, help="radial joint distance")
    q.add_argument("--l", type=float, required=True, help="segment length")
    _add_out(q)
    q.set_defaults(handler=_cmd_arc_from_clarke)

    p = sub.add_parser("sample", help="sample the backbone arc as a polyline")
    _add_input(p, "arc-parameter JSON file {kappa, theta, l}")
    p.add_argument("--points", type=int, required=True, help="sample count (>= 2)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_out(p)
    p.set_defaults(handler=_cmd_sample)

    p = sub.add_parser("chain", help="multi-segment operations")
    chain_sub = p.add_subparsers(dest="subcommand", required=True, metavar="operation")

    q = chain_sub.add_parser("forward", help="chain state to per-segment Clarke coordinates")
    _add_robot(q)
    _add_input(q, "chain-state JSON file")
    _add_out(q)
    q.set_defaults(handler=_cmd_chain_forward)

    q = chain_sub.add_parser("inverse", help="per-segment Clarke coordinates to chain state")
    _add_robot(q)
    _add_input(q, "chain Clarke JSON file {segments: [{cc: ...}]}")
    _add_out(q)
    q.set_defaults(handler=_cmd_chain_inverse)

    q = chain_sub.add_parser("accumulate", help="per-segment rho to coupled joint lengths")
    _add_robot(q)
    _add_input(q, "chain-state JSON file (rho convention)")
    _add_out(q)
    q.set_defaults(handler=_cmd_chain_accumulate)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except _InvalidInput:
        return 1
    except DacrError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for err_type, code in _EXIT_CODES:
            if isinstance(exc, err_type):
                return code
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
