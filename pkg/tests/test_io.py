"""JSON/CSV parsing and emission."""

import io
import json

import numpy as np
import pytest

from dacr import (
    ArcParameters,
    ChainClarke,
    ChainState,
    ClarkeCoordinates,
    Convention,
    Coupling,
    DomainError,
    ExtendedClarkeState,
    JointState,
    SchemaError,
    SegmentType,
    Violation,
    sample_backbone,
)
from dacr.io import (
    arc_dict,
    chain_clarke_dict,
    chain_state_dict,
    clarke_state_dict,
    dump_json,
    joint_state_dict,
    load_clarke,
    load_robot,
    load_state,
    loads_strict,
    matrix_rows,
    parse_arc,
    parse_chain_clarke,
    parse_chain_state,
    parse_clarke_state,
    parse_joint_state,
    parse_robot,
    violations_dict,
    write_matrix_csv,
    write_polyline_csv,
)

SYMMETRIC_ROBOT = {
    "coupling": "independent",
    "segments": [
        {"type": "type0", "length": 100.0, "joints": {"symmetric": {"n": 3, "d": 10.0}}},
    ],
}


class TestLoadsStrict:
    def test_plain_document(self):
        assert loads_strict('{"a": [1, 2.5]}') == {"a": [1, 2.5]}

    @pytest.mark.parametrize("text", ["{", "", "[1,]", '{"a": 1,}'])
    def test_malformed(self, text):
        with pytest.raises(SchemaError):
            loads_strict(text)

    @pytest.mark.parametrize("text", ['{"x": NaN}', '{"x": Infinity}', '{"x": -Infinity}'])
    def test_non_finite_rejected(self, text):
        with pytest.raises(SchemaError):
            loads_strict(text)


class TestParseRobot:
    def test_symmetric_segment(self):
        robot = parse_robot(SYMMETRIC_ROBOT)
        assert robot.coupling is Coupling.INDEPENDENT
        assert len(robot.segments) == 1
        seg = robot.segments[0]
        assert seg.seg_type is SegmentType.TYPE0
        assert seg.length == 100.0
        assert seg.arrangement.n == 3
        np.testing.assert_array_equal(seg.arrangement.d, [10.0, 10.0, 10.0])

    def test_defaults(self):
        robot = parse_robot({
            "segments": [{"length": 5, "joints": {"symmetric": {"n": 4, "d": 1}}}],
        })
        assert robot.coupling is Coupling.INDEPENDENT
        assert robot.segments[0].seg_type is SegmentType.TYPE0

    def test_explicit_arrangement(self):
        robot = parse_robot({
            "segments": [{
                "length": 2.0,
                "joints": {"explicit": [
                    {"psi": 0.0, "d": 1.0},
                    {"psi": 1.5707963267948966, "d": 1.0},
                    {"psi": 3.141592653589793, "d": 1.0},
                ]},
            }],
        })
        np.testing.assert_array_equal(
            robot.segments[0].arrangement.psi,
            [0.0, 1.5707963267948966, 3.141592653589793],
        )

    def test_interdependent_coupling(self):
        doc = dict(SYMMETRIC_ROBOT, coupling="interdependent")
        assert parse_robot(doc).coupling is Coupling.INTERDEPENDENT

    @pytest.mark.parametrize("mutate", [
        lambda d: d.pop("segments"),
        lambda d: d.update(segments={}),
        lambda d: d.update(coupling="serial"),
        lambda d: d["segments"][0].pop("length"),
        lambda d: d["segments"][0].pop("joints"),
        lambda d: d["segments"][0].update(type="type9"),
        lambda d: d["segments"][0].update(length="100"),
        lambda d: d["segments"][0].update(length=True),
        lambda d: d["segments"][0].update(joints={}),
        lambda d: d["segments"][0].update(
            joints={"symmetric": {"n": 3, "d": 1}, "explicit": []}),
        lambda d: d["segments"][0].update(joints={"symmetric": {"n": 3.0, "d": 1}}),
        lambda d: d["segments"][0].update(joints={"symmetric": {"d": 1}}),
        lambda d: d["segments"][0].update(joints={"explicit": [{"psi": 0.0}]}),
        lambda d: d["segments"][0].update(joints={"explicit": {"psi": 0.0, "d": 1}}),
    ])
    def test_schema_errors(self, mutate):
        doc = json.loads(json.dumps(SYMMETRIC_ROBOT))
        mutate(doc)
        with pytest.raises(SchemaError):
            parse_robot(doc)

    def test_domain_error_passes_through(self):
        # Well-formed document, out-of-domain value: not a schema problem.
        doc = {"segments": [{"length": 1, "joints": {"symmetric": {"n": 2, "d": 1}}}]}
        with pytest.raises(DomainError):
            parse_robot(doc)

    def test_non_object_rejected(self):
        with pytest.raises(SchemaError):
            parse_robot([1, 2, 3])


class TestParseStates:
    def test_joint_state(self):
        state = parse_joint_state({"convention": "rho", "values": [1, 0, -1]})
        assert state.convention is Convention.RHO
        np.testing.assert_array_equal(state.values, [1.0, 0.0, -1.0])
        assert state.beta is None
        assert state.alpha is None

    def test_joint_state_with_extensions(self):
        state = parse_joint_state(
            {"convention": "q", "values": [9, 10, 11], "beta": 10, "alpha": 0.25})
        assert state.beta == 10.0
        assert state.alpha == 0.25

    @pytest.mark.parametrize("doc", [
        {"values": [1, 2]},
        {"convention": "lengths", "values": [1, 2]},
        {"convention": "rho"},
        {"convention": "rho", "values": [1, "2"]},
        {"convention": "rho", "values": 3},
        {"convention": "rho", "values": [1, 2], "beta": "10"},
    ])
    def test_joint_state_schema_errors(self, doc):
        with pytest.raises(SchemaError):
            parse_joint_state(doc)

    def test_chain_state(self):
        state = parse_chain_state({
            "convention": "q",
            "segments": [{"values": [1, 2, 3]}, {"values": [4, 5, 6, 7]}],
        })
        assert state.convention is Convention.Q
        assert len(state.per_segment) == 2
        np.testing.assert_array_equal(state.per_segment[1], [4.0, 5.0, 6.0, 7.0])

    @pytest.mark.parametrize("doc", [
        {"segments": [{"values": [1]}]},
        {"convention": "rho", "segments": {"values": [1]}},
        {"convention": "rho", "segments": [{"vals": [1]}]},
        {"convention": "rho", "segments": [[1, 2]]},
    ])
    def test_chain_state_schema_errors(self, doc):
        with pytest.raises(SchemaError):
            parse_chain_state(doc)

    def test_load_state_dispatch(self, tmp_path):
        single = tmp_path / "single.json"
        single.write_text('{"convention": "rho", "values": [1, 0, -1]}')
        chain = tmp_path / "chain.json"
        chain.write_text('{"convention": "rho", "segments": [{"values": [1, 0, -1]}]}')
        assert isinstance(load_state(str(single)), JointState)
        assert isinstance(load_state(str(chain)), ChainState)


class TestParseClarke:
    def test_single(self):
        state = parse_clarke_state({"cc": [2.0, -0.5]})
        assert state.cc == ClarkeCoordinates(2.0, -0.5)
        assert state.beta is None

    def test_with_beta_alpha(self):
        state = parse_clarke_state({"cc": [1, 0], "beta": 4, "alpha": 0.3})
        assert (state.beta, state.alpha) == (4.0, 0.3)

    @pytest.mark.parametrize("doc", [
        {},
        {"cc": [1.0]},
        {"cc": [1.0, 2.0, 3.0]},
        {"cc": "1,2"},
        {"cc": [1.0, True]},
    ])
    def test_schema_errors(self, doc):
        with pytest.raises(SchemaError):
            parse_clarke_state(doc)

    def test_chain(self):
        cc = parse_chain_clarke({"segments": [{"cc": [1, 0]}, {"cc": [0, 2]}]})
        assert cc.per_segment == (ClarkeCoordinates(1.0, 0.0), ClarkeCoordinates(0.0, 2.0))

    def test_load_clarke_dispatch(self, tmp_path):
        single = tmp_path / "cc.json"
        single.write_text('{"cc": [1, 0]}')
        chain = tmp_path / "ccs.json"
        chain.write_text('{"segments": [{"cc": [1, 0]}]}')
        assert isinstance(load_clarke(str(single)), ExtendedClarkeState)
        assert isinstance(load_clarke(str(chain)), ChainClarke)


class TestParseArc:
    def test_full(self):
        arc = parse_arc({"kappa": 0.005, "theta": 1.2, "l": 100})
        assert (arc.kappa, arc.theta, arc.l) == (0.005, 1.2, 100.0)

    def test_theta_defaults_to_zero(self):
        assert parse_arc({"kappa": 0.1, "l": 5}).theta == 0.0

    @pytest.mark.parametrize("doc", [{"theta": 0, "l": 5}, {"kappa": 0.1}, {"kappa": "x", "l": 1}])
    def test_schema_errors(self, doc):
        with pytest.raises(SchemaError):
            parse_arc(doc)

    def test_domain_error_passes_through(self):
        with pytest.raises(DomainError):
            parse_arc({"kappa": -0.1, "l": 5})


class TestRobotFile:
    def test_load_robot(self, tmp_path):
        path = tmp_path / "robot.json"
        path.write_text(json.dumps(SYMMETRIC_ROBOT))
        robot = load_robot(str(path))
        assert robot.segments[0].length == 100.0

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_robot(str(tmp_path / "nope.json"))


class TestEmission:
    def test_matrix_rows_are_plain_floats(self):
        rows = matrix_rows(np.array([[1, 2], [3, 4]]))
        assert rows == [[1.0, 2.0], [3.0, 4.0]]
        assert all(type(x) is float for row in rows for x in row)

    def test_clarke_state_dict_drops_missing_extensions(self):
        assert clarke_state_dict(ExtendedClarkeState(ClarkeCoordinates(2.0, 0.0))) == {
            "cc": [2.0, 0.0],
        }

    def test_clarke_state_dict_keeps_extensions(self):
        state = ExtendedClarkeState(ClarkeCoordinates(2.0, 0.0), beta=4.0, alpha=0.3)
        assert clarke_state_dict(state) == {"cc": [2.0, 0.0], "beta": 4.0, "alpha": 0.3}

    def test_joint_state_dict(self):
        state = JointState(Convention.Q, np.array([9.0, 10.0, 11.0]), beta=10.0)
        assert joint_state_dict(state) == {
            "convention": "q",
            "values": [9.0, 10.0, 11.0],
            "beta": 10.0,
        }

    def test_chain_dicts(self):
        cc = ChainClarke((ClarkeCoordinates(1.0, 0.0), ClarkeCoordinates(0.0, -2.0)))
        assert chain_clarke_dict(cc) == {
            "segments": [{"cc": [1.0, 0.0]}, {"cc": [0.0, -2.0]}],
        }
        state = ChainState(Convention.RHO, (np.array([1.0, 0.0, -1.0]),))
        assert chain_state_dict(state) == {
            "convention": "rho",
            "segments": [{"values": [1.0, 0.0, -1.0]}],
        }

    def test_arc_dict(self):
        arc = ArcParameters(kappa=0.005, theta=0.0, l=100.0)
        assert arc_dict(arc) == {
            "kappa": 0.005,
            "theta": 0.0,
            "l": 100.0,
            "phi": 0.5,
            "theta_defined": True,
        }

    def test_violations_dict(self):
        assert violations_dict([]) == {"valid": True, "violations": []}
        out = violations_dict([Violation(segment=0, field="length", message="must be positive")])
        assert out["valid"] is False
        assert out["violations"] == [
            {"segment": 0, "field": "length", "message": "must be positive"},
        ]

    def test_dump_json_format(self):
        buf = io.StringIO()
        dump_json({"a": 1.5}, buf)
        assert buf.getvalue() == '{\n  "a": 1.5\n}\n'

    def test_parse_dump_roundtrip_preserves_doubles(self):
        # repr-based emission is lossless: the decoded value is bitwise
        # identical to the original.
        values = [0.1, 1 / 3, 5e-324, 1.7976931348623157e308]
        buf = io.StringIO()
        dump_json({"values": values}, buf)
        assert loads_strict(buf.getvalue())["values"] == values


class TestCsvWriters:
    def test_matrix_block(self):
        buf = io.StringIO()
        write_matrix_csv("mp_inv", np.array([[1.0, 0.0], [-0.5, 0.5]]), buf)
        assert buf.getvalue() == "mp_inv\n1.0,0.0\n-0.5,0.5\n"

    def test_polyline_header_and_rows(self):
        poly = sample_backbone(ArcParameters(kappa=0.0, theta=0.0, l=100.0), points=2)
        buf = io.StringIO()
        write_polyline_csv(poly, buf)
        assert buf.getvalue() == "s,x,y,z\n0.0,0.0,0.0,0.0\n100.0,0.0,0.0,100.0\n"

    def test_polyline_values_roundtrip(self):
        poly = sample_backbone(ArcParameters(kappa=0.013, theta=0.9, l=42.0), points=4)
        buf = io.StringIO()
        write_polyline_csv(poly, buf)
        lines = buf.getvalue().splitlines()[1:]
        parsed = np.array([[float(tok) for tok in line.split(",")] for line in lines])
        np.testing.assert_array_equal(parsed[:, 0], poly.s)
        np.testing.assert_array_equal(parsed[:, 1:], poly.points)
