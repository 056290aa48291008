import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unigate import (
    Document,
    ErrorKind,
    GateParams,
    NetOp,
    OpKind,
    ParseError,
    Placement,
    TAU,
    basis_state,
    lower_v,
    parse,
    run,
    serialize,
    unitarity_defect,
    v_matrix,
)

DATA = Path(__file__).parent / "data"


def _load(name):
    return (DATA / name).read_text()


def test_minimal_program():
    doc = parse("register 3\na 1 3 1.0 0.5 0.25")
    assert doc.width == 3
    assert len(doc.ops) == 1
    op = doc.ops[0]
    assert op.kind is OpKind.A
    assert op.placement == Placement((1,), 3, 3)
    assert op.params == GateParams(1.0, 0.5, 0.25)


def test_all_gate_forms_parse():
    text = """register 3
a    1 2 0.1 0.2 0.3
ainv 2 3 0.1 0.2 0.3
v    1 2 3 0.1 0.2 0.3
vbar 1 2 3 0.1 0.2 0.3
p    1 2 3 0.5
q    1 2 3
rz   1 2 3 -0.25
"""
    doc = parse(text)
    kinds = [op.kind for op in doc.ops]
    assert kinds == [OpKind.A, OpKind.A_INV, OpKind.V, OpKind.VBAR, OpKind.P, OpKind.Q, OpKind.RZ]
    assert doc.ops[4].params == 0.5
    assert doc.ops[5].params is None
    assert doc.ops[6].params == -0.25


def test_comments_blank_lines_case():
    text = "# header comment\n\nREGISTER 2\nA 1 2 PI/2 2PI*0.25 0 # trailing comment\n"
    doc = parse(text)
    assert doc.width == 2
    p = doc.ops[0].params
    assert abs(p.phi - math.pi / 2) < 1e-15
    assert abs(p.alpha - math.pi / 2) < 1e-15


def test_angle_literal_forms():
    doc = parse("register 2\na 1 2 pi 3pi/4 2pi*0.618\nainv 1 2 -pi/2 1e-3 .5\n")
    p0, p1 = doc.ops[0].params, doc.ops[1].params
    assert abs(p0.phi - math.pi) < 1e-15
    assert abs(p0.alpha - 3 * math.pi / 4) < 1e-15
    assert abs(p0.theta - TAU * 0.618) < 1e-12
    assert abs(p1.phi - (TAU - math.pi / 2)) < 1e-15  # canonicalized
    assert abs(p1.alpha - 1e-3) < 1e-18
    assert abs(p1.theta - 0.5) < 1e-15


@pytest.mark.parametrize(
    "fixture,kind,line",
    [
        ("err_syntax.unet", ErrorKind.SYNTAX, 2),
        ("err_bad_index.unet", ErrorKind.BAD_INDEX, 2),
        ("err_bad_param.unet", ErrorKind.BAD_PARAM, 2),
        ("err_duplicate_qubit.unet", ErrorKind.DUPLICATE_QUBIT, 2),
        ("err_unknown_gate.unet", ErrorKind.UNKNOWN_GATE, 2),
        ("err_missing_header.unet", ErrorKind.MISSING_HEADER, 2),
    ],
)
def test_error_kind_fixtures(fixture, kind, line):
    with pytest.raises(ParseError) as exc_info:
        parse(_load(fixture))
    err = exc_info.value
    assert err.kind is kind
    assert err.line == line
    assert err.column >= 1
    assert err.message


def test_first_error_wins():
    with pytest.raises(ParseError) as exc_info:
        parse(_load("err_first_wins.unet"))
    assert exc_info.value.kind is ErrorKind.UNKNOWN_GATE
    assert exc_info.value.line == 3


def test_empty_input_missing_header():
    with pytest.raises(ParseError) as exc_info:
        parse("   \n# nothing here\n")
    assert exc_info.value.kind is ErrorKind.MISSING_HEADER
    assert exc_info.value.line == 1


def test_duplicate_register_rejected():
    with pytest.raises(ParseError) as exc_info:
        parse("register 2\nregister 3\n")
    assert exc_info.value.kind is ErrorKind.SYNTAX


def test_zero_width_rejected():
    with pytest.raises(ParseError) as exc_info:
        parse("register 0\n")
    assert exc_info.value.kind is ErrorKind.BAD_INDEX


def test_nonfinite_angle_rejected():
    with pytest.raises(ParseError) as exc_info:
        parse("register 2\na 1 2 1e999 0 0\n")
    assert exc_info.value.kind is ErrorKind.BAD_PARAM


def test_serialize_empty_ops():
    assert serialize(Document(3, ())) == "register 3\n"


def test_serialize_lower_v_round_trip():
    net = lower_v(GateParams(1.0, 0.5, 0.25))
    doc = Document(net.width, net.ops)
    text = serialize(doc)
    again = parse(text)
    assert again == doc
    assert len(again.ops) == 5
    assert [op.kind for op in again.ops] == [
        OpKind.A, OpKind.A_INV, OpKind.A, OpKind.A, OpKind.A,
    ]


_angles = st.floats(min_value=0.0, max_value=TAU, exclude_max=True, allow_nan=False)
_scalars = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)


@st.composite
def documents(draw):
    width = draw(st.integers(min_value=3, max_value=4))
    n_ops = draw(st.integers(min_value=0, max_value=6))
    ops = []
    for _ in range(n_ops):
        kind = draw(st.sampled_from(list(OpKind)))
        qubits = draw(st.permutations(range(1, width + 1)))
        if kind in (OpKind.A, OpKind.A_INV):
            pl = Placement((qubits[0],), qubits[1], width)
            params = GateParams(draw(_angles), draw(_angles), draw(_angles))
        else:
            pl = Placement((qubits[0], qubits[1]), qubits[2], width)
            if kind in (OpKind.V, OpKind.VBAR):
                params = GateParams(draw(_angles), draw(_angles), draw(_angles))
            elif kind is OpKind.Q:
                params = None
            else:
                params = draw(_scalars)
        ops.append(NetOp(kind, pl, params))
    return Document(width, tuple(ops))


@settings(max_examples=100, deadline=None)
@given(documents())
def test_parse_serialize_identity(doc):
    assert parse(serialize(doc)) == doc


def test_run_without_ops_is_identity():
    assert np.array_equal(run(parse("register 3\n")), np.eye(8))


def test_run_five_gate_netlist_matches_v():
    p = GateParams(1.0, 0.5, 0.25)
    net = lower_v(p)
    doc = parse(serialize(Document(net.width, net.ops)))
    assert np.linalg.norm(run(doc) - v_matrix(p)) < 1e-12


def test_run_with_initial_state():
    theta = 0.7
    doc = parse(f"register 3\nv 1 2 3 0 pi/2 {theta}\n")
    out = run(doc, basis_state("110"))
    expected = 1j * math.cos(theta) * basis_state("110") + math.sin(theta) * basis_state("111")
    assert np.linalg.norm(out - expected) < 1e-12


def test_run_dimension_mismatch():
    doc = parse("register 3\n")
    with pytest.raises(ValueError):
        run(doc, basis_state("10"))


@settings(max_examples=25, deadline=None)
@given(documents())
def test_run_is_unitary(doc):
    assert unitarity_defect(run(doc)) < 1e-9
