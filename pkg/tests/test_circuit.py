import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qudit_coloring.circuit import Circuit, PlacedGate, depth, gate_count, invert
from qudit_coloring.errors import NetlistParseError, ParameterError, StructuralError
from qudit_coloring.gates import MCT, DiagonalPhase, Hadamard, Increment, Not, Permutation, Phase
from qudit_coloring.netlist import parse_netlist, serialize_netlist
from qudit_coloring.state import circuit_unitary


def test_gate_validation():
    with pytest.raises(StructuralError):
        PlacedGate(Not(), 0, ((0, 1),))
    c = Circuit((2, 3))
    with pytest.raises(StructuralError):
        c.append(PlacedGate(Not(), 2))
    with pytest.raises(ParameterError):
        c.append(PlacedGate(Not(), 0, ((1, 3),)))


def test_counts_and_depth():
    c = Circuit((2, 2, 2), (
        PlacedGate(Hadamard(), 0),
        PlacedGate(Hadamard(), 1),
        PlacedGate(MCT(), 2, ((0, 1), (1, 1))),
        PlacedGate(Not(), 0),
    ))
    counts = gate_count(c)
    assert counts["total"] == 4
    assert counts["by_kind"] == {"hadamard": 2, "mct": 1, "not": 1}
    assert counts["by_arity"] == {1: 3, 3: 1}
    assert depth(c) == 3
    assert depth(Circuit((2,))) == 0


def test_append_is_pure():
    c = Circuit((2,))
    c2 = c.append(PlacedGate(Not(), 0))
    assert len(c) == 0 and len(c2) == 1


kinds = st.sampled_from([
    Not(), Not(2), Phase(), Hadamard(), Hadamard(dagger=True), Increment(), Increment(-1),
    MCT(), MCT(-1), Permutation((2, 0, 1)), DiagonalPhase((0.0, 0.125, 1 / 3)),
])


@st.composite
def circuits(draw):
    n = draw(st.integers(2, 3))
    gates = []
    for _ in range(draw(st.integers(0, 6))):
        kind = draw(kinds)
        t = draw(st.integers(0, n - 1))
        others = [w for w in range(n) if w != t]
        cw = draw(st.lists(st.sampled_from(others), unique=True, max_size=n - 1))
        gates.append(PlacedGate(kind, t, tuple((w, draw(st.integers(0, 2))) for w in cw)))
    return Circuit((3,) * n, tuple(gates))


@settings(max_examples=50, deadline=None)
@given(circuits())
def test_netlist_roundtrip(c):
    text = serialize_netlist(c)
    back = parse_netlist(text)
    assert back.gates == c.gates and back.dims == c.dims
    assert serialize_netlist(back) == text


@settings(max_examples=30, deadline=None)
@given(circuits())
def test_invert_is_inverse(c):
    u = circuit_unitary(c) @ circuit_unitary(invert(c))
    assert np.allclose(u, np.eye(u.shape[0]))


def test_parse_example_with_comments_and_labels():
    text = "# toy\ndims 3 3\nlabels data output\nhadamard 0\nmct ctrl 0:2 target 1 step -1\ndiag 1 0.0,0.5,0.25 ctrl 0:1\n"
    c = parse_netlist(text)
    assert c.labels == ("data", "output")
    assert c.gates[1] == PlacedGate(MCT(-1), 1, ((0, 2),))


@pytest.mark.parametrize("text, line", [
    ("", 0),
    ("not 0\n", 1),
    ("dims 2 2\nbogus 0\n", 2),
    ("dims 2 2\nnot 5\n", 2),
    ("dims 2 2\nnot 0 ctrl 1:7\n", 2),
    ("dims 2 2\n\nnot 0 power x\n", 3),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(NetlistParseError) as err:
        parse_netlist(text)
    assert err.value.lineno == line
