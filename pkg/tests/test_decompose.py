import itertools

import numpy as np
import pytest

from qudit_coloring.circuit import Circuit, PlacedGate
from qudit_coloring.decompose import (
    classical_action,
    decompose_mct_binary,
    decompose_mct_qudit,
    decompose_toffoli_qudit,
    lower_circuit,
    verify_equivalence,
)
from qudit_coloring.errors import ParameterError, ResourceError
from qudit_coloring.gates import DiagonalPhase, Not, gate_matrix
from qudit_coloring.graphs import complete_graph, star_graph
from qudit_coloring.oracle import synth_oracle

from conftest import dense_reference


def mct_reference(n, d):
    dims = (d,) * (n + 1)
    return dense_reference(dims, n, gate_matrix(Not(), d), tuple((w, d - 1) for w in range(n)))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_binary_mct(n):
    c = decompose_mct_binary(n)
    assert all(g.arity <= 2 for g in c.gates)
    eq = verify_equivalence(c, mct_reference(n, 2))
    assert eq.equal and eq.max_deviation < 1e-9


@pytest.mark.parametrize("n, d", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (2, 4)])
def test_qudit_mct(n, d):
    c = decompose_mct_qudit(n, d)
    assert all(g.arity <= 2 for g in c.gates)
    assert len(c.gates) == 2 * n - 1
    eq = verify_equivalence(c, mct_reference(n, d), subspace_dims=(d,) * (n + 1))
    assert eq.equal and eq.leakage < 1e-10


@pytest.mark.parametrize("d", [2, 3, 4])
def test_toffoli_qudit(d):
    c = decompose_toffoli_qudit(d)
    assert len(c.gates) == 3 and c.dims == (d + 1,) * 3
    assert verify_equivalence(c, mct_reference(2, d), subspace_dims=(d,) * 3).equal


@pytest.mark.parametrize("d", [2, 3])
def test_seven_controls_classically(d):
    n = 7
    c = decompose_mct_qudit(n, d)
    assert len(c.gates) <= 2 * n - 1
    for x in itertools.product(range(d), repeat=n + 1):
        out = classical_action(c.gates, x, c.dims)
        want = list(x)
        if all(v == d - 1 for v in x[:n]):
            want[n] = (want[n] + 1) % d
        assert out == want


def test_lowering_oracles():
    for graph, k, d in [(complete_graph(3), 3, 2), (star_graph(3), 3, 3)]:
        circuit = synth_oracle(graph, k, d).circuit
        low = lower_circuit(circuit, "two-wire")
        assert max(g.arity for g in low.gates) <= 2
        mid = lower_circuit(circuit, "mct")
        assert all(v == d - 1 for g in mid.gates if g.arity > 2 for _, v in g.controls)


def test_already_low_is_unchanged():
    c = Circuit((2, 2), (PlacedGate(Not(), 1, ((0, 1),)),))
    assert lower_circuit(c) is c
    with pytest.raises(ParameterError):
        lower_circuit(c, "gates")


def test_controlled_phase_lowering_with_zero_controls():
    gate = PlacedGate(DiagonalPhase((0.0, 0.5)), 2, ((0, 0), (1, 1)))
    c = Circuit((2, 2, 2), (gate,))
    assert verify_equivalence(lower_circuit(c), c).equal


def test_verify_detects_difference_and_guard():
    a = Circuit((2, 2), (PlacedGate(Not(), 1, ((0, 1),)),))
    b = Circuit((2, 2), (PlacedGate(Not(), 0, ((1, 1),)),))
    assert not verify_equivalence(a, b).equal
    with pytest.raises(ResourceError):
        verify_equivalence(Circuit((2,) * 13), np.eye(2**13))
