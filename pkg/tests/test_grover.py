import math

import numpy as np
import pytest

from qudit_coloring.circuit import Circuit
from qudit_coloring.errors import NoSolutionError, ParameterError, ResourceError
from qudit_coloring.graphs import complete_graph, cycle_graph, star_graph
from qudit_coloring.grover import (
    diffusion_matrix,
    histogram_csv,
    histogram_json,
    optimal_iterations,
    run_grover,
    success_law,
    synth_diffusion_circuit,
)
from qudit_coloring.state import circuit_unitary


def brute_iterations(N, M):
    """Iteration count maximizing sin^2((2r+1) theta) over the first period, by search."""
    theta = math.asin(math.sqrt(M / N))
    return max(range(0, math.floor(math.pi / (2 * theta)) + 1), key=lambda r: (round(math.sin((2 * r + 1) * theta) ** 2, 12), -r))


@pytest.mark.parametrize("N, M", [(64, 6), (27, 12), (4, 1), (8, 1), (1024, 1), (9, 2), (100, 40)])
def test_optimal_iterations(N, M):
    r = optimal_iterations(N, M)
    assert success_law(N, M, r) == pytest.approx(success_law(N, M, brute_iterations(N, M)), abs=1e-12)


def test_optimal_iterations_edges():
    assert optimal_iterations(64, 6) == 2
    assert optimal_iterations(4, 4) == 0
    with pytest.raises(NoSolutionError):
        optimal_iterations(8, 0)
    with pytest.raises(ParameterError):
        optimal_iterations(8, 9)


@pytest.mark.parametrize("d, m", [(2, 1), (2, 3), (3, 2), (4, 2), (5, 1)])
def test_diffusion_circuit(d, m):
    u = circuit_unitary(Circuit((d,) * m, tuple(synth_diffusion_circuit(d, m))))
    assert np.allclose(u, -diffusion_matrix(d, m), atol=1e-12)


def test_diffusion_guard():
    with pytest.raises(ResourceError):
        diffusion_matrix(2, 13)


def test_grover_matches_law_with_pi_phase():
    run = run_grover(cycle_graph(4), 2, 2, kickback="pi-phase")
    assert run.solutions == 2
    assert run.success_probability == pytest.approx(success_law(16, 2, run.iterations), abs=1e-9)


def test_no_solution_run_is_uniform():
    run = run_grover(complete_graph(3), 2, 2)
    assert run.iterations == 0 and run.solutions == 0
    assert np.allclose(list(run.histogram.values()), 1 / 8)


def test_histogram_exports():
    run = run_grover(star_graph(3), 3, 3, iterations=1)
    csv = histogram_csv(run.histogram).splitlines()
    assert csv[0] == "basis_string,probability" and len(csv) == 28
    assert '"basis_string": "000"' in histogram_json(run.histogram)
    top = run.top(12)
    assert sorted(s for s, _ in top) == run.marked
