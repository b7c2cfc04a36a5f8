"""Grover search over oracle circuits: initialization, diffusion, iteration loop."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .circuit import PlacedGate, invert_gates
from .errors import NoSolutionError, ParameterError, ResourceError
from .gates import DiagonalPhase, Hadamard, Not
from .graphs import Graph
from .oracle import OracleCircuit, RegisterLayout, marked_states, normalize, synth_oracle
from .state import MAX_AMPLITUDES, StateVector, apply_to_tensor, measure_probabilities

MAX_DIFFUSION_SIZE = 4096


def synth_initialization(layout: RegisterLayout) -> list[PlacedGate]:
    """Uniform data superposition, ancillas |d-1>, flag |0>, output F_d|d-1>."""
    d = layout.d
    gates = [PlacedGate(Hadamard(), w) for w in layout.data_wires]
    gates += [PlacedGate(Not(d - 1), w) for w in layout.ancilla_wires]
    gates.append(PlacedGate(Not(d - 1), layout.output_wire))
    gates.append(PlacedGate(Hadamard(), layout.output_wire))
    return gates


def diffusion_matrix(d: int, m: int) -> np.ndarray:
    """Inversion about the mean: 2/d**m everywhere, minus 1 on the diagonal."""
    size = d**m
    if size > MAX_DIFFUSION_SIZE:
        raise ResourceError(f"diffusion matrix of size {size} exceeds the guard of {MAX_DIFFUSION_SIZE}")
    return np.full((size, size), 2 / size) - np.eye(size)


def synth_diffusion_circuit(d: int, m: int, wires: Optional[Sequence[int]] = None) -> list[PlacedGate]:
    """Gate form of the diffusion operator on ``wires`` (default 0..m-1).

    F_d^dagger on each wire, X^(d-1) to move |0...0> to |d-1...d-1>, a -1
    phase on that single pattern, then the inverse layers. The result equals
    :func:`diffusion_matrix` times a global phase of -1.
    """
    if m < 1:
        raise ParameterError("diffusion needs at least one wire")
    wires = list(range(m)) if wires is None else list(wires)
    if len(wires) != m:
        raise ParameterError(f"{len(wires)} wires given for m={m}")
    to_pattern = [PlacedGate(Hadamard(dagger=True), w) for w in wires]
    to_pattern += [PlacedGate(Not(d - 1), w) for w in wires]
    flip = PlacedGate(
        DiagonalPhase((0.0,) * (d - 1) + (0.5,)),
        wires[-1],
        tuple((w, d - 1) for w in wires[:-1]),
    )
    return to_pattern + [flip] + normalize(invert_gates(to_pattern), d)


def optimal_iterations(N: int, M: int) -> int:
    if not 1 <= N:
        raise ParameterError(f"search space size must be positive, got N={N}")
    if M == 0:
        raise NoSolutionError("no marked states; the iteration count is undefined")
    if not 1 <= M <= N:
        raise ParameterError(f"need 1 <= M <= N, got M={M}, N={N}")
    theta = math.asin(math.sqrt(M / N))
    best = math.pi / (4 * theta) - 0.5
    return max(math.floor(best + 0.5), 0)  # round half up


def count_solutions(graph: Graph, k: int, d: int) -> int:
    return len(marked_states(graph, k, d))


def success_law(N: int, M: int, iterations: int) -> float:
    """Ideal success probability sin^2((2r+1) theta) with -1 marking."""
    theta = math.asin(math.sqrt(M / N))
    return math.sin((2 * iterations + 1) * theta) ** 2


@dataclass
class GroverRun:
    oracle: OracleCircuit
    iterations: int
    kickback: str
    final_state: StateVector
    histogram: dict[str, float]
    marked: list[str]

    @property
    def solutions(self) -> int:
        return len(self.marked)

    @property
    def search_space(self) -> int:
        return self.oracle.layout.d**self.oracle.layout.m

    @property
    def success_probability(self) -> float:
        return float(sum(self.histogram[s] for s in self.marked))

    def top(self, count: int) -> list[tuple[str, float]]:
        ranked = sorted(self.histogram.items(), key=lambda kv: (-round(kv[1], 12), kv[0]))  # ties by basis string
        return ranked[:count]


def run_grover(
    graph: Graph,
    k: int,
    d: int,
    iterations: Optional[int] = None,
    kickback: str = "paper-exact",
) -> GroverRun:
    oracle = synth_oracle(graph, k, d, kickback)
    layout = oracle.layout
    if layout.m == 0:
        raise ParameterError("no data wires to search over (k=1)")
    marked = marked_states(graph, k, d)
    if iterations is None:
        iterations = optimal_iterations(d**layout.m, len(marked)) if marked else 0
    if iterations < 0:
        raise ParameterError(f"iterations must be >= 0, got {iterations}")

    dims = layout.dims
    if math.prod(dims) > MAX_AMPLITUDES:
        raise ResourceError(f"{len(dims)} wires of dimension {d} exceed the simulator guard")
    psi = np.zeros(dims, dtype=complex)
    psi[(0,) * len(dims)] = 1.0
    diffusion = synth_diffusion_circuit(d, layout.m, layout.data_wires)
    for g in synth_initialization(layout):
        apply_to_tensor(psi, dims, g)
    for _ in range(iterations):
        for g in oracle.circuit.gates:
            apply_to_tensor(psi, dims, g)
        for g in diffusion:
            apply_to_tensor(psi, dims, g)

    final = StateVector(dims, psi.reshape(-1))
    hist = measure_probabilities(final, layout.data_wires)
    return GroverRun(oracle, iterations, kickback, final, hist, marked)


def histogram_csv(histogram: dict[str, float]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["basis_string", "probability"])
    for key, p in histogram.items():
        writer.writerow([key, repr(p)])
    return buf.getvalue()


def histogram_json(histogram: dict[str, float]) -> str:
    rows = [{"basis_string": key, "probability": p} for key, p in histogram.items()]
    return json.dumps(rows, indent=2) + "\n"
