"""Automatic synthesis of the k-coloring Grover oracle in dimension d.

Register plan (wire order)::

    data      n * c wires, vertex 1 first, each vertex's digits high-to-low
    ancilla   comparator/fold ancillas A_i, prepared |d-1>, ascending i
    flag      invalid-color flag, prepared |0>  (only when d**c > k)
    output    prepared F_d |d-1>

Ancillas are numbered 1..n as in the synthesis loop; only the indices the loop
touches get a wire, except that the invalid-color detector borrows A_1..A_n as
per-vertex scratch, so all n exist whenever the flag does.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .circuit import Circuit, PlacedGate, invert_gates
from .errors import DegenerateProblemError, ParameterError, ResourceError, StructuralError
from .gates import MCT, DiagonalPhase, Hadamard, Increment, Not, Phase
from .graphs import Graph
from .state import apply_to_tensor, basis_string

KICKBACK_MODES = ("paper-exact", "pi-phase")


def num_digits(k: int, d: int) -> int:
    """Smallest c with d**c >= k."""
    if d < 2:
        raise ParameterError(f"dimension must be >= 2, got {d}")
    if k < 1:
        raise ParameterError(f"need at least one color, got k={k}")
    c, cap = 0, 1
    while cap < k:
        c, cap = c + 1, cap * d
    return c


@dataclass(frozen=True)
class VertexStep:
    vertex: int
    neighbors: tuple[int, ...]
    slots: tuple[int, ...]
    fold_into: Optional[int]


@dataclass(frozen=True)
class Schedule:
    steps: tuple[VertexStep, ...]
    direct: tuple[int, ...]
    folds: tuple[int, ...]

    @property
    def touched(self) -> set[int]:
        used = set(self.folds)
        for s in self.steps:
            used.update(s.slots)
        return used


def comparator_schedule(graph: Graph) -> Schedule:
    """Run the ancilla-allocation loop of the synthesis algorithm.

    For vertex i, each forward neighbour j > i gets a comparator verdict on
    A_f, A_f+1, ...  A single verdict stays put and f advances; several are
    folded by an MCT into A_l (l counting down from n) and then uncomputed.
    """
    n = graph.n
    low, high = 1, n
    steps, direct, folds = [], [], []
    for i in range(n - 1):
        nbrs = tuple(j for j in range(i + 1, n) if graph.has_edge(i, j))
        slots = tuple(range(low, low + len(nbrs)))
        fold = None
        if len(nbrs) > 1:
            fold = high
            folds.append(high)
            high -= 1
        elif len(nbrs) == 1:
            direct.append(low)
            low += 1
        steps.append(VertexStep(i, nbrs, slots, fold))
    return Schedule(tuple(steps), tuple(direct), tuple(folds))


@dataclass(frozen=True)
class RegisterLayout:
    n: int
    k: int
    d: int
    c: int
    m: int
    ancilla_index: tuple[int, ...]
    has_invalid_flag: bool
    schedule: Schedule

    @property
    def r(self) -> int:
        return len(self.ancilla_index)

    @property
    def flag_wire(self) -> Optional[int]:
        return self.m + self.r if self.has_invalid_flag else None

    @property
    def output_wire(self) -> int:
        return self.m + self.r + int(self.has_invalid_flag)

    @property
    def num_wires(self) -> int:
        return self.output_wire + 1

    @property
    def dims(self) -> tuple[int, ...]:
        return (self.d,) * self.num_wires

    @property
    def data_wires(self) -> tuple[int, ...]:
        return tuple(range(self.m))

    @property
    def ancilla_wires(self) -> tuple[int, ...]:
        return tuple(range(self.m, self.m + self.r))

    @property
    def roles(self) -> tuple[str, ...]:
        roles = ["data"] * self.m + ["ancilla"] * self.r
        if self.has_invalid_flag:
            roles.append("flag")
        return tuple(roles + ["output"])

    @property
    def invalid_colors(self) -> range:
        return range(self.k, self.d**self.c)

    def ancilla(self, index: int) -> int:
        """Wire of ancilla A_index (1-based)."""
        return self.m + self.ancilla_index.index(index)

    def vertex_wires(self, vertex: int) -> tuple[int, ...]:
        return tuple(range(vertex * self.c, (vertex + 1) * self.c))

    def initial_digits(self) -> list[int]:
        """Basis values of the non-data wires before the output's F_d."""
        digits = [self.d - 1] * self.r
        if self.has_invalid_flag:
            digits.append(0)
        return digits + [self.d - 1]

    def summary(self) -> str:
        parts = [f"{self.m} data", f"{self.r} ancilla"]
        if self.has_invalid_flag:
            parts.append("1 invalid-flag")
        parts.append("1 output")
        return " + ".join(parts) + f" (n={self.n}, k={self.k}, d={self.d}, c={self.c})"


def plan_layout(graph: Graph, k: int, d: int) -> RegisterLayout:
    c = num_digits(k, d)
    if k < 2 and graph.edges:
        raise DegenerateProblemError(f"k={k} colors cannot color a graph with edges")
    schedule = comparator_schedule(graph)
    flag = d**c > k
    indices = set(schedule.touched)
    if flag:
        indices.update(range(1, graph.n + 1))
    return RegisterLayout(
        n=graph.n,
        k=k,
        d=d,
        c=c,
        m=graph.n * c,
        ancilla_index=tuple(sorted(indices)),
        has_invalid_flag=flag,
        schedule=schedule,
    )


def color_digits(color: int, c: int, d: int) -> list[int]:
    digits = []
    for _ in range(c):
        color, digit = divmod(color, d)
        digits.append(digit)
    return digits[::-1]


def synth_qudit_activation(
    vertex_wires: Sequence[int], invalid_color: int, *, d: int, k: int
) -> list[PlacedGate]:
    """Shift each digit of ``invalid_color`` to d-1 so an MCT can detect it."""
    if invalid_color < k:
        raise ParameterError(f"color {invalid_color} is valid for k={k}")
    c = len(vertex_wires)
    if invalid_color >= d**c:
        raise ParameterError(f"color {invalid_color} does not fit in {c} base-{d} digits")
    gates = []
    for wire, digit in zip(vertex_wires, color_digits(invalid_color, c, d)):
        shift = d - 1 - digit
        if shift:
            gates.append(PlacedGate(Not(shift), wire))
    return gates


def synth_icd(layout: RegisterLayout) -> list[PlacedGate]:
    """Invalid-color detector: flag |0> -> |d-1> iff every vertex color is < k.

    Vertex i's scratch ancilla A_i drops from d-1 to 0 when the vertex holds an
    invalid color; the flag then increments only if all scratch wires still
    read d-1. Scratch and data are restored before returning.
    """
    if not layout.has_invalid_flag:
        raise StructuralError("layout has no invalid colors, so no detector is needed")
    d, c = layout.d, layout.c
    compute: list[PlacedGate] = []
    for vertex in range(layout.n):
        wires = layout.vertex_wires(vertex)
        scratch = layout.ancilla(vertex + 1)
        applied = [0] * c
        for color in layout.invalid_colors:
            wanted = [d - 1 - x for x in color_digits(color, c, d)]
            # consecutive activations merge into one shift per digit
            for wire, have, want in zip(wires, applied, wanted):
                if (want - have) % d:
                    compute.append(PlacedGate(Not((want - have) % d), wire))
            applied = wanted
            compute.append(PlacedGate(MCT(), scratch, tuple((w, d - 1) for w in wires)))
        for wire, have in zip(wires, applied):
            if have % d:
                compute.append(PlacedGate(Not((-have) % d), wire))
    scratch_controls = tuple((layout.ancilla(v + 1), d - 1) for v in range(layout.n))
    mark = PlacedGate(Increment(-1), layout.flag_wire, scratch_controls)
    return normalize(compute + [mark] + invert_gates(compute), d)


def _check_disjoint(wires_a, wires_b, ancilla) -> None:
    everything = list(wires_a) + list(wires_b) + [ancilla]
    if len(set(everything)) != len(everything):
        raise StructuralError(f"comparator wires overlap: a={list(wires_a)} b={list(wires_b)} f={ancilla}")
    if len(wires_a) != len(wires_b):
        raise StructuralError("comparator registers differ in width")


def synth_comparator(
    layout: RegisterLayout, wires_a: Sequence[int], wires_b: Sequence[int], ancilla: int
) -> list[PlacedGate]:
    """Equality comparator: ancilla |d-1> -> |0> when a == b, unchanged otherwise.

    b is replaced digit-wise by b - a, the ancilla fires on all-zero
    differences, then b is restored.
    """
    _check_disjoint(wires_a, wires_b, ancilla)
    d = layout.d
    subtract, restore = [], []
    for a, b in zip(wires_a, wires_b):
        for v in range(1, d):
            subtract.append(PlacedGate(Not(d - v), b, ((a, v),)))
            restore.append(PlacedGate(Not(v), b, ((a, v),)))
    verdict = PlacedGate(MCT(), ancilla, tuple((b, 0) for b in wires_b))
    return subtract + [verdict] + restore


def synth_inverse_comparator(
    layout: RegisterLayout, wires_a: Sequence[int], wires_b: Sequence[int], ancilla: int
) -> list[PlacedGate]:
    return normalize(invert_gates(synth_comparator(layout, wires_a, wires_b, ancilla)), layout.d)


def normalize(gates: Sequence[PlacedGate], d: int) -> list[PlacedGate]:
    """Canonical powers for a uniform dimension-d register.

    Powers of X and Z are reduced mod d (identity gates dropped), and at d=2
    decrements become increments, so binary netlists read as plain NOT/CNOT/MCT.
    """
    out = []
    for g in gates:
        kind = g.kind
        if isinstance(kind, (Not, Phase)) and kind.levels is None:
            p = kind.power % d
            if p == 0:
                continue
            kind = type(kind)(p)
        elif isinstance(kind, (Increment, MCT)) and kind.levels is None and d == 2 and kind.step == -1:
            kind = type(kind)(1)
        out.append(PlacedGate(kind, g.target, g.controls))
    return out


def classical_coloring_check(assignment: Sequence[int], graph: Graph, k: int) -> bool:
    if any(not 0 <= col < k for col in assignment):
        return False
    return all(assignment[i] != assignment[j] for i, j in graph.edges)


@dataclass(frozen=True)
class OracleCircuit:
    graph: Graph
    layout: RegisterLayout
    circuit: Circuit
    kickback: str

    def colors(self, data_digits: Sequence[int]) -> list[int]:
        c, d = self.layout.c, self.layout.d
        out = []
        for v in range(self.layout.n):
            value = 0
            for digit in data_digits[v * c : (v + 1) * c]:
                value = value * d + digit
            out.append(value)
        return out

    def marked_predicate(self, data_digits: Sequence[int]) -> bool:
        return classical_coloring_check(self.colors(data_digits), self.graph, self.layout.k)

    @property
    def marked_phase(self) -> complex:
        d = self.layout.d
        if self.kickback == "pi-phase":
            return -1.0
        return complex(np.exp(2j * np.pi * ((d - 1) * (d - 1) % d) / d))


def synth_oracle(graph: Graph, k: int, d: int, kickback: str = "paper-exact") -> OracleCircuit:
    if kickback not in KICKBACK_MODES:
        raise ParameterError(f"kickback must be one of {KICKBACK_MODES}, got {kickback!r}")
    layout = plan_layout(graph, k, d)
    sched = layout.schedule

    compute: list[PlacedGate] = []
    for step in sched.steps:
        a = layout.vertex_wires(step.vertex)
        for j, slot in zip(step.neighbors, step.slots):
            compute += synth_comparator(layout, a, layout.vertex_wires(j), layout.ancilla(slot))
        if step.fold_into is not None:
            verdicts = tuple((layout.ancilla(s), d - 1) for s in step.slots)
            compute.append(PlacedGate(MCT(), layout.ancilla(step.fold_into), verdicts))
            for j, slot in zip(step.neighbors, step.slots):
                compute += synth_inverse_comparator(layout, a, layout.vertex_wires(j), layout.ancilla(slot))

    # a fold target drops d-1 -> 0 when all of its vertex's edges are proper
    controls = [(layout.ancilla(s), d - 1) for s in sched.direct]
    controls += [(layout.ancilla(s), 0) for s in sched.folds]
    if layout.has_invalid_flag:
        controls.append((layout.flag_wire, d - 1))
    controls = tuple(sorted(controls))
    if kickback == "paper-exact":
        kick = PlacedGate(MCT(), layout.output_wire, controls)
    else:
        kick = PlacedGate(DiagonalPhase((0.5,) * d), layout.output_wire, controls)

    icd = synth_icd(layout) if layout.has_invalid_flag else []
    gates = icd + compute + [kick] + normalize(invert_gates(compute), d) + normalize(invert_gates(icd), d)
    circuit = Circuit(layout.dims, tuple(gates), layout.roles)
    return OracleCircuit(graph, layout, circuit, kickback)


def data_assignments(layout: RegisterLayout, limit: int = 1 << 20) -> np.ndarray:
    """All data-register digit vectors in ascending mixed-radix order."""
    total = layout.d**layout.m
    if total > limit:
        raise ResourceError(f"{total} data assignments exceed the enumeration guard of {limit}")
    if layout.m == 0:
        return np.zeros((1, 0), dtype=int)
    return np.array(list(product(range(layout.d), repeat=layout.m)), dtype=int)


def marked_states(graph: Graph, k: int, d: int, limit: int = 1 << 20) -> list[str]:
    """Basis strings (data wires only) of every proper k-coloring, ascending."""
    layout = plan_layout(graph, k, d)
    digits = data_assignments(layout, limit)
    weights = d ** np.arange(layout.c - 1, -1, -1)
    colors = digits.reshape(len(digits), layout.n, layout.c) @ weights
    ok = np.all(colors < k, axis=1)
    for i, j in graph.edges:
        ok &= colors[:, i] != colors[:, j]
    return [basis_string(row) for row in digits[ok]]


def output_state(d: int) -> np.ndarray:
    """F_d |d-1>, the output wire's prepared state."""
    return Hadamard().matrix(d)[:, d - 1]


def oracle_phases(oracle: OracleCircuit) -> tuple[np.ndarray, np.ndarray]:
    """Simulate the oracle on every data basis input.

    Returns ``(phases, residuals)``: for input x, ``phases[x]`` is the overlap
    of the output with the input and ``residuals[x]`` the norm of whatever is
    left after removing that component. A residual of zero means every
    ancilla, flag and output wire came back exactly as prepared.
    """
    layout = oracle.layout
    d, m = layout.d, layout.m
    dims = layout.dims
    inputs = data_assignments(layout)
    batch = len(inputs)
    if math.prod(dims) * batch > 1 << 24:
        raise ResourceError("exhaustive oracle check too large for dense simulation")

    rest = np.zeros(d ** (len(dims) - m - 1), dtype=complex)
    anc = layout.initial_digits()[:-1]
    idx = 0
    for digit in anc:
        idx = idx * d + digit
    rest[idx] = 1.0
    tail = np.kron(rest, output_state(d))  # ancillas, flag, output

    columns = np.zeros((d**m, batch), dtype=complex)
    columns[np.arange(batch), np.arange(batch)] = 1.0
    start = np.einsum("xb,t->xtb", columns, tail).reshape(tuple(dims) + (batch,))
    state = start.copy()
    for g in oracle.circuit.gates:
        apply_to_tensor(state, dims, g)

    start = start.reshape(-1, batch)
    state = state.reshape(-1, batch)
    phases = np.einsum("ib,ib->b", start.conj(), state)
    residuals = np.linalg.norm(state - start * phases, axis=0)
    return phases, residuals
