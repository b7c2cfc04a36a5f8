"""Lowering of multi-controlled gates to gates on at most two wires.

Binary registers use an ancilla-free phase-polynomial construction: the target
is conjugated into the Z basis and the multi-controlled phase is spread over
2**n - 1 controlled phase rotations of angle pi / 2**(n-1), each driven by the
parity of one control subset (enumerated in Gray-code order, parities kept on
the subset's highest control with CNOTs).

Registers with d > 2 run every wire at dimension d + 2 and borrow the two
spare levels: pairs of controls mark success on their second wire as |d>,
and a chain of increments walks the marks along to |d+1>, so that a single
two-wire gate on the last link drives the target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .circuit import Circuit, PlacedGate, invert_gates
from .errors import ParameterError, ResourceError, StructuralError
from .gates import MCT, DiagonalPhase, Hadamard, Increment, Not, Permutation, Phase, embed
from .state import circuit_unitary, mixed_radix_decode, mixed_radix_encode

LEVELS = ("mct", "two-wire")
MAX_DENSE = 4096


def _cnot(control: int, target: int) -> PlacedGate:
    return PlacedGate(Not(1), target, ((control, 1),))


def gray_phase_ladder(controls: Sequence[int], target: int, turns: Sequence[float]) -> list[PlacedGate]:
    """Apply diag(turns) to ``target`` iff every binary control is 1, using 2-wire gates."""
    n = len(controls)
    if n == 0:
        return [PlacedGate(DiagonalPhase(tuple(turns)), target)]
    if n == 1:
        return [PlacedGate(DiagonalPhase(tuple(turns)), target, ((controls[0], 1),))]
    scale = 1 / 2 ** (n - 1)
    content = {c: frozenset([c]) for c in controls}
    lead: Optional[int] = None
    out: list[PlacedGate] = []
    for step in range(1, 2**n):
        code = step ^ (step >> 1)
        subset = frozenset(controls[b] for b in range(n) if code >> b & 1)
        new_lead = controls[code.bit_length() - 1]
        if lead is not None and new_lead != lead:
            out += [_cnot(e, lead) for e in sorted(content[lead] - {lead})]
            content[lead] = frozenset([lead])
        lead = new_lead
        out += [_cnot(e, lead) for e in sorted(content[lead] ^ subset) if e != lead]
        content[lead] = subset
        sign = 1 if len(subset) % 2 else -1
        out.append(PlacedGate(DiagonalPhase(tuple(sign * t * scale for t in turns)), target, ((lead, 1),)))
    out += [_cnot(e, lead) for e in sorted(content[lead] - {lead})]
    return out


def _binary_target(kind) -> tuple[bool, Optional[tuple[float, float]]]:
    """Classify a 2-level target as (needs Hadamard conjugation, diagonal turns)."""
    if isinstance(kind, (Not, Increment, MCT)):
        steps = kind.power if isinstance(kind, Not) else kind.step
        return (True, (0.0, 0.5)) if steps % 2 else (False, None)
    if isinstance(kind, Permutation):
        return (True, (0.0, 0.5)) if kind.perm[:2] == (1, 0) else (False, None)
    if isinstance(kind, DiagonalPhase):
        turns = kind.turns + (0.0,) * (2 - len(kind.turns))
        return False, turns[:2]
    if isinstance(kind, Phase):
        return False, (0.0, (kind.power % 2) / 2)
    raise ParameterError(f"cannot lower a multi-controlled {kind.name} on qubits")


def lower_binary_gate(gate: PlacedGate) -> list[PlacedGate]:
    if gate.arity <= 2:
        return [gate]
    flips = [PlacedGate(Not(1), w) for w, v in gate.controls if v == 0]
    hadamard, turns = _binary_target(gate.kind)
    if turns is None:
        return []
    body = gray_phase_ladder([w for w, _ in gate.controls], gate.target, turns)
    if hadamard:
        h = PlacedGate(Hadamard(), gate.target)
        body = [h] + body + [h]
    return flips + body + flips


def decompose_mct_binary(n_controls: int) -> Circuit:
    """Ancilla-free lowering of the (n+1)-qubit MCT; controls 0..n-1, target n."""
    if n_controls < 1:
        raise ParameterError("need at least one control")
    gate = PlacedGate(MCT(), n_controls, tuple((w, 1) for w in range(n_controls)))
    return Circuit((2,) * (n_controls + 1), tuple(lower_binary_gate(gate)))


def _ladder(controls: Sequence[int], target: int, kind, d: int) -> list[PlacedGate]:
    """Two-wire realization on dim-(d+2) wires; all controls must read d-1."""
    n = len(controls)
    op = embed(kind, d)
    if n == 0:
        return [PlacedGate(op, target)]
    if n == 1:
        return [PlacedGate(op, target, ((controls[0], d - 1),))]
    pairs = [(controls[2 * i], controls[2 * i + 1]) for i in range(n // 2)]
    reps = [b for _, b in pairs]
    marks = [d] * len(pairs)
    if n % 2:
        reps.append(controls[-1])
        marks.append(d - 1)
    up = [PlacedGate(Increment(1), b, ((a, d - 1),)) for a, b in pairs]
    level = marks[0]
    for prev, cur, mark in zip(reps, reps[1:], marks[1:]):
        up.append(PlacedGate(Increment(1), cur, ((prev, level),)))
        level = mark + 1
    return up + [PlacedGate(op, target, ((reps[-1], level),))] + invert_gates(up)


def lower_qudit_gate(gate: PlacedGate, d: int) -> list[PlacedGate]:
    """Lower ``gate`` from a dim-d register onto dim-(d+2) wires."""
    if gate.arity <= 2:
        return [PlacedGate(embed(gate.kind, d), gate.target, gate.controls)]
    shifts = [PlacedGate(Not((d - 1 - v) % d, levels=d), w) for w, v in gate.controls if v != d - 1]
    body = _ladder([w for w, _ in gate.controls], gate.target, gate.kind, d)
    return shifts + body + _unshift(shifts, d)


def _unshift(shifts: Sequence[PlacedGate], d: int) -> list[PlacedGate]:
    return [PlacedGate(Not((-g.kind.power) % d, g.kind.levels), g.target) for g in shifts]


def decompose_toffoli_qudit(d: int) -> Circuit:
    """Two-control MCT on three dim-(d+1) wires using the borrowed level |d>."""
    if d < 2:
        raise ParameterError("dimension must be >= 2")
    up = PlacedGate(Increment(1), 1, ((0, d - 1),))
    flip = PlacedGate(Not(1, levels=d), 2, ((1, d),))
    return Circuit((d + 1,) * 3, (up, flip, up.inverse()))


def decompose_mct_qudit(n_controls: int, d: int) -> Circuit:
    """n-control MCT on dim-(d+2) wires; controls 0..n-1, target n."""
    if n_controls < 2:
        raise ParameterError("need at least two controls")
    if d < 2:
        raise ParameterError("dimension must be >= 2")
    gates = _ladder(list(range(n_controls)), n_controls, MCT(), d)
    return Circuit((d + 2,) * (n_controls + 1), tuple(gates))


def _uniform_dim(circuit: Circuit) -> int:
    if len(set(circuit.dims)) != 1:
        raise StructuralError(f"lowering needs a uniform register, got dims {circuit.dims}")
    return circuit.dims[0]


def canonicalize_controls(gate: PlacedGate, d: int) -> list[PlacedGate]:
    """Conjugate so every control of ``gate`` reads d-1."""
    shifts = [PlacedGate(Not((d - 1 - v) % d), w) for w, v in gate.controls if v != d - 1]
    if not shifts:
        return [gate]
    core = PlacedGate(gate.kind, gate.target, tuple((w, d - 1) for w, _ in gate.controls))
    return shifts + [core] + _unshift(shifts, d)


def lower_circuit(circuit: Circuit, level: str = "two-wire") -> Circuit:
    """Replace multi-controlled gates.

    ``mct``: every multi-controlled gate becomes a plain d-1 controlled gate
    wrapped in single-wire shifts. ``two-wire``: only gates on <= 2 wires
    remain; for d > 2 the returned circuit runs at dimension d + 2.
    A circuit that has nothing to lower comes back unchanged.
    """
    if level not in LEVELS:
        raise ParameterError(f"level must be one of {LEVELS}, got {level!r}")
    if all(g.arity <= 2 for g in circuit.gates):
        return circuit
    d = _uniform_dim(circuit)
    if level == "mct":
        gates = []
        for g in circuit.gates:
            gates += canonicalize_controls(g, d) if g.arity > 2 else [g]
        return Circuit(circuit.dims, tuple(gates), circuit.labels)
    if d == 2:
        gates = []
        for g in circuit.gates:
            gates += lower_binary_gate(g)
        return Circuit(circuit.dims, tuple(gates), circuit.labels)
    gates = []
    for g in circuit.gates:
        gates += lower_qudit_gate(g, d)
    return Circuit((d + 2,) * circuit.num_wires, tuple(gates), circuit.labels)


def lowered_size(gate: PlacedGate, d: int) -> int:
    """Number of gates ``gate`` becomes after two-wire lowering."""
    if gate.arity <= 2:
        return 1
    return len(lower_binary_gate(gate) if d == 2 else lower_qudit_gate(gate, d))


@dataclass(frozen=True)
class Equivalence:
    equal: bool
    max_deviation: float
    leakage: float = 0.0


def _subspace_columns(dims: Sequence[int], sub: Sequence[int]) -> list[int]:
    total = math.prod(sub)
    return [mixed_radix_encode(mixed_radix_decode(i, sub), dims) for i in range(total)]


def verify_equivalence(
    circuit: Circuit,
    reference: Union[Circuit, np.ndarray],
    subspace_dims: Optional[Sequence[int]] = None,
    tol: float = 1e-9,
) -> Equivalence:
    """Compare dense unitaries up to one global phase.

    With ``subspace_dims`` the circuit may run on larger wires; only inputs
    and outputs whose digits stay below ``subspace_dims`` are compared, and
    any amplitude that leaves that subspace is reported as ``leakage``.
    """
    dims = circuit.dims
    if subspace_dims is None:
        subspace_dims = dims
    subspace_dims = tuple(subspace_dims)
    if len(subspace_dims) != len(dims) or any(s > x for s, x in zip(subspace_dims, dims)):
        raise StructuralError(f"subspace {subspace_dims} does not fit inside {dims}")
    if math.prod(dims) > MAX_DENSE:
        raise ResourceError(f"dense comparison over {math.prod(dims)} states exceeds {MAX_DENSE}")

    if isinstance(reference, Circuit):
        if tuple(reference.dims) != subspace_dims:
            raise StructuralError(f"reference dims {reference.dims} differ from {subspace_dims}")
        ref = circuit_unitary(reference)
    else:
        ref = np.asarray(reference, dtype=complex)
    size = math.prod(subspace_dims)
    if ref.shape != (size, size):
        raise StructuralError(f"reference has shape {ref.shape}, expected {(size, size)}")

    cols = _subspace_columns(dims, subspace_dims)
    full = circuit_unitary(circuit, cols)
    block = full[cols, :]
    outside = np.ones(full.shape[0], dtype=bool)
    outside[cols] = False
    leakage = float(np.abs(full[outside]).max()) if outside.any() else 0.0

    pivot = np.unravel_index(np.argmax(np.abs(ref)), ref.shape)
    if abs(block[pivot]) < 1e-12:
        return Equivalence(False, float(np.abs(block - ref).max()), leakage)
    phase = block[pivot] / ref[pivot]
    phase /= abs(phase)
    deviation = float(np.abs(block / phase - ref).max())
    return Equivalence(deviation <= tol and leakage <= tol, deviation, leakage)


def classical_action(gates: Sequence[PlacedGate], digits: Sequence[int], dims: Sequence[int]) -> list[int]:
    """Track a basis state through permutation-type gates without a state vector."""
    state = list(digits)
    for g in gates:
        if any(state[w] != v for w, v in g.controls):
            continue
        k = g.kind
        dim = dims[g.target]
        levels = getattr(k, "levels", None) or dim
        x = state[g.target]
        if isinstance(k, Permutation):
            state[g.target] = k.perm[x] if x < len(k.perm) else x
        elif isinstance(k, (Not, Increment, MCT)):
            shift = k.power if isinstance(k, Not) else k.step
            state[g.target] = (x + shift) % levels if x < levels else x
        else:
            raise ParameterError(f"{k.name} is not a basis permutation")
    return state
