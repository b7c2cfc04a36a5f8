"""Dense mixed-radix state vectors and exact gate application.

Wire 0 is the most significant digit of the flat amplitude index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .circuit import Circuit, PlacedGate
from .errors import ParameterError, ResourceError, StructuralError
from .gates import gate_matrix

MAX_AMPLITUDES = 1 << 22


def mixed_radix_encode(digits: Sequence[int], dims: Sequence[int]) -> int:
    if len(digits) != len(dims):
        raise ParameterError(f"{len(digits)} digits for {len(dims)} wires")
    index = 0
    for digit, dim in zip(digits, dims):
        if not 0 <= digit < dim:
            raise ParameterError(f"digit {digit} out of range for radix {dim}")
        index = index * dim + digit
    return index


def mixed_radix_decode(index: int, dims: Sequence[int]) -> list[int]:
    total = math.prod(dims)
    if not 0 <= index < total:
        raise ParameterError(f"index {index} out of range for dims {list(dims)}")
    digits = []
    for dim in reversed(dims):
        index, digit = divmod(index, dim)
        digits.append(digit)
    return digits[::-1]


def basis_string(digits: Iterable[int]) -> str:
    digits = list(digits)
    if all(x < 10 for x in digits):
        return "".join(str(x) for x in digits)
    return ",".join(str(x) for x in digits)


def _guard(dims: Sequence[int], batch: int = 1) -> None:
    size = math.prod(dims) * batch
    if size > MAX_AMPLITUDES:
        raise ResourceError(f"state of {size} amplitudes exceeds the dense guard of {MAX_AMPLITUDES}")


@dataclass
class StateVector:
    dims: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        self.dims = tuple(int(x) for x in self.dims)
        if any(x < 2 for x in self.dims):
            raise ParameterError(f"wire dimensions must be >= 2: {self.dims}")
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if self.amplitudes.size != math.prod(self.dims):
            raise ParameterError(
                f"{self.amplitudes.size} amplitudes for dims {self.dims} (need {math.prod(self.dims)})"
            )

    @classmethod
    def basis(cls, digits: Sequence[int], dims: Sequence[int]) -> "StateVector":
        _guard(dims)
        amps = np.zeros(math.prod(dims), dtype=complex)
        amps[mixed_radix_encode(digits, dims)] = 1.0
        return cls(tuple(dims), amps)

    @classmethod
    def uniform(cls, dims: Sequence[int]) -> "StateVector":
        _guard(dims)
        size = math.prod(dims)
        return cls(tuple(dims), np.full(size, 1 / math.sqrt(size), dtype=complex))

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.dims)

    def copy(self) -> "StateVector":
        return StateVector(self.dims, self.amplitudes.copy())


@lru_cache(maxsize=1024)
def _matrix(kind, dim: int) -> np.ndarray:
    return gate_matrix(kind, dim)


def apply_to_tensor(tensor: np.ndarray, dims: Sequence[int], gate: PlacedGate) -> np.ndarray:
    """Apply ``gate`` in place to ``tensor`` of shape ``dims + batch_shape``.

    Trailing axes beyond ``len(dims)`` are treated as independent columns, which
    lets one call evolve every basis input of a dense unitary at once.
    """
    u = _matrix(gate.kind, dims[gate.target])
    index: list = [slice(None)] * tensor.ndim
    for w, v in gate.controls:
        index[w] = v
    index = tuple(index)
    # integer indices drop axes; locate the target inside the remaining view
    axis = gate.target - sum(1 for w, _ in gate.controls if w < gate.target)
    sub = tensor[index]
    out = np.tensordot(u, sub, axes=([1], [axis]))
    tensor[index] = np.moveaxis(out, 0, axis)
    return tensor


def _validate(gate: PlacedGate, dims: Sequence[int]) -> None:
    for w in gate.wires:
        if w >= len(dims):
            raise StructuralError(f"wire {w} out of range for {len(dims)}-wire state")
    gate.check(dims)


def apply_gate(state: StateVector, gate: PlacedGate) -> StateVector:
    """Return a new state with ``gate`` applied."""
    _validate(gate, state.dims)
    t = state.amplitudes.copy().reshape(state.dims)
    apply_to_tensor(t, state.dims, gate)
    return StateVector(state.dims, t.reshape(-1))


def apply_circuit(state: StateVector, circuit: Circuit | Sequence[PlacedGate]) -> StateVector:
    gates = circuit.gates if isinstance(circuit, Circuit) else tuple(circuit)
    if isinstance(circuit, Circuit) and tuple(circuit.dims) != state.dims:
        raise StructuralError(f"circuit dims {circuit.dims} differ from state dims {state.dims}")
    for g in gates:
        _validate(g, state.dims)
    t = state.amplitudes.copy().reshape(state.dims)
    for g in gates:
        apply_to_tensor(t, state.dims, g)
    return StateVector(state.dims, t.reshape(-1))


def circuit_unitary(circuit: Circuit, columns: Optional[Sequence[int]] = None) -> np.ndarray:
    """Dense unitary of ``circuit``; optionally only the listed input columns."""
    dims = circuit.dims
    size = math.prod(dims)
    cols = list(range(size)) if columns is None else list(columns)
    _guard(dims, len(cols))
    t = np.zeros((size, len(cols)), dtype=complex)
    t[cols, np.arange(len(cols))] = 1.0
    t = t.reshape(tuple(dims) + (len(cols),))
    for g in circuit.gates:
        apply_to_tensor(t, dims, g)
    return t.reshape(size, len(cols))


def measure_probabilities(state: StateVector, wires: Sequence[int]) -> dict[str, float]:
    """Exact marginal distribution over ``wires``, keyed by basis string in index order."""
    wires = list(wires)
    if not wires:
        raise ParameterError("need at least one wire to measure")
    if len(set(wires)) != len(wires) or any(not 0 <= w < len(state.dims) for w in wires):
        raise StructuralError(f"bad wire selection {wires} for {len(state.dims)} wires")
    probs = np.abs(state.tensor()) ** 2
    rest = tuple(w for w in range(len(state.dims)) if w not in wires)
    marginal = probs.sum(axis=rest) if rest else probs
    # summing keeps the remaining axes in ascending order; reorder to the request
    order = sorted(wires)
    marginal = np.transpose(marginal, [order.index(w) for w in wires])
    sub_dims = [state.dims[w] for w in wires]
    flat = marginal.reshape(-1)
    return {basis_string(mixed_radix_decode(i, sub_dims)): float(p) for i, p in enumerate(flat)}
