"""Circuit intermediate representation: placed gates over a mixed-radix wire layout."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import ParameterError, StructuralError
from .gates import KIND_TYPES, GateKind, gate_matrix

WIRE_ROLES = ("data", "ancilla", "flag", "output", "scratch")


@dataclass(frozen=True)
class PlacedGate:
    """A gate kind bound to a target wire and zero or more (wire, value) controls."""

    kind: GateKind
    target: int
    controls: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if not isinstance(self.kind, KIND_TYPES):
            raise ParameterError(f"unknown gate kind {self.kind!r}")
        ctrls = tuple((int(w), int(v)) for w, v in self.controls)
        object.__setattr__(self, "controls", ctrls)
        wires = [self.target] + [w for w, _ in ctrls]
        if len(set(wires)) != len(wires):
            raise StructuralError(f"gate {self.kind.name} reuses a wire: {wires}")
        if any(w < 0 for w in wires):
            raise StructuralError(f"negative wire index in {wires}")

    @property
    def wires(self) -> tuple[int, ...]:
        return (self.target,) + tuple(w for w, _ in self.controls)

    @property
    def arity(self) -> int:
        return 1 + len(self.controls)

    def inverse(self) -> "PlacedGate":
        return PlacedGate(self.kind.inverse(), self.target, self.controls)

    def check(self, dims: Sequence[int]) -> None:
        """Raise unless every wire exists in ``dims`` and every value fits."""
        for w in self.wires:
            if w >= len(dims):
                raise StructuralError(
                    f"gate {self.kind.name} references wire {w} but circuit has {len(dims)} wires"
                )
        for w, v in self.controls:
            if not 0 <= v < dims[w]:
                raise ParameterError(f"control value {v} out of range for dim-{dims[w]} wire {w}")
        gate_matrix(self.kind, dims[self.target])


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over wires with fixed local dimensions.

    ``labels`` optionally names each wire's role (see ``WIRE_ROLES``).
    Instances are immutable; :meth:`append` and :meth:`extend` return new circuits.
    """

    dims: tuple[int, ...]
    gates: tuple[PlacedGate, ...] = ()
    labels: Optional[tuple[str, ...]] = field(default=None)

    def __post_init__(self):
        dims = tuple(int(x) for x in self.dims)
        if any(x < 2 for x in dims):
            raise ParameterError(f"wire dimensions must be >= 2: {dims}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(dims):
                raise StructuralError(f"{len(labels)} labels for {len(dims)} wires")
            object.__setattr__(self, "labels", labels)
        for g in self.gates:
            g.check(dims)

    @property
    def num_wires(self) -> int:
        return len(self.dims)

    def __len__(self) -> int:
        return len(self.gates)

    def append(self, gate: PlacedGate) -> "Circuit":
        gate.check(self.dims)
        return Circuit(self.dims, self.gates + (gate,), self.labels)

    def extend(self, gates: Iterable[PlacedGate]) -> "Circuit":
        return Circuit(self.dims, self.gates + tuple(gates), self.labels)

    def with_dims(self, dims: Sequence[int]) -> "Circuit":
        return Circuit(tuple(dims), self.gates, self.labels)


def invert(circuit: Circuit) -> Circuit:
    """Reverse gate order and invert each gate."""
    return Circuit(circuit.dims, tuple(g.inverse() for g in reversed(circuit.gates)), circuit.labels)


def invert_gates(gates: Sequence[PlacedGate]) -> list[PlacedGate]:
    return [g.inverse() for g in reversed(gates)]


def depth(circuit: Circuit) -> int:
    """Length of the longest chain under as-soon-as-possible layering."""
    frontier = [0] * circuit.num_wires
    best = 0
    for g in circuit.gates:
        layer = 1 + max(frontier[w] for w in g.wires)
        for w in g.wires:
            frontier[w] = layer
        best = max(best, layer)
    return best


def gate_count(circuit: Circuit) -> dict:
    """Counts by kind name and by arity (target plus controls)."""
    by_kind = Counter(g.kind.name for g in circuit.gates)
    by_arity = Counter(g.arity for g in circuit.gates)
    return {
        "total": len(circuit.gates),
        "by_kind": dict(sorted(by_kind.items())),
        "by_arity": dict(sorted(by_arity.items())),
    }
