"""Generalized single-wire qudit gate kinds and their matrices.

Every kind describes the unitary applied to the *target* wire. Controls are
not part of the kind; they live on :class:`~qudit_coloring.circuit.PlacedGate`.

Several kinds take an optional ``levels`` argument. When set, the gate acts on
the lowest ``levels`` basis states of the wire and as the identity above them.
This is how a d-level gate is embedded in a wire that temporarily runs at a
larger dimension (d+1 or d+2) during MCT decomposition.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from typing import Optional, Union

import numpy as np

from .errors import ParameterError


def omega(d: int) -> complex:
    return cmath.exp(2j * math.pi / d)


def _active(levels: Optional[int], dim: int) -> int:
    if levels is None:
        return dim
    if not 2 <= levels <= dim:
        raise ParameterError(f"levels={levels} invalid for wire of dimension {dim}")
    return levels


def _shift(power: int, levels: int, dim: int) -> np.ndarray:
    m = np.eye(dim, dtype=complex)
    m[:levels, :levels] = 0
    for j in range(levels):
        m[(j + power) % levels, j] = 1
    return m


@dataclass(frozen=True)
class Not:
    """Generalized NOT ``X_d**power``: |j> -> |(j + power) mod d>."""

    power: int = 1
    levels: Optional[int] = None

    name = "not"

    def matrix(self, dim: int) -> np.ndarray:
        return _shift(self.power, _active(self.levels, dim), dim)

    def inverse(self) -> "Not":
        return Not(-self.power, self.levels)


@dataclass(frozen=True)
class Phase:
    """Generalized phase shift ``Z_d**power`` = diag(1, w, w^2, ...)**power."""

    power: int = 1
    levels: Optional[int] = None

    name = "phase"

    def matrix(self, dim: int) -> np.ndarray:
        n = _active(self.levels, dim)
        w = omega(n)
        diag = [w ** ((self.power * j) % n) for j in range(n)] + [1.0] * (dim - n)
        return np.diag(np.array(diag, dtype=complex))

    def inverse(self) -> "Phase":
        return Phase(-self.power, self.levels)


@dataclass(frozen=True)
class Hadamard:
    """Generalized Hadamard (the d-point DFT), or its conjugate transpose."""

    dagger: bool = False
    levels: Optional[int] = None

    name = "hadamard"

    def matrix(self, dim: int) -> np.ndarray:
        n = _active(self.levels, dim)
        j = np.arange(n)
        f = np.exp(2j * np.pi * np.outer(j, j) / n) / math.sqrt(n)
        if self.dagger:
            f = f.conj().T
        m = np.eye(dim, dtype=complex)
        m[:n, :n] = f
        return m

    def inverse(self) -> "Hadamard":
        return Hadamard(not self.dagger, self.levels)


@dataclass(frozen=True)
class Increment:
    """Controlled increment (step +1) or decrement (step -1) of the target."""

    step: int = 1
    levels: Optional[int] = None

    name = "inc"

    def __post_init__(self):
        if self.step not in (1, -1):
            raise ParameterError(f"increment step must be +1 or -1, got {self.step}")

    def matrix(self, dim: int) -> np.ndarray:
        return _shift(self.step, _active(self.levels, dim), dim)

    def inverse(self) -> "Increment":
        return Increment(-self.step, self.levels)


@dataclass(frozen=True)
class MCT:
    """Multi-controlled Toffoli: increments the target when every control matches.

    ``step=-1`` is the inverse gate. Which values the controls must hold is
    recorded per control on the placed gate, usually d-1 for all of them.
    """

    step: int = 1
    levels: Optional[int] = None

    name = "mct"

    def __post_init__(self):
        if self.step not in (1, -1):
            raise ParameterError(f"MCT step must be +1 or -1, got {self.step}")

    def matrix(self, dim: int) -> np.ndarray:
        return _shift(self.step, _active(self.levels, dim), dim)

    def inverse(self) -> "MCT":
        return MCT(-self.step, self.levels)


@dataclass(frozen=True)
class Permutation:
    """Basis permutation |j> -> |perm[j]>; identity on levels beyond len(perm)."""

    perm: tuple[int, ...]

    name = "perm"

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(int(p) for p in self.perm))
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ParameterError(f"{self.perm} is not a bijection on 0..{len(self.perm) - 1}")

    def matrix(self, dim: int) -> np.ndarray:
        if len(self.perm) > dim:
            raise ParameterError(f"permutation of size {len(self.perm)} on a dim-{dim} wire")
        m = np.eye(dim, dtype=complex)
        n = len(self.perm)
        m[:n, :n] = 0
        for j, p in enumerate(self.perm):
            m[p, j] = 1
        return m

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.perm)
        for j, p in enumerate(self.perm):
            inv[p] = j
        return Permutation(tuple(inv))


@dataclass(frozen=True)
class DiagonalPhase:
    """diag(exp(2*pi*i*t) for t in turns); phases are stored as fractions of a turn.

    Storing turns instead of complex numbers keeps netlists bit-exact: 0.5 is
    exactly -1 and serializes as ``0.5``.
    """

    turns: tuple[float, ...]

    name = "diag"

    def __post_init__(self):
        object.__setattr__(self, "turns", tuple(float(t) for t in self.turns))
        if not self.turns:
            raise ParameterError("diagonal phase needs at least one entry")

    def matrix(self, dim: int) -> np.ndarray:
        if len(self.turns) > dim:
            raise ParameterError(f"{len(self.turns)} phases on a dim-{dim} wire")
        diag = [cmath.exp(2j * math.pi * t) for t in self.turns]
        diag += [1.0] * (dim - len(self.turns))
        return np.diag(np.array(diag, dtype=complex))

    def inverse(self) -> "DiagonalPhase":
        return DiagonalPhase(tuple(-t for t in self.turns))


GateKind = Union[Not, Phase, Hadamard, Increment, MCT, Permutation, DiagonalPhase]
KIND_TYPES = (Not, Phase, Hadamard, Increment, MCT, Permutation, DiagonalPhase)


def gate_matrix(kind: GateKind, dim: int) -> np.ndarray:
    """Return the ``dim x dim`` unitary that ``kind`` applies to its target wire."""
    if dim < 2:
        raise ParameterError(f"wire dimension must be >= 2, got {dim}")
    if not isinstance(kind, KIND_TYPES):
        raise ParameterError(f"unknown gate kind {kind!r}")
    return kind.matrix(dim)


def embed(kind: GateKind, d: int) -> GateKind:
    """Restrict ``kind`` to the lowest ``d`` levels of a larger wire."""
    if isinstance(kind, (Not, Phase, Hadamard, Increment, MCT)) and kind.levels is None:
        return replace(kind, levels=d)
    # Permutation and DiagonalPhase already act as identity past their length.
    return kind
