"""Graph instances: parsing, validation and a few small generators.

Files number vertices from 1; :class:`Graph` stores them from 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from .errors import GraphValidationError

FORMATS = ("edge-list", "adjacency-json", "dimacs-col")


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 1:
            raise GraphValidationError(f"graph needs at least one vertex, got n={self.n}")
        norm = set()
        for i, j in self.edges:
            if i == j:
                raise GraphValidationError(f"self-loop on vertex {i + 1}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise GraphValidationError(f"edge ({i + 1}, {j + 1}) out of range for n={self.n}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        edges = list(edges)
        seen = set()
        for i, j in edges:
            key = (min(i, j), max(i, j))
            if key in seen:
                raise GraphValidationError(f"duplicate edge ({i + 1}, {j + 1})")
            seen.add(key)
        return cls(n, frozenset(edges))

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def adjacency(graph: Graph) -> np.ndarray:
    a = np.zeros((graph.n, graph.n), dtype=int)
    for i, j in graph.edges:
        a[i, j] = a[j, i] = 1
    return a


def from_adjacency(matrix) -> Graph:
    a = np.asarray(matrix)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise GraphValidationError(f"adjacency matrix must be square, got shape {a.shape}")
    n = a.shape[0]
    edges = []
    for i in range(n):
        if a[i, i] != 0:
            raise GraphValidationError(f"self-loop: a({i + 1},{i + 1})={a[i, i]}")
        for j in range(i + 1, n):
            if a[i, j] not in (0, 1) or a[j, i] not in (0, 1):
                raise GraphValidationError(f"entry a({i + 1},{j + 1}) must be 0 or 1")
            if a[i, j] != a[j, i]:
                raise GraphValidationError(
                    f"asymmetric matrix: a({i + 1},{j + 1})={a[i, j]} but a({j + 1},{i + 1})={a[j, i]}"
                )
            if a[i, j]:
                edges.append((i, j))
    return Graph(n, frozenset(edges))


def _vertex(tok: str, n: int, lineno: int) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise GraphValidationError(f"line {lineno}: vertex {tok!r} is not an integer") from None
    if not 1 <= v <= n:
        raise GraphValidationError(f"line {lineno}: vertex {v} out of range 1..{n}")
    return v - 1


def _parse_edge_list(text: str) -> Graph:
    rows = [(no, ln.split("#", 1)[0].split()) for no, ln in enumerate(text.splitlines(), 1)]
    rows = [(no, toks) for no, toks in rows if toks]
    if not rows:
        raise GraphValidationError("empty edge list")
    no, first = rows[0]
    if len(first) != 1:
        raise GraphValidationError(f"line {no}: first line must hold the vertex count")
    try:
        n = int(first[0])
    except ValueError:
        raise GraphValidationError(f"line {no}: vertex count {first[0]!r} is not an integer") from None
    if n < 1:
        raise GraphValidationError(f"line {no}: vertex count must be >= 1")
    edges = []
    for no, toks in rows[1:]:
        if len(toks) != 2:
            raise GraphValidationError(f"line {no}: expected 'i j', got {' '.join(toks)!r}")
        i, j = _vertex(toks[0], n, no), _vertex(toks[1], n, no)
        if i == j:
            raise GraphValidationError(f"line {no}: self-loop on vertex {i + 1}")
        edges.append((i, j))
    return Graph.from_edges(n, edges)


def _parse_adjacency_json(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphValidationError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or "adj" not in data:
        raise GraphValidationError('adjacency JSON must be an object with an "adj" matrix')
    g = from_adjacency(data["adj"])
    if "n" in data and data["n"] != g.n:
        raise GraphValidationError(f'"n"={data["n"]} disagrees with a {g.n}x{g.n} matrix')
    return g


def _parse_dimacs(text: str) -> Graph:
    n: Optional[int] = None
    edges = []
    seen = set()
    for no, line in enumerate(text.splitlines(), 1):
        toks = line.split()
        if not toks:
            continue
        if toks[0] == "p":
            if len(toks) < 4 or toks[1] not in ("edge", "col"):
                raise GraphValidationError(f"line {no}: expected 'p edge N M'")
            n = int(toks[2])
        elif toks[0] == "e":
            if n is None:
                raise GraphValidationError(f"line {no}: edge before 'p edge' line")
            if len(toks) < 3:
                raise GraphValidationError(f"line {no}: expected 'e i j'")
            i, j = _vertex(toks[1], n, no), _vertex(toks[2], n, no)
            if i == j:
                raise GraphValidationError(f"line {no}: self-loop on vertex {i + 1}")
            key = (min(i, j), max(i, j))
            # DIMACS files commonly list both directions of an edge
            if key not in seen:
                seen.add(key)
                edges.append(key)
    if n is None:
        raise GraphValidationError("missing 'p edge' line")
    return Graph(n, frozenset(edges))


def parse_graph(text: str, format: str = "edge-list") -> Graph:
    if not text.strip():
        raise GraphValidationError("empty graph text")
    if format == "edge-list":
        return _parse_edge_list(text)
    if format == "adjacency-json":
        return _parse_adjacency_json(text)
    if format == "dimacs-col":
        return _parse_dimacs(text)
    raise GraphValidationError(f"unknown graph format {format!r}; choose from {', '.join(FORMATS)}")


def guess_format(path: str | Path) -> str:
    suffix = Path(path).suffix.lower()
    if suffix == ".json":
        return "adjacency-json"
    if suffix in (".col", ".dimacs"):
        return "dimacs-col"
    return "edge-list"


def load_graph(path: str | Path, format: Optional[str] = None) -> Graph:
    text = Path(path).read_text(encoding="utf-8")
    return parse_graph(text, format or guess_format(path))


def to_edge_list(graph: Graph) -> str:
    lines = [str(graph.n)] + [f"{i + 1} {j + 1}" for i, j in graph.sorted_edges()]
    return "\n".join(lines) + "\n"


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(combinations(range(n), 2)))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphValidationError("a cycle needs at least 3 vertices")
    return Graph(n, frozenset((min(i, (i + 1) % n), max(i, (i + 1) % n)) for i in range(n)))


def empty_graph(n: int) -> Graph:
    return Graph(n, frozenset())


def star_graph(n: int) -> Graph:
    """Vertex 1 joined to every other vertex (the ternary experiment's graph for n=3)."""
    return Graph(n, frozenset((0, j) for j in range(1, n)))
