import pytest

from qudit_coloring.errors import GraphValidationError
from qudit_coloring.graphs import (
    Graph,
    adjacency,
    complete_graph,
    cycle_graph,
    load_graph,
    parse_graph,
    star_graph,
    to_edge_list,
)

K3 = complete_graph(3)


def test_formats_agree(graph_dir):
    assert load_graph(graph_dir / "k3.txt") == K3
    assert load_graph(graph_dir / "k3.col") == K3
    assert load_graph(graph_dir / "k3.json") == K3


def test_dimacs_both_directions():
    g = parse_graph("p edge 3 4\ne 1 2\ne 2 1\ne 2 3\ne 3 2\n", "dimacs-col")
    assert g == Graph(3, frozenset({(0, 1), (1, 2)}))


def test_edge_list_roundtrip():
    g = cycle_graph(5)
    assert parse_graph(to_edge_list(g)) == g


def test_generators():
    assert len(complete_graph(5).edges) == 10
    assert star_graph(3).sorted_edges() == [(0, 1), (0, 2)]
    assert adjacency(star_graph(3)).sum() == 4


@pytest.mark.parametrize("text, fmt", [
    ("3\n1 1\n", "edge-list"),
    ("3\n1 4\n", "edge-list"),
    ("3\n1 2\n2 1\n", "edge-list"),
    ("3\n1\n", "edge-list"),
    ("", "edge-list"),
    ('{"adj": [[0,1],[0,0]]}', "adjacency-json"),
    ('{"adj": [[1,0],[0,0]]}', "adjacency-json"),
    ('{"adj": [[0,2],[2,0]]}', "adjacency-json"),
    ('{"n": 3, "adj": [[0,1],[1,0]]}', "adjacency-json"),
    ("not json", "adjacency-json"),
    ("e 1 2\n", "dimacs-col"),
    ("p edge 2 1\ne 1 1\n", "dimacs-col"),
    ("3\n", "gml"),
])
def test_invalid_graphs(text, fmt):
    with pytest.raises(GraphValidationError):
        parse_graph(text, fmt)
