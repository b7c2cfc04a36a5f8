import itertools
import math

import numpy as np
import pytest


def dense_reference(dims, target, local, controls=()):
    """Full unitary of a controlled single-wire matrix, built basis state by basis state."""
    size = math.prod(dims)
    u = np.zeros((size, size), dtype=complex)
    basis = list(itertools.product(*(range(x) for x in dims)))
    index = {b: i for i, b in enumerate(basis)}
    for b in basis:
        col = index[b]
        if all(b[w] == v for w, v in controls):
            for out in range(dims[target]):
                amp = local[out, b[target]]
                if amp != 0:
                    nb = list(b)
                    nb[target] = out
                    u[index[tuple(nb)], col] += amp
        else:
            u[col, col] = 1.0
    return u


@pytest.fixture
def graph_dir(tmp_path):
    (tmp_path / "k3.txt").write_text("3\n1 2\n1 3\n2 3\n")
    (tmp_path / "star3.txt").write_text("3\n1 2\n1 3\n")
    (tmp_path / "k3.col").write_text("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    (tmp_path / "k3.json").write_text('{"n": 3, "adj": [[0,1,1],[1,0,1],[1,1,0]]}')
    return tmp_path
