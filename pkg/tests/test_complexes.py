"""Cell enumeration and boundary operators."""
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from confighom.complexes import (boundary1_chain, boundary2_chain,
                                 build_complex, cell1, cell_counts)
from confighom.graphs import (GraphError, complete_graph, cycle_graph,
                              lasso_graph, star_graph)
from conftest import connected_graphs


def test_cell1_canonicalization():
    key, s = cell1([3], 2, 0)
    assert key == ((3,), (0, 2)) and s == -1
    key, s = cell1([3], 0, 2)
    assert key == ((3,), (0, 2)) and s == 1


def test_lasso_counts():
    c = build_complex(lasso_graph(), 2)
    assert cell_counts(c) == (6, 8, 1)


def test_triangle_and_y_counts():
    assert cell_counts(build_complex(cycle_graph(3), 2)) == (3, 3, 0)
    assert cell_counts(build_complex(star_graph(3), 2)) == (6, 6, 0)


def test_k5_two_particles_counts():
    c = build_complex(complete_graph(5), 2)
    assert len(c.cells0) == 10
    # each of the 10 edges excludes its 2 endpoints, leaving 3 spectators
    assert len(c.cells1) == 30
    assert len(c.cells2) == 15


def test_n_equals_one():
    c = build_complex(cycle_graph(4), 1)
    assert cell_counts(c) == (4, 4, 0)


def test_rejects_too_many_particles():
    with pytest.raises(GraphError):
        build_complex(cycle_graph(3), 4)


def test_spectators_disjoint_from_edges():
    c = build_complex(complete_graph(5), 3)
    for spec, (u, v) in c.cells1:
        assert u not in spec and v not in spec
    for spec, e1, e2 in c.cells2:
        occupied = set(spec) | set(e1) | set(e2)
        assert len(occupied) == 5  # n-2 spectators plus 4 distinct endpoints
        assert len(set(e1) | set(e2)) == 4


@settings(max_examples=40, deadline=None)
@given(connected_graphs(max_vertices=6), st.integers(2, 3))
def test_boundary_squares_to_zero(g, n):
    if n > g.vertex_count:
        return
    c = build_complex(g, n)
    for cell in c.cells2:
        total = {}
        for c1, coef in boundary2_chain(cell).items():
            for c0, val in boundary1_chain(c1).items():
                total[c0] = total.get(c0, 0) + coef * val
        assert all(v == 0 for v in total.values())


def test_boundary2_is_a_square():
    chain = boundary2_chain(((7,), (0, 1), (2, 3)))
    assert sorted(abs(v) for v in chain.values()) == [1, 1, 1, 1]
    assert sum(chain.values()) == 0
