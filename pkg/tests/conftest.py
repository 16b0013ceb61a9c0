import random

import pytest
from hypothesis import strategies as st

from confighom.graphs import Graph


@st.composite
def connected_graphs(draw, min_vertices=2, max_vertices=7):
    """Random connected simple graph built from a spanning tree plus extras."""
    nv = draw(st.integers(min_vertices, max_vertices))
    edges = []
    for v in range(1, nv):
        edges.append((draw(st.integers(0, v - 1)), v))
    possible = [(u, v) for u in range(nv) for v in range(u + 1, nv)
                if (u, v) not in edges]
    extra = draw(st.lists(st.sampled_from(possible), unique=True,
                          max_size=min(len(possible), 6))) if possible else []
    return Graph(nv, tuple(edges) + tuple(extra))


@pytest.fixture
def rng():
    return random.Random(20260823)
