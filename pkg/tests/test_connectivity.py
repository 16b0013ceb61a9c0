"""Connectivity decomposition and the closed-form H1 predictor."""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from confighom.complexes import build_complex
from confighom.connectivity import (alpha_star, alpha_star_recursive,
                                    beta_star, beta_star_inclusion_exclusion,
                                    connectivity_level, cut_vertices,
                                    decompose, gamma_star, is_planar,
                                    n1_of_cut, n1_two_particle, n2_of_cut,
                                    predict_h1, two_separations)
from confighom.graphs import (Graph, betti1, complete_bipartite,
                              complete_graph, cycle_graph, lasso_graph,
                              octahedron_graph, prism_graph, star_graph,
                              sufficiently_subdivide, wheel_graph)
from confighom.homology import h1
from conftest import connected_graphs


def theta_graph():
    """Two hubs joined by three internally disjoint length-2 paths."""
    return Graph(5, ((0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)))


def test_cut_vertices_lasso():
    cuts = cut_vertices(lasso_graph())
    assert [(c.vertices, c.mu, c.nu) for c in cuts] == [((1,), 2, 3)]


def test_two_separations_requires_biconnected():
    with pytest.raises(ValueError):
        two_separations(lasso_graph())


def test_two_separations_theta():
    cuts = two_separations(theta_graph())
    assert [(c.vertices, c.mu) for c in cuts] == [((0, 1), 3)]


def test_connectivity_levels():
    assert connectivity_level(star_graph(3)) == 1
    assert connectivity_level(cycle_graph(4)) == 2
    assert connectivity_level(complete_graph(5)) >= 3


def test_planarity():
    assert is_planar(wheel_graph(5))
    assert is_planar(octahedron_graph())
    assert not is_planar(complete_graph(5))
    assert not is_planar(complete_bipartite(3, 3))


def test_decompose_cycle_is_atomic():
    comps, cuts = decompose(cycle_graph(6))
    assert cuts == []
    assert len(comps) == 1 and comps[0].kind == "topological-cycle"


def test_decompose_k5_is_atomic():
    comps, cuts = decompose(complete_graph(5))
    assert cuts == []
    assert len(comps) == 1 and comps[0].kind == "nonplanar-3-connected"


def test_decompose_theta():
    comps, cuts = decompose(theta_graph())
    assert len(cuts) == 1 and cuts[0].kind == "pair" and cuts[0].mu == 3
    assert len(comps) == 3
    assert all(m.kind == "topological-cycle" for m in comps)


def test_decompose_lasso_drops_pendant():
    comps, cuts = decompose(lasso_graph())
    assert len(comps) == 1 and comps[0].kind == "topological-cycle"
    assert cuts[0].kind == "vertex" and cuts[0].mu == 2


def test_n_counts_small_values():
    assert n2_of_cut(2) == 0
    assert n2_of_cut(3) == 1
    assert n1_of_cut(2, 3, 2) == 1  # pendant triangle, two particles
    assert n1_two_particle(2, 3) == 1


def test_predict_one_particle():
    p = predict_h1(wheel_graph(4), 1)
    assert p.group.render() == "Z^4"


def test_predict_fixture_groups():
    assert predict_h1(complete_graph(5), 2).group.render() == "Z^6 + Z_2"
    assert predict_h1(complete_bipartite(3, 3), 2).group.render() == "Z^4 + Z_2"
    assert predict_h1(octahedron_graph(), 2).group.render() == "Z^8"
    assert predict_h1(theta_graph(), 2).group.render() == "Z^3"
    assert predict_h1(lasso_graph(), 2).group.render() == "Z^2"


def test_alpha_identity_full_range():
    for e in range(2, 13):
        for k in range(2, e + 1):
            assert alpha_star(k, e) == alpha_star_recursive(k, e)


def test_beta_identity():
    for e in range(3, 9):
        for n in range(2, 9):
            assert beta_star(n, e) == beta_star_inclusion_exclusion(n, e)


def test_n1_two_particle_identity():
    for nu in range(2, 13):
        for mu in range(2, nu + 1):
            assert n1_of_cut(mu, nu, 2) == n1_two_particle(mu, nu)


def test_star_values():
    assert beta_star(3, 3) == 3
    assert beta_star(4, 5) == 71
    assert gamma_star(2, 3) == 1


@settings(max_examples=25, deadline=None)
@given(connected_graphs(min_vertices=3, max_vertices=7))
def test_predictor_matches_oracle_two_particles(g):
    p = predict_h1(g, 2)
    gs, _ = sufficiently_subdivide(g, 2)
    o = h1(build_complex(gs, 2))
    assert (p.group.rank, p.group.torsion) == (o.rank, o.torsion)


def test_bookkeeping_beta1_consistency():
    for g in (wheel_graph(4), theta_graph(), complete_graph(5),
              prism_graph(), lasso_graph()):
        comps, cuts = decompose(g)
        pair_cuts = sum(1 for c in cuts if c.kind == "pair")
        assert sum(betti1(m.graph) for m in comps) == betti1(g) + pair_cuts
