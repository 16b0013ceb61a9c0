"""Connectivity decomposition and the closed-form H1 predictor.

A connected graph is split first at cut vertices (each piece keeps the cut
vertex), then 2-connected pieces are split at 2-separations (each side keeps
the cut pair plus one virtual edge) until every marked component is a
topological cycle or 3-connected.  The first homology of the n-particle
configuration space is then

    Z^(beta1 + N1 + N2 + N3)  +  Z_2^N3'

where N1 sums a binomial count over cut vertices, N2 counts independent
star exchanges at cut pairs, and N3/N3' count planar/nonplanar 3-connected
components.  This is the closed-form side of the predictor-vs-oracle checks;
it never touches the cell complex.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Optional

import networkx as nx

from .graphs import Graph, GraphError, betti1, is_connected
from .homology import AbelianGroup


@dataclass(frozen=True)
class CutRecord:
    kind: str                          # "vertex" or "pair"
    vertices: tuple[int, ...]          # (v,) or (x, y)
    mu: int                            # component count of the cut
    nu: Optional[int] = None           # degree of a cut vertex; None for pairs

    def __post_init__(self):
        if self.kind not in ("vertex", "pair"):
            raise GraphError("cut kind must be 'vertex' or 'pair'")
        if self.mu < 2:
            raise GraphError("recorded cuts must have mu >= 2")
        if self.kind == "vertex" and (self.nu is None or self.nu < self.mu):
            raise GraphError("cut vertex needs nu >= mu")


@dataclass(frozen=True)
class MarkedComponent:
    graph: Graph                       # local vertex ids 0..k-1
    vertex_ids: tuple[int, ...]        # local id -> original vertex id
    kind: str                          # topological-cycle | planar-3-connected | nonplanar-3-connected
    virtual_edges: tuple[tuple[int, int], ...]  # in original vertex ids


@dataclass(frozen=True)
class Prediction:
    beta1: int
    N1: int
    N2: int
    N3: int
    N3_prime: int
    N3_doubleprime: int
    n_particles: int
    group: AbelianGroup


# ---------------------------------------------------------------------------
# basic connectivity

def _components(vertices: set[int], adj: dict[int, list[int]],
                removed: set[int]) -> list[set[int]]:
    left = set(vertices) - removed
    comps = []
    while left:
        s = min(left)
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w in left and w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(seen)
        left -= seen
    return comps


def cut_vertices(g: Graph) -> list[CutRecord]:
    """Articulation vertices with their component count mu and degree nu."""
    if not is_connected(g):
        raise GraphError("graph not connected")
    adj = g.adjacency()
    verts = set(range(g.vertex_count))
    deg = g.degrees()
    out = []
    for v in sorted(verts):
        comps = _components(verts, adj, {v})
        if len(comps) >= 2:
            out.append(CutRecord("vertex", (v,), len(comps), deg[v]))
    return out


def two_separations(g: Graph) -> list[CutRecord]:
    """Vertex pairs whose deletion disconnects g, with component count mu.

    mu counts the split pieces as in the decomposition: connected components
    of g - {x, y} plus one for every direct edge between x and y (a direct
    edge becomes its own marked component).
    """
    if cut_vertices(g) or g.vertex_count < 3:
        raise GraphError("graph not 2-connected")
    return _two_separations_multi(set(range(g.vertex_count)), list(g.edges))


def _two_separations_multi(vertices: set[int],
                           edges: list[tuple[int, int]]) -> list[CutRecord]:
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    out = []
    for x, y in combinations(sorted(vertices), 2):
        comps = _components(vertices, adj, {x, y})
        if len(comps) >= 2:
            direct = sum(1 for e in edges if e == (min(x, y), max(x, y)))
            out.append(CutRecord("pair", (x, y), len(comps) + direct))
    return out


def connectivity_level(g: Graph) -> int:
    """1 if a cut vertex exists, 2 if only 2-separations exist, else 3 (capped)."""
    if g.vertex_count < 2 or not is_connected(g):
        raise GraphError("need a connected graph with >= 2 vertices")
    if cut_vertices(g):
        return 1
    if g.vertex_count >= 3 and two_separations(g):
        return 2
    return 3


def is_planar(g: Graph) -> bool:
    nxg = nx.MultiGraph()
    nxg.add_nodes_from(range(g.vertex_count))
    nxg.add_edges_from(g.edges)
    ok, _ = nx.check_planarity(nxg)
    return ok


# ---------------------------------------------------------------------------
# decomposition into marked components

def _biconnected_blocks(g: Graph) -> list[list[tuple[int, int]]]:
    """Edge lists of the biconnected blocks, canonically ordered."""
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.vertex_count))
    nxg.add_edges_from(g.edges)
    blocks = [sorted((min(u, v), max(u, v)) for u, v in comp)
              for comp in nx.biconnected_component_edges(nxg)]
    return sorted(blocks)


def _classify(vertices: list[int], edges: list[tuple[int, int]],
              virtual: list[tuple[int, int]]) -> MarkedComponent:
    local = {v: i for i, v in enumerate(vertices)}
    lg = Graph(len(vertices), tuple((local[u], local[v]) for u, v in edges))
    deg = lg.degrees()
    if all(d == 2 for d in deg):
        kind = "topological-cycle"
    else:
        simp = _suppress_degree2(lg)
        kind = "planar-3-connected" if is_planar(simp) else "nonplanar-3-connected"
    return MarkedComponent(lg, tuple(vertices), kind, tuple(virtual))


def _suppress_degree2(g: Graph) -> Graph:
    """Suppress degree-2 vertices; result may be a multigraph."""
    edges = [list(e) for e in g.edges]
    deg = g.degrees()
    alive = [d != 2 for d in deg]
    for v in range(g.vertex_count):
        if alive[v]:
            continue
        inc = [e for e in edges if v in e]
        if len(inc) != 2 or inc[0] is inc[1]:
            alive[v] = True  # degree-2 via a doubled edge: leave in place
            continue
        e1, e2 = inc
        a = e1[0] if e1[1] == v else e1[1]
        b = e2[0] if e2[1] == v else e2[1]
        if a == b == v:
            alive[v] = True
            continue
        edges.remove(e1)
        edges.remove(e2)
        edges.append([a, b])
    keep = sorted({u for e in edges for u in e})
    local = {u: i for i, u in enumerate(keep)}
    return Graph(len(keep), tuple((local[a], local[b]) for a, b in edges))


def _split_two(vertices: list[int], edges: list[tuple[int, int]],
               virtual: list[tuple[int, int]],
               cuts: list[CutRecord], comps: list[MarkedComponent]):
    """Recursively split a 2-connected multigraph piece at 2-separations."""
    vset = set(vertices)
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    deg = {v: len(adj[v]) for v in vertices}
    if all(d == 2 for d in deg.values()):
        comps.append(_classify(vertices, edges, virtual))
        return
    best = None
    for x, y in combinations(sorted(vertices), 2):
        pieces = _components(vset, adj, {x, y})
        if len(pieces) >= 2:
            best = (x, y, pieces)
            break
    if best is None:
        comps.append(_classify(vertices, edges, virtual))
        return
    x, y, pieces = best
    direct = [e for e in edges if e == (min(x, y), max(x, y))]
    mu = len(pieces) + len(direct)
    cuts.append(CutRecord("pair", (x, y), mu))
    ve = (min(x, y), max(x, y))
    for piece in sorted(pieces, key=min):
        pedges = [e for e in edges
                  if (e[0] in piece or e[1] in piece)]
        pverts = sorted(piece | {x, y})
        _split_two(pverts, pedges + [ve], virtual + [ve], cuts, comps)
    for e in direct:
        comps.append(_classify(sorted({x, y}), [e, ve], virtual + [ve]))


def decompose(g: Graph) -> tuple[list[MarkedComponent], list[CutRecord]]:
    """Split g at cut vertices, then at 2-separations, into marked components.

    Components that are trees (single edges after a vertex cut) are dropped.
    The bookkeeping identity sum(beta1(component)) = beta1(g) + #pair-cuts is
    asserted.
    """
    if not g.is_simple():
        raise GraphError("simple graph required")
    if not is_connected(g):
        raise GraphError("graph not connected")

    cuts: list[CutRecord] = list(cut_vertices(g))
    comps: list[MarkedComponent] = []
    pair_cuts: list[CutRecord] = []
    for block in _biconnected_blocks(g):
        if len(block) < 2:
            continue  # bridge: tree-like, no cycles
        vertices = sorted({u for e in block for u in e})
        _split_two(vertices, list(block), [], pair_cuts, comps)
    cuts.extend(pair_cuts)

    total = sum(betti1(comp.graph) for comp in comps)
    n_pair_cuts = sum(1 for c in cuts if c.kind == "pair")
    assert total == betti1(g) + n_pair_cuts, "decomposition bookkeeping failed"
    return comps, cuts


# ---------------------------------------------------------------------------
# closed forms

def n2_of_cut(mu: int) -> int:
    """Independent exchange phases lost at a 2-cut with mu pieces."""
    if mu < 2:
        raise GraphError("mu must be >= 2")
    return (mu - 2) * (mu - 1) // 2


def n1_of_cut(mu: int, nu: int, n: int) -> int:
    """Extra free phases contributed by a cut vertex for n particles."""
    if mu < 2 or nu < mu or n < 2:
        raise GraphError("need nu >= mu >= 2 and n >= 2")
    return comb(n + mu - 2, mu - 1) * (nu - 2) - comb(n + mu - 2, mu - 2) - (nu - mu - 1)


def n1_two_particle(mu: int, nu: int) -> int:
    """Two-particle special case of n1_of_cut, kept as an independent check."""
    return (mu - 1) * (mu - 2) // 2 + (mu - 1) * (nu - mu)


def gamma_star(n: int, E: int) -> int:
    """First Betti number of the n-particle space of the unsubdivided E-star."""
    if not (1 <= n <= E) or E < 2:
        raise GraphError("need 1 <= n <= E and E >= 2")
    return E * comb(E - 1, n - 1) - comb(E + 1, n) + 1


def alpha_star(k: int, E: int) -> int:
    """Closed form (-1)^k C(E-1, k) for the star inclusion-exclusion coefficients."""
    if not (2 <= k <= E):
        raise GraphError("need 2 <= k <= E")
    return (-1) ** k * comb(E - 1, k)


def alpha_star_recursive(k: int, E: int) -> int:
    """The recursion alpha_k^E = gamma_k^E - sum_i C(E,i) alpha_{k-i}^{E-i}."""
    if not (2 <= k <= E):
        raise GraphError("need 2 <= k <= E")
    total = gamma_star(k, E)
    for i in range(1, k - 1):
        total -= comb(E, i) * alpha_star_recursive(k - i, E - i)
    return total


def beta_star(n: int, E: int) -> int:
    """Rank of H1 for n particles on a sufficiently subdivided E-star."""
    if n < 2 or E < 3:
        raise GraphError("need n >= 2 and E >= 3")
    return comb(n + E - 2, E - 1) * (E - 2) - comb(n + E - 2, E - 2) + 1


def beta_star_inclusion_exclusion(n: int, E: int) -> int:
    """The raw double-sum form of beta_star, kept as an executable identity."""
    if n < 2 or E < 3:
        raise GraphError("need n >= 2 and E >= 3")

    def gamma(m: int, ee: int) -> int:
        if m < 1 or m > ee:
            return 0
        return ee * comb(ee - 1, m - 1) - comb(ee + 1, m) + 1

    total = 0
    for m in range(2, E):
        total += comb(n - m + E - 1, E - 1) * gamma(m, E)
        for j in range(1, E - m + 1):
            total += (-1) ** j * comb(n - m - j + E, E - 1) * comb(E, j) * gamma(m - 1, E - j)
    return total


def predict_h1(g: Graph, n: int) -> Prediction:
    """Closed-form H1 of the n-particle configuration space of g."""
    if n < 1:
        raise GraphError("n must be >= 1")
    b1 = betti1(g)
    if not g.is_simple():
        raise GraphError("simple graph required")
    if n == 1:
        return Prediction(b1, 0, 0, 0, 0, 0, 1, AbelianGroup(b1))

    comps, cuts = decompose(g)
    N1 = sum(n1_of_cut(c.mu, c.nu, n) for c in cuts if c.kind == "vertex")
    N2 = sum(n2_of_cut(c.mu) for c in cuts if c.kind == "pair")
    N3 = sum(1 for c in comps if c.kind == "planar-3-connected")
    N3p = sum(1 for c in comps if c.kind == "nonplanar-3-connected")
    N3pp = sum(1 for c in comps if c.kind == "topological-cycle")
    rank = b1 + N1 + N2 + N3
    group = AbelianGroup(rank, (2,) * N3p)
    return Prediction(b1, N1, N2, N3, N3p, N3pp, n, group)
