#!/usr/bin/env python3
"""Sweep the predictor against the exact computation over a graph corpus.

Covers every connected simple graph up to --atlas-max vertices (via the
networkx graph atlas) plus --random seeded random connected graphs on
--random-sizes vertices.  Exits nonzero on the first mismatch.
"""
import argparse
import random
import sys
from concurrent.futures import ProcessPoolExecutor

import networkx as nx

from confighom.complexes import build_complex
from confighom.connectivity import predict_h1
from confighom.graphs import Graph
from confighom.homology import h1


def check(g: Graph) -> tuple[bool, str, str]:
    p = predict_h1(g, 2).group
    o = h1(build_complex(g, 2))
    return (p.rank, p.torsion) == (o.rank, o.torsion), p.render(), o.render()


def atlas_graphs(max_vertices):
    for ng in nx.graph_atlas_g():
        if 2 <= ng.number_of_nodes() <= max_vertices and nx.is_connected(ng):
            relabel = {v: i for i, v in enumerate(sorted(ng.nodes))}
            yield Graph(ng.number_of_nodes(),
                        tuple((relabel[u], relabel[v]) for u, v in ng.edges))


def random_graphs(count, sizes, seed):
    rng = random.Random(seed)
    made = 0
    while made < count:
        nv = rng.choice(sizes)
        ng = nx.gnp_random_graph(nv, rng.uniform(0.25, 0.6),
                                 seed=rng.randint(0, 10 ** 9))
        if nx.is_connected(ng):
            made += 1
            yield Graph(nv, tuple(ng.edges))


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--atlas-max", type=int, default=7)
    ap.add_argument("--random", type=int, default=200)
    ap.add_argument("--random-sizes", type=int, nargs="+", default=[8, 9])
    ap.add_argument("--seed", type=int, default=97)
    ap.add_argument("--workers", type=int, default=None)
    args = ap.parse_args()

    graphs = list(atlas_graphs(args.atlas_max))
    graphs += list(random_graphs(args.random, tuple(args.random_sizes),
                                 args.seed))
    print(f"checking {len(graphs)} graphs")

    failures = 0
    with ProcessPoolExecutor(max_workers=args.workers) as pool:
        for g, (ok, pred, oracle) in zip(graphs, pool.map(check, graphs)):
            if not ok:
                failures += 1
                print(f"MISMATCH {g}: predicted {pred}, computed {oracle}")
    print("all match" if failures == 0 else f"{failures} mismatches")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
