#!/usr/bin/env python3
"""Realize prescribed exchange statistics on a graph, or show why you can't.

Solves for a topological gauge potential whose flux on every exchange
generator is the requested phase, then reports the flux on each spanning
cycle.  On graphs whose H1 carries Z_2 torsion (e.g. K5) only phases that
are multiples of 1/2 are realizable on the torsion generators.
"""
import argparse
import sys
from fractions import Fraction

from confighom.complexes import build_complex
from confighom.gauge import GaugeError, flux, solve_from_fluxes
from confighom.graphs import (complete_bipartite, complete_graph, lasso_graph,
                              octahedron_graph, wheel_graph)
from confighom.spanning import spanning_set

FIXTURES = {
    "lasso": lasso_graph,
    "k4": lambda: complete_graph(4),
    "k5": lambda: complete_graph(5),
    "k33": lambda: complete_bipartite(3, 3),
    "w4": lambda: wheel_graph(4),
    "octahedron": octahedron_graph,
}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("graph", choices=sorted(FIXTURES))
    ap.add_argument("--phase", default="1/3",
                    help="exchange phase in turns, e.g. 1/3 or 1/2")
    args = ap.parse_args()

    g = FIXTURES[args.graph]()
    phase = Fraction(args.phase)
    c = build_complex(g, 2)
    cycles = spanning_set(g, 2)
    targets = [(cyc.chain, phase) for cyc in cycles if cyc.kind == "Y"]
    print(f"{args.graph}: requesting phase {phase} on "
          f"{len(targets)} exchange cycles")
    try:
        p = solve_from_fluxes(c, targets)
    except GaugeError as exc:
        print(f"impossible: {exc}")
        return 1
    for cyc in cycles:
        print(f"  {cyc.kind:>2} {cyc.provenance}: flux {flux(p, cyc.chain) % 1}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
