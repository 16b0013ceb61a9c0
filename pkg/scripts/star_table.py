#!/usr/bin/env python3
"""Tabulate H1 ranks for n particles on the E-armed star.

Prints the closed-form rank beta(n, E) and, for cases below --verify-limit
0-cells, the exact Smith-normal-form rank alongside it.
"""
import argparse
from math import comb

from confighom.complexes import build_complex
from confighom.connectivity import beta_star
from confighom.graphs import star_graph, sufficiently_subdivide
from confighom.homology import h1


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-arms", type=int, default=6)
    ap.add_argument("--max-particles", type=int, default=5)
    ap.add_argument("--verify-limit", type=int, default=3000,
                    help="verify by SNF when the space has fewer 0-cells")
    args = ap.parse_args()

    print(f"{'E':>3} {'n':>3} {'closed form':>12} {'exact':>8}")
    for e in range(3, args.max_arms + 1):
        for n in range(2, args.max_particles + 1):
            rank = beta_star(n, e)
            gs, _ = sufficiently_subdivide(star_graph(e), n)
            exact = ""
            if comb(gs.vertex_count, n) <= args.verify_limit:
                grp = h1(build_complex(gs, n))
                exact = str(grp.rank)
                assert grp.torsion == ()
                assert grp.rank == rank, (e, n)
            print(f"{e:>3} {n:>3} {rank:>12} {exact:>8}")


if __name__ == "__main__":
    main()
