"""Shared test utilities: tiny graphs, oracles, and reference simulations."""

from __future__ import annotations

import random

from planarsp import oracles
from planarsp.instances import annulus_grid, delaunay_like, grid
from planarsp.monge_rmq import INF, random_monge
from planarsp.planar_core import build_graph


def oracle_dist(g, source):
    """Independent adjacency-list Dijkstra over the embedded graph."""
    return oracles.dijkstra(g.adjacency(), source)


def square_cycle(lengths=(1, 2, 3, 4)):
    """A 4-cycle 0-1-2-3 with the given clockwise edge lengths (both ways)."""
    a, b, c, d = lengths
    arcs = []
    for (u, v), ln in zip(((0, 1), (1, 2), (2, 3), (3, 0)), (a, b, c, d)):
        arcs.append((u, v, ln, 10))
        arcs.append((v, u, ln, 10))
    rots = [(1, 3), (2, 0), (3, 1), (0, 2)]
    return build_graph(4, arcs, rots)


def star(leaves=4, length=5):
    """A center vertex 0 joined to ``leaves`` rim vertices."""
    arcs = []
    for v in range(1, leaves + 1):
        arcs.append((0, v, length, 7))
        arcs.append((v, 0, length, 7))
    rots = [tuple(range(1, leaves + 1))] + [(0,)] * leaves
    return build_graph(leaves + 1, arcs, rots)


FAMILIES = {
    "grid-small": lambda seed: grid(16, 16, seed),
    "grid-large": lambda seed: grid(32, 32, seed),
    "annulus": lambda seed: annulus_grid(8, 24, seed),
    "triangulated": lambda seed: delaunay_like(400, seed),
}


def random_piece(rng, max_rows=32, max_cols=32):
    """A random Monge matrix sized for piece-heap differential tests."""
    rows = rng.randint(1, max_rows)
    cols = rng.randint(1, max_cols)
    return random_monge(rows, cols, rng)


class ExplicitFRSim:
    """Brute-force model of the extract-only piece heap.

    Tracks, per unextracted column, the best offer over activated rows; the
    minimum reported is lexicographic (value, column).
    """

    def __init__(self, matrix):
        self.M = matrix
        self.R = len(matrix)
        self.C = len(matrix[0]) if matrix else 0
        self.label = [None] * self.R
        self.extracted = [False] * self.C

    def mh_activate(self, a, da):
        assert self.label[a] is None
        self.label[a] = da

    def _value(self, b):
        best = INF
        for a in range(self.R):
            if self.label[a] is not None:
                v = self.label[a] + self.M[a][b]
                if v < best:
                    best = v
        return best

    def mh_find_min(self):
        best = None
        for b in range(self.C):
            if self.extracted[b]:
                continue
            v = self._value(b)
            if v < INF and (best is None or (v, b) < best):
                best = (v, b)
        return best

    def mh_extract_min(self):
        best = self.mh_find_min()
        assert best is not None
        self.extracted[best[1]] = True
        return best


def lockstep_hk(matrices_ops, heaps):
    """Drive several relax/extract piece heaps through one op list, asserting
    identical observable behavior after every step.

    ``matrices_ops``: list of ("relax", row, label) / ("extract", col).
    Returns the number of ops executed.
    """
    done = 0
    for op in matrices_ops:
        if op[0] == "relax":
            _, a, da = op
            outs = [sorted(h.fr_relax(a, da)) for h in heaps]
        else:
            _, b = op
            if not heaps[0].active[b]:
                continue
            outs = [h.fr_extract(b) for h in heaps]
        assert all(o == outs[0] for o in outs[1:]), f"divergence on {op}: {outs}"
        base = heaps[0]
        for h in heaps[1:]:
            assert h.active == base.active
            assert h.owner == base.owner
        for a in range(base.R):
            if base.label[a] is None:
                continue
            answers = [h.fr_get_min_child(a) for h in heaps]
            assert all(x == answers[0] for x in answers[1:]), \
                f"min-child divergence at row {a}: {answers}"
        done += 1
    return done
