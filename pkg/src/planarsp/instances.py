"""Seeded generators for embedded planar test instances.

Every generator is deterministic in its arguments: rerunning with the same
seed reproduces the instance exactly.  Rotations are derived from planar
coordinates (counterclockwise by angle), so the embeddings are genuine plane
drawings and pass the Euler check.

Arc lengths are independent integers in [1, max_length] per direction;
capacities are independent integers in [1, max_capacity] per direction.
"""

from __future__ import annotations

import math
import random

from .planar_core import build_graph


def _rotations_by_angle(pos, adjacency_sets):
    rots = []
    for v, nbrs in enumerate(adjacency_sets):
        x, y = pos[v]
        rots.append(sorted(nbrs, key=lambda w: math.atan2(pos[w][1] - y, pos[w][0] - x)))
    return rots


def _finish(num_vertices, pos, edges, rng, max_length, max_capacity):
    adj = [set() for _ in range(num_vertices)]
    arcs = []
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
        arcs.append((u, v, rng.randint(1, max_length), rng.randint(1, max_capacity)))
        arcs.append((v, u, rng.randint(1, max_length), rng.randint(1, max_capacity)))
    rots = _rotations_by_angle(pos, adj)
    return build_graph(num_vertices, arcs, rots)


def grid(rows, cols, seed, *, max_length=100, max_capacity=50):
    """rows x cols grid with 4-neighbor edges."""
    rng = random.Random(("grid", rows, cols, seed).__repr__())
    pos = [(float(j), float(rows - 1 - i)) for i in range(rows) for j in range(cols)]
    edges = []
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j
            if j + 1 < cols:
                edges.append((v, v + 1))
            if i + 1 < rows:
                edges.append((v, v + cols))
    return _finish(rows * cols, pos, edges, rng, max_length, max_capacity)


def annulus_grid(rings, spokes, seed, *, max_length=100, max_capacity=50):
    """Concentric rings joined by radial spokes; the drawing has a central hole."""
    if spokes < 3:
        raise ValueError("need at least 3 positions per ring")
    rng = random.Random(("annulus", rings, spokes, seed).__repr__())
    pos = []
    for r in range(rings):
        radius = 1.0 + r
        for k in range(spokes):
            a = 2.0 * math.pi * k / spokes
            pos.append((radius * math.cos(a), radius * math.sin(a)))
    edges = []
    for r in range(rings):
        for k in range(spokes):
            v = r * spokes + k
            edges.append((v, r * spokes + (k + 1) % spokes))
            if r + 1 < rings:
                edges.append((v, v + spokes))
    return _finish(rings * spokes, pos, edges, rng, max_length, max_capacity)


def delaunay_like(n, seed, *, max_length=100, max_capacity=50):
    """Delaunay triangulation of n seeded random points in the unit square."""
    from scipy.spatial import Delaunay

    rng = random.Random(("delaunay", n, seed).__repr__())
    pos = [(rng.random(), rng.random()) for _ in range(n)]
    tri = Delaunay(pos)
    edges = set()
    for simplex in tri.simplices:
        a, b, c = int(simplex[0]), int(simplex[1]), int(simplex[2])
        for u, v in ((a, b), (b, c), (a, c)):
            edges.add((u, v) if u < v else (v, u))
    return _finish(n, pos, sorted(edges), rng, max_length, max_capacity)


def make_instance(kind, param, seed):
    """Build one of the named test families.

    kind 'grid': param is the side length (param x param grid).
    kind 'annulus': param is the ring count (param rings x 3*param spokes).
    kind 'delaunay': param is the vertex count.
    """
    if kind == "grid":
        return grid(param, param, seed)
    if kind == "annulus":
        return annulus_grid(param, 3 * param, seed)
    if kind == "delaunay":
        return delaunay_like(param, seed)
    raise ValueError(f"unknown instance kind {kind!r}")
