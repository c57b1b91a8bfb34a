"""All-pairs shortest-path distances among the vertices of one face.

Given an embedded graph and a face, computes the full matrix of pairwise
distances between the face's vertices, in face-cycle order.  For small faces
the work is delegated to the region engine: the graph is divided with the
face's vertices forced onto region boundaries and the face itself kept as a
hole, after which one boundary-to-boundary pass per face vertex fills a row
of the matrix.  For faces whose vertex count is large relative to the graph,
plain per-source searches are cheaper and are used instead.
"""

from __future__ import annotations

import math

from .errors import FaceNotFound
from .hkrs_fr import hkrs_preprocess, hkrs_sssp
from .oracles import dijkstra

INF = math.inf


def face_vertices(g, face):
    """Distinct vertices on ``face`` in cycle order (first occurrence kept)."""
    if not isinstance(face, int) or not (0 <= face < len(g.faces)):
        raise FaceNotFound(f"no face with id {face!r}")
    seen = set()
    verts = []
    for v in g.face_vertex_cycle(face):
        if v not in seen:
            seen.add(v)
            verts.append(v)
    return verts


def _engine_region_size(k, n):
    r = k * k * max(1, math.ceil(math.log2(k))) ** 2
    return max(4, min(r, n - 1))


def use_engine(k, n):
    """Whether the region engine beats ``k`` plain searches for this size."""
    if n < 2:
        return False
    return k < math.sqrt(n) / math.log2(n)


def face_boundary_apsp(g, face, *, backend="cq3", force_engine=None):
    """Distance matrix between the vertices of ``face``.

    Returns ``(verts, dist)`` where ``verts`` lists the face's distinct
    vertices in cycle order and ``dist[i][j]`` is the shortest-path distance
    from ``verts[i]`` to ``verts[j]`` in the whole graph.  ``force_engine``
    overrides the size heuristic (for testing both paths).
    """
    verts = face_vertices(g, face)
    k = len(verts)
    n = g.n
    if k <= 1:
        return verts, [[0.0] * k for _ in range(k)]
    engine = use_engine(k, n) if force_engine is None else bool(force_engine)
    if engine:
        r = _engine_region_size(k, n)
        prep = hkrs_preprocess(g, r, backend=backend,
                               mandatory_boundary=tuple(verts),
                               mandatory_faces=(face,))
        dist = []
        for v in verts:
            labels, _ = hkrs_sssp(prep, v)
            dist.append([labels.get(w, INF) for w in verts])
    else:
        adj = g.adjacency()
        dist = []
        for v in verts:
            d = dijkstra(adj, v)
            dist.append([d[w] for w in verts])
    return verts, dist


def apsp_csv(verts, dist):
    """Render the matrix as CSV: a header of vertex ids, then one row per source."""

    def num(x):
        if x == INF:
            return "inf"
        if x == int(x):
            return str(int(x))
        return repr(x)

    lines = ["source," + ",".join(str(v) for v in verts)]
    for v, row in zip(verts, dist):
        lines.append(str(v) + "," + ",".join(num(x) for x in row))
    return "\n".join(lines) + "\n"
