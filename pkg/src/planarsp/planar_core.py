"""Embedded planar graphs: dart rotation systems, duals, degree reduction.

A graph with ``m`` edges has ``2m`` darts; edge ``i`` owns darts ``2i`` (its
forward direction) and ``2i + 1`` (its reverse), so ``d ^ 1`` is the reverse
of dart ``d``.  Each vertex stores the counterclockwise cyclic order of its
outgoing darts (the rotation).  Faces are the orbits of
``d -> rot_next[d ^ 1]``; with counterclockwise rotations this walk keeps the
traced face on the left of every dart it traverses, and the dual arc of a
primal dart runs from the face on its left to the face on its right.

Arc lengths (and, in flow contexts, capacities) live on darts.  Input arcs
are directed; when only one direction of an edge is given, the missing dart
gets ``math.inf`` length (capacity 0), which all algorithms treat as absent.

Also provides the verification Dijkstra used throughout the test suite and a
plain text file format (see ``write_pg`` / ``read_pg``).
"""

from __future__ import annotations

import heapq
import math

from .errors import (
    GraphFormatError,
    InvalidRotation,
    NegativeLength,
    NonPlanarEmbedding,
)

INF = math.inf


class EmbeddedPlanarGraph:
    """Immutable embedded planar graph (parallel edges only via explicit insertion)."""

    __slots__ = (
        "n", "m", "tail", "head", "length", "capacity",
        "rot_next", "rot_prev", "out_darts", "face_of", "faces",
    )

    def __init__(self, n, tail, head, length, capacity, out_darts):
        self.n = n
        self.m = len(tail) // 2
        self.tail = tail
        self.head = head
        self.length = length
        self.capacity = capacity
        self.out_darts = out_darts
        num_darts = 2 * self.m
        rot_next = [0] * num_darts
        rot_prev = [0] * num_darts
        for v in range(n):
            darts = out_darts[v]
            k = len(darts)
            for i, d in enumerate(darts):
                rot_next[d] = darts[(i + 1) % k]
                rot_prev[d] = darts[(i - 1) % k]
        self.rot_next = rot_next
        self.rot_prev = rot_prev
        self.face_of, self.faces = self._trace_faces()

    def _trace_faces(self):
        num_darts = 2 * self.m
        face_of = [-1] * num_darts
        faces = []
        rot_next = self.rot_next
        for d0 in range(num_darts):
            if face_of[d0] >= 0:
                continue
            fid = len(faces)
            cycle = []
            d = d0
            while face_of[d] < 0:
                face_of[d] = fid
                cycle.append(d)
                d = rot_next[d ^ 1]
            faces.append(cycle)
        return face_of, faces

    def check_euler(self):
        """Raise NonPlanarEmbedding unless V - E + F == 1 + #components.

        (= 2 for a connected graph.)  Isolated vertices contribute no traced
        face, so each adds one to both sides; an edgeless graph is skipped.
        """
        if self.m == 0:
            return
        comps = 0
        seen = [False] * self.n
        for v0 in range(self.n):
            if seen[v0] or not self.out_darts[v0]:
                continue
            comps += 1
            stack = [v0]
            seen[v0] = True
            while stack:
                v = stack.pop()
                for d in self.out_darts[v]:
                    w = self.head[d]
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
        comps += sum(1 for v in range(self.n) if not self.out_darts[v])
        if self.n - self.m + len(self.faces) != 1 + comps:
            raise NonPlanarEmbedding(
                f"Euler check failed: V={self.n} E={self.m} F={len(self.faces)} C={comps}")

    # -- queries -------------------------------------------------------------

    def degree(self, v):
        return len(self.out_darts[v])

    def max_degree(self):
        return max((len(ds) for ds in self.out_darts), default=0)

    def adjacency(self):
        """Per-vertex list of (head, length) over darts with finite length."""
        adj = [[] for _ in range(self.n)]
        for d in range(2 * self.m):
            if self.length[d] != INF:
                adj[self.tail[d]].append((self.head[d], self.length[d]))
        return adj

    def face_vertex_cycle(self, fid):
        return [self.tail[d] for d in self.faces[fid]]

    def dual_adjacency(self, weight):
        """Dual adjacency: one arc per primal dart ``d``, from the face left
        of ``d`` to the face right of ``d``, as (head face, weight[d], d)."""
        adj = [[] for _ in self.faces]
        face_of = self.face_of
        for d in range(2 * self.m):
            adj[face_of[d]].append((face_of[d ^ 1], weight[d], d))
        return adj


def graph_from_darts(num_vertices, tail, head, length, capacity, out_darts,
                     *, require_planar=True):
    """Low-level constructor from explicit dart arrays; validates the rotation."""
    if len(tail) % 2:
        raise GraphFormatError("odd number of darts")
    seen = [False] * len(tail)
    for v, darts in enumerate(out_darts):
        for d in darts:
            if not (0 <= d < len(tail)) or tail[d] != v:
                raise InvalidRotation(f"dart {d} listed at vertex {v} but has tail "
                                      f"{tail[d] if 0 <= d < len(tail) else '?'}")
            if seen[d]:
                raise InvalidRotation(f"dart {d} listed twice")
            seen[d] = True
    if not all(seen):
        raise InvalidRotation("some darts missing from rotations")
    for d in range(0, len(tail), 2):
        if tail[d] != head[d ^ 1] or head[d] != tail[d ^ 1]:
            raise GraphFormatError(f"darts {d},{d ^ 1} are not mutual reverses")
        if tail[d] == head[d]:
            raise GraphFormatError(f"self-loop at vertex {tail[d]}")
    g = EmbeddedPlanarGraph(num_vertices, list(tail), list(head),
                            list(length), list(capacity),
                            [tuple(ds) for ds in out_darts])
    if require_planar:
        g.check_euler()
    return g


def build_graph(num_vertices, arcs, rotations, *, require_planar=True):
    """Build an EmbeddedPlanarGraph from directed arcs and neighbor rotations.

    ``arcs``: iterable of (u, v, length) or (u, v, length, capacity).  A pair
    of opposite arcs shares one edge; a missing direction gets length inf and
    capacity 0.  Self-loops and repeated ordered pairs are rejected.

    ``rotations``: for each vertex, its neighbors in counterclockwise order
    (one entry per incident edge).
    """
    edge_ix = {}
    tail = []
    head = []
    length = []
    capacity = []
    seen_pairs = set()
    for arc in arcs:
        if len(arc) == 3:
            u, v, ln = arc
            cap = 0
        else:
            u, v, ln, cap = arc
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}")
        if not (0 <= u < num_vertices and 0 <= v < num_vertices):
            raise GraphFormatError(f"arc ({u},{v}) out of range")
        if (u, v) in seen_pairs:
            raise GraphFormatError(f"parallel arc ({u},{v})")
        seen_pairs.add((u, v))
        key = (u, v) if u < v else (v, u)
        if key in edge_ix:
            e = edge_ix[key]
            d = 2 * e if tail[2 * e] == u else 2 * e + 1
            length[d] = ln
            capacity[d] = cap
        else:
            edge_ix[key] = len(tail) // 2
            tail.extend((u, v))
            head.extend((v, u))
            length.extend((ln, INF))
            capacity.extend((cap, 0))
    incident_count = [0] * num_vertices
    for d in range(0, len(tail), 2):
        incident_count[tail[d]] += 1
        incident_count[head[d]] += 1
    out = []
    for v in range(num_vertices):
        rot = rotations[v] if v < len(rotations) else []
        darts = []
        for w in rot:
            key = (v, w) if v < w else (w, v)
            e = edge_ix.get(key)
            if e is None:
                raise InvalidRotation(f"rotation of {v} names non-edge {v}-{w}")
            d = 2 * e if tail[2 * e] == v else 2 * e + 1
            darts.append(d)
        if len(set(darts)) != len(darts):
            raise InvalidRotation(f"rotation of {v} repeats an edge")
        if len(darts) != incident_count[v]:
            raise InvalidRotation(f"rotation of {v} does not cover its incident edges")
        out.append(tuple(darts))
    g = EmbeddedPlanarGraph(num_vertices, tail, head, length, capacity, out)
    if require_planar:
        g.check_euler()
    return g


def insert_edge_in_face(g, in_dart_u, in_dart_v, length_uv, length_vu,
                        cap_uv=0, cap_vu=0):
    """Insert a chord between two corners of one face.

    ``in_dart_u`` is a dart whose head is u; the corner at u following that
    dart along its face receives the new dart.  Likewise ``in_dart_v`` at v.
    Both corners must lie on the same face.  The new edge may duplicate an
    existing adjacency — this is the one sanctioned source of parallel edges.
    Returns (new_graph, new_edge_index).
    """
    if g.face_of[in_dart_u] != g.face_of[in_dart_v]:
        raise GraphFormatError("corners lie on different faces")
    u = g.head[in_dart_u]
    v = g.head[in_dart_v]
    if u == v:
        raise GraphFormatError("chord endpoints coincide")
    tail = list(g.tail) + [u, v]
    head = list(g.head) + [v, u]
    length = list(g.length) + [length_uv, length_vu]
    capacity = list(g.capacity) + [cap_uv, cap_vu]
    d_uv = 2 * g.m
    d_vu = d_uv + 1
    out_darts = list(g.out_darts)

    def insert_after(vertex, after_dart, new_dart):
        darts = list(out_darts[vertex])
        darts.insert(darts.index(after_dart) + 1, new_dart)
        out_darts[vertex] = tuple(darts)

    insert_after(u, in_dart_u ^ 1, d_uv)
    insert_after(v, in_dart_v ^ 1, d_vu)
    g2 = EmbeddedPlanarGraph(g.n, tail, head, length, capacity, out_darts)
    g2.check_euler()
    return g2, g.m


def dual_graph(g, dart_length=None):
    """The embedded dual: one vertex per face, one edge per primal edge.

    Dart ids are shared with the primal graph: dual dart ``d`` runs from the
    face carrying ``d`` to the face carrying its reverse, and the rotation at
    a dual vertex is that face's traversal cycle.  ``dart_length[d]`` gives
    the dual dart's length (default: the primal dart's capacity); dual
    capacities are zero.  Bridge edges would become self-loops and are
    rejected.
    """
    if dart_length is None:
        dart_length = g.capacity
    face_of = g.face_of
    num_darts = 2 * g.m
    tail = [face_of[d] for d in range(num_darts)]
    head = [face_of[d ^ 1] for d in range(num_darts)]
    for d in range(0, num_darts, 2):
        if tail[d] == head[d]:
            raise GraphFormatError(
                f"edge {d // 2} is a bridge; its dual edge would be a self-loop")
    out_darts = [tuple(cycle) for cycle in g.faces]
    return graph_from_darts(len(g.faces), tail, head, list(dart_length),
                            [0] * num_darts, out_darts)


def reduce_degree(g):
    """Split every vertex of degree > 3 into a cycle of degree-3 copies.

    The copies are joined by zero-length, unbounded-capacity cycle edges laid
    inside a small disk replacing the vertex, so the embedding, all
    finite-length distances, and all cuts are preserved.  Returns
    ``(new_graph, copies, origin)`` where ``copies[v]`` lists the ids
    replacing original vertex ``v`` (a single id when v was not split) and
    ``origin[w]`` maps each new vertex back to its original.
    """
    cap_inf = sum(c for c in g.capacity if c != INF) + 1
    copies = []
    origin = []
    dart_new_tail = [0] * (2 * g.m)
    for v in range(g.n):
        ds = g.out_darts[v]
        if len(ds) <= 3:
            w = len(origin)
            copies.append([w])
            origin.append(v)
            for d in ds:
                dart_new_tail[d] = w
        else:
            ids = []
            for d in ds:
                w = len(origin)
                ids.append(w)
                origin.append(v)
                dart_new_tail[d] = w
            copies.append(ids)
    n2 = len(origin)
    tail = []
    head = []
    length = []
    capacity = []
    for d in range(0, 2 * g.m, 2):
        tail.extend((dart_new_tail[d], dart_new_tail[d ^ 1]))
        head.extend((dart_new_tail[d ^ 1], dart_new_tail[d]))
        length.extend((g.length[d], g.length[d ^ 1]))
        capacity.extend((g.capacity[d], g.capacity[d ^ 1]))
    cycle_dart = {}
    for v in range(g.n):
        ids = copies[v]
        k = len(ids)
        if k <= 1:
            continue
        for i in range(k):
            a, b = ids[i], ids[(i + 1) % k]
            e = len(tail) // 2
            cycle_dart[(a, b)] = 2 * e
            cycle_dart[(b, a)] = 2 * e + 1
            tail.extend((a, b))
            head.extend((b, a))
            length.extend((0, 0))
            capacity.extend((cap_inf, cap_inf))
    out_darts = [None] * n2
    for v in range(g.n):
        ids = copies[v]
        if len(ids) == 1:
            out_darts[ids[0]] = tuple(g.out_darts[v])
        else:
            k = len(ids)
            for i, d in enumerate(g.out_darts[v]):
                a = ids[i]
                out_darts[a] = (d, cycle_dart[(a, ids[(i + 1) % k])],
                                cycle_dart[(a, ids[(i - 1) % k])])
    g2 = EmbeddedPlanarGraph(n2, tail, head, length, capacity, out_darts)
    g2.check_euler()
    return g2, copies, origin


def dijkstra(g, source):
    """Exact single-source distances in g (the package-wide verification oracle)."""
    if any(ln < 0 for ln in g.length if ln != INF):
        raise NegativeLength("dijkstra requires non-negative lengths")
    dist = [INF] * g.n
    dist[source] = 0
    pq = [(0, source)]
    tail, head, length, out_darts = g.tail, g.head, g.length, g.out_darts
    while pq:
        dv, v = heapq.heappop(pq)
        if dv > dist[v]:
            continue
        for d in out_darts[v]:
            ln = length[d]
            if ln == INF:
                continue
            w = head[d]
            nd = dv + ln
            if nd < dist[w]:
                dist[w] = nd
                heapq.heappush(pq, (nd, w))
    return dist


# -- file format -------------------------------------------------------------
#
# Line 1: ``pg <V> <A>`` where A counts directed arc lines.
# Next A lines: ``u v length [capacity]`` — one directed arc each; the first
# line mentioning an edge (in either direction) allocates its dart pair, with
# dart 2e running u -> v as written.  Omitted reverse directions keep the
# inf/0 defaults.
# Next V lines: the rotation of each vertex as space-separated dart ids in
# counterclockwise order.


def _fmt_num(x):
    if x == INF:
        return "inf"
    if isinstance(x, float) and x.is_integer():
        return str(int(x))
    return str(x)


def _parse_num(s):
    if s == "inf":
        return INF
    try:
        return int(s)
    except ValueError:
        return float(s)


def write_pg(g, path):
    lines = []
    arc_lines = []
    for d in range(2 * g.m):
        if g.length[d] != INF or g.capacity[d] != 0:
            arc_lines.append(
                f"{g.tail[d]} {g.head[d]} {_fmt_num(g.length[d])} {_fmt_num(g.capacity[d])}")
    lines.append(f"pg {g.n} {len(arc_lines)}")
    lines.extend(arc_lines)
    for v in range(g.n):
        lines.append(" ".join(str(d) for d in g.out_darts[v]) or "-")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_pg(path):
    with open(path) as fh:
        raw = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    if not raw or not raw[0].startswith("pg "):
        raise GraphFormatError("missing 'pg' header")
    try:
        _, n_s, a_s = raw[0].split()
        n, a = int(n_s), int(a_s)
    except ValueError as exc:
        raise GraphFormatError(f"bad header {raw[0]!r}") from exc
    if len(raw) != 1 + a + n:
        raise GraphFormatError(f"expected {1 + a + n} lines, found {len(raw)}")
    edge_ix = {}
    tail, head, length, capacity = [], [], [], []
    for ln in raw[1:1 + a]:
        parts = ln.split()
        if len(parts) not in (3, 4):
            raise GraphFormatError(f"bad arc line {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        lnv = _parse_num(parts[2])
        cap = _parse_num(parts[3]) if len(parts) == 4 else 0
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"arc ({u},{v}) out of range")
        key = (u, v) if u < v else (v, u)
        if key in edge_ix:
            e = edge_ix[key]
            d = 2 * e if tail[2 * e] == u else 2 * e + 1
            if length[d] != INF or capacity[d] != 0:
                raise GraphFormatError(f"arc ({u},{v}) given twice")
            length[d] = lnv
            capacity[d] = cap
        else:
            edge_ix[key] = len(tail) // 2
            tail.extend((u, v))
            head.extend((v, u))
            length.extend((lnv, INF))
            capacity.extend((cap, 0))
    out_darts = []
    for ln in raw[1 + a:]:
        out_darts.append(tuple(int(t) for t in ln.split()) if ln != "-" else ())
    return graph_from_darts(n, tail, head, length, capacity, out_darts)
