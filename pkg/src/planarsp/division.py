"""Edge-partition divisions of an embedded planar graph, with holes.

A *division* partitions the edge set into regions.  A vertex is a *boundary*
vertex of a region when some of its edges lie outside that region (or the
caller marked it mandatory).  Because regions partition edges, a vertex of
degree <= 3 belongs to at most 3 regions — the engine always degree-reduces
first, making that invariant structural.

Splitting strategy: breadth-first levels from the region's lowest vertex; the
level threshold that best balances the two edge halves (lowest index on ties)
becomes the separator, vertices on it becoming boundary; recursion proceeds
per connected component, and small sibling parts that share a vertex are
greedily re-merged while they fit the vertex and boundary budgets.  This is
deliberately simple: boundary sizes are *measured* and reported, not
guaranteed, and the harness logs the constants.

A *hole* of a region is a face of the region's subgraph that is not a face of
the full graph and carries at least one boundary vertex; callers may also
force specific graph faces to count as holes (the face-distance application
does).  Each hole stores its boundary vertices in cyclic face order starting
from the lowest id.  Boundary vertices lying on no hole are kept as *stray*
boundary (they get explicit-arc treatment downstream).

The recursive division squares the region budget per level (r, r^2, r^4, ...)
until one region covers the graph; the tree's height-i layer is a valid
r_i-division, children refine parents, and parent boundary is inherited.
"""

from __future__ import annotations

import math
from collections import deque

from .errors import DivisionInvariantError


class Region:
    __slots__ = ("id", "height", "parent", "children", "edges", "vertices",
                 "boundary", "holes", "stray_boundary")

    def __init__(self, rid, height, edges, vertices, boundary, holes, strays):
        self.id = rid
        self.height = height
        self.parent = -1
        self.children = []
        self.edges = edges
        self.vertices = vertices
        self.boundary = boundary
        self.holes = holes
        self.stray_boundary = strays

    def __repr__(self):
        return (f"Region(id={self.id}, h={self.height}, |E|={len(self.edges)}, "
                f"|V|={len(self.vertices)}, |B|={len(self.boundary)}, "
                f"holes={len(self.holes)})")


class RecursiveDivision:
    __slots__ = ("g", "r_vector", "regions", "root", "by_height", "height_of",
                 "mandatory", "stats")

    def __init__(self, g, r_vector, regions, root, by_height, height_of,
                 mandatory, stats):
        self.g = g
        self.r_vector = r_vector
        self.regions = regions
        self.root = root
        self.by_height = by_height
        self.height_of = height_of
        self.mandatory = mandatory
        self.stats = stats


def _edge_vertices(g, edges):
    vs = set()
    for e in edges:
        vs.add(g.tail[2 * e])
        vs.add(g.head[2 * e])
    return vs


def _incidence(g, edges):
    inc = {}
    for e in edges:
        inc.setdefault(g.tail[2 * e], []).append(e)
        inc.setdefault(g.head[2 * e], []).append(e)
    return inc


def _components(g, edges):
    """Connected components of the edge-induced subgraph, as edge lists,
    discovered in lowest-vertex order."""
    inc = _incidence(g, edges)
    label = {}
    n_comps = 0
    for v0 in sorted(inc):
        if v0 in label:
            continue
        label[v0] = n_comps
        stack = [v0]
        while stack:
            v = stack.pop()
            for e in inc[v]:
                u = g.head[2 * e] if g.tail[2 * e] == v else g.tail[2 * e]
                if u not in label:
                    label[u] = n_comps
                    stack.append(u)
        n_comps += 1
    out = [[] for _ in range(n_comps)]
    for e in edges:
        out[label[g.tail[2 * e]]].append(e)
    return [c for c in out if c]


def _bfs_levels(g, edges, start):
    inc = _incidence(g, edges)
    level = {start: 0}
    q = deque([start])
    while q:
        v = q.popleft()
        for e in inc[v]:
            u = g.head[2 * e] if g.tail[2 * e] == v else g.tail[2 * e]
            if u not in level:
                level[u] = level[v] + 1
                q.append(u)
    return level


def _split_once(g, edges):
    """Split a connected edge set into two nonempty parts along a BFS level."""
    start = min(_edge_vertices(g, edges))
    level = _bfs_levels(g, edges, start)
    maxlev = max(level.values())
    if maxlev == 0:
        half = len(edges) // 2
        return edges[:half], edges[half:]
    # edge level = max endpoint level; threshold t keeps levels <= t on side A
    edge_lev = []
    for e in edges:
        edge_lev.append(max(level[g.tail[2 * e]], level[g.head[2 * e]]))
    total = len(edges)
    counts = [0] * (maxlev + 1)
    for lv in edge_lev:
        counts[lv] += 1
    best_t, best_gap = 0, None
    acc = 0
    for t in range(maxlev):  # t = maxlev would put everything on side A
        acc += counts[t]
        gap = abs(2 * acc - total)
        if best_gap is None or gap < best_gap:
            best_gap, best_t = gap, t
    a = [e for e, lv in zip(edges, edge_lev) if lv <= best_t]
    b = [e for e, lv in zip(edges, edge_lev) if lv > best_t]
    if not a or not b:
        half = len(edges) // 2
        return edges[:half], edges[half:]
    return a, b


def _boundary_of(g, part_vertices, part_deg, scope_deg, mandatory):
    out = []
    for v in part_vertices:
        if part_deg.get(v, 0) < scope_deg[v] or v in mandatory:
            out.append(v)
    return sorted(out)


def _divide_edges(g, scope_edges, r, scope_deg, mandatory, bconst):
    """Partition scope_edges into parts of <= r vertices (boundary budget
    bconst*sqrt(r), best effort).  Returns a list of edge lists."""
    bbudget = max(3, math.ceil(bconst * math.sqrt(r)))

    def fits(edges):
        vs = _edge_vertices(g, edges)
        if len(vs) > r:
            return False
        deg = {}
        for e in edges:
            deg[g.tail[2 * e]] = deg.get(g.tail[2 * e], 0) + 1
            deg[g.head[2 * e]] = deg.get(g.head[2 * e], 0) + 1
        nb = sum(1 for v in vs if deg[v] < scope_deg[v] or v in mandatory)
        return nb <= bbudget

    def recurse(edges):
        comps = _components(g, edges)
        if len(comps) > 1:
            out = []
            for c in comps:
                out.extend(recurse(c))
            return out
        if fits(edges):
            return [edges]
        a, b = _split_once(g, edges)
        if not a or not b:
            return [edges]
        return recurse(a) + recurse(b)

    parts = recurse(sorted(scope_edges))
    return _merge_small(g, parts, fits)


def _merge_small(g, parts, fits):
    """Greedily merge parts sharing a vertex while they stay within budget.

    One pass per epoch, smallest parts first; stops when an epoch merges
    nothing.  Keeps the division from over-fragmenting."""
    if len(parts) <= 1:
        return parts
    parts = [sorted(p) for p in parts]
    while True:
        owner = {}
        for ix, p in enumerate(parts):
            for v in _edge_vertices(g, p):
                owner.setdefault(v, set()).add(ix)
        order = sorted(range(len(parts)), key=lambda ix: len(parts[ix]))
        absorbed = {}
        merged_any = False
        for ix in order:
            if ix in absorbed:
                continue
            neighbors = set()
            for v in _edge_vertices(g, parts[ix]):
                for jx in owner[v]:
                    while jx in absorbed:
                        jx = absorbed[jx]
                    if jx != ix:
                        neighbors.add(jx)
            for jx in sorted(neighbors, key=lambda j: len(parts[j])):
                if fits(parts[ix] + parts[jx]):
                    parts[jx] = sorted(parts[ix] + parts[jx])
                    absorbed[ix] = jx
                    merged_any = True
                    break
        if not merged_any:
            break
        parts = [p for ix, p in enumerate(parts) if ix not in absorbed]
    return parts


def _region_faces(g, edges):
    """Faces of the edge-induced subgraph: rotation of the full graph
    restricted to the region's darts."""
    dart_set = set()
    for e in edges:
        dart_set.add(2 * e)
        dart_set.add(2 * e + 1)
    # induced rotation successor: next region dart after d in tail(d)'s order
    rot_pos = {}
    region_rot = {}
    for d in dart_set:
        v = g.tail[d]
        if v in region_rot:
            continue
        darts_v = [x for x in g.out_darts[v] if x in dart_set]
        region_rot[v] = {x: darts_v[(i + 1) % len(darts_v)]
                         for i, x in enumerate(darts_v)}
    face_of = {}
    faces = []
    for d0 in sorted(dart_set):
        if d0 in face_of:
            continue
        fid = len(faces)
        cyc = []
        d = d0
        while d not in face_of:
            face_of[d] = fid
            cyc.append(d)
            d = region_rot[g.tail[d ^ 1]][d ^ 1]
        faces.append(cyc)
    return faces


def _make_region(g, rid, height, edges, scope_deg, mandatory, mandatory_faces):
    vs = sorted(_edge_vertices(g, edges))
    deg = {}
    for e in edges:
        deg[g.tail[2 * e]] = deg.get(g.tail[2 * e], 0) + 1
        deg[g.head[2 * e]] = deg.get(g.head[2 * e], 0) + 1
    boundary = _boundary_of(g, vs, deg, scope_deg, mandatory)
    bset = set(boundary)
    holes = []
    on_hole = set()
    for cyc in _region_faces(g, edges):
        gfaces = {g.face_of[d] for d in cyc}
        is_g_face = len(gfaces) == 1 and len(cyc) == len(g.faces[next(iter(gfaces))])
        forced = bool(gfaces & mandatory_faces)
        if is_g_face and not forced:
            continue
        walk = [g.tail[d] for d in cyc]
        bwalk = []
        seen = set()
        if not (bset & set(walk)):
            continue
        # rotate to start at the lowest-id boundary vertex on the cycle
        lowest = min(v for v in walk if v in bset)
        start = walk.index(lowest)
        for ix in range(len(walk)):
            v = walk[(start + ix) % len(walk)]
            if v in bset and v not in seen:
                seen.add(v)
                bwalk.append(v)
        holes.append(tuple(bwalk))
        on_hole |= seen
    holes.sort(key=lambda h: h[0])
    strays = tuple(v for v in boundary if v not in on_hole)
    return Region(rid, height, tuple(sorted(edges)), tuple(vs),
                  tuple(boundary), tuple(holes), strays)


def r_division(g, r, *, mandatory_boundary=(), mandatory_faces=(), bconst=4.0):
    """Divide g's edges into regions of <= r vertices each (single level).

    Returns a list of Region objects (height 1).  When r >= n the division is
    the single whole-graph region.  Vertices in mandatory_boundary are
    boundary in every region containing them; graph faces in mandatory_faces
    count as holes wherever they appear.
    """
    mandatory = frozenset(mandatory_boundary)
    mfaces = frozenset(mandatory_faces)
    scope_deg = {v: len(g.out_darts[v]) for v in range(g.n)}
    all_edges = list(range(g.m))
    if g.n <= r:
        parts = [all_edges]
    else:
        parts = _divide_edges(g, all_edges, r, scope_deg, mandatory, bconst)
    regions = [_make_region(g, i, 1, p, scope_deg, mandatory, mfaces)
               for i, p in enumerate(parts)]
    _check_division(g, regions, r)
    return regions


def _check_division(g, regions, r):
    covered = {}
    for reg in regions:
        for e in reg.edges:
            if e in covered:
                raise DivisionInvariantError(f"edge {e} in two regions")
            covered[e] = reg.id
    if len(covered) != g.m:
        raise DivisionInvariantError("regions do not cover all edges")
    for reg in regions:
        if len(reg.vertices) > max(r, 4):
            raise DivisionInvariantError(
                f"region {reg.id} has {len(reg.vertices)} > r={r} vertices")


def division_stats(g, regions):
    """Measured division quality: reported by the harness, never asserted."""
    memb = {}
    for reg in regions:
        for v in reg.vertices:
            memb[v] = memb.get(v, 0) + 1
    return {
        "regions": len(regions),
        "max_vertices": max((len(r.vertices) for r in regions), default=0),
        "max_boundary": max((len(r.boundary) for r in regions), default=0),
        "total_boundary": sum(len(r.boundary) for r in regions),
        "max_holes": max((len(r.holes) for r in regions), default=0),
        "max_membership": max(memb.values(), default=0),
        "stray_boundary": sum(len(r.stray_boundary) for r in regions),
    }


def recursive_division(g, r, *, mandatory_boundary=(), mandatory_faces=(),
                       bconst=4.0):
    """Region tree with budgets (r, r^2, r^4, ...) capped at the whole graph.

    The height-i layer is an r_i-division; the root (highest layer) is the
    single whole-graph region.  Children partition their parent's edges, and
    a parent's boundary vertices stay boundary in every child containing
    them.  height_of[v] = largest height at which v is boundary (0 when v is
    interior everywhere below the root).
    """
    r = max(4, int(r))
    r_vector = [r]
    while r_vector[-1] < g.n:
        r_vector.append(r_vector[-1] ** 2)
    k = len(r_vector)
    mandatory = frozenset(mandatory_boundary)
    mfaces = frozenset(mandatory_faces)
    scope_deg_g = {v: len(g.out_darts[v]) for v in range(g.n)}

    regions = []
    by_height = {h: [] for h in range(1, k + 1)}

    root = _make_region(g, 0, k, list(range(g.m)), scope_deg_g, mandatory, mfaces)
    regions.append(root)
    by_height[k].append(root)

    frontier = [root]
    for height in range(k - 1, 0, -1):
        budget = r_vector[height - 1]
        nxt = []
        for parent in frontier:
            scope_deg = {}
            for e in parent.edges:
                scope_deg[g.tail[2 * e]] = scope_deg.get(g.tail[2 * e], 0) + 1
                scope_deg[g.head[2 * e]] = scope_deg.get(g.head[2 * e], 0) + 1
            child_mand = mandatory | set(parent.boundary)
            if len(parent.vertices) <= budget:
                parts = [list(parent.edges)]
            else:
                parts = _divide_edges(g, list(parent.edges), budget, scope_deg,
                                      child_mand, bconst)
            for p in parts:
                reg = _make_region(g, len(regions), height, p, scope_deg,
                                   child_mand, mfaces)
                reg.parent = parent.id
                parent.children.append(reg.id)
                regions.append(reg)
                by_height[height].append(reg)
                nxt.append(reg)
        frontier = nxt

    for h in range(1, k + 1):
        _check_division(g, by_height[h], r_vector[h - 1])

    height_of = [0] * g.n
    for reg in regions:
        if reg.height == k:
            continue  # root boundary is only the mandatory set; handled below
        for v in reg.boundary:
            if reg.height > height_of[v]:
                height_of[v] = reg.height
    for v in root.boundary:
        height_of[v] = k

    stats = {h: division_stats(g, by_height[h]) for h in by_height}
    return RecursiveDivision(g, tuple(r_vector), regions, root, by_height,
                             height_of, mandatory, stats)


def dump_division(regions):
    """Text dump: one line per region
    ``R <id> <height> <parent> | vertices... | hole;hole;...`` where each hole
    lists its boundary vertices in cyclic order."""
    lines = []
    for reg in regions:
        vtx = " ".join(str(v) for v in reg.vertices)
        holes = ";".join(" ".join(str(v) for v in h) for h in reg.holes)
        lines.append(f"R {reg.id} {reg.height} {reg.parent} | {vtx} | {holes}")
    return "\n".join(lines) + "\n"
