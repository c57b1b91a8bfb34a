"""Dense distance graphs per region and their bipartite Monge decomposition.

The *dense distance graph* (DDG) of a region is the complete directed graph
on its boundary vertices where arc u->v carries the exact u-to-v distance
inside the region's subgraph.  Boundary vertices are ordered hole by hole,
each hole block keeping the cyclic order along its face.

For vertices on one hole, paths inside the region realizing two
interleaved chords must cross, so the upper and lower triangles of that
hole's distance block satisfy the quadrangle inequality (our Monge
convention).  The argument needs paths that cannot slip around another hole:
in multi-hole regions it can genuinely fail, so each hole block is checked at
build time and *demoted* to explicit arcs when a violation shows up —
correctness is never at stake, only the relaxation speedup for that block.

Traffic not covered by the Monge machinery — pairs on different holes,
stray boundary vertices, demoted holes — is exported as explicit arcs.

The bipartite decomposition splits each hole block recursively into halves
A (first) and B (second), emitting the directed pieces A->B (a rectangle of
the upper triangle) and B->A (lower triangle); every ordered same-hole pair
is covered by exactly one piece, each piece is a fully defined Monge
rectangle, and a vertex appears in O(log k) pieces per side.
"""

from __future__ import annotations

import heapq
import math

from .monge_rmq import MongeMatrixView, monge_check

INF = math.inf


class DenseDistanceGraph:
    __slots__ = ("region", "verts", "index", "D", "holes", "hole_of",
                 "strays", "demoted")

    def __init__(self, region, verts, index, D, holes, hole_of, strays, demoted):
        self.region = region
        self.verts = verts          # global vertex ids by position
        self.index = index          # global id -> position
        self.D = D                  # k x k distance matrix (positions)
        self.holes = holes          # per hole: tuple of positions (cyclic)
        self.hole_of = hole_of      # per position: hole ix, -1 for strays
        self.strays = strays        # positions on no hole
        self.demoted = demoted      # hole ixs handled by explicit arcs

    @property
    def k(self):
        return len(self.verts)


class Piece:
    """Directed bipartite piece: rows A to columns B of one hole block."""

    __slots__ = ("hole", "rows", "cols", "matrix")

    def __init__(self, hole, rows, cols, matrix):
        self.hole = hole
        self.rows = rows            # positions in the DDG, A side (tails)
        self.cols = cols            # positions in the DDG, B side (heads)
        self.matrix = matrix        # len(rows) x len(cols) distances

    def __repr__(self):
        return f"Piece(hole={self.hole}, {len(self.rows)}x{len(self.cols)})"


class BipartiteFamily:
    __slots__ = ("ddg", "pieces", "row_memberships", "col_memberships")

    def __init__(self, ddg, pieces):
        self.ddg = ddg
        self.pieces = pieces
        self.row_memberships = [[] for _ in range(ddg.k)]
        self.col_memberships = [[] for _ in range(ddg.k)]
        for px, piece in enumerate(pieces):
            for rx, pos in enumerate(piece.rows):
                self.row_memberships[pos].append((px, rx))
            for cx, pos in enumerate(piece.cols):
                self.col_memberships[pos].append((px, cx))


def _region_adjacency(g, region):
    adj = {}
    for e in region.edges:
        for d in (2 * e, 2 * e + 1):
            if g.length[d] != INF:
                adj.setdefault(g.tail[d], []).append((g.head[d], g.length[d]))
    return adj


def _dijkstra_in_region(adj, source, targets):
    dist = {source: 0}
    pq = [(0, source)]
    remaining = set(targets)
    remaining.discard(source)
    out = {source: 0}
    while pq and remaining:
        dv, v = heapq.heappop(pq)
        if dv > dist.get(v, INF):
            continue
        if v in remaining:
            remaining.discard(v)
            out[v] = dv
        for w, ln in adj.get(v, ()):
            nd = dv + ln
            if nd < dist.get(w, INF):
                dist[w] = nd
                heapq.heappush(pq, (nd, w))
    return out


def _hole_block_views(D, positions):
    """Upper and lower triangle views of one hole block (relative indices)."""
    kh = len(positions)

    def up_entry(i, j):
        return D[positions[i]][positions[j]]

    upper = MongeMatrixView(kh, kh, up_entry, lo=list(range(kh)), hi=[kh - 1] * kh)
    lower = MongeMatrixView(kh, kh, up_entry, lo=[0] * kh, hi=list(range(kh)))
    return upper, lower


def build_ddg(g, region, *, check_monge=True, max_exhaustive=40):
    """Distance matrix over the region's boundary with per-hole Monge checks.

    Hole blocks failing the triangle check (possible only with multiple
    holes, where paths may avoid crossing) are demoted to explicit arcs, as
    are blocks containing unreachable pairs: the envelope structures compare
    entries across whole rows, so even one infinite entry can corrupt their
    routing decisions for unrelated rows.  Piece heaps therefore only ever
    see finite matrices.
    """
    hole_assigned = {}
    holes_pos = []
    verts = []
    for hx, hole in enumerate(region.holes):
        block = []
        for v in hole:
            if v in hole_assigned:
                continue            # vertex already owned by an earlier hole
            hole_assigned[v] = hx
            block.append(len(verts))
            verts.append(v)
        holes_pos.append(tuple(block))
    strays = []
    for v in region.stray_boundary:
        strays.append(len(verts))
        verts.append(v)
    index = {v: p for p, v in enumerate(verts)}
    k = len(verts)
    hole_of = [-1] * k
    for hx, block in enumerate(holes_pos):
        for p in block:
            hole_of[p] = hx

    adj = _region_adjacency(g, region)
    D = [[INF] * k for _ in range(k)]
    targets = list(verts)
    for p, v in enumerate(verts):
        got = _dijkstra_in_region(adj, v, targets)
        row = D[p]
        for q, w in enumerate(verts):
            row[q] = got.get(w, INF)
        row[p] = 0

    demoted = set()
    if check_monge:
        for hx, block in enumerate(holes_pos):
            if len(block) < 2:
                continue
            # the envelope machinery needs finite blocks: a single unreachable
            # pair sends the whole hole to explicit arcs
            if any(D[p][q] == INF for p in block for q in block if p != q):
                demoted.add(hx)
                continue
            upper, lower = _hole_block_views(D, block)
            ok_u = monge_check(upper, max_exhaustive=max_exhaustive,
                               raise_on_fail=False)
            ok_l = ok_u and monge_check(lower, max_exhaustive=max_exhaustive,
                                        raise_on_fail=False)
            if not (ok_u and ok_l):
                demoted.add(hx)

    return DenseDistanceGraph(region, tuple(verts), index, D,
                              tuple(holes_pos), hole_of, tuple(strays),
                              frozenset(demoted))


def triangle_views(ddg, hole=0):
    """Upper and lower triangle views of one hole block, in DDG positions.

    Entries are addressed by index within the block; ``ddg.holes[hole]``
    translates to DDG positions.  Raises MongeViolation through monge_check
    if the block was built unchecked and the caller asks for verification.
    """
    return _hole_block_views(ddg.D, ddg.holes[hole])


def bipartite_decompose(ddg):
    """Recursive halving of each non-demoted hole block into directed pieces."""
    pieces = []
    for hx, block in enumerate(ddg.holes):
        if hx in ddg.demoted:
            continue
        stack = [(0, len(block))]
        while stack:
            lo, hi = stack.pop()
            if hi - lo < 2:
                continue
            mid = (lo + hi) // 2
            a = block[lo:mid]
            b = block[mid:hi]
            mat_ab = [[ddg.D[p][q] for q in b] for p in a]
            mat_ba = [[ddg.D[p][q] for q in a] for p in b]
            pieces.append(Piece(hx, tuple(a), tuple(b), mat_ab))
            pieces.append(Piece(hx, tuple(b), tuple(a), mat_ba))
            stack.append((lo, mid))
            stack.append((mid, hi))
    return BipartiteFamily(ddg, pieces)


def explicit_arcs(ddg):
    """Ordered pairs not covered by any piece, as (tail pos, head pos, length).

    Covers stray vertices, cross-hole pairs, and demoted hole blocks; skips
    unreachable (infinite) pairs.
    """
    out = []
    k = ddg.k
    hole_of = ddg.hole_of
    demoted = ddg.demoted
    for p in range(k):
        hp = hole_of[p]
        for q in range(k):
            if p == q or ddg.D[p][q] == INF:
                continue
            hq = hole_of[q]
            if hp >= 0 and hp == hq and hp not in demoted:
                continue            # covered by a piece
            out.append((p, q, ddg.D[p][q]))
    return out


def ddg_union_adjacency(g, ddgs):
    """Adjacency over global vertex ids of the union of complete DDGs (the
    oracle view used by differential tests and the baseline searches)."""
    adj = {}
    for ddg in ddgs:
        for p, u in enumerate(ddg.verts):
            lst = adj.setdefault(u, [])
            for q, v in enumerate(ddg.verts):
                if p != q and ddg.D[p][q] != INF:
                    lst.append((v, ddg.D[p][q]))
    return adj


def dump_ddg(ddg):
    """Text dump: ``ddg <region-id> <k>`` header plus k matrix rows."""
    lines = [f"ddg {ddg.region.id} {ddg.k}"]
    for p in range(ddg.k):
        lines.append(" ".join(
            "inf" if x == INF else (str(int(x)) if isinstance(x, float) and x.is_integer()
                                    else str(x))
            for x in ddg.D[p]))
    return "\n".join(lines) + "\n"
