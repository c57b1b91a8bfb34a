"""Shortest paths over the union of region distance matrices.

Both engines compute exact distances from one boundary vertex to every
boundary vertex, using the dense per-region distance matrices instead of the
original arcs.  Arc bundles inside one hole are relaxed in batch through the
Monge machinery; cross-hole, stray, and demoted traffic travels over explicit
arcs.

``fr_dijkstra`` is the multi-copy baseline: every bipartite piece carries its
own extract-only Monge heap, a vertex is extracted once per piece that lists
it as a head, and a global lazy heap holds one representative candidate per
piece plus plain candidates for explicit arcs.  The first extraction of a
vertex finalizes it; later copies pop as stale representatives and are
discarded after a per-piece extraction.

``fr_dijkstra_single_copy`` keeps exactly one item per vertex in a global
addressable heap.  Per hole it uses the two triangle range-minimum trees
directly: finalizing a vertex deactivates its column everywhere, re-queries
the already-relaxed rows of the affected trees (their minimum may have moved
to the next column), and relaxes the vertex's own row once.

Both runs assert that finalized distances never decrease, and both report
operation counters (global heap, Monge-structure, range-minimum ops).
"""

from __future__ import annotations

import heapq
import math

from .ddg import bipartite_decompose, build_ddg, explicit_arcs, _hole_block_views
from .division import r_division
from .errors import SourceNotBoundary
from .monge_heap import FRMongeHeap
from .monge_rmq import DecrementalMongeRMQ
from .heaps import PairingHeap

INF = math.inf


class FRStructures:
    """Shared preprocessing for the baseline engines: the division, per-region
    distance matrices, bipartite pieces, triangle trees, and explicit arcs."""

    def __init__(self, g, r, *, mandatory_boundary=(), mandatory_faces=()):
        self.g = g
        self.r = r
        self.regions = r_division(g, r, mandatory_boundary=mandatory_boundary,
                                  mandatory_faces=mandatory_faces)
        self.ddgs = [build_ddg(g, R) for R in self.regions]
        self.fams = [bipartite_decompose(ddg) for ddg in self.ddgs]
        self.boundary = sorted({v for ddg in self.ddgs for v in ddg.verts})
        self.boundary_set = set(self.boundary)
        # explicit arcs by global tail id
        self.xarcs = {}
        for ddg in self.ddgs:
            for p, q, ln in explicit_arcs(ddg):
                self.xarcs.setdefault(ddg.verts[p], []).append((ddg.verts[q], ln))
        # multi-copy memberships: vertex -> (region ix, piece ix, row/col ix)
        self.row_of = {}
        self.col_of = {}
        for rix, (ddg, fam) in enumerate(zip(self.ddgs, self.fams)):
            for pix, piece in enumerate(fam.pieces):
                for ix, pos in enumerate(piece.rows):
                    self.row_of.setdefault(ddg.verts[pos], []).append((rix, pix, ix))
                for ix, pos in enumerate(piece.cols):
                    self.col_of.setdefault(ddg.verts[pos], []).append((rix, pix, ix))
        # single-copy triangle trees: one upper and one lower per live hole
        self.trees = []          # DecrementalMongeRMQ
        self.tree_range = []     # (side, block size); side 0 upper, 1 lower
        self.tree_members = []   # global vertex id per block position
        self.tree_row_of = {}    # vertex -> [(tree ix, block position)]
        for rix, ddg in enumerate(self.ddgs):
            for hx, block in enumerate(ddg.holes):
                if hx in ddg.demoted or len(block) < 2:
                    continue
                upper, lower = _hole_block_views(ddg.D, block)
                members = tuple(ddg.verts[p] for p in block)
                for side, view in ((0, upper), (1, lower)):
                    tix = len(self.trees)
                    self.trees.append(DecrementalMongeRMQ(view))
                    self.tree_range.append((side, len(block)))
                    self.tree_members.append(members)
                    for pos, v in enumerate(members):
                        self.tree_row_of.setdefault(v, []).append((tix, pos))
        self._tree_snaps = [t.snapshot() for t in self.trees]

    def reset_trees(self):
        for tree, snap in zip(self.trees, self._tree_snaps):
            tree.restore(snap)


def build_fr_structures(g, r, **kw):
    return FRStructures(g, r, **kw)


def _check_source(structs, source):
    if source not in structs.boundary_set:
        raise SourceNotBoundary(
            f"vertex {source} is not a boundary vertex of this division")


def fr_dijkstra(structs, source):
    """Multi-copy run; returns (dist dict over boundary vertices, stats)."""
    _check_source(structs, source)
    heaps = [[FRMongeHeap(p.matrix) for p in fam.pieces] for fam in structs.fams]
    verts_of = [ddg.verts for ddg in structs.ddgs]
    dist = {}
    stats = {"heap_ops": 0, "mh_ops": 0, "rmq_ops": 0}
    pq = [(0, source, 0, -1, -1)]   # (d, vertex, kind 0=plain/1=rep, region, piece)
    stats["heap_ops"] += 1
    last = -INF

    def push_rep(rix, pix):
        h = heaps[rix][pix]
        cur = h.mh_find_min()
        if cur is not None:
            val, col = cur
            head = verts_of[rix][structs.fams[rix].pieces[pix].cols[col]]
            heapq.heappush(pq, (val, head, 1, rix, pix))
            stats["heap_ops"] += 1

    def finalize(v, d):
        nonlocal last
        assert d >= last, "extraction order not monotone"
        last = d
        dist[v] = d
        for rix, pix, row in structs.row_of.get(v, ()):
            heaps[rix][pix].mh_activate(row, d)
            push_rep(rix, pix)
        for w, ln in structs.xarcs.get(v, ()):
            if w not in dist:
                heapq.heappush(pq, (d + ln, w, 0, -1, -1))
                stats["heap_ops"] += 1

    while pq:
        d, v, kind, rix, pix = heapq.heappop(pq)
        stats["heap_ops"] += 1
        if kind == 1:
            h = heaps[rix][pix]
            cur = h.mh_find_min()
            if cur is None:
                continue
            val, col = cur
            head = verts_of[rix][structs.fams[rix].pieces[pix].cols[col]]
            if val != d or head != v:
                continue            # stale representative
            h.mh_extract_min()
            push_rep(rix, pix)
            if v in dist:
                continue            # a later copy of a finalized vertex
            finalize(v, d)
        else:
            if v in dist:
                continue
            finalize(v, d)

    for row in heaps:
        for h in row:
            stats["mh_ops"] += h.mh_ops
            stats["rmq_ops"] += h.rmq_ops
    return dist, stats


def fr_dijkstra_single_copy(structs, source):
    """Single-copy run; returns (dist dict over boundary vertices, stats)."""
    _check_source(structs, source)
    structs.reset_trees()
    trees = structs.trees
    base_rmq = sum(t.ops for t in trees)
    ph = PairingHeap()
    for v in structs.boundary:
        ph.push(v, (INF, v))
    ph.decrease_key(source, (0, source))
    dist = {}
    relaxed_rows = [[] for _ in trees]    # (block position, label)
    stats = {"heap_ops": 1 + len(structs.boundary), "mh_ops": 0, "rmq_ops": 0}
    last = -INF

    def offer(w, nd):
        if w in dist or w not in ph:
            return
        if nd < ph.key_of(w)[0]:
            ph.decrease_key(w, (nd, w))
            stats["heap_ops"] += 1

    def row_query(tix, pos):
        side, kh = structs.tree_range[tix]
        a, b = (pos, kh - 1) if side == 0 else (0, pos)
        val, col = trees[tix].query(pos, a, b)
        if col < 0 or val == INF:
            return None
        return val, col

    while len(ph):
        (d, _), v = ph.pop()
        stats["heap_ops"] += 1
        if d == INF:
            break                   # the rest is unreachable
        assert d >= last, "extraction order not monotone"
        last = d
        dist[v] = d
        memberships = structs.tree_row_of.get(v, ())
        # retire v as a head everywhere first (the row relaxation below must
        # not see its own diagonal), then refresh rows whose minimum may have
        # pointed at the removed column
        for tix, pos in memberships:
            trees[tix].deactivate_col(pos)
        for tix, pos in memberships:
            members = structs.tree_members[tix]
            for a, la in relaxed_rows[tix]:
                got = row_query(tix, a)
                if got is not None:
                    offer(members[got[1]], la + got[0])
        for tix, pos in memberships:
            relaxed_rows[tix].append((pos, d))
            got = row_query(tix, pos)
            if got is not None:
                offer(structs.tree_members[tix][got[1]], d + got[0])
        for w, ln in structs.xarcs.get(v, ()):
            offer(w, d + ln)

    stats["rmq_ops"] = sum(t.ops for t in trees) - base_rmq
    return dist, stats
