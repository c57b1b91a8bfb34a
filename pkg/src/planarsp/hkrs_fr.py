"""Hierarchical shortest-path engine over a recursive division.

Distances are computed over the union of height-1 region distance matrices
(plus explicit arcs), but the processing order is driven by a tree of
addressable heaps mirroring the recursive division: every region holds one
heap over its children, the leaves being three kinds of atomic *items*:

- hyperarc (heap h, row a): relax tail a's label into piece heap h, then
  push the heap's best child value to that child's copy label;
- copy-arc (heap h, column b): deliver the copy label to the real head
  vertex, fan improvements out to the head's own items, then consume the
  copy (extract) and push the owner's replacement child;
- explicit arc (u, w, len): a plain relaxation for traffic outside the
  Monge machinery.

An item's key is the label improvement it still has to deliver (infinity
when idle).  ``update`` lowers a key and climbs the tree exactly while a
region's minimum strictly drops; processing a region at height one pops one
item, at greater heights it gives each visit a fixed attention span of
child visits, re-reading the child's minimum after each.  Keys are processed
out of global order across regions, but labels only decrease and every
improvement re-queues its item, so the run ends exactly at the shortest-path
fixed point.

The piece heaps come in three interchangeable implementations: the envelope
tree backend ("cq3"), the per-row segment tree backend ("cq1"), and the
brute-force reference executor ("explicit") used for event-for-event trace
comparison — same driver, same tie rules, no Monge structure.
"""

from __future__ import annotations

import math

from .ddg import bipartite_decompose, build_ddg, explicit_arcs
from .division import recursive_division
from .errors import BadParams, SourceNotBoundary
from .heaps import AddressableHeap
from .monge_heap import ExplicitPieceHeap, HKMongeHeap

INF = math.inf

ALPHA = 3           # child visits per processing of a region above height 1

HYPER, COPY, XARC = 0, 1, 2
_TRACE_NAME = {HYPER: "hyper", COPY: "copy", XARC: "x"}


class HKRSPreprocess:
    """Division, per-region distance matrices, piece heaps, and item tables."""

    def __init__(self, g, r, *, backend="cq3", mandatory_boundary=(),
                 mandatory_faces=()):
        self.g = g
        self.r = r
        self.backend = backend
        self.div = recursive_division(g, r, mandatory_boundary=mandatory_boundary,
                                      mandatory_faces=mandatory_faces)
        self.by_id = {R.id: R for R in self.div.regions}
        self.h1 = sorted(R.id for R in self.div.by_height[1])
        self.ddgs = {}
        self.heaps = []
        self.heap_region = []
        self.heap_rows = []      # global vertex id per row index
        self.heap_cols = []      # global vertex id per column index
        # item tables (flat, deterministic construction order)
        self.it_type = []
        self.it_heap = []        # heap index (hyper/copy) or -1
        self.it_pos = []         # row/col index within the heap
        self.it_tail = []        # real tail vertex (hyper/xarc) or -1
        self.it_head = []        # real head vertex (copy/xarc) or -1
        self.it_len = []         # explicit arc length or 0
        self.it_region = []      # owning height-1 region id
        self.region_items = {rid: [] for rid in self.h1}
        self.tail_items = {}
        self.copy_item = {}

        def add_item(ty, heap, pos, tail, head, ln, rid):
            ix = len(self.it_type)
            self.it_type.append(ty)
            self.it_heap.append(heap)
            self.it_pos.append(pos)
            self.it_tail.append(tail)
            self.it_head.append(head)
            self.it_len.append(ln)
            self.it_region.append(rid)
            self.region_items[rid].append(ix)
            if ty in (HYPER, XARC):
                self.tail_items.setdefault(tail, []).append(ix)
            if ty == COPY:
                self.copy_item[(heap, pos)] = ix
            return ix

        for rid in self.h1:
            R = self.by_id[rid]
            ddg = build_ddg(g, R)
            self.ddgs[rid] = ddg
            fam = bipartite_decompose(ddg)
            for piece in fam.pieces:
                hix = len(self.heaps)
                if backend == "explicit":
                    self.heaps.append(ExplicitPieceHeap(piece.matrix))
                else:
                    self.heaps.append(HKMongeHeap(piece.matrix, backend=backend))
                self.heap_region.append(rid)
                rows = tuple(ddg.verts[p] for p in piece.rows)
                cols = tuple(ddg.verts[p] for p in piece.cols)
                self.heap_rows.append(rows)
                self.heap_cols.append(cols)
                for ix, v in enumerate(rows):
                    add_item(HYPER, hix, ix, v, -1, 0, rid)
                for ix, v in enumerate(cols):
                    add_item(COPY, hix, ix, -1, v, 0, rid)
            for p, q, ln in explicit_arcs(ddg):
                add_item(XARC, -1, -1, ddg.verts[p], ddg.verts[q], ln, rid)

        self.boundary_set = {v for ddg in self.ddgs.values() for v in ddg.verts}
        self.num_items = len(self.it_type)
        self._home_region = None

    def add_external_arc(self, tail, head, length=INF):
        """Register an extra arc between boundary vertices; returns its item id.

        The arc participates in every subsequent run; its length may be
        changed between runs with ``set_arc_length`` (INF disables it).
        """
        if self._home_region is None:
            self._home_region = {}
            for rid in self.h1:
                for v in self.ddgs[rid].verts:
                    self._home_region.setdefault(v, rid)
        if tail not in self._home_region or head not in self.boundary_set:
            raise SourceNotBoundary(f"external arc {tail}->{head} off boundary")
        ix = self.num_items
        rid = self._home_region[tail]
        self.it_type.append(XARC)
        self.it_heap.append(-1)
        self.it_pos.append(-1)
        self.it_tail.append(tail)
        self.it_head.append(head)
        self.it_len.append(length)
        self.it_region.append(rid)
        self.region_items[rid].append(ix)
        self.tail_items.setdefault(tail, []).append(ix)
        self.num_items = ix + 1
        return ix

    def set_arc_length(self, item, length):
        if self.it_type[item] != XARC:
            raise BadParams("set_arc_length on a non-arc item")
        self.it_len[item] = length


def hkrs_preprocess(g, r, **kw):
    return HKRSPreprocess(g, r, **kw)


class _RunState:
    __slots__ = ("d", "copy_label", "q_of", "stats", "trace", "debug")

    def __init__(self, prep, trace, debug):
        self.d = {}
        self.copy_label = [[INF] * len(cols) for cols in prep.heap_cols]
        self.q_of = {}
        self.stats = {"heap_ops": 0, "mh_ops": 0, "rmq_ops": 0, "h0_procs": 0}
        self.trace = trace
        self.debug = debug


def _build_queues(prep, st):
    for rid, items in prep.region_items.items():
        q = AddressableHeap()
        for ix in items:
            q.push(ix, (INF, ix))
        st.q_of[rid] = q
        st.stats["heap_ops"] += len(items)
    for R in prep.div.regions:
        if R.height >= 2:
            q = AddressableHeap()
            for cid in R.children:
                q.push(cid, (INF, cid))
            st.q_of[R.id] = q
            st.stats["heap_ops"] += len(R.children)


def _minval(st, rid):
    q = st.q_of[rid]
    return q.peek()[0][0] if len(q) else INF


def _update(prep, st, item, value):
    """Lower an item's key; climb while a region's minimum strictly drops."""
    rid = prep.it_region[item]
    q = st.q_of[rid]
    if value >= q.key_of(item)[0]:
        return
    old_min = q.peek()[0][0]
    q.decrease_key(item, (value, item))
    st.stats["heap_ops"] += 1
    if value >= old_min:
        return
    child, new_min = rid, value
    while True:
        parent = prep.by_id[child].parent
        if parent == -1:
            return
        pq = st.q_of[parent]
        if new_min >= pq.key_of(child)[0]:
            return
        old_parent_min = pq.peek()[0][0]
        pq.decrease_key(child, (new_min, child))
        st.stats["heap_ops"] += 1
        if new_min >= old_parent_min:
            return
        child = parent


def _push_child_value(prep, st, hix, got):
    if got is None:
        return
    val, col = got
    if val < st.copy_label[hix][col]:
        st.copy_label[hix][col] = val
        _update(prep, st, prep.copy_item[(hix, col)], val)


def _fan_out(prep, st, v, label):
    for ix in prep.tail_items.get(v, ()):
        if prep.it_len[ix] == INF:       # disabled external arc
            continue
        _update(prep, st, ix, label)


def _process_item(prep, st, item):
    st.stats["h0_procs"] += 1
    ty = prep.it_type[item]
    if ty == HYPER:
        hix, a = prep.it_heap[item], prep.it_pos[item]
        tail = prep.it_tail[item]
        da = st.d.get(tail, INF)
        heap = prep.heaps[hix]
        losers = heap.fr_relax(a, da)
        _push_child_value(prep, st, hix, heap.fr_get_min_child(a))
        for row in losers:
            # a stolen column may have carried the loser's pending delivery;
            # re-point it at the loser's new minimum child
            _push_child_value(prep, st, hix, heap.fr_get_min_child(row))
        label = da
        who = tail
    elif ty == COPY:
        hix, b = prep.it_heap[item], prep.it_pos[item]
        head = prep.it_head[item]
        label = st.copy_label[hix][b]
        if label < st.d.get(head, INF):
            st.d[head] = label
            _fan_out(prep, st, head, label)
        _, repl = prep.heaps[hix].fr_extract(b)
        _push_child_value(prep, st, hix, repl)
        who = head
    else:
        tail, head = prep.it_tail[item], prep.it_head[item]
        label = st.d.get(tail, INF) + prep.it_len[item]
        if label < st.d.get(head, INF):
            st.d[head] = label
            _fan_out(prep, st, head, label)
        who = head
    q = st.q_of[prep.it_region[item]]
    q.change_key(item, (INF, item))
    st.stats["heap_ops"] += 1
    if st.trace is not None:
        st.trace.append(f"P {_TRACE_NAME[ty]} {who} {label}")
    if st.debug:
        check_invariants(prep, st)


def _process_region(prep, st, rid):
    R = prep.by_id[rid]
    q = st.q_of[rid]
    if R.height == 1:
        if not len(q):
            return
        (kv, _), item = q.peek()
        if kv == INF:
            return
        _process_item(prep, st, item)
        return
    for _ in range(ALPHA):
        if not len(q):
            return
        (kv, _), cid = q.peek()
        if kv == INF:
            return
        _process_region(prep, st, cid)
        q.change_key(cid, (_minval(st, cid), cid))
        st.stats["heap_ops"] += 1


def check_invariants(prep, st):
    """The three structural invariants, checked by brute force.

    1. A copy whose obtainable value beats its delivered label is active
       (the pending improvement can still be extracted).
    2. For every relaxed row with an active owned column, the minimum such
       child's copy label is accurate — it equals the value the row offers —
       and the structure reports exactly that child (explicit-scan check).
    3. A copy-arc item holding a finite key refers to an active copy.

    Raises AssertionError on the first violation.
    """
    for hix, heap in enumerate(prep.heaps):
        labels = st.copy_label[hix]
        for b in range(heap.C):
            if heap.owner[b] >= 0 and heap.column_value(b) < labels[b]:
                assert heap.active[b], \
                    f"heap {hix}: latent copy {b} is inactive"
        for a in range(heap.R):
            if heap.label[a] is None:
                continue
            best = None
            for b in range(heap.C):
                if heap.owner[b] == a and heap.active[b]:
                    v = heap.label[a] + heap.M[a][b]
                    if v < INF and (best is None or v < best[0]):
                        best = (v, b)
            got = heap.fr_get_min_child(a)
            assert got == best, \
                f"heap {hix}: row {a} reports {got}, scan finds {best}"
            if best is not None:
                assert labels[best[1]] == best[0], \
                    (f"heap {hix}: row {a} min child {best[1]} offers "
                     f"{best[0]} but its copy label is {labels[best[1]]}")
    for (hix, b), item in prep.copy_item.items():
        q = st.q_of[prep.it_region[item]]
        if q.key_of(item)[0] < INF:
            assert prep.heaps[hix].active[b], \
                f"heap {hix}: queued copy {b} is inactive"


def hkrs_sssp(prep, source, *, source_label=0, trace=None, debug=False):
    """Distances from a boundary vertex to all boundary vertices.

    Returns (dist dict, stats).  ``source_label`` offsets every reported
    distance (the source starts there instead of at 0).  ``trace`` (a list)
    collects one ``P <kind> <vertex> <label>`` line per atomic processing
    event; ``debug`` checks the three invariants after every such event.
    """
    if source not in prep.boundary_set:
        raise SourceNotBoundary(
            f"vertex {source} is not a boundary vertex of this division")
    for heap in prep.heaps:
        heap.reset()
    base_mh = sum(h.mh_ops for h in prep.heaps)
    base_rmq = sum(h.rmq_ops for h in prep.heaps)
    st = _RunState(prep, trace, debug)
    st.d[source] = source_label
    _build_queues(prep, st)
    _fan_out(prep, st, source, source_label)
    root = prep.div.root.id
    while _minval(st, root) < INF:
        _process_region(prep, st, root)
    st.stats["mh_ops"] = sum(h.mh_ops for h in prep.heaps) - base_mh
    st.stats["rmq_ops"] = sum(h.rmq_ops for h in prep.heaps) - base_rmq
    return dict(st.d), st.stats
