"""Maximum s-t flow in embedded planar graphs via dual shortest paths.

The core idea: a minimum s-t cut is a shortest cycle in the dual that
separates s from t.  With s and t joined by an auxiliary edge, that cycle is
found by one dual shortest-path pass whose arc lengths are residual
capacities.  For arbitrary s and t, an auxiliary path of new zero-capacity
edges is embedded from s to t and one such pass is run per path edge; the
accumulated dual potentials yield a preflow that a cleanup pass turns into a
maximum flow.

Two drivers share this skeleton: ``max_flow_basic`` runs each pass with a
plain Dijkstra over the whole dual, while ``max_flow_fast`` divides the dual
into regions once, replaces region interiors by their boundary-to-boundary
distance matrices, and runs each pass with the region-processing engine.
Flows are reported per dart: ``f[d]`` is the net flow along dart ``d``, with
``f[d] == -f[d ^ 1]``.
"""

from __future__ import annotations

import heapq
import math

from collections import deque

from .errors import (BadParams, CyclicAfterCancellation, GraphFormatError,
                     NegativeResidual)
from .hkrs_fr import hkrs_preprocess, hkrs_sssp
from .planar_core import dual_graph, insert_edge_in_face

INF = math.inf


def capacity_bound(g):
    """A finite stand-in for an unbounded capacity: above any possible flow."""
    return sum(c for c in g.capacity if c != INF) + 1


def _effective_caps(g, capinf):
    return [capinf if c == INF else c for c in g.capacity]


# --------------------------------------------------------------------------
# auxiliary s-t path
# --------------------------------------------------------------------------

def embed_st_path(g, s, t):
    """Join s to t with new zero-capacity edges, one per face hop.

    A breadth-first search over vertex-face incidences finds the fewest
    insertions; each hop inserts one chord inside the face it hops through.
    Returns ``(g2, pverts, pedges)`` with ``pverts = [s, ..., t]`` and
    ``pedges[i]`` the new edge index between ``pverts[i]`` and
    ``pverts[i + 1]``.
    """
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise BadParams(f"terminal out of range: s={s} t={t} n={g.n}")
    if s == t:
        return g, [s], []
    face_of = g.face_of
    vert_faces = [sorted({face_of[d] for d in g.out_darts[v]})
                  for v in range(g.n)]
    face_verts = [sorted(set(g.face_vertex_cycle(fid)))
                  for fid in range(len(g.faces))]
    # BFS over the bipartite incidence structure; faces are offset by n
    n = g.n
    prev = {s: s}
    queue = deque([s])
    while queue and t not in prev:
        x = queue.popleft()
        if x < n:
            nbrs = (n + fid for fid in vert_faces[x])
        else:
            nbrs = iter(face_verts[x - n])
        for y in nbrs:
            if y not in prev:
                prev[y] = x
                queue.append(y)
    if t not in prev:
        raise GraphFormatError("source and sink are not connected")
    node_path = [t]
    while node_path[-1] != s:
        node_path.append(prev[node_path[-1]])
    node_path.reverse()
    pverts = [x for x in node_path if x < n]
    pfaces = [x - n for x in node_path if x >= n]

    def corner(fid, v):
        best = -1
        for d in g.faces[fid]:
            if g.head[d] == v and (best < 0 or d < best):
                best = d
        return best

    # corner darts chosen in the original graph stay valid: each insertion
    # splits only its own face, and the path faces are distinct
    hops = [(corner(fid, pverts[i]), corner(fid, pverts[i + 1]))
            for i, fid in enumerate(pfaces)]
    cur = g
    pedges = []
    for du, dv in hops:
        cur, e = insert_edge_in_face(cur, du, dv, 0, 0, 0, 0)
        pedges.append(e)
    return cur, pverts, pedges


# --------------------------------------------------------------------------
# dual passes with explicit residual capacities (basic driver)
# --------------------------------------------------------------------------

def _dual_sssp(g, lengths, seeds, skip_dart=None):
    """Dijkstra over dual arcs face(d) -> face(rev d); lengths per dart.

    ``seeds`` holds (initial label, face) pairs; labels may be negative, arc
    lengths may not.  ``skip_dart`` leaves one dart's dual arc out — used for
    the arc whose effect the caller folded into a seed.
    """
    face_of = g.face_of
    out = [[] for _ in g.faces]
    for d in range(2 * g.m):
        if d == skip_dart:
            continue
        ln = lengths[d]
        if ln == INF:
            continue
        if ln < 0:
            raise NegativeResidual(f"dart {d} has residual {ln}")
        out[face_of[d]].append((face_of[d ^ 1], ln))
    dist = [INF] * len(g.faces)
    pq = []
    for lab, v in seeds:
        if lab < dist[v]:
            dist[v] = lab
            heapq.heappush(pq, (lab, v))
    while pq:
        dv, v = heapq.heappop(pq)
        if dv > dist[v]:
            continue
        for w, ln in out[v]:
            nd = dv + ln
            if nd < dist[w]:
                dist[w] = nd
                heapq.heappush(pq, (nd, w))
    return dist


def _iterate_dual_passes(g2, pedges, capinf):
    """One dual pass per auxiliary edge; returns (value, potentials, values).

    Capacities of auxiliary arcs start at 0 forward and unbounded backward.
    Each pass bounds the backward arc by the pending excess, runs a dual
    shortest-path computation whose arc lengths are residual capacities, and
    accumulates the distances into the potential ``pi``.  Freezing both
    residuals of the processed edge at zero afterwards pins all later
    potentials to agree across it, so its flow never changes again.  The
    flow across a dart is ``pi[right] - pi[left]`` throughout.
    """
    face_of = g2.face_of
    num_darts = 2 * g2.m
    c = _effective_caps(g2, capinf)
    for e in pedges:
        c[2 * e] = 0
        c[2 * e + 1] = capinf
    pi = [0] * len(g2.faces)

    def fval(d):
        return pi[face_of[d ^ 1]] - pi[face_of[d]]

    excess = capinf
    values = []
    for e in pedges:
        fwd, rev = 2 * e, 2 * e + 1
        c[rev] = excess
        res = [c[d] - fval(d) for d in range(num_darts)]
        # earlier passes may have shipped more across this edge's unbounded
        # backward arc than the pending excess, leaving that one arc out of
        # the source with negative residual; folding it into a seed keeps
        # Dijkstra exact (a pass can always undo previously shipped flow, so
        # no negative cycle exists)
        seeds = [(0, face_of[rev]), (res[rev], face_of[fwd])]
        delta = _dual_sssp(g2, res, seeds, skip_dart=rev)
        if any(x == INF for x in delta):
            raise GraphFormatError("dual graph not strongly connected")
        for psi in range(len(pi)):
            pi[psi] += delta[psi]
        sent = fval(rev)
        c[rev] = sent
        c[fwd] = -sent
        excess = sent
        values.append(sent)
    return excess, pi, values


# --------------------------------------------------------------------------
# preflow cleanup and checking
# --------------------------------------------------------------------------

def imbalance(g, f, v):
    """Inflow minus outflow at ``v`` (s is negative, t positive)."""
    return -sum(f[d] for d in g.out_darts[v])


def _find_positive_cycle(g, f):
    color = [0] * g.n
    parent_dart = [-1] * g.n
    for v0 in range(g.n):
        if color[v0]:
            continue
        color[v0] = 1
        stack = [(v0, iter(g.out_darts[v0]))]
        while stack:
            v, it = stack[-1]
            d = next(it, None)
            if d is None:
                color[v] = 2
                stack.pop()
                continue
            if f[d] <= 0:
                continue
            w = g.head[d]
            if color[w] == 0:
                color[w] = 1
                parent_dart[w] = d
                stack.append((w, iter(g.out_darts[w])))
            elif color[w] == 1:
                cyc = [d]
                x = v
                while x != w:
                    pd = parent_dart[x]
                    cyc.append(pd)
                    x = g.tail[pd]
                return cyc
    return None


def preflow_to_flow(g, flow, s, t):
    """Cancel positive-flow cycles, then push stranded excess back to s.

    ``flow`` is a per-dart list with ``flow[d] == -flow[d ^ 1]``.  Returns a
    repaired copy in which conservation holds at every vertex except s and t
    and the amount entering t is unchanged.
    """
    f = list(flow)
    while True:
        cyc = _find_positive_cycle(g, f)
        if cyc is None:
            break
        m = min(f[d] for d in cyc)
        for d in cyc:
            f[d] -= m
            f[d ^ 1] += m
    # topological order of the remaining positive-flow arcs
    indeg = [0] * g.n
    for d in range(2 * g.m):
        if f[d] > 0:
            indeg[g.head[d]] += 1
    order = []
    queue = deque(v for v in range(g.n) if indeg[v] == 0)
    while queue:
        v = queue.popleft()
        order.append(v)
        for d in g.out_darts[v]:
            if f[d] > 0:
                indeg[g.head[d]] -= 1
                if indeg[g.head[d]] == 0:
                    queue.append(g.head[d])
    if len(order) != g.n:
        raise CyclicAfterCancellation(
            f"{g.n - len(order)} vertices remain on positive-flow cycles")
    for v in reversed(order):
        if v == s or v == t:
            continue
        ex = imbalance(g, f, v)
        if ex <= 0:
            if ex < 0:
                raise CyclicAfterCancellation(
                    f"vertex {v} has negative excess {ex}")
            continue
        # drain excess from incoming arcs, preferring those not from t
        in_darts = sorted((d ^ 1 for d in g.out_darts[v]),
                          key=lambda d: (g.tail[d] == t, d))
        for d in in_darts:
            if ex <= 0:
                break
            if f[d] > 0:
                take = min(f[d], ex)
                f[d] -= take
                f[d ^ 1] += take
                ex -= take
        if ex > 0:
            raise CyclicAfterCancellation(
                f"vertex {v} could not drain excess {ex}")
    return f


def check_flow(g, f, s, t, value, *, tol=0):
    """Validate a per-dart flow and certify optimality by a residual cut.

    Checks antisymmetry, capacity, conservation away from the terminals, the
    claimed value at both terminals, and that the cut induced by residual
    reachability from s has capacity exactly ``value``.  Raises
    AssertionError with a description on the first failure.
    """
    for d in range(2 * g.m):
        assert abs(f[d] + f[d ^ 1]) <= tol, \
            f"antisymmetry fails on darts {d},{d ^ 1}: {f[d]} vs {f[d ^ 1]}"
        assert f[d] <= g.capacity[d] + tol, \
            f"capacity exceeded on dart {d}: {f[d]} > {g.capacity[d]}"
    for v in range(g.n):
        if v in (s, t):
            continue
        ex = imbalance(g, f, v)
        assert abs(ex) <= tol, f"conservation fails at {v}: excess {ex}"
    assert abs(imbalance(g, f, t) - value) <= tol, \
        f"value at sink is {imbalance(g, f, t)}, claimed {value}"
    assert abs(imbalance(g, f, s) + value) <= tol, \
        f"value at source is {-imbalance(g, f, s)}, claimed {value}"
    # residual reachability cut
    reach = [False] * g.n
    reach[s] = True
    stack = [s]
    while stack:
        v = stack.pop()
        for d in g.out_darts[v]:
            w = g.head[d]
            if not reach[w] and g.capacity[d] - f[d] > tol:
                reach[w] = True
                stack.append(w)
    assert not reach[t], "sink is residual-reachable from source"
    cut = sum(g.capacity[d] for d in range(2 * g.m)
              if reach[g.tail[d]] and not reach[g.head[d]])
    assert abs(cut - value) <= tol, \
        f"residual cut has capacity {cut}, claimed value {value}"
    return True


# --------------------------------------------------------------------------
# drivers
# --------------------------------------------------------------------------

def _finish(g, g2, pverts, pi, value, capinf, info):
    """Turn accumulated dual potentials into a feasible flow on ``g``.

    The flow across a dart is the potential difference across it; residuals
    of real darts must come out non-negative.  The auxiliary edges are
    dropped (their darts are all beyond ``2 * g.m``), which leaves a preflow
    whose only imbalances sit on the path vertices, and the conversion
    returns that excess to the source.
    """
    if value >= capinf:
        raise BadParams("flow value is unbounded")
    caps = _effective_caps(g, capinf)
    face_of = g2.face_of
    pre = []
    for d in range(2 * g.m):
        fd = pi[face_of[d ^ 1]] - pi[face_of[d]]
        if caps[d] - fd < 0:
            raise NegativeResidual(f"dart {d} has residual {caps[d] - fd}")
        pre.append(fd)
    f = preflow_to_flow(g, pre, pverts[0], pverts[-1])
    info["value"] = value
    return value, f, info


def max_flow_basic(g, s, t):
    """Maximum s-t flow by one whole-dual Dijkstra per auxiliary path edge.

    Returns ``(value, f, info)`` where ``f`` is the per-dart net flow on the
    input graph.
    """
    g2, pverts, pedges = embed_st_path(g, s, t)
    if not pedges:
        return 0, [0] * (2 * g.m), {"p": 0, "value": 0}
    capinf = capacity_bound(g)
    value, pi, values = _iterate_dual_passes(g2, pedges, capinf)
    info = {"p": len(pedges), "pass_values": values}
    return _finish(g, g2, pverts, pi, value, capinf, info)


def hassin_flow(g, s, t):
    """The single-pass special case: s and t on a common face.

    One auxiliary edge and one dual shortest-path pass.  Raises
    GraphFormatError when s and t do not share a face.
    """
    if s != t and not ({g.face_of[d] for d in g.out_darts[s]} &
                       {g.face_of[d] for d in g.out_darts[t]}):
        raise GraphFormatError("terminals do not share a face")
    value, f, info = max_flow_basic(g, s, t)
    assert info["p"] <= 1
    return value, f, info


def _fast_region_size(p):
    if p < 2:
        return 4
    return max(4, p * p * math.ceil(math.log2(p)) ** 6)


def prefers_basic(p, n):
    """Whether the auxiliary path is long enough that the plain driver wins."""
    return p >= math.sqrt(n) / max(1.0, math.log2(n)) ** 3


def max_flow_fast(g, s, t, *, backend="cq3", force_engine=None):
    """Maximum s-t flow with the region engine running the dual passes.

    The dual of the path-embedded graph is divided once with every face
    touching the auxiliary path forced onto region boundaries; the path-
    crossing dual arcs are kept out of the prebuilt distance matrices and fed
    to each pass as explicit arcs.  Relaxations run in shifted-label space
    (labels = accumulated potential + current pass distance), where real
    darts keep their original capacities as lengths — so the matrices never
    need rebuilding — and each explicit arc's length collapses to a constant:
    zero forward and the capacity bound backward while unprocessed, the
    pending excess on the pass's own return arc, and a frozen +/- pair
    afterwards that pins later potentials to equal differences across the
    edge (the backward member is negative; relaxation converges all the same
    since each pair sums to zero).  Falls back to
    ``max_flow_basic`` when the path is long relative to the graph
    (``force_engine`` overrides that heuristic).
    """
    g2, pverts, pedges = embed_st_path(g, s, t)
    p = len(pedges)
    if not pedges:
        return 0, [0] * (2 * g.m), {"p": 0, "value": 0, "delegated": False}
    capinf = capacity_bound(g)
    r = _fast_region_size(p)
    dual_n = len(g2.faces)
    delegate = prefers_basic(p, g2.n) or r >= dual_n
    if force_engine is not None:
        delegate = not force_engine
        r = min(r, dual_n - 1)
    if delegate:
        value, pi, values = _iterate_dual_passes(g2, pedges, capinf)
        info = {"p": p, "pass_values": values, "delegated": True}
        return _finish(g, g2, pverts, pi, value, capinf, info)

    # dual division: path-crossing darts excluded from the prebuilt matrices
    dlen = _effective_caps(g2, capinf)
    path_darts = [d for e in pedges for d in (2 * e, 2 * e + 1)]
    for d in path_darts:
        dlen[d] = INF
    dg = dual_graph(g2, dlen)
    xstar = sorted({dg.tail[d] for d in path_darts} |
                   {dg.head[d] for d in path_darts})
    prep = hkrs_preprocess(dg, r, backend=backend,
                           mandatory_boundary=tuple(xstar))
    # shifted lengths: an unprocessed auxiliary edge costs nothing to cross
    # forward and the capacity bound to cross backward
    arc_item = {d: prep.add_external_arc(dg.tail[d], dg.head[d],
                                         0 if d % 2 == 0 else capinf)
                for d in path_darts}

    pi = {b: 0 for b in prep.boundary_set}
    excess = capinf
    values = []
    stats = {"heap_ops": 0, "mh_ops": 0, "rmq_ops": 0, "h0_procs": 0}
    for e in pedges:
        fwd, rev = 2 * e, 2 * e + 1
        src, far = dg.tail[rev], dg.head[rev]
        prep.set_arc_length(arc_item[rev], excess)
        lam, stt = hkrs_sssp(prep, src, source_label=pi[src])
        for k in stats:
            stats[k] += stt[k]
        assert all(lam.get(x, INF) < INF for x in prep.boundary_set), \
            "a boundary face was not reached"
        value = lam[far] - lam[src]
        # freeze this edge at zero residual both ways: later potentials must
        # agree across it up to the shift recorded now, so its flow is final
        prep.set_arc_length(arc_item[fwd], -value)
        prep.set_arc_length(arc_item[rev], value)
        pi = {x: lam[x] for x in prep.boundary_set}
        excess = value
        values.append(value)

    # extend potentials to region interiors: multi-source passes on original
    # capacities seeded with the boundary potentials
    pi_full = dict(pi)
    for rid in prep.h1:
        R = prep.by_id[rid]
        adj = {}
        for e2 in R.edges:
            for d in (2 * e2, 2 * e2 + 1):
                if dg.length[d] != INF:
                    adj.setdefault(dg.tail[d], []).append((dg.head[d],
                                                           dg.length[d]))
        seeds = [(pi[v], v) for v in prep.ddgs[rid].verts]
        dist = _multi_source_dijkstra(adj, seeds)
        for v in R.vertices:
            if v not in pi:
                got = dist.get(v, INF)
                assert got < INF, f"face {v} unreachable in its region"
                prev = pi_full.get(v)
                pi_full[v] = got if prev is None else min(prev, got)
    assert len(pi_full) == dual_n, "potential extension missed a face"

    info = {"p": p, "pass_values": values, "delegated": False, "r": r,
            "dual_n": dual_n, "stats": stats}
    return _finish(g, g2, pverts, pi_full, excess, capinf, info)


def _multi_source_dijkstra(adj, seeds):
    dist = {}
    pq = []
    for lab, v in seeds:
        if lab < dist.get(v, INF):
            dist[v] = lab
            heapq.heappush(pq, (lab, v))
    while pq:
        dv, v = heapq.heappop(pq)
        if dv > dist.get(v, INF):
            continue
        for w, ln in adj.get(v, ()):
            nd = dv + ln
            if nd < dist.get(w, INF):
                dist[w] = nd
                heapq.heappush(pq, (nd, w))
    return dist


# --------------------------------------------------------------------------
# network files
# --------------------------------------------------------------------------

def write_flow_network(g, s, t, path):
    """Write a flow network: DIMACS-style lines plus the rotation block.

    ``p max <V> <A>`` then ``n <id> s`` / ``n <id> t``, one ``a <u> <v>
    <cap>`` line per dart with positive capacity, and one rotation line per
    vertex listing its darts in embedding order.  Vertex ids are 0-based;
    arc ``i`` in file order owns darts ``2i`` and ``2i + 1``.
    """
    from .planar_core import _fmt_num

    arc_lines = []
    for d in range(2 * g.m):
        if g.capacity[d] != 0 or d % 2 == 0:
            arc_lines.append(f"a {g.tail[d]} {g.head[d]} {_fmt_num(g.capacity[d])}")
    lines = [f"p max {g.n} {len(arc_lines)}", f"n {s} s", f"n {t} t"]
    lines.extend(arc_lines)
    for v in range(g.n):
        lines.append(" ".join(str(d) for d in g.out_darts[v]) or "-")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_flow_network(path):
    """Parse a flow network written by ``write_flow_network``.

    Returns ``(g, s, t)``.  Raises GraphFormatError on malformed input.
    """
    from .planar_core import _parse_num

    with open(path) as fh:
        raw = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("c")]
    if not raw or not raw[0].startswith("p max "):
        raise GraphFormatError("missing 'p max' header")
    try:
        _, _, n_s, a_s = raw[0].split()
        n, a = int(n_s), int(a_s)
    except ValueError as exc:
        raise GraphFormatError(f"bad header {raw[0]!r}") from exc
    s = t = None
    ix = 1
    while ix < len(raw) and raw[ix].startswith("n "):
        parts = raw[ix].split()
        if len(parts) != 3 or parts[2] not in ("s", "t"):
            raise GraphFormatError(f"bad terminal line {raw[ix]!r}")
        v = int(parts[1])
        if not 0 <= v < n:
            raise GraphFormatError(f"terminal {v} out of range")
        if parts[2] == "s":
            if s is not None:
                raise GraphFormatError("duplicate source line")
            s = v
        else:
            if t is not None:
                raise GraphFormatError("duplicate sink line")
            t = v
        ix += 1
    if s is None or t is None:
        raise GraphFormatError("missing source or sink line")
    if len(raw) != ix + a + n:
        raise GraphFormatError(
            f"expected {ix + a + n} lines, found {len(raw)}")
    # gather directed capacities; a dart may appear once
    darts = []
    for ln in raw[ix:ix + a]:
        parts = ln.split()
        if len(parts) != 4 or parts[0] != "a":
            raise GraphFormatError(f"bad arc line {ln!r}")
        u, v = int(parts[1]), int(parts[2])
        cap = _parse_num(parts[3])
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"arc ({u},{v}) out of range")
        if not cap == INF and cap < 0:
            raise GraphFormatError(f"negative capacity on ({u},{v})")
        darts.append((u, v, cap))
    # pair mentions of each unordered pair into edges, first mention forward
    from .planar_core import graph_from_darts

    edge_ix = {}
    tail, head, length, capacity = [], [], [], []
    rev_seen = set()
    for u, v, cap in darts:
        key = (u, v) if u < v else (v, u)
        if key in edge_ix:
            e = edge_ix[key]
            if tail[2 * e] == u or e in rev_seen:
                raise GraphFormatError(f"arc ({u},{v}) given twice")
            rev_seen.add(e)
            capacity[2 * e + 1] = cap
        else:
            edge_ix[key] = len(tail) // 2
            tail.extend((u, v))
            head.extend((v, u))
            length.extend((0, 0))
            capacity.extend((cap, 0))
    out_darts = []
    for ln in raw[ix + a:]:
        out_darts.append(tuple(int(x) for x in ln.split()) if ln != "-" else ())
    g = graph_from_darts(n, tail, head, length, capacity, out_darts)
    return g, s, t
