"""Reference implementations used to verify the optimized engine.

Everything here is deliberately simple and independent of the embedded-graph
machinery: plain adjacency lists, textbook algorithms, no shared code with the
structures under test.
"""

from __future__ import annotations

import heapq
import math
from collections import deque

INF = math.inf


def dijkstra(adj, source):
    """Single-source shortest paths over adjacency lists [(head, length), ...]."""
    dist = [INF] * len(adj)
    dist[source] = 0
    pq = [(0, source)]
    while pq:
        d, v = heapq.heappop(pq)
        if d > dist[v]:
            continue
        for w, ln in adj[v]:
            nd = d + ln
            if nd < dist[w]:
                dist[w] = nd
                heapq.heappush(pq, (nd, w))
    return dist


def dijkstra_dict(adj, source):
    """Dijkstra over a dict adjacency {v: [(head, length), ...]} on sparse ids."""
    dist = {source: 0}
    pq = [(0, source)]
    while pq:
        d, v = heapq.heappop(pq)
        if d > dist.get(v, INF):
            continue
        for w, ln in adj.get(v, ()):
            nd = d + ln
            if nd < dist.get(w, INF):
                dist[w] = nd
                heapq.heappush(pq, (nd, w))
    return dist


def bellman_ford(adj, source):
    """Shortest paths tolerant of negative lengths; returns None on a negative cycle."""
    n = len(adj)
    dist = [INF] * n
    dist[source] = 0
    for _ in range(n):
        changed = False
        for v in range(n):
            dv = dist[v]
            if dv == INF:
                continue
            for w, ln in adj[v]:
                if dv + ln < dist[w]:
                    dist[w] = dv + ln
                    changed = True
        if not changed:
            return dist
    return None


def bfs_levels(adj, sources):
    """Unweighted distance (hop count) from a set of sources."""
    dist = [-1] * len(adj)
    q = deque()
    for s in sources:
        dist[s] = 0
        q.append(s)
    while q:
        v = q.popleft()
        for w, _ in adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                q.append(w)
    return dist


def scipy_dijkstra_many(adj, sources):
    """Distances from each source via scipy's compiled Dijkstra (bulk oracle)."""
    import numpy as np
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import dijkstra as csgraph_dijkstra

    n = len(adj)
    rows, cols, vals = [], [], []
    for v, nbrs in enumerate(adj):
        for w, ln in nbrs:
            rows.append(v)
            cols.append(w)
            vals.append(ln)
    mat = csr_matrix((vals, (rows, cols)), shape=(n, n))
    return csgraph_dijkstra(mat, directed=True, indices=np.asarray(sources, dtype=np.int64))


def edmonds_karp(n, arcs, source, sink):
    """Max flow by shortest augmenting paths.

    ``arcs``: iterable of (u, v, capacity).  Returns (value, flow) where flow
    maps (u, v) -> net flow pushed on that arc.
    """
    cap = {}
    adj = [[] for _ in range(n)]
    for u, v, c in arcs:
        if (u, v) not in cap:
            adj[u].append(v)
            adj[v].append(u)
            cap[(u, v)] = 0
            cap.setdefault((v, u), 0)
        cap[(u, v)] += c
    flow = {k: 0 for k in cap}
    value = 0
    while True:
        parent = {source: source}
        q = deque([source])
        while q and sink not in parent:
            v = q.popleft()
            for w in adj[v]:
                if w not in parent and cap[(v, w)] - flow[(v, w)] > 0:
                    parent[w] = v
                    q.append(w)
        if sink not in parent:
            return value, flow
        bottleneck = INF
        w = sink
        while w != source:
            v = parent[w]
            bottleneck = min(bottleneck, cap[(v, w)] - flow[(v, w)])
            w = v
        w = sink
        while w != source:
            v = parent[w]
            flow[(v, w)] += bottleneck
            flow[(w, v)] -= bottleneck
            w = v
        value += bottleneck
