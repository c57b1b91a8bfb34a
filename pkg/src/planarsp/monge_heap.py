"""Heaps over Monge rectangles: batched relaxation of dense arc bundles.

Both structures work on one directed bipartite piece: rows are tail vertices
(each eventually gets a distance label), columns are head vertices, and the
matrix entry is the arc length.  The piece matrix satisfies the quadrangle
inequality (rows i<j, cols k<l: M[i][k] + M[j][l] >= M[i][l] + M[j][k]), which
makes the sets below behave like intervals.

FRMongeHeap is extract-only: rows are activated once with their final label,
columns leave the heap once, and the heap always offers the minimum of
label(row) + entry over live columns.  Internally the column axis is
partitioned into *triplets* (row, first, last): maximal runs of live columns
currently won by one row.  Activating a row steals a contiguous piece of each
triplet it beats (strict wins only — ties keep the current owner); extracting
a column splits its triplet.  A lazy global heap holds one candidate per
triplet version, backed by static per-row range-minimum tables.

HKMongeHeap supports the hierarchical engine: rows may be re-relaxed with
strictly smaller labels, columns carry an active flag and can be reactivated
when the best label they can receive strictly drops, and extraction reports
the owner's replacement child.  Each column is owned by the row minimizing
label + entry (strict improvement transfers ownership, unreachable pairs are
never acquired); owned columns of one row form a contiguous interval except
for unowned gaps the row cannot reach, which the structure checks as it goes.
Minimum lookups go through one of two interchangeable backends — an envelope
tree over columns ("cq3") or plain per-row segment trees ("cq1") — that must
be observably identical.
"""

from __future__ import annotations

import heapq
import math

from .errors import (AlreadyInactive, DoubleActivate, NotRelaxed)
from .monge_rmq import DynamicMongeRMQ, MongeMatrixView, NaiveRowRMQ

INF = math.inf


class _StaticRowRMQ:
    """Immutable range-minimum over one row: sparse table of (value, col)."""

    __slots__ = ("table",)

    def __init__(self, values):
        n = len(values)
        level = [(values[j], j) for j in range(n)]
        self.table = [level]
        span = 1
        while 2 * span <= n:
            prev = self.table[-1]
            nxt = [prev[j] if prev[j] <= prev[j + span] else prev[j + span]
                   for j in range(n - 2 * span + 1)]
            self.table.append(nxt)
            span *= 2

    def query(self, a, b):
        """Minimum over columns [a, b]; lowest column wins ties."""
        k = (b - a + 1).bit_length() - 1
        row = self.table[k]
        x, y = row[a], row[b - (1 << k) + 1]
        return x if x <= y else y


class FRMongeHeap:
    """Extract-only Monge heap over one piece (rows activate, columns leave)."""

    def __init__(self, matrix):
        self.M = matrix
        self.R = len(matrix)
        self.C = len(matrix[0]) if matrix else 0
        self.label = [None] * self.R
        self.extracted = [False] * self.C
        self.remaining = self.C
        # triplet id -> [row, first, last, version]; None when dead
        self._trips = []
        self._col_trip = [-1] * self.C
        self._pq = []                # (value, col, trip id, version)
        self._row_rmq = [None] * self.R
        self.mh_ops = 0
        self.rmq_ops = 0

    # -- internals -----------------------------------------------------------

    def _rmq(self, a, b1, b2):
        """Best (value, col) of row a over live columns [b1, b2]."""
        t = self._row_rmq[a]
        if t is None:
            t = self._row_rmq[a] = _StaticRowRMQ(self.M[a])
        self.rmq_ops += 1
        v, j = t.query(b1, b2)
        return v + self.label[a], j

    def _new_trip(self, row, b1, b2):
        tid = len(self._trips)
        self._trips.append([row, b1, b2, 0])
        for b in range(b1, b2 + 1):
            self._col_trip[b] = tid
        self._push_candidate(tid)
        return tid

    def _retag(self, tid, row, b1, b2):
        trip = self._trips[tid]
        trip[0] = row
        trip[1] = b1
        trip[2] = b2
        trip[3] += 1
        for b in range(b1, b2 + 1):
            self._col_trip[b] = tid
        self._push_candidate(tid)

    def _kill(self, tid):
        self._trips[tid] = None

    def _push_candidate(self, tid):
        row, b1, b2, ver = self._trips[tid]
        v, j = self._rmq(row, b1, b2)
        if v < INF:
            heapq.heappush(self._pq, (v, j, tid, ver))
        self.mh_ops += 1

    def _wins(self, row, col, old_row):
        return (self.label[row] + self.M[row][col]
                < self.label[old_row] + self.M[old_row][col])

    # -- operations ----------------------------------------------------------

    def mh_activate(self, a, da):
        """Activate row ``a`` with final label ``da``; steals the columns it
        strictly beats from every triplet."""
        if self.label[a] is not None:
            raise DoubleActivate(f"row {a}")
        self.label[a] = da
        self.mh_ops += 1
        if self.remaining == 0:
            return
        if not any(t is not None for t in self._trips):
            self._new_trip(a, *self._full_range())
            return
        for tid, trip in enumerate(list(self._trips)):
            if trip is None:
                continue
            row, b1, b2, _ = trip
            # the strict-win set against one row is a prefix or a suffix of
            # the column axis (the label difference is monotone), so inside
            # [b1, b2] it is a prefix or a suffix of the triplet
            w1 = self._wins(a, b1, row)
            w2 = self._wins(a, b2, row)
            if not w1 and not w2:
                continue
            if w1 and w2:
                self._retag(tid, a, b1, b2)
                continue
            lo, hi = b1, b2
            if w1:                          # prefix win: find last winning col
                while lo < hi:
                    mid = (lo + hi + 1) // 2
                    if self._wins(a, mid, row):
                        lo = mid
                    else:
                        hi = mid - 1
                self._retag(tid, row, lo + 1, b2)
                self._new_trip(a, b1, lo)
            else:                           # suffix win: find first winning col
                while lo < hi:
                    mid = (lo + hi) // 2
                    if self._wins(a, mid, row):
                        hi = mid
                    else:
                        lo = mid + 1
                self._retag(tid, row, b1, lo - 1)
                self._new_trip(a, lo, b2)

    def _full_range(self):
        # first activation after possible extractions cannot happen (columns
        # leave only through candidates, which need a triplet), so the full
        # column range is live
        return 0, self.C - 1

    def _valid_top(self):
        while self._pq:
            v, j, tid, ver = self._pq[0]
            trip = self._trips[tid]
            if trip is None or trip[3] != ver:
                heapq.heappop(self._pq)
                continue
            return self._pq[0]
        return None

    def mh_find_min(self):
        """Current minimum as (value, column), or None when empty."""
        top = self._valid_top()
        if top is None:
            return None
        return top[0], top[1]

    def mh_extract_min(self):
        """Remove and return the minimum (value, column)."""
        top = self._valid_top()
        if top is None:
            raise AlreadyInactive("heap is empty")
        v, j, tid, _ = heapq.heappop(self._pq)
        row, b1, b2, _ = self._trips[tid]
        self.extracted[j] = True
        self.remaining -= 1
        self._col_trip[j] = -1
        self.mh_ops += 1
        if b1 <= j - 1:
            self._retag(tid, row, b1, j - 1)
        else:
            self._kill(tid)
        if j + 1 <= b2:
            self._new_trip(row, j + 1, b2)
        return v, j


def _make_backend(matrix, backend):
    view = MongeMatrixView.from_dense(matrix)
    if backend == "cq3":
        return DynamicMongeRMQ(view, start_inactive=True)
    if backend == "cq1":
        return NaiveRowRMQ(view, start_inactive=True)
    raise ValueError(f"unknown backend {backend!r}")


class HKMongeHeap:
    """Relax/extract Monge heap with per-column activity and owner intervals."""

    def __init__(self, matrix, *, backend="cq3"):
        self.M = matrix
        self.R = len(matrix)
        self.C = len(matrix[0]) if matrix else 0
        self.backend = backend
        self._rmq = _make_backend(matrix, backend) if self.C else None
        self.label = [None] * self.R         # relaxed rows' labels
        self.owner = [-1] * self.C
        self.active = [False] * self.C
        self._lo = [self.C] * self.R         # owned interval per row
        self._hi = [-1] * self.R
        self._owned = [0] * self.R
        self.mh_ops = 0

    @property
    def rmq_ops(self):
        return self._rmq.ops if self._rmq is not None else 0

    # -- backend helpers -----------------------------------------------------

    def _col_on(self, b):
        if self.backend == "cq3":
            self._rmq.activate_col(b)
        else:
            for i in range(self.R):
                self._rmq.activate_entry(i, b)

    def _col_off(self, b):
        if self.backend == "cq3":
            self._rmq.deactivate_col(b)
        else:
            for i in range(self.R):
                self._rmq.deactivate_entry(i, b)

    def _val(self, a, b):
        return self.label[a] + self.M[a][b]

    # -- operations ----------------------------------------------------------

    def fr_relax(self, a, da):
        """Offer label ``da`` for row ``a``.

        No-op when the row already holds an equal or smaller label.  On first
        relaxation or strict decrease, the row acquires every column it now
        strictly beats; acquired or owned columns whose best obtainable value
        strictly dropped are (re)activated.  Returns the sorted list of rows
        that lost at least one column — the caller must refresh each loser's
        minimum child, or deliveries queued behind the stolen column stall.
        """
        old = self.label[a]
        if old is not None and da >= old:
            self.mh_ops += 1
            return []
        self.label[a] = da
        affected = set()
        for b in range(self.C):
            self.mh_ops += 1
            own = self.owner[b]
            if own == a:
                # value delivered by the owner strictly dropped
                if not self.active[b]:
                    self.active[b] = True
                    self._col_on(b)
                continue
            if self.M[a][b] == INF:
                # unreachable pair: the row has nothing to offer this column
                continue
            if own >= 0 and self._val(a, b) >= self._val(own, b):
                continue
            if own >= 0:
                affected.add(own)
                self._owned[own] -= 1
            self.owner[b] = a
            self._owned[a] += 1
            if not self.active[b]:
                self.active[b] = True
                self._col_on(b)
        self._refit(a)
        for row in affected:
            self._refit(row)
        return sorted(affected)

    def _refit(self, row):
        """Recompute the owned interval.

        Inside the bounding interval every column is either owned by the row
        or unowned with an unreachable entry for it (such columns never win a
        range-minimum, so querying across them is sound).
        """
        lo, hi, cnt = self.C, -1, 0
        for b in range(self.C):
            if self.owner[b] == row:
                cnt += 1
                if b < lo:
                    lo = b
                if b > hi:
                    hi = b
        self._lo[row] = lo
        self._hi[row] = hi
        assert cnt == self._owned[row]
        for b in range(lo, hi + 1):
            assert self.owner[b] == row or (self.owner[b] == -1
                                            and self.M[row][b] == INF), \
                f"foreign column {b} inside the owned interval of row {row}"

    def fr_get_min_child(self, a):
        """Best (value, column) among the row's active children, or None."""
        if self.label[a] is None:
            raise NotRelaxed(f"row {a}")
        self.mh_ops += 1
        if self._owned[a] == 0:
            return None
        v, j = self._rmq.query(a, self._lo[a], self._hi[a])
        if j < 0 or v == INF:
            return None
        return v + self.label[a], j

    def fr_extract(self, b):
        """Deactivate column ``b``; returns (owner, replacement) where the
        replacement is the owner's new best (value, column) or None."""
        if not (0 <= b < self.C) or not self.active[b]:
            raise AlreadyInactive(f"column {b}")
        self.active[b] = False
        self._col_off(b)
        self.mh_ops += 1
        own = self.owner[b]
        return own, self.fr_get_min_child(own)

    def column_value(self, b):
        """Current best obtainable label of column ``b`` (inf when unowned)."""
        own = self.owner[b]
        return INF if own < 0 else self._val(own, b)

    # -- bulk reset for per-source reruns ------------------------------------

    def reset(self):
        for b in range(self.C):
            if self.active[b]:
                self._col_off(b)
        self.label = [None] * self.R
        self.owner = [-1] * self.C
        self.active = [False] * self.C
        self._lo = [self.C] * self.R
        self._hi = [-1] * self.R
        self._owned = [0] * self.R


class ExplicitPieceHeap:
    """Brute-force stand-in for HKMongeHeap: same interface, same tie rules
    (strict wins transfer ownership, lowest column breaks minimum ties), all
    lookups by plain scans.  Used as the reference executor for lockstep
    comparison against the Monge-structure engine."""

    backend = "explicit"

    def __init__(self, matrix):
        self.M = matrix
        self.R = len(matrix)
        self.C = len(matrix[0]) if matrix else 0
        self.label = [None] * self.R
        self.owner = [-1] * self.C
        self.active = [False] * self.C
        self.mh_ops = 0
        self.rmq_ops = 0

    def _val(self, a, b):
        return self.label[a] + self.M[a][b]

    def fr_relax(self, a, da):
        old = self.label[a]
        self.mh_ops += 1
        if old is not None and da >= old:
            return []
        self.label[a] = da
        affected = set()
        for b in range(self.C):
            own = self.owner[b]
            if own == a:
                self.active[b] = True
                continue
            if self.M[a][b] == INF:
                continue
            if own >= 0 and self._val(a, b) >= self._val(own, b):
                continue
            if own >= 0:
                affected.add(own)
            self.owner[b] = a
            self.active[b] = True
        return sorted(affected)

    def fr_get_min_child(self, a):
        if self.label[a] is None:
            raise NotRelaxed(f"row {a}")
        self.mh_ops += 1
        best = None
        for b in range(self.C):
            if self.owner[b] == a and self.active[b]:
                v = self._val(a, b)
                if v < INF and (best is None or v < best[0]):
                    best = (v, b)
        return best

    def fr_extract(self, b):
        if not (0 <= b < self.C) or not self.active[b]:
            raise AlreadyInactive(f"column {b}")
        self.active[b] = False
        self.mh_ops += 1
        own = self.owner[b]
        return own, self.fr_get_min_child(own)

    def column_value(self, b):
        own = self.owner[b]
        return INF if own < 0 else self._val(own, b)

    def reset(self):
        self.label = [None] * self.R
        self.owner = [-1] * self.C
        self.active = [False] * self.C
