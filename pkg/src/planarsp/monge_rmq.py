"""Range-minimum structures over (inverse-)Monge matrices.

Convention used across the package: a matrix M is *Monge* here when for all
rows i < j and columns k < l (with all four entries defined)

    M[i][k] + M[j][l]  >=  M[i][l] + M[j][k].

Consequences used everywhere:

* The minimizing column of a row moves (weakly) LEFT as the row index grows.
* In a tree over columns, the right half (higher columns) beats the left half
  on a PREFIX of rows, the left half on the suffix; ties go to the left, so a
  query always reports the lowest minimizing column.

Three structures share the interface ``query(row, col_lo, col_hi) ->
(value, col)`` with an ``(inf, -1)`` sentinel when no active entry exists:

* ``NaiveRowRMQ`` — one segment tree per row, per-entry activation.
* ``DynamicMongeRMQ`` — envelope tree over columns storing one transition row
  per node; whole-column deactivate and activate.
* ``DecrementalMongeRMQ`` — envelope tree storing the full breakpoint list
  per node; whole-column deactivate only (activation rejected).  Supports
  partially defined (staircase) matrices by restricting every envelope to the
  rows where all of its columns are defined; queries must stay inside the
  defined region.

A partial matrix with staircase-shaped defined regions can be *completed*
(``complete_partial``) with large synthetic values that keep the full matrix
Monge when the undefined entries sit in the top-left / bottom-right corners.
Triangle-shaped deficiencies (the per-hole distance views) admit no such
dominated completion — a 3-defined/1-undefined quadruple would place the huge
value alone on the small side of the inequality — hence the restricted
evaluation discipline of the decremental structure instead.
"""

from __future__ import annotations

import math
from bisect import bisect_right

from .errors import (
    ColumnOutOfRange,
    MongeViolation,
    NotStaircase,
    ReactivationAttempt,
)

INF = math.inf


# ---------------------------------------------------------------------------
# matrix views
# ---------------------------------------------------------------------------

class MongeMatrixView:
    """A rows x cols matrix given by an entry function plus per-row defined
    column intervals [lo[i], hi[i]] (inclusive; lo > hi = empty row)."""

    __slots__ = ("rows", "cols", "entry", "lo", "hi")

    def __init__(self, rows, cols, entry, lo=None, hi=None):
        self.rows = rows
        self.cols = cols
        self.entry = entry
        self.lo = list(lo) if lo is not None else [0] * rows
        self.hi = list(hi) if hi is not None else [cols - 1] * rows

    @classmethod
    def from_dense(cls, data):
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, lambda i, j: data[i][j])

    def is_defined(self, i, j):
        return self.lo[i] <= j <= self.hi[i]

    def fully_defined(self):
        return all(self.lo[i] == 0 and self.hi[i] == self.cols - 1
                   for i in range(self.rows))

    def column_intervals(self):
        """Per-column defined row interval [rlo[j], rhi[j]]; raises
        NotStaircase when some column's defined rows are non-contiguous."""
        rlo = [None] * self.cols
        rhi = [None] * self.cols
        for i in range(self.rows):
            for j in range(self.lo[i], self.hi[i] + 1):
                if rlo[j] is None:
                    rlo[j] = rhi[j] = i
                elif i == rhi[j] + 1:
                    rhi[j] = i
                elif i > rhi[j] + 1:
                    raise NotStaircase(f"column {j} defined rows are not contiguous")
        return rlo, rhi

    def dense(self, fill=INF):
        return [[self.entry(i, j) if self.is_defined(i, j) else fill
                 for j in range(self.cols)] for i in range(self.rows)]


def monge_check(view, *, max_exhaustive=32, samples=100_000, rng=None,
                raise_on_fail=True):
    """Verify the quadrangle inequality over defined quadruples.

    Exhaustive when both dimensions are <= max_exhaustive, sampled otherwise.
    Returns True when no violation is found; raises MongeViolation (or
    returns False) on the first violation.
    """
    rows, cols, entry = view.rows, view.cols, view.entry
    is_def = view.is_defined

    def violated(i, j, k, l):
        if not (is_def(i, k) and is_def(i, l) and is_def(j, k) and is_def(j, l)):
            return False
        return entry(i, k) + entry(j, l) < entry(i, l) + entry(j, k)

    if rows <= max_exhaustive and cols <= max_exhaustive:
        for i in range(rows):
            for j in range(i + 1, rows):
                for k in range(cols):
                    for l in range(k + 1, cols):
                        if violated(i, j, k, l):
                            if raise_on_fail:
                                raise MongeViolation(
                                    f"rows {i}<{j}, cols {k}<{l}")
                            return False
        return True
    import random
    rng = rng or random.Random(0)
    for _ in range(samples):
        i = rng.randrange(rows - 1)
        j = rng.randrange(i + 1, rows)
        k = rng.randrange(cols - 1)
        l = rng.randrange(k + 1, cols)
        if violated(i, j, k, l):
            if raise_on_fail:
                raise MongeViolation(f"rows {i}<{j}, cols {k}<{l}")
            return False
    return True


def complete_partial(view, *, check=False):
    """Fill undefined entries of a staircase view with large synthetic values.

    Left-of-interval entries get ``K - c*(i + j)``, right-of-interval entries
    ``K + c*(i + j)`` with K huge and c above twice the largest defined
    magnitude.  Guarantees:

    * Every synthetic value strictly exceeds every defined entry, so a range
      minimum over any set containing a defined entry never reports one.
    * Every quadrangle whose two minor-diagonal entries (row i col l, row j
      col k for i<j, k<l) are defined satisfies the Monge inequality — the
      exact property the envelope structures rely on when their evaluation
      is restricted to defined entries.
    * When the undefined entries form rectangular blocks in the top-left
      and/or bottom-right corners, the completed matrix is fully Monge.

    Full Monge completion with dominated values is impossible for general
    staircases: an L-shaped deficiency — (i,k),(i,l),(j,k) undefined with
    (j,l) defined — pits one synthetic value plus a bounded entry against two
    synthetic values, so any choice of dominating values fails.  Pass
    check=True to run the full quadruple check and raise MongeViolation when
    the view's shape does not admit completion.
    """
    rows, cols = view.rows, view.cols
    view.column_intervals()  # raises NotStaircase when malformed
    if view.fully_defined():
        return view
    biggest = 0
    for i in range(rows):
        for j in range(view.lo[i], view.hi[i] + 1):
            v = view.entry(i, j)
            if v != INF:
                biggest = max(biggest, abs(v))
    c = 2 * biggest + 1
    k0 = 4 * c * (rows + cols + 2)
    lo, hi, entry = view.lo, view.hi, view.entry

    def completed(i, j):
        if lo[i] <= j <= hi[i]:
            return entry(i, j)
        if j < lo[i]:
            return k0 - c * (i + j)
        return k0 + c * (i + j)

    out = MongeMatrixView(rows, cols, completed)
    if check:
        monge_check(out)
    return out


# ---------------------------------------------------------------------------
# naive per-row structure
# ---------------------------------------------------------------------------

class NaiveRowRMQ:
    """One segment tree per row over columns; per-entry active flags.

    Activation outside the defined region is rejected.  Entries start active
    (defaults) or all inactive with start_inactive=True.
    """

    def __init__(self, view, *, start_inactive=False):
        self.view = view
        self.rows = view.rows
        self.cols = view.cols
        self.ops = 0
        size = 1
        while size < max(1, self.cols):
            size *= 2
        self._size = size
        # per row: flat segment tree of (value, col); INF sentinel = inactive
        self._trees = []
        for i in range(view.rows):
            tree = [(INF, -1)] * (2 * size)
            if not start_inactive:
                for j in range(view.lo[i], view.hi[i] + 1):
                    tree[size + j] = (view.entry(i, j), j)
                for p in range(size - 1, 0, -1):
                    l, r = tree[2 * p], tree[2 * p + 1]
                    tree[p] = l if l[0] <= r[0] else r
            self._trees.append(tree)

    def _set(self, i, j, leaf_val):
        tree = self._trees[i]
        p = self._size + j
        tree[p] = leaf_val
        p //= 2
        while p:
            l, r = tree[2 * p], tree[2 * p + 1]
            tree[p] = l if l[0] <= r[0] else r
            p //= 2

    def activate_entry(self, i, j):
        if not (0 <= j < self.cols):
            raise ColumnOutOfRange(str(j))
        if not self.view.is_defined(i, j):
            raise ColumnOutOfRange(f"entry ({i},{j}) undefined")
        self.ops += 1
        self._set(i, j, (self.view.entry(i, j), j))

    def deactivate_entry(self, i, j):
        if not (0 <= j < self.cols):
            raise ColumnOutOfRange(str(j))
        self.ops += 1
        self._set(i, j, (INF, -1))

    def is_active(self, i, j):
        return self._trees[i][self._size + j][0] != INF

    def query(self, i, a, b):
        """Minimum active entry of row i over columns [a, b]; lowest column
        wins ties.  Returns (inf, -1) when none is active."""
        if not (0 <= a <= b < self.cols):
            raise ColumnOutOfRange(f"[{a},{b}]")
        self.ops += 1
        tree = self._trees[i]
        size = self._size
        best = (INF, -1)
        # collect left-side nodes in order and right-side nodes in reverse so
        # lower columns are examined first and <= keeps the lowest-column tie
        lo = a + size
        hi = b + size + 1
        left_parts = []
        right_parts = []
        while lo < hi:
            if lo & 1:
                left_parts.append(tree[lo])
                lo += 1
            if hi & 1:
                hi -= 1
                right_parts.append(tree[hi])
            lo //= 2
            hi //= 2
        for cand in left_parts + right_parts[::-1]:
            if cand[0] < best[0] or (cand[0] == best[0] and cand[1] != -1
                                     and (best[1] == -1 or cand[1] < best[1])):
                best = cand
        return best

    def snapshot(self):
        return [list(tree) for tree in self._trees]

    def restore(self, snap):
        for tree, saved in zip(self._trees, snap):
            tree[:] = saved


# ---------------------------------------------------------------------------
# envelope trees
# ---------------------------------------------------------------------------

def _build_col_tree(cols):
    """Balanced binary tree over column range [0, cols): flat arrays.

    Returns (node_lo, node_hi, left, right, parent, leaf_of_col, root).
    Children split at the midpoint, so canonical decompositions of column
    ranges work exactly like a segment tree's.
    """
    node_lo, node_hi, left, right, parent = [], [], [], [], []
    leaf_of_col = [0] * cols

    def build(lo, hi):
        u = len(node_lo)
        node_lo.append(lo)
        node_hi.append(hi)
        left.append(-1)
        right.append(-1)
        parent.append(-1)
        if lo == hi:
            leaf_of_col[lo] = u
            return u
        mid = (lo + hi) // 2
        l = build(lo, mid)
        r = build(mid + 1, hi)
        left[u] = l
        right[u] = r
        parent[l] = parent[r] = u
        return u

    root = build(0, cols - 1)
    return node_lo, node_hi, left, right, parent, leaf_of_col, root


class DynamicMongeRMQ:
    """Envelope tree over the columns of a fully defined Monge view.

    Per node: the single transition row t — the right child's envelope wins
    rows < t strictly, the left child's wins rows >= t (ties included, which
    realizes the lowest-column tie-break).  Whole columns can be deactivated
    and reactivated; each update recomputes transitions on one leaf-to-root
    path by binary search over rows.
    """

    def __init__(self, view, *, start_inactive=False):
        if not view.fully_defined():
            raise NotStaircase("dynamic structure requires a fully defined view")
        self.view = view
        self.rows = view.rows
        self.cols = view.cols
        self.ops = 0
        (self._lo, self._hi, self._left, self._right, self._parent,
         self._leaf, self._root) = _build_col_tree(view.cols)
        n_nodes = len(self._lo)
        self._count = [0] * n_nodes          # active columns under node
        self._t = [0] * n_nodes              # transition row
        if not start_inactive:
            for j in range(view.cols):
                self._count[self._leaf[j]] = 1
            self._init_counts(self._root)
            self._init_transitions(self._root)

    def _init_counts(self, u):
        if self._left[u] < 0:
            return self._count[u]
        self._count[u] = (self._init_counts(self._left[u])
                          + self._init_counts(self._right[u]))
        return self._count[u]

    def _init_transitions(self, u):
        if self._left[u] < 0:
            return
        self._init_transitions(self._left[u])
        self._init_transitions(self._right[u])
        self._recompute_t(u)

    # envelope evaluation: walk down to the winning active column for row q
    def _env(self, u, q):
        while self._left[u] >= 0:
            l, r = self._left[u], self._right[u]
            if self._count[l] == 0:
                u = r
            elif self._count[r] == 0:
                u = l
            else:
                u = r if q < self._t[u] else l
        return self.view.entry(q, self._lo[u]), self._lo[u]

    def _recompute_t(self, u):
        l, r = self._left[u], self._right[u]
        if self._count[l] == 0 or self._count[r] == 0:
            self._t[u] = 0
            return
        # smallest row q where the right child stops strictly winning;
        # the difference env_r - env_l is non-decreasing in q (Monge).
        lo, hi = 0, self.rows  # t in [lo, hi]
        while lo < hi:
            mid = (lo + hi) // 2
            if self._env(r, mid)[0] < self._env(l, mid)[0]:
                lo = mid + 1
            else:
                hi = mid
        self._t[u] = lo

    def _set_active(self, j, flag):
        if not (0 <= j < self.cols):
            raise ColumnOutOfRange(str(j))
        self.ops += 1
        u = self._leaf[j]
        now = 1 if flag else 0
        if self._count[u] == now:
            return
        self._count[u] = now
        u = self._parent[u]
        while u >= 0:
            self._count[u] = self._count[self._left[u]] + self._count[self._right[u]]
            self._recompute_t(u)
            u = self._parent[u]

    def deactivate_col(self, j):
        self._set_active(j, False)

    def activate_col(self, j):
        self._set_active(j, True)

    def is_active(self, j):
        return self._count[self._leaf[j]] == 1

    def query(self, i, a, b):
        """Minimum active entry in row i over columns [a, b]."""
        if not (0 <= a <= b < self.cols):
            raise ColumnOutOfRange(f"[{a},{b}]")
        self.ops += 1
        best_v, best_j = INF, -1
        stack = [self._root]
        while stack:
            u = stack.pop()
            if self._count[u] == 0 or self._lo[u] > b or self._hi[u] < a:
                continue
            if a <= self._lo[u] and self._hi[u] <= b:
                v, j = self._env(u, i)
                if v < best_v or (v == best_v and j < best_j):
                    best_v, best_j = v, j
                continue
            stack.append(self._left[u])
            stack.append(self._right[u])
        return best_v, best_j

    def snapshot(self):
        return list(self._count), list(self._t)

    def restore(self, snap):
        count, t = snap
        self._count[:] = count
        self._t[:] = t


class DecrementalMongeRMQ:
    """Envelope tree storing each node's full breakpoint list.

    A node's envelope is a run list [(start_row, col), ...]: the column wins
    from its start row until the next run's start row.  Envelopes are kept
    only over the rows where all of the node's columns are defined, which
    makes staircase views (the per-hole triangle matrices) safe: no synthetic
    completion value is ever compared.  Queries must stay inside the defined
    region.  Columns can only be deactivated; activation raises.

    ``breakpoints_inserted`` counts every run newly written into some node's
    list (construction included) for empirical comparison against the
    m log^2 m insertion budget of the analysis.
    """

    def __init__(self, view):
        self.view = view
        self.rows = view.rows
        self.cols = view.cols
        self.ops = 0
        self.breakpoints_inserted = 0
        rlo, rhi = view.column_intervals()
        for j in range(view.cols):
            if rlo[j] is None:
                raise NotStaircase(f"column {j} has no defined entries")
        (self._lo, self._hi, self._left, self._right, self._parent,
         self._leaf, self._root) = _build_col_tree(view.cols)
        n_nodes = len(self._lo)
        # valid row window per node: rows where all its columns are defined
        self._rlo = [0] * n_nodes
        self._rhi = [0] * n_nodes
        self._env_runs = [None] * n_nodes
        self._active = [True] * view.cols
        self._init(self._root, rlo, rhi)

    def _init(self, u, rlo, rhi):
        if self._left[u] < 0:
            j = self._lo[u]
            self._rlo[u] = rlo[j]
            self._rhi[u] = rhi[j]
            self._env_runs[u] = [(self._rlo[u], j)]
            self.breakpoints_inserted += 1
            return
        l, r = self._left[u], self._right[u]
        self._init(l, rlo, rhi)
        self._init(r, rlo, rhi)
        self._rlo[u] = max(self._rlo[l], self._rlo[r])
        self._rhi[u] = min(self._rhi[l], self._rhi[r])
        self._merge(u)

    def _eval_runs(self, u, q):
        """Envelope value of node u at row q (q within u's valid window)."""
        runs = self._env_runs[u]
        ix = bisect_right(runs, (q, self.cols)) - 1
        j = runs[ix][1]
        return self.view.entry(q, j), j

    def _merge(self, u):
        """Recompute u's run list from its children's current lists."""
        l, r = self._left[u], self._right[u]
        lo_row, hi_row = self._rlo[u], self._rhi[u]
        if lo_row > hi_row:
            self._env_runs[u] = []
            return
        left_empty = not self._env_runs[l]
        right_empty = not self._env_runs[r]
        if left_empty and right_empty:
            self._env_runs[u] = []
            return
        if left_empty or right_empty:
            src = r if left_empty else l
            t = lo_row if left_empty else hi_row + 1
            # single-source envelope: clip the child's runs to u's window
            new = self._clip(self._env_runs[src], lo_row, hi_row)
        else:
            # right child wins rows < t strictly; binary search the smallest
            # row in the window where it no longer strictly wins
            a, b = lo_row, hi_row + 1
            while a < b:
                mid = (a + b) // 2
                if self._eval_runs(r, mid)[0] < self._eval_runs(l, mid)[0]:
                    a = mid + 1
                else:
                    b = mid
            t = a
            new = []
            if t > lo_row:
                new.extend(self._clip(self._env_runs[r], lo_row, t - 1))
            if t <= hi_row:
                new.extend(self._clip(self._env_runs[l], t, hi_row))
        old = self._env_runs[u]
        if old != new:
            old_set = set(old) if old else set()
            self.breakpoints_inserted += sum(1 for run in new if run not in old_set)
            self._env_runs[u] = new
        # else: keep the identical list (no insertions counted)

    @staticmethod
    def _clip(runs, lo_row, hi_row):
        """Restrict a run list to rows [lo_row, hi_row]."""
        if not runs or lo_row > hi_row:
            return []
        out = []
        ix = bisect_right(runs, (lo_row, float("inf"))) - 1
        if ix < 0:
            ix = 0
        for s, j in runs[ix:]:
            if s > hi_row:
                break
            out.append((max(s, lo_row), j))
        return out

    def deactivate_col(self, j):
        if not (0 <= j < self.cols):
            raise ColumnOutOfRange(str(j))
        self.ops += 1
        if not self._active[j]:
            return
        self._active[j] = False
        u = self._leaf[j]
        self._env_runs[u] = []
        u = self._parent[u]
        while u >= 0:
            self._merge(u)
            u = self._parent[u]

    def activate_col(self, j):
        raise ReactivationAttempt("decremental structure cannot reactivate")

    def is_active(self, j):
        return self._active[j]

    def query(self, i, a, b):
        """Minimum active entry in row i over columns [a, b]; the whole range
        must be defined at row i."""
        if not (0 <= a <= b < self.cols):
            raise ColumnOutOfRange(f"[{a},{b}]")
        self.ops += 1
        best_v, best_j = INF, -1
        stack = [self._root]
        while stack:
            u = stack.pop()
            if self._lo[u] > b or self._hi[u] < a:
                continue
            if a <= self._lo[u] and self._hi[u] <= b:
                if self._env_runs[u] and self._rlo[u] <= i <= self._rhi[u]:
                    v, j = self._eval_runs(u, i)
                    if v < best_v or (v == best_v and j < best_j):
                        best_v, best_j = v, j
                continue
            stack.append(self._left[u])
            stack.append(self._right[u])
        return best_v, best_j

    def snapshot(self):
        return list(self._active), [list(r) if r else [] for r in self._env_runs]

    def restore(self, snap):
        active, runs = snap
        self._active[:] = active
        for ix, r in enumerate(runs):
            self._env_runs[ix] = list(r)


# ---------------------------------------------------------------------------
# random Monge generator (tests and the verify command)
# ---------------------------------------------------------------------------

def random_monge(rows, cols, rng, *, max_delta=9, max_linear=50):
    """Random dense Monge matrix (our >= convention) as a list of lists.

    Double prefix sums of non-negative increments satisfy the quadrangle
    inequality with surplus equal to a rectangle sum; separable row/column
    terms shift values without affecting it.
    """
    acc = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        run = 0
        for j in range(cols):
            run += rng.randint(0, max_delta)
            acc[i][j] = run + (acc[i - 1][j] if i else 0)
    f = [rng.randint(0, max_linear) for _ in range(rows)]
    g = [rng.randint(0, max_linear) for _ in range(cols)]
    return [[acc[i][j] + f[i] + g[j] for j in range(cols)] for i in range(rows)]
