"""Range-minimum structures over Monge matrices against brute-force scans."""

import random

import pytest

from planarsp.errors import (ColumnOutOfRange, MongeViolation, NotStaircase,
                             ReactivationAttempt)
from planarsp.monge_rmq import (INF, DecrementalMongeRMQ, DynamicMongeRMQ,
                                MongeMatrixView, NaiveRowRMQ, complete_partial,
                                monge_check, random_monge)


def brute_query(view, active, i, a, b):
    best = (INF, -1)
    for j in range(a, b + 1):
        if active[j] and view.is_defined(i, j):
            v = view.entry(i, j)
            if v < best[0]:
                best = (v, j)
    return best


def test_random_monge_matrices_satisfy_the_inequality():
    rng = random.Random(0)
    for _ in range(25):
        M = random_monge(rng.randint(1, 12), rng.randint(1, 12), rng)
        monge_check(MongeMatrixView.from_dense(M))
        for i in range(len(M) - 1):
            for k in range(len(M[0]) - 1):
                assert (M[i][k] + M[i + 1][k + 1]
                        >= M[i][k + 1] + M[i + 1][k])


def test_monge_check_flags_a_broken_matrix():
    M = [[0, 5], [0, 0]]  # 0 + 0 < 5 + 0 violates the quadrangle inequality
    with pytest.raises(MongeViolation):
        monge_check(MongeMatrixView.from_dense(M))
    assert monge_check(MongeMatrixView.from_dense(M), raise_on_fail=False) is False


def test_differential_all_three_structures(subtests=None):
    rng = random.Random(7)
    for trial in range(40):
        rows = rng.randint(1, 14)
        cols = rng.randint(1, 14)
        M = random_monge(rows, cols, rng)
        view = MongeMatrixView.from_dense(M)
        structures = [NaiveRowRMQ(view), DynamicMongeRMQ(view),
                      DecrementalMongeRMQ(view)]
        active = [True] * cols
        alive = list(range(cols))
        for _ in range(120):
            if alive and rng.random() < 0.25:
                j = alive.pop(rng.randrange(len(alive)))
                active[j] = False
                for s in structures[1:]:
                    s.deactivate_col(j)
                for i in range(rows):
                    structures[0].deactivate_entry(i, j)
            i = rng.randrange(rows)
            a = rng.randrange(cols)
            b = rng.randrange(a, cols)
            want = brute_query(view, active, i, a, b)
            for s in structures:
                assert s.query(i, a, b) == want, (trial, i, a, b)


def test_reactivation_round_trip_on_dynamic_structures():
    rng = random.Random(3)
    M = random_monge(8, 10, rng)
    view = MongeMatrixView.from_dense(M)
    naive, dyn = NaiveRowRMQ(view), DynamicMongeRMQ(view)
    dec = DecrementalMongeRMQ(view)
    for j in (2, 5, 7):
        dyn.deactivate_col(j)
        dec.deactivate_col(j)
        for i in range(8):
            naive.deactivate_entry(i, j)
    active = [j not in (2, 5, 7) for j in range(10)]
    for i in range(8):
        assert dyn.query(i, 0, 9) == brute_query(view, active, i, 0, 9)
    dyn.activate_col(5)
    for i in range(8):
        naive.activate_entry(i, 5)
    active[5] = True
    for i in range(8):
        assert dyn.query(i, 0, 9) == brute_query(view, active, i, 0, 9)
        assert naive.query(i, 0, 9) == brute_query(view, active, i, 0, 9)
    with pytest.raises(ReactivationAttempt):
        dec.activate_col(5)


def test_snapshot_restore_rewinds_state():
    rng = random.Random(4)
    M = random_monge(6, 9, rng)
    view = MongeMatrixView.from_dense(M)
    for s in (NaiveRowRMQ(view), DynamicMongeRMQ(view), DecrementalMongeRMQ(view)):
        baseline = [s.query(i, 0, 8) for i in range(6)]
        snap = s.snapshot()
        if isinstance(s, NaiveRowRMQ):
            for i in range(6):
                s.deactivate_entry(i, 3)
            assert not s.is_active(0, 3)
        else:
            s.deactivate_col(3)
            assert not s.is_active(3)
        assert all(s.query(i, 3, 3)[1] == -1 for i in range(6))
        s.restore(snap)
        assert [s.query(i, 0, 8) for i in range(6)] == baseline
        active3 = s.is_active(0, 3) if isinstance(s, NaiveRowRMQ) else s.is_active(3)
        assert active3


def test_query_bounds_checked():
    view = MongeMatrixView.from_dense(random_monge(3, 4, random.Random(1)))
    for s in (NaiveRowRMQ(view), DynamicMongeRMQ(view), DecrementalMongeRMQ(view)):
        with pytest.raises(ColumnOutOfRange):
            s.query(0, 0, 4)
        with pytest.raises(ColumnOutOfRange):
            s.query(0, 3, 2)


def _staircase_view():
    # lower-staircase: row i defines columns 0..i
    data = [[3, 0, 0], [2, 4, 0], [1, 2, 5]]
    return MongeMatrixView(3, 3, lambda i, j: data[i][j],
                           lo=[0, 0, 0], hi=[0, 1, 2])


def test_staircase_views_work_where_defined():
    view = _staircase_view()
    assert not view.fully_defined()
    with pytest.raises(NotStaircase):
        DynamicMongeRMQ(view)
    dec = DecrementalMongeRMQ(view)
    assert dec.query(2, 0, 2) == (1, 0)
    assert dec.query(1, 0, 1) == (2, 0)
    naive = NaiveRowRMQ(view)
    assert naive.query(0, 0, 2) == (3, 0)
    with pytest.raises(ColumnOutOfRange):
        naive.activate_entry(0, 2)


def test_completion_preserves_entries_and_dominates_them():
    view = _staircase_view()
    full = complete_partial(view)
    assert full.fully_defined()
    biggest = 5
    for i in range(3):
        for j in range(3):
            if view.is_defined(i, j):
                assert full.entry(i, j) == view.entry(i, j)
            else:
                assert full.entry(i, j) > biggest


def test_tie_breaks_prefer_lowest_column():
    M = [[5, 5, 5]]
    view = MongeMatrixView.from_dense(M)
    for s in (NaiveRowRMQ(view), DynamicMongeRMQ(view), DecrementalMongeRMQ(view)):
        assert s.query(0, 0, 2) == (5, 0)
        assert s.query(0, 1, 2) == (5, 1)
