"""Embedded-graph construction, faces, duals, degree reduction, and file IO."""

import math

import pytest

from helpers import oracle_dist, square_cycle, star
from planarsp.errors import (GraphFormatError, InvalidRotation,
                             NonPlanarEmbedding)
from planarsp.instances import delaunay_like, grid
from planarsp.planar_core import (INF, build_graph, dijkstra, dual_graph,
                                  insert_edge_in_face, read_pg, reduce_degree,
                                  write_pg)


def test_square_has_two_faces_and_euler_holds():
    g = square_cycle()
    assert (g.n, g.m) == (4, 4)
    assert len(g.faces) == 2
    assert g.n - g.m + len(g.faces) == 2


def test_face_of_is_consistent_with_face_cycles():
    g = grid(4, 4, 0)
    for fid, cycle in enumerate(g.faces):
        for d in cycle:
            assert g.face_of[d] == fid
    assert sorted(d for f in g.faces for d in f) == list(range(2 * g.m))


def test_self_loop_rejected():
    with pytest.raises(GraphFormatError):
        build_graph(2, [(0, 0, 1)], [(0,), ()])


def test_repeated_ordered_pair_rejected():
    with pytest.raises(GraphFormatError):
        build_graph(2, [(0, 1, 1), (0, 1, 2)], [(1,), (0,)])


def test_bad_rotation_rejected():
    with pytest.raises(InvalidRotation):
        build_graph(3, [(0, 1, 1), (1, 2, 1)], [(1,), (0,), (1, 1)])


def test_twisted_embedding_fails_face_count():
    # K4 with one rotation flipped: still a graph, wrong face count
    arcs = [(u, v, 1) for u in range(4) for v in range(4) if u != v]
    rots_ok = [(1, 2, 3), (2, 0, 3), (0, 1, 3), (1, 0, 2)]
    g = build_graph(4, arcs, rots_ok)
    assert len(g.faces) == 4
    rots_bad = [(1, 2, 3), (2, 0, 3), (0, 1, 3), (1, 2, 0)]
    with pytest.raises(NonPlanarEmbedding):
        build_graph(4, arcs, rots_bad)


def test_one_way_arcs_get_infinite_reverse_length():
    g = build_graph(2, [(0, 1, 7, 3)], [(1,), (0,)])
    assert g.length[0] == 7 and g.capacity[0] == 3
    assert g.length[1] == INF and g.capacity[1] == 0


def test_dual_graph_edges_cross_primal_edges():
    g = square_cycle()
    g2 = dual_graph(g)
    assert g2.n == len(g.faces)
    assert g2.m == g.m
    for d in range(2 * g.m):
        assert g2.tail[d] == g.face_of[d]
        assert g2.head[d] == g.face_of[d ^ 1]


def test_dijkstra_matches_adjacency_oracle():
    for seed in range(3):
        g = delaunay_like(80, seed)
        for s in (0, g.n // 2, g.n - 1):
            assert dijkstra(g, s) == oracle_dist(g, s)


def test_star_center_splits_into_cycle_of_degree3_copies():
    g = star(4)
    g2, copies, origin = reduce_degree(g)
    assert g2.n == 8
    assert len(copies[0]) == 4
    assert all(len(g2.out_darts[v]) <= 3 for v in range(g2.n))
    assert all(origin[w] == 0 for w in copies[0])


def test_degree_reduction_preserves_distances():
    g = delaunay_like(60, 4)
    g2, copies, origin = reduce_degree(g)
    assert all(len(g2.out_darts[v]) <= 3 for v in range(g2.n))
    for s in (0, 17, 59):
        want = oracle_dist(g, s)
        got = oracle_dist(g2, copies[s][0])
        for v in range(g.n):
            assert min(got[w] for w in copies[v]) == want[v]


def test_degree_reduction_leaves_small_degree_graphs_alone():
    g = grid(3, 3, 1)
    g2, copies, origin = reduce_degree(g)
    assert g2.n > g.n  # the grid center has degree 4
    g3, copies3, _ = reduce_degree(square_cycle())
    assert g3.n == 4 and all(c == [v] for v, c in enumerate(copies3))


def test_insert_edge_in_face_updates_rotation_and_faces():
    g = square_cycle()
    nfaces = len(g.faces)
    # join 0 and 2 across the inner face; their in-darts on that face
    inner = 0 if len(g.faces[0]) == 4 else 1
    cyc = g.faces[inner]
    du = next(d for d in cyc if g.head[d] == 0)
    dv = next(d for d in cyc if g.head[d] == 2)
    g2, enew = insert_edge_in_face(g, du, dv, 10, 10, 1, 1)
    assert g2.m == g.m + 1 and enew == g.m
    assert len(g2.faces) == nfaces + 1
    d = oracle_dist(g2, 0)
    assert d[2] == min(3, 10, 1 + 2)


def test_file_roundtrip_preserves_graph(tmp_path):
    g = delaunay_like(50, 9)
    p = tmp_path / "g.pg"
    write_pg(g, p)
    h = read_pg(p)
    assert (h.n, h.m) == (g.n, g.m)
    assert h.tail == g.tail and h.head == g.head
    assert h.length == g.length and h.capacity == g.capacity
    assert h.out_darts == g.out_darts
    assert h.faces == g.faces


def test_corrupt_files_rejected(tmp_path):
    p = tmp_path / "bad.pg"
    p.write_text("not a graph\n")
    with pytest.raises(GraphFormatError):
        read_pg(p)
    p.write_text("pg 2 1\n0 1 5 0\n1\n0\n")  # rotations list darts at wrong tails
    with pytest.raises(GraphFormatError):
        read_pg(p)
    p.write_text("pg 2 2\n0 1 5 0\n")  # truncated
    with pytest.raises(GraphFormatError):
        read_pg(p)
