"""Seeded instance generators: determinism, sizes, and embedding validity."""

import pytest

from planarsp.instances import annulus_grid, delaunay_like, grid, make_instance
from planarsp.planar_core import INF, write_pg


def _same_graph(a, b):
    return (a.n == b.n and a.tail == b.tail and a.head == b.head
            and a.length == b.length and a.capacity == b.capacity
            and a.out_darts == b.out_darts)


@pytest.mark.parametrize("build", [
    lambda s: grid(5, 7, s),
    lambda s: annulus_grid(3, 9, s),
    lambda s: delaunay_like(70, s),
])
def test_same_seed_reproduces_same_graph(build):
    assert _same_graph(build(42), build(42))
    assert not _same_graph(build(42), build(43))


def test_same_seed_writes_byte_identical_files(tmp_path):
    pa, pb = tmp_path / "a.pg", tmp_path / "b.pg"
    write_pg(delaunay_like(90, 5), pa)
    write_pg(delaunay_like(90, 5), pb)
    assert pa.read_bytes() == pb.read_bytes()


def test_grid_sizes():
    g = grid(2, 2, 0)
    assert (g.n, g.m) == (4, 4)
    g = grid(4, 6, 1)
    assert g.n == 24
    assert g.m == 3 * 6 + 4 * 5  # horizontal runs + vertical runs


def test_annulus_has_inner_hole_face():
    g = annulus_grid(3, 9, 2)
    assert g.n == 27
    sizes = sorted(len(f) for f in g.faces)
    assert sizes[-1] == sizes[-2] == 9  # inner hole and outer face are 9-cycles
    assert sizes[0] == 4  # the quads between adjacent rings


def test_triangulated_instance_is_planar_and_connected():
    g = delaunay_like(150, 3)
    assert g.n == 150
    assert g.n - g.m + len(g.faces) == 2
    from helpers import oracle_dist
    assert all(x < INF for x in oracle_dist(g, 0))


def test_weights_are_positive_integers_in_range():
    g = grid(6, 6, 7)
    for d in range(2 * g.m):
        assert g.length[d] == int(g.length[d]) and 1 <= g.length[d] <= 100
        assert g.capacity[d] == int(g.capacity[d]) and 1 <= g.capacity[d] <= 50


def test_named_family_dispatch():
    assert _same_graph(make_instance("grid", 4, 1), grid(4, 4, 1))
    assert _same_graph(make_instance("annulus", 3, 1), annulus_grid(3, 9, 1))
    assert _same_graph(make_instance("delaunay", 40, 1), delaunay_like(40, 1))
