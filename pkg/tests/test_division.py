"""Edge-partition divisions: structural invariants and the region tree."""

import math

import pytest

from helpers import oracle_dist
from planarsp.division import (division_stats, dump_division, r_division,
                               recursive_division)
from planarsp.instances import annulus_grid, delaunay_like, grid


def _check_single_level(g, regions, r):
    counted = sorted(e for R in regions for e in R.edges)
    assert counted == list(range(g.m)), "regions must partition the edges"
    for R in regions:
        assert len(R.vertices) <= max(r, 3)
        assert set(R.boundary) <= set(R.vertices)
        flat = {v for hole in R.holes for v in hole} | set(R.stray_boundary)
        assert flat == set(R.boundary)
    # a vertex incident to two regions is boundary in both
    owner = {}
    for R in regions:
        for e in R.edges:
            for v in (g.tail[2 * e], g.head[2 * e]):
                owner.setdefault(v, set()).add(R.id)
    by_id = {R.id: R for R in regions}
    for v, rs in owner.items():
        if len(rs) > 1:
            for rid in rs:
                assert v in set(by_id[rid].boundary), \
                    f"shared vertex {v} interior to region {rid}"


@pytest.mark.parametrize("build,r", [
    (lambda: grid(10, 10, 0), 16),
    (lambda: grid(16, 16, 1), 64),
    (lambda: annulus_grid(5, 15, 2), 16),
    (lambda: delaunay_like(250, 3), 25),
])
def test_single_level_division_invariants(build, r):
    g = build()
    regions = r_division(g, r)
    _check_single_level(g, regions, r)


def test_whole_graph_fits_in_one_region():
    g = grid(3, 3, 0)
    regions = r_division(g, 100)
    assert len(regions) == 1
    assert not regions[0].boundary
    assert sorted(regions[0].vertices) == list(range(g.n))


def test_boundary_count_scales_like_area_over_root_r():
    g = grid(32, 32, 0)
    for r in (16, 64):
        regions = r_division(g, r)
        total_boundary = sum(len(R.boundary) for R in regions)
        assert total_boundary <= 40 * g.n / math.sqrt(r)


def test_mandatory_vertices_are_boundary_everywhere():
    g = grid(12, 12, 5)
    special = (0, 37, 143)
    regions = r_division(g, 16, mandatory_boundary=special)
    for R in regions:
        for v in special:
            if v in set(R.vertices):
                assert v in set(R.boundary)


def test_recursive_division_tree_structure():
    g = grid(16, 16, 2)
    div = recursive_division(g, 16)
    root = div.root
    assert sorted(root.edges) == list(range(g.m))
    by_id = {R.id: R for R in div.regions}
    for R in div.regions:
        if R.children:
            child_edges = sorted(e for c in R.children for e in by_id[c].edges)
            assert child_edges == sorted(R.edges)
            for c in R.children:
                assert by_id[c].parent == R.id
                assert by_id[c].height == R.height - 1
    # heights: leaves are 1, the root has the maximum height
    hs = [R.height for R in div.regions]
    assert min(hs) == 1
    assert root.height == max(hs)
    # budgets square at each level: r, r^2, ... capped by n
    for R in div.regions:
        if R.height < root.height:
            assert len(R.vertices) <= max(3, 16 ** R.height)


def test_parent_boundary_stays_boundary_in_children():
    g = delaunay_like(300, 7)
    div = recursive_division(g, 9)
    by_id = {R.id: R for R in div.regions}
    for R in div.regions:
        for c in R.children:
            child = by_id[c]
            inherited = set(R.boundary) & set(child.vertices)
            assert inherited <= set(child.boundary)


def test_height_of_marks_top_boundary_layer():
    g = grid(12, 12, 1)
    div = recursive_division(g, 16)
    root_h = div.root.height
    bound_at = {v: 0 for v in range(g.n)}
    for R in div.regions:
        if R.height == root_h:
            continue
        for v in R.boundary:
            bound_at[v] = max(bound_at[v], R.height)
    for v in range(g.n):
        assert div.height_of[v] == bound_at[v]


def test_stats_and_dump_are_consistent(capsys):
    g = grid(8, 8, 3)
    regions = r_division(g, 16)
    stats = division_stats(g, regions)
    assert stats["regions"] == len(regions)
    text = dump_division(regions)
    assert len([ln for ln in text.splitlines() if ln.startswith("R ")]) \
        == len(regions)
