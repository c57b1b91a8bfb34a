"""Face-boundary all-pairs distances against per-vertex searches."""

import pytest

from planarsp import oracles
from planarsp.boundary_apsp import (apsp_csv, face_boundary_apsp,
                                    face_vertices, use_engine)
from planarsp.errors import FaceNotFound
from planarsp.instances import annulus_grid, delaunay_like, grid
from planarsp.monge_rmq import INF


def _oracle_matrix(g, verts):
    adj = g.adjacency()
    return [[oracles.dijkstra(adj, v)[w] for w in verts] for v in verts]


def _interesting_faces(g, want_k):
    """Face ids whose distinct-vertex count equals ``want_k``."""
    return [f for f in range(len(g.faces))
            if len(face_vertices(g, f)) == want_k]


@pytest.mark.parametrize("force", [False, True])
def test_quad_faces_of_grid(force):
    g = grid(6, 6, seed=1)
    for face in _interesting_faces(g, 4)[:6]:
        verts, dist = face_boundary_apsp(g, face, force_engine=force)
        assert dist == _oracle_matrix(g, verts)
        assert [row[i] for i, row in enumerate(dist)] == [0] * len(verts)


@pytest.mark.parametrize("force", [False, True])
def test_large_hole_face_of_annulus(force):
    g = annulus_grid(3, 9, seed=2)
    face = max(range(len(g.faces)), key=lambda f: len(face_vertices(g, f)))
    verts, dist = face_boundary_apsp(g, face, force_engine=force)
    assert len(verts) == 9
    assert dist == _oracle_matrix(g, verts)


@pytest.mark.parametrize("backend", ["cq3", "cq1"])
def test_engine_backends_agree_on_triangulated_instance(backend):
    g = delaunay_like(200, seed=3)
    face = max(range(len(g.faces)), key=lambda f: len(face_vertices(g, f)))
    verts, dist = face_boundary_apsp(g, face, backend=backend,
                                     force_engine=True)
    assert dist == _oracle_matrix(g, verts)


def test_heuristic_prefers_plain_searches_for_big_faces():
    # k plain searches win unless the face is tiny relative to the graph
    assert use_engine(4, 10_000)
    assert not use_engine(40, 10_000)
    assert not use_engine(4, 16)


def test_bad_face_id_rejected():
    g = grid(4, 4, seed=0)
    with pytest.raises(FaceNotFound):
        face_boundary_apsp(g, len(g.faces))
    with pytest.raises(FaceNotFound):
        face_vertices(g, -1)


def test_csv_layout_and_inf_rendering():
    verts = [7, 2, 9]
    dist = [[0, 5, INF], [5, 0, 2.5], [INF, 2.0, 0]]
    text = apsp_csv(verts, dist)
    lines = text.splitlines()
    assert lines[0] == "source,7,2,9"
    assert lines[1] == "7,0,5,inf"
    assert lines[2] == "2,5,0,2.5"
    assert lines[3] == "9,inf,2,0"
    assert text.endswith("\n")
