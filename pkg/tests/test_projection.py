import itertools

import numpy as np
import pytest

from fairview.pipeline import EmbeddingMatrix
from fairview.projection import ProjectionError, project_2d


def matrix(vectors, ids=None):
    arr = np.asarray(vectors, dtype=np.float64)
    ids = ids or tuple(f"c{i}" for i in range(arr.shape[0]))
    return EmbeddingMatrix(tuple(ids), arr)


class TestLinearProjection:
    def test_single_comment_at_origin(self):
        pts = project_2d(matrix([[3.0, 4.0, 5.0]]), method="linear")
        assert pts[0].x == 0.0 and pts[0].y == 0.0

    def test_identical_clusters_collapse(self):
        vecs = [[1, 0, 0]] * 3 + [[0, 1, 0]] * 3
        pts = project_2d(matrix(vecs), method="linear")
        first = {(p.x, p.y) for p in pts[:3]}
        second = {(p.x, p.y) for p in pts[3:]}
        assert len(first) == 1 and len(second) == 1  # zero within-cluster spread
        assert first != second  # distinct locations

    def test_orthogonal_triple_equidistant(self):
        # centered 3-simplex lives in a plane orthogonal to (1,1,1); the
        # top-2 principal directions span it, so all pairwise distances
        # stay sqrt(2)
        pts = project_2d(matrix(np.eye(3)), method="linear")
        coords = [(p.x, p.y) for p in pts]
        dists = [
            np.hypot(a[0] - b[0], a[1] - b[1]) for a, b in itertools.combinations(coords, 2)
        ]
        assert dists[0] == pytest.approx(dists[1], abs=1e-9)
        assert dists[1] == pytest.approx(dists[2], abs=1e-9)
        assert dists[0] == pytest.approx(np.sqrt(2), abs=1e-9)

    def test_deterministic(self):
        rng = np.random.default_rng(7)
        vecs = rng.normal(size=(40, 16))
        a = project_2d(matrix(vecs), seed=1, method="linear")
        b = project_2d(matrix(vecs), seed=99, method="linear")  # seed-independent
        assert [(p.x, p.y) for p in a] == [(p.x, p.y) for p in b]

    def test_dim_one_rejected(self):
        with pytest.raises(ProjectionError):
            project_2d(matrix([[1.0], [2.0]]), method="linear")

    def test_empty_rejected(self):
        with pytest.raises(ProjectionError):
            project_2d(matrix(np.zeros((0, 4))), method="linear")

    def test_finite_on_fixture(self, offline_engine):
        for p in offline_engine.bundle.points:
            assert np.isfinite(p.x) and np.isfinite(p.y)
        assert len(offline_engine.bundle.points) == 574

    def test_auto_falls_back_without_umap(self):
        # umap is not installed in this environment; auto must still work
        vecs = np.random.default_rng(3).normal(size=(10, 8))
        pts = project_2d(matrix(vecs), method="auto")
        assert len(pts) == 10
