import numpy as np
import pytest

from fairview.hexbin import axial_cell, build_hexbins
from fairview.projection import Point2D


def points_at(coords):
    return [Point2D(f"c{i}", float(x), float(y)) for i, (x, y) in enumerate(coords)]


def random_points(rng, n):
    kind = rng.integers(0, 3)
    if kind == 0:
        xy = rng.uniform(-5, 5, size=(n, 2))
    elif kind == 1:
        centers = rng.normal(scale=3, size=(max(1, n // 50), 2))
        picks = centers[rng.integers(0, len(centers), size=n)]
        xy = picks + rng.normal(scale=0.2, size=(n, 2))
    else:
        # heavy duplication: many coincident points
        base = rng.uniform(-2, 2, size=(max(1, n // 20), 2))
        xy = base[rng.integers(0, len(base), size=n)]
    return points_at(xy)


class TestBuildHexbins:
    def test_single_point(self):
        bins = build_hexbins(points_at([(0.3, -0.2)]), capacity=15, cell_size=1.0)
        assert len(bins) == 1
        assert bins[0].size == 1

    def test_coincident_overflow_splits_deterministically(self):
        pts = points_at([(0.0, 0.0)] * 30)
        bins = build_hexbins(pts, capacity=15, cell_size=1.0)
        assert len(bins) == 2
        assert sorted(b.size for b in bins) == [15, 15]
        # chunked in input order
        assert bins[0].comment_ids == tuple(f"c{i}" for i in range(15))
        assert bins[1].comment_ids == tuple(f"c{i}" for i in range(15, 30))

    def test_fixture_partition_and_capacity(self, offline_engine):
        bins = offline_engine.bundle.bins
        all_ids = [cid for b in bins for cid in b.comment_ids]
        assert len(all_ids) == 574
        assert len(set(all_ids)) == 574
        assert max(b.size for b in bins) <= 15

    def test_empty_input(self):
        assert build_hexbins([], capacity=15, cell_size=1.0) == []

    def test_capacity_validation(self):
        with pytest.raises(ValueError):
            build_hexbins(points_at([(0, 0)]), capacity=0, cell_size=1.0)
        with pytest.raises(ValueError):
            build_hexbins(points_at([(0, 0)]), capacity=15, cell_size=0.0)

    def test_random_point_sets_partition_and_cap(self):
        # acceptance-grade sweep: 200 random sets, sizes 1..2000
        rng = np.random.default_rng(20260809)
        for trial in range(200):
            n = int(rng.integers(1, 2001))
            pts = random_points(rng, n)
            bins = build_hexbins(pts, capacity=15, cell_size=0.5)
            ids = [cid for b in bins for cid in b.comment_ids]
            assert len(ids) == n, f"trial {trial}: lost points"
            assert len(set(ids)) == n, f"trial {trial}: duplicated points"
            assert max(b.size for b in bins) <= 15, f"trial {trial}: capacity exceeded"

    def test_identical_inputs_identical_layouts(self):
        rng = np.random.default_rng(5)
        pts = random_points(rng, 800)
        a = build_hexbins(pts, capacity=15, cell_size=0.5)
        b = build_hexbins(list(pts), capacity=15, cell_size=0.5)
        assert [(x.bin_id, x.comment_ids) for x in a] == [(y.bin_id, y.comment_ids) for y in b]

    def test_sentiment_mix_consistency(self, offline_engine):
        corpus = offline_engine.corpus
        for b in offline_engine.bundle.bins:
            labels = [corpus.get(cid).sentiment for cid in b.comment_ids]
            assert b.sentiment_mix.n_total == len(labels)
            assert b.sentiment_mix.n_pos == sum(1 for l in labels if l.value == "positive")


class TestAxialCell:
    def test_origin(self):
        assert axial_cell(0.0, 0.0, 1.0) == (0, 0)

    def test_left_right_neighbors(self):
        # pointy-top: horizontal neighbor spacing is sqrt(3)*size
        q1, r1 = axial_cell(np.sqrt(3), 0.0, 1.0)
        assert (q1, r1) == (1, 0)
        q2, r2 = axial_cell(-np.sqrt(3), 0.0, 1.0)
        assert (q2, r2) == (-1, 0)

    def test_every_point_lands_in_nearest_center(self):
        # oracle: the assigned cell's center must be the closest center
        rng = np.random.default_rng(11)
        size = 0.7
        for _ in range(300):
            x, y = rng.uniform(-4, 4, size=2)
            q, r = axial_cell(x, y, size)
            cx = size * np.sqrt(3) * (q + r / 2)
            cy = size * 1.5 * r
            d_own = np.hypot(x - cx, y - cy)
            for dq, dr in ((1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)):
                nx = size * np.sqrt(3) * ((q + dq) + (r + dr) / 2)
                ny = size * 1.5 * (r + dr)
                assert d_own <= np.hypot(x - nx, y - ny) + 1e-9
