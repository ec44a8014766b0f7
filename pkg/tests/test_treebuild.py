"""
Testes das construções de árvores: polígono convexo, politopo cíclico, lagartas e estrelas
"""
from itertools import combinations

import pytest

from nerve_forge.core.exceptions import (MissingTrace, NotAlternating, NotCaterpillar, NotConvexPosition, PreconditionViolated,
                                         SubsetNotFound, SupersetMismatch, TooFewPoints, WrongCount)
from nerve_forge.models.combinatorics import GraphSpec, LeafLine, Partition
from nerve_forge.models.geometry import PointSet
from nerve_forge.services.configs import config_service
from nerve_forge.services.nervecalc import nerve_service
from nerve_forge.services.treebuild import _segments_meet, tree_builder


def _assert_labeled(ps, partition, t):
    assert nerve_service.intersection_graph(ps, partition).edges == t.edges


class TestConvexPolygon:
    @pytest.mark.parametrize("seed", [0, 1])
    def test_all_small_trees(self, seed):
        for t in config_service.all_trees(5):
            ps = config_service.random_points(2 * t.n, 2, seed=seed, mode="convex-position")
            partition = tree_builder.tree_partition_convex_2d(t, ps)
            _assert_labeled(ps, partition, t)
            assert all(len(part) == 2 for part in partition.parts())

    def test_trace_has_one_line_per_leaf(self):
        t = GraphSpec.spider(3, 2)
        ps = config_service.random_points(14, 2, seed=3, mode="convex-position")
        partition = tree_builder.tree_partition_convex_2d(t, ps)
        assert len(partition.trace.of_type(LeafLine)) == t.n - 1

    def test_wrong_count(self):
        ps = config_service.random_points(7, 2, seed=1, mode="convex-position")
        with pytest.raises(WrongCount):
            tree_builder.tree_partition_convex_2d(GraphSpec.path(3), ps)

    def test_not_convex(self):
        ps = PointSet.from_rows([(0, 0), (8, 0), (10, 5), (8, 10), (0, 10), (3, 4)], dim=2)
        with pytest.raises(NotConvexPosition):
            tree_builder.tree_partition_convex_2d(GraphSpec.path(3), ps)


class TestExtension:
    def test_extension_keeps_base_and_nerve(self):
        t = GraphSpec.spider(3, 2)
        ps = config_service.random_points(14, 2, seed=5, mode="convex-position")
        base = tree_builder.tree_partition_convex_2d(t, ps)
        superset = config_service.with_extra_points(ps, 20, seed=5)
        extended = tree_builder.extend_partition_2d(base, superset)
        assert extended.assignment[:len(ps)] == base.assignment
        _assert_labeled(superset, extended, t)
        assert extended.trace is None

    def test_base_without_trace(self, square):
        base = Partition(n_parts=2, assignment=(0, 0, 1, 1))
        with pytest.raises(MissingTrace):
            tree_builder.extend_partition_2d(base, square)

    def test_kind_mismatch(self):
        t = GraphSpec.path(3)
        ps = config_service.random_points(7, 2, seed=2, mode="moment-curve-perturbed")
        base = tree_builder.tree_partition_cyclic(t, ps)
        with pytest.raises(MissingTrace):
            tree_builder.extend_partition_2d(base, ps)

    def test_superset_missing_base_point(self):
        t = GraphSpec.path(2)
        ps = config_service.random_points(4, 2, seed=3, mode="convex-position")
        base = tree_builder.tree_partition_convex_2d(t, ps)
        other = config_service.random_points(6, 2, seed=99)
        with pytest.raises(SupersetMismatch):
            tree_builder.extend_partition_2d(base, other)


class TestCyclicPolytope:
    @pytest.mark.parametrize("d", [2, 3])
    def test_small_trees(self, d):
        for t in config_service.all_trees(4):
            m = (t.n - 1) * (d + 1) + 1
            ps = config_service.random_points(m, d, seed=d, mode="moment-curve-perturbed")
            partition = tree_builder.tree_partition_cyclic(t, ps)
            _assert_labeled(ps, partition, t)

    def test_extension(self):
        t = GraphSpec.star(4)
        ps = config_service.random_points(13, 3, seed=8, mode="moment-curve-perturbed")
        base = tree_builder.tree_partition_cyclic(t, ps)
        superset = config_service.with_extra_points(ps, 10, seed=8)
        extended = tree_builder.extend_partition_cyclic(base, superset)
        assert extended.assignment[:len(ps)] == base.assignment
        _assert_labeled(superset, extended, t)

    def test_reversed_order_in_plane(self):
        t = GraphSpec.path(3)
        ps = config_service.random_points(7, 2, seed=4, mode="moment-curve-perturbed")
        backwards = ps.subset(list(range(6, -1, -1)))
        partition = tree_builder.tree_partition_cyclic(t, backwards)
        assert partition.trace.orientation == -1
        _assert_labeled(backwards, partition, t)

    def test_mirrored_curve_in_space(self):
        ps = config_service.random_points(9, 3, seed=4, mode="moment-curve-perturbed")
        mirrored = PointSet(dim=3, points=tuple((-p[0], p[1], p[2]) for p in ps))
        with pytest.raises(NotAlternating):
            tree_builder.tree_partition_cyclic(GraphSpec.path(3), mirrored)

    def test_wrong_count(self):
        ps = config_service.random_points(8, 2, seed=1, mode="moment-curve-perturbed")
        with pytest.raises(WrongCount):
            tree_builder.tree_partition_cyclic(GraphSpec.path(3), ps)


class TestCaterpillar:
    def test_decompose_path(self):
        dec = tree_builder.caterpillar_decompose(GraphSpec.path(5))
        assert len(dec.path) == 5
        assert dec.edges() == GraphSpec.path(5).edges

    def test_spider_is_not_caterpillar(self):
        with pytest.raises(NotCaterpillar):
            tree_builder.caterpillar_decompose(GraphSpec.spider(3, 2))

    @pytest.mark.parametrize("name,d", [("path:4", 2), ("star:5", 3), ("path:3", 4)])
    def test_exact_point_count(self, name, d):
        t = GraphSpec.parse(name)
        m = (d + 1) * (t.n - 1) + 1
        ps = config_service.random_points(m, d, seed=12)
        _assert_labeled(ps, tree_builder.caterpillar_partition(t, ps), t)

    def test_leftover_points(self):
        t = GraphSpec.tree(5, [(0, 1), (1, 2), (1, 3), (2, 4)])
        ps = config_service.random_points(20, 2, seed=4)
        _assert_labeled(ps, tree_builder.caterpillar_partition(t, ps), t)

    def test_too_few(self):
        ps = config_service.random_points(6, 2, seed=4)
        with pytest.raises(TooFewPoints):
            tree_builder.caterpillar_partition(GraphSpec.path(3), ps)


class TestStar:
    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_random_sets(self, n):
        for seed in range(5):
            ps = config_service.random_points(2 * n, 2, seed=seed)
            partition = tree_builder.star_partition_2d(ps, n)
            _assert_labeled(ps, partition, GraphSpec.star(n))

    def test_counts(self):
        with pytest.raises(TooFewPoints):
            tree_builder.star_partition_2d(config_service.random_points(5, 2, seed=1), 3)
        with pytest.raises(WrongCount):
            tree_builder.star_partition_2d(config_service.random_points(7, 2, seed=1), 3)

    def test_pairing_square(self):
        ps = PointSet.from_rows([(0, 0), (0, 4), (4, 0), (4, 4), (2, -10), (2, 10)], dim=2)
        assert tree_builder.pair_across_line(ps, [0, 1], [2, 3], (4, 5)) == [(0, 2), (1, 3)]

    def test_pairing_is_non_crossing(self):
        rows = [(0, 1), (1, 4), (0, 8), (1, 11), (0, 15),
                (10, 2), (9, 6), (10, 9), (9, 13), (10, 16),
                (5, -100), (5, 100)]
        ps = PointSet.from_rows(rows, dim=2)
        pairs = tree_builder.pair_across_line(ps, range(5), range(5, 10), (10, 11))
        assert sorted(a for a, _ in pairs) == list(range(5))
        assert sorted(b for _, b in pairs) == list(range(5, 10))
        for (a1, b1), (a2, b2) in combinations(pairs, 2):
            assert not _segments_meet(ps[a1], ps[b1], ps[a2], ps[b2])

    def test_pairing_rejects_bad_chord(self):
        ps = PointSet.from_rows([(0, 0), (0, 4), (4, 0), (4, 4), (2, -10), (2, 10), (2, 1), (2, 3)], dim=2)
        with pytest.raises(PreconditionViolated):
            tree_builder.pair_across_line(ps, [0, 2], [1, 3], (4, 5))
        with pytest.raises(PreconditionViolated):
            tree_builder.pair_across_line(ps, [0], [2], (6, 7))
        with pytest.raises(PreconditionViolated):
            tree_builder.pair_across_line(ps, [0, 1], [2], (4, 5))

    def test_lower_bound_on_convex_position(self):
        for n in (2, 3, 4):
            ps = config_service.random_points(2 * n - 1, 2, seed=n, mode="convex-position")
            assert not nerve_service.is_partition_induced(GraphSpec.star(n), ps, n).found


class TestPipeline:
    def test_caterpillar_branch(self):
        t = GraphSpec.path(4)
        ps = config_service.random_points(10, 2, seed=6)
        partition = tree_builder.tverberg_tree_pipeline(t, ps)
        _assert_labeled(ps, partition, t)

    def test_planar_non_caterpillar(self):
        t = GraphSpec.spider(3, 2)
        ps = config_service.random_points(14, 2, seed=6, mode="convex-position", extra_interior=6)
        partition = tree_builder.tverberg_tree_pipeline(t, ps)
        _assert_labeled(ps, partition, t)

    def test_spatial_non_caterpillar(self):
        t = GraphSpec.spider(3, 2)
        ps = config_service.random_points(25, 3, seed=6, mode="moment-curve-perturbed")
        partition = tree_builder.tverberg_tree_pipeline(t, ps)
        _assert_labeled(ps, partition, t)

    def test_missing_convex_subset(self):
        ps = config_service.random_points(14, 2, seed=6)
        with pytest.raises(SubsetNotFound) as info:
            tree_builder.tverberg_tree_pipeline(GraphSpec.spider(3, 2), ps)
        assert info.value.detail["subset_size"] == 14
