"""
Testes dos predicados geométricos exatos
"""
from fractions import Fraction
from itertools import combinations

import pytest

from nerve_forge.core.exceptions import DegeneracyError, DimensionError
from nerve_forge.models.geometry import Hyperplane, PointSet
from nerve_forge.services.configs import config_service
from nerve_forge.services.exactgeom import exact_geometry


class TestOrientation:
    def test_counterclockwise_triangle(self):
        assert exact_geometry.orientation([(0, 0), (1, 0), (0, 1)]) == 1
        assert exact_geometry.orientation([(0, 0), (0, 1), (1, 0)]) == -1

    def test_collinear(self):
        assert exact_geometry.orientation([(0, 0), (1, 1), (3, 3)]) == 0

    def test_rational_tetrahedron(self):
        pts = [(0, 0, 0), (Fraction(1, 2), 0, 0), (0, Fraction(1, 3), 0), (0, 0, Fraction(1, 5))]
        assert exact_geometry.orientation(pts) == 1

    def test_wrong_count(self):
        with pytest.raises(DimensionError):
            exact_geometry.orientation([(0, 0), (1, 0)])

    def test_square_chirotope_is_uniform(self, square):
        chi = exact_geometry.chirotope(square)
        assert chi.uniform_sign() == 1
        assert len(chi.values()) == 4

    def test_general_position(self, square):
        assert exact_geometry.in_general_position(square)
        line = PointSet.from_rows([(0, 0), (1, 1), (2, 2), (5, 0)], dim=2)
        assert not exact_geometry.in_general_position(line)


class TestRadon:
    def test_square_diagonals(self, square):
        pair = exact_geometry.radon_partition(list(square))
        assert pair.part_a == frozenset({0, 2})
        assert pair.part_b == frozenset({1, 3})
        assert pair.witness == (Fraction(1, 2), Fraction(1, 2))

    def test_triangle_with_interior_point(self):
        pts = [(0, 0), (6, 0), (0, 6), (1, 1)]
        pair = exact_geometry.radon_partition(pts)
        assert {pair.part_a, pair.part_b} == {frozenset({0, 1, 2}), frozenset({3})}
        assert pair.witness == (1, 1)

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_witness_in_both_hulls(self, d):
        for seed in range(10):
            ps = config_service.random_points(d + 2, d, seed=seed)
            pair = exact_geometry.radon_partition(list(ps))
            assert 0 in pair.part_a
            assert exact_geometry.point_in_hull(ps, pair.witness, pair.part_a)
            assert exact_geometry.point_in_hull(ps, pair.witness, pair.part_b)

    def test_collinear_points_are_degenerate(self):
        with pytest.raises(DegeneracyError):
            exact_geometry.radon_partition([(0, 0), (1, 0), (2, 0), (3, 0)])


class TestHulls:
    def test_crossing_diagonals(self, square):
        test = exact_geometry.hulls_intersect(square, [0, 2], [1, 3])
        assert test.intersects
        assert test.common_point == (Fraction(1, 2), Fraction(1, 2))

    def test_opposite_edges_have_separator(self, square):
        test = exact_geometry.hulls_intersect(square, [0, 1], [2, 3])
        assert not test.intersects
        h = test.separator
        assert all(h.side(square[i]) < 0 for i in (0, 1))
        assert all(h.side(square[i]) > 0 for i in (2, 3))

    def test_overlapping_indices_rejected(self, square):
        with pytest.raises(ValueError):
            exact_geometry.hulls_intersect(square, [0, 1], [1, 2])

    def test_planar_test_agrees_with_linear_program(self):
        ps = config_service.random_points(7, 2, seed=11)
        for a in combinations(range(7), 3):
            rest = [i for i in range(7) if i not in a]
            for b in combinations(rest, 2):
                assert exact_geometry.hulls_meet(ps, list(a), list(b)) == \
                    exact_geometry.hulls_intersect(ps, a, b).intersects

    def test_common_point_of_three_parts(self, nerve_face_points):
        ps, partition = nerve_face_points
        assert exact_geometry.common_point(ps, partition.parts()) == (0, 0)

    def test_no_common_point(self, face_fixture):
        _, shifted, segments = face_fixture
        assert exact_geometry.common_point(shifted, segments.parts()) is None

    def test_point_in_hull(self, square):
        assert exact_geometry.point_in_hull(square, (Fraction(1, 3), Fraction(1, 3)), [0, 1, 2])
        assert not exact_geometry.point_in_hull(square, (Fraction(2, 3), Fraction(2, 3)), [0, 1, 3])


class TestConvexity:
    def test_hull_order(self):
        ps = PointSet.from_rows([(2, 2), (0, 0), (1, 1), (2, 0), (0, 2)], dim=2)
        assert exact_geometry.convex_hull_2d(ps) == [1, 3, 0, 4]
        assert not exact_geometry.in_convex_position(ps)
        assert exact_geometry.in_convex_position(ps, [0, 1, 3, 4])

    def test_convex_position_in_space(self):
        ps = PointSet.from_rows([(0, 0, 0), (4, 0, 0), (0, 4, 0), (0, 0, 4), (1, 1, 1)], dim=3)
        assert not exact_geometry.in_convex_position(ps)
        assert exact_geometry.in_convex_position(ps, [0, 1, 2, 3])

    def test_side_counts(self, square):
        h = Hyperplane(normal=(Fraction(1), Fraction(0)), offset=Fraction(1))
        assert exact_geometry.separating_line_side_counts(square, h) == (0, 2, 2)
