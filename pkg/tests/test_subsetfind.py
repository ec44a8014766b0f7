"""
Testes da busca de subconjuntos convexos e cíclicos
"""
from itertools import combinations

import pytest

from nerve_forge.core.exceptions import BudgetExceeded, DimensionError
from nerve_forge.models.geometry import PointSet
from nerve_forge.services.configs import config_service
from nerve_forge.services.exactgeom import exact_geometry
from nerve_forge.services.subsetfind import ramsey_bound_formula, subset_finder


class TestConvexSubset:
    def test_square_with_center(self):
        ps = PointSet.from_rows([(0, 0), (4, 0), (2, 1), (4, 4), (0, 4)], dim=2)
        found = subset_finder.find_convex_subset_2d(ps, 4)
        assert len(found) == 4 and exact_geometry.in_convex_position(ps, found)
        assert subset_finder.find_convex_subset_2d(ps, 5) is None

    def test_point_inside_triangle(self):
        ps = PointSet.from_rows([(0, 0), (6, 0), (0, 6), (1, 1)], dim=2)
        assert subset_finder.find_convex_subset_2d(ps, 4) is None
        assert len(subset_finder.find_convex_subset_2d(ps, 3)) == 3

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_matches_brute_force(self, seed):
        ps = config_service.random_points(9, 2, seed=seed)
        for k in range(4, 8):
            brute = any(exact_geometry.in_convex_position(ps, c) for c in combinations(range(9), k))
            found = subset_finder.find_convex_subset_2d(ps, k)
            assert (found is not None) == brute
            if found is not None:
                assert exact_geometry.in_convex_position(ps, found)

    def test_counterclockwise_output(self):
        ps = config_service.random_points(8, 2, seed=4, mode="convex-position")
        found = subset_finder.find_convex_subset_2d(ps, 8)
        assert exact_geometry.orientation([ps[found[0]], ps[found[1]], ps[found[2]]]) == 1

    def test_extremal_set_has_no_hexagon(self):
        ps = config_service.no_convex_polygon_set(6)
        assert len(ps) == 16
        assert exact_geometry.in_general_position(ps)
        assert subset_finder.find_convex_subset_2d(ps, 6) is None
        assert subset_finder.find_convex_subset_2d(ps, 5) is not None

    def test_requires_plane(self):
        ps = PointSet.from_rows([(0, 0, 0)], dim=3)
        with pytest.raises(DimensionError):
            subset_finder.find_convex_subset_2d(ps, 1)


class TestCyclicSubpolytope:
    def test_moment_curve_is_cyclic(self):
        ps = config_service.random_points(6, 3, seed=7, mode="moment-curve-perturbed")
        seq, orientation = subset_finder.find_cyclic_subpolytope(ps, 6)
        assert seq == list(range(6))
        assert orientation == 1

    def test_found_subset_has_uniform_chirotope(self):
        ps = config_service.random_points(6, 3, seed=5, mode="moment-curve-perturbed", extra_interior=3)
        found = subset_finder.find_cyclic_subpolytope(ps, 6)
        assert found is not None
        seq, orientation = found
        assert seq == list(range(6)) and orientation == 1
        assert exact_geometry.chirotope(ps.subset(seq)).uniform_sign() == 1

    def test_adjacent_swap_breaks_alternation(self):
        ps = config_service.random_points(7, 3, seed=9, mode="moment-curve-perturbed")
        seq, _ = subset_finder.find_cyclic_subpolytope(ps, 7)
        for i in range(len(seq) - 1):
            swapped = list(seq)
            swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
            assert exact_geometry.chirotope(ps.subset(swapped)).uniform_sign() == 0

    def test_mirrored_curve_is_rejected_in_space(self):
        ps = config_service.random_points(6, 3, seed=7, mode="moment-curve-perturbed")
        mirrored = PointSet(dim=3, points=tuple((-p[0], p[1], p[2]) for p in ps))
        assert exact_geometry.chirotope(mirrored).uniform_sign() == -1
        assert subset_finder.find_cyclic_subpolytope(mirrored, 6) is None

    def test_budget(self):
        ps = config_service.random_points(8, 3, seed=2)
        with pytest.raises(BudgetExceeded):
            subset_finder.find_cyclic_subpolytope(ps, 8, budget=3)

    def test_too_large(self, square):
        assert subset_finder.find_cyclic_subpolytope(square, 5) is None


def test_bound_formula():
    assert ramsey_bound_formula(2, 2) == "N(4,2) <= C(4,2) + 1 = 7"
    assert ramsey_bound_formula(3, 3) == "R_4(9)"
