"""
Testes dos tipos de domínio
"""
from fractions import Fraction

import pytest

from nerve_forge.core.exceptions import BijectionError, DimensionError, NotATree, PartitionError
from nerve_forge.models.combinatorics import GraphKind, GraphSpec, Partition
from nerve_forge.models.geometry import Hyperplane, PointSet
from nerve_forge.services.exactgeom import exact_geometry


class TestPartition:
    def test_empty_part_rejected(self):
        with pytest.raises(PartitionError):
            Partition(n_parts=3, assignment=(0, 0, 2))

    def test_from_parts(self):
        p = Partition.from_parts([[2, 0], [1]], 3)
        assert p.assignment == (0, 1, 0)
        assert p.parts() == [(0, 2), (1,)]

    def test_overlap_and_gap(self):
        with pytest.raises(PartitionError):
            Partition.from_parts([[0, 1], [1]], 2)
        with pytest.raises(PartitionError):
            Partition.from_parts([[0]], 2)

    def test_transport_requires_bijection(self):
        with pytest.raises(BijectionError):
            Partition(n_parts=1, assignment=(0, 0)).transported([0, 0])


class TestGraphSpec:
    def test_named(self):
        assert GraphSpec.parse("path:4").edges == frozenset({(0, 1), (1, 2), (2, 3)})
        assert GraphSpec.parse("cycle:4").kind == GraphKind.CYCLE
        assert GraphSpec.parse("spider:3x2").n == 7
        with pytest.raises(ValueError):
            GraphSpec.parse("wheel:5")

    def test_tree_validation(self):
        with pytest.raises(NotATree):
            GraphSpec.tree(3, [(0, 1)])

    def test_edges_normalized(self):
        g = GraphSpec.general(3, [(2, 0), (0, 2), (1, 2)])
        assert g.edges == frozenset({(0, 2), (1, 2)})
        assert g.degrees() == [1, 1, 2]

    def test_convex_obstruction(self):
        k = GraphSpec.parse("convex-obstruction")
        assert k == GraphSpec.convex_obstruction()
        assert k.n == 10 and len(k.edges) == 15
        assert k.is_triangle_free()
        assert k.degrees() == [3] * 10

    def test_triangle_free(self):
        assert GraphSpec.cycle(4).is_triangle_free()
        assert not GraphSpec.cycle(3).is_triangle_free()


class TestGeometryTypes:
    def test_dimension_checked(self):
        with pytest.raises(DimensionError):
            PointSet.from_rows([(0, 0), (1, 2, 3)], dim=2)

    def test_line_through_points(self):
        h = Hyperplane.through((Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)))
        assert h.side((0, 1)) == 1
        assert h.flipped().side((0, 1)) == -1
        assert h.side((5, 0)) == 0

    def test_restricted_chirotope_follows_order(self, square):
        chi = exact_geometry.chirotope(square)
        assert chi.restrict([0, 1, 2]).signs[(0, 1, 2)] == 1
        assert chi.restrict([1, 0, 2]).signs[(0, 1, 2)] == -1

    def test_integer_points(self):
        ps = PointSet.from_rows([("1/2", 0), (1, "1/3")], dim=2)
        assert ps.integer_points == [(3, 0), (6, 2)]
