"""
Testes do grafo de interseção, do nervo e da busca exaustiva
"""
import networkx as nx
import pytest

from nerve_forge.core.exceptions import InfeasibleSize
from nerve_forge.models.combinatorics import GraphSpec, Partition
from nerve_forge.services.configs import config_service
from nerve_forge.services.nervecalc import nerve_service, stirling2


class TestStirling:
    def test_known_values(self):
        assert stirling2(8, 4) == 1701
        assert stirling2(10, 4) == 34105
        assert stirling2(4, 4) == 1
        assert stirling2(3, 5) == 0


class TestNerve:
    def test_concurrent_segments(self, face_fixture):
        concurrent, shifted, segments = face_fixture
        a = nerve_service.nerve_complex(concurrent, segments)
        b = nerve_service.nerve_complex(shifted, segments)
        assert a.one_skeleton().edges == b.one_skeleton().edges == frozenset({(0, 1), (0, 2), (1, 2)})
        assert a.faces_of_size(3) == [(0, 1, 2)]
        assert b.faces_of_size(3) == []

    def test_triple_face(self, nerve_face_points):
        ps, partition = nerve_face_points
        nerve = nerve_service.nerve_complex(ps, partition)
        assert nerve.faces_of_size(3) == [(0, 1, 2)]

    def test_max_face_dim_caps_faces(self, nerve_face_points):
        ps, partition = nerve_face_points
        nerve = nerve_service.nerve_complex(ps, partition, max_face_dim=1)
        assert nerve.faces_of_size(3) == []
        assert len(nerve.faces_of_size(2)) == 3

    def test_same_chirotope(self, face_fixture):
        from nerve_forge.services.exactgeom import exact_geometry
        concurrent, shifted, _ = face_fixture
        assert exact_geometry.chirotope(concurrent).signs == exact_geometry.chirotope(shifted).signs


class TestIsomorphism:
    def test_relabelled_path(self):
        g = GraphSpec.general(4, [(2, 0), (0, 3), (3, 1)])
        ok, mapping = nerve_service.graphs_isomorphic(g, GraphSpec.path(4))
        assert ok
        assert {tuple(sorted((mapping[u], mapping[v]))) for u, v in g.edges} == set(GraphSpec.path(4).edges)

    def test_path_is_not_star(self):
        ok, mapping = nerve_service.graphs_isomorphic(GraphSpec.path(4), GraphSpec.star(4))
        assert not ok and mapping is None

    def test_transport_reindexes(self):
        p = Partition(n_parts=2, assignment=(0, 0, 1))
        moved = nerve_service.order_type_transport(p, [2, 0, 1])
        assert moved.assignment == (0, 1, 0)


class TestSearch:
    def test_p4_blocker(self):
        ps = config_service.builtin_config("p4-blocker-8")
        outcome = nerve_service.is_partition_induced(GraphSpec.path(4), ps, 4)
        assert not outcome.found

    def test_p4_blocker_full_enumeration(self):
        ps = config_service.builtin_config("p4-blocker-8")
        outcome = nerve_service.is_partition_induced(GraphSpec.path(4), ps, 4, prune=False)
        assert not outcome.found
        assert outcome.leaves == 1701

    @pytest.mark.slow
    def test_c4_blocker_full_enumeration(self):
        ps = config_service.builtin_config("c4-blocker-10")
        outcome = nerve_service.is_partition_induced(GraphSpec.cycle(4), ps, 4, prune=False)
        assert not outcome.found
        assert outcome.leaves == 34105

    def test_c4_blocker(self):
        ps = config_service.builtin_config("c4-blocker-10")
        assert not nerve_service.is_partition_induced(GraphSpec.cycle(4), ps, 4).found

    def test_p4_on_nine_points(self):
        for seed in range(3):
            ps = config_service.random_points(9, 2, seed=seed)
            outcome = nerve_service.is_partition_induced(GraphSpec.path(4), ps, 4)
            assert outcome.found
            ok, _ = nerve_service.verify_partition(ps, outcome.partition, GraphSpec.path(4))
            assert ok

    def test_workers_give_same_partition(self):
        ps = config_service.random_points(9, 2, seed=5)
        single = nerve_service.is_partition_induced(GraphSpec.path(4), ps, 4, workers=1)
        pooled = nerve_service.is_partition_induced(GraphSpec.path(4), ps, 4, workers=2)
        assert single.partition == pooled.partition

    def test_part_count_mismatch(self, square):
        outcome = nerve_service.is_partition_induced(GraphSpec.path(3), square, 2)
        assert not outcome.found and outcome.leaves == 0

    def test_budget(self):
        ps = config_service.builtin_config("p4-blocker-8")
        with pytest.raises(InfeasibleSize):
            nerve_service.is_partition_induced(GraphSpec.path(4), ps, 4, prune=False, budget=100)

    def test_audit_confirms_negative(self):
        ps = config_service.builtin_config("p4-blocker-8")
        assert not nerve_service.is_partition_induced(GraphSpec.path(4), ps, 4, audit=True).found

    def test_bad_order(self, square):
        with pytest.raises(ValueError):
            nerve_service.is_partition_induced(GraphSpec.path(2), square, 2, order=[0, 0, 1, 2])

    def test_convex_obstruction_needs_more_points(self):
        k = GraphSpec.convex_obstruction()
        ps = config_service.random_points(12, 2, seed=6)
        outcome = nerve_service.is_partition_induced(k, ps, 10, prune=False)
        assert not outcome.found
        assert outcome.leaves == stirling2(12, 10) == 1705
        assert not nerve_service.is_partition_induced(k, ps, 10).found

    @pytest.mark.parametrize("mode", ["convex-position", "uniform-box"])
    def test_connected_graphs_need_twice_the_vertices(self, mode):
        graphs = [g for g in nx.graph_atlas_g() if 2 <= g.number_of_nodes() <= 4 and nx.is_connected(g)]
        assert len(graphs) == 9
        for g in graphs:
            spec = GraphSpec.from_networkx(g)
            ps = config_service.random_points(2 * spec.n - 1, 2, seed=spec.n, mode=mode)
            assert not nerve_service.is_partition_induced(spec, ps, spec.n, prune=False).found
