"""
Serviço de nervos: grafos de interseção, complexos de nervo, isomorfismo e busca exaustiva
"""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from ..core.config import settings
from ..core.exceptions import InfeasibleSize, PartitionError, VerificationError
from ..models.combinatorics import (
    GraphSpec,
    IntersectionGraph,
    NerveComplex,
    Partition,
    SearchOutcome,
)
from ..models.geometry import PointSet
from .exactgeom import exact_geometry

logger = logging.getLogger(__name__)

GraphLike = Union[GraphSpec, IntersectionGraph]


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Número de Stirling de segunda espécie S(n, k)"""
    if n == k:
        return 1
    if n == 0 or k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def _as_networkx(g: GraphLike) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges)
    return out


class _PartitionSearch:
    """Enumeração em strings de crescimento restrito com grafo parcial incremental"""

    def __init__(self, target: GraphSpec, ps: PointSet, parts: int, order: Sequence[int],
                 budget: int, prune: bool):
        self.target = target
        self.ps = ps
        self.k = parts
        self.order = list(order)
        self.n = len(self.order)
        self.budget = budget
        self.prune = prune
        self.target_edges = len(target.edges)
        self.target_degrees = sorted(target.degrees(), reverse=True)
        self.triangle_free = target.is_triangle_free()
        self.blocks: List[List[int]] = [[] for _ in range(parts)]
        self.adj: List[Set[int]] = [set() for _ in range(parts)]
        self.edge_count = 0
        self.labels: List[int] = [0] * self.n
        self.cache: Dict[frozenset, bool] = {}
        self.leaves = 0
        self.nodes = 0
        self.pruned = 0

    def _meet(self, a: List[int], b: List[int]) -> bool:
        key = frozenset((frozenset(a), frozenset(b)))
        hit = self.cache.get(key)
        if hit is None:
            hit = exact_geometry.hulls_meet(self.ps, a, b)
            self.cache[key] = hit
        return hit

    def _place(self, pos: int, block: int) -> Tuple[List[int], bool]:
        """Coloca o ponto e devolve as arestas novas e se o ramo segue viável"""
        point = self.order[pos]
        self.labels[pos] = block
        self.blocks[block].append(point)
        added = []
        ok = True
        for other in range(self.k):
            if other == block or not self.blocks[other] or other in self.adj[block]:
                continue
            if self._meet(self.blocks[block], self.blocks[other]):
                if self.prune and self.triangle_free and self.adj[block] & self.adj[other]:
                    ok = False
                self.adj[block].add(other)
                self.adj[other].add(block)
                self.edge_count += 1
                added.append(other)
        if ok and self.prune:
            ok = self._feasible()
        return added, ok

    def _remove(self, block: int, added: List[int]) -> None:
        self.blocks[block].pop()
        for other in added:
            self.adj[block].discard(other)
            self.adj[other].discard(block)
            self.edge_count -= 1

    def _feasible(self) -> bool:
        if self.edge_count > self.target_edges:
            return False
        degrees = sorted((len(a) for a in self.adj), reverse=True)
        return all(d <= t for d, t in zip(degrees, self.target_degrees))

    def _leaf(self) -> bool:
        self.leaves += 1
        if self.leaves > self.budget:
            raise InfeasibleSize(f"Orçamento de {self.budget} partições excedido")
        if self.edge_count != self.target_edges:
            return False
        graph = IntersectionGraph(
            n=self.k,
            edges=frozenset((u, v) for u in range(self.k) for v in self.adj[u] if u < v),
        )
        return nerve_service.graphs_isomorphic(graph, self.target)[0]

    def run(self, prefix: Sequence[int] = ()) -> Optional[Tuple[int, ...]]:
        """Busca a partir de um prefixo fixo; devolve os rótulos por posição"""
        placed = []
        try:
            used = 0
            for pos, block in enumerate(prefix):
                added, ok = self._place(pos, block)
                placed.append((block, added))
                used = max(used, block + 1)
                if not ok and self.prune:
                    self.pruned += 1
                    return None
            return self._dfs(len(prefix), used)
        finally:
            for block, added in reversed(placed):
                self._remove(block, added)

    def _dfs(self, pos: int, used: int) -> Optional[Tuple[int, ...]]:
        if pos == self.n:
            if used == self.k and self._leaf():
                return tuple(self.labels)
            return None
        remaining = self.n - pos - 1
        for block in range(min(used + 1, self.k)):
            new_used = max(used, block + 1)
            if remaining < self.k - new_used:
                continue
            self.nodes += 1
            added, ok = self._place(pos, block)
            try:
                if not ok:
                    self.pruned += 1
                    continue
                hit = self._dfs(pos + 1, new_used)
                if hit is not None:
                    return hit
            finally:
                self._remove(block, added)
        return None


def _rgs_prefixes(depth: int, parts: int) -> List[Tuple[int, ...]]:
    """Prefixos de strings de crescimento restrito em ordem canônica"""
    out: List[Tuple[int, ...]] = []

    def extend(prefix: Tuple[int, ...], used: int):
        if len(prefix) == depth:
            out.append(prefix)
            return
        for b in range(min(used + 1, parts)):
            extend(prefix + (b,), max(used, b + 1))

    extend((), 0)
    return out


def _search_chunk(args) -> Tuple[Optional[Tuple[int, ...]], int, int, int]:
    target, ps, parts, order, budget, prune, prefix = args
    search = _PartitionSearch(target, ps, parts, order, budget, prune)
    hit = search.run(prefix)
    return hit, search.leaves, search.nodes, search.pruned


class NerveService:
    """Serviço para cálculo de nervos e busca de partições induzidas"""

    def __init__(self):
        self.budget = settings.partition_budget
        self.workers = settings.search_workers
        self.chunk_depth = settings.search_chunk_depth

    def intersection_graph(self, ps: PointSet, p: Partition) -> IntersectionGraph:
        """Aresta {i, j} sse os fechos das partes i e j se intersectam"""
        if len(p.assignment) != len(ps):
            raise PartitionError(f"Partição cobre {len(p.assignment)} pontos, conjunto tem {len(ps)}")
        parts = p.parts()
        edges = frozenset(
            (i, j)
            for i, j in combinations(range(p.n_parts), 2)
            if exact_geometry.hulls_meet(ps, parts[i], parts[j])
        )
        return IntersectionGraph(n=p.n_parts, edges=edges)

    def nerve_complex(self, ps: PointSet, p: Partition, max_face_dim: Optional[int] = None) -> NerveComplex:
        """Faces I com interseção comum não vazia, até dimensão max_face_dim"""
        if len(p.assignment) != len(ps):
            raise PartitionError(f"Partição cobre {len(p.assignment)} pontos, conjunto tem {len(ps)}")
        if max_face_dim is None:
            max_face_dim = p.n_parts - 1
        parts = p.parts()
        faces = {frozenset([i]) for i in range(p.n_parts)}
        if max_face_dim >= 1:
            graph = self.intersection_graph(ps, p)
            faces |= {frozenset(e) for e in graph.edges}
        tests = 0
        current = [f for f in faces if len(f) == 2]
        for size in range(3, max_face_dim + 2):
            candidates = set()
            for f in current:
                for v in range(max(f) + 1, p.n_parts):
                    cand = f | {v}
                    if all(cand - {u} in faces for u in cand):
                        candidates.add(cand)
            tests += len(candidates)
            if tests > settings.face_budget:
                raise InfeasibleSize(f"Nervo completo exige mais de {settings.face_budget} testes")
            current = [c for c in sorted(candidates, key=sorted)
                       if exact_geometry.common_point(ps, [parts[i] for i in sorted(c)]) is not None]
            faces |= set(current)
            if not current:
                break
        logger.debug(f"Nervo calculado - {len(faces)} faces, {tests} testes de viabilidade")
        return NerveComplex(n=p.n_parts, faces=frozenset(faces))

    def graphs_isomorphic(self, g: GraphLike, h: GraphLike) -> Tuple[bool, Optional[Dict[int, int]]]:
        """Isomorfismo com bijeção verificada (vértice de g -> vértice de h)"""
        if g.n != h.n or len(g.edges) != len(h.edges):
            return False, None
        gg, hh = _as_networkx(g), _as_networkx(h)
        if sorted(d for _, d in gg.degree()) != sorted(d for _, d in hh.degree()):
            return False, None
        matcher = GraphMatcher(gg, hh)
        if not matcher.is_isomorphic():
            return False, None
        mapping = dict(matcher.mapping)
        mapped = {tuple(sorted((mapping[u], mapping[v]))) for u, v in g.edges}
        if mapped != set(h.edges) or sorted(mapping.values()) != list(range(h.n)):
            raise VerificationError("Bijeção de isomorfismo inválida")
        return True, mapping

    def verify_partition(self, ps: PointSet, p: Partition, target: GraphLike) -> Tuple[bool, IntersectionGraph]:
        """Recalcula o grafo de interseção e compara com o alvo"""
        graph = self.intersection_graph(ps, p)
        ok, _ = self.graphs_isomorphic(graph, target)
        return ok, graph

    def order_type_transport(self, p: Partition, sigma: Sequence[int]) -> Partition:
        """Partição reindexada σP (o traço não é transportado)"""
        return p.transported(sigma)

    def is_partition_induced(self, g: GraphSpec, ps: PointSet, parts: int,
                             budget: Optional[int] = None, prune: bool = True,
                             workers: Optional[int] = None, audit: bool = False,
                             order: Optional[Sequence[int]] = None) -> SearchOutcome:
        """Primeira partição (ordem canônica) com grafo de interseção isomorfo a g"""
        budget = self.budget if budget is None else budget
        workers = self.workers if workers is None else workers
        order = list(range(len(ps))) if order is None else list(order)
        if sorted(order) != list(range(len(ps))):
            raise ValueError("Ordem de enumeração não é permutação dos pontos")
        if parts != g.n:
            logger.info(f"Alvo com {g.n} vértices e {parts} partes: nenhuma partição possível")
            return SearchOutcome(partition=None, leaves=0, nodes=0, pruned=0)
        if not prune and stirling2(len(ps), parts) > budget:
            raise InfeasibleSize(f"S({len(ps)}, {parts}) = {stirling2(len(ps), parts)} excede o orçamento {budget}")

        logger.info(f"Buscando partição induzida - {len(ps)} pontos, {parts} partes, poda={prune}")
        start = time.perf_counter()
        depth = min(self.chunk_depth, len(ps))
        if workers > 1 and depth > 0:
            prefixes = _rgs_prefixes(depth, parts)
            jobs = [(g, ps, parts, order, budget, prune, pre) for pre in prefixes]
            leaves = nodes = pruned = 0
            labels = None
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for hit, lv, nd, pr in pool.map(_search_chunk, jobs):
                    leaves, nodes, pruned = leaves + lv, nodes + nd, pruned + pr
                    if labels is None and hit is not None:
                        labels = hit
            if leaves > budget and labels is None:
                raise InfeasibleSize(f"Orçamento de {budget} partições excedido")
        else:
            search = _PartitionSearch(g, ps, parts, order, budget, prune)
            labels = search.run()
            leaves, nodes, pruned = search.leaves, search.nodes, search.pruned
        elapsed = time.perf_counter() - start

        partition = None
        if labels is not None:
            assignment = [0] * len(ps)
            for pos, label in enumerate(labels):
                assignment[order[pos]] = label
            partition = Partition(n_parts=parts, assignment=tuple(assignment))
            ok, _ = self.verify_partition(ps, partition, g)
            if not ok:
                raise VerificationError("Partição encontrada não reproduz o grafo alvo")
        outcome = SearchOutcome(partition=partition, leaves=leaves, nodes=nodes, pruned=pruned, elapsed=elapsed)
        logger.info(f"Busca concluída - encontrada={outcome.found}, folhas={leaves}, podas={pruned}, {elapsed:.2f}s")

        if audit and partition is None:
            reversed_order = list(reversed(order))
            check = self.is_partition_induced(g, ps, parts, budget=budget, prune=prune,
                                              workers=1, audit=False, order=reversed_order)
            if check.found:
                raise VerificationError("Auditoria com ordem invertida encontrou partição")
        return outcome


# Instância global do serviço
nerve_service = NerveService()
