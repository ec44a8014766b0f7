"""
Serviço de construção de partições com nervo em árvore
"""
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from ..core.config import settings
from ..core.exceptions import (
    DegeneratePosition,
    DimensionError,
    MissingTrace,
    NerveForgeError,
    NotATree,
    NotAlternating,
    NotCaterpillar,
    NotConvexPosition,
    PreconditionViolated,
    SeparationFailure,
    SubsetNotFound,
    SupersetMismatch,
    TooFewPoints,
    VerificationError,
    WrongCount,
)
from ..models.combinatorics import (
    CaterpillarDecomposition,
    ConstructionTrace,
    GraphSpec,
    LeafLine,
    Partition,
    RadonStep,
    SubpolytopeSplit,
)
from ..models.geometry import Hyperplane, Point, PointSet
from .exactgeom import exact_geometry, orient2d
from .nervecalc import nerve_service
from .subsetfind import ramsey_bound_formula, subset_finder

logger = logging.getLogger(__name__)

# Registro de folha: (folha, pai, par de pontos da reta, ponto isolado pela reta)
LeafRecord = Tuple[int, int, Tuple[int, int], int]

CONVEX_KIND = "convex-2d"
CYCLIC_KIND = "cyclic"


def _segments_meet(a: Point, b: Point, p: Point, q: Point) -> bool:
    """Segmentos fechados ab e pq se intersectam (teste de orientação)"""
    o1, o2 = orient2d(a, b, p), orient2d(a, b, q)
    o3, o4 = orient2d(p, q, a), orient2d(p, q, b)
    return o1 * o2 <= 0 and o3 * o4 <= 0


class TreeBuilderService:
    """Serviço para construir partições cujo nervo é uma árvore dada"""

    def __init__(self):
        self.sweep_retries = settings.projection_retries

    # Utilitários

    def _require_tree(self, t: GraphSpec) -> nx.Graph:
        g = t.to_networkx()
        if t.n < 1 or not nx.is_tree(g):
            raise NotATree(f"Grafo com {t.n} vértices e {len(t.edges)} arestas não é árvore")
        return g

    def _leaf_steps(self, g: nx.Graph, root: int) -> List[Tuple[int, int]]:
        """Adições de folhas (folha, pai) em ordem de busca em largura"""
        return [(child, parent) for parent, child in nx.bfs_edges(g, root, sort_neighbors=sorted)]

    def _verify_labeled(self, ps: PointSet, p: Partition, t: GraphSpec) -> None:
        graph = nerve_service.intersection_graph(ps, p)
        if graph.edges != t.edges:
            raise VerificationError(
                "Grafo de interseção difere da árvore pedida",
                detail={"expected": sorted(t.edges), "found": sorted(graph.edges)},
            )

    # Polígono convexo no plano

    def tree_partition_convex_2d(self, t: GraphSpec, ps: PointSet) -> Partition:
        """Partição de 2n pontos em posição convexa com nervo igual à árvore t"""
        g = self._require_tree(t)
        n = t.n
        if ps.dim != 2:
            raise DimensionError(f"Construção convexa exige dimensão 2, recebido {ps.dim}")
        if len(ps) != 2 * n:
            raise WrongCount(f"Árvore com {n} nós exige {2 * n} pontos, recebidos {len(ps)}")
        hull = exact_geometry.convex_hull_2d(ps)
        if len(hull) != len(ps):
            raise NotConvexPosition(f"Apenas {len(hull)} de {len(ps)} pontos são vértices do fecho")

        logger.info(f"Construindo árvore de {n} nós sobre polígono convexo")
        steps = self._leaf_steps(g, 0)
        colors, records = self._color_polygon(hull, 0, steps)

        lines = []
        for leaf, parent, (a, b), tip in records:
            h = Hyperplane.through(ps[a], ps[b])
            if h.side(ps[tip]) < 0:
                h = h.flipped()
            lines.append(LeafLine(hyperplane=h, leaf=leaf, parent=parent, through=(a, b)))
        trace = ConstructionTrace(kind=CONVEX_KIND, points=ps, events=tuple(lines), root=0)
        partition = Partition.from_mapping(colors, len(ps), n, trace=trace)
        self._verify_labeled(ps, partition, t)
        return partition

    def _color_polygon(self, order: List[int], root: int,
                       steps: Sequence[Tuple[int, int]]) -> Tuple[Dict[int, int], List[LeafRecord]]:
        """Colore os vértices em ordem anti-horária; a última folha fica com order[1] e order[-1]"""
        if not steps:
            return {i: root for i in order}, []
        leaf, parent = steps[-1]
        sub = [order[0]] + order[2:-1]
        colors, records = self._color_polygon(sub, root, steps[:-1])

        if colors[sub[0]] != parent:
            # rotação cíclica dos rótulos até o pai ocupar sub[0]
            shift = next(j for j, i in enumerate(sub) if colors[i] == parent)
            size = len(sub)
            moved = {sub[p]: sub[(p - shift) % size] for p in range(size)}
            colors = {sub[j]: colors[sub[(j + shift) % size]] for j in range(size)}
            records = [(lf, pr, (moved[a], moved[b]), moved[tip]) for lf, pr, (a, b), tip in records]

        colors[order[1]] = leaf
        colors[order[-1]] = leaf
        records.append((leaf, parent, (order[1], order[-1]), order[0]))
        return colors, records

    # Extensões

    def extend_partition_2d(self, base: Partition, superset: PointSet) -> Partition:
        """Estende a partição convexa a um superconjunto preservando o nervo"""
        return self._replay(base, superset, CONVEX_KIND)

    def extend_partition_cyclic(self, base: Partition, superset: PointSet) -> Partition:
        """Estende a partição cíclica a um superconjunto preservando o nervo"""
        return self._replay(base, superset, CYCLIC_KIND)

    def _replay(self, base: Partition, superset: PointSet, kind: str) -> Partition:
        trace = base.trace
        if trace is None:
            raise MissingTrace("Partição base sem traço de construção")
        if trace.kind != kind:
            raise MissingTrace(f"Traço do tipo '{trace.kind}', esperado '{kind}'")
        if superset.dim != trace.points.dim:
            raise SupersetMismatch(f"Dimensão {superset.dim} difere da base ({trace.points.dim})")

        where = superset.index_of()
        image = []
        for i, p in enumerate(trace.points):
            j = where.get(p)
            if j is None:
                raise SupersetMismatch(f"Ponto base {i} ausente do superconjunto")
            image.append(j)
        if len(set(image)) != len(image):
            raise SupersetMismatch("Pontos base repetidos")

        self._check_lines(trace, base)
        parts = base.parts()
        lines = trace.leaf_lines()
        colors = {image[i]: base.assignment[i] for i in range(len(image))}
        for j, point in enumerate(superset):
            if j not in colors:
                colors[j] = self._replay_color(trace, lines, parts, point)

        extended = Partition.from_mapping(colors, len(superset), base.n_parts)
        before = nerve_service.intersection_graph(trace.points, base)
        after = nerve_service.intersection_graph(superset, extended)
        if before.edges != after.edges:
            raise VerificationError("Extensão alterou o grafo de interseção")
        logger.info(f"Partição estendida de {len(trace.points)} para {len(superset)} pontos")
        return extended

    def _replay_color(self, trace: ConstructionTrace, lines: List[LeafLine],
                      parts: List[Tuple[int, ...]], point: Point) -> int:
        for line in reversed(lines):
            if line.hyperplane.side(point) >= 0:
                if exact_geometry.point_in_hull(trace.points, point, parts[line.parent]):
                    return line.parent
                return line.leaf
        return trace.root

    def _check_lines(self, trace: ConstructionTrace, base: Partition) -> None:
        """Cada reta deixa a folha no lado fechado + e as cores anteriores (exceto o pai) no lado -"""
        pts = trace.points
        parts = base.parts()
        earlier = [trace.root]
        for line in trace.leaf_lines():
            h = line.hyperplane
            if any(h.side(pts[i]) < 0 for i in parts[line.leaf]):
                raise SeparationFailure(f"Folha {line.leaf} fora do lado positivo do seu hiperplano")
            for c in earlier:
                if c != line.parent and any(h.side(pts[i]) >= 0 for i in parts[c]):
                    raise SeparationFailure(f"Cor {c} não separada da folha {line.leaf}")
            earlier.append(line.leaf)

    # Politopo cíclico

    def tree_partition_cyclic(self, t: GraphSpec, ps: PointSet) -> Partition:
        """Partição dos m = (n-1)(d+1)+1 vértices ordenados de um politopo cíclico"""
        g = self._require_tree(t)
        n, d = t.n, ps.dim
        m = (n - 1) * (d + 1) + 1
        if len(ps) != m:
            raise WrongCount(f"Árvore com {n} nós em R^{d} exige {m} pontos, recebidos {len(ps)}")
        if n == 1:
            trace = ConstructionTrace(kind=CYCLIC_KIND, points=ps, events=())
            return Partition(n_parts=1, assignment=(0,), trace=trace)

        orientation = exact_geometry.chirotope(ps).uniform_sign()
        if orientation == 0:
            raise NotAlternating("Quirotopo com sinais mistos ou nulos")
        if orientation < 0:
            # inverter a ordem multiplica cada orientação por (-1)^{d(d+1)/2}
            if (d * (d + 1) // 2) % 2 == 0:
                raise NotAlternating(f"Quirotopo todo negativo em R^{d}; inverter a ordem não o torna positivo")
            logger.info("Quirotopo todo negativo, construindo sobre a ordem invertida")
            reversed_ps = ps.subset(list(range(m - 1, -1, -1)))
            return self._reindexed(self.tree_partition_cyclic(t, reversed_ps), ps)
        logger.info(f"Construindo árvore de {n} nós sobre politopo cíclico em R^{d}")

        for root in range(n):
            try:
                return self._cyclic_from_plan(t, ps, root, self._leaf_steps(g, root), orientation)
            except VerificationError as e:
                logger.warning(f"Raiz {root} falhou na verificação, tentando a próxima: {e.message}")
        raise VerificationError(f"Nenhuma raiz produziu a árvore pedida em {n} tentativas")

    @staticmethod
    def _reindexed(p: Partition, ps: PointSet) -> Partition:
        """Traz uma partição da ordem invertida de volta aos índices de ps (traço com orientação -1)"""
        last = len(ps) - 1

        def back(indices: Sequence[int]) -> Tuple[int, ...]:
            return tuple(last - i for i in indices)

        events = []
        for e in p.trace.events:
            if isinstance(e, RadonStep):
                e = RadonStep(indices=back(e.indices), pair=e.pair)
            elif isinstance(e, SubpolytopeSplit):
                e = SubpolytopeSplit(q_indices=tuple(sorted(back(e.q_indices))), r_indices=back(e.r_indices),
                                     shared=last - e.shared)
            events.append(e)
        trace = ConstructionTrace(kind=p.trace.kind, points=ps, events=tuple(events),
                                  root=p.trace.root, orientation=-1)
        assignment = tuple(p.assignment[last - i] for i in range(len(ps)))
        return Partition(n_parts=p.n_parts, assignment=assignment, trace=trace)

    def _cyclic_from_plan(self, t: GraphSpec, ps: PointSet, root: int,
                          steps: Sequence[Tuple[int, int]], orientation: int) -> Partition:
        d = ps.dim
        word = [0]
        color_of = {0: root}
        splits = []
        next_id = 1
        for leaf, parent in steps:
            pos = max(p for p, i in enumerate(word) if color_of[i] == parent)
            before = list(word)
            new_ids = list(range(next_id, next_id + d + 1))
            next_id += d + 1
            for offset, nid in enumerate(new_ids, start=1):
                color_of[nid] = parent if offset % 2 == 0 else leaf
            word[pos + 1:pos + 1] = new_ids
            splits.append((word[pos], new_ids, before))

        position = {i: p for p, i in enumerate(word)}
        events = []
        for shared, new_ids, before in splits:
            r = [position[shared]] + [position[i] for i in new_ids]
            pair = exact_geometry.radon_partition([ps[i] for i in r])
            if pair.part_a != frozenset(range(0, d + 2, 2)):
                raise NotAlternating(f"Partição de Radon em {r} não alterna")
            events.append(SubpolytopeSplit(q_indices=tuple(sorted(position[i] for i in before)),
                                           r_indices=tuple(r), shared=position[shared]))
            events.append(RadonStep(indices=tuple(r), pair=pair))
            logger.debug(f"Passo de Radon em {r}: {sorted(pair.part_a)} | {sorted(pair.part_b)}")

        assignment = tuple(color_of[word[p]] for p in range(len(word)))
        partition = Partition(n_parts=t.n, assignment=assignment)
        self._verify_labeled(ps, partition, t)
        lines = self._separator_lines(ps, partition, root, steps)
        trace = ConstructionTrace(kind=CYCLIC_KIND, points=ps, events=tuple(events + lines),
                                  root=root, orientation=orientation)
        return Partition(n_parts=t.n, assignment=assignment, trace=trace)

    def _separator_lines(self, ps: PointSet, p: Partition, root: int,
                         steps: Sequence[Tuple[int, int]]) -> List[LeafLine]:
        """Hiperplano por folha separando-a das cores anteriores que não são o pai"""
        parts = p.parts()
        earlier = [root]
        lines = []
        for leaf, parent in steps:
            others = [i for c in earlier if c != parent for i in parts[c]]
            if others:
                test = exact_geometry.hulls_intersect(ps, others, parts[leaf])
                if test.intersects:
                    raise SeparationFailure(f"Folha {leaf} não separável das cores anteriores")
                h = test.separator
            else:
                normal = (Fraction(1),) + (Fraction(0),) * (ps.dim - 1)
                h = Hyperplane(normal=normal, offset=min(ps[i][0] for i in parts[leaf]))
            lines.append(LeafLine(hyperplane=h, leaf=leaf, parent=parent))
            earlier.append(leaf)
        return lines

    # Lagartas

    def caterpillar_decompose(self, t: GraphSpec) -> CaterpillarDecomposition:
        """Caminho central e folhas penduradas em cada vértice do caminho"""
        g = self._require_tree(t)
        if t.n == 1:
            return CaterpillarDecomposition(path=(0,), leaves={0: ()})
        if t.n == 2:
            return CaterpillarDecomposition(path=(0, 1), leaves={0: (), 1: ()})

        inner = sorted(v for v in g if g.degree(v) >= 2)
        spine = g.subgraph(inner)
        if any(spine.degree(v) > 2 for v in inner):
            raise NotCaterpillar(f"Árvore com ramificação no caminho interno ({t.n} nós)")
        if len(inner) == 1:
            path = [inner[0]]
        else:
            ends = sorted(v for v in inner if spine.degree(v) == 1)
            path = nx.shortest_path(spine, ends[0], ends[1])
        leaves = {v: tuple(sorted(w for w in g[v] if g.degree(w) == 1)) for v in path}

        # extremos com uma única folha entram no caminho
        if len(path) >= 2:
            if len(leaves[path[0]]) == 1:
                w = leaves[path[0]][0]
                leaves[path[0]] = ()
                path.insert(0, w)
                leaves[w] = ()
            if len(leaves[path[-1]]) == 1:
                w = leaves[path[-1]][0]
                leaves[path[-1]] = ()
                path.append(w)
                leaves[w] = ()
        return CaterpillarDecomposition(path=tuple(path), leaves=leaves)

    def _sweep_order(self, ps: PointSet) -> List[int]:
        """Índices ordenados por um funcional linear injetivo (1, s, s^2, ...)"""
        for attempt in range(self.sweep_retries):
            s = Fraction(0) if attempt == 0 else Fraction(1, attempt + 1)
            weights = [s ** k for k in range(ps.dim)]
            values = [sum(w * x for w, x in zip(weights, p)) for p in ps]
            if len(set(values)) == len(values):
                return sorted(range(len(ps)), key=lambda i: values[i])
        raise DegeneratePosition("Nenhuma direção de varredura separa as coordenadas")

    def caterpillar_partition(self, t: GraphSpec, ps: PointSet, d: Optional[int] = None) -> Partition:
        """Varredura da esquerda para a direita com um passo de Radon por vértice novo"""
        dec = self.caterpillar_decompose(t)
        d = ps.dim if d is None else d
        if d != ps.dim:
            raise DimensionError(f"Dimensão {d} difere da dos pontos ({ps.dim})")
        n = t.n
        need = (d + 1) * (n - 1) + 1
        if len(ps) < need:
            raise TooFewPoints(f"Lagarta com {n} nós em R^{d} exige {need} pontos, recebidos {len(ps)}")

        logger.info(f"Construindo lagarta de {n} nós sobre {len(ps)} pontos em R^{d}")
        order = self._sweep_order(ps)
        colors: Dict[int, int] = {order[0]: dec.path[0]}
        members: Dict[int, List[int]] = {dec.path[0]: [order[0]]}
        events: List[RadonStep] = []
        cursor = 1

        def grow(old: int, new: int) -> None:
            nonlocal cursor
            idx = [members[old][-1]] + order[cursor:cursor + d + 1]
            cursor += d + 1
            pair = exact_geometry.radon_partition([ps[i] for i in idx])
            joined = [idx[j] for j in sorted(pair.part_a) if j != 0]
            fresh = [idx[j] for j in sorted(pair.part_b)]
            for i in joined:
                colors[i] = old
            members[old].extend(joined)
            members[new] = fresh
            for i in fresh:
                colors[i] = new
            events.append(RadonStep(indices=tuple(idx), pair=pair))

        for leaf in dec.leaves[dec.path[0]]:
            grow(dec.path[0], leaf)
        for prev, vertex in zip(dec.path, dec.path[1:]):
            grow(prev, vertex)
            for leaf in dec.leaves[vertex]:
                grow(vertex, leaf)
        for i in order[cursor:]:
            colors[i] = dec.path[-1]

        trace = ConstructionTrace(kind="caterpillar", points=ps, events=tuple(events), root=dec.path[0])
        partition = Partition.from_mapping(colors, len(ps), n, trace=trace)
        self._verify_labeled(ps, partition, t)
        return partition

    # Estrela no plano

    def pair_across_line(self, ps: PointSet, a: Sequence[int], b: Sequence[int],
                         chord: Tuple[int, int]) -> List[Tuple[int, int]]:
        """Emparelhamento sem cruzamentos entre A e B, separados pela corda"""
        if ps.dim != 2:
            raise DimensionError("Emparelhamento exige pontos planares")
        a, b = sorted(set(a)), sorted(set(b))
        if len(a) != len(b):
            raise PreconditionViolated(f"Lados com tamanhos diferentes: {len(a)} e {len(b)}")
        p, q = ps[chord[0]], ps[chord[1]]
        line = Hyperplane.through(p, q)
        side_a = {line.side(ps[i]) for i in a}
        side_b = {line.side(ps[i]) for i in b}
        if a and (len(side_a) != 1 or len(side_b) != 1 or 0 in side_a | side_b or side_a == side_b):
            raise PreconditionViolated("A corda não separa os dois lados")
        for i in a:
            for j in b:
                if not _segments_meet(ps[i], ps[j], p, q):
                    raise PreconditionViolated(f"Segmento ({i}, {j}) não cruza a corda")
        pairs, _ = self._peel_pairs(ps, a, b)
        return pairs

    def _peel_pairs(self, ps: PointSet, a: Sequence[int],
                    b: Sequence[int]) -> Tuple[List[Tuple[int, int]], List[int]]:
        """Retira pares (a, b) adjacentes no fecho até um dos lados esvaziar"""
        left, right = set(a), set(b)
        pairs = []
        while left and right:
            hull = exact_geometry.convex_hull_2d(ps, left | right)
            pair = None
            for u, v in zip(hull, hull[1:] + hull[:1]):
                if u in left and v in right:
                    pair = (u, v)
                    break
                if u in right and v in left:
                    pair = (v, u)
                    break
            if pair is None:
                raise PreconditionViolated("Fecho sem aresta entre os dois lados")
            pairs.append(pair)
            left.discard(pair[0])
            right.discard(pair[1])
        return pairs, sorted(left | right)

    def star_partition_2d(self, ps: PointSet, n: int) -> Partition:
        """Partição de 2n pontos planares com nervo estrela S_n (centro 0)"""
        if ps.dim != 2:
            raise DimensionError("Estrela planar exige dimensão 2")
        if len(ps) < 2 * n:
            raise TooFewPoints(f"Estrela com {n} nós exige {2 * n} pontos, recebidos {len(ps)}")
        if len(ps) > 2 * n:
            raise WrongCount(f"Estrela com {n} nós usa exatamente {2 * n} pontos")
        star = GraphSpec.star(n)
        if n == 1:
            return Partition(n_parts=1, assignment=(0, 0))
        if n == 2:
            pair = exact_geometry.radon_partition(list(ps))
            partition = Partition.from_parts([sorted(pair.part_a), sorted(pair.part_b)], 4)
            self._verify_labeled(ps, partition, star)
            return partition

        hull = exact_geometry.convex_hull_2d(ps)
        p1, vertices = hull[0], hull[1:]
        others = [i for i in range(len(ps)) if i != p1]

        def split(pi: int) -> Tuple[List[int], List[int]]:
            left, right = [], []
            for q in others:
                if q == pi:
                    continue
                s = orient2d(ps[p1], ps[pi], ps[q])
                if s == 0:
                    raise DegeneratePosition(f"Pontos {p1}, {pi}, {q} colineares")
                (left if s > 0 else right).append(q)
            return left, right

        sides = [split(v) for v in vertices]
        parts = None
        for v, (left, right) in zip(vertices, sides):
            if len(left) == len(right) == n - 1:
                pairs = self.pair_across_line(ps, left, right, (p1, v))
                parts = [[p1, v]] + [list(pair) for pair in pairs]
                logger.info(f"Estrela de {n} nós: corda equilibrada ({p1}, {v})")
                break

        if parts is None:
            for idx in range(len(vertices) - 1):
                (left_i, right_i), (left_j, right_j) = sides[idx], sides[idx + 1]
                if not (len(left_i) > len(right_i) and len(left_j) < len(right_j)):
                    continue
                pi, pj = vertices[idx], vertices[idx + 1]
                inside = sorted(set(left_i) & set(right_j))
                if not inside:
                    continue
                pairs, leftovers = self._peel_pairs(ps, left_j, right_i)
                center = [p1, pi, pj] + leftovers
                spokes = [[q] for q in inside] + [list(pair) for pair in pairs]
                if len(spokes) < n - 1:
                    continue
                # partes excedentes vão para o centro, singletons primeiro
                while len(spokes) > n - 1:
                    center += spokes.pop(0)
                parts = [center] + spokes
                logger.info(f"Estrela de {n} nós: triângulo central ({p1}, {pi}, {pj})")
                break

        if parts is None:
            raise DegeneratePosition("Nenhuma corda ou triângulo central encontrado")
        partition = Partition.from_parts(parts, len(ps))
        self._verify_labeled(ps, partition, star)
        return partition

    # Despacho geral

    def tverberg_tree_pipeline(self, t: GraphSpec, ps: PointSet, d: Optional[int] = None) -> Partition:
        """Lagarta direta; senão subconjunto estruturado, construção e extensão"""
        self._require_tree(t)
        d = ps.dim if d is None else d
        if d != ps.dim:
            raise DimensionError(f"Dimensão {d} difere da dos pontos ({ps.dim})")
        n = t.n
        try:
            self.caterpillar_decompose(t)
            caterpillar = True
        except NotCaterpillar:
            caterpillar = False

        try:
            if caterpillar:
                logger.info("Pipeline de árvore: ramo de lagarta")
                return self.caterpillar_partition(t, ps, d)
            if d == 2:
                k = 2 * n
                logger.info(f"Pipeline de árvore: buscando {k} pontos em posição convexa")
                found = subset_finder.find_convex_subset_2d(ps, k)
                if found is None:
                    raise SubsetNotFound(f"Nenhum subconjunto convexo de {k} pontos",
                                         detail={"subset_size": k, "bound": ramsey_bound_formula(n, d)})
                base = self.tree_partition_convex_2d(t, ps.subset(found))
                result = self.extend_partition_2d(base, ps)
            elif d >= 3:
                m = (n - 1) * (d + 1) + 1
                logger.info(f"Pipeline de árvore: buscando subpolitopo cíclico de {m} vértices")
                found = subset_finder.find_cyclic_subpolytope(ps, m)
                if found is None:
                    raise SubsetNotFound(f"Nenhum subpolitopo cíclico de {m} vértices",
                                         detail={"subset_size": m, "bound": ramsey_bound_formula(n, d)})
                base = self.tree_partition_cyclic(t, ps.subset(found[0]))
                result = self.extend_partition_cyclic(base, ps)
            else:
                raise DimensionError(f"Árvores não lagartas exigem d >= 2, recebido {d}")
        except NerveForgeError as e:
            logger.error(f"Pipeline de árvore falhou: {e.message}")
            raise

        self._verify_labeled(ps, result, t)
        return result


# Instância global do serviço
tree_builder = TreeBuilderService()
