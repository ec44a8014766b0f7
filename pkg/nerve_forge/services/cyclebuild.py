"""
Serviço de construção de partições com nervo em ciclo
"""
import logging
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..core.config import settings
from ..core.exceptions import (
    DegeneratePosition,
    DimensionError,
    NotGeneralPosition,
    PreconditionViolated,
    RetriesExhausted,
    TooFewPoints,
    VerificationError,
)
from ..models.combinatorics import (
    ConstructionTrace,
    GraphSpec,
    Partition,
    PartSeparator,
    RadonStep,
    SectorAssignment,
)
from ..models.geometry import Hyperplane, Point, PointSet, Sector
from ..utils.rational import sign
from .exactgeom import exact_geometry
from .nervecalc import nerve_service

logger = logging.getLogger(__name__)

Projection = Tuple[Tuple[int, ...], Tuple[int, ...]]


def _cross(u: Sequence, v: Sequence):
    return u[0] * v[1] - u[1] * v[0]


def _half(v: Sequence) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _angle_cmp(u: Sequence, v: Sequence) -> int:
    """Ordem angular anti-horária a partir da direção (1, 0)"""
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    return -sign(_cross(u, v))


def required_points(n: int, d: int, relaxed: bool = False) -> int:
    """nd + n + 4d pontos, ou n(d+1) + 1 no modo relaxado"""
    return n * (d + 1) + 1 if relaxed else n * d + n + 4 * d


class CycleBuilderService:
    """Serviço para construir partições cujo nervo é o ciclo C_n"""

    def __init__(self):
        self.projection_retries = settings.projection_retries
        self.seed = settings.seed

    def project_generic(self, ps: PointSet, seed: Optional[int] = None) -> Tuple[PointSet, Projection]:
        """Projeção inteira aleatória no plano com imagens distintas em posição geral"""
        d = ps.dim
        if d < 2:
            raise DimensionError("Projeção exige d >= 2")
        if d == 2:
            return ps, ((1, 0), (0, 1))

        rng = np.random.default_rng(self.seed if seed is None else seed)
        for attempt in range(self.projection_retries):
            matrix = rng.integers(-9, 10, size=(2, d)).tolist()
            if all(matrix[0][i] * matrix[1][j] == matrix[0][j] * matrix[1][i]
                   for i in range(d) for j in range(i + 1, d)):
                continue
            images = tuple(
                tuple(sum(Fraction(row[k]) * p[k] for k in range(d)) for row in matrix)
                for p in ps
            )
            planar = PointSet(dim=2, points=images)
            if len(set(images)) != len(images):
                logger.warning(f"Projeção {attempt + 1} com imagens repetidas, tentando outra")
                continue
            if len(images) >= 3 and not exact_geometry.in_general_position(planar):
                logger.warning(f"Projeção {attempt + 1} fora de posição geral, tentando outra")
                continue
            return planar, (tuple(matrix[0]), tuple(matrix[1]))
        raise RetriesExhausted(f"Nenhuma projeção genérica em {self.projection_retries} tentativas")

    def ham_sandwich_line(self, ps: PointSet, m1: Sequence[int], m2: Sequence[int]) -> Hyperplane:
        """Reta por dois pontos com no máximo metade de cada conjunto em cada lado aberto"""
        if ps.dim != 2:
            raise DimensionError("Sanduíche de presunto exige pontos planares")
        m1, m2 = sorted(set(m1)), sorted(set(m2))
        pool = sorted(set(m1) | set(m2))
        if not pool:
            raise ValueError("Conjuntos vazios")
        if len(pool) == 1:
            return Hyperplane(normal=(Fraction(1), Fraction(0)), offset=ps[pool[0]][0])

        pts = ps.integer_points
        lim1, lim2 = len(m1) // 2, len(m2) // 2
        for a, b in combinations(pool, 2):
            pa, pb = pts[a], pts[b]
            nx_, ny_ = -(pb[1] - pa[1]), pb[0] - pa[0]
            off = nx_ * pa[0] + ny_ * pa[1]
            if self._balanced(pts, m1, nx_, ny_, off, lim1) and self._balanced(pts, m2, nx_, ny_, off, lim2):
                return Hyperplane.through(ps[a], ps[b])
        raise DegeneratePosition("Nenhuma reta por dois pontos divide os dois conjuntos")

    @staticmethod
    def _balanced(pts, members, nx_, ny_, off, limit) -> bool:
        plus = minus = 0
        for i in members:
            v = nx_ * pts[i][0] + ny_ * pts[i][1] - off
            if v > 0:
                plus += 1
            elif v < 0:
                minus += 1
        return plus <= limit and minus <= limit

    def _first_line(self, ps: PointSet):
        """Candidatas a L1: normais (1, t/7) com a mediana estritamente entre duas coordenadas"""
        for attempt in range(self.projection_retries):
            t = (attempt + 1) // 2 * (1 if attempt % 2 else -1)
            normal = (Fraction(1), Fraction(t, 7))
            values = [normal[0] * p[0] + normal[1] * p[1] for p in ps]
            ordered = sorted(values)
            if len(set(ordered)) != len(ordered):
                continue
            half = len(ordered) // 2
            yield Hyperplane(normal=normal, offset=(ordered[half - 1] + ordered[half]) / 2)

    def sector_subdivision(self, ps: PointSet, n: int, d: int, relaxed: bool = False) -> List[Sector]:
        """n setores em torno de p = L1 ∩ L2, cada um com ao menos d+1 pontos"""
        if ps.dim != 2:
            raise DimensionError("Setores exigem pontos planares")
        if n < 4:
            raise PreconditionViolated(f"Ciclos exigem n >= 4, recebido {n}")
        need = required_points(n, d, relaxed)
        if len(ps) < need:
            raise TooFewPoints(f"C_{n} em R^{d} exige {need} pontos, recebidos {len(ps)}")

        for l1 in self._first_line(ps):
            below = [i for i in range(len(ps)) if l1.side(ps[i]) < 0]
            above = [i for i in range(len(ps)) if l1.side(ps[i]) > 0]
            l2 = self.ham_sandwich_line(ps, below, above)
            (a, b), (c, e) = l1.normal, l2.normal
            det = a * e - b * c
            if det == 0:
                continue
            apex = ((l1.offset * e - b * l2.offset) / det, (a * l2.offset - l1.offset * c) / det)
            return self._sectors_around(ps, apex, l1, l2, n, d)
        raise DegeneratePosition("Nenhuma reta L1 compatível encontrada")

    def _sectors_around(self, ps: PointSet, apex: Point, l1: Hyperplane, l2: Hyperplane,
                        n: int, d: int) -> List[Sector]:
        e1 = (-l1.normal[1], l1.normal[0])
        e2 = (-l2.normal[1], l2.normal[0])
        rays = sorted([e1, (-e1[0], -e1[1]), e2, (-e2[0], -e2[1])], key=cmp_to_key(_angle_cmp))
        vec = [(p[0] - apex[0], p[1] - apex[1]) for p in ps]

        cones: List[List[int]] = [[] for _ in range(4)]
        boundary: List[Tuple[int, int]] = []
        for i, v in enumerate(vec):
            for j in range(4):
                start, end = rays[j], rays[(j + 1) % 4]
                if _cross(start, v) == 0 and start[0] * v[0] + start[1] * v[1] > 0:
                    boundary.append((i, j))
                    break
                if _cross(start, v) > 0 and _cross(v, end) > 0:
                    cones[j].append(i)
                    break
            else:
                raise DegeneratePosition(f"Ponto {i} coincide com o ápice")
        # ponto sobre o raio j pertence ao cone horário, que termina nesse raio
        for i, j in boundary:
            cones[(j - 1) % 4].append(i)

        groups_by_cone: List[List[List[int]]] = []
        for j, members in enumerate(cones):
            start = rays[j]
            members.sort(key=cmp_to_key(lambda u, w: -sign(_cross(
                (vec[u][0], vec[u][1]), (vec[w][0], vec[w][1]))) or (u - w)))
            count = len(members) // (d + 1)
            if count == 0:
                raise TooFewPoints(f"Quadrante {j} com {len(members)} pontos, mínimo {d + 1}")
            groups = [members[g * (d + 1):(g + 1) * (d + 1)] for g in range(count - 1)]
            groups.append(members[(count - 1) * (d + 1):])
            groups_by_cone.append(groups)
            logger.debug(f"Quadrante {j} a partir de {start}: {len(members)} pontos, {count} grupos")

        total = sum(len(g) for g in groups_by_cone)
        if total < n:
            raise TooFewPoints(f"Apenas {total} setores possíveis para C_{n}")
        while total > n:
            j = max((j for j in range(4) if len(groups_by_cone[j]) >= 2),
                    key=lambda j: (len(cones[j]), -j))
            last = groups_by_cone[j].pop()
            groups_by_cone[j][-1] = groups_by_cone[j][-1] + last
            total -= 1

        sectors = []
        for j, groups in enumerate(groups_by_cone):
            for members in groups:
                sectors.append(Sector(apex=apex, start_ray=vec[members[0]], end_ray=vec[members[-1]],
                                      members=tuple(members), quadrant=j))
        self._check_adjacent_spans(sectors)
        return sectors

    @staticmethod
    def _check_adjacent_spans(sectors: Sequence[Sector]) -> None:
        """Dois setores vizinhos nunca ultrapassam um ângulo raso"""
        for k, current in enumerate(sectors):
            following = sectors[(k + 1) % len(sectors)]
            if _cross(current.start_ray, following.end_ray) < 0:
                raise DegeneratePosition(f"Setores {k} e {(k + 1) % len(sectors)} abrangem mais de π",
                                         detail={"sectors": [k, (k + 1) % len(sectors)]})

    def cycle_partition(self, n: int, ps: PointSet, relaxed: bool = False,
                        seed: Optional[int] = None) -> Partition:
        """Encadeamento de passos de Radon ao redor dos setores"""
        if n < 4:
            raise PreconditionViolated(f"Ciclos exigem n >= 4, recebido {n}")
        d = ps.dim
        if d < 2:
            raise DimensionError("Ciclos exigem d >= 2")
        need = required_points(n, d, relaxed)
        if len(ps) < need:
            raise TooFewPoints(f"C_{n} em R^{d} exige {need} pontos, recebidos {len(ps)}")
        if not exact_geometry.in_general_position(ps):
            raise NotGeneralPosition("Pontos fora de posição geral")

        logger.info(f"Construindo ciclo C_{n} sobre {len(ps)} pontos em R^{d} (relaxado={relaxed})")
        planar, _ = self.project_generic(ps, seed)
        sectors = self.sector_subdivision(planar, n, d, relaxed)
        start = next((j for j, s in enumerate(sectors) if len(s.members) >= d + 2), None)
        if start is None:
            raise TooFewPoints(f"Nenhum setor com {d + 2} pontos")
        ring = sectors[start:] + sectors[:start]

        parts: List[List[int]] = [[] for _ in range(n)]
        events = []
        first = ring[0].members
        pair = exact_geometry.radon_partition([ps[i] for i in first[:d + 2]])
        parts[0] += [first[j] for j in sorted(pair.part_a)]
        parts[1] += [first[j] for j in sorted(pair.part_b)] + list(first[d + 2:])
        events.append(RadonStep(indices=tuple(first[:d + 2]), pair=pair))

        for k in range(1, n):
            current = set(parts[k])
            carried = [i for i in ring[k - 1].members if i in current]
            x = carried[-1]
            idx = [x] + list(ring[k].members[:d + 1])
            pair = exact_geometry.radon_partition([ps[i] for i in idx])
            parts[k] += [idx[j] for j in sorted(pair.part_a) if j != 0]
            nxt = (k + 1) % n
            parts[nxt] += [idx[j] for j in sorted(pair.part_b)] + list(ring[k].members[d + 1:])
            events.append(RadonStep(indices=tuple(idx), pair=pair))
            logger.debug(f"Setor {k}: ponto levado {x}, Radon {sorted(pair.part_a)} | {sorted(pair.part_b)}")

        for k in range(n):
            events.append(SectorAssignment(sector=k, part=k))
            events.append(SectorAssignment(sector=k, part=(k + 1) % n))
        events.extend(self._separators(ps, parts))
        trace = ConstructionTrace(kind="cycle", points=ps, events=tuple(events))
        partition = Partition.from_parts(parts, len(ps), trace=trace)

        graph = nerve_service.intersection_graph(ps, partition)
        if graph.edges != GraphSpec.cycle(n).edges:
            raise VerificationError("Grafo de interseção não é o ciclo pedido",
                                    detail={"found": sorted(graph.edges)})
        return partition

    def _separators(self, ps: PointSet, parts: Sequence[Sequence[int]]) -> List[PartSeparator]:
        """Certificado exato para cada par de partes não vizinhas no ciclo"""
        n = len(parts)
        out = []
        for k, l in combinations(range(n), 2):
            if l - k in (1, n - 1):
                continue
            test = exact_geometry.hulls_intersect(ps, parts[k], parts[l])
            if test.intersects:
                raise VerificationError(f"Partes {k} e {l} não vizinhas se intersectam",
                                        detail={"parts": [k, l], "point": [str(c) for c in test.common_point]})
            out.append(PartSeparator(first=k, second=l, hyperplane=test.separator))
        return out


# Instância global do serviço
cycle_builder = CycleBuilderService()
