"""
Serviço de configurações embutidas e geração aleatória de pontos
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

import networkx as nx
import numpy as np

from ..core.config import settings
from ..core.exceptions import DimensionError, RetriesExhausted, UnknownConfig
from ..models.combinatorics import GraphKind, GraphSpec
from ..models.geometry import Point, PointSet
from .exactgeom import exact_geometry

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BuiltinConfig:
    """Configuração publicada com nota de procedência"""

    name: str
    points: PointSet
    provenance: str


_BUILTINS: Dict[str, Tuple[List[Tuple[int, int]], str]] = {
    "p4-blocker-8": (
        [(222, 243), (238, 13), (131, 50), (154, 105), (166, 145), (134, 106), (174, 188), (18, 51)],
        "Oito pontos planares nos quais nenhuma 4-partição tem grafo de interseção P4",
    ),
    "c4-blocker-10": (
        [(0, 0), (8, 5), (18, 3), (7, 4), (14, 5), (10, 8), (11, 7), (14, 17), (11, 6), (12, 12)],
        "Dez pontos planares nos quais nenhuma 4-partição tem grafo de interseção C4",
    ),
}


def _steepness(points: List[Tuple[int, int]]) -> int:
    """Teto do maior |inclinação| entre dois pontos (abscissas distintas)"""
    best = 0
    for (x1, y1), (x2, y2) in combinations(points, 2):
        best = max(best, -(-abs(y2 - y1) // abs(x2 - x1)))
    return best


class RandomMode(str, Enum):
    """Modos de geração aleatória"""

    UNIFORM_BOX = "uniform-box"
    CONVEX_POSITION = "convex-position"
    MOMENT_CURVE = "moment-curve-perturbed"


class ConfigService:
    """Serviço para configurações embutidas e conjuntos aleatórios reprodutíveis"""

    def __init__(self):
        self.seed = settings.seed
        self.box = settings.random_box
        self.retries = settings.random_retries
        self.perturbation_steps = settings.perturbation_steps

    def builtin_names(self) -> List[str]:
        return sorted(_BUILTINS)

    def describe(self, name: str) -> BuiltinConfig:
        if name not in _BUILTINS:
            raise UnknownConfig(f"Configuração desconhecida: {name}", detail={"available": self.builtin_names()})
        coords, note = _BUILTINS[name]
        return BuiltinConfig(name=name, points=PointSet.from_rows(coords, dim=2), provenance=note)

    def builtin_config(self, name: str) -> PointSet:
        """Coordenadas publicadas, sem arredondamento"""
        return self.describe(name).points

    def random_points(self, n: int, d: int, seed: Optional[int] = None,
                      mode: str = RandomMode.UNIFORM_BOX.value, extra_interior: int = 0) -> PointSet:
        """Conjunto reprodutível em posição geral (reamostragem dos pontos que violam)"""
        if n < 1 or d < 1:
            raise DimensionError(f"Parâmetros inválidos: n={n}, d={d}")
        mode = RandomMode(mode)
        rng = np.random.default_rng(self.seed if seed is None else seed)

        if mode == RandomMode.UNIFORM_BOX:
            points = self._accumulate(n, d, lambda: tuple(Fraction(int(x)) for x in rng.integers(0, self.box, size=d)), [])
        elif mode == RandomMode.CONVEX_POSITION:
            if d < 2:
                raise DimensionError("Posição convexa exige d >= 2")
            points = self._accumulate(n, d, lambda: self._sphere_point(rng, d), [])
        else:
            points = self._moment_curve(rng, n, d)

        if extra_interior:
            lows = [min(p[k] for p in points) for k in range(d)]
            highs = [max(p[k] for p in points) for k in range(d)]

            def inside() -> Point:
                return tuple(lows[k] + (highs[k] - lows[k]) * Fraction(int(rng.integers(1, 1000)), 1000)
                             for k in range(d))

            points = self._accumulate(n + extra_interior, d, inside, points)

        logger.info(f"Gerados {len(points)} pontos em R^{d} (modo {mode.value}, semente {seed})")
        return PointSet(dim=d, points=tuple(points))

    def with_extra_points(self, ps: PointSet, extra: int, seed: Optional[int] = None) -> PointSet:
        """Acrescenta pontos inteiros na caixa envolvente ampliada, mantendo posição geral"""
        rng = np.random.default_rng(self.seed if seed is None else seed)
        d = ps.dim
        lows = [min(p[k] for p in ps) for k in range(d)]
        highs = [max(p[k] for p in ps) for k in range(d)]

        def around() -> Point:
            out = []
            for k in range(d):
                width = highs[k] - lows[k] or Fraction(1)
                u = Fraction(int(rng.integers(-250, 1251)), 1000)
                out.append(lows[k] + width * u)
            return tuple(out)

        points = self._accumulate(len(ps) + extra, d, around, list(ps))
        return PointSet(dim=d, points=tuple(points))

    def all_trees(self, max_n: int, min_n: int = 1) -> List[GraphSpec]:
        """Um representante por classe de isomorfismo de árvores com min_n..max_n vértices"""
        trees = []
        for n in range(max(1, min_n), max_n + 1):
            if n == 1:
                trees.append(GraphSpec.tree(1, []))
                continue
            for g in nx.nonisomorphic_trees(n):
                trees.append(GraphSpec.from_networkx(g, kind=GraphKind.TREE))
        return trees

    def cup_cap_set(self, a: int, b: int) -> List[Tuple[int, int]]:
        """C(a+b-4, a-2) pontos inteiros sem a-copo nem b-capa, abscissas distintas

        S(a, b) = S(a-1, b) à esquerda e S(a, b-1) à direita e bem acima, de modo que toda
        inclinação entre as metades supere as inclinações internas.
        """
        if a < 2 or b < 2:
            raise DimensionError(f"Copos e capas exigem a, b >= 2, recebidos {a}, {b}")
        if a == 2 or b == 2:
            return [(0, 0)]
        left = self.cup_cap_set(a - 1, b)
        right = self.cup_cap_set(a, b - 1)
        width_l = max(x for x, _ in left)
        width_r = max(x for x, _ in right)
        height_l = max(y for _, y in left)
        steep = max(_steepness(left), _steepness(right))
        dy = height_l + (steep + 1) * (width_l + width_r + 1)
        return left + [(x + width_l + 1, y + dy) for x, y in right]

    def no_convex_polygon_set(self, k: int) -> PointSet:
        """Conjunto extremal clássico de 2^{k-2} pontos sem k pontos em posição convexa

        Blocos T_i = S(i+2, k-i), i = 0..k-2, achatados em relação às inclinações entre blocos
        e dispostos sobre um arco côncavo.
        """
        if k < 3:
            raise DimensionError(f"k deve ser >= 3, recebido {k}")
        blocks = [self.cup_cap_set(i + 2, k - i) for i in range(k - 1)]
        width = max(x for block in blocks for x, _ in block)
        height = max(y for block in blocks for _, y in block)
        steep = max(_steepness(block) for block in blocks)
        pitch = width + 100 * k * k * (width + 1)
        rise = 100 * k * (height + 1) + pitch * (steep + 1)

        rows = []
        for i, block in enumerate(blocks):
            x0 = i * pitch
            y0 = rise * (2 * (k - 1) * i - i * i)
            rows.extend((x + x0, y + y0) for x, y in block)
        logger.info(f"Conjunto extremal com {len(rows)} pontos sem {k}-gono convexo")
        return PointSet.from_rows(rows, dim=2)

    def _sphere_point(self, rng: np.random.Generator, d: int) -> Point:
        """Projeção estereográfica inversa de um ponto racional de R^{d-1}, escalada"""
        t = [Fraction(int(x), 97) for x in rng.integers(-1000, 1001, size=d - 1)]
        norm = sum(x * x for x in t)
        scale = Fraction(1000) / (norm + 1)
        return tuple(2 * x * scale for x in t) + ((norm - 1) * scale,)

    def _moment_curve(self, rng: np.random.Generator, n: int, d: int) -> List[Point]:
        """Curva dos momentos em parâmetros racionais crescentes, com perturbação racional semeada

        A perturbação diminui até o quirotopo voltar a ser todo positivo; sem sucesso, os pontos
        ficam exatamente sobre a curva.
        """
        params = set()
        attempts = 0
        while len(params) < n:
            attempts += 1
            if attempts > self.retries:
                raise RetriesExhausted("Parâmetros distintos insuficientes na curva dos momentos")
            params.add(Fraction(int(rng.integers(0, 100 * n)), 10))
        curve = [tuple(t ** (k + 1) for k in range(d)) for t in sorted(params)]
        if n <= d:
            return curve

        noise = rng.integers(-1000, 1001, size=(n, d)).tolist()
        for exponent in range(self.perturbation_steps):
            scale = Fraction(1, 10 ** (6 + 3 * exponent))
            points = [tuple(x + scale * e for x, e in zip(p, row)) for p, row in zip(curve, noise)]
            if exact_geometry.chirotope(PointSet(dim=d, points=tuple(points))).uniform_sign() == 1:
                return points
            logger.debug(f"Perturbação {scale} quebrou a alternância, reduzindo")
        logger.warning("Perturbação descartada, pontos exatamente sobre a curva dos momentos")
        return curve

    def _accumulate(self, n: int, d: int, draw, points: List[Point]) -> List[Point]:
        points = list(points)
        attempts = 0
        while len(points) < n:
            attempts += 1
            if attempts > self.retries:
                raise RetriesExhausted(f"Posição geral não atingida após {self.retries} tentativas")
            candidate = draw()
            if candidate in points or not self._keeps_general_position(points, candidate, d):
                continue
            points.append(candidate)
        return points

    def _keeps_general_position(self, points: List[Point], candidate: Point, d: int) -> bool:
        if len(points) < d:
            return True
        for tup in combinations(points, d):
            if exact_geometry.orientation(list(tup) + [candidate]) == 0:
                return False
        return True


# Instância global do serviço
config_service = ConfigService()
