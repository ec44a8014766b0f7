"""
Tipos geométricos imutáveis: pontos, quirotopos, hiperplanos, partições de Radon
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..core.exceptions import DimensionError
from ..utils.rational import Number, dot, scale_to_integers, sign, to_fraction

Point = Tuple[Fraction, ...]


def make_point(coords: Iterable[Number]) -> Point:
    return tuple(to_fraction(c) for c in coords)


@dataclass(frozen=True)
class PointSet:
    """Conjunto ordenado de pontos racionais em R^d (índice = identidade)"""

    dim: int
    points: Tuple[Point, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionError(f"Dimensão inválida: {self.dim}")
        for i, p in enumerate(self.points):
            if len(p) != self.dim:
                raise DimensionError(f"Ponto {i} tem dimensão {len(p)}, esperado {self.dim}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]], dim: Optional[int] = None) -> "PointSet":
        pts = tuple(make_point(r) for r in rows)
        if dim is None:
            if not pts:
                raise DimensionError("Dimensão indeterminada para conjunto vazio")
            dim = len(pts[0])
        return cls(dim=dim, points=pts)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, index: int) -> Point:
        return self.points[index]

    def __iter__(self):
        return iter(self.points)

    def subset(self, indices: Sequence[int]) -> "PointSet":
        """Subconjunto na ordem dada"""
        return PointSet(dim=self.dim, points=tuple(self.points[i] for i in indices))

    def index_of(self) -> Dict[Point, int]:
        return {p: i for i, p in enumerate(self.points)}

    @cached_property
    def integer_points(self) -> List[Tuple[int, ...]]:
        """Coordenadas inteiras após escala comum (preserva o tipo de ordem)"""
        return scale_to_integers(self.points)

    def as_rows(self) -> List[List[Fraction]]:
        return [list(p) for p in self.points]


@dataclass(frozen=True)
class Chirotope:
    """Sinal da orientação de cada (d+1)-upla crescente, em ordem lexicográfica"""

    dim: int
    n: int
    signs: Mapping[Tuple[int, ...], int] = field(hash=False)

    def values(self) -> Tuple[int, ...]:
        return tuple(self.signs.values())

    def is_uniform(self) -> bool:
        return all(s != 0 for s in self.signs.values())

    def uniform_sign(self) -> int:
        """+1 ou -1 se todos os sinais coincidem e são não nulos, senão 0"""
        vals = set(self.signs.values())
        if len(vals) == 1:
            return next(iter(vals))
        return 0

    def restrict(self, indices: Sequence[int]) -> "Chirotope":
        """Sub-quirotopo induzido, reindexado para 0..k-1 na ordem dada"""
        induced: Dict[Tuple[int, ...], int] = {}
        for tup in combinations(range(len(indices)), self.dim + 1):
            original = [indices[t] for t in tup]
            ordered = sorted(original)
            s = self.signs[tuple(ordered)]
            induced[tup] = s * _permutation_sign(original)
        return Chirotope(dim=self.dim, n=len(indices), signs=induced)


def _permutation_sign(seq: Sequence[int]) -> int:
    """Sinal da permutação que ordena seq"""
    s = 1
    items = list(seq)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                s = -s
    return s


@dataclass(frozen=True)
class Hyperplane:
    """{x : normal·x = offset}"""

    normal: Tuple[Fraction, ...]
    offset: Fraction

    def __post_init__(self):
        if all(c == 0 for c in self.normal):
            raise DimensionError("Normal nula")

    def value(self, point: Sequence[Fraction]) -> Fraction:
        return dot(self.normal, point) - self.offset

    def side(self, point: Sequence[Fraction]) -> int:
        return sign(self.value(point))

    def flipped(self) -> "Hyperplane":
        return Hyperplane(normal=tuple(-c for c in self.normal), offset=-self.offset)

    @classmethod
    def through(cls, a: Sequence[Fraction], b: Sequence[Fraction]) -> "Hyperplane":
        """Reta do plano por dois pontos distintos"""
        normal = (-(b[1] - a[1]), b[0] - a[0])
        return cls(normal=normal, offset=dot(normal, a))


@dataclass(frozen=True)
class RadonPair:
    """Partição de Radon com testemunha comum aos dois fechos"""

    part_a: FrozenSet[int]
    part_b: FrozenSet[int]
    witness: Point


@dataclass(frozen=True)
class HullTest:
    """Resultado de interseção de fechos com certificado"""

    intersects: bool
    common_point: Optional[Point] = None
    separator: Optional[Hyperplane] = None


@dataclass(frozen=True)
class Sector:
    """Setor angular em torno do ápice p"""

    apex: Point
    start_ray: Tuple[Fraction, Fraction]
    end_ray: Tuple[Fraction, Fraction]
    members: Tuple[int, ...]
    quadrant: int = 0
