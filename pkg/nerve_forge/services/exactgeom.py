"""
Serviço de primitivas geométricas exatas: orientação, quirotopo, Radon, fechos convexos
"""
import logging
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

from ..core.exceptions import DegeneracyError, DimensionError
from ..models.geometry import Chirotope, HullTest, Hyperplane, Point, PointSet, RadonPair
from ..utils.rational import determinant, dot, integer_determinant, nullspace, sign
from ..utils.simplex import check_farkas, solve_feasibility

logger = logging.getLogger(__name__)


def orient2d(a: Sequence, b: Sequence, c: Sequence) -> int:
    """Sinal de (b - a) x (c - a)"""
    return sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def _is_integral(points: Iterable[Sequence[Fraction]]) -> bool:
    return all(getattr(x, "denominator", 1) == 1 for p in points for x in p)


def _hull_chain(items: List[Tuple[Tuple[int, ...], int]]) -> List[int]:
    """Cadeia monótona sobre pares (coordenada, índice); colineares descartados"""
    items = sorted(set(items))
    # pontos repetidos: mantém o primeiro índice
    unique: List[Tuple[Tuple[int, ...], int]] = []
    for coord, idx in items:
        if unique and unique[-1][0] == coord:
            continue
        unique.append((coord, idx))
    if len(unique) <= 2:
        return [idx for _, idx in unique]

    def build(seq):
        chain: List[Tuple[Tuple[int, ...], int]] = []
        for item in seq:
            while len(chain) > 1 and orient2d(chain[-2][0], chain[-1][0], item[0]) <= 0:
                chain.pop()
            chain.append(item)
        return chain

    lower = build(unique)
    upper = build(reversed(unique))
    hull = lower[:-1] + upper[:-1]
    return [idx for _, idx in hull]


class ExactGeometryService:
    """Serviço de predicados geométricos em aritmética racional exata"""

    # Orientação e quirotopo

    def orientation(self, points: Sequence[Sequence[Fraction]]) -> int:
        """Sinal do determinante da matriz homogeneizada dos d+1 pontos"""
        if not points:
            raise DimensionError("Nenhum ponto informado")
        d = len(points[0])
        if len(points) != d + 1 or any(len(p) != d for p in points):
            raise DimensionError(f"Orientação exige {d + 1} pontos de dimensão {d}")
        if d == 2:
            return orient2d(points[0], points[1], points[2])
        base = points[0]
        rows = [[p[k] - base[k] for k in range(d)] for p in points[1:]]
        if _is_integral(points):
            return sign(integer_determinant([[int(x) for x in row] for row in rows]))
        return sign(determinant(rows))

    def chirotope(self, ps: PointSet) -> Chirotope:
        """Orientações de todas as (d+1)-uplas crescentes em ordem lexicográfica"""
        if len(ps) < ps.dim + 1:
            raise DimensionError(f"Quirotopo exige ao menos {ps.dim + 1} pontos")
        pts = ps.integer_points
        signs = {
            tup: self.orientation([pts[i] for i in tup])
            for tup in combinations(range(len(ps)), ps.dim + 1)
        }
        return Chirotope(dim=ps.dim, n=len(ps), signs=signs)

    def in_general_position(self, ps: PointSet) -> bool:
        """Nenhuma (d+1)-upla com orientação nula"""
        if len(ps) < ps.dim + 1:
            raise DimensionError(f"Posição geral exige ao menos {ps.dim + 1} pontos")
        pts = ps.integer_points
        return all(
            self.orientation([pts[i] for i in tup]) != 0
            for tup in combinations(range(len(ps)), ps.dim + 1)
        )

    # Radon

    def radon_partition(self, points: Sequence[Sequence[Fraction]]) -> RadonPair:
        """Partição de Radon de d+2 pontos pela dependência afim exata"""
        if not points:
            raise DimensionError("Nenhum ponto informado")
        d = len(points[0])
        if len(points) != d + 2 or any(len(p) != d for p in points):
            raise DimensionError(f"Radon exige {d + 2} pontos de dimensão {d}")

        matrix = [[Fraction(p[k]) for p in points] for k in range(d)]
        matrix.append([Fraction(1)] * len(points))
        basis = nullspace(matrix)
        if len(basis) != 1:
            raise DegeneracyError(f"Pontos afimmente dependentes em menos pontos (núcleo de dimensão {len(basis)})")
        coeffs = basis[0]
        first = next(c for c in coeffs if c != 0)
        if first < 0:
            coeffs = [-c for c in coeffs]

        part_a = frozenset(i for i, c in enumerate(coeffs) if c >= 0)
        part_b = frozenset(i for i, c in enumerate(coeffs) if c < 0)
        if not part_b:
            raise DegeneracyError("Dependência afim sem coeficientes negativos")

        total = sum(c for c in coeffs if c > 0)
        witness = tuple(sum(coeffs[i] * Fraction(points[i][k]) for i in range(len(points)) if coeffs[i] > 0) / total
                        for k in range(d))
        other = tuple(sum(-coeffs[i] * Fraction(points[i][k]) for i in part_b) / total for k in range(d))
        if witness != other:
            raise DegeneracyError("Testemunha de Radon inconsistente")
        return RadonPair(part_a=part_a, part_b=part_b, witness=witness)

    # Fechos convexos

    def hulls_intersect(self, ps: PointSet, a: Iterable[int], b: Iterable[int]) -> HullTest:
        """Viabilidade linear exata com certificado (ponto comum ou hiperplano separador)"""
        a, b = sorted(set(a)), sorted(set(b))
        if not a or not b:
            raise ValueError("Conjuntos de índices vazios")
        if set(a) & set(b):
            raise ValueError("Conjuntos de índices não disjuntos")
        return self._hull_test([ps[i] for i in a], [ps[i] for i in b])

    def point_in_hull(self, ps: PointSet, point: Sequence[Fraction], indices: Iterable[int]) -> bool:
        """Pertinência exata de um ponto ao fecho de ps[indices]"""
        members = [ps[i] for i in sorted(set(indices))]
        if not members:
            return False
        if len(members) == 1:
            return tuple(point) == tuple(members[0])
        return self._hull_test([tuple(point)], members).intersects

    def hulls_meet(self, ps: PointSet, a: Sequence[int], b: Sequence[int]) -> bool:
        """Mesma resposta de hulls_intersect, sem certificado"""
        if ps.dim == 2:
            return self._planar_hulls_meet(ps, a, b)
        return self._hull_test([ps[i] for i in a], [ps[i] for i in b], certify=False).intersects

    def common_point(self, ps: PointSet, parts: Sequence[Sequence[int]]) -> Optional[Point]:
        """Ponto racional em todos os fechos, ou None"""
        parts = [sorted(set(p)) for p in parts]
        if not parts or any(not p for p in parts):
            raise ValueError("Partes vazias")
        if len(parts) == 1:
            return ps[parts[0][0]]
        d = ps.dim
        offsets = []
        n_vars = 0
        for p in parts:
            offsets.append(n_vars)
            n_vars += len(p)
        rows: List[List[Fraction]] = []
        rhs: List[Fraction] = []
        for t in range(1, len(parts)):
            for k in range(d):
                row = [Fraction(0)] * n_vars
                for j, idx in enumerate(parts[t]):
                    row[offsets[t] + j] = ps[idx][k]
                for j, idx in enumerate(parts[0]):
                    row[offsets[0] + j] = -ps[idx][k]
                rows.append(row)
                rhs.append(Fraction(0))
        for t, p in enumerate(parts):
            row = [Fraction(0)] * n_vars
            for j in range(len(p)):
                row[offsets[t] + j] = Fraction(1)
            rows.append(row)
            rhs.append(Fraction(1))
        result = solve_feasibility(rows, rhs)
        if not result.feasible:
            return None
        lam = result.solution
        witness = tuple(sum(lam[j] * ps[idx][k] for j, idx in enumerate(parts[0])) for k in range(d))
        for t in range(1, len(parts)):
            other = tuple(sum(lam[offsets[t] + j] * ps[idx][k] for j, idx in enumerate(parts[t])) for k in range(d))
            if other != witness:
                raise DegeneracyError("Ponto comum não confere")
        return witness

    def convex_hull_2d(self, ps: PointSet, indices: Optional[Iterable[int]] = None) -> List[int]:
        """Vértices do fecho em ordem anti-horária a partir do menor ponto lexicográfico"""
        if ps.dim != 2:
            raise DimensionError("Fecho planar exige dimensão 2")
        if indices is None:
            indices = range(len(ps))
        pts = ps.integer_points
        return _hull_chain([(pts[i], i) for i in indices])

    def in_convex_position(self, ps: PointSet, indices: Optional[Sequence[int]] = None) -> bool:
        """Todo ponto é vértice do fecho do conjunto"""
        idx = list(range(len(ps))) if indices is None else list(indices)
        if len(idx) <= 2:
            return len(set(ps[i] for i in idx)) == len(idx)
        if ps.dim == 2:
            return len(self.convex_hull_2d(ps, idx)) == len(idx)
        for i in idx:
            others = [j for j in idx if j != i]
            if self.point_in_hull(ps, ps[i], others):
                return False
        return True

    def separating_line_side_counts(self, ps: PointSet, h: Hyperplane,
                                    indices: Optional[Iterable[int]] = None) -> Tuple[int, int, int]:
        """(lado +, lado -, sobre h)"""
        if len(h.normal) != ps.dim:
            raise DimensionError("Dimensões do hiperplano e dos pontos diferem")
        plus = minus = on = 0
        for i in (range(len(ps)) if indices is None else indices):
            s = h.side(ps[i])
            if s > 0:
                plus += 1
            elif s < 0:
                minus += 1
            else:
                on += 1
        return plus, minus, on

    # Internos

    def _hull_test(self, pa: Sequence[Sequence[Fraction]], pb: Sequence[Sequence[Fraction]],
                   certify: bool = True) -> HullTest:
        d = len(pa[0])
        na, nb = len(pa), len(pb)
        rows: List[List[Fraction]] = []
        for k in range(d):
            rows.append([Fraction(p[k]) for p in pa] + [-Fraction(q[k]) for q in pb])
        rows.append([Fraction(1)] * na + [Fraction(0)] * nb)
        rows.append([Fraction(0)] * na + [Fraction(1)] * nb)
        rhs = [Fraction(0)] * d + [Fraction(1), Fraction(1)]
        result = solve_feasibility(rows, rhs)

        if result.feasible:
            lam = result.solution
            point = tuple(sum(lam[i] * pa[i][k] for i in range(na)) for k in range(d))
            if certify:
                other = tuple(sum(lam[na + j] * pb[j][k] for j in range(nb)) for k in range(d))
                if point != other:
                    raise DegeneracyError("Certificado de interseção inválido")
            return HullTest(intersects=True, common_point=point)

        y = result.farkas
        if certify and not check_farkas(rows, rhs, y):
            raise DegeneracyError("Certificado de Farkas inválido")
        normal = tuple(y[:d])
        high_a = max(dot(normal, p) for p in pa)
        low_b = min(dot(normal, q) for q in pb)
        separator = Hyperplane(normal=normal, offset=(high_a + low_b) / 2)
        if certify:
            if any(separator.side(p) >= 0 for p in pa) or any(separator.side(q) <= 0 for q in pb):
                raise DegeneracyError("Hiperplano separador inválido")
        return HullTest(intersects=False, separator=separator)

    def _planar_hulls_meet(self, ps: PointSet, a: Sequence[int], b: Sequence[int]) -> bool:
        pts = ps.integer_points
        ha = [pts[i] for i in _hull_chain([(pts[i], i) for i in a])]
        hb = [pts[i] for i in _hull_chain([(pts[i], i) for i in b])]
        candidates = []
        for hull in (ha, hb):
            if len(hull) >= 2:
                for u, v in zip(hull, hull[1:] + hull[:1]):
                    nx_, ny_ = -(v[1] - u[1]), v[0] - u[0]
                    candidates.append((nx_, ny_))
                    candidates.append((-nx_, -ny_))
        for p in ha:
            for q in hb:
                if p == q:
                    return True
                candidates.append((q[0] - p[0], q[1] - p[1]))
        for wx, wy in candidates:
            high_a = max(wx * p[0] + wy * p[1] for p in ha)
            low_b = min(wx * q[0] + wy * q[1] for q in hb)
            if high_a < low_b:
                return False
        return True


# Instância global do serviço
exact_geometry = ExactGeometryService()
