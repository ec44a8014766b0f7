"""
Serviço de extração de subconjuntos estruturados: posição convexa e subpolitopos cíclicos
"""
import logging
import math
from functools import cmp_to_key
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from ..core.config import settings
from ..core.exceptions import BudgetExceeded, DimensionError, VerificationError
from ..models.geometry import PointSet
from .exactgeom import exact_geometry, orient2d

logger = logging.getLogger(__name__)


def ramsey_bound_formula(n: int, d: int) -> str:
    """Limitante de existência para árvores com n nós em R^d (apenas informativo)"""
    if d == 2:
        k = 2 * n
        if k < 3:
            return f"N({k},2) = {k}"
        value = math.comb(2 * k - 4, k - 2) + 1
        return f"N({k},2) <= C({2 * k - 4},{k - 2}) + 1 = {value}"
    m = (n - 1) * (d + 1) + 1
    return f"R_{d + 1}({m})"


class SubsetFinderService:
    """Serviço para encontrar subconjuntos convexos e cíclicos"""

    def __init__(self):
        self.budget = settings.subset_budget

    def find_convex_subset_2d(self, ps: PointSet, k: int) -> Optional[List[int]]:
        """k índices em posição convexa, em ordem anti-horária, ou None"""
        if ps.dim != 2:
            raise DimensionError("Subconjunto convexo exige pontos planares")
        if k > len(ps):
            return None
        if k <= 0:
            return []
        if k <= 2:
            return list(range(k))

        pts = ps.integer_points
        for bottom in range(len(ps)):
            chain = self._longest_chain(pts, bottom, k)
            if chain is not None:
                if not exact_geometry.in_convex_position(ps, chain):
                    raise VerificationError("Cadeia convexa não passou na verificação")
                logger.debug(f"Subconjunto convexo de {k} pontos com base no ponto {bottom}")
                return chain
        logger.info(f"Nenhum subconjunto convexo de {k} pontos entre {len(ps)}")
        return None

    def _longest_chain(self, pts: Sequence[Tuple[int, ...]], bottom: int, k: int) -> Optional[List[int]]:
        """Programação dinâmica de cadeias convexas com vértice mais baixo fixo"""
        p = pts[bottom]
        above = [i for i in range(len(pts))
                 if i != bottom and (pts[i][1], pts[i][0]) > (p[1], p[0])]
        if len(above) < k - 1:
            return None

        def by_angle(i, j):
            s = orient2d(p, pts[i], pts[j])
            if s:
                return -s
            return i - j

        above.sort(key=cmp_to_key(by_angle))
        m = len(above)
        # best[j][i]: tamanho da cadeia p, ..., above[i], above[j]
        best = [[0] * m for _ in range(m)]
        back = [[-1] * m for _ in range(m)]
        for j in range(m):
            for i in range(j):
                if orient2d(p, pts[above[i]], pts[above[j]]) <= 0:
                    continue
                best[j][i] = 3
                for h in range(i):
                    if best[i][h] + 1 > best[j][i] and \
                            orient2d(pts[above[h]], pts[above[i]], pts[above[j]]) > 0:
                        best[j][i] = best[i][h] + 1
                        back[j][i] = h
                if best[j][i] >= k:
                    chain = [j, i]
                    while back[chain[-2]][chain[-1]] != -1:
                        chain.append(back[chain[-2]][chain[-1]])
                    ordered = [bottom] + [above[x] for x in reversed(chain)]
                    return ordered[:k]
        return None

    def find_cyclic_subpolytope(self, ps: PointSet, m: int,
                                budget: Optional[int] = None) -> Optional[Tuple[List[int], int]]:
        """Primeiro m-subconjunto em ordem canônica com quirotopo uniforme

        Devolve (ordem, orientação): a ordem sempre tem quirotopo todo positivo; orientação -1
        indica que a ordem crescente era toda negativa e foi invertida.
        """
        budget = self.budget if budget is None else budget
        d = ps.dim
        if m > len(ps):
            return None
        if m <= d:
            return list(range(m)), 1
        if d == 2:
            found = self.find_convex_subset_2d(ps, m)
            return (found, 1) if found is not None else None

        # inverter a ordem multiplica cada orientação por (-1)^{d(d+1)/2}
        reversible = (d * (d + 1) // 2) % 2 == 1
        allowed = (1, -1) if reversible else (1,)
        logger.info(f"Buscando subpolitopo cíclico - {m} de {len(ps)} pontos em R^{d}")
        pts = ps.integer_points
        nodes = 0
        seq: List[int] = []

        def extends(x: int, target: int) -> int:
            """Sinal comum após acrescentar x (0 se falhar); target 0 ainda não fixado"""
            for tup in combinations(seq, d):
                s = exact_geometry.orientation([pts[i] for i in tup] + [pts[x]])
                if target == 0 and s in allowed:
                    target = s
                if s == 0 or s != target:
                    return 0
            return target or 1

        def dfs(start: int, target: int) -> int:
            nonlocal nodes
            if len(seq) == m:
                return target
            for x in range(start, len(ps) - (m - len(seq)) + 1):
                nodes += 1
                if nodes > budget:
                    raise BudgetExceeded(f"Busca cíclica excedeu {budget} nós")
                sign_after = extends(x, target)
                if sign_after:
                    seq.append(x)
                    found = dfs(x + 1, sign_after if len(seq) > d else 0)
                    if found:
                        return found
                    seq.pop()
            return 0

        orientation = dfs(0, 0)
        if not orientation:
            logger.info(f"Nenhum subpolitopo cíclico de {m} vértices ({nodes} nós)")
            return None

        order = list(reversed(seq)) if orientation < 0 else list(seq)
        if exact_geometry.chirotope(ps.subset(order)).uniform_sign() != 1:
            raise VerificationError("Quirotopo do subpolitopo não é todo positivo")
        logger.info(f"Subpolitopo cíclico encontrado - orientação {orientation:+d}, {nodes} nós")
        return order, orientation


# Instância global do serviço
subset_finder = SubsetFinderService()
