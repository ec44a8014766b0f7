"""
Simplex exato (fase um) com certificado de Farkas
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from ..core.exceptions import DimensionError
from .rational import dot


@dataclass(frozen=True)
class FeasibilityResult:
    """Solução de A x = b, x >= 0, ou vetor y com yA <= 0 e yb > 0"""

    solution: Optional[List[Fraction]]
    farkas: Optional[List[Fraction]]

    @property
    def feasible(self) -> bool:
        return self.solution is not None


def solve_feasibility(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> FeasibilityResult:
    """Decide viabilidade de A x = b, x >= 0 com a regra de Bland"""
    m = len(rows)
    if m != len(rhs):
        raise DimensionError("Número de linhas e lado direito diferem")
    n = len(rows[0]) if m else 0
    if any(len(r) != n for r in rows):
        raise DimensionError("Linhas de tamanhos diferentes")

    # b >= 0 invertendo linhas
    flips = [(-1 if b < 0 else 1) for b in rhs]
    width = n + m + 1
    tableau: List[List[Fraction]] = []
    for i in range(m):
        f = flips[i]
        row = [Fraction(f * x) for x in rows[i]]
        row += [Fraction(1) if j == i else Fraction(0) for j in range(m)]
        row.append(Fraction(f * rhs[i]))
        tableau.append(row)
    basis = [n + i for i in range(m)]

    # custo reduzido da fase um (minimiza a soma das artificiais)
    cost = [Fraction(0)] * width
    for j in range(n):
        cost[j] = -sum(tableau[i][j] for i in range(m))
    cost[width - 1] = -sum(tableau[i][width - 1] for i in range(m))

    while True:
        entering = next((j for j in range(n + m) if cost[j] < 0), None)
        if entering is None:
            break
        leaving = None
        best = None
        for i in range(m):
            a = tableau[i][entering]
            if a > 0:
                ratio = tableau[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best, leaving = ratio, i
        if leaving is None:
            # não ocorre na fase um: o objetivo é limitado inferiormente por zero
            break
        _pivot(tableau, cost, leaving, entering)
        basis[leaving] = entering

    objective = -cost[-1]
    if objective == 0:
        x = [Fraction(0)] * n
        for i, var in enumerate(basis):
            if var < n:
                x[var] = tableau[i][-1]
        return FeasibilityResult(solution=x, farkas=None)

    # multiplicadores simplex: y_i = 1 - custo reduzido da artificial i
    y = [flips[i] * (1 - cost[n + i]) for i in range(m)]
    return FeasibilityResult(solution=None, farkas=y)


def _pivot(tableau: List[List[Fraction]], cost: List[Fraction], row: int, col: int) -> None:
    pivot_row = tableau[row]
    p = pivot_row[col]
    if p != 1:
        tableau[row] = pivot_row = [x / p for x in pivot_row]
    for i, other in enumerate(tableau):
        if i != row:
            f = other[col]
            if f:
                tableau[i] = [a - f * b for a, b in zip(other, pivot_row)]
    f = cost[col]
    if f:
        cost[:] = [a - f * b for a, b in zip(cost, pivot_row)]


def check_farkas(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction], y: Sequence[Fraction]) -> bool:
    """Confere yA <= 0 e yb > 0"""
    n = len(rows[0]) if rows else 0
    for j in range(n):
        if sum(y[i] * rows[i][j] for i in range(len(rows))) > 0:
            return False
    return dot(y, rhs) > 0
