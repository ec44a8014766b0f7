"""
Aritmética racional exata: conversão, determinantes e núcleos
"""
import math
from decimal import Decimal
from fractions import Fraction
from numbers import Rational
from typing import List, Sequence, Tuple, Union

from ..core.exceptions import DimensionError

Number = Union[int, str, Fraction, Decimal]


def to_fraction(value: Number) -> Fraction:
    """Converte inteiro, string decimal ou racional em Fraction exata"""
    if isinstance(value, bool):
        raise TypeError("Valores booleanos não são coordenadas")
    if isinstance(value, (Rational, Decimal)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        # repr curto do float, nunca a expansão binária
        return Fraction(repr(value))
    raise TypeError(f"Tipo de coordenada não suportado: {type(value).__name__}")


def sign(value) -> int:
    """Sinal em {-1, 0, +1}"""
    return (value > 0) - (value < 0)


def determinant(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinante exato por eliminação de Gauss sobre Fraction"""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise DimensionError("Matriz não quadrada")
    rows = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        p = rows[col][col]
        det *= p
        for r in range(col + 1, n):
            factor = rows[r][col] / p
            if factor:
                row_r, row_c = rows[r], rows[col]
                for c in range(col, n):
                    row_r[c] -= factor * row_c[c]
    return det


def integer_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Determinante de matriz inteira pelo algoritmo de Bareiss (sem frações)"""
    n = len(matrix)
    if n == 0:
        return 1
    m = [list(row) for row in matrix]
    negate = False
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            negate = not negate
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if negate else det


def rref(matrix: Sequence[Sequence[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    """Forma escalonada reduzida e colunas pivô"""
    rows = [[Fraction(x) for x in row] for row in matrix]
    if not rows:
        return rows, []
    n_cols = len(rows[0])
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def nullspace(matrix: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """Base do núcleo à direita, um vetor por coluna livre"""
    if not matrix:
        return []
    n_cols = len(matrix[0])
    reduced, pivots = rref(matrix)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * n_cols
        vec[f] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            vec[pc] = -reduced[row_idx][f]
        basis.append(vec)
    return basis


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def scale_to_integers(rows: Sequence[Sequence[Fraction]]) -> List[Tuple[int, ...]]:
    """Multiplica todas as coordenadas pelo mmc dos denominadores"""
    lcm = 1
    for row in rows:
        for x in row:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    return [tuple(int(x * lcm) for x in row) for row in rows]


def rational_to_json(value: Fraction) -> Union[int, str]:
    """Inteiros como número, demais racionais como string 'p/q'"""
    if value.denominator == 1:
        return int(value.numerator)
    return f"{value.numerator}/{value.denominator}"
