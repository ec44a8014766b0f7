"""
Hierarquia de exceções do Nerve Forge
"""
from typing import Any, Optional


class NerveForgeError(Exception):
    """Erro base de todas as operações"""

    def __init__(self, message: str, detail: Optional[Any] = None):
        super().__init__(message)
        self.message = message
        self.detail = detail


# Entrada e formato

class DimensionError(NerveForgeError):
    """Dimensões inconsistentes"""


class ParseError(NerveForgeError):
    """Arquivo de entrada inválido"""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{message} (linha {line}, coluna {column})", {"line": line, "column": column})
        self.line = line
        self.column = column


class UnknownConfig(NerveForgeError):
    """Configuração embutida desconhecida"""


class PartitionError(NerveForgeError):
    """Partição malformada"""


class BijectionError(NerveForgeError):
    """Permutação de índices que não é bijeção"""


class NotATree(NerveForgeError):
    """Grafo não é árvore"""


class NotCaterpillar(NerveForgeError):
    """Árvore não é lagarta"""


# Geometria

class DegeneracyError(NerveForgeError):
    """Configuração afimmente degenerada"""


class NotGeneralPosition(NerveForgeError):
    """Pontos fora de posição geral"""


class NotConvexPosition(NerveForgeError):
    """Pontos fora de posição convexa"""


class DegeneratePosition(NerveForgeError):
    """Caso degenerado que a construção não cobre"""


class NotAlternating(NerveForgeError):
    """Quirotopo não alternante"""


class PreconditionViolated(NerveForgeError):
    """Pré-condição geométrica violada"""


class SeparationFailure(NerveForgeError):
    """Não existe hiperplano separador esperado"""


# Tamanhos e orçamentos

class WrongCount(NerveForgeError):
    """Número de pontos incorreto"""


class TooFewPoints(NerveForgeError):
    """Pontos insuficientes para a construção"""


class InfeasibleSize(NerveForgeError):
    """Enumeração de partições excede o orçamento"""


class BudgetExceeded(NerveForgeError):
    """Busca de subconjuntos excede o orçamento"""


class RetriesExhausted(NerveForgeError):
    """Número máximo de tentativas atingido"""


# Pipelines

class MissingTrace(NerveForgeError):
    """Partição base sem traço de construção"""


class SupersetMismatch(NerveForgeError):
    """Conjunto estendido não contém a base"""


class SubsetNotFound(NerveForgeError):
    """Subconjunto estruturado não encontrado"""


class VerificationError(NerveForgeError):
    """Resultado não confere com a verificação independente"""
