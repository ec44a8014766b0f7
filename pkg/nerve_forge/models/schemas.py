"""
Schemas Pydantic para arquivos de entrada e relatórios
"""
import uuid
from datetime import datetime
from decimal import Decimal
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, Field, field_validator

from .combinatorics import GraphKind

Coordinate = Union[int, Decimal, str]


class Outcome(str, Enum):
    """Resultado de um comando"""

    FOUND = "found"
    NOT_FOUND = "not_found"
    ERROR = "error"


class VerificationStatus(str, Enum):
    """Resultado da verificação independente"""

    PASS = "PASS"
    FAIL = "FAIL"
    NONE = "none"


class PointsFile(BaseModel):
    """Arquivo de pontos: {dim, points}"""

    dim: int = Field(..., ge=1, description="Dimensão do espaço")
    points: List[List[Coordinate]] = Field(..., description="Coordenadas exatas por ponto")


class PartitionFile(BaseModel):
    """Arquivo de partição: {n_parts, assignment}"""

    n_parts: int = Field(..., ge=1, description="Número de partes")
    assignment: List[int] = Field(..., description="Parte de cada ponto, em ordem")

    @field_validator("assignment")
    @classmethod
    def validate_assignment(cls, v):
        if any(p < 0 for p in v):
            raise ValueError("Índices de parte devem ser não negativos")
        return v


class GraphFile(BaseModel):
    """Arquivo de grafo: {n, edges}"""

    n: int = Field(..., ge=1, description="Número de vértices")
    edges: List[Tuple[int, int]] = Field(default_factory=list, description="Arestas não orientadas")
    kind: GraphKind = Field(GraphKind.GENERAL, description="Tipo do grafo")


class RunReport(BaseModel):
    """Relatório de execução de um comando"""

    id: str = Field(default_factory=lambda: str(uuid.uuid4()), description="ID único da execução")
    command: str = Field(..., description="Subcomando executado")
    inputs_digest: str = Field(..., description="sha256 do JSON canônico das entradas")
    outcome: Outcome
    n_parts: Optional[int] = Field(None, description="Número de partes da partição")
    partition: Optional[List[int]] = Field(None, description="Parte de cada ponto")
    verification: VerificationStatus = VerificationStatus.NONE
    elapsed: float = Field(..., ge=0.0, description="Tempo decorrido em segundos")
    details: Dict[str, Any] = Field(default_factory=dict)
    timestamp: datetime = Field(default_factory=datetime.now)


class CriterionResult(BaseModel):
    """Resultado de um critério da suíte de aceitação"""

    number: int = Field(..., ge=1, le=12)
    name: str
    passed: bool
    cases: int = Field(..., ge=0, description="Casos verificados")
    detail: Optional[str] = None
    elapsed: float = Field(0.0, ge=0.0)


class ExperimentResult(BaseModel):
    """Resultado de um experimento nomeado (instâncias publicadas e limites relaxados)"""

    name: str
    passed: bool
    cases: int = Field(..., ge=0)
    metrics: Dict[str, Any] = Field(default_factory=dict)
    detail: Optional[str] = None
    elapsed: float = Field(0.0, ge=0.0)


class ReportStats(BaseModel):
    """Estatísticas das execuções"""

    total_runs: int = Field(..., ge=0)
    found_count: int = Field(..., ge=0)
    not_found_count: int = Field(..., ge=0)
    error_count: int = Field(..., ge=0)
    by_command: Dict[str, int] = Field(default_factory=dict)
    average_elapsed: float = Field(..., ge=0.0)


class ErrorResponse(BaseModel):
    """Resposta padrão para erros"""

    error: str = Field(..., description="Mensagem de erro")
    kind: str = Field(..., description="Classe da exceção")
    detail: Optional[Any] = Field(None, description="Detalhes adicionais do erro")
    timestamp: datetime = Field(default_factory=datetime.now)
