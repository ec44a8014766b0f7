"""
Serviço para leitura e escrita de arquivos de pontos, partições e grafos
"""
import hashlib
import json
import logging
from decimal import Decimal
from pathlib import Path
from typing import Any, Dict, Tuple, Union

from pydantic import ValidationError

from ..core.exceptions import DimensionError, ParseError
from ..models.combinatorics import GraphSpec, Partition
from ..models.geometry import PointSet, make_point
from ..models.schemas import GraphFile, PartitionFile, PointsFile
from ..utils.rational import rational_to_json

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _position(text: str, offset: int) -> Tuple[int, int]:
    """Linha e coluna (base 1) de um deslocamento no texto"""
    offset = max(0, min(offset, len(text)))
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


def inputs_digest(payload: Any) -> str:
    """sha256 do JSON canônico (chaves ordenadas, sem espaços)"""
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


class FileProcessorService:
    """Serviço para processar arquivos JSON de entrada e saída"""

    def _read_json(self, path: PathLike) -> Tuple[Any, str]:
        text = Path(path).read_text(encoding="utf-8")
        try:
            # decimais viram Decimal para conversão exata
            return json.loads(text, parse_float=Decimal), text
        except json.JSONDecodeError as e:
            logger.error(f"JSON inválido em {path}: {e.msg}")
            raise ParseError(f"JSON inválido: {e.msg}", e.lineno, e.colno) from None

    def _validate(self, model, data: Any, text: str, key: str):
        try:
            return model.model_validate(data)
        except ValidationError as e:
            line, column = _position(text, text.find(f'"{key}"'))
            first = e.errors()[0]
            where = ".".join(str(x) for x in first.get("loc", ()))
            raise ParseError(f"Campo inválido {where}: {first.get('msg')}", line, column) from None

    def points_from_data(self, data: Any, text: str = "") -> PointSet:
        parsed = self._validate(PointsFile, data, text, "points")
        for i, row in enumerate(parsed.points):
            if len(row) != parsed.dim:
                needle = text.find('"points"')
                line, column = _position(text, needle)
                raise ParseError(f"Ponto {i} com {len(row)} coordenadas, esperado {parsed.dim}", line, column)
        try:
            points = tuple(make_point(row) for row in parsed.points)
        except (ValueError, ZeroDivisionError) as e:
            line, column = _position(text, text.find('"points"'))
            raise ParseError(f"Coordenada não racional: {e}", line, column) from None
        return PointSet(dim=parsed.dim, points=points)

    def load_points(self, path: PathLike) -> PointSet:
        """Carrega pontos com conversão exata (inteiros, decimais, 'p/q')"""
        data, text = self._read_json(path)
        ps = self.points_from_data(data, text)
        logger.info(f"Carregados {len(ps)} pontos em R^{ps.dim} de {path}")
        return ps

    def points_to_data(self, ps: PointSet) -> Dict[str, Any]:
        return {"dim": ps.dim, "points": [[rational_to_json(x) for x in p] for p in ps]}

    def save_points(self, ps: PointSet, path: PathLike) -> Path:
        return self._write_json(self.points_to_data(ps), path)

    def load_partition(self, path: PathLike, size: int = None) -> Partition:
        data, text = self._read_json(path)
        parsed = self._validate(PartitionFile, data, text, "assignment")
        if size is not None and len(parsed.assignment) != size:
            raise DimensionError(f"Partição com {len(parsed.assignment)} pontos, esperado {size}")
        return Partition(n_parts=parsed.n_parts, assignment=tuple(parsed.assignment))

    def partition_to_data(self, p: Partition) -> Dict[str, Any]:
        return {"n_parts": p.n_parts, "assignment": list(p.assignment)}

    def save_partition(self, p: Partition, path: PathLike) -> Path:
        return self._write_json(self.partition_to_data(p), path)

    def load_graph(self, path: PathLike) -> GraphSpec:
        data, text = self._read_json(path)
        parsed = self._validate(GraphFile, data, text, "edges")
        try:
            return GraphSpec(n=parsed.n, edges=frozenset(parsed.edges), kind=parsed.kind)
        except ValueError as e:
            line, column = _position(text, text.find('"edges"'))
            raise ParseError(str(e), line, column) from None

    def graph_to_data(self, g) -> Dict[str, Any]:
        return {"n": g.n, "edges": [list(e) for e in sorted(g.edges)]}

    def save_graph(self, g, path: PathLike) -> Path:
        return self._write_json(self.graph_to_data(g), path)

    def _write_json(self, data: Any, path: PathLike) -> Path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
        logger.debug(f"Arquivo salvo: {target}")
        return target


# Instância global do serviço
file_processor = FileProcessorService()
