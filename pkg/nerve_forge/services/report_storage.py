"""
Serviço de armazenamento de relatórios em disco (um JSON por execução)
"""
import logging
from collections import Counter
from pathlib import Path
from typing import List, Optional, Union

from pydantic import ValidationError

from ..core.config import settings
from ..models.schemas import Outcome, ReportStats, RunReport

logger = logging.getLogger(__name__)


class ReportStorageService:
    """Serviço para persistir relatórios de execução em output_dir/reports e resumir o histórico"""

    def __init__(self, directory: Optional[Union[str, Path]] = None, limit: Optional[int] = None):
        self.directory = Path(settings.output_dir) / "reports" if directory is None else Path(directory)
        self.limit = settings.history_limit if limit is None else limit

    def _path(self, report_id: str) -> Path:
        return self.directory / f"{report_id}.json"

    def store_report(self, report: RunReport) -> Path:
        """Grava o relatório e descarta os mais antigos além do limite"""
        self.directory.mkdir(parents=True, exist_ok=True)
        target = self._path(report.id)
        target.write_text(report.model_dump_json(indent=2), encoding="utf-8")
        logger.debug(f"Relatório armazenado: {target} ({report.command}, {report.outcome.value})")

        # Manter apenas os últimos relatórios
        stored = self._load_all()
        for old in stored[:-self.limit] if len(stored) > self.limit else []:
            self._path(old.id).unlink(missing_ok=True)
        return target

    def _load_all(self) -> List[RunReport]:
        """Relatórios válidos do diretório, do mais antigo ao mais recente"""
        if not self.directory.is_dir():
            return []
        reports = []
        for path in self.directory.glob("*.json"):
            try:
                reports.append(RunReport.model_validate_json(path.read_text(encoding="utf-8")))
            except ValidationError:
                logger.warning(f"Relatório ilegível ignorado: {path}")
        return sorted(reports, key=lambda r: (r.timestamp, r.id))

    def get_report(self, report_id: str) -> Optional[RunReport]:
        path = self._path(report_id)
        if not path.is_file():
            return None
        return RunReport.model_validate_json(path.read_text(encoding="utf-8"))

    def get_history(self, limit: int = 50) -> List[RunReport]:
        """Relatórios mais recentes primeiro"""
        return list(reversed(self._load_all()[-limit:]))

    def get_stats(self) -> ReportStats:
        reports = self._load_all()
        commands = Counter(r.command for r in reports)
        outcomes = Counter(r.outcome for r in reports)
        total = len(reports)
        return ReportStats(
            total_runs=total,
            found_count=outcomes[Outcome.FOUND],
            not_found_count=outcomes[Outcome.NOT_FOUND],
            error_count=outcomes[Outcome.ERROR],
            by_command=dict(sorted(commands.items())),
            average_elapsed=round(sum(r.elapsed for r in reports) / total, 4) if total else 0.0,
        )

    def clear_history(self) -> int:
        """Apaga os relatórios gravados; devolve quantos foram removidos"""
        removed = 0
        if self.directory.is_dir():
            for path in self.directory.glob("*.json"):
                path.unlink()
                removed += 1
        logger.info(f"Histórico de relatórios limpo ({removed} arquivos)")
        return removed


# Instância global do serviço
report_storage = ReportStorageService()
