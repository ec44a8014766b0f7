"""
Ponto de entrada da linha de comando - Nerve Forge
"""
import logging
import sys
from typing import List, Optional

from .cli.commands import EXIT_ERROR, run
from .core.config import settings
from .models.schemas import ErrorResponse


def configure_logging(level: Optional[str] = None) -> None:
    """Logs em stderr; stdout fica reservado aos relatórios JSON (NERVE_FORGE_DEBUG força DEBUG)"""
    if level is None:
        level = "DEBUG" if settings.debug else settings.log_level
    logging.basicConfig(
        level=getattr(logging, level.upper()),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[
            logging.StreamHandler(sys.stderr)
        ]
    )


logger = logging.getLogger(__name__)


def main(argv: Optional[List[str]] = None) -> int:
    configure_logging()
    logger.debug(f"Iniciando {settings.app_name} v{settings.app_version}")
    try:
        return run(argv)
    except Exception as exc:
        # Handler para exceções gerais
        logger.error(f"Exceção não tratada: {exc}", exc_info=True)
        error = ErrorResponse(error="Erro interno", kind=type(exc).__name__, detail=str(exc))
        print(error.model_dump_json(indent=2), file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
