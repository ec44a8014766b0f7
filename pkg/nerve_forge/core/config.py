"""
Configurações da aplicação Nerve Forge
"""

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Configurações da aplicação"""

    model_config = SettingsConfigDict(
        env_prefix="NERVE_FORGE_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",  # Ignora campos extras do .env
    )

    # Configurações básicas
    app_name: str = "Nerve Forge"
    app_version: str = "1.0.0"
    debug: bool = False

    # Configurações de logs
    log_level: str = "INFO"

    # Aleatoriedade (NERVE_FORGE_SEED)
    seed: int = 20240521

    # Orçamentos de busca
    partition_budget: int = 2_000_000  # folhas do espaço de partições
    subset_budget: int = 2_000_000  # nós da busca de subpolitopos cíclicos
    face_budget: int = 5_000  # testes de viabilidade no nervo completo

    # Paralelismo da busca exaustiva
    search_workers: int = 1
    search_chunk_depth: int = 3

    # Tentativas
    projection_retries: int = 64
    random_retries: int = 10_000
    random_box: int = 1_000_000
    perturbation_steps: int = 4  # reduções da perturbação da curva dos momentos

    # Configurações de SVG
    svg_size: int = 480
    svg_opacity: float = 0.35

    # Saída e histórico
    output_dir: str = "output"
    history_limit: int = 100

    # Suite de aceitação
    acceptance_scale: float = 1.0


# Instância global das configurações
settings = Settings()
