# app/core/config.py
from functools import lru_cache
from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict

BASE_DIR = Path(__file__).resolve().parents[1]


class Settings(BaseSettings):
    # === Presupuestos de enumeración ===
    # |V| máximo para realizar un matroide a partir de vectores
    ENUMERATION_BUDGET: int = 12
    # Símplices máximos al ensamblar Y y Z
    SIMPLEX_BUDGET: int = 1_000_000

    # === Familia de inmersiones para U_Δ ===
    EMBEDDING_SAMPLES: int = 64
    EMBEDDING_SEED: int = 0
    EMBEDDING_COORD_RANGE: int = 3

    # === Cociclo de Chern ===
    # "strict" exige que todos los levantamientos coincidan, "diagnostic" reporta la dispersión
    OMEGA_MODE: str = "strict"

    # === Paralelismo y caché ===
    MAX_WORKERS: int = 4
    REALIZATION_CACHE_SIZE: int = 512

    # === Fibrados generados ===
    FIBER_LENGTH: int = 3

    # === Logging ===
    LOG_LEVEL: str = "WARNING"
    LOG_TO_FILE: bool = False
    LOGS_DIR: str = "logs"

    # Configuración de pydantic v2
    model_config = SettingsConfigDict(
        env_file=".env",
        case_sensitive=True,
        extra="ignore",
    )


@lru_cache
def get_settings() -> Settings:
    s = Settings()
    # Rutas relativas de logs se resuelven contra el directorio de trabajo
    s.LOGS_DIR = str(Path(s.LOGS_DIR))
    s.OMEGA_MODE = s.OMEGA_MODE.lower()
    return s
