"""
Logging de la CLI de clases de Pontrjagin

La salida JSON va a stdout, así que todo registro se emite por stderr.
Con LOG_TO_FILE se añaden archivos rotativos filtrados por etiqueta.
"""
import logging
import sys
import time
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional, Union

LOG_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)-34s | %(message)s"
FILE_FORMAT = (
    "%(asctime)s | %(levelname)-8s | %(name)-34s | "
    "%(funcName)s:%(lineno)d | %(message)s"
)
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

ROTATE_AT = 50 * 1024 * 1024
KEEP_FILES = 3

# archivo -> (nivel mínimo, etiqueta requerida)
TAGGED_FILES = {
    "errors.log": (logging.ERROR, None),
    "timing.log": (logging.DEBUG, "[TIMING]"),
    "commands.log": (logging.INFO, "[COMMAND]"),
}


class TagFilter(logging.Filter):
    """Deja pasar solo los registros cuyo mensaje contiene la etiqueta."""

    def __init__(self, tag: str):
        super().__init__()
        self.tag = tag

    def filter(self, record: logging.LogRecord) -> bool:
        return self.tag in record.getMessage()


def _resolve_level(level: Union[int, str]) -> int:
    if isinstance(level, int):
        return level
    resolved = logging.getLevelName(str(level).upper())
    return resolved if isinstance(resolved, int) else logging.WARNING


def _file_handler(path: Path, level: int, tag: Optional[str]) -> RotatingFileHandler:
    handler = RotatingFileHandler(path, maxBytes=ROTATE_AT, backupCount=KEEP_FILES, encoding="utf-8")
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(FILE_FORMAT, datefmt=DATE_FORMAT))
    if tag:
        handler.addFilter(TagFilter(tag))
    return handler


def setup_logging(
    level: Union[int, str] = logging.WARNING,
    to_file: bool = False,
    logs_dir: Union[str, Path] = "logs",
) -> None:
    """
    Reinstala los handlers del logger raíz.

    Args:
        level: nivel numérico o nombre ("DEBUG", "info", ...); un nombre
            desconocido cae en WARNING
        to_file: añade pontrjagin.log y los archivos de TAGGED_FILES
        logs_dir: carpeta de los archivos, se crea si falta
    """
    level = _resolve_level(level)

    root = logging.getLogger()
    root.setLevel(level)
    root.handlers.clear()

    stderr_handler = logging.StreamHandler(sys.stderr)
    stderr_handler.setLevel(level)
    stderr_handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))
    root.addHandler(stderr_handler)

    if to_file:
        directory = Path(logs_dir)
        directory.mkdir(parents=True, exist_ok=True)
        root.addHandler(_file_handler(directory / "pontrjagin.log", level, None))
        for name, (file_level, tag) in TAGGED_FILES.items():
            root.addHandler(_file_handler(directory / name, file_level, tag))

    # sympy es ruidoso en DEBUG durante la simplificación
    logging.getLogger("sympy").setLevel(logging.WARNING)

    log = logging.getLogger(__name__)
    log.info(f"[LOGGING] Nivel {logging.getLevelName(level)}")
    if to_file:
        log.info(f"[LOGGING] Archivos en {Path(logs_dir).resolve()}")


class TimingLogger:
    """Cronometra un bloque y deja el resultado en `elapsed` (segundos)."""

    def __init__(self, label: str, logger_name: Optional[str] = None, level: int = logging.INFO):
        self.label = label
        self.log = logging.getLogger(logger_name or __name__)
        self.level = level
        self.elapsed = 0.0
        self._t0 = 0.0

    def __enter__(self) -> "TimingLogger":
        self._t0 = time.perf_counter()
        self.log.debug(f"[TIMING] {self.label}: inicio")
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> bool:
        self.elapsed = time.perf_counter() - self._t0
        if exc_type is None:
            self.log.log(self.level, f"[TIMING] {self.label}: {self.elapsed:.3f}s")
        else:
            self.log.warning(f"[TIMING] {self.label}: falló tras {self.elapsed:.3f}s ({exc_type.__name__}: {exc_val})")
        return False
