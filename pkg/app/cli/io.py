"""Entrada y salida JSON de la CLI"""
import json
import logging
from pathlib import Path
from typing import Any, Optional, Sequence

import click

from app.schemas.complexes import ComplexModel
from app.schemas.matroids import to_label
from app.topology.simplicial import Simplex, SimplicialComplex
from app.topology.triangulations import NAMED

logger = logging.getLogger(__name__)


def to_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)


def emit(payload: Any) -> None:
    """Escribe el JSON en --output o en stdout"""
    ctx = click.get_current_context()
    output: Optional[str] = (ctx.find_root().obj or {}).get("output")
    text = to_json(payload)
    if output:
        Path(output).write_text(text + "\n", encoding="utf-8")
        logger.info(f"[COMMAND] Resultado escrito en {output}")
    else:
        click.echo(text)


def load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise click.BadParameter(f"{path}: no existe")
    except json.JSONDecodeError as e:
        raise click.BadParameter(f"{path}: JSON inválido ({e})")


def load_complex(source: str, budget: Optional[int] = None) -> SimplicialComplex:
    """Archivo JSON de complejo o nombre de una triangulación conocida (circle, sphere, torus, …)"""
    if source in NAMED and not Path(source).exists():
        return NAMED[source]()
    return ComplexModel.model_validate(load_json(source)).to_domain(budget)


def parse_delta(X: SimplicialComplex, labels: Sequence[str]) -> Simplex:
    """Etiquetas de la línea de comandos: se comparan como texto con las del complejo"""
    by_text = {str(v): v for v in X.vertices}
    try:
        return X.simplex_of([by_text[str(to_label(v))] for v in labels])
    except KeyError as e:
        raise click.BadParameter(f"Vértice desconocido: {e}")
