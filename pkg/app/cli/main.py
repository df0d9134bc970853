"""
Punto de entrada de la CLI

stdout lleva solo JSON; los logs van a stderr. Código de salida 0 en éxito, 1 en error
del dominio (cuerpo JSON estructurado) y 2 en error de uso.
"""
import logging
from typing import Optional

import click

from app.cli.commands import assoc, bundle, complexes, matroid, pont, series
from app.cli.io import to_json
from app.core.config import get_settings
from app.core.exceptions import PontrjaginError
from app.core.logging_config import setup_logging

logger = logging.getLogger(__name__)


class DomainGroup(click.Group):
    """Convierte los errores del dominio en JSON con código 1 y las entradas inválidas en errores de uso"""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except PontrjaginError as e:
            logger.error(f"[ERROR] {type(e).__name__}: {e.detail}")
            click.echo(to_json(e.to_dict()))
            ctx.exit(1)
        except ValueError as e:
            raise click.UsageError(str(e), ctx)


@click.group(cls=DomainGroup)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
              help="Archivo de salida (por defecto stdout)")
@click.option("--log-level", default=None, help="Nivel de logging (por defecto LOG_LEVEL)")
@click.pass_context
def cli(ctx: click.Context, output: Optional[str], log_level: Optional[str]):
    """Clases de Pontrjagin combinatorias en aritmética exacta"""
    s = get_settings()
    setup_logging(log_level or s.LOG_LEVEL, s.LOG_TO_FILE, s.LOGS_DIR)
    ctx.obj = {"output": output}
    logger.info(f"[COMMAND] {ctx.invoked_subcommand}")


for _module in (matroid, complexes, assoc, bundle, pont, series):
    cli.add_command(_module.group)


def main() -> None:
    cli(prog_name="pontrjagin")


if __name__ == "__main__":
    main()
