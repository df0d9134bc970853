"""Comandos sobre fibrados en círculos y su cociclo de Chern"""
from typing import Optional

import click

from app.cli.deps import bundle_service
from app.cli.io import emit, load_json
from app.schemas.complexes import BundleModel, ChainModel, dump
from app.schemas.matroids import from_label
from app.topology.bundles import CircleBundle
from app.topology.rational_linalg import format_rational


@click.group("bundle")
def group():
    """Fibrados generados sobre S², Θ, Ω y números de Chern"""


def _bundle(path: Optional[str], euler: Optional[int], fiber_length: Optional[int]) -> CircleBundle:
    if (path is None) == (euler is None):
        raise click.UsageError("Indique un archivo de fibrado o --euler, no ambos")
    if path is not None:
        return BundleModel.model_validate(load_json(path)).to_domain()
    return bundle_service().generate(euler, fiber_length)


def bundle_source(f):
    f = click.argument("path", required=False, type=click.Path(dir_okay=False))(f)
    f = click.option("--euler", type=int, default=None, help="Genera el fibrado sobre S² con este número de Euler")(f)
    f = click.option("--fiber-length", type=int, default=None, help="Vértices por fibra (por defecto FIBER_LENGTH)")(f)
    return f


def omega_mode(f):
    return click.option("--strict/--diagnostic", "strict", default=None,
                        help="Ω estricto (por defecto OMEGA_MODE) o con dispersión de levantamientos")(f)


def _mode(strict: Optional[bool]) -> Optional[str]:
    return None if strict is None else ("strict" if strict else "diagnostic")


@group.command("generate")
@click.option("--euler", type=int, required=True)
@click.option("--fiber-length", type=int, default=None)
@click.option("--equator", type=int, default=None, help="Vértices del ecuador de la base")
def generate(euler: int, fiber_length: Optional[int], equator: Optional[int]):
    bundle = bundle_service().generate(euler, fiber_length, equator)
    emit(dump(BundleModel.from_domain(bundle)))


@group.command("theta")
@bundle_source
def theta_cmd(path: Optional[str], euler: Optional[int], fiber_length: Optional[int]):
    """Θ con coeficientes en ρ*𝒪"""
    bundle = _bundle(path, euler, fiber_length)
    emit(dump(ChainModel.from_domain(bundle_service().theta(bundle))))


@group.command("omega")
@bundle_source
@omega_mode
def omega_cmd(path: Optional[str], euler: Optional[int], fiber_length: Optional[int], strict: Optional[bool]):
    bundle = _bundle(path, euler, fiber_length)
    result = bundle_service().omega(bundle, mode=_mode(strict))
    emit({
        "omega": dump(ChainModel.from_domain(result.omega)),
        "well_defined": result.well_defined,
        "spread": [
            {"simplex": [from_label(v) for v in bundle.Y.label(s)], "values": [format_rational(x) for x in values]}
            for s, values in result.spread.items() if len(values) > 1
        ],
    })


@group.command("chern-number")
@bundle_source
@omega_mode
def chern_number_cmd(path: Optional[str], euler: Optional[int], fiber_length: Optional[int], strict: Optional[bool]):
    """⟨Ω, [Y]⟩"""
    bundle = _bundle(path, euler, fiber_length)
    result = bundle_service().chern(bundle, _mode(strict))
    emit({"chern_number": format_rational(result.chern), "omega_well_defined": result.omega.well_defined})
