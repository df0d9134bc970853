"""Comandos de ciclos fijadores y ciclos de Pontrjagin"""
from typing import Optional

import click

from app.cli.deps import pontrjagin_service
from app.cli.io import emit, load_complex, load_json
from app.core.exceptions import Unsupported
from app.schemas.complexes import ChainModel, dump
from app.topology.pontrjagin import check_index


@click.group("pont")
def group():
    """Verificación y búsqueda de ciclos fijadores; evaluación de ζ_i"""


def _common(f):
    f = click.argument("source")(f)
    f = click.option("--n", "n", type=int, default=None, help="Dimensión (por defecto dim X)")(f)
    f = click.option("--budget", type=int, default=None, help="Símplices máximos (por defecto SIMPLEX_BUDGET)")(f)
    f = click.option("--strict/--diagnostic", "strict", default=None)(f)
    f = click.option("--mod-p", "mod_p", type=int, default=None, help="Reservado: coeficientes mod p")(f)
    return f


def _pipeline(source: str, n: Optional[int], budget: Optional[int], strict: Optional[bool], mod_p: Optional[int]):
    if mod_p is not None:
        raise Unsupported("Los coeficientes mod p no están implementados", witness={"mod_p": mod_p})
    mode = None if strict is None else ("strict" if strict else "diagnostic")
    return pontrjagin_service().pipeline(load_complex(source), n, budget, mode)


@group.command("verify-fixing")
@_common
@click.argument("phi_path", type=click.Path(dir_okay=False))
def verify_fixing(source, n, budget, strict, mod_p, phi_path: str):
    """∂φ = 0 y π⋆(Ω^{n−1} ⌢ φ) homólogo a [X̃]"""
    p = _pipeline(source, n, budget, strict, mod_p)
    phi = ChainModel.model_validate(load_json(phi_path)).to_chain(p.Y.complex)
    report = pontrjagin_service().verify_fixing(p, phi)
    body = {"status": "pass" if report.passed else "fail"}
    if report.check:
        body["check"] = report.check
    if report.witness is not None:
        body["witness"] = dump(ChainModel.from_domain(report.witness))
    emit(body)


@group.command("find-fixing")
@_common
def find_fixing(source, n, budget, strict, mod_p):
    p = _pipeline(source, n, budget, strict, mod_p)
    fixing = pontrjagin_service().find_fixing(p)
    emit({
        "phi": dump(ChainModel.from_domain(fixing.phi)),
        "witness": dump(ChainModel.from_domain(fixing.witness)),
        "solution_dimension": fixing.solution_dimension,
        "kernel": [dump(ChainModel.from_domain(c)) for c in fixing.kernel],
    })


@group.command("evaluate")
@_common
@click.option("--index", "index", type=int, required=True, help="i en ζ_i")
@click.option("--phi", "phi_path", type=click.Path(dir_okay=False), default=None,
              help="Ciclo fijador (por defecto se busca)")
def evaluate(source, n, budget, strict, mod_p, index: int, phi_path: Optional[str]):
    """ζ_i = (−1)^i π⋆((½Ω)^{n+2i−1} ⌢ φ)"""
    X = load_complex(source)
    check_index(index, X.dim if n is None else n)
    p = _pipeline(source, n, budget, strict, mod_p)
    phi = ChainModel.model_validate(load_json(phi_path)).to_chain(p.Y.complex) if phi_path else None
    zeta = pontrjagin_service().evaluate(p, index, phi)
    emit({"index": index, "zeta": dump(ChainModel.from_domain(zeta))})
