"""Comandos sobre matroides orientados"""
from typing import Optional

import click

from app.cli.deps import cache_service
from app.cli.io import emit, load_json
from app.core.config import get_settings
from app.schemas.matroids import MatroidModel, VectorConfigurationModel, from_label, matroid_json, matroids_json
from app.topology.oriented_matroid import (
    check_axioms,
    fiber_circle,
    is_single_cycle,
    nonzero_elements,
    rank1_strong_quotients,
)


@click.group("matroid")
def group():
    """Covectores, realización por vectores y cocientes"""


@group.command("check")
@click.argument("path", type=click.Path(dir_okay=False))
def check(path: str):
    """Verifica los axiomas 1–4 (el primer fallo con su testigo)"""
    model = MatroidModel.model_validate(load_json(path))
    report = check_axioms(model.to_domain().elements, model.sign_vectors())
    emit(report.to_dict())


@group.command("realize")
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--budget", type=int, default=None, help="|V| máximo (por defecto ENUMERATION_BUDGET)")
def realize(path: str, budget: Optional[int]):
    """Matroide de una configuración de vectores racionales"""
    config = VectorConfigurationModel.model_validate(load_json(path)).to_domain()
    budget = get_settings().ENUMERATION_BUDGET if budget is None else budget
    emit(matroid_json(cache_service().realize(config, budget)))


@group.command("rank")
@click.argument("path", type=click.Path(dir_okay=False))
def rank(path: str):
    M = MatroidModel.model_validate(load_json(path)).to_domain()
    emit({"rank": M.rank, "nonzero": [from_label(v) for v in nonzero_elements(M)]})


@group.command("quotients")
@click.argument("path", type=click.Path(dir_okay=False))
def quotients(path: str):
    """Cocientes fuertes de rango 1 (uno por par ±c)"""
    M = MatroidModel.model_validate(load_json(path)).to_domain()
    emit({"quotients": matroids_json(rank1_strong_quotients(M))})


@group.command("fiber-circle")
@click.argument("path", type=click.Path(dir_okay=False))
def circle(path: str):
    """Grafo de especializaciones entre los cocientes de rango 1 de un matroide de rango 2"""
    M = MatroidModel.model_validate(load_json(path)).to_domain()
    graph = fiber_circle(M)
    emit({
        "vertices": [graph.nodes[i]["direction"] for i in sorted(graph.nodes)],
        "edges": sorted([min(e), max(e)] for e in graph.edges),
        "is_circle": is_single_cycle(graph),
    })
