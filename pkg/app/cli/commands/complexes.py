"""Comandos sobre complejos simpliciales"""
from typing import Optional

import click
from pydantic import TypeAdapter

from app.cli.io import emit, load_complex, load_json
from app.schemas.complexes import ChainModel, ComplexModel, HomologyModel, SystemSpec, dump, system_to_domain
from app.schemas.matroids import from_label
from app.topology.homology import fundamental_class, homology, orientation_system
from app.topology.simplicial import barycentric_subdivision


_system_adapter = TypeAdapter(SystemSpec)


@click.group("complex")
def group():
    """Subdivisión baricéntrica, homología y clase fundamental"""


@group.command("subdivide")
@click.argument("source")
def subdivide(source: str):
    """X̃ con la celda dual de cada símplice de X"""
    X = load_complex(source)
    dual = barycentric_subdivision(X)
    Xt = dual.subdivision
    emit({
        "subdivision": dump(ComplexModel.from_domain(Xt)),
        "dual_cells": [
            {
                "simplex": [from_label(v) for v in X.label(s)],
                "cell": [[from_label(v) for v in Xt.label(f)] for f in dual.dual_cell(s)],
            }
            for s in X.simplices
        ],
    })


@group.command("homology")
@click.argument("source")
@click.option("--system", "system_path", type=click.Path(dir_okay=False), default=None,
              help="Sistema local JSON (\"trivial\" o edge_signs)")
@click.option("--degree", type=int, default=None)
@click.option("--representatives", is_flag=True, help="Incluye ciclos representantes sobre ℚ")
def homology_cmd(source: str, system_path: Optional[str], degree: Optional[int], representatives: bool):
    X = load_complex(source)
    system = system_to_domain(_system_adapter.validate_python(load_json(system_path)), X) if system_path else None
    results = homology(X, system, degree, representatives)
    emit({"homology": [dump(HomologyModel.from_domain(h, representatives)) for h in results]})


@group.command("fundamental-class")
@click.argument("source")
@click.option("--twisted", is_flag=True, help="Usa el sistema de orientación 𝒟 (variedades no orientables)")
def fundamental(source: str, twisted: bool):
    X = load_complex(source)
    system = orientation_system(X) if twisted else None
    emit(dump(ChainModel.from_domain(fundamental_class(X, system))))
