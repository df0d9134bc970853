"""Comandos sobre los complejos asociados Y, Z"""
from typing import Optional, Tuple

import click

from app.cli.deps import assembly_service
from app.cli.io import emit, load_complex, load_json, parse_delta
from app.schemas.complexes import ComplexModel, dump
from app.schemas.matroids import YVertexModel, ZVertexModel, from_label, u_delta_json
from app.topology.associated import validate_y_vertex, validate_z_vertex


@click.group("assoc")
def group():
    """Vértices (Δ, t, y, z), posets U_Δ y ensamblado de Y y Z"""


def _dimension(X, n: Optional[int]) -> int:
    return X.dim if n is None else n


@group.command("validate-vertex")
@click.argument("source")
@click.argument("vertex_path", type=click.Path(dir_okay=False))
@click.option("--n", "n", type=int, default=None, help="Dimensión (por defecto dim X)")
def validate_vertex(source: str, vertex_path: str, n: Optional[int]):
    """Valida un vértice de Y (sin z) o de Z"""
    X = load_complex(source)
    data = load_json(vertex_path)
    if "z" in data:
        report = validate_z_vertex(X, _dimension(X, n), ZVertexModel.model_validate(data).to_domain(X))
    else:
        report = validate_y_vertex(X, _dimension(X, n), YVertexModel.model_validate(data).to_domain(X))
    emit(report.to_dict())


@group.command("u-delta")
@click.argument("source")
@click.option("--delta", "delta", multiple=True, required=True, help="Vértice de Δ (repetible)")
@click.option("--n", "n", type=int, default=None)
@click.option("--budget", type=int, default=None, help="Vértices máximos de St Δ (por defecto ENUMERATION_BUDGET)")
def u_delta(source: str, delta: Tuple[str, ...], n: Optional[int], budget: Optional[int]):
    """Estrato realizable de U_Δ (marcado como incompleto)"""
    X = load_complex(source)
    U = assembly_service().u_delta(X, _dimension(X, n), parse_delta(X, delta), budget)
    emit(u_delta_json(X, U))


@group.command("local-y")
@click.argument("source")
@click.option("--delta", "delta", multiple=True, required=True)
@click.option("--n", "n", type=int, default=None)
@click.option("--budget", type=int, default=None, help="Símplices máximos (por defecto SIMPLEX_BUDGET)")
def local_y(source: str, delta: Tuple[str, ...], n: Optional[int], budget: Optional[int]):
    """Cx U_Δ × DΔ con la imagen de cada vértice en Y"""
    X = load_complex(source)
    local = assembly_service().local_y(X, _dimension(X, n), parse_delta(X, delta), budget)
    K = local.complex.relabel([f"L{i}" for i in range(len(local.complex.vertices))])
    emit({
        "complex": dump(ComplexModel.from_domain(K)),
        "labels": {f"L{i}": dump(YVertexModel.from_domain(X, v)) for i, v in enumerate(local.images)},
    })


@group.command("assemble")
@click.argument("source")
@click.option("--n", "n", type=int, default=None)
@click.option("--budget", type=int, default=None)
def assemble(source: str, n: Optional[int], budget: Optional[int]):
    """Y, Z, ρ: Z → Y y π: Y → X̃"""
    X = load_complex(source)
    Y, Z = assembly_service().assemble(X, _dimension(X, n), budget)
    Xt = Y.dual.subdivision
    emit({
        "Y": {
            "complex": dump(ComplexModel.from_domain(Y.complex)),
            "labels": {f"Y{i}": dump(YVertexModel.from_domain(X, v)) for i, v in enumerate(Y.labels)},
        },
        "Z": {
            "complex": dump(ComplexModel.from_domain(Z.complex)),
            "labels": {f"Z{i}": dump(ZVertexModel.from_domain(X, v)) for i, v in enumerate(Z.labels)},
        },
        "rho": [[f"Z{i}", f"Y{j}"] for i, j in enumerate(Z.rho.vertex_map)],
        "pi": [[f"Y{i}", from_label(Xt.vertices[j])] for i, j in enumerate(Y.pi.vertex_map)],
    })
