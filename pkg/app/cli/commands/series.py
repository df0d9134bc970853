"""Comandos de la serie total de Pontrjagin"""
import click

from app.cli.io import emit
from app.topology.series import GradedSeries, inverse_classes, pontrjagin_from_inverse


@click.group("series")
def group():
    """Inversión de 1 + p₁ + p₂ + ⋯"""


@group.command("invert")
@click.option("--degree", type=click.IntRange(min=1), required=True)
def invert(degree: int):
    """
    p̃_i en función de p₁, …, p_degree

    Los polinomios salen en ASCII: potencias con ^ y signo menos "-" (p. ej. ptilde1 = "-p1").
    """
    emit(inverse_classes(degree))


@group.command("from-inverse")
@click.option("--degree", type=click.IntRange(min=1), required=True)
def from_inverse(degree: int):
    """p_i en función de p̃₁, …, p̃_degree (mismo formato ASCII que invert)"""
    emit(pontrjagin_from_inverse(GradedSeries.symbolic(degree, "ptilde")).as_ascii("p"))
