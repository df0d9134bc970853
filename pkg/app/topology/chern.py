"""
Cociclo de Chern combinatorio de un fibrado en círculos

Θ vale ±1/m en cada arista de la fibra sobre un vértice (integra 1 alrededor de la
fibra orientada); en las aristas verticales sobre una arista e de Y es la solución de
norma mínima de δΘ = 0 en los 2-símplices de ρ⁻¹(e). Ω se define en Y por ρ*Ω = δΘ.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from app.core.exceptions import FiberNotCircle, Infeasible, InfeasibleCocycle, InconsistentLifts, NoLift, NotABundle
from app.topology.bundles import CircleBundle, cycle_terms
from app.topology.chains import Chain, Cochain, coboundary, evaluate, orient, _face_coefficient
from app.topology.rational_linalg import min_norm_solution, zeros
from app.topology.simplicial import LocalSystem, Simplex

logger = logging.getLogger(__name__)

Mapper = Callable[[Callable, Iterable], Iterable]


def fiber_theta(bundle: CircleBundle, v: int) -> Cochain:
    """
    1-cocadena de la fibra sobre v: ±1/m en cada arista, suma 1 alrededor de la fibra

    Raises:
        FiberNotCircle: si la fibra tiene menos de 3 aristas
    """
    cycle = bundle.fibers.get(v)
    if cycle is None or len(cycle) < 3:
        raise FiberNotCircle(f"La fibra sobre {bundle.Y.vertices[v]} no es un círculo")
    fiber = bundle.fiber_complex(v)
    m = len(cycle)
    local = [fiber.index[bundle.Z.vertices[w]] for w in cycle]
    terms = {edge: sign / m for edge, sign in cycle_terms(local).items()}
    return Cochain(fiber, 1, LocalSystem.trivial(fiber), terms)


def _fixed_values(bundle: CircleBundle) -> Dict[Simplex, Fraction]:
    """Valores de Θ en las aristas de las fibras, en índices de Z"""
    values: Dict[Simplex, Fraction] = {}
    for v, cycle in bundle.fibers.items():
        if len(cycle) < 3:
            raise FiberNotCircle(f"La fibra sobre {bundle.Y.vertices[v]} no es un círculo")
        m = len(cycle)
        for edge, sign in cycle_terms(cycle).items():
            values[edge] = sign / m
    return values


def theta_on_edge(
    bundle: CircleBundle,
    edge: Simplex,
    fixed: Dict[Simplex, Fraction],
) -> Dict[Simplex, Fraction]:
    """
    Coeficientes de norma mínima en las aristas verticales sobre una arista de Y

    Raises:
        InfeasibleCocycle: si δΘ = 0 no tiene solución sobre ρ⁻¹(edge)
    """
    system = bundle.orientation.pullback(bundle.rho)
    piece = bundle.rho.preimage(edge)
    unknowns = [s for s in piece if len(s) == 2 and s not in fixed]
    column = {s: j for j, s in enumerate(unknowns)}
    triangles = [s for s in piece if len(s) == 3]
    if not unknowns:
        return {}

    A = zeros(len(triangles), len(unknowns))
    rhs: List[Fraction] = []
    for i, tri in enumerate(triangles):
        constant = Fraction(0)
        for k in range(3):
            face = tri[:k] + tri[k + 1:]
            coeff = _face_coefficient(tri, k, system)
            if face in column:
                A[i, column[face]] += coeff
            else:
                constant += coeff * fixed.get(face, Fraction(0))
        rhs.append(-constant)
    try:
        solution = min_norm_solution(A, rhs)
    except Infeasible as e:
        labels = [str(v) for v in bundle.Y.label(edge)]
        raise InfeasibleCocycle(f"δΘ = 0 no tiene solución sobre la arista {labels}", witness={"edge": labels}) from e
    return {s: x for s, x in zip(unknowns, solution)}


def theta(bundle: CircleBundle, mapper: Optional[Mapper] = None) -> Cochain:
    """
    Θ en Z con coeficientes en ρ*𝒪

    Args:
        bundle: fibrado
        mapper: función tipo map (por ejemplo executor.map) para resolver las aristas
    """
    mapper = mapper or map
    fixed = _fixed_values(bundle)
    edges = list(bundle.Y.faces(1))
    pieces = list(mapper(lambda e: theta_on_edge(bundle, e, fixed), edges))
    terms = dict(fixed)
    for edge, values in zip(edges, pieces):
        terms.update(values)
    result = Cochain(bundle.Z, 1, bundle.orientation.pullback(bundle.rho), terms)
    logger.debug(f"[THETA] {len(terms)} coeficientes, {len(edges)} sistemas por arista")
    return result


@dataclass(frozen=True)
class OmegaResult:
    omega: Cochain
    spread: Dict[Simplex, Tuple[Fraction, ...]] = field(default_factory=dict)

    @property
    def well_defined(self) -> bool:
        return all(len(values) == 1 for values in self.spread.values())


def omega(bundle: CircleBundle, Theta: Cochain, mode: str = "strict") -> OmegaResult:
    """
    Ω(σ) = δΘ(σ̃) para cada levantamiento σ̃ de σ, corregido por el signo de la
    permutación y el transporte en 𝒪

    En modo "strict" todos los levantamientos deben coincidir; en "diagnostic" se usa
    el primero y se reporta la dispersión.

    Raises:
        NoLift: si algún 2-símplice de Y no tiene levantamiento
        InconsistentLifts: en modo estricto, si los levantamientos no coinciden
    """
    if mode not in ("strict", "diagnostic"):
        raise ValueError(f"Modo desconocido: {mode}")
    dTheta = coboundary(Theta)
    lifts: Dict[Simplex, List[Fraction]] = {s: [] for s in bundle.Y.faces(2)}
    for tri in bundle.Z.faces(2):
        image = [bundle.rho.vertex_map[w] for w in tri]
        if len(set(image)) < 3:
            continue
        simplex, sign = orient(image, bundle.orientation)
        lifts[simplex].append(sign * dTheta[tri])

    terms: Dict[Simplex, Fraction] = {}
    spread: Dict[Simplex, Tuple[Fraction, ...]] = {}
    for simplex, values in lifts.items():
        labels = [str(v) for v in bundle.Y.label(simplex)]
        if not values:
            raise NoLift(f"El 2-símplice {labels} no tiene levantamiento", witness={"simplex": labels})
        distinct = tuple(sorted(set(values)))
        spread[simplex] = distinct
        if len(distinct) > 1 and mode == "strict":
            raise InconsistentLifts(
                f"Los levantamientos de {labels} dan valores distintos",
                witness={"simplex": labels, "values": [str(x) for x in distinct]},
            )
        terms[simplex] = values[0]
    result = Cochain(bundle.Y, 2, bundle.orientation, terms)
    if not coboundary(result).is_zero:
        logger.warning("[OMEGA] δΩ ≠ 0")
    return OmegaResult(result, spread)


def chern_number(Omega: Cochain, cycle: Chain) -> Fraction:
    """
    ⟨Ω, c⟩; entero para ciclos enteros sin torsión del sistema

    Raises:
        NotABundle: si el emparejamiento de un ciclo entero sin torsión no es entero
    """
    value = evaluate(Omega, cycle)
    integral = cycle.system.is_trivial and all(x.denominator == 1 for x in cycle.terms.values())
    if integral and value.denominator != 1:
        raise NotABundle(f"El número de Chern {value} no es entero", witness={"value": str(value)})
    return value
