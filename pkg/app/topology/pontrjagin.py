"""
Ciclos fijadores y ciclos de Pontrjagin

- Sistema de coeficientes π*𝒟 ⊗ 𝒪^{⊗(n−1)} de un ciclo fijador
- Cadena característica π⋆((c·Ω)^{⌣k} ⌢ φ)
- Verificación y búsqueda exacta de ciclos fijadores
- ζ_i = (−1)^i π⋆((½Ω)^{⌣(n+2i−1)} ⌢ φ), que representa p̃_i(X) ⌢ [X]
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, Iterable, Optional, Tuple

from app.core.exceptions import DegreeError, Infeasible, NotACycle, NotFound
from app.topology.chains import Chain, Cochain, boundary, boundary_matrix, cap, cup_power, pushforward
from app.topology.homology import is_homologous
from app.topology.rational_linalg import rank, solve_linear, zeros
from app.topology.simplicial import LocalSystem, SimplicialMap, same_complex

logger = logging.getLogger(__name__)


def twisted_system(n: int, D: LocalSystem, O: LocalSystem) -> LocalSystem:
    """π*𝒟 ⊗ 𝒪^{⊗(n−1)}; las potencias pares de 𝒪 son triviales"""
    same_complex(D.complex, O.complex)
    return D.tensor(O.power(n - 1))


def characteristic_chain(
    Omega: Cochain,
    power: int,
    phi: Chain,
    pi: SimplicialMap,
    scale: Fraction = Fraction(1),
    target_system: Optional[LocalSystem] = None,
) -> Chain:
    """π⋆((scale·Ω)^{⌣power} ⌢ φ)"""
    same_complex(Omega.complex, phi.complex)
    cocycle = cup_power(Omega * scale, power)
    return pushforward(pi, cap(cocycle, phi), target_system)


@dataclass(frozen=True)
class FixingReport:
    passed: bool
    check: Optional[str] = None
    pushed: Optional[Chain] = None
    witness: Optional[Chain] = None


def verify_fixing_cycle(
    pi: SimplicialMap,
    Omega: Cochain,
    phi: Chain,
    fund: Chain,
    n: int,
) -> FixingReport:
    """
    ∂φ = 0 y π⋆(Ω^{n−1} ⌢ φ) homólogo a [X]

    Raises:
        DegreeError: si deg φ ≠ 3n−2 o deg [X] ≠ n
        SystemMismatch: si los sistemas de coeficientes no encajan
    """
    if phi.degree != 3 * n - 2:
        raise DegreeError(f"φ debe tener grado {3 * n - 2}, tiene {phi.degree}")
    if fund.degree != n:
        raise DegreeError(f"[X] debe tener grado {n}, tiene {fund.degree}")
    if phi.degree > 0 and not boundary(phi).is_zero:
        return FixingReport(False, "cycle")
    pushed = characteristic_chain(Omega, n - 1, phi, pi, Fraction(1), fund.system)
    check = is_homologous(pushed, fund)
    if not check.homologous:
        return FixingReport(False, "homologous", pushed=pushed)
    return FixingReport(True, pushed=pushed, witness=check.witness)


@dataclass(frozen=True)
class FixingCycle:
    phi: Chain
    witness: Chain
    solution_dimension: int
    kernel: Tuple[Chain, ...] = ()


def find_fixing_cycle(
    pi: SimplicialMap,
    Omega: Cochain,
    fund: Chain,
    n: int,
    system: Optional[LocalSystem] = None,
) -> FixingCycle:
    """
    Resuelve exactamente ∂φ = 0, π⋆(Ω^{n−1} ⌢ φ) − ∂w = [X]

    El sistema de φ es π*𝒟 ⊗ 𝒪^{⊗(n−1)} salvo que se indique otro. La dimensión del
    conjunto de soluciones (en φ) mide la no unicidad. `kernel` genera esas direcciones: φ más
    cualquier combinación suya sigue siendo un ciclo fijador.

    Raises:
        NotFound: si el sistema no tiene solución en el complejo
    """
    Y, Xt = pi.source, pi.target
    degree = 3 * n - 2
    system = system or twisted_system(n, fund.system.pullback(pi), Omega.system)
    power = cup_power(Omega, n - 1)

    basis = Y.faces(degree)
    rows_X = Xt.positions.get(n, {})
    M = zeros(len(rows_X), len(basis))
    for j, simplex in enumerate(basis):
        image = pushforward(pi, cap(power, Chain(Y, degree, system, {simplex: Fraction(1)})), fund.system)
        for s, x in image.terms.items():
            M[rows_X[s], j] = x

    dphi = boundary_matrix(Y, degree, system) if degree > 0 else zeros(0, len(basis), integral=True)
    dw = boundary_matrix(Xt, n + 1, fund.system)
    n_phi, n_w = len(basis), dw.shape[1]
    A = zeros(dphi.shape[0] + len(rows_X), n_phi + n_w)
    for i in range(dphi.shape[0]):
        for j in range(n_phi):
            A[i, j] = Fraction(dphi[i, j])
    offset = dphi.shape[0]
    for i in range(len(rows_X)):
        for j in range(n_phi):
            A[offset + i, j] = M[i, j]
        for j in range(n_w):
            A[offset + i, n_phi + j] = Fraction(-dw[i, j])
    rhs = [Fraction(0)] * offset + list(fund.vector())

    try:
        solution = solve_linear(A, rhs)
    except Infeasible as e:
        raise NotFound("No existe ciclo fijador en el complejo ensamblado") from e

    phi = Chain.from_vector(Y, degree, list(solution.particular[:n_phi]), system)
    witness = Chain.from_vector(Xt, n + 1, list(solution.particular[n_phi:]), fund.system)
    kernel_phi = [list(k[:n_phi]) for k in solution.kernel]
    dimension = rank(kernel_phi) if kernel_phi and n_phi else 0
    kernel = tuple(
        c for c in (Chain.from_vector(Y, degree, k, system) for k in kernel_phi) if not c.is_zero
    )
    logger.info(f"[FIXING] Ciclo fijador con {len(phi.terms)} términos; dimensión de soluciones {dimension}")
    return FixingCycle(phi, witness, dimension, kernel)


def check_index(i: int, n: int) -> None:
    if i < 1:
        raise DegreeError("El índice debe ser ≥ 1")
    if n - 4 * i < 0:
        raise DegreeError(
            f"ζ_{i} se anula por razones de dimensión (n − 4i = {n - 4 * i} < 0)",
            witness={"index": i, "n": n},
        )


def pontrjagin_cycle(
    i: int,
    pi: SimplicialMap,
    Omega: Cochain,
    phi: Chain,
    n: int,
    target_system: Optional[LocalSystem] = None,
) -> Chain:
    """
    ζ_i = (−1)^i π⋆((½Ω)^{⌣(n+2i−1)} ⌢ φ)

    Raises:
        DegreeError: si n − 4i < 0 (se anula por razones de dimensión) o i < 1
        NotACycle: si el resultado no es un ciclo
    """
    check_index(i, n)
    zeta = characteristic_chain(Omega, n + 2 * i - 1, phi, pi, Fraction(1, 2), target_system)
    if i % 2:
        zeta = -zeta
    if zeta.degree > 0 and not boundary(zeta).is_zero:
        raise NotACycle(f"ζ_{i} no es un ciclo")
    return zeta


def restrict_chain(c: Chain, labels: Iterable[Hashable]) -> Dict[Tuple[Hashable, ...], Fraction]:
    """Términos (por etiquetas) de los símplices contenidos en el conjunto de vértices dado"""
    allowed = set(labels)
    return {k: x for k, x in c.labelled_terms().items() if allowed.issuperset(k)}
