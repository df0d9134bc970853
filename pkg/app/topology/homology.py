"""
Homología simplicial con coeficientes locales

- Números de Betti sobre ℚ y torsión entera por forma normal de Smith
- Representantes de ciclos de una base de H_k(X; 𝓛 ⊗ ℚ)
- Prueba de homología con cadena testigo (∂w = c₁ − c₂)
- Clase fundamental de una pseudovariedad y sistema de orientación 𝒟
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.core.exceptions import DegreeError, Infeasible, NotOrientable, NotPseudomanifold
from app.topology.chains import Chain, _face_coefficient, boundary, boundary_matrix
from app.topology.rational_linalg import invariant_factors, nullspace, rank, solve_linear
from app.topology.simplicial import LocalSystem, Simplex, SimplicialComplex, same_complex

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HomologyResult:
    degree: int
    betti: int
    torsion: Tuple[int, ...] = ()
    representatives: Tuple[Chain, ...] = field(default_factory=tuple)


def _representatives(X: SimplicialComplex, k: int, system: LocalSystem) -> List[Chain]:
    """Ciclos cuyas clases forman una base de H_k sobre ℚ"""
    dk = boundary_matrix(X, k, system)
    cycles = nullspace(dk, cols=len(X.faces(k))) if k > 0 else [
        np.array([Fraction(int(i == j)) for i in range(len(X.faces(0)))], dtype=object)
        for j in range(len(X.faces(0)))
    ]
    upper = boundary_matrix(X, k + 1, system)
    columns = [upper[:, j] for j in range(upper.shape[1])]
    base_rank = rank(np.column_stack(columns)) if columns else 0
    chosen: List[np.ndarray] = []
    for z in cycles:
        candidate = columns + chosen + [z]
        if rank(np.column_stack(candidate)) > base_rank + len(chosen):
            chosen.append(z)
    return [Chain.from_vector(X, k, list(z), system) for z in chosen]


def homology(
    X: SimplicialComplex,
    system: Optional[LocalSystem] = None,
    k: Optional[int] = None,
    representatives: bool = False,
) -> List[HomologyResult]:
    """
    Homología de X con coeficientes en el sistema local (trivial por defecto)

    Args:
        X: complejo simplicial
        system: sistema local de signos
        k: grado concreto; None calcula todos los grados 0..dim X
        representatives: si True incluye ciclos representantes sobre ℚ
    """
    system = system or LocalSystem.trivial(X)
    same_complex(system.complex, X)
    degrees = range(X.dim + 1) if k is None else [k]
    results = []
    for d in degrees:
        if d < 0 or d > X.dim:
            results.append(HomologyResult(degree=d, betti=0))
            continue
        dk = boundary_matrix(X, d, system)
        dk1 = boundary_matrix(X, d + 1, system)
        r_k = rank(dk) if d > 0 else 0
        r_k1 = rank(dk1) if dk1.shape[1] else 0
        betti = len(X.faces(d)) - r_k - r_k1
        torsion = tuple(x for x in invariant_factors(dk1) if x > 1) if r_k1 else ()
        reps = tuple(_representatives(X, d, system)) if representatives else ()
        results.append(HomologyResult(degree=d, betti=betti, torsion=torsion, representatives=reps))
    logger.debug(f"[HOMOLOGY] {X!r}: betti={[r.betti for r in results]}")
    return results


def betti_numbers(X: SimplicialComplex, system: Optional[LocalSystem] = None) -> List[int]:
    return [r.betti for r in homology(X, system)]


@dataclass(frozen=True)
class HomologyCheck:
    homologous: bool
    witness: Optional[Chain] = None


def is_homologous(c1: Chain, c2: Chain) -> HomologyCheck:
    """Resuelve ∂w = c₁ − c₂; si hay solución w es el testigo"""
    difference = c1 - c2
    X, k = difference.complex, difference.degree
    if difference.is_zero:
        return HomologyCheck(True, Chain.zero(X, k + 1, difference.system))
    upper = boundary_matrix(X, k + 1, difference.system)
    try:
        solution = solve_linear(upper, list(difference.vector()))
    except Infeasible:
        return HomologyCheck(False)
    witness = Chain.from_vector(X, k + 1, list(solution.particular), difference.system)
    return HomologyCheck(True, witness)


# ============== Clase fundamental ==============

def _top_and_facets(X: SimplicialComplex) -> Tuple[Tuple[Simplex, ...], Dict[Simplex, List[Simplex]]]:
    n = X.dim
    tops = X.faces(n)
    if len(X.maximal) != len(tops):
        lower = next(s for s in X.maximal if len(s) - 1 < n)
        raise NotPseudomanifold(
            "El complejo no es puro",
            witness={"simplex": [str(v) for v in X.label(lower)]},
        )
    shared: Dict[Simplex, List[Simplex]] = {}
    for s in tops:
        for i in range(len(s)):
            shared.setdefault(s[:i] + s[i + 1:], []).append(s)
    if n > 0:
        for face in X.faces(n - 1):
            count = len(shared.get(face, []))
            if count != 2:
                raise NotPseudomanifold(
                    f"Una cara de codimensión 1 está en {count} símplices maximales",
                    witness={"simplex": [str(v) for v in X.label(face)], "count": count},
                )
    return tops, shared


def _facet_coefficient(top: Simplex, face: Simplex, system: LocalSystem) -> int:
    i = next((j for j in range(len(face)) if top[j] != face[j]), len(face))
    return _face_coefficient(top, i, system)


def fundamental_class(X: SimplicialComplex, system: Optional[LocalSystem] = None) -> Chain:
    """
    Suma de los n-símplices orientados coherentemente (con coeficientes en `system`)

    Raises:
        NotPseudomanifold: si alguna (n−1)-cara no está en exactamente dos n-símplices
        NotOrientable: si la propagación de signos encuentra un conflicto
    """
    system = system or LocalSystem.trivial(X)
    same_complex(system.complex, X)
    if X.dim < 0:
        return Chain.zero(X, 0, system)
    tops, shared = _top_and_facets(X)
    n = X.dim
    coeff: Dict[Simplex, int] = {}
    for start in tops:
        if start in coeff:
            continue
        coeff[start] = 1
        queue = deque([start])
        while queue:
            s = queue.popleft()
            for i in range(len(s) if n > 0 else 0):
                face = s[:i] + s[i + 1:]
                other = next(t for t in shared[face] if t != s)
                wanted = -coeff[s] * _face_coefficient(s, i, system) * _facet_coefficient(other, face, system)
                if other not in coeff:
                    coeff[other] = wanted
                    queue.append(other)
                elif coeff[other] != wanted:
                    raise NotOrientable(
                        "No existe orientación coherente",
                        witness={"simplex": [str(v) for v in X.label(other)]},
                    )
    result = Chain(X, n, system, {s: Fraction(x) for s, x in coeff.items()})
    if n > 0 and not boundary(result).is_zero:
        raise NotOrientable("La suma orientada no es un ciclo")
    return result


def _star_orientation(X: SimplicialComplex, v: int, shared: Dict[Simplex, List[Simplex]]) -> Dict[Simplex, int]:
    """Orientación coherente (coeficientes triviales) de los n-símplices que contienen v"""
    trivial = LocalSystem.trivial(X)
    tops = [s for s in X.faces(X.dim) if v in s]
    coeff: Dict[Simplex, int] = {tops[0]: 1}
    queue = deque([tops[0]])
    while queue:
        s = queue.popleft()
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            if v not in face:
                continue
            other = next(t for t in shared[face] if t != s)
            wanted = -coeff[s] * _face_coefficient(s, i, trivial) * _facet_coefficient(other, face, trivial)
            if other not in coeff:
                coeff[other] = wanted
                queue.append(other)
            elif coeff[other] != wanted:
                raise NotOrientable(
                    "La estrella de un vértice no es orientable",
                    witness={"vertex": str(X.vertices[v])},
                )
    return coeff


def orientation_system(X: SimplicialComplex) -> LocalSystem:
    """
    Sistema de orientación 𝒟 de una pseudovariedad

    Trivial si X es orientable; en otro caso s(u,v) compara las orientaciones
    coherentes de las estrellas de u y v en un n-símplice común.
    """
    try:
        fundamental_class(X)
        return LocalSystem.trivial(X)
    except NotOrientable:
        pass
    _, shared = _top_and_facets(X)
    stars = {v: _star_orientation(X, v, shared) for v in range(len(X.vertices))}
    signs: Dict[Tuple[int, int], int] = {}
    for u, v in X.faces(1):
        common = next(s for s in stars[u] if s in stars[v])
        signs[(u, v)] = stars[u][common] * stars[v][common]
    system = LocalSystem.from_signs(X, signs)
    logger.info(f"[ORIENTATION] Sistema de orientación con {len(system.negative)} aristas negativas")
    return system


def check_degree(c: Chain, degree: int) -> None:
    if c.degree != degree:
        raise DegreeError(f"Se esperaba grado {degree}, la cadena tiene grado {c.degree}")
