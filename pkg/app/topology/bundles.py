"""
Fibrados simpliciales en círculos ρ: Z → Y

- Orientación canónica de cada fibra y sistema local 𝒪 de orientaciones de fibra
- Fibrados a partir de los complejos asociados ensamblados
- Generador de fibrados sobre S² con número de Euler dado (modelos de espacios lente)
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from app.core.exceptions import FiberNotCircle, NotABundle, SystemMismatch
from app.topology.associated import AssembledZ
from app.topology.chains import Chain
from app.topology.homology import is_homologous
from app.topology.simplicial import LocalSystem, SimplicialComplex, SimplicialMap
from app.topology.triangulations import suspension

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CircleBundle:
    """
    Fibración simplicial con fibra círculo

    Attributes:
        Z, Y: espacio total y base
        rho: proyección simplicial
        orientation: sistema 𝒪 sobre Y
        fibers: para cada vértice de Y, la fibra como sucesión cíclica orientada de vértices de Z
    """
    Z: SimplicialComplex
    Y: SimplicialComplex
    rho: SimplicialMap
    orientation: LocalSystem
    fibers: Dict[int, Tuple[int, ...]]

    def fiber_complex(self, v: int) -> SimplicialComplex:
        return self.Z.subcomplex(self.rho.preimage((v,)))

    def fiber_chain(self, v: int) -> Chain:
        """Ciclo orientado de la fibra sobre v como 1-cadena de Z (coeficientes triviales)"""
        return Chain(self.Z, 1, LocalSystem.trivial(self.Z), cycle_terms(self.fibers[v]))


def cycle_terms(cycle: Sequence[int]) -> Dict[Tuple[int, int], Fraction]:
    terms: Dict[Tuple[int, int], Fraction] = {}
    for a, b in zip(cycle, tuple(cycle[1:]) + (cycle[0],)):
        edge = (min(a, b), max(a, b))
        terms[edge] = Fraction(1 if a < b else -1)
    return terms


# ============== Orientación de fibras ==============

def oriented_fiber(Z: SimplicialComplex, rho: SimplicialMap, v: int) -> Tuple[int, ...]:
    """
    Recorre la fibra sobre v desde su vértice mínimo hacia el menor de sus vecinos

    Raises:
        FiberNotCircle: si la fibra no es un círculo simplicial
    """
    simplices = rho.preimage((v,))
    vertices = sorted({s[0] for s in simplices if len(s) == 1})
    edges = [s for s in simplices if len(s) == 2]
    label = str(rho.target.vertices[v])
    if any(len(s) > 2 for s in simplices) or len(vertices) < 3:
        raise FiberNotCircle(f"La fibra sobre {label} no es un círculo", witness={"vertex": label})
    neighbours: Dict[int, List[int]] = {w: [] for w in vertices}
    for a, b in edges:
        neighbours[a].append(b)
        neighbours[b].append(a)
    if any(len(ns) != 2 for ns in neighbours.values()):
        raise FiberNotCircle(f"La fibra sobre {label} tiene vértices de grado ≠ 2", witness={"vertex": label})
    start = vertices[0]
    cycle = [start, min(neighbours[start])]
    while True:
        a, b = neighbours[cycle[-1]]
        nxt = a if a != cycle[-2] else b
        if nxt == start:
            break
        cycle.append(nxt)
    if len(cycle) != len(vertices):
        raise FiberNotCircle(f"La fibra sobre {label} no es conexa", witness={"vertex": label})
    return tuple(cycle)


def orient_fibers(Z: SimplicialComplex, Y: SimplicialComplex, rho: SimplicialMap) -> Tuple[Dict[int, Tuple[int, ...]], LocalSystem]:
    """
    Orientaciones canónicas de las fibras y el sistema 𝒪

    𝒪(u,v) = +1 si las fibras orientadas sobre u y v son homólogas en ρ⁻¹(uv),
    −1 si son antihomólogas.

    Raises:
        FiberNotCircle, NotABundle
    """
    fibers = {v: oriented_fiber(Z, rho, v) for v in range(len(Y.vertices))}
    signs: Dict[Tuple[int, int], int] = {}
    for u, v in Y.faces(1):
        piece = Z.subcomplex(rho.preimage((u, v)))
        trivial = LocalSystem.trivial(piece)
        fu, fv = (
            Chain(piece, 1, trivial, cycle_terms([piece.index[Z.vertices[w]] for w in fibers[x]]))
            for x in (u, v)
        )
        if is_homologous(fu, fv).homologous:
            signs[(u, v)] = 1
        elif is_homologous(fu, -fv).homologous:
            signs[(u, v)] = -1
        else:
            raise NotABundle(
                "Las fibras orientadas no se transportan a lo largo de la arista",
                witness={"edge": [str(Y.vertices[u]), str(Y.vertices[v])]},
            )
    try:
        orientation = LocalSystem.from_signs(Y, signs)
    except SystemMismatch as e:
        raise NotABundle(f"Las orientaciones de fibra no forman un sistema local: {e.detail}", witness=e.witness) from e
    return fibers, orientation


def make_bundle(Z: SimplicialComplex, Y: SimplicialComplex, rho: SimplicialMap) -> CircleBundle:
    fibers, orientation = orient_fibers(Z, Y, rho)
    return CircleBundle(Z, Y, rho, orientation, fibers)


def bundle_from_assembly(assembled: AssembledZ) -> CircleBundle:
    """ρ: Z → Y de los complejos asociados, con fibras orientadas"""
    return make_bundle(assembled.complex, assembled.base.complex, assembled.rho)


# ============== Generador sobre S² ==============

def _principal(value: Fraction, m: int) -> Fraction:
    """Representante de value mod m en (−m/2, m/2]"""
    r = value % m
    return r - m if r > Fraction(m, 2) else r


def _connection(N: int, euler: int, m: int) -> Dict[Tuple[str, str], Fraction]:
    """
    Conexión semientera sobre la suspensión del N-ágono

    Norte: A(n→e_i) = 1/2, A(e_i→e_{i+1}) = q = ±1/2. Sur: A(s→e_i) = y_i con
    incrementos ±1 en los primeros |p|·m pasos, de modo que el flujo total es p·m.
    """
    sign = 1 if euler >= 0 else -1
    q = Fraction(sign, 2)
    A: Dict[Tuple[str, str], Fraction] = {}

    def put(a: str, b: str, value: Fraction) -> None:
        A[(a, b)] = value
        A[(b, a)] = -value

    y = Fraction(1, 2)
    for i in range(N):
        e, f = f"e{i}", f"e{(i + 1) % N}"
        put("n", e, Fraction(1, 2))
        put(e, f, q)
        put("s", e, y)
        y += sign if i < abs(euler) * m else 0
    return A


def _sweep(triangle: Sequence[str], A: Dict[Tuple[str, str], Fraction], m: int) -> List[Tuple[Tuple[str, int], ...]]:
    """Tetraedros del trozo Δ² × S¹ sobre un triángulo de la base"""
    u, v, w = triangle
    F = _principal(A[(u, v)] + A[(v, w)] + A[(w, u)], m)
    phase = {u: Fraction(0)}
    phase[v] = A[(u, v)] - F / 3
    phase[w] = phase[v] + A[(v, w)] - F / 3
    events = sorted(
        ((j + phase[x]) % m, x, j) for x in triangle for j in range(m)
    )
    current = {}
    for _, x, j in events:
        current[x] = j
    tetrahedra = []
    for _, x, j in events:
        before = tuple((y, current[y]) for y in triangle)
        tetrahedra.append(before + ((x, j),))
        current[x] = j
    return tetrahedra


def generate_circle_bundle(euler: int, fiber_length: int = 3, equator: Optional[int] = None) -> CircleBundle:
    """
    Fibrado en círculos sobre S² (suspensión de un N-ágono) con número de Euler `euler`

    Cada fibra es un m-ágono; sobre cada triángulo de la base se barre Δ² × S¹ en el
    orden cíclico de alturas j + φ_x, con fases dadas por la conexión. El espacio total
    tiene H₁ = ℤ/|p| (ℤ para p = 0).
    """
    m = fiber_length
    if m < 3:
        raise ValueError("Las fibras necesitan al menos 3 vértices")
    N = equator or max(4, m * abs(euler))
    if N < max(4, m * abs(euler)):
        raise ValueError(f"El ecuador necesita al menos {max(4, m * abs(euler))} vértices")
    Y = suspension(N)
    A = _connection(N, euler, m)

    z_labels = [f"{x}:{j}" for x in Y.vertices for j in range(m)]
    position = {label: i for i, label in enumerate(z_labels)}
    tetrahedra = []
    for tri in Y.faces(2):
        for tet in _sweep(Y.label(tri), A, m):
            tetrahedra.append([position[f"{x}:{j}"] for x, j in tet])
    Z = SimplicialComplex.from_maximal(z_labels, tetrahedra)
    rho = SimplicialMap(Z, Y, tuple(i // m for i in range(len(z_labels))))
    bundle = make_bundle(Z, Y, rho)
    logger.info(f"[BUNDLE] Fibrado generado: p={euler}, m={m}, N={N}, Z={Z!r}")
    return bundle
