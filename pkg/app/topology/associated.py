"""
Complejos asociados Y, Z y X̃ de una variedad simplicial

- Validadores de vértices (Δ, t, y[, z]) y de diagramas de especializaciones
- Posets U_Δ realizados por inmersiones racionales de la estrella de Δ
- Mapas de pegado U_Δ → U_Δ′ (anular elementos fuera de St Δ′)
- Estructura producto local Cx U_Δ × DΔ (triangulación en escalera)
- Ensamblado de Y y Z con las proyecciones ρ: Z → Y y π: Y → X̃

El conjunto base de todos los matroides son los vértices de X, en su orden global.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Hashable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from app.core.exceptions import BudgetExceeded, ComplexMismatch, InvalidImage
from app.topology.oriented_matroid import (
    OrientedMatroid,
    Poset,
    VectorConfiguration,
    convex_hull,
    from_vectors,
    is_independent,
    is_strong_quotient,
    is_weak_specialization,
    nonzero_elements,
    order_complex,
    rank1_strong_quotients,
)
from app.topology.rational_linalg import feasible_strict, qmatrix, rank
from app.topology.simplicial import (
    DualCellStructure,
    Simplex,
    SimplicialComplex,
    SimplicialMap,
    barycentric_subdivision,
    product_complex,
)

logger = logging.getLogger(__name__)

Realizer = Callable[[VectorConfiguration], OrientedMatroid]


def realize_ground_set(config: VectorConfiguration) -> OrientedMatroid:
    """Realiza sobre todo el conjunto base; los elementos fuera de la estrella son vectores nulos"""
    return from_vectors(config, budget=len(config.elements))


# ============== Tipos ==============

@dataclass(frozen=True)
class UElement:
    """Diagrama t ⇒ y de U_Δ"""
    t: OrientedMatroid
    y: OrientedMatroid


@dataclass(frozen=True)
class YVertex:
    delta: Simplex
    t: OrientedMatroid
    y: OrientedMatroid

    @property
    def element(self) -> UElement:
        return UElement(self.t, self.y)


@dataclass(frozen=True)
class ZVertex:
    delta: Simplex
    t: OrientedMatroid
    y: OrientedMatroid
    z: OrientedMatroid

    @property
    def base(self) -> YVertex:
        return YVertex(self.delta, self.t, self.y)


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    check: Optional[str] = None
    witness: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        body: Dict[str, Any] = {"status": "pass" if self.passed else "fail"}
        if not self.passed:
            body["check"] = self.check
            body["witness"] = self.witness
        return body


_PASS = ValidationReport(True)


def _fail(check: str, **witness: Any) -> ValidationReport:
    return ValidationReport(False, check, {k: v for k, v in witness.items()})


# ============== Estrellas ==============

def closed_star(X: SimplicialComplex, delta: Sequence[int]) -> List[Simplex]:
    """Todas las caras de los símplices que contienen a Δ"""
    faces = set()
    for s in X.cofaces(delta):
        for k in range(1, len(s) + 1):
            faces.update(itertools.combinations(s, k))
    return sorted(faces, key=lambda s: (len(s), s))


def _check_delta(X: SimplicialComplex, delta: Sequence[int]) -> Simplex:
    delta = tuple(sorted(delta))
    if delta not in X.simplex_set:
        raise ComplexMismatch(f"{list(delta)} no es un símplice de X")
    return delta


def _is_acyclic(t: OrientedMatroid) -> bool:
    """Existe un covector sin valores − y positivo en todos los elementos no nulos"""
    nonzero = set(nonzero_elements(t))
    support = {i for i, v in enumerate(t.elements) if v in nonzero}
    covered = set()
    for c in t.covectors:
        if all(x >= 0 for x in c):
            covered.update(i for i, x in enumerate(c) if x > 0)
    return covered == support


# ============== Validación ==============

def _check_pair(X: SimplicialComplex, n: int, delta: Simplex, t: OrientedMatroid,
                y: OrientedMatroid, z: Optional[OrientedMatroid]) -> ValidationReport:
    ground = tuple(X.vertices)
    for name, M in (("t", t), ("y", y), ("z", z)):
        if M is not None and M.elements != ground:
            return _fail("ground_set", matroid=name)
    if t.rank != n + 1:
        return _fail("rank_t", expected=n + 1, actual=t.rank)
    if y.rank != 2:
        return _fail("rank_y", expected=2, actual=y.rank)
    if z is not None and z.rank != 1:
        return _fail("rank_z", expected=1, actual=z.rank)
    if not _is_acyclic(t):
        return _fail("acyclic")

    star = closed_star(X, delta)
    star_vertices = {X.vertices[v] for s in star for v in s}
    nonzero = set(nonzero_elements(t))
    if nonzero != star_vertices:
        return _fail(
            "condition_1",
            extra=sorted(map(str, nonzero - star_vertices)),
            missing=sorted(map(str, star_vertices - nonzero)),
        )
    for face in star:
        labels = X.label(face)
        if not is_independent(t, labels):
            return _fail("condition_2_independent", simplex=[str(v) for v in labels])
        hull = set(convex_hull(t, labels)) & nonzero
        if hull != set(labels):
            return _fail("condition_2_hull", simplex=[str(v) for v in labels],
                         hull=sorted(map(str, hull)))
    if not is_strong_quotient(t, y):
        return _fail("t_to_y")
    if z is not None and not is_strong_quotient(y, z):
        return _fail("y_to_z")
    return _PASS


def validate_y_vertex(X: SimplicialComplex, n: int, v: YVertex) -> ValidationReport:
    return _check_pair(X, n, _check_delta(X, v.delta), v.t, v.y, None)


def validate_z_vertex(X: SimplicialComplex, n: int, v: ZVertex) -> ValidationReport:
    """
    Verifica, en orden: rangos n+1, 2 y 1; covector sin −; condición 1 (elementos no
    nulos de t = vértices de St Δ); condición 2 (independencia y envolvente convexa
    para cada Δ′ de la estrella); cocientes fuertes t ⇒ y ⇒ z
    """
    return _check_pair(X, n, _check_delta(X, v.delta), v.t, v.y, v.z)


def validate_diagram(X: SimplicialComplex, n: int, diagram: Sequence[Any]) -> ValidationReport:
    """Columnas válidas y filas Δ₀ ⊆ Δ₁ ⊆ …, t₀ ⇝ t₁ ⇝ …, y₀ ⇝ …, z₀ ⇝ …"""
    for i, v in enumerate(diagram):
        report = validate_z_vertex(X, n, v) if isinstance(v, ZVertex) else validate_y_vertex(X, n, v)
        if not report.passed:
            return ValidationReport(False, f"column_{i}:{report.check}", report.witness)
    for i, (a, b) in enumerate(zip(diagram, diagram[1:])):
        if not set(a.delta) <= set(b.delta):
            return _fail("delta_row", position=i)
        if not is_weak_specialization(a.t, b.t):
            return _fail("t_row", position=i)
        if not is_weak_specialization(a.y, b.y):
            return _fail("y_row", position=i)
        if isinstance(a, ZVertex) and isinstance(b, ZVertex) and not is_weak_specialization(a.z, b.z):
            return _fail("z_row", position=i)
    return _PASS


# ============== U_Δ ==============

@dataclass(frozen=True)
class UDeltaPoset:
    delta: Simplex
    elements: Tuple[UElement, ...]
    poset: Poset
    incomplete: bool = True

    def order_complex(self) -> SimplicialComplex:
        return order_complex(self.poset)


def _homogenize(point: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    return tuple(point) + (Fraction(1),)


def _sample_embeddings(
    X: SimplicialComplex, n: int, delta: Simplex, samples: int, seed: int, coord_range: int,
) -> Iterator[Dict[int, Tuple[Fraction, ...]]]:
    """Coordenadas enteras aleatorias de la estrella y su reflexión x₁ ↦ −x₁, trasladadas
    para que un punto interior de Δ vaya a 0"""
    rng = np.random.default_rng([seed, *delta])
    star = X.star_vertices(delta)
    for _ in range(samples):
        coords = rng.integers(-coord_range, coord_range + 1, size=(len(star), n))
        weights = rng.integers(1, coord_range + 1, size=len(delta))
        for reflect in (False, True):
            points = {}
            for v, row in zip(star, coords):
                p = [Fraction(int(x)) for x in row]
                if reflect:
                    p[0] = -p[0]
                points[v] = p
            total = sum(int(w) for w in weights)
            center = [sum(int(w) * points[v][j] for v, w in zip(delta, weights)) / total for j in range(n)]
            yield {v: tuple(p[j] - center[j] for j in range(n)) for v, p in points.items()}


def _is_embedding(X: SimplicialComplex, delta: Simplex, points: Dict[int, Tuple[Fraction, ...]]) -> bool:
    tops = [s for s in X.cofaces(delta) if s in X.maximal]
    for s in tops:
        vectors = [_homogenize(points[v]) for v in s]
        if rank(qmatrix(vectors)) != len(s):
            return False
    for s, r in itertools.combinations(tops, 2):
        # los interiores abiertos se cortan si Σλ·(e(v),1) = Σμ·(e(u),1) con λ, μ > 0
        columns = [_homogenize(points[v]) for v in s] + [tuple(-x for x in _homogenize(points[u])) for u in r]
        dim = len(columns)
        aeq = [[col[i] for col in columns] for i in range(len(columns[0]))]
        apos = [[int(i == j) for j in range(dim)] for i in range(dim)]
        if feasible_strict(qmatrix(aeq, cols=dim), qmatrix(apos, cols=dim), cols=dim):
            return False
    return True


def _projections(rng: np.random.Generator, n: int, count: int, coord_range: int) -> Iterator[np.ndarray]:
    produced = 0
    while produced < count:
        P = rng.integers(-coord_range, coord_range + 1, size=(2, n + 1))
        if rank(qmatrix(P.tolist())) == 2:
            produced += 1
            yield P


def _less_u(a: UElement, b: UElement) -> bool:
    return a != b and is_weak_specialization(a.t, b.t) and is_weak_specialization(a.y, b.y)


def build_u_delta(
    X: SimplicialComplex,
    n: int,
    delta: Sequence[int],
    budget: int = 12,
    samples: int = 64,
    seed: int = 0,
    coord_range: int = 3,
    realize: Optional[Realizer] = None,
) -> UDeltaPoset:
    """
    Estrato realizable de U_Δ

    Cada inmersión e: St Δ → ℚ^n lineal por símplices (con interiores disjuntos) da
    t por los vectores (e(v), 1) y 0 fuera de la estrella; y se obtiene proyectando
    sobre ℚ^{n+1}/F para subespacios racionales F de dimensión n−1 (para n = 1, y = t).
    El resultado queda marcado como incompleto.

    Raises:
        BudgetExceeded: si la estrella tiene más vértices que el presupuesto
    """
    delta = _check_delta(X, delta)
    star = X.star_vertices(delta)
    if len(star) > budget:
        raise BudgetExceeded(
            f"St Δ tiene {len(star)} vértices; presupuesto {budget}",
            witness={"star": len(star), "budget": budget},
        )

    realize = realize or realize_ground_set
    zero = (Fraction(0),) * (n + 1)
    rng = np.random.default_rng([seed, 1, *delta])
    found: Dict[UElement, None] = {}
    accepted = 0
    for points in _sample_embeddings(X, n, delta, samples, seed, coord_range):
        if not _is_embedding(X, delta, points):
            continue
        vectors = [_homogenize(points[v]) if v in points else zero for v in range(len(X.vertices))]
        t = realize(VectorConfiguration(X.vertices, tuple(vectors)))
        if n == 1:
            candidates = [t]
        else:
            candidates = []
            for P in _projections(rng, n, 4, coord_range):
                projected = [tuple(sum(int(P[i, j]) * w[j] for j in range(n + 1)) for i in range(2)) for w in vectors]
                candidates.append(realize(VectorConfiguration(X.vertices, tuple(projected))))
        for y in candidates:
            u = UElement(t, y)
            if u in found:
                continue
            report = _check_pair(X, n, delta, t, y, None)
            if report.passed:
                found[u] = None
            else:
                logger.debug(f"[UDELTA] Candidato descartado en {report.check}")
        accepted += 1

    elements = tuple(sorted(found, key=lambda u: (u.t.covectors, u.y.covectors)))
    poset = Poset.from_order(elements, _less_u)
    logger.info(
        f"[UDELTA] Δ={list(X.label(delta))}: {len(elements)} elementos "
        f"({accepted} inmersiones aceptadas)"
    )
    return UDeltaPoset(delta, elements, poset, incomplete=True)


# ============== Pegado ==============

def glue_map(X: SimplicialComplex, n: int, delta: Sequence[int], delta_prime: Sequence[int]) -> Callable[[UElement], UElement]:
    """
    U_Δ → U_Δ′ para Δ ⊆ Δ′: anula los elementos de St Δ que no están en St Δ′

    La función devuelta lanza InvalidImage si el resultado no es válido para Δ′.
    """
    delta = _check_delta(X, delta)
    delta_prime = _check_delta(X, delta_prime)
    if not set(delta) <= set(delta_prime):
        raise ComplexMismatch(f"{list(delta)} no es cara de {list(delta_prime)}")
    removed = [X.vertices[v] for v in set(X.star_vertices(delta)) - set(X.star_vertices(delta_prime))]

    def apply(u: UElement) -> UElement:
        image = UElement(u.t.zero_out(removed), u.y.zero_out(removed))
        report = _check_pair(X, n, delta_prime, image.t, image.y, None)
        if not report.passed:
            raise InvalidImage(
                f"La imagen no es válida sobre {list(X.label(delta_prime))}: {report.check}",
                witness=report.witness,
            )
        return image

    return apply


# ============== Producto local ==============

@dataclass(frozen=True)
class LocalY:
    """Cx U_Δ × DΔ con etiquetas ((t, y), Δ′) y su imagen en vértices de Y"""
    delta: Simplex
    complex: SimplicialComplex
    images: Tuple[YVertex, ...]


def coface_poset(X: SimplicialComplex, delta: Sequence[int]) -> Poset:
    """{Δ′ ⊇ Δ} ordenado por inclusión; su complejo de orden es la celda dual cerrada"""
    cofaces = sorted(X.cofaces(delta), key=lambda s: (len(s), s))
    return Poset.from_order(cofaces, lambda a, b: a != b and set(a) <= set(b))


def build_local_Y(
    X: SimplicialComplex,
    n: int,
    delta: Sequence[int],
    budget: int = 12,
    u_delta: Optional[UDeltaPoset] = None,
    simplex_budget: Optional[int] = None,
    **sampling: Any,
) -> LocalY:
    delta = _check_delta(X, delta)
    u_delta = u_delta or build_u_delta(X, n, delta, budget=budget, **sampling)
    U = order_complex(u_delta.poset)
    D = order_complex(coface_poset(X, delta))
    local = product_complex(U, D, budget=simplex_budget)
    images = []
    for u, coface in local.vertices:
        image = glue_map(X, n, delta, coface)(u)
        images.append(YVertex(coface, image.t, image.y))
    return LocalY(delta, local, tuple(images))


# ============== Ensamblado ==============

@dataclass(frozen=True, eq=False)
class AssembledY:
    X: SimplicialComplex
    n: int
    dual: DualCellStructure
    complex: SimplicialComplex
    labels: Tuple[YVertex, ...]
    pi: SimplicialMap
    u_deltas: Dict[Simplex, UDeltaPoset] = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class AssembledZ:
    base: AssembledY
    complex: SimplicialComplex
    labels: Tuple[ZVertex, ...]
    rho: SimplicialMap


class _SpecializationMemo:
    """Memoriza ⇝ entre matroides durante un ensamblado"""

    def __init__(self):
        self._memo: Dict[Tuple[OrientedMatroid, OrientedMatroid], bool] = {}

    def __call__(self, a: OrientedMatroid, b: OrientedMatroid) -> bool:
        if a == b:
            return True
        key = (a, b)
        if key not in self._memo:
            self._memo[key] = is_weak_specialization(a, b)
        return self._memo[key]


def _y_sort_key(v: YVertex) -> Tuple[Any, ...]:
    return (len(v.delta), v.delta, v.t.covectors, v.y.covectors)


def assemble_Y(
    X: SimplicialComplex,
    n: int,
    budget: int = 1_000_000,
    u_deltas: Optional[Dict[Simplex, UDeltaPoset]] = None,
    enumeration_budget: int = 12,
    **sampling: Any,
) -> AssembledY:
    """
    Ensambla Y como complejo de orden de los vértices (Δ, t, y) con el orden por
    componentes (Δ ⊆, t ⇝, y ⇝); incluye las imágenes de los mapas de pegado

    Coincide con pegar los trozos `build_local_Y` (Cx U_Δ × DΔ) a lo largo de `glue_map`.
    Un símplice de un trozo es una cadena de U_Δ × DΔ y glue_map es monótono, así que su
    imagen es una cadena aquí. Recíprocamente, una cadena con mínimo (Δ₀, t₀, y₀) tiene los
    demás vértices sobre cocaras de Δ₀ como imágenes por glue_map de elementos de U_Δ₀ (por
    eso se añaden esas imágenes al conjunto de vértices) y proviene del trozo de Δ₀. Dos
    trozos se identifican exactamente donde sus imágenes coinciden, que es el cociente del
    pegado.

    Raises:
        BudgetExceeded: si el complejo supera `budget` símplices
    """
    dual = barycentric_subdivision(X)
    if not X.simplices:
        empty = SimplicialComplex.empty()
        return AssembledY(X, n, dual, empty, (), SimplicialMap(empty, dual.subdivision, ()), {})

    u_deltas = dict(u_deltas or {})
    for delta in X.simplices:
        if delta not in u_deltas:
            u_deltas[delta] = build_u_delta(X, n, delta, budget=enumeration_budget, **sampling)

    vertices: Dict[YVertex, None] = {}
    for delta, U in u_deltas.items():
        for u in U.elements:
            vertices[YVertex(delta, u.t, u.y)] = None
            for coface in X.cofaces(delta):
                if coface != delta:
                    image = glue_map(X, n, delta, coface)(u)
                    vertices[YVertex(coface, image.t, image.y)] = None
    ordered = sorted(vertices, key=_y_sort_key)

    spec = _SpecializationMemo()

    def less(a: YVertex, b: YVertex) -> bool:
        return a != b and set(a.delta) <= set(b.delta) and spec(a.t, b.t) and spec(a.y, b.y)

    Y = order_complex(Poset.from_order(ordered, less), budget=budget)
    labels = tuple(Y.vertices)
    Y = Y.relabel([f"Y{i}" for i in range(len(labels))])
    pi = SimplicialMap(Y, dual.subdivision, tuple(dual.barycenter(v.delta) for v in labels))
    logger.info(f"[ASSEMBLY] Y ensamblado: {Y!r}")
    return AssembledY(X, n, dual, Y, labels, pi, u_deltas)


def assemble_Z(assembled: AssembledY, budget: int = 1_000_000) -> AssembledZ:
    """Z: sobre cada vértice de Y, los cocientes de rango 1 de y; ρ olvida z"""
    if not assembled.labels:
        empty = SimplicialComplex.empty()
        return AssembledZ(assembled, empty, (), SimplicialMap(empty, assembled.complex, ()))

    vertices: List[ZVertex] = []
    for v in assembled.labels:
        for z in rank1_strong_quotients(v.y):
            vertices.append(ZVertex(v.delta, v.t, v.y, z))
    y_position = {v: i for i, v in enumerate(assembled.labels)}
    y_less = set(assembled.complex.faces(1))
    spec = _SpecializationMemo()

    def less(a: ZVertex, b: ZVertex) -> bool:
        if a == b:
            return False
        i, j = y_position[a.base], y_position[b.base]
        if i != j and (min(i, j), max(i, j)) not in y_less:
            return False
        if i != j and not (set(a.delta) <= set(b.delta) and spec(a.t, b.t) and spec(a.y, b.y)):
            return False
        return spec(a.z, b.z)

    ordered = sorted(vertices, key=lambda v: (y_position[v.base], v.z.covectors))
    Z = order_complex(Poset.from_order(ordered, less), budget=budget)
    labels = tuple(Z.vertices)
    Z = Z.relabel([f"Z{i}" for i in range(len(labels))])
    rho = SimplicialMap(Z, assembled.complex, tuple(y_position[v.base] for v in labels))
    logger.info(f"[ASSEMBLY] Z ensamblado: {Z!r}")
    return AssembledZ(assembled, Z, labels, rho)


def y_vertices_over(assembled: AssembledY, delta: Sequence[int]) -> List[int]:
    """Vértices de Y cuya proyección es el baricentro de Δ"""
    target = assembled.dual.barycenter(tuple(delta))
    return [i for i, b in enumerate(assembled.pi.vertex_map) if b == target]
