"""
Matroides orientados por covectores

- Signos y vectores de signos sobre un conjunto base ordenado
- Axiomas 1–4 (cero, negación, composición, eliminación) con reporte de testigo
- Predicados derivados: elementos no nulos, independencia, rango, envolvente convexa
- Cocientes fuertes (⇒), especializaciones débiles (⇝) y cocientes de rango 1
- Realización exacta a partir de vectores racionales
- Posets y complejos de orden
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from app.core.exceptions import BudgetExceeded, GroundSetMismatch, NotAPoset, NotRankTwo
from app.topology.rational_linalg import RationalLike, feasible_strict, qmatrix, to_rational

logger = logging.getLogger(__name__)


class Sign(IntEnum):
    MINUS = -1
    ZERO = 0
    PLUS = 1

    def __neg__(self) -> "Sign":
        return Sign(-int(self))

    @property
    def char(self) -> str:
        return _SIGN_CHARS[int(self)]


_SIGN_CHARS = {-1: "-", 0: "0", 1: "+"}
_CHAR_SIGNS = {"-": -1, "−": -1, "0": 0, "+": 1}

# Un vector de signos es una tupla de enteros en {-1, 0, 1}; el orden de tuplas
# coincide con el orden lexicográfico canónico − < 0 < +.
SignVector = Tuple[int, ...]


# ============== Vectores de signos ==============

def sign_vector(values: Iterable[int]) -> SignVector:
    out = tuple(int(x) for x in values)
    if any(x not in (-1, 0, 1) for x in out):
        raise ValueError(f"Vector de signos inválido: {out}")
    return out


def parse_sign_vector(text: str) -> SignVector:
    """Decodifica "+0-" en (1, 0, -1)"""
    try:
        return tuple(_CHAR_SIGNS[ch] for ch in text)
    except KeyError as e:
        raise ValueError(f"Carácter de signo inválido en {text!r}: {e}") from e


def format_sign_vector(c: SignVector) -> str:
    return "".join(_SIGN_CHARS[x] for x in c)


def negate(c: SignVector) -> SignVector:
    return tuple(-x for x in c)


def compose(c: SignVector, d: SignVector) -> SignVector:
    """(c∘d)(v) = c(v) si c(v) ≠ 0, si no d(v)"""
    if len(c) != len(d):
        raise GroundSetMismatch(f"Longitudes distintas: {len(c)} y {len(d)}")
    return tuple(x if x != 0 else y for x, y in zip(c, d))


def support(c: SignVector) -> FrozenSet[int]:
    return frozenset(i for i, x in enumerate(c) if x != 0)


def is_zeroing(c: SignVector, d: SignVector) -> bool:
    """¿Se obtiene d de c anulando algunas entradas no nulas?"""
    return all(y == 0 or y == x for x, y in zip(c, d))


# ============== Matroide orientado ==============

@dataclass(frozen=True)
class OrientedMatroid:
    """
    Matroide orientado dado por su conjunto de covectores

    Los covectores se guardan ordenados (forma canónica), de modo que la igualdad
    de matroides es igualdad de tuplas.
    """
    elements: Tuple[Hashable, ...]
    covectors: Tuple[SignVector, ...]

    def __post_init__(self):
        elements = tuple(self.elements)
        if len(set(elements)) != len(elements):
            raise ValueError("Elementos repetidos en el conjunto base")
        covectors = tuple(sorted({sign_vector(c) for c in self.covectors}))
        if any(len(c) != len(elements) for c in covectors):
            raise GroundSetMismatch("Covector de longitud distinta al conjunto base")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "covectors", covectors)

    @classmethod
    def from_strings(cls, elements: Sequence[Hashable], covectors: Iterable[str]) -> "OrientedMatroid":
        return cls(tuple(elements), tuple(parse_sign_vector(s) for s in covectors))

    @classmethod
    def zero(cls, elements: Sequence[Hashable]) -> "OrientedMatroid":
        """Matroide de rango 0: solo el covector nulo"""
        return cls(tuple(elements), ((0,) * len(elements),))

    @cached_property
    def covector_set(self) -> FrozenSet[SignVector]:
        return frozenset(self.covectors)

    @cached_property
    def index(self) -> Dict[Hashable, int]:
        return {v: i for i, v in enumerate(self.elements)}

    @cached_property
    def matrix(self) -> np.ndarray:
        """Covectores como matriz int8 (|L| x |V|)"""
        if not self.covectors:
            return np.zeros((0, len(self.elements)), dtype=np.int8)
        return np.array(self.covectors, dtype=np.int8).reshape(len(self.covectors), len(self.elements))

    @cached_property
    def rank(self) -> int:
        return rank(self)

    def indices(self, subset: Iterable[Hashable]) -> List[int]:
        try:
            return sorted(self.index[v] for v in subset)
        except KeyError as e:
            raise GroundSetMismatch(f"Elemento fuera del conjunto base: {e}") from e

    def as_strings(self) -> List[str]:
        return [format_sign_vector(c) for c in self.covectors]

    def zero_out(self, subset: Iterable[Hashable]) -> "OrientedMatroid":
        """Anula las entradas en `subset` y recanonicaliza"""
        idx = set(self.indices(subset))
        return OrientedMatroid(
            self.elements,
            tuple(tuple(0 if i in idx else x for i, x in enumerate(c)) for c in self.covectors),
        )

    def __repr__(self) -> str:
        return f"OrientedMatroid(|V|={len(self.elements)}, |L|={len(self.covectors)})"


def _same_ground(M: OrientedMatroid, N: OrientedMatroid) -> None:
    if M.elements != N.elements:
        raise GroundSetMismatch(f"Conjuntos base distintos: {list(M.elements)} y {list(N.elements)}")


# ============== Axiomas ==============

@dataclass(frozen=True)
class AxiomReport:
    passed: bool
    axiom: Optional[int] = None
    witness: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        body: Dict[str, Any] = {"status": "pass" if self.passed else "fail"}
        if not self.passed:
            body["axiom"] = self.axiom
            body["witness"] = self.witness
        return body


def _elimination_witness(mat: np.ndarray, c: SignVector, d: SignVector, v: int) -> bool:
    """¿Existe e en L con las cuatro condiciones del axioma 4 para (c, d, v)?"""
    mask = np.zeros(len(c), dtype=bool)
    required = np.zeros(len(c), dtype=np.int8)
    mask[v] = True
    for w, (x, y) in enumerate(zip(c, d)):
        if w == v:
            continue
        if x == 0 and y == 0:
            mask[w] = True
        elif x >= 0 and y >= 0:
            mask[w], required[w] = True, 1
        elif x <= 0 and y <= 0:
            mask[w], required[w] = True, -1
    return bool(np.any(np.all(mat[:, mask] == required[mask], axis=1)))


def check_axioms(elements: Sequence[Hashable], covectors: Iterable[SignVector]) -> AxiomReport:
    """
    Verifica los axiomas 1–4 sobre un conjunto de covectores

    Returns:
        AxiomReport con el primer axioma que falla y su testigo
    """
    elements = tuple(elements)
    L = sorted({sign_vector(c) for c in covectors})
    if any(len(c) != len(elements) for c in L):
        raise GroundSetMismatch("Covector de longitud distinta al conjunto base")
    Lset = set(L)
    zero = (0,) * len(elements)

    if zero not in Lset:
        return AxiomReport(False, 1, {"missing": format_sign_vector(zero)})

    for c in L:
        if negate(c) not in Lset:
            return AxiomReport(False, 2, {"c": format_sign_vector(c)})

    for c, d in itertools.product(L, repeat=2):
        if compose(c, d) not in Lset:
            return AxiomReport(False, 3, {"c": format_sign_vector(c), "d": format_sign_vector(d)})

    mat = np.array(L, dtype=np.int8).reshape(len(L), len(elements))
    for c, d in itertools.product(L, repeat=2):
        for v, (x, y) in enumerate(zip(c, d)):
            if x == 1 and y == -1 and not _elimination_witness(mat, c, d, v):
                return AxiomReport(False, 4, {
                    "c": format_sign_vector(c),
                    "d": format_sign_vector(d),
                    "element": elements[v],
                })
    logger.debug(f"[AXIOMS] {len(L)} covectores verificados")
    return AxiomReport(True)


# ============== Realización ==============

@dataclass(frozen=True)
class VectorConfiguration:
    """Vectores racionales de dimensión común indexados por etiquetas"""
    elements: Tuple[Hashable, ...]
    vectors: Tuple[Tuple[Fraction, ...], ...]
    dim: int = field(default=0)

    def __post_init__(self):
        vectors = tuple(tuple(to_rational(x) for x in v) for v in self.vectors)
        if len(vectors) != len(self.elements):
            raise ValueError("Número de vectores distinto al de elementos")
        dims = {len(v) for v in vectors}
        if len(dims) > 1:
            raise ValueError(f"Vectores de dimensiones distintas: {sorted(dims)}")
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "dim", dims.pop() if dims else self.dim)

    @classmethod
    def from_mapping(cls, mapping: Dict[Hashable, Sequence[RationalLike]]) -> "VectorConfiguration":
        return cls(tuple(mapping.keys()), tuple(tuple(v) for v in mapping.values()))

    def key(self) -> Tuple[Any, ...]:
        return (self.elements, self.vectors)


def _prefix_feasible(vectors: Sequence[Tuple[Fraction, ...]], signs: Sequence[int], dim: int) -> bool:
    eq = [vectors[i] for i, s in enumerate(signs) if s == 0]
    pos = [tuple(s * x for x in vectors[i]) for i, s in enumerate(signs) if s != 0]
    return feasible_strict(qmatrix(eq, cols=dim), qmatrix(pos, cols=dim), cols=dim)


def from_vectors(config: VectorConfiguration, budget: int = 12) -> OrientedMatroid:
    """
    Matroide orientado realizado por una configuración de vectores

    Un vector de signos s es covector si existe un funcional c con signo(c·v_i) = s_i.
    Se recorre el árbol de prefijos descartando prefijos no factibles.

    Raises:
        BudgetExceeded: si |V| supera el presupuesto
    """
    n = len(config.elements)
    if n > budget:
        raise BudgetExceeded(f"|V| = {n} supera el presupuesto de enumeración ({budget})")

    if config.dim == 0:
        return OrientedMatroid.zero(config.elements)

    found: List[SignVector] = []
    stack: List[Tuple[int, ...]] = [()]
    checks = 0
    while stack:
        prefix = stack.pop()
        if len(prefix) == n:
            found.append(prefix)
            continue
        for s in (1, 0, -1):
            candidate = prefix + (s,)
            # la negación de un prefijo factible es factible
            if candidate[:1] == (-1,):
                continue
            checks += 1
            if _prefix_feasible(config.vectors[: len(candidate)], candidate, config.dim):
                stack.append(candidate)

    covectors = set(found) | {negate(c) for c in found}
    logger.debug(f"[REALIZE] |V|={n}, d={config.dim}: {len(covectors)} covectores ({checks} pruebas)")
    return OrientedMatroid(config.elements, tuple(covectors))


# ============== Predicados derivados ==============

def nonzero_elements(M: OrientedMatroid) -> List[Hashable]:
    if not M.covectors:
        return []
    mask = np.any(M.matrix != 0, axis=0)
    return [v for v, flag in zip(M.elements, mask) if flag]


def is_independent(M: OrientedMatroid, subset: Iterable[Hashable]) -> bool:
    """
    S es independiente si existen covectores c_1..c_j con c_i(v_k) = 0 ⇔ i ≠ k

    Las condiciones para cada k son independientes entre sí, así que basta un
    covector por elemento de S.
    """
    idx = M.indices(subset)
    if not idx:
        return True
    sub = M.matrix[:, idx]
    for k in range(len(idx)):
        others = [j for j in range(len(idx)) if j != k]
        ok = (sub[:, k] != 0) & np.all(sub[:, others] == 0, axis=1)
        if not np.any(ok):
            return False
    return True


def rank(M: OrientedMatroid) -> int:
    """Tamaño de un independiente maximal (crecimiento voraz)"""
    chosen: List[Hashable] = []
    for v in M.elements:
        if is_independent(M, chosen + [v]):
            chosen.append(v)
    return len(chosen)


def convex_hull(M: OrientedMatroid, subset: Iterable[Hashable]) -> List[Hashable]:
    """{v : − ∈ c(S) siempre que c(v) = −}"""
    idx = M.indices(subset)
    mat = M.matrix
    if mat.shape[0] == 0:
        return list(M.elements)
    has_minus = np.any(mat[:, idx] == -1, axis=1) if idx else np.zeros(mat.shape[0], dtype=bool)
    hull = []
    for j, v in enumerate(M.elements):
        if np.all(has_minus[mat[:, j] == -1]):
            hull.append(v)
    return hull


def is_strong_quotient(M: OrientedMatroid, N: OrientedMatroid) -> bool:
    """M ⇒ N: todo covector de N es covector de M"""
    _same_ground(M, N)
    return N.covector_set <= M.covector_set


def is_weak_specialization(M: OrientedMatroid, N: OrientedMatroid) -> bool:
    """M ⇝ N: mismo rango y cada covector de N se obtiene anulando entradas de uno de M"""
    _same_ground(M, N)
    if M.rank != N.rank:
        return False
    if N.covector_set <= M.covector_set:
        return True
    mat = M.matrix
    for d in N.covectors:
        if d in M.covector_set:
            continue
        darr = np.array(d, dtype=np.int8)
        nz = darr != 0
        if not np.any(np.all(mat[:, nz] == darr[nz], axis=1)):
            return False
    return True


def _canonical_direction(c: SignVector) -> SignVector:
    for x in c:
        if x != 0:
            return c if x > 0 else negate(c)
    return c


def rank1_strong_quotients(y: OrientedMatroid) -> List[OrientedMatroid]:
    """Matroides {0, c, −c} para cada covector no nulo c de y, módulo c ↔ −c"""
    zero = (0,) * len(y.elements)
    directions = sorted({_canonical_direction(c) for c in y.covectors if c != zero})
    return [OrientedMatroid(y.elements, (zero, c, negate(c))) for c in directions]


def fiber_circle(y: OrientedMatroid) -> nx.Graph:
    """
    Grafo de especializaciones entre los cocientes de rango 1 de y

    Los nodos son índices en rank1_strong_quotients(y) con atributo "matroid";
    hay arista cuando uno se especializa en el otro.

    Raises:
        NotRankTwo: si rank(y) ≠ 2
    """
    if y.rank != 2:
        raise NotRankTwo(f"El matroide tiene rango {y.rank}", witness={"rank": y.rank})
    quotients = rank1_strong_quotients(y)
    graph = nx.Graph()
    for i, z in enumerate(quotients):
        graph.add_node(i, matroid=z, direction=format_sign_vector(z.covectors[-1]))
    for i, j in itertools.combinations(range(len(quotients)), 2):
        c, d = quotients[i].covectors[-1], quotients[j].covectors[-1]
        if is_zeroing(c, d) or is_zeroing(negate(c), d) or is_zeroing(d, c) or is_zeroing(negate(d), c):
            graph.add_edge(i, j)
    return graph


def is_single_cycle(graph: nx.Graph) -> bool:
    """Conexo, con al menos 3 vértices y todos de grado 2"""
    return (
        graph.number_of_nodes() >= 3
        and nx.is_connected(graph)
        and all(deg == 2 for _, deg in graph.degree())
    )


# ============== Posets ==============

@dataclass(frozen=True)
class Poset:
    """Orden parcial estricto dado como conjunto explícito de pares (a, b) con a < b"""
    elements: Tuple[Hashable, ...]
    relation: FrozenSet[Tuple[Hashable, Hashable]]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "relation", frozenset(self.relation))

    @classmethod
    def from_order(cls, elements: Sequence[Hashable], less: Callable[[Any, Any], bool]) -> "Poset":
        """Construye el poset a partir de un predicado de orden estricto"""
        elements = tuple(elements)
        pairs = {(a, b) for a in elements for b in elements if a != b and less(a, b)}
        return cls(elements, frozenset(pairs))

    def validate(self) -> None:
        members = set(self.elements)
        for a, b in self.relation:
            if a not in members or b not in members:
                raise NotAPoset(f"Par fuera del conjunto: ({a!r}, {b!r})")
            if a == b:
                raise NotAPoset(f"Relación no irreflexiva en {a!r}", witness=[repr(a)])
            if (b, a) in self.relation:
                raise NotAPoset(f"Relación no antisimétrica entre {a!r} y {b!r}")
        successors: Dict[Hashable, set] = {}
        for a, b in self.relation:
            successors.setdefault(a, set()).add(b)
        for a, b in self.relation:
            for c in successors.get(b, ()):
                if (a, c) not in self.relation:
                    raise NotAPoset(f"Relación no transitiva: {a!r} < {b!r} < {c!r}")

    def hasse_graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self.elements)))
        pos = {v: i for i, v in enumerate(self.elements)}
        graph.add_edges_from((pos[a], pos[b]) for a, b in self.relation)
        return graph

    def linear_extension(self) -> List[int]:
        """Índices en un orden total compatible (el menor índice disponible primero)"""
        return list(nx.lexicographical_topological_sort(self.hasse_graph()))


def order_complex(P: Poset, budget: Optional[int] = None):
    """
    Complejo de orden: los k-símplices son las cadenas x₀ < … < x_k

    Los vértices quedan en el orden de una extensión lineal del poset.

    Raises:
        NotAPoset: si la relación no es un orden parcial estricto
    """
    from app.topology.simplicial import SimplicialComplex

    P.validate()
    order = P.linear_extension()
    labels = [P.elements[i] for i in order]
    pos = {v: i for i, v in enumerate(labels)}
    less = {(pos[a], pos[b]) for a, b in P.relation}
    above: Dict[int, set] = {i: set() for i in range(len(labels))}
    for a, b in less:
        above[a].add(b)
    # relaciones de cubrimiento: las cadenas maximales solo las usan
    covers: Dict[int, List[int]] = {
        a: sorted(b for b in bs if not any((c, b) in less for c in bs))
        for a, bs in above.items()
    }

    maximal: List[Tuple[int, ...]] = []

    def extend(chain: Tuple[int, ...]) -> None:
        nxt = covers[chain[-1]]
        if not nxt:
            maximal.append(chain)
            return
        for b in nxt:
            extend(chain + (b,))

    has_below = {b for _, b in less}
    minimal = [i for i in range(len(labels)) if i not in has_below]
    for i in minimal:
        extend((i,))
    return SimplicialComplex.from_maximal(labels, maximal, budget=budget)
