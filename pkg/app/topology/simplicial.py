"""
Complejos simpliciales ordenados, aplicaciones simpliciales y sistemas locales

Cada complejo fija un orden total global de sus vértices (el orden de `vertices`);
los símplices se guardan como tuplas crecientes de índices. Todas las convenciones
de signo (Alexander–Whitney, orientaciones, transporte) dependen de ese orden.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from app.core.exceptions import BudgetExceeded, ComplexMismatch, SystemMismatch

logger = logging.getLogger(__name__)

Simplex = Tuple[int, ...]


# ============== Complejo simplicial ==============

@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    """
    Complejo simplicial con orden global de vértices

    Attributes:
        vertices: etiquetas en orden global
        simplices: todos los símplices (cerrado por caras), ordenados por dimensión y
                   lexicográficamente
    """
    vertices: Tuple[Hashable, ...]
    simplices: Tuple[Simplex, ...]

    @classmethod
    def from_maximal(
        cls,
        vertices: Sequence[Hashable],
        maximal: Iterable[Sequence[int]],
        budget: Optional[int] = None,
    ) -> "SimplicialComplex":
        """
        Cierra por caras una familia de símplices dados por índices

        Raises:
            BudgetExceeded: si el número de símplices supera `budget`
        """
        vertices = tuple(vertices)
        if len(set(vertices)) != len(vertices):
            raise ValueError("Etiquetas de vértices repetidas")
        faces = set((i,) for i in range(len(vertices)))
        for top in maximal:
            top = tuple(sorted(set(int(i) for i in top)))
            if not top:
                continue
            if top[-1] >= len(vertices) or top[0] < 0:
                raise ValueError(f"Índice de vértice fuera de rango en {top}")
            if top in faces:
                continue
            for k in range(1, len(top) + 1):
                faces.update(itertools.combinations(top, k))
            if budget is not None and len(faces) > budget:
                raise BudgetExceeded(
                    f"El complejo supera el presupuesto de {budget} símplices",
                    witness={"simplices": len(faces)},
                )
        ordered = tuple(sorted(faces, key=lambda s: (len(s), s)))
        return cls(vertices, ordered)

    @classmethod
    def from_labels(
        cls,
        vertices: Sequence[Hashable],
        maximal: Iterable[Sequence[Hashable]],
        budget: Optional[int] = None,
    ) -> "SimplicialComplex":
        vertices = tuple(vertices)
        pos = {v: i for i, v in enumerate(vertices)}
        try:
            indexed = [[pos[v] for v in top] for top in maximal]
        except KeyError as e:
            raise ValueError(f"Vértice desconocido: {e}") from e
        return cls.from_maximal(vertices, indexed, budget=budget)

    @classmethod
    def empty(cls) -> "SimplicialComplex":
        return cls((), ())

    # ---- acceso ----

    @cached_property
    def by_dimension(self) -> Dict[int, Tuple[Simplex, ...]]:
        out: Dict[int, List[Simplex]] = {}
        for s in self.simplices:
            out.setdefault(len(s) - 1, []).append(s)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def positions(self) -> Dict[int, Dict[Simplex, int]]:
        """Para cada dimensión, símplice → posición en la base de cadenas"""
        return {k: {s: i for i, s in enumerate(v)} for k, v in self.by_dimension.items()}

    @cached_property
    def simplex_set(self) -> FrozenSet[Simplex]:
        return frozenset(self.simplices)

    @cached_property
    def index(self) -> Dict[Hashable, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def maximal(self) -> Tuple[Simplex, ...]:
        tops = []
        covered = set()
        for s in reversed(self.simplices):
            if s not in covered:
                tops.append(s)
            for k in range(1, len(s)):
                covered.update(itertools.combinations(s, k))
        return tuple(sorted(tops, key=lambda s: (len(s), s)))

    @cached_property
    def _cofacets(self) -> Dict[Simplex, List[Simplex]]:
        out: Dict[Simplex, List[Simplex]] = {}
        for s in self.simplices:
            if len(s) < 2:
                continue
            for i in range(len(s)):
                out.setdefault(s[:i] + s[i + 1:], []).append(s)
        return out

    def cofacets(self, simplex: Sequence[int]) -> List[Simplex]:
        """Símplices de una dimensión más que tienen a `simplex` como cara"""
        return self._cofacets.get(tuple(simplex), [])

    @property
    def dim(self) -> int:
        return max(self.by_dimension) if self.simplices else -1

    def faces(self, k: int) -> Tuple[Simplex, ...]:
        return self.by_dimension.get(k, ())

    def count(self, k: int) -> int:
        return len(self.faces(k))

    def __contains__(self, simplex: Sequence[int]) -> bool:
        return tuple(simplex) in self.simplex_set

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self is other or (self.vertices == other.vertices and self.simplex_set == other.simplex_set)

    def __hash__(self) -> int:
        return hash((self.vertices, len(self.simplices)))

    def __repr__(self) -> str:
        counts = [self.count(k) for k in range(self.dim + 1)]
        return f"SimplicialComplex(dim={self.dim}, f={counts})"

    def label(self, simplex: Sequence[int]) -> Tuple[Hashable, ...]:
        return tuple(self.vertices[i] for i in simplex)

    def simplex_of(self, labels: Iterable[Hashable]) -> Simplex:
        """Símplice (índices crecientes) a partir de etiquetas"""
        try:
            simplex = tuple(sorted(self.index[v] for v in labels))
        except KeyError as e:
            raise ComplexMismatch(f"Vértice {e} no pertenece al complejo") from e
        if simplex not in self.simplex_set:
            raise ComplexMismatch(f"{list(labels)} no es un símplice del complejo")
        return simplex

    # ---- estructura ----

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * self.count(k) for k in range(self.dim + 1))

    def one_skeleton(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.vertices)))
        graph.add_edges_from(self.faces(1))
        return graph

    def is_connected(self) -> bool:
        return len(self.vertices) > 0 and nx.is_connected(self.one_skeleton())

    def is_circle(self) -> bool:
        """Círculo simplicial: dimensión 1, conexo, todo vértice de grado 2, al menos 3 vértices"""
        if self.dim != 1 or len(self.vertices) < 3:
            return False
        graph = self.one_skeleton()
        return nx.is_connected(graph) and all(d == 2 for _, d in graph.degree())

    def cofaces(self, simplex: Sequence[int]) -> List[Simplex]:
        """Símplices que contienen a `simplex` (estrella abierta)"""
        base = set(simplex)
        return [s for s in self.simplices if base.issubset(s)]

    def star_vertices(self, simplex: Sequence[int]) -> List[int]:
        """Vértices de la estrella cerrada de `simplex`"""
        return sorted({v for s in self.cofaces(simplex) for v in s})

    def subcomplex(self, simplices: Iterable[Sequence[int]]) -> "SimplicialComplex":
        """Subcomplejo generado; conserva etiquetas y orden relativo"""
        simplices = [tuple(s) for s in simplices]
        used = sorted({v for s in simplices for v in s})
        remap = {old: new for new, old in enumerate(used)}
        return SimplicialComplex.from_maximal(
            [self.vertices[i] for i in used],
            [[remap[v] for v in s] for s in simplices],
        )

    def full_subcomplex(self, vertex_indices: Iterable[int]) -> "SimplicialComplex":
        keep = set(vertex_indices)
        return self.subcomplex(s for s in self.simplices if keep.issuperset(s))

    def relabel(self, labels: Sequence[Hashable]) -> "SimplicialComplex":
        if len(labels) != len(self.vertices):
            raise ValueError("Número de etiquetas distinto")
        return SimplicialComplex(tuple(labels), self.simplices)


def same_complex(a: SimplicialComplex, b: SimplicialComplex) -> None:
    if not (a is b or a == b):
        raise ComplexMismatch(f"Complejos distintos: {a!r} y {b!r}")


# ============== Aplicaciones simpliciales ==============

@dataclass(frozen=True, eq=False)
class SimplicialMap:
    """Aplicación simplicial dada por el mapa de vértices (índice → índice)"""
    source: SimplicialComplex
    target: SimplicialComplex
    vertex_map: Tuple[int, ...]

    def __post_init__(self):
        vm = tuple(int(i) for i in self.vertex_map)
        if len(vm) != len(self.source.vertices):
            raise ValueError("El mapa de vértices no cubre el complejo fuente")
        object.__setattr__(self, "vertex_map", vm)
        for s in self.source.maximal:
            image = self.image(s)
            if image not in self.target.simplex_set:
                raise ComplexMismatch(
                    f"La imagen de {list(self.source.label(s))} no es un símplice",
                    witness={"simplex": [str(v) for v in self.source.label(s)]},
                )

    @classmethod
    def from_labels(
        cls,
        source: SimplicialComplex,
        target: SimplicialComplex,
        mapping: Mapping[Hashable, Hashable],
    ) -> "SimplicialMap":
        try:
            vm = tuple(target.index[mapping[v]] for v in source.vertices)
        except KeyError as e:
            raise ComplexMismatch(f"Vértice sin imagen válida: {e}") from e
        return cls(source, target, vm)

    @classmethod
    def identity(cls, X: SimplicialComplex) -> "SimplicialMap":
        return cls(X, X, tuple(range(len(X.vertices))))

    def image(self, simplex: Sequence[int]) -> Simplex:
        return tuple(sorted({self.vertex_map[v] for v in simplex}))

    def compose(self, after: "SimplicialMap") -> "SimplicialMap":
        """after ∘ self"""
        same_complex(self.target, after.source)
        return SimplicialMap(self.source, after.target, tuple(after.vertex_map[v] for v in self.vertex_map))

    def preimage(self, simplex: Sequence[int]) -> List[Simplex]:
        """Símplices de la fuente cuyos vértices caen en `simplex`"""
        allowed = set(simplex)
        return [s for s in self.source.simplices if all(self.vertex_map[v] in allowed for v in s)]

    def is_monotone(self) -> bool:
        """¿Respeta el orden global (i ≤ j ⇒ f(i) ≤ f(j)) en cada arista?"""
        return all(self.vertex_map[a] <= self.vertex_map[b] for a, b in self.source.faces(1))


# ============== Sistemas locales ==============

@dataclass(frozen=True, eq=False)
class LocalSystem:
    """
    Sistema local de rango 1 sobre ℚ dado por signos ±1 en las aristas

    Solo se guardan las aristas negativas (u < v). La condición de cociclo
    s(a,b)·s(b,c)·s(a,c) = 1 se exige en cada 2-símplice.
    """
    complex: SimplicialComplex
    negative: FrozenSet[Tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        edges = set()
        for u, v in self.negative:
            edge = (min(u, v), max(u, v))
            if edge not in self.complex.simplex_set:
                raise SystemMismatch(f"({u}, {v}) no es una arista del complejo")
            edges.add(edge)
        object.__setattr__(self, "negative", frozenset(edges))
        for a, b, c in self.complex.faces(2):
            if self.sign(a, b) * self.sign(b, c) * self.sign(a, c) != 1:
                raise SystemMismatch(
                    "Los signos no forman un cociclo",
                    witness={"simplex": [str(v) for v in self.complex.label((a, b, c))]},
                )

    @classmethod
    def trivial(cls, X: SimplicialComplex) -> "LocalSystem":
        return cls(X, frozenset())

    @classmethod
    def from_signs(cls, X: SimplicialComplex, signs: Mapping[Tuple[int, int], int]) -> "LocalSystem":
        negative = set()
        for (u, v), s in signs.items():
            if s not in (1, -1):
                raise SystemMismatch(f"Signo inválido {s} en ({u}, {v})")
            if s == -1:
                negative.add((min(u, v), max(u, v)))
        return cls(X, frozenset(negative))

    @classmethod
    def from_labels(cls, X: SimplicialComplex, signs: Mapping[Tuple[Hashable, Hashable], int]) -> "LocalSystem":
        return cls.from_signs(X, {(X.index[a], X.index[b]): s for (a, b), s in signs.items()})

    def sign(self, u: int, v: int) -> int:
        """Transporte entre los extremos de una arista (u = v da 1)"""
        if u == v:
            return 1
        return -1 if (min(u, v), max(u, v)) in self.negative else 1

    def transport(self, path: Sequence[int]) -> int:
        out = 1
        for a, b in zip(path, path[1:]):
            out *= self.sign(a, b)
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.negative

    def signs(self) -> Dict[Tuple[int, int], int]:
        return {e: self.sign(*e) for e in self.complex.faces(1)}

    def tensor(self, other: "LocalSystem") -> "LocalSystem":
        same_complex(self.complex, other.complex)
        return LocalSystem(self.complex, self.negative ^ other.negative)

    def power(self, k: int) -> "LocalSystem":
        return self if k % 2 else LocalSystem.trivial(self.complex)

    def pullback(self, f: SimplicialMap) -> "LocalSystem":
        same_complex(f.target, self.complex)
        negative = {e for e in f.source.faces(1) if self.sign(f.vertex_map[e[0]], f.vertex_map[e[1]]) == -1}
        return LocalSystem(f.source, frozenset(negative))

    def restrict(self, sub: SimplicialComplex) -> "LocalSystem":
        """Restricción a un subcomplejo con las mismas etiquetas"""
        negative = set()
        for a, b in sub.faces(1):
            u, v = self.complex.index[sub.vertices[a]], self.complex.index[sub.vertices[b]]
            if self.sign(u, v) == -1:
                negative.add((a, b))
        return LocalSystem(sub, frozenset(negative))

    def gauge(self) -> Optional[Dict[int, int]]:
        """g con s(u,v) = g(u)·g(v) si el sistema es trivializable; None si no"""
        g: Dict[int, int] = {}
        graph = self.complex.one_skeleton()
        for component in nx.connected_components(graph):
            root = min(component)
            g[root] = 1
            for u, v in nx.bfs_edges(graph, root):
                g[v] = g[u] * self.sign(u, v)
        for u, v in self.complex.faces(1):
            if g[u] * g[v] != self.sign(u, v):
                return None
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LocalSystem):
            return NotImplemented
        return self.complex == other.complex and self.negative == other.negative

    def __hash__(self) -> int:
        return hash(self.negative)


def same_system(a: LocalSystem, b: LocalSystem) -> None:
    if a != b:
        raise SystemMismatch("Sistemas locales distintos")


# ============== Subdivisión baricéntrica ==============

@dataclass(frozen=True, eq=False)
class DualCellStructure:
    """
    Subdivisión baricéntrica X̃ de X con sus celdas duales abiertas

    Los vértices de X̃ son los símplices de X (como tuplas de etiquetas), ordenados
    por dimensión; un símplice de X̃ es una bandera Δ₀ ⊂ … ⊂ Δ_k y pertenece a la
    celda dual de su mínimo Δ₀.
    """
    base: SimplicialComplex
    subdivision: SimplicialComplex
    cells: Dict[Simplex, Tuple[Simplex, ...]]

    def barycenter(self, simplex: Sequence[int]) -> int:
        """Índice en X̃ del vértice correspondiente a un símplice de X"""
        return self.subdivision.index[self.base.label(tuple(simplex))]

    def dual_cell(self, simplex: Sequence[int]) -> Tuple[Simplex, ...]:
        return self.cells[tuple(simplex)]

    def flag(self, simplex: Simplex) -> List[Simplex]:
        """Bandera de símplices de X correspondiente a un símplice de X̃"""
        return [self.base.simplex_of(self.subdivision.vertices[i]) for i in simplex]


def barycentric_subdivision(X: SimplicialComplex) -> DualCellStructure:
    """Complejo de banderas de X y partición en celdas duales"""
    labels = [X.label(s) for s in X.simplices]
    pos = {s: i for i, s in enumerate(X.simplices)}

    maximal = []
    for top in X.maximal:
        for perm in itertools.permutations(top):
            flag = [pos[tuple(sorted(perm[: k + 1]))] for k in range(len(perm))]
            maximal.append(flag)
    Xt = SimplicialComplex.from_maximal(labels, maximal)

    cells: Dict[Simplex, List[Simplex]] = {s: [] for s in X.simplices}
    for flag in Xt.simplices:
        cells[X.simplices[flag[0]]].append(flag)
    logger.debug(f"[SUBDIVISION] {X!r} → {Xt!r}")
    return DualCellStructure(X, Xt, {k: tuple(v) for k, v in cells.items()})


# ============== Producto de complejos ordenados ==============

def product_complex(
    A: SimplicialComplex,
    B: SimplicialComplex,
    budget: Optional[int] = None,
) -> SimplicialComplex:
    """
    Triangulación en escalera de A × B

    Los vértices son pares (a, b) en orden lexicográfico; los símplices son las
    cadenas estrictas del orden producto cuyas proyecciones son símplices de A y B.
    """
    labels = [(a, b) for a in A.vertices for b in B.vertices]
    nb = len(B.vertices)
    maximal = []
    for sa in A.maximal:
        for sb in B.maximal:
            p, q = len(sa) - 1, len(sb) - 1
            for rights in itertools.combinations(range(p + q), q):
                i = j = 0
                chain = [sa[0] * nb + sb[0]]
                rset = set(rights)
                for step in range(p + q):
                    if step in rset:
                        j += 1
                    else:
                        i += 1
                    chain.append(sa[i] * nb + sb[j])
                maximal.append(chain)
    return SimplicialComplex.from_maximal(labels, maximal, budget=budget)
