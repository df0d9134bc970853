"""
Cadenas y cocadenas racionales con coeficientes en un sistema local

Convenciones (fijadas una sola vez aquí):

- Un k-símplice [v0..vk] se escribe con vértices en orden global creciente y su
  coeficiente vive en la fibra del sistema local sobre v0.
- ∂[v0..vk] = s(v0,v1)·[v1..vk] + Σ_{i≥1} (−1)^i [v0..v̂i..vk]; δ es su dual, de modo
  que ⟨δa, c⟩ = ⟨a, ∂c⟩.
- Cup (Alexander–Whitney): (a⌣b)[v0..v_{p+q}] = a[v0..vp] · s_b(v0,vp) · b[vp..v_{p+q}].
- Cap (evaluación en la cara trasera):
      a⌢[v0..vk] = s_a(v0,v_{k−p}) · a[v_{k−p}..vk] · [v0..v_{k−p}]
  con lo que (a⌣b)⌢c = a⌢(b⌢c), ⟨b, a⌢c⟩ = ⟨b⌣a, c⟩ y
      ∂(a⌢c) = a⌢∂c + (−1)^{k−p} δa⌢c.
  Para p = k el resultado es el vértice frontal v0.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from sympy.combinatorics import Permutation

from app.core.exceptions import ComplexMismatch, DegreeError, SystemMismatch
from app.topology.rational_linalg import RationalLike, qvector, to_rational, zeros
from app.topology.simplicial import (
    LocalSystem,
    Simplex,
    SimplicialComplex,
    SimplicialMap,
    same_complex,
)

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


@dataclass(frozen=True, eq=False)
class _Graded:
    complex: SimplicialComplex
    degree: int
    system: LocalSystem
    terms: Dict[Simplex, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        same_complex(self.system.complex, self.complex)
        clean: Dict[Simplex, Fraction] = {}
        for s, x in self.terms.items():
            s = tuple(s)
            if len(s) != self.degree + 1:
                raise DegreeError(f"Símplice {s} no tiene grado {self.degree}")
            if s not in self.complex.simplex_set:
                raise ComplexMismatch(f"{list(self.complex.label(s))} no pertenece al complejo")
            q = to_rational(x)
            if q != 0:
                clean[s] = clean.get(s, Fraction(0)) + q
        object.__setattr__(self, "terms", {s: x for s, x in sorted(clean.items()) if x != 0})

    # ---- constructores ----

    @classmethod
    def zero(cls, X: SimplicialComplex, degree: int, system: Optional[LocalSystem] = None):
        return cls(X, degree, system or LocalSystem.trivial(X), {})

    @classmethod
    def from_labels(
        cls,
        X: SimplicialComplex,
        degree: int,
        terms: Iterable[Tuple[Sequence[Hashable], RationalLike]],
        system: Optional[LocalSystem] = None,
    ):
        """
        Construye a partir de símplices dados por etiquetas en cualquier orden

        Un símplice desordenado se reordena con el signo de la permutación y el
        transporte desde su primer vértice al mínimo.
        """
        system = system or LocalSystem.trivial(X)
        out: Dict[Simplex, Fraction] = {}
        for labels, coeff in terms:
            idx = [X.index[v] for v in labels]
            simplex, sign = orient(idx, system)
            if simplex not in X.simplex_set:
                raise ComplexMismatch(f"{list(labels)} no es un símplice del complejo")
            out[simplex] = out.get(simplex, Fraction(0)) + sign * to_rational(coeff)
        return cls(X, degree, system, out)

    @classmethod
    def from_vector(cls, X: SimplicialComplex, degree: int, vector: Sequence[RationalLike],
                    system: Optional[LocalSystem] = None):
        basis = X.faces(degree)
        if len(vector) != len(basis):
            raise DegreeError(f"Vector de longitud {len(vector)} para {len(basis)} símplices")
        return cls(X, degree, system or LocalSystem.trivial(X),
                   {s: to_rational(x) for s, x in zip(basis, vector)})

    # ---- álgebra ----

    def _like(self, terms: Dict[Simplex, Fraction]):
        return type(self)(self.complex, self.degree, self.system, terms)

    def _check(self, other: "_Graded") -> None:
        if type(other) is not type(self):
            raise TypeError(f"No se pueden combinar {type(self).__name__} y {type(other).__name__}")
        same_complex(self.complex, other.complex)
        if self.degree != other.degree:
            raise DegreeError(f"Grados distintos: {self.degree} y {other.degree}")
        if self.system != other.system:
            raise SystemMismatch("Sistemas locales distintos")

    def __add__(self, other: "_Graded"):
        self._check(other)
        out = dict(self.terms)
        for s, x in other.terms.items():
            out[s] = out.get(s, Fraction(0)) + x
        return self._like(out)

    def __neg__(self):
        return self._like({s: -x for s, x in self.terms.items()})

    def __sub__(self, other: "_Graded"):
        return self + (-other)

    def __mul__(self, scalar: RationalLike):
        q = to_rational(scalar)
        return self._like({s: q * x for s, x in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, _Graded) or type(other) is not type(self):
            return NotImplemented
        return (
            self.complex == other.complex
            and self.degree == other.degree
            and self.system == other.system
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.degree, tuple(self.terms.items())))

    def __getitem__(self, simplex: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(simplex), Fraction(0))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(degree={self.degree}, terms={len(self.terms)})"

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def with_system(self, system: LocalSystem):
        """Mismos coeficientes leídos en otro sistema"""
        return type(self)(self.complex, self.degree, system, self.terms)

    def vector(self) -> np.ndarray:
        return qvector([self[s] for s in self.complex.faces(self.degree)])

    def labelled_terms(self) -> Dict[Tuple[Hashable, ...], Fraction]:
        return {self.complex.label(s): x for s, x in self.terms.items()}

    def restrict(self, simplices: Iterable[Sequence[int]]):
        keep = {tuple(s) for s in simplices}
        return self._like({s: x for s, x in self.terms.items() if s in keep})


class Chain(_Graded):
    """k-cadena racional con coeficientes en un sistema local"""


class Cochain(_Graded):
    """k-cocadena racional con coeficientes en un sistema local"""


# ============== Orientación ==============

def orient(vertices: Sequence[int], system: LocalSystem) -> Tuple[Simplex, int]:
    """Símplice creciente y signo (paridad · transporte) de una lista ordenada arbitraria"""
    if len(set(vertices)) != len(vertices):
        raise ComplexMismatch(f"Vértices repetidos en {list(vertices)}")
    order = sorted(range(len(vertices)), key=lambda i: vertices[i])
    simplex = tuple(vertices[i] for i in order)
    parity = Permutation(order).signature() if len(order) > 1 else 1
    return simplex, parity * system.sign(vertices[0], simplex[0])


# ============== Borde y coborde ==============

def _face_coefficient(simplex: Simplex, i: int, system: LocalSystem) -> int:
    if i == 0:
        return system.sign(simplex[0], simplex[1])
    return -1 if i % 2 else 1


def boundary(c: Chain) -> Chain:
    if c.degree < 1:
        raise DegreeError("El borde requiere grado ≥ 1")
    out: Dict[Simplex, Fraction] = {}
    for s, x in c.terms.items():
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            out[face] = out.get(face, Fraction(0)) + _face_coefficient(s, i, c.system) * x
    return Chain(c.complex, c.degree - 1, c.system, out)


def coboundary(a: Cochain) -> Cochain:
    out: Dict[Simplex, Fraction] = {}
    for s, x in a.terms.items():
        for sigma in a.complex.cofacets(s):
            i = _omitted(sigma, s)
            out[sigma] = out.get(sigma, Fraction(0)) + _face_coefficient(sigma, i, a.system) * x
    return Cochain(a.complex, a.degree + 1, a.system, out)


def _omitted(sigma: Simplex, face: Simplex) -> int:
    for j in range(len(face)):
        if sigma[j] != face[j]:
            return j
    return len(face)


def boundary_matrix(X: SimplicialComplex, k: int, system: Optional[LocalSystem] = None) -> np.ndarray:
    """Matriz entera de ∂_k en las bases de símplices ordenados (filas C_{k-1}, columnas C_k)"""
    system = system or LocalSystem.trivial(X)
    cols = X.faces(k)
    if k == 0:
        return zeros(0, len(cols), integral=True)
    rows = X.positions.get(k - 1, {})
    M = zeros(len(rows), len(cols), integral=True)
    for j, s in enumerate(cols):
        for i in range(len(s)):
            M[rows[s[:i] + s[i + 1:]], j] += _face_coefficient(s, i, system)
    return M


# ============== Productos ==============

def unit(X: SimplicialComplex) -> Cochain:
    """0-cocadena constante 1 (sistema trivial)"""
    return Cochain(X, 0, LocalSystem.trivial(X), {(v,): Fraction(1) for v in range(len(X.vertices))})


def cup(a: Cochain, b: Cochain) -> Cochain:
    same_complex(a.complex, b.complex)
    X = a.complex
    by_first: Dict[int, List[Tuple[Simplex, Fraction]]] = {}
    for s, y in b.terms.items():
        by_first.setdefault(s[0], []).append((s, y))
    out: Dict[Simplex, Fraction] = {}
    for s, x in a.terms.items():
        for t, y in by_first.get(s[-1], ()):
            sigma = s + t[1:]
            if sigma in X.simplex_set:
                out[sigma] = out.get(sigma, Fraction(0)) + x * b.system.sign(s[0], s[-1]) * y
    return Cochain(X, a.degree + b.degree, a.system.tensor(b.system), out)


def cup_power(a: Cochain, power: int) -> Cochain:
    """a^{⌣power}; la potencia 0 es la unidad"""
    if power < 0:
        raise DegreeError("Potencia negativa")
    result = unit(a.complex)
    for _ in range(power):
        result = cup(result, a)
    return result


def cap(a: Cochain, c: Chain) -> Chain:
    same_complex(a.complex, c.complex)
    p, k = a.degree, c.degree
    if p > k:
        raise DegreeError(f"No se puede hacer cap de grado {p} con una cadena de grado {k}")
    out: Dict[Simplex, Fraction] = {}
    for s, y in c.terms.items():
        back = s[k - p:]
        x = a.terms.get(back)
        if x is None:
            continue
        front = s[: k - p + 1]
        out[front] = out.get(front, Fraction(0)) + a.system.sign(s[0], s[k - p]) * x * y
    return Chain(c.complex, k - p, a.system.tensor(c.system), out)


def evaluate(a: Cochain, c: Chain) -> Fraction:
    """Emparejamiento ⟨a, c⟩ (los sistemas deben coincidir)"""
    same_complex(a.complex, c.complex)
    if a.degree != c.degree:
        raise DegreeError(f"Grados distintos: {a.degree} y {c.degree}")
    if a.system != c.system:
        raise SystemMismatch("La cocadena y la cadena tienen sistemas distintos")
    return sum((x * c.terms[s] for s, x in a.terms.items() if s in c.terms), Fraction(0))


# ============== Funtorialidad ==============

def pushforward(f: SimplicialMap, c: Chain, target_system: Optional[LocalSystem] = None) -> Chain:
    """
    f⋆c: cada símplice va a su imagen con el signo de la permutación y el transporte
    desde f(v0) al mínimo de la imagen; los símplices degenerados van a 0

    Raises:
        SystemMismatch: si el sistema de la cadena no es el pullback de `target_system`
    """
    same_complex(f.source, c.complex)
    target_system = target_system or LocalSystem.trivial(f.target)
    if target_system.pullback(f) != c.system:
        raise SystemMismatch("El sistema de la cadena no es el pullback del sistema destino")
    out: Dict[Simplex, Fraction] = {}
    for s, x in c.terms.items():
        image = [f.vertex_map[v] for v in s]
        if len(set(image)) < len(image):
            continue
        simplex, sign = orient(image, target_system)
        out[simplex] = out.get(simplex, Fraction(0)) + sign * x
    return Chain(f.target, c.degree, target_system, out)


def pullback(f: SimplicialMap, a: Cochain) -> Cochain:
    """f*a evaluada en cada símplice no degenerado de la fuente"""
    same_complex(f.target, a.complex)
    out: Dict[Simplex, Fraction] = {}
    for s in f.source.faces(a.degree):
        image = [f.vertex_map[v] for v in s]
        if len(set(image)) < len(image):
            continue
        simplex, sign = orient(image, a.system)
        x = a.terms.get(simplex)
        if x is not None:
            out[s] = sign * x
    return Cochain(f.source, a.degree, a.system.pullback(f), out)
