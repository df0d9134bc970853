"""
Álgebra lineal racional exacta

- Racionales de precisión arbitraria con fractions.Fraction
- Matrices densas como arreglos numpy de dtype=object (entradas Fraction o int)
- Eliminación libre de fracciones (Bareiss) con pivote "más a la izquierda, mayor |a|"
- Mínimos cuadrados con restricciones por el sistema KKT exacto
- Factibilidad estricta por homogeneización y eliminación de Fourier–Motzkin
- Forma normal de Smith y homología de complejos de cadenas enteros

Ninguna función usa tolerancias: todas las comprobaciones son igualdades de racionales.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors as _invariant_factors
from sympy.polys.matrices.normalforms import smith_normal_decomp

from app.core.exceptions import Infeasible, NotAComplex

logger = logging.getLogger(__name__)

RationalLike = Union[int, str, Fraction, np.integer]
QMatrix = np.ndarray
ZMatrix = np.ndarray


# ============== Escalares ==============

def to_rational(value: RationalLike) -> Fraction:
    """
    Convierte un valor exacto a Fraction

    Acepta enteros, Fraction y cadenas "p/q" o "p". Los flotantes se rechazan.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("Un booleano no es un racional")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value.strip().replace("−", "-"))
    raise TypeError(f"Valor no exacto: {value!r} ({type(value).__name__})")


def format_rational(value: RationalLike) -> str:
    """Serializa un racional como "p/q" (o "p" si q = 1)"""
    return str(to_rational(value))


# ============== Matrices ==============

def qmatrix(rows: Iterable[Iterable[RationalLike]], cols: Optional[int] = None) -> QMatrix:
    """Construye una matriz racional densa (dtype=object)"""
    data = [[to_rational(x) for x in row] for row in rows]
    ncols = len(data[0]) if data else (cols or 0)
    if any(len(row) != ncols for row in data):
        raise ValueError("Filas de longitud distinta")
    out = np.empty((len(data), ncols), dtype=object)
    for i, row in enumerate(data):
        for j, x in enumerate(row):
            out[i, j] = x
    return out


def qvector(values: Iterable[RationalLike]) -> np.ndarray:
    data = [to_rational(x) for x in values]
    out = np.empty(len(data), dtype=object)
    for i, x in enumerate(data):
        out[i] = x
    return out


def zmatrix(rows: Iterable[Iterable[int]], cols: Optional[int] = None) -> ZMatrix:
    """Construye una matriz entera densa (dtype=object, enteros de Python)"""
    data = [[int(x) for x in row] for row in rows]
    ncols = len(data[0]) if data else (cols or 0)
    out = np.empty((len(data), ncols), dtype=object)
    for i, row in enumerate(data):
        for j, x in enumerate(row):
            out[i, j] = x
    return out


def zeros(rows: int, cols: int, integral: bool = False) -> np.ndarray:
    out = np.empty((rows, cols), dtype=object)
    out.fill(0 if integral else Fraction(0))
    return out


def identity(n: int, integral: bool = False) -> np.ndarray:
    out = zeros(n, n, integral)
    for i in range(n):
        out[i, i] = 1 if integral else Fraction(1)
    return out


def as_qmatrix(A: Union[QMatrix, Sequence[Sequence[RationalLike]]], cols: Optional[int] = None) -> QMatrix:
    if isinstance(A, np.ndarray) and A.ndim == 2:
        return qmatrix(A.tolist(), cols=A.shape[1])
    return qmatrix(A, cols=cols)


def matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Producto exacto; respeta dimensiones nulas"""
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"Dimensiones incompatibles {A.shape} x {B.shape}")
    if A.shape[1] == 0:
        integral = all(isinstance(x, int) for x in A.flat) and all(isinstance(x, int) for x in B.flat)
        return zeros(A.shape[0], B.shape[1], integral=integral)
    return A.dot(B)


def matvec(A: np.ndarray, x: Sequence[RationalLike]) -> np.ndarray:
    if A.shape[1] == 0:
        return qvector([0] * A.shape[0])
    return qvector(A.dot(qvector(x)).tolist())


# ============== Eliminación libre de fracciones ==============

def _integer_rows(A: QMatrix, b: Optional[Sequence[Fraction]] = None) -> List[List[int]]:
    """Escala cada fila (y su término independiente) por el mcm de sus denominadores"""
    rows: List[List[int]] = []
    for i in range(A.shape[0]):
        entries = [to_rational(x) for x in A[i, :]]
        if b is not None:
            entries.append(to_rational(b[i]))
        scale = 1
        for q in entries:
            scale = lcm(scale, q.denominator)
        rows.append([int(q * scale) for q in entries])
    return rows


def fraction_free_echelon(rows: List[List[int]], ncols: int) -> Tuple[List[List[int]], List[int]]:
    """
    Forma escalonada por eliminación de Bareiss

    El pivote de cada paso es la columna no nula más a la izquierda y, dentro de ella,
    la entrada de mayor valor absoluto (la fila más alta en caso de empate).
    Todas las divisiones son exactas.

    Returns:
        (filas escalonadas, columnas pivote)
    """
    work = [list(row) for row in rows]
    m = len(work)
    prev = 1
    r = 0
    pivots: List[int] = []
    for col in range(ncols):
        if r == m:
            break
        best: Optional[int] = None
        for i in range(r, m):
            value = work[i][col]
            if value != 0 and (best is None or abs(value) > abs(work[best][col])):
                best = i
        if best is None:
            continue
        work[r], work[best] = work[best], work[r]
        pivot_row = work[r]
        p = pivot_row[col]
        for i in range(r + 1, m):
            a = work[i][col]
            work[i] = [(p * x - a * y) // prev for x, y in zip(work[i], pivot_row)]
        prev = p
        pivots.append(col)
        r += 1
    return work, pivots


def rank(A: Union[QMatrix, ZMatrix]) -> int:
    """Rango exacto sobre ℚ"""
    A = as_qmatrix(A)
    if A.shape[0] == 0 or A.shape[1] == 0:
        return 0
    _, pivots = fraction_free_echelon(_integer_rows(A), A.shape[1])
    return len(pivots)


def _normalize_direction(v: List[Fraction]) -> List[Fraction]:
    """Primer coeficiente no nulo positivo"""
    for x in v:
        if x != 0:
            return [-y for y in v] if x < 0 else v
    return v


@dataclass(frozen=True)
class LinearSolution:
    """Solución particular más base del núcleo"""
    particular: np.ndarray
    kernel: Tuple[np.ndarray, ...] = field(default_factory=tuple)
    rank: int = 0


def solve_linear(A: Union[QMatrix, Sequence[Sequence[RationalLike]]], b: Sequence[RationalLike]) -> LinearSolution:
    """
    Resuelve A·x = b exactamente

    Args:
        A: matriz racional m x n
        b: vector de longitud m

    Returns:
        LinearSolution con la solución particular (variables libres en 0) y una base
        del núcleo (un vector por columna libre, primer coeficiente no nulo positivo)

    Raises:
        Infeasible: si b no está en el espacio columna
    """
    A = as_qmatrix(A)
    b = qvector(b)
    m, n = A.shape
    if len(b) != m:
        raise ValueError(f"Dimensiones incompatibles: A es {A.shape}, b tiene {len(b)}")

    rows, pivots = fraction_free_echelon(_integer_rows(A, b), n)
    r = len(pivots)
    for i in range(r, m):
        if rows[i][n] != 0:
            raise Infeasible(f"El término independiente no está en el espacio columna (fila {i})")

    def back_substitute(rhs: List[Fraction], fixed: Dict[int, Fraction]) -> List[Fraction]:
        x = [Fraction(0)] * n
        for col, value in fixed.items():
            x[col] = value
        for k in reversed(range(r)):
            col = pivots[k]
            row = rows[k]
            acc = rhs[k] - sum((row[j] * x[j] for j in range(col + 1, n)), Fraction(0))
            x[col] = acc / row[col]
        return x

    particular = back_substitute([Fraction(rows[k][n]) for k in range(r)], {})
    pivot_set = set(pivots)
    kernel = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = back_substitute([Fraction(0)] * r, {free: Fraction(1)})
        kernel.append(qvector(_normalize_direction(v)))
    return LinearSolution(particular=qvector(particular), kernel=tuple(kernel), rank=r)


def nullspace(A: Union[QMatrix, Sequence[Sequence[RationalLike]]], cols: Optional[int] = None) -> List[np.ndarray]:
    """Base racional del núcleo de A"""
    A = as_qmatrix(A, cols=cols)
    return list(solve_linear(A, [0] * A.shape[0]).kernel)


def min_norm_solution(A: Union[QMatrix, Sequence[Sequence[RationalLike]]], b: Sequence[RationalLike]) -> np.ndarray:
    """
    Solución de A·x = b con Σ x_j² mínima

    Resuelve el sistema KKT [[I, Aᵀ], [A, 0]]·(x, λ) = (0, b); la parte x es única
    aunque λ no lo sea.

    Raises:
        Infeasible: si {x : A·x = b} es vacío
    """
    A = as_qmatrix(A)
    b = qvector(b)
    m, n = A.shape
    if len(b) != m:
        raise ValueError(f"Dimensiones incompatibles: A es {A.shape}, b tiene {len(b)}")
    if n == 0:
        if any(x != 0 for x in b):
            raise Infeasible("Sistema sin incógnitas con término independiente no nulo")
        return qvector([])

    kkt = zeros(n + m, n + m)
    for i in range(n):
        kkt[i, i] = Fraction(1)
    for i in range(m):
        for j in range(n):
            kkt[n + i, j] = A[i, j]
            kkt[j, n + i] = A[i, j]
    rhs = [Fraction(0)] * n + list(b)
    solution = solve_linear(kkt, rhs)
    return qvector(solution.particular[:n].tolist())


# ============== Factibilidad estricta ==============

Inequality = Tuple[Tuple[Fraction, ...], Fraction]


def _normalize_system(system: Iterable[Inequality]) -> Optional[Dict[Tuple[Fraction, ...], Fraction]]:
    """
    Normaliza a·u ≥ β dividiendo por |primer coeficiente no nulo|

    Conserva, para cada a, el β más exigente. Devuelve None si alguna fila es 0 ≥ β con β > 0.
    """
    out: Dict[Tuple[Fraction, ...], Fraction] = {}
    for a, beta in system:
        lead = next((x for x in a if x != 0), None)
        if lead is None:
            if beta > 0:
                return None
            continue
        scale = abs(lead)
        key = tuple(x / scale for x in a)
        value = beta / scale
        if key not in out or value > out[key]:
            out[key] = value
    return out


def _fourier_motzkin(system: List[Inequality], nvars: int) -> bool:
    """Decide si {u : a·u ≥ β para toda fila} es no vacío"""
    current = _normalize_system(system)
    if current is None:
        return False
    for k in reversed(range(nvars)):
        positive, negative, rest = [], [], []
        for a, beta in current.items():
            if a[k] > 0:
                positive.append((a, beta))
            elif a[k] < 0:
                negative.append((a, beta))
            else:
                rest.append((a[:k], beta))
        combined: List[Inequality] = list(rest)
        for ap, bp in positive:
            for an, bn in negative:
                wp, wn = -an[k], ap[k]
                a = tuple(wp * x + wn * y for x, y in zip(ap[:k], an[:k]))
                combined.append((a, wp * bp + wn * bn))
        current = _normalize_system(combined)
        if current is None:
            return False
    return True


def feasible_strict(
    Aeq: Union[QMatrix, Sequence[Sequence[RationalLike]]],
    Apos: Union[QMatrix, Sequence[Sequence[RationalLike]]],
    cols: Optional[int] = None,
) -> bool:
    """
    ¿Existe c con Aeq·c = 0 y Apos·c > 0 componente a componente?

    Se parametriza el núcleo de Aeq (c = K·u); como el sistema estricto es homogéneo,
    equivale a K·u con Apos·K·u ≥ 1, que se decide por Fourier–Motzkin exacto.
    """
    Aeq = as_qmatrix(Aeq, cols=cols)
    Apos = as_qmatrix(Apos, cols=cols)
    n = max(Aeq.shape[1], Apos.shape[1]) if cols is None else cols
    if Aeq.shape[0] and Aeq.shape[1] != n or Apos.shape[0] and Apos.shape[1] != n:
        raise ValueError("Aeq y Apos deben compartir número de columnas")
    if Apos.shape[0] == 0:
        return True

    if Aeq.shape[0] == 0:
        basis = [qvector([1 if i == j else 0 for i in range(n)]) for j in range(n)]
    else:
        basis = nullspace(Aeq, cols=n)

    k = len(basis)
    system: List[Inequality] = []
    for i in range(Apos.shape[0]):
        row = Apos[i, :]
        coeffs = tuple(sum((row[j] * v[j] for j in range(n)), Fraction(0)) for v in basis)
        system.append((coeffs, Fraction(1)))
    return _fourier_motzkin(system, k)


# ============== Forma normal de Smith ==============

@dataclass(frozen=True)
class SmithForm:
    """U·A·V = S con U, V unimodulares y d₁ | d₂ | … en la diagonal de S"""
    U: ZMatrix
    S: ZMatrix
    V: ZMatrix

    @property
    def invariants(self) -> List[int]:
        """Entradas diagonales no nulas"""
        diagonal = [self.S[i, i] for i in range(min(self.S.shape))]
        return [int(d) for d in diagonal if d != 0]


def _to_int_matrix(M) -> ZMatrix:
    return zmatrix([[int(x) for x in row] for row in M.to_Matrix().tolist()], cols=M.shape[1])


def smith_normal_form(A: Union[ZMatrix, Sequence[Sequence[int]]]) -> SmithForm:
    """
    Forma normal de Smith con matrices de paso

    Returns:
        SmithForm(U, S, V) con U·A·V = S y diagonal no negativa
    """
    A = zmatrix(A.tolist() if isinstance(A, np.ndarray) else A,
                cols=A.shape[1] if isinstance(A, np.ndarray) else None)
    m, n = A.shape
    if m == 0 or n == 0 or all(x == 0 for x in A.flat):
        return SmithForm(U=identity(m, integral=True), S=zeros(m, n, integral=True), V=identity(n, integral=True))

    dm = DomainMatrix([[ZZ(int(x)) for x in row] for row in A.tolist()], (m, n), ZZ)
    S, U, V = smith_normal_decomp(dm)
    S, U, V = _to_int_matrix(S), _to_int_matrix(U), _to_int_matrix(V)

    # diagonal no negativa: cambiar el signo de la fila correspondiente de U
    for i in range(min(m, n)):
        if S[i, i] < 0:
            S[i, :] = [-x for x in S[i, :]]
            U[i, :] = [-x for x in U[i, :]]
    return SmithForm(U=U, S=S, V=V)


def invariant_factors(A: Union[ZMatrix, Sequence[Sequence[int]]]) -> List[int]:
    """Factores invariantes no nulos d₁ | d₂ | … sin construir U ni V"""
    A = zmatrix(A.tolist() if isinstance(A, np.ndarray) else A,
                cols=A.shape[1] if isinstance(A, np.ndarray) else None)
    m, n = A.shape
    if m == 0 or n == 0 or all(x == 0 for x in A.flat):
        return []
    dm = DomainMatrix([[ZZ(int(x)) for x in row] for row in A.tolist()], (m, n), ZZ)
    factors = [abs(int(d)) for d in _invariant_factors(dm)]
    return sorted(d for d in factors if d != 0)


# ============== Homología de complejos de cadenas ==============

@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    betti: int
    torsion: Tuple[int, ...] = ()


def homology_of_complex(boundaries: Sequence[ZMatrix]) -> List[HomologyGroup]:
    """
    Homología entera de un complejo de cadenas

    Args:
        boundaries: ∂_0, ∂_1, …, ∂_top; ∂_k tiene forma (dim C_{k-1}, dim C_k) y ∂_0 es (0, dim C_0)

    Raises:
        NotAComplex: si ∂_k ∘ ∂_{k+1} ≠ 0
    """
    maps = [zmatrix(d.tolist(), cols=d.shape[1]) if isinstance(d, np.ndarray) else zmatrix(d) for d in boundaries]
    for k in range(len(maps) - 1):
        lower, upper = maps[k], maps[k + 1]
        if lower.shape[1] != upper.shape[0]:
            raise NotAComplex(f"Dimensiones incompatibles entre ∂_{k} y ∂_{k + 1}")
        product = matmul(lower, upper)
        if any(x != 0 for x in product.flat):
            raise NotAComplex(f"∂_{k} ∘ ∂_{k + 1} ≠ 0")

    ranks = [rank(d) for d in maps] + [0]
    groups: List[HomologyGroup] = []
    for k, d in enumerate(maps):
        dim_k = d.shape[1]
        betti = dim_k - ranks[k] - ranks[k + 1]
        torsion: Tuple[int, ...] = ()
        if k + 1 < len(maps) and ranks[k + 1] > 0:
            torsion = tuple(x for x in invariant_factors(maps[k + 1]) if x > 1)
        groups.append(HomologyGroup(degree=k, betti=betti, torsion=torsion))
    logger.debug(f"[HOMOLOGY] Betti: {[g.betti for g in groups]}")
    return groups
