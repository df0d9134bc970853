"""Álgebra de la serie total de Pontrjagin: (1 + p₁ + p₂ + ⋯)(1 + p̃₁ + p̃₂ + ⋯) = 1"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import sympy


@dataclass(frozen=True)
class GradedSeries:
    """Componentes p₁, p₂, … (la componente i tiene grado 4i; término constante 1)"""
    components: Tuple[sympy.Expr, ...]

    @classmethod
    def symbolic(cls, degree: int, name: str = "p") -> "GradedSeries":
        return cls(tuple(sympy.symbols(f"{name}1:{degree + 1}")))

    @property
    def degree(self) -> int:
        return len(self.components)

    def as_ascii(self, prefix: str = "p") -> Dict[str, str]:
        return {f"{prefix}{i + 1}": to_ascii(c) for i, c in enumerate(self.components)}


def to_ascii(expr: sympy.Expr) -> str:
    return str(sympy.expand(expr)).replace("**", "^")


def invert_pontrjagin_series(s: GradedSeries) -> GradedSeries:
    """Inversa formal grado a grado: q_k = −Σ_{j=1..k} p_j q_{k−j}, q₀ = 1"""
    q = [sympy.Integer(1)]
    for k in range(1, s.degree + 1):
        q.append(sympy.expand(-sum(s.components[j - 1] * q[k - j] for j in range(1, k + 1))))
    return GradedSeries(tuple(q[1:]))


def pontrjagin_from_inverse(inverse: GradedSeries) -> GradedSeries:
    """p a partir de p̃; la relación es simétrica"""
    return invert_pontrjagin_series(inverse)


def inverse_classes(degree: int) -> Dict[str, str]:
    """p̃_i en función de p₁, …, p_degree, en ASCII"""
    return invert_pontrjagin_series(GradedSeries.symbolic(degree)).as_ascii("ptilde")


def substitute(s: GradedSeries, values: Sequence[sympy.Expr]) -> GradedSeries:
    """Evalúa la serie tomando p_i = values[i−1]"""
    symbols = sympy.symbols(f"p1:{len(values) + 1}")
    mapping = dict(zip(symbols, values))
    return GradedSeries(tuple(sympy.expand(c.subs(mapping)) for c in s.components))
