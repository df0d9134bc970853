"""
Jerarquía de errores del dominio.

Todas las operaciones del núcleo lanzan subclases de PontrjaginError; la CLI las
convierte en un cuerpo JSON estructurado con código de salida 1.
"""
from typing import Any, Dict, Optional


class PontrjaginError(Exception):
    """Error base del dominio con detalle serializable"""

    def __init__(self, detail: str, witness: Optional[Any] = None):
        super().__init__(detail)
        self.detail = detail
        self.witness = witness

    def to_dict(self) -> Dict[str, Any]:
        body: Dict[str, Any] = {
            "status": "error",
            "error": type(self).__name__,
            "detail": self.detail,
        }
        if self.witness is not None:
            body["witness"] = self.witness
        return body


# === Álgebra lineal racional ===

class Infeasible(PontrjaginError):
    """El sistema lineal no tiene solución"""


class NotAComplex(PontrjaginError):
    """Los operadores borde no cumplen ∂∂ = 0"""


# === Matroides orientados ===

class BudgetExceeded(PontrjaginError):
    """Se superó el presupuesto de enumeración o de símplices"""


class GroundSetMismatch(PontrjaginError):
    """Los vectores de signos o matroides no comparten conjunto base"""


class NotRankTwo(PontrjaginError):
    """Se esperaba un matroide de rango 2"""


class NotAPoset(PontrjaginError):
    """La relación no es un orden parcial estricto"""


# === Topología simplicial ===

class NotPseudomanifold(PontrjaginError):
    """Alguna cara de codimensión 1 no está en exactamente dos símplices maximales"""


class NotOrientable(PontrjaginError):
    """No existe orientación coherente con el sistema local dado"""


class ComplexMismatch(PontrjaginError):
    """Cadenas o cocadenas sobre complejos distintos"""


class DegreeError(PontrjaginError):
    """Grados incompatibles"""


class SystemMismatch(PontrjaginError):
    """Sistemas locales incompatibles"""


# === Complejos asociados ===

class InvalidImage(PontrjaginError):
    """La imagen por el pegado no es un elemento válido de U_Δ′"""


# === Chern y Pontrjagin ===

class FiberNotCircle(PontrjaginError):
    """La fibra sobre un vértice no es un círculo simplicial"""


class NotABundle(PontrjaginError):
    """Las fibras orientadas no se transportan a lo largo de una arista"""


class InfeasibleCocycle(PontrjaginError):
    """El sistema δΘ = 0 sobre una arista no tiene solución"""


class NoLift(PontrjaginError):
    """Un 2-símplice de Y no tiene levantamiento en Z"""


class InconsistentLifts(PontrjaginError):
    """Los levantamientos de un 2-símplice dan valores distintos de δΘ"""


class NotACycle(PontrjaginError):
    """Se esperaba un ciclo y el borde no se anula"""


class NotFound(PontrjaginError):
    """No existe ciclo fijador dentro del complejo ensamblado"""


class Unsupported(PontrjaginError):
    """Opción reservada sin implementar"""
