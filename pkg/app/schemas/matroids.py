from __future__ import annotations

from typing import Annotated, Any, Dict, Hashable, List, Optional, Sequence, Union

from pydantic import BaseModel, BeforeValidator, Field

from app.topology.associated import YVertex, ZVertex
from app.topology.oriented_matroid import OrientedMatroid, VectorConfiguration, parse_sign_vector
from app.topology.rational_linalg import format_rational, to_rational
from app.topology.simplicial import SimplicialComplex


def _canonical_rational(value: Any) -> str:
    if isinstance(value, float):
        raise ValueError("Los racionales se escriben como \"p/q\" o enteros JSON")
    return format_rational(to_rational(value))


# "p/q" o entero JSON; siempre se serializa en forma canónica
Rational = Annotated[str, BeforeValidator(_canonical_rational)]
Label = Union[str, int, List[Any]]


def to_label(value: Any) -> Hashable:
    """Las listas JSON se vuelven tuplas (vértices baricéntricos)"""
    if isinstance(value, list):
        return tuple(to_label(v) for v in value)
    return value


def from_label(value: Hashable) -> Any:
    if isinstance(value, tuple):
        return [from_label(v) for v in value]
    return value


class MatroidModel(BaseModel):
    """{"elements": [...], "covectors": ["+0-", ...]} en orden canónico"""
    elements: List[Label]
    covectors: List[str]

    def to_domain(self) -> OrientedMatroid:
        return OrientedMatroid.from_strings([to_label(e) for e in self.elements], self.covectors)

    def sign_vectors(self):
        return [parse_sign_vector(c) for c in self.covectors]

    @classmethod
    def from_domain(cls, M: OrientedMatroid) -> "MatroidModel":
        return cls(elements=[from_label(e) for e in M.elements], covectors=M.as_strings())


class VectorConfigurationModel(BaseModel):
    """{"vectors": {"a": ["1", "0"], ...}}; el orden de inserción es el del conjunto base"""
    vectors: Dict[str, List[Rational]]

    def to_domain(self) -> VectorConfiguration:
        return VectorConfiguration.from_mapping({k: [to_rational(x) for x in v] for k, v in self.vectors.items()})


class YVertexModel(BaseModel):
    delta: List[Label]
    t: MatroidModel
    y: MatroidModel

    def to_domain(self, X: SimplicialComplex) -> YVertex:
        return YVertex(X.simplex_of([to_label(v) for v in self.delta]), self.t.to_domain(), self.y.to_domain())

    @classmethod
    def from_domain(cls, X: SimplicialComplex, v: YVertex) -> "YVertexModel":
        return cls(
            delta=[from_label(x) for x in X.label(v.delta)],
            t=MatroidModel.from_domain(v.t),
            y=MatroidModel.from_domain(v.y),
        )


class ZVertexModel(YVertexModel):
    z: MatroidModel

    def to_domain(self, X: SimplicialComplex) -> ZVertex:
        base = super().to_domain(X)
        return ZVertex(base.delta, base.t, base.y, self.z.to_domain())

    @classmethod
    def from_domain(cls, X: SimplicialComplex, v: ZVertex) -> "ZVertexModel":
        base = YVertexModel.from_domain(X, v.base)
        return cls(**base.model_dump(), z=MatroidModel.from_domain(v.z))


class ReportModel(BaseModel):
    """Resultado de una verificación: nunca es un error"""
    status: str
    axiom: Optional[int] = None
    check: Optional[str] = None
    witness: Optional[Dict[str, Any]] = None

    def to_json(self) -> Dict[str, Any]:
        return self.model_dump(exclude_none=True)


class UDeltaModel(BaseModel):
    delta: List[Label]
    incomplete: bool = True
    elements: List[Dict[str, MatroidModel]] = Field(default_factory=list)
    order: List[List[int]] = Field(default_factory=list)


def u_delta_json(X: SimplicialComplex, u_delta) -> Dict[str, Any]:
    """Elementos (t, y) de U_Δ y los pares (i, j) con elemento i < elemento j"""
    model = UDeltaModel(
        delta=[from_label(v) for v in X.label(u_delta.delta)],
        incomplete=u_delta.incomplete,
        elements=[
            {"t": MatroidModel.from_domain(u.t), "y": MatroidModel.from_domain(u.y)}
            for u in u_delta.elements
        ],
        order=sorted([int(a), int(b)] for a, b in u_delta.poset.hasse_graph().edges()),
    )
    return model.model_dump()


def matroid_json(M: OrientedMatroid) -> Dict[str, Any]:
    return MatroidModel.from_domain(M).model_dump()


def matroids_json(Ms: Sequence[OrientedMatroid]) -> List[Dict[str, Any]]:
    return [matroid_json(M) for M in Ms]
