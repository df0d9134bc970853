from __future__ import annotations

from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field

from app.schemas.matroids import Label, Rational, from_label, to_label
from app.topology.bundles import CircleBundle, make_bundle
from app.topology.chains import Chain, Cochain
from app.topology.homology import HomologyResult
from app.topology.rational_linalg import format_rational
from app.topology.simplicial import LocalSystem, SimplicialComplex, SimplicialMap


class ComplexModel(BaseModel):
    """{"vertices": [...], "simplices": [[...], ...]}; bastan los símplices maximales"""
    vertices: Optional[List[Label]] = None
    simplices: List[List[Label]]

    def to_domain(self, budget: Optional[int] = None) -> SimplicialComplex:
        simplices = [[to_label(v) for v in s] for s in self.simplices]
        if self.vertices is not None:
            vertices = [to_label(v) for v in self.vertices]
        else:
            # orden de primera aparición
            vertices = list(dict.fromkeys(v for s in simplices for v in s))
        return SimplicialComplex.from_labels(vertices, simplices, budget=budget)

    @classmethod
    def from_domain(cls, X: SimplicialComplex) -> "ComplexModel":
        return cls(
            vertices=[from_label(v) for v in X.vertices],
            simplices=[[from_label(v) for v in X.label(s)] for s in X.maximal],
        )


class EdgeSign(BaseModel):
    edge: Tuple[Label, Label]
    sign: Literal[1, -1]


class EdgeSigns(BaseModel):
    edge_signs: List[EdgeSign] = Field(default_factory=list)


SystemSpec = Union[Literal["trivial"], EdgeSigns]


def system_to_domain(spec: SystemSpec, X: SimplicialComplex) -> LocalSystem:
    """Las aristas omitidas tienen signo +1"""
    if spec == "trivial":
        return LocalSystem.trivial(X)
    signs = {(to_label(e.edge[0]), to_label(e.edge[1])): e.sign for e in spec.edge_signs}
    return LocalSystem.from_labels(X, signs)


def system_from_domain(system: LocalSystem) -> SystemSpec:
    if system.is_trivial:
        return "trivial"
    X = system.complex
    return EdgeSigns(edge_signs=[
        EdgeSign(edge=tuple(from_label(v) for v in X.label(e)), sign=-1)
        for e in sorted(system.negative)
    ])


class Term(BaseModel):
    simplex: List[Label]
    coeff: Rational


class ChainModel(BaseModel):
    """{"degree": k, "system": ..., "terms": [{"simplex": [...], "coeff": "p/q"}]}"""
    degree: int
    system: SystemSpec = "trivial"
    terms: List[Term] = Field(default_factory=list)

    def _terms(self):
        return [([to_label(v) for v in t.simplex], t.coeff) for t in self.terms]

    def to_chain(self, X: SimplicialComplex) -> Chain:
        return Chain.from_labels(X, self.degree, self._terms(), system_to_domain(self.system, X))

    def to_cochain(self, X: SimplicialComplex) -> Cochain:
        return Cochain.from_labels(X, self.degree, self._terms(), system_to_domain(self.system, X))

    @classmethod
    def from_domain(cls, c: Union[Chain, Cochain]) -> "ChainModel":
        return cls(
            degree=c.degree,
            system=system_from_domain(c.system),
            terms=[
                Term(simplex=[from_label(v) for v in c.complex.label(s)], coeff=format_rational(x))
                for s, x in c.terms.items()
            ],
        )


class BundleModel(BaseModel):
    """
    {"Z": <complejo>, "Y": <complejo>, "rho": [[z, y], ...], "orientation": <sistema>}

    Al leer, las fibras se orientan de nuevo y 𝒪 se recalcula; la orientación escrita
    es informativa.
    """
    Z: ComplexModel
    Y: ComplexModel
    rho: List[Tuple[Label, Label]]
    orientation: SystemSpec = "trivial"

    def to_domain(self) -> CircleBundle:
        Z, Y = self.Z.to_domain(), self.Y.to_domain()
        mapping = {to_label(z): to_label(y) for z, y in self.rho}
        return make_bundle(Z, Y, SimplicialMap.from_labels(Z, Y, mapping))

    @classmethod
    def from_domain(cls, bundle: CircleBundle) -> "BundleModel":
        Z, Y = bundle.Z, bundle.Y
        return cls(
            Z=ComplexModel.from_domain(Z),
            Y=ComplexModel.from_domain(Y),
            rho=[(from_label(Z.vertices[i]), from_label(Y.vertices[j])) for i, j in enumerate(bundle.rho.vertex_map)],
            orientation=system_from_domain(bundle.orientation),
        )


class HomologyModel(BaseModel):
    degree: int
    betti: int
    torsion: List[int] = Field(default_factory=list)
    representatives: Optional[List[ChainModel]] = None

    @classmethod
    def from_domain(cls, h: HomologyResult, with_representatives: bool = False) -> "HomologyModel":
        return cls(
            degree=h.degree,
            betti=h.betti,
            torsion=list(h.torsion),
            representatives=[ChainModel.from_domain(c) for c in h.representatives] if with_representatives else None,
        )


def dump(model: BaseModel) -> Dict[str, Any]:
    return model.model_dump(mode="json", exclude_none=True)
