"""Servicio de ciclos fijadores y ciclos de Pontrjagin sobre los complejos ensamblados"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional
import logging

from app.core.logging_config import TimingLogger
from app.services.assembly_service import AssemblyService
from app.services.bundle_service import BundleService
from app.topology.associated import AssembledY, AssembledZ
from app.topology.bundles import CircleBundle, bundle_from_assembly
from app.topology.chains import Chain, Cochain
from app.topology.homology import fundamental_class, orientation_system
from app.topology.pontrjagin import (
    FixingCycle,
    FixingReport,
    find_fixing_cycle,
    pontrjagin_cycle,
    verify_fixing_cycle,
)
from app.topology.simplicial import LocalSystem, SimplicialComplex

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Pipeline:
    """X → (Y, Z, ρ, π, 𝒪, Θ, Ω, [X̃])"""
    X: SimplicialComplex
    n: int
    Y: AssembledY
    Z: AssembledZ
    bundle: CircleBundle
    theta: Cochain
    omega: Cochain
    orientation: LocalSystem
    fundamental: Chain
    omega_well_defined: bool = True


class PontrjaginService:
    def __init__(self, assembly: AssemblyService, bundles: BundleService):
        self.assembly = assembly
        self.bundles = bundles

    def pipeline(self, X: SimplicialComplex, n: Optional[int] = None, budget: Optional[int] = None,
                 mode: Optional[str] = None) -> Pipeline:
        n = X.dim if n is None else n
        with TimingLogger(f"Pipeline de Pontrjagin (n={n})", __name__):
            Y, Z = self.assembly.assemble(X, n, budget)
            bundle = bundle_from_assembly(Z)
            Theta = self.bundles.theta(bundle)
            result = self.bundles.omega(bundle, Theta, mode)
            Xt = Y.dual.subdivision
            D = orientation_system(Xt)
            fund = fundamental_class(Xt, D)
        logger.info(f"[FIXING] Pipeline listo: Y={Y.complex!r}, Z={Z.complex!r}")
        return Pipeline(X, n, Y, Z, bundle, Theta, result.omega, D, fund, result.well_defined)

    def find_fixing(self, p: Pipeline) -> FixingCycle:
        with TimingLogger("Búsqueda de ciclo fijador", __name__):
            return find_fixing_cycle(p.Y.pi, p.omega, p.fundamental, p.n)

    def verify_fixing(self, p: Pipeline, phi: Chain) -> FixingReport:
        with TimingLogger("Verificación de ciclo fijador", __name__):
            return verify_fixing_cycle(p.Y.pi, p.omega, phi, p.fundamental, p.n)

    def evaluate(self, p: Pipeline, i: int, phi: Optional[Chain] = None) -> Chain:
        """ζ_i a partir de φ (buscado si no se da)"""
        phi = phi if phi is not None else self.find_fixing(p).phi
        return pontrjagin_cycle(i, p.Y.pi, p.omega, phi, p.n, p.orientation)
