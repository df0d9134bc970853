"""Servicio de fibrados en círculos: Θ por arista en paralelo, Ω y números de Chern"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional
import logging

from app.core.logging_config import TimingLogger
from app.topology.bundles import CircleBundle, generate_circle_bundle
from app.topology.chains import Chain, Cochain
from app.topology.chern import OmegaResult, chern_number, omega, theta
from app.topology.homology import fundamental_class

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChernResult:
    theta: Cochain
    omega: OmegaResult
    fundamental: Chain
    chern: Fraction


class BundleService:
    """Cociclos de Chern de fibrados simpliciales en círculos"""

    def __init__(self, max_workers: int = 4, omega_mode: str = "strict", fiber_length: int = 3):
        self.omega_mode = omega_mode
        self.fiber_length = fiber_length
        self.executor = ThreadPoolExecutor(max_workers=max_workers)
        logger.info(f"[INFO] BundleService inicializado con {max_workers} workers (Ω {omega_mode})")

    def generate(self, euler: int, fiber_length: Optional[int] = None, equator: Optional[int] = None) -> CircleBundle:
        with TimingLogger(f"Generación del fibrado p={euler}", __name__):
            return generate_circle_bundle(euler, fiber_length or self.fiber_length, equator)

    def theta(self, bundle: CircleBundle) -> Cochain:
        with TimingLogger(f"Θ sobre {len(bundle.Y.faces(1))} aristas", __name__):
            return theta(bundle, mapper=self.executor.map)

    def omega(self, bundle: CircleBundle, Theta: Optional[Cochain] = None, mode: Optional[str] = None) -> OmegaResult:
        Theta = Theta if Theta is not None else self.theta(bundle)
        with TimingLogger("Ω", __name__):
            result = omega(bundle, Theta, mode or self.omega_mode)
        if not result.well_defined:
            logger.warning(f"[OMEGA] {sum(len(v) > 1 for v in result.spread.values())} símplices con levantamientos distintos")
        return result

    def chern(self, bundle: CircleBundle, mode: Optional[str] = None) -> ChernResult:
        """⟨Ω, [Y]⟩ para una base cerrada orientada en el sistema 𝒪"""
        Theta = self.theta(bundle)
        result = self.omega(bundle, Theta, mode)
        fund = fundamental_class(bundle.Y, result.omega.system)
        value = chern_number(result.omega, fund)
        logger.info(f"[CHERN] Número de Chern {value}")
        return ChernResult(Theta, result, fund, value)

    def shutdown(self) -> None:
        self.executor.shutdown(wait=True, cancel_futures=True)

    def __del__(self):
        try:
            self.executor.shutdown(wait=False, cancel_futures=True)
        except Exception as e:
            logger.error(f"[ERROR] Error cerrando executor: {e}")
