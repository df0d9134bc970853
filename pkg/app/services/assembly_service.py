"""Servicio de ensamblado de los complejos asociados con procesamiento paralelo"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Optional, Sequence, Tuple
import logging

from app.core.logging_config import TimingLogger
from app.services.cache_service import RealizationCacheService
from app.topology.associated import (
    AssembledY,
    AssembledZ,
    LocalY,
    UDeltaPoset,
    assemble_Y,
    assemble_Z,
    build_local_Y,
    build_u_delta,
)
from app.topology.simplicial import Simplex, SimplicialComplex

logger = logging.getLogger(__name__)


class AssemblyService:
    """
    Construye U_Δ para cada símplice en paralelo y ensambla Y y Z en un solo hilo.

    Las realizaciones de matroides pasan por la caché compartida.
    """

    def __init__(
        self,
        cache: RealizationCacheService,
        max_workers: int = 4,
        enumeration_budget: int = 12,
        simplex_budget: int = 1_000_000,
        samples: int = 64,
        seed: int = 0,
        coord_range: int = 3,
    ):
        self.cache = cache
        self.enumeration_budget = enumeration_budget
        self.simplex_budget = simplex_budget
        self.sampling = {"samples": samples, "seed": seed, "coord_range": coord_range}
        self.executor = ThreadPoolExecutor(max_workers=max_workers)
        logger.info(f"[INFO] AssemblyService inicializado con {max_workers} workers")

    def _realize(self, config):
        return self.cache.realize(config)

    def u_delta(self, X: SimplicialComplex, n: int, delta: Sequence[int], budget: Optional[int] = None) -> UDeltaPoset:
        return build_u_delta(
            X, n, delta,
            budget=self.enumeration_budget if budget is None else budget,
            realize=self._realize,
            **self.sampling,
        )

    def u_deltas(self, X: SimplicialComplex, n: int) -> Dict[Simplex, UDeltaPoset]:
        """U_Δ para todos los símplices de X, indexado por Δ"""
        with TimingLogger(f"U_Δ para {len(X.simplices)} símplices", __name__):
            futures = {delta: self.executor.submit(self.u_delta, X, n, delta) for delta in X.simplices}
            results = {delta: f.result() for delta, f in futures.items()}
        logger.debug(f"[UDELTA] Caché: {self.cache.get_stats()}")
        return results

    def local_y(self, X: SimplicialComplex, n: int, delta: Sequence[int], budget: Optional[int] = None) -> LocalY:
        u = self.u_delta(X, n, delta)
        return build_local_Y(X, n, delta, u_delta=u, simplex_budget=self.simplex_budget if budget is None else budget)

    def assemble(self, X: SimplicialComplex, n: int, budget: Optional[int] = None) -> Tuple[AssembledY, AssembledZ]:
        """
        Y, Z con ρ: Z → Y y π: Y → X̃

        Args:
            X: variedad combinatoria de dimensión n
            budget: símplices máximos (por defecto, SIMPLEX_BUDGET)
        """
        budget = self.simplex_budget if budget is None else budget
        u_deltas = self.u_deltas(X, n)
        with TimingLogger("Ensamblado de Y", __name__):
            Y = assemble_Y(X, n, budget=budget, u_deltas=u_deltas, enumeration_budget=self.enumeration_budget)
        with TimingLogger("Ensamblado de Z", __name__):
            Z = assemble_Z(Y, budget=budget)
        return Y, Z

    def shutdown(self) -> None:
        self.executor.shutdown(wait=True, cancel_futures=True)

    def __del__(self):
        """Limpieza del executor al destruir el servicio"""
        try:
            self.executor.shutdown(wait=False, cancel_futures=True)
        except Exception as e:
            logger.error(f"[ERROR] Error cerrando executor: {e}")
