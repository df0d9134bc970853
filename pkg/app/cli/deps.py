from functools import lru_cache

from app.core.config import get_settings
from app.services.assembly_service import AssemblyService
from app.services.bundle_service import BundleService
from app.services.cache_service import RealizationCacheService
from app.services.pontrjagin_service import PontrjaginService


@lru_cache
def cache_service() -> RealizationCacheService:
    """Caché de realizaciones compartida por todos los comandos"""
    s = get_settings()
    return RealizationCacheService(max_size=s.REALIZATION_CACHE_SIZE)


@lru_cache
def assembly_service() -> AssemblyService:
    """Ensamblado de Y y Z con U_Δ en paralelo"""
    s = get_settings()
    return AssemblyService(
        cache_service(),
        max_workers=s.MAX_WORKERS,
        enumeration_budget=s.ENUMERATION_BUDGET,
        simplex_budget=s.SIMPLEX_BUDGET,
        samples=s.EMBEDDING_SAMPLES,
        seed=s.EMBEDDING_SEED,
        coord_range=s.EMBEDDING_COORD_RANGE,
    )


@lru_cache
def bundle_service() -> BundleService:
    s = get_settings()
    return BundleService(max_workers=s.MAX_WORKERS, omega_mode=s.OMEGA_MODE, fiber_length=s.FIBER_LENGTH)


@lru_cache
def pontrjagin_service() -> PontrjaginService:
    return PontrjaginService(assembly_service(), bundle_service())
