"""Caché acotada de matroides orientados realizados por configuraciones de vectores"""
from typing import Any, Dict, Hashable, List, Optional, Tuple
from collections import OrderedDict
import logging
import threading

from app.topology.oriented_matroid import OrientedMatroid, VectorConfiguration, from_vectors

logger = logging.getLogger(__name__)

CacheKey = Tuple[Hashable, ...]


class RealizationCacheService:
    """
    Caché de realizaciones indexada por la configuración racional exacta.

    Estructura:
    - HashMap (OrderedDict): {configuración: matroide}
    - Cola (lista): orden de inserción
    - Límite: max_size elementos, elimina el más viejo cuando se supera
    """

    def __init__(self, max_size: int = 512):
        """
        Args:
            max_size: Número máximo de matroides en caché (default: 512)
        """
        self.max_size = max_size
        self._cache: OrderedDict[CacheKey, OrientedMatroid] = OrderedDict()
        self._queue: List[CacheKey] = []
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0
        logger.info(f"[INFO] RealizationCacheService inicializado con max_size={max_size}")

    def get(self, key: CacheKey) -> Optional[OrientedMatroid]:
        with self._lock:
            result = self._cache.get(key)
            if result is not None:
                self.hits += 1
                logger.debug(f"[CACHE HIT] Configuración con {len(key[0])} vectores")
            else:
                self.misses += 1
            return result

    def set(self, key: CacheKey, matroid: OrientedMatroid) -> None:
        with self._lock:
            if key in self._cache:
                self._cache.move_to_end(key)
                self._cache[key] = matroid
                self._queue.remove(key)
                self._queue.append(key)
                return

            if self.max_size <= 0:
                return

            # Si llegamos al límite, eliminar el más viejo
            if len(self._cache) >= self.max_size:
                oldest = self._queue.pop(0)
                self._cache.pop(oldest, None)
                logger.info(f"[CACHE EVICTION] Límite alcanzado ({self.max_size}). Eliminada la realización más vieja")

            self._cache[key] = matroid
            self._queue.append(key)
            logger.debug(f"[CACHE ADD] Elementos en caché: {len(self._cache)}/{self.max_size}")

    def exists(self, key: CacheKey) -> bool:
        return key in self._cache

    def realize(self, config: VectorConfiguration, budget: Optional[int] = None) -> OrientedMatroid:
        """
        Realiza la configuración usando la caché

        Args:
            config: vectores racionales indexados por el conjunto base
            budget: presupuesto de enumeración (por defecto, |V|)
        """
        budget = len(config.elements) if budget is None else budget
        key = (config.key(), budget)
        cached = self.get(key)
        if cached is not None:
            return cached
        matroid = from_vectors(config, budget=budget)
        self.set(key, matroid)
        return matroid

    def clear(self) -> None:
        """Limpia todo el caché"""
        with self._lock:
            count = len(self._cache)
            self._cache.clear()
            self._queue.clear()
        logger.info(f"[CACHE CLEAR] Caché limpiado. {count} elementos eliminados.")

    def get_stats(self) -> Dict[str, Any]:
        return {
            "size": len(self._cache),
            "max_size": self.max_size,
            "usage_percent": (len(self._cache) / self.max_size * 100) if self.max_size > 0 else 0,
            "hits": self.hits,
            "misses": self.misses,
        }
