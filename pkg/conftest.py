"""Fixtures compartidas por las pruebas"""
import pytest

from app.services.assembly_service import AssemblyService
from app.services.bundle_service import BundleService
from app.services.cache_service import RealizationCacheService
from app.services.pontrjagin_service import PontrjaginService
from app.topology.oriented_matroid import VectorConfiguration, from_vectors
from app.topology.triangulations import triangle_circle


@pytest.fixture
def plane_config():
    """Tres vectores del plano en posición general: a=(1,0), b=(0,1), c=(1,1)"""
    return VectorConfiguration(("a", "b", "c"), ((1, 0), (0, 1), (1, 1)))


@pytest.fixture
def plane_matroid(plane_config):
    return from_vectors(plane_config)


@pytest.fixture
def circle():
    return triangle_circle()


@pytest.fixture
def cache():
    return RealizationCacheService(max_size=64)


@pytest.fixture
def assembly(cache):
    service = AssemblyService(cache, max_workers=2, samples=32, seed=0, coord_range=3)
    yield service
    service.shutdown()


@pytest.fixture
def bundles():
    service = BundleService(max_workers=2, omega_mode="strict", fiber_length=3)
    yield service
    service.shutdown()


@pytest.fixture
def pontrjagin(assembly, bundles):
    return PontrjaginService(assembly, bundles)


@pytest.fixture(scope="session")
def circle_pipeline():
    """Pipeline completo sobre el círculo de 3 vértices (n = 1)"""
    assembly = AssemblyService(RealizationCacheService(max_size=64), max_workers=2, samples=32)
    bundles = BundleService(max_workers=2)
    pipeline = PontrjaginService(assembly, bundles).pipeline(triangle_circle(), 1)
    yield pipeline
    assembly.shutdown()
    bundles.shutdown()
