from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import prod

import pytest

from app.core.exceptions import NotABundle
from app.topology.bundles import cycle_terms, generate_circle_bundle
from app.topology.chains import Chain, Cochain, coboundary, evaluate
from app.topology.chern import chern_number, fiber_theta, omega, theta
from app.topology.homology import fundamental_class, homology
from app.topology.simplicial import LocalSystem, SimplicialComplex

EULER_NUMBERS = (-2, -1, 0, 1, 2, 3)


@pytest.fixture(scope="module")
def generated():
    """Fibrados sobre S² por número de Euler"""
    return {p: generate_circle_bundle(p) for p in EULER_NUMBERS}


def _chern(bundle):
    Theta = theta(bundle)
    Omega = omega(bundle, Theta).omega
    return chern_number(Omega, fundamental_class(bundle.Y, bundle.orientation))


# ============== Generador ==============

def test_generated_fibers_are_triangles(generated):
    bundle = generated[1]
    assert set(bundle.fibers) == set(range(len(bundle.Y.vertices)))
    assert all(len(cycle) == 3 for cycle in bundle.fibers.values())
    assert bundle.fiber_complex(0).is_circle()


def test_generator_validates_arguments():
    with pytest.raises(ValueError):
        generate_circle_bundle(1, fiber_length=2)
    with pytest.raises(ValueError):
        generate_circle_bundle(2, equator=4)


@pytest.mark.parametrize("p", EULER_NUMBERS)
def test_total_space_homology(generated, p):
    h1 = homology(generated[p].Z, k=1)[0]
    if p == 0:
        assert (h1.betti, h1.torsion) == (1, ())
    else:
        assert h1.betti == 0
        assert prod(h1.torsion) == abs(p)


# ============== Θ ==============

def test_fiber_theta_integrates_to_one(generated):
    bundle = generated[1]
    for v in range(len(bundle.Y.vertices)):
        local_theta = fiber_theta(bundle, v)
        m = len(bundle.fibers[v])
        assert all(abs(x) == Fraction(1, m) for x in local_theta.terms.values())
        fiber = local_theta.complex
        cycle = [fiber.index[bundle.Z.vertices[w]] for w in bundle.fibers[v]]
        loop = Chain(fiber, 1, LocalSystem.trivial(fiber), cycle_terms(cycle))
        assert evaluate(local_theta, loop) == 1


def test_theta_is_closed_on_vertical_triangles(generated):
    bundle = generated[2]
    dTheta = coboundary(theta(bundle))
    for tri in bundle.Z.faces(2):
        if len({bundle.rho.vertex_map[w] for w in tri}) < 3:
            assert dTheta[tri] == 0


def test_theta_is_deterministic(generated):
    bundle = generated[1]
    with ThreadPoolExecutor(max_workers=2) as executor:
        assert theta(bundle, executor.map) == theta(bundle)


# ============== Ω y número de Chern ==============

@pytest.mark.parametrize("p", EULER_NUMBERS)
def test_chern_number_recovers_euler_number(generated, p):
    assert _chern(generated[p]) == p


def test_omega_is_well_defined(generated):
    bundle = generated[2]
    result = omega(bundle, theta(bundle))
    assert result.well_defined
    assert set(result.spread) == set(bundle.Y.faces(2))


def test_pairing_ignores_exact_terms(generated):
    bundle = generated[1]
    Omega = omega(bundle, theta(bundle)).omega
    M = fundamental_class(bundle.Y, bundle.orientation)
    shift = Cochain(bundle.Y, 1, bundle.orientation, {e: Fraction(i % 3, 2) for i, e in enumerate(bundle.Y.faces(1))})
    assert evaluate(Omega + coboundary(shift), M) == evaluate(Omega, M)


def test_omega_rejects_unknown_mode(generated):
    bundle = generated[0]
    with pytest.raises(ValueError):
        omega(bundle, theta(bundle), mode="lenient")


def test_non_integral_pairing_of_integral_cycle():
    X = SimplicialComplex.from_maximal("abc", [[0, 1, 2]])
    trivial = LocalSystem.trivial(X)
    Omega = Cochain(X, 2, trivial, {(0, 1, 2): Fraction(1, 2)})
    with pytest.raises(NotABundle):
        chern_number(Omega, Chain(X, 2, trivial, {(0, 1, 2): 1}))
    assert chern_number(Omega, Chain(X, 2, trivial, {(0, 1, 2): Fraction(1, 3)})) == Fraction(1, 6)
