from fractions import Fraction

import pytest

from app.core.exceptions import DegreeError, NotFound
from app.topology.chains import Chain, Cochain
from app.topology.homology import fundamental_class
from app.topology.pontrjagin import (
    characteristic_chain,
    check_index,
    find_fixing_cycle,
    restrict_chain,
    twisted_system,
    verify_fixing_cycle,
)
from app.topology.simplicial import LocalSystem, SimplicialComplex, SimplicialMap
from app.topology.triangulations import polygon


# ============== Sistemas e índices ==============

def test_twisted_system_parity(circle):
    D = LocalSystem.trivial(circle)
    O = LocalSystem.from_labels(circle, {("a", "b"): -1})
    assert twisted_system(1, D, O) == D
    assert twisted_system(2, D, O) == O
    assert twisted_system(3, D, O).is_trivial
    assert twisted_system(2, O, O).is_trivial


@pytest.mark.parametrize("i, n", [(1, 4), (1, 7), (2, 8)])
def test_index_in_range(i, n):
    check_index(i, n)


@pytest.mark.parametrize("i, n", [(0, 4), (1, 3), (2, 7)])
def test_index_out_of_range(i, n):
    with pytest.raises(DegreeError):
        check_index(i, n)


def test_dimension_vanishing_reports_witness():
    with pytest.raises(DegreeError) as error:
        check_index(1, 2)
    assert error.value.witness == {"index": 1, "n": 2}


def test_characteristic_chain_on_a_triangle():
    X = SimplicialComplex.from_maximal("abc", [[0, 1, 2]])
    trivial = LocalSystem.trivial(X)
    Omega = Cochain(X, 2, trivial, {(0, 1, 2): 3})
    phi = Chain(X, 2, trivial, {(0, 1, 2): 1})
    zeta = characteristic_chain(Omega, 1, phi, SimplicialMap.identity(X), Fraction(1, 2))
    assert zeta.labelled_terms() == {("a",): Fraction(3, 2)}


def test_restrict_chain(circle):
    c = Chain(circle, 1, LocalSystem.trivial(circle), {(0, 1): 2, (1, 2): 1})
    assert restrict_chain(c, ["a", "b"]) == {("a", "b"): Fraction(2)}
    assert restrict_chain(c, ["c"]) == {}


# ============== Ciclo fijador del círculo ==============

def test_circle_pipeline_shape(circle_pipeline):
    p = circle_pipeline
    assert p.omega.is_zero
    assert p.omega_well_defined
    assert p.fundamental.degree == 1
    assert p.orientation.is_trivial


def test_found_fixing_cycle_verifies(circle_pipeline, pontrjagin):
    fixing = pontrjagin.find_fixing(circle_pipeline)
    assert fixing.witness.is_zero
    report = pontrjagin.verify_fixing(circle_pipeline, fixing.phi)
    assert report.passed
    assert report.pushed == circle_pipeline.fundamental


def test_zero_and_doubled_chains_do_not_fix(circle_pipeline, pontrjagin):
    phi = pontrjagin.find_fixing(circle_pipeline).phi
    for candidate in (Chain.zero(phi.complex, 1, phi.system), phi * 2):
        report = pontrjagin.verify_fixing(circle_pipeline, candidate)
        assert not report.passed
        assert report.check == "homologous"


def test_fixing_cycle_must_have_the_right_degree(circle_pipeline, pontrjagin):
    phi = pontrjagin.find_fixing(circle_pipeline).phi
    with pytest.raises(DegreeError):
        pontrjagin.verify_fixing(circle_pipeline, Chain.zero(phi.complex, 0, phi.system))


def test_open_chain_is_not_a_cycle(circle_pipeline):
    p = circle_pipeline
    phi = Chain(p.Y.complex, 1, LocalSystem.trivial(p.Y.complex), {p.Y.complex.faces(1)[0]: 1})
    report = verify_fixing_cycle(p.Y.pi, p.omega, phi, p.fundamental, p.n)
    assert report.check == "cycle"


def test_pontrjagin_cycle_of_a_curve_vanishes_by_dimension(circle_pipeline, pontrjagin):
    with pytest.raises(DegreeError):
        pontrjagin.evaluate(circle_pipeline, 1)


def test_no_fixing_cycle_when_pi_misses_the_target():
    hexagon = polygon(6)
    edge = SimplicialComplex.from_labels(["x", "y"], [["x", "y"]])
    pi = SimplicialMap.from_labels(edge, hexagon, {"x": "v0", "y": "v1"})
    Omega = Cochain.zero(edge, 2)
    with pytest.raises(NotFound):
        find_fixing_cycle(pi, Omega, fundamental_class(hexagon), 1)


# ============== Recubrimiento doble: ciclos fijadores no únicos ==============

@pytest.fixture
def two_sheets():
    """Dos copias del triángulo, ambas sobre X = ∂Δ²"""
    X = polygon(3)
    labels = ["v0", "v1", "v2", "w0", "w1", "w2"]
    Y = SimplicialComplex.from_labels(
        labels, [["v0", "v1"], ["v1", "v2"], ["v2", "v0"], ["w0", "w1"], ["w1", "w2"], ["w2", "w0"]]
    )
    pi = SimplicialMap.from_labels(Y, X, {v: "v" + v[1] for v in labels})
    return pi, Cochain.zero(Y, 2), fundamental_class(X)


def _sheet(pi, fund, prefix):
    terms = [(tuple(prefix + v[1] for v in simplex), x) for simplex, x in fund.labelled_terms().items()]
    return Chain.from_labels(pi.source, 1, terms)


def test_fixing_cycles_form_an_affine_family(two_sheets):
    pi, Omega, fund = two_sheets
    fixing = find_fixing_cycle(pi, Omega, fund, 1)
    assert fixing.solution_dimension == 1
    assert len(fixing.kernel) == 1
    for t in (1, -2, Fraction(1, 3)):
        shifted = fixing.phi + fixing.kernel[0] * t
        assert verify_fixing_cycle(pi, Omega, shifted, fund, 1).passed


def test_each_sheet_is_a_fixing_cycle(two_sheets):
    pi, Omega, fund = two_sheets
    upper, lower = _sheet(pi, fund, "v"), _sheet(pi, fund, "w")
    assert verify_fixing_cycle(pi, Omega, upper, fund, 1).passed
    assert verify_fixing_cycle(pi, Omega, lower, fund, 1).passed
    assert verify_fixing_cycle(pi, Omega, (upper + lower) * Fraction(1, 2), fund, 1).passed
    assert not verify_fixing_cycle(pi, Omega, upper + lower, fund, 1).passed
