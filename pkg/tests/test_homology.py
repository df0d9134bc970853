import pytest

from app.core.exceptions import DegreeError, NotOrientable, NotPseudomanifold
from app.topology.chains import Chain, boundary
from app.topology.homology import (
    betti_numbers,
    check_degree,
    fundamental_class,
    homology,
    is_homologous,
    orientation_system,
)
from app.topology.simplicial import LocalSystem, SimplicialComplex
from app.topology.triangulations import polygon, projective_plane, suspension, tetrahedron_boundary, torus


@pytest.mark.parametrize("build, expected", [
    (tetrahedron_boundary, [1, 0, 1]),
    (lambda: polygon(6), [1, 1]),
    (torus, [1, 2, 1]),
    (lambda: suspension(5), [1, 0, 1]),
])
def test_betti_numbers(build, expected):
    assert betti_numbers(build()) == expected


def test_projective_plane_integral_homology():
    groups = homology(projective_plane())
    assert [g.betti for g in groups] == [1, 0, 0]
    assert groups[1].torsion == (2,)


def test_projective_plane_twisted_top_homology():
    X = projective_plane()
    D = orientation_system(X)
    assert not D.is_trivial
    assert homology(X, D, k=2)[0].betti == 1


def test_degree_out_of_range_is_zero(circle):
    result = homology(circle, k=5)[0]
    assert result.degree == 5 and result.betti == 0


def test_representatives_are_independent_cycles():
    X = torus()
    result = homology(X, k=1, representatives=True)[0]
    assert len(result.representatives) == 2
    for z in result.representatives:
        assert boundary(z).is_zero
    first, second = result.representatives
    assert not is_homologous(first, second).homologous
    assert not is_homologous(first, Chain.zero(X, 1)).homologous


# ============== Prueba de homología ==============

def test_chain_is_homologous_to_itself(circle):
    c = Chain(circle, 1, LocalSystem.trivial(circle), {(0, 1): 1, (1, 2): 1, (0, 2): -1})
    check = is_homologous(c, c)
    assert check.homologous
    assert check.witness.is_zero


def test_vertices_of_connected_complex_are_homologous(circle):
    a = Chain(circle, 0, LocalSystem.trivial(circle), {(0,): 1})
    b = Chain(circle, 0, LocalSystem.trivial(circle), {(2,): 1})
    check = is_homologous(a, b)
    assert check.homologous
    assert boundary(check.witness) == a - b


def test_twisted_point_is_rationally_null(circle):
    """Con monodromía −1 la homología en grado 0 es de torsión: todo punto es nulo sobre ℚ"""
    D = LocalSystem.from_labels(circle, {("a", "b"): -1})
    a = Chain(circle, 0, D, {(0,): 1})
    assert homology(circle, D, k=0)[0].betti == 0
    assert is_homologous(a, Chain.zero(circle, 0, D)).homologous


# ============== Clase fundamental ==============

def test_fundamental_class_of_sphere_is_a_cycle():
    X = tetrahedron_boundary()
    M = fundamental_class(X)
    assert M.degree == 2
    assert boundary(M).is_zero
    assert all(abs(x) == 1 for x in M.terms.values())
    assert len(M.terms) == 4


def test_fundamental_class_of_circle(circle):
    M = fundamental_class(circle)
    assert boundary(M).is_zero
    assert len(M.terms) == 3


def test_projective_plane_needs_twisted_coefficients():
    X = projective_plane()
    with pytest.raises(NotOrientable):
        fundamental_class(X)
    M = fundamental_class(X, orientation_system(X))
    assert boundary(M).is_zero
    assert len(M.terms) == X.count(2)


def test_orientation_system_of_orientable_complex_is_trivial():
    assert orientation_system(torus()).is_trivial


def test_boundary_faces_break_pseudomanifold():
    X = SimplicialComplex.from_maximal("abcd", [[0, 1, 2], [1, 2, 3]])
    with pytest.raises(NotPseudomanifold) as error:
        fundamental_class(X)
    assert error.value.witness["count"] == 1


def test_impure_complex_is_not_a_pseudomanifold():
    X = SimplicialComplex.from_maximal("abcd", [[0, 1, 2], [2, 3]])
    with pytest.raises(NotPseudomanifold):
        fundamental_class(X)


def test_check_degree(circle):
    check_degree(Chain.zero(circle, 1), 1)
    with pytest.raises(DegreeError):
        check_degree(Chain.zero(circle, 1), 0)
