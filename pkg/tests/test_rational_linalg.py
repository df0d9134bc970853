from fractions import Fraction

import numpy as np
import pytest

from app.core.exceptions import Infeasible, NotAComplex
from app.topology.rational_linalg import (
    feasible_strict,
    format_rational,
    homology_of_complex,
    invariant_factors,
    matmul,
    matvec,
    min_norm_solution,
    nullspace,
    qmatrix,
    rank,
    smith_normal_form,
    solve_linear,
    to_rational,
    zmatrix,
)
from app.topology.chains import boundary_matrix
from app.topology.triangulations import projective_plane, triangle_circle


def _list(v):
    return [Fraction(x) for x in v]


# ============== Escalares ==============

def test_to_rational_accepts_exact_values():
    assert to_rational("3/6") == Fraction(1, 2)
    assert to_rational("−2") == Fraction(-2)
    assert to_rational(np.int64(4)) == Fraction(4)


def test_to_rational_rejects_floats():
    with pytest.raises(TypeError):
        to_rational(0.5)


def test_format_rational_is_canonical():
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational("−6/4") == "-3/2"


# ============== Sistemas lineales ==============

def test_solve_identity():
    solution = solve_linear([[1, 0], [0, 1]], [3, "-1/2"])
    assert _list(solution.particular) == [Fraction(3), Fraction(-1, 2)]
    assert solution.kernel == ()


def test_solve_single_equation_has_kernel():
    solution = solve_linear([[1, 1]], [1])
    assert _list(solution.particular) == [Fraction(1), Fraction(0)]
    assert [_list(k) for k in solution.kernel] == [[Fraction(1), Fraction(-1)]]


def test_solve_inconsistent_rows():
    with pytest.raises(Infeasible):
        solve_linear([[1], [2]], [1, 3])


def test_nullspace_of_rank_one_matrix():
    basis = nullspace([[1, 2, 3], [2, 4, 6]])
    assert len(basis) == 2
    A = qmatrix([[1, 2, 3], [2, 4, 6]])
    for k in basis:
        assert all(x == 0 for x in matvec(A, k))


@pytest.mark.parametrize("A, b, expected", [
    ([[1, 1]], [1], ["1/2", "1/2"]),
    ([[2]], [3], ["3/2"]),
    ([[1, 1, 1]], [1], ["1/3", "1/3", "1/3"]),
])
def test_min_norm_examples(A, b, expected):
    assert _list(min_norm_solution(A, b)) == [Fraction(x) for x in expected]


def test_min_norm_infeasible():
    with pytest.raises(Infeasible):
        min_norm_solution([[1], [1]], [1, 2])


def test_min_norm_beats_every_kernel_perturbation():
    """A·x = b exacto y ‖x + k‖² > ‖x‖² para perturbaciones del núcleo"""
    rng = np.random.default_rng(7)
    for _ in range(10):
        A = qmatrix(rng.integers(-3, 4, size=(2, 4)).tolist())
        x0 = [Fraction(int(v)) for v in rng.integers(-3, 4, size=4)]
        b = matvec(A, x0)
        x = min_norm_solution(A, b)
        assert list(matvec(A, x)) == list(b)
        basis = nullspace(A)
        norm = sum(v * v for v in x)
        for _ in range(10):
            weights = rng.integers(-3, 4, size=len(basis))
            if not any(weights):
                continue
            k = sum((int(w) * v for w, v in zip(weights, basis)), np.zeros(4, dtype=object))
            if all(v == 0 for v in k):
                continue
            assert sum((a + c) ** 2 for a, c in zip(x, k)) > norm


def test_rank_is_exact():
    assert rank(qmatrix([[1, 2], [2, 4]])) == 1
    assert rank(qmatrix([["1/3", 1], [1, 3]])) == 1
    assert rank(qmatrix([[1, 0], [0, 1]])) == 2


# ============== Factibilidad estricta ==============

def test_feasible_without_equalities():
    assert feasible_strict([], [[1]], cols=1)


def test_infeasible_when_equality_forces_zero():
    assert not feasible_strict([[1]], [[1]])


def test_infeasible_contradictory_signs():
    assert not feasible_strict([], [[1, 0], [-1, 0]], cols=2)


def test_feasible_open_cone():
    # c₁ > 0, c₂ > 0, c₁ − c₂ > 0
    assert feasible_strict([], [[1, 0], [0, 1], [1, -1]], cols=2)
    # y además c₁ + c₂ = 0: imposible
    assert not feasible_strict([[1, 1]], [[1, 0], [0, 1]])


# ============== Smith y homología ==============

def _diagonal(S):
    return [int(S[i, i]) for i in range(min(S.shape))]


def test_smith_diagonal():
    form = smith_normal_form([[2, 0], [0, 3]])
    assert _diagonal(form.S) == [1, 6]


def test_smith_rank_one():
    form = smith_normal_form([[1, 1], [1, 1]])
    assert _diagonal(form.S) == [1, 0]


def test_smith_transforms_reproduce_form():
    A = zmatrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    form = smith_normal_form(A)
    assert (matmul(matmul(form.U, A), form.V) == form.S).all()
    d = form.invariants
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))


def test_smith_of_zero_matrix():
    form = smith_normal_form(zmatrix([[0, 0], [0, 0]]))
    assert _diagonal(form.S) == [0, 0]
    assert (form.U == zmatrix([[1, 0], [0, 1]])).all()
    assert (form.V == zmatrix([[1, 0], [0, 1]])).all()


def test_invariant_factors_match_smith_form():
    A = zmatrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert invariant_factors(A) == smith_normal_form(A).invariants
    assert invariant_factors([[2, 0], [0, 3]]) == [1, 6]
    assert invariant_factors([[1, 1], [1, 1]]) == [1]
    assert invariant_factors(zmatrix([[0, 0]])) == []


def test_invariant_factors_of_projective_plane():
    assert invariant_factors(boundary_matrix(projective_plane(), 2))[-1] == 2


def _boundaries(X):
    return [boundary_matrix(X, k) for k in range(X.dim + 1)]


def test_homology_of_triangle_circle():
    groups = homology_of_complex(_boundaries(triangle_circle()))
    assert [(g.betti, g.torsion) for g in groups] == [(1, ()), (1, ())]


def test_homology_of_point():
    groups = homology_of_complex([zmatrix([], cols=1)])
    assert [(g.betti, g.torsion) for g in groups] == [(1, ())]


def test_homology_of_projective_plane_has_two_torsion():
    groups = homology_of_complex(_boundaries(projective_plane()))
    assert groups[0].betti == 1
    assert groups[1].betti == 0
    assert groups[1].torsion == (2,)
    assert groups[2].betti == 0


def test_homology_rejects_non_complex():
    with pytest.raises(NotAComplex):
        homology_of_complex([zmatrix([], cols=1), zmatrix([[1]]), zmatrix([[1]])])
