import itertools

import numpy as np
import pytest

from app.core.exceptions import BudgetExceeded, GroundSetMismatch, NotAPoset, NotRankTwo
from app.topology.oriented_matroid import (
    OrientedMatroid,
    Poset,
    VectorConfiguration,
    check_axioms,
    compose,
    convex_hull,
    fiber_circle,
    format_sign_vector,
    from_vectors,
    is_independent,
    is_single_cycle,
    is_strong_quotient,
    is_weak_specialization,
    nonzero_elements,
    order_complex,
    parse_sign_vector,
    rank,
    rank1_strong_quotients,
)
from app.topology.rational_linalg import qmatrix, rank as matrix_rank


def _config(*vectors):
    labels = "abcdefgh"[: len(vectors)]
    return VectorConfiguration(tuple(labels), tuple(vectors))


# ============== Vectores de signos ==============

def test_sign_vector_text_round_trip():
    assert parse_sign_vector("+0-") == (1, 0, -1)
    assert parse_sign_vector("+0−") == (1, 0, -1)
    assert format_sign_vector((1, 0, -1)) == "+0-"


def test_compose_examples():
    c = (1, 0, -1)
    assert compose(c, (0, 0, 0)) == c
    assert compose((0, 0, 0), c) == c
    assert compose((1, 0, -1), (0, 1, 1)) == (1, 1, -1)


def test_compose_rejects_length_mismatch():
    with pytest.raises(GroundSetMismatch):
        compose((1,), (1, 0))


# ============== Axiomas ==============

def test_rank_zero_passes_axioms():
    assert check_axioms(["a"], [(0,)]).passed


def test_missing_negation_fails_axiom_two():
    report = check_axioms(["a"], [(0,), (1,)])
    assert not report.passed
    assert report.axiom == 2
    assert report.witness == {"c": "+"}


def test_missing_zero_fails_axiom_one():
    report = check_axioms(["a"], [(1,), (-1,)])
    assert report.axiom == 1


def test_missing_composition_fails_axiom_three():
    L = [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)]
    report = check_axioms(["a", "b"], L)
    assert report.axiom == 3


def test_missing_elimination_fails_axiom_four():
    # ± de dos topes opuestos en un solo elemento, sin el covector que elimina a
    L = [(0, 0), (1, 1), (-1, -1), (1, -1), (-1, 1)]
    report = check_axioms(["a", "b"], L)
    assert report.axiom == 4
    assert report.to_dict()["status"] == "fail"


def test_realized_matroid_passes_axioms(plane_matroid):
    assert check_axioms(plane_matroid.elements, plane_matroid.covectors).passed


def test_random_configurations_satisfy_axioms_and_rank():
    rng = np.random.default_rng(11)
    for _ in range(8):
        size, dim = int(rng.integers(1, 6)), int(rng.integers(1, 4))
        vectors = tuple(tuple(int(x) for x in row) for row in rng.integers(-2, 3, size=(size, dim)))
        M = from_vectors(_config(*vectors))
        assert check_axioms(M.elements, M.covectors).passed
        assert M.rank == matrix_rank(qmatrix(vectors))


# ============== Realización ==============

def test_single_vector():
    M = from_vectors(_config((1,)))
    assert M.as_strings() == ["-", "0", "+"]


def test_plane_example_has_thirteen_covectors(plane_matroid):
    assert len(plane_matroid.covectors) == 13
    full = [c for c in plane_matroid.covectors if 0 not in c]
    assert len(full) == 6


def test_zero_vector_is_never_nonzero():
    M = from_vectors(_config((1, 0), (0, 0)))
    assert all(c[1] == 0 for c in M.covectors)
    assert nonzero_elements(M) == ["a"]


def test_realization_budget():
    with pytest.raises(BudgetExceeded):
        from_vectors(_config((1,), (1,), (1,)), budget=2)


def test_canonical_form_is_independent_of_input_order(plane_matroid):
    shuffled = OrientedMatroid(plane_matroid.elements, tuple(reversed(plane_matroid.covectors)))
    assert shuffled == plane_matroid


# ============== Predicados derivados ==============

def test_nonzero_of_rank_zero():
    assert nonzero_elements(OrientedMatroid.zero(["a", "b"])) == []


def test_independence(plane_matroid):
    assert is_independent(plane_matroid, [])
    assert is_independent(plane_matroid, ["a", "b"])
    assert not is_independent(plane_matroid, ["a", "b", "c"])


def test_rank_examples(plane_matroid):
    assert rank(OrientedMatroid.zero(["a"])) == 0
    assert rank(plane_matroid) == 2
    assert rank(from_vectors(_config((1, 2), (1, 2), (1, 2)))) == 1


def test_convex_hull():
    M = from_vectors(_config((1, 0), (2, 0), (0, 1)))
    assert convex_hull(M, M.elements) == list(M.elements)
    assert {"a", "b"} <= set(convex_hull(M, ["a"]))
    assert "c" not in convex_hull(M, ["a"])


def test_zero_elements_lie_in_every_hull():
    M = from_vectors(_config((1, 0), (0, 0), (0, 1)))
    for subset in ([], ["a"], ["c"]):
        assert "b" in convex_hull(M, subset)


# ============== Cocientes y especializaciones ==============

def test_strong_quotient_examples(plane_matroid):
    zero = OrientedMatroid.zero(plane_matroid.elements)
    assert is_strong_quotient(plane_matroid, plane_matroid)
    assert is_strong_quotient(plane_matroid, zero)
    for z in rank1_strong_quotients(plane_matroid):
        assert is_strong_quotient(plane_matroid, z)


def test_strong_quotient_requires_same_ground(plane_matroid):
    with pytest.raises(GroundSetMismatch):
        is_strong_quotient(plane_matroid, OrientedMatroid.zero(["x", "y", "z"]))


def test_weak_specialization_examples(plane_matroid):
    assert is_weak_specialization(plane_matroid, plane_matroid)
    rank_one = from_vectors(_config((1, 0), (1, 0), (1, 0)))
    assert not is_weak_specialization(plane_matroid, rank_one)


def test_rotation_onto_another_vector_is_a_specialization():
    general = from_vectors(_config((1, 0), (0, 1), (1, 1)))
    degenerate = from_vectors(_config((1, 0), (0, 1), (1, 0)))
    assert is_weak_specialization(general, degenerate)
    assert not is_weak_specialization(degenerate, general)


def test_rank_one_quotients():
    zero = OrientedMatroid.zero(["a"])
    assert rank1_strong_quotients(zero) == []
    line = from_vectors(_config((1,), (2,)))
    assert rank1_strong_quotients(line) == [line]


def test_plane_has_six_rank_one_quotients(plane_matroid):
    assert len(rank1_strong_quotients(plane_matroid)) == 6


@pytest.mark.parametrize("vectors, length", [
    (((1, 0), (0, 1)), 4),
    (((1, 0), (0, 1), (1, 1)), 6),
])
def test_fiber_circle_is_a_cycle(vectors, length):
    graph = fiber_circle(from_vectors(_config(*vectors)))
    assert graph.number_of_nodes() == length
    assert is_single_cycle(graph)


def test_fiber_circle_requires_rank_two():
    with pytest.raises(NotRankTwo):
        fiber_circle(from_vectors(_config((1, 0), (2, 0))))


# ============== Posets ==============

def test_order_complex_of_antichain():
    K = order_complex(Poset(("x", "y", "z"), frozenset()))
    assert K.dim == 0
    assert len(K.vertices) == 3


def test_order_complex_of_chain():
    K = order_complex(Poset.from_order("abc", lambda p, q: p < q))
    assert K.dim == 2
    assert [K.count(k) for k in range(3)] == [3, 3, 1]


def test_order_complex_of_triangle_faces_is_hexagon(circle):
    faces = [circle.label(s) for s in circle.simplices]
    K = order_complex(Poset.from_order(faces, lambda p, q: p != q and set(p) <= set(q)))
    assert K.is_circle()
    assert len(K.vertices) == 6


def test_poset_validation():
    with pytest.raises(NotAPoset):
        Poset(("a", "b"), frozenset({("a", "b"), ("b", "a")})).validate()
    with pytest.raises(NotAPoset):
        Poset(("a", "b", "c"), frozenset({("a", "b"), ("b", "c")})).validate()


def test_linear_extension_respects_order():
    P = Poset.from_order([3, 1, 2], lambda p, q: p < q)
    order = [P.elements[i] for i in P.linear_extension()]
    assert order == [1, 2, 3]
    for a, b in itertools.combinations(order, 2):
        assert (b, a) not in P.relation
