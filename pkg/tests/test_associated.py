from collections import Counter

import pytest

from app.core.exceptions import BudgetExceeded, ComplexMismatch, InvalidImage
from app.topology.associated import (
    UElement,
    YVertex,
    ZVertex,
    assemble_Y,
    assemble_Z,
    build_local_Y,
    build_u_delta,
    closed_star,
    coface_poset,
    glue_map,
    validate_diagram,
    validate_y_vertex,
    validate_z_vertex,
    y_vertices_over,
)
from app.topology.oriented_matroid import VectorConfiguration, from_vectors, rank1_strong_quotients
from app.topology.simplicial import SimplicialComplex
from app.topology.triangulations import triangle_circle


def _matroid(X, *vectors):
    return from_vectors(VectorConfiguration(X.vertices, tuple(vectors)))


@pytest.fixture
def vertex_t(circle):
    """a en el origen con b y c a lados opuestos"""
    return _matroid(circle, (0, 1), (-1, 1), (1, 1))


@pytest.fixture
def edge_t(circle):
    """Arista ab con un punto interior en el origen; c fuera de la estrella"""
    return _matroid(circle, (-1, 1), (1, 1), (0, 0))


@pytest.fixture(scope="module")
def assembled():
    X = triangle_circle()
    Y = assemble_Y(X, 1, samples=32, seed=0, coord_range=3)
    return Y, assemble_Z(Y)


# ============== Estrellas ==============

def test_closed_star_of_vertex(circle):
    star = closed_star(circle, (0,))
    assert (1, 2) not in star
    assert {(0,), (1,), (2,), (0, 1), (0, 2)} == set(star)


def test_coface_poset_is_a_cone(circle):
    P = coface_poset(circle, (0,))
    assert len(P.elements) == 3
    assert ((0,), (0, 1)) in P.relation


# ============== Validación ==============

def test_valid_vertices(circle, vertex_t, edge_t):
    assert validate_y_vertex(circle, 1, YVertex((0,), vertex_t, vertex_t)).passed
    assert validate_y_vertex(circle, 1, YVertex((0, 1), edge_t, edge_t)).passed
    for z in rank1_strong_quotients(vertex_t):
        assert validate_z_vertex(circle, 1, ZVertex((0,), vertex_t, vertex_t, z)).passed


def test_quotient_must_come_from_t(circle, vertex_t):
    # c entre a y b: otro matroide de rango 2
    other = _matroid(circle, (1, 0), (0, 1), (1, 1))
    report = validate_y_vertex(circle, 1, YVertex((0,), vertex_t, other))
    assert not report.passed
    assert report.check == "t_to_y"


def test_nonzero_elements_must_be_the_star(circle, vertex_t):
    report = validate_y_vertex(circle, 1, YVertex((0, 1), vertex_t, vertex_t))
    assert report.check == "condition_1"
    assert report.witness["extra"] == ["c"]
    assert report.to_dict()["status"] == "fail"


def test_rank_of_t(circle):
    collinear = _matroid(circle, (1, 1), (2, 2), (3, 3))
    report = validate_y_vertex(circle, 1, YVertex((0,), collinear, collinear))
    assert report.check == "rank_t"
    assert report.witness == {"expected": 2, "actual": 1}


def test_ground_set_must_match(circle):
    foreign = from_vectors(VectorConfiguration(("x", "y", "z"), ((0, 1), (-1, 1), (1, 1))))
    report = validate_y_vertex(circle, 1, YVertex((0,), foreign, foreign))
    assert report.check == "ground_set"


def test_hull_condition(circle):
    # b en el cono de a y c: la arista ac contiene a b
    t = _matroid(circle, (-1, 1), (0, 1), (1, 1))
    report = validate_y_vertex(circle, 1, YVertex((0,), t, t))
    assert report.check == "condition_2_hull"


def test_unknown_simplex_is_rejected(circle, vertex_t):
    with pytest.raises(ComplexMismatch):
        validate_y_vertex(circle, 1, YVertex((0, 1, 2), vertex_t, vertex_t))


def test_constant_diagram_passes(circle, vertex_t):
    v = YVertex((0,), vertex_t, vertex_t)
    assert validate_diagram(circle, 1, [v, v]).passed


def test_diagram_rows_must_grow(circle, vertex_t, edge_t):
    report = validate_diagram(circle, 1, [YVertex((0, 1), edge_t, edge_t), YVertex((0,), vertex_t, vertex_t)])
    assert report.check == "delta_row"
    assert report.witness == {"position": 0}


def test_diagram_specializes_to_the_edge(circle, vertex_t, edge_t):
    diagram = [YVertex((0,), vertex_t, vertex_t), YVertex((0, 1), edge_t, edge_t)]
    assert validate_diagram(circle, 1, diagram).passed


def test_invalid_column_is_reported(circle, vertex_t):
    report = validate_diagram(circle, 1, [YVertex((0, 1), vertex_t, vertex_t)])
    assert report.check == "column_0:condition_1"


# ============== U_Δ y pegado ==============

@pytest.mark.parametrize("delta", [(0,), (1,), (0, 1), (1, 2)])
def test_u_delta_elements_are_valid(circle, delta):
    U = build_u_delta(circle, 1, delta, samples=32)
    assert U.incomplete
    assert len(U.elements) == 1
    for u in U.elements:
        assert validate_y_vertex(circle, 1, YVertex(U.delta, u.t, u.y)).passed


def test_u_delta_of_vertex_is_the_reflection_invariant_matroid(circle, vertex_t):
    U = build_u_delta(circle, 1, (0,), samples=32)
    assert U.elements == (UElement(vertex_t, vertex_t),)


def test_u_delta_budget(circle):
    with pytest.raises(BudgetExceeded) as error:
        build_u_delta(circle, 1, (0,), budget=2)
    assert error.value.witness == {"star": 3, "budget": 2}


def test_u_delta_is_deterministic(circle):
    first = build_u_delta(circle, 1, (0, 1), samples=4, seed=3)
    second = build_u_delta(circle, 1, (0, 1), samples=4, seed=3)
    assert first.elements == second.elements


def test_glue_onto_itself_is_identity(circle, vertex_t):
    u = UElement(vertex_t, vertex_t)
    assert glue_map(circle, 1, (0,), (0,))(u) == u


def test_glue_forgets_vertices_outside_the_star(circle, vertex_t, edge_t):
    image = glue_map(circle, 1, (0,), (0, 1))(UElement(vertex_t, vertex_t))
    assert image == UElement(edge_t, edge_t)


def test_glue_rejects_degenerate_images(circle):
    t = _matroid(circle, (1, 1), (2, 2), (0, 1))
    with pytest.raises(InvalidImage):
        glue_map(circle, 1, (0,), (0, 1))(UElement(t, t))


def test_glue_requires_a_coface(circle):
    with pytest.raises(ComplexMismatch):
        glue_map(circle, 1, (0, 1), (0,))


def test_local_product_over_a_vertex(circle):
    local = build_local_Y(circle, 1, (0,), samples=32)
    assert [local.complex.count(k) for k in range(2)] == [3, 2]
    assert sorted(v.delta for v in local.images) == [(0,), (0, 1), (0, 2)]


# ============== Ensamblado ==============

def test_y_of_triangle_is_a_hexagon(assembled):
    Y, _ = assembled
    assert Y.complex.is_circle()
    assert len(Y.complex.vertices) == 6
    assert sorted(Y.pi.vertex_map) == list(range(6))


def test_y_vertices_over_each_simplex(assembled):
    Y, _ = assembled
    for delta in Y.X.simplices:
        over = y_vertices_over(Y, delta)
        assert len(over) == 1
        assert Y.labels[over[0]].delta == delta


def test_z_fibers_are_circles(assembled):
    Y, Z = assembled
    assert len(Z.complex.vertices) == 30
    lengths = Counter()
    for i in range(len(Y.labels)):
        fiber = Z.rho.preimage((i,))
        vertices = [s for s in fiber if len(s) == 1]
        assert Z.complex.full_subcomplex([s[0] for s in vertices]).is_circle()
        lengths[len(vertices)] += 1
    assert lengths == Counter({6: 3, 4: 3})


def test_preimage_of_an_edge(assembled):
    Y, Z = assembled
    edge = Y.complex.faces(1)[0]
    counts = Counter(len(s) for s in Z.rho.preimage(edge))
    assert [counts[k] for k in range(1, 5)] == [10, 24, 18, 4]


def test_z_labels_lie_over_their_y_vertex(assembled):
    Y, Z = assembled
    for label, image in zip(Z.labels, Z.rho.vertex_map):
        assert label.base == Y.labels[image]
        assert validate_z_vertex(Y.X, 1, label).passed


def test_empty_complex_assembles_to_empty():
    Y = assemble_Y(SimplicialComplex.empty(), 1)
    Z = assemble_Z(Y)
    assert not Y.complex.simplices
    assert not Z.complex.simplices


def test_assembly_budget(circle):
    with pytest.raises(BudgetExceeded):
        assemble_Y(circle, 1, budget=3, samples=32)
