from fractions import Fraction

import pytest
from pydantic import ValidationError

from app.schemas.complexes import BundleModel, ChainModel, ComplexModel, HomologyModel, Term, dump
from app.schemas.matroids import MatroidModel, VectorConfigurationModel, from_label, to_label
from app.topology.bundles import generate_circle_bundle
from app.topology.chains import Chain, Cochain
from app.topology.homology import homology
from app.topology.simplicial import LocalSystem
from app.topology.triangulations import projective_plane


def test_rationals_are_canonical():
    model = VectorConfigurationModel(vectors={"a": ["2/4", 3], "b": ["-6/3", "0"]})
    assert model.vectors == {"a": ["1/2", "3"], "b": ["-2", "0"]}
    config = model.to_domain()
    assert config.elements == ("a", "b")
    assert config.vectors[0] == (Fraction(1, 2), Fraction(3))


def test_rationals_reject_floats():
    with pytest.raises(ValidationError):
        VectorConfigurationModel(vectors={"a": [0.5]})
    with pytest.raises(ValidationError):
        Term(simplex=["a"], coeff=1.0)


def test_labels_nest_as_tuples():
    assert to_label(["a", ["b", 1]]) == ("a", ("b", 1))
    assert from_label(("a", ("b", 1))) == ["a", ["b", 1]]


def test_matroid_model(plane_matroid):
    model = MatroidModel.from_domain(plane_matroid)
    assert len(model.covectors) == 13
    assert MatroidModel(**model.model_dump()).to_domain() == plane_matroid


def test_complex_model_keeps_vertex_order():
    model = ComplexModel(simplices=[["b", "c"], ["a", "b"]])
    X = model.to_domain()
    assert X.vertices == ("b", "c", "a")
    assert ComplexModel(**dump(ComplexModel.from_domain(X))).to_domain() == X


def test_chain_model_with_twisted_system(circle):
    system = LocalSystem.from_labels(circle, {("a", "b"): -1})
    c = Chain(circle, 1, system, {(0, 1): Fraction(1, 2), (1, 2): -3})
    body = dump(ChainModel.from_domain(c))
    assert body["system"] == {"edge_signs": [{"edge": ["a", "b"], "sign": -1}]}
    assert {"simplex": ["a", "b"], "coeff": "1/2"} in body["terms"]
    assert ChainModel(**body).to_chain(circle) == c


def test_cochain_model(circle):
    f = Cochain(circle, 0, LocalSystem.trivial(circle), {(2,): 5})
    body = dump(ChainModel.from_domain(f))
    assert body["system"] == "trivial"
    assert ChainModel(**body).to_cochain(circle) == f


def test_chain_model_reversed_simplex(circle):
    model = ChainModel(degree=1, terms=[{"simplex": ["b", "a"], "coeff": "2"}])
    assert model.to_chain(circle).labelled_terms() == {("a", "b"): Fraction(-2)}


def test_homology_model():
    h = homology(projective_plane(), k=1)[0]
    assert dump(HomologyModel.from_domain(h)) == {"degree": 1, "betti": 0, "torsion": [2]}


def test_bundle_model_recomputes_orientations():
    bundle = generate_circle_bundle(1)
    body = dump(BundleModel.from_domain(bundle))
    restored = BundleModel(**body).to_domain()
    assert restored.Z == bundle.Z
    assert restored.Y == bundle.Y
    assert restored.fibers == bundle.fibers
    assert restored.orientation == bundle.orientation
