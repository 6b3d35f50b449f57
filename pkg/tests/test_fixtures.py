"""Cross-validation of the .lfoc corpus against the programmatic builders."""

import pytest

from lfoc import conj, parse_document, print_document
from lfoc import fixtures as fx


@pytest.mark.parametrize("name", fx.FIXTURES)
def test_fixture_files_round_trip(name):
    doc = fx.load_fixture(name)
    assert parse_document(print_document(doc)) == doc


def test_fol_file_matches_builders():
    doc = fx.load_fixture("fol")
    assert doc.footprints["FOL"] == fx.fol_footprint()
    assert doc.exprs["sibling"] == fx.sibling_expr()
    assert doc.exprs["daughters_only"] == fx.daughters_only_expr()
    assert doc.structures["Smiths"] == fx.smith_family()


def test_cat_file_matches_builders():
    doc = fx.load_fixture("cat")
    assert doc.footprints["CAT"] == fx.cat_footprint()
    assert doc.rules["id_exists"] == fx.identity_existence_rule()
    assert doc.rules["id_unique"] == fx.identity_uniqueness_rule()
    assert doc.structures["OneObj"] == fx.one_object_structure()


def test_alc_file_matches_builders():
    doc = fx.load_fixture("alc")
    assert doc.footprints["ALC"] == fx.alc_footprint()
    assert doc.exprs["some_happy_child"] == fx.exists_restriction(
        "hasChild", fx.concept("Happy"))
    assert doc.exprs["only_happy_children"] == fx.forall_restriction(
        "hasChild", fx.concept("Happy"))
    assert doc.structures["World"] == fx.alc_world()
    built = fx.gci_rule("gci_happy", conj(fx.concept("Person"), fx.concept("Happy")),
                        fx.forall_restriction("hasChild", fx.concept("Happy")))
    assert doc.rules["gci_happy"] == built


def test_ua_file_matches_builders():
    doc = fx.load_fixture("ua")
    assert doc.footprints["UA"] == fx.ua_footprint()
    assert doc.rules["final_exists"] == fx.final_rule()
    assert doc.rules["prod_exists"] == fx.product_rule()
    assert doc.structures["Cone"] == fx.cone_structure()


def test_fixture_path_rejects_unknown():
    with pytest.raises(ValueError, match="unknown fixture"):
        fx.fixture_path("nope")
