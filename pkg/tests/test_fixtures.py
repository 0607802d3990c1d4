import pytest

from services.presentations.FixtureLoader import FixtureLoader
from services.presentations.models import BasicData, Relation
from shared.models.errors import FixtureError, FixtureUnavailableError, UsageError


def test_every_presentation_is_loaded(fixture_loader):
    assert set(fixture_loader.presentations()) == {
        "G2/T", "F4/T", "E6/T", "E7/T", "E8/T", "F4/P{1}", "E6/P{2}", "E7/P{2}", "E8/P{2}",
    }


def test_presentation_contexts(fixture_loader):
    full = fixture_loader.presentation("E7/T")
    grassmannian = fixture_loader.presentation("E7/P{2}")
    assert full.is_full_flag and full.K == frozenset(range(1, 8))
    assert not grassmannian.is_full_flag and grassmannian.K == frozenset({2})
    assert full.relation("r18").tier == 3


def test_unknown_presentation_is_a_usage_error(fixture_loader):
    with pytest.raises(UsageError):
        fixture_loader.presentation("G2/P{1}")


def test_special_class_words_pass_validation(fixture_loader):
    for name in ("G2", "F4", "E6", "E7", "E8"):
        group = fixture_loader.special_class_group(name)
        assert all(len(word) == int(y[1:]) for y, word in group.all_classes().items())
    assert fixture_loader.special_class_group("F4").node == 1


def test_special_classes_are_sorted_by_degree(fixture_loader):
    assert list(fixture_loader.special_class_group("E8").all_classes()) == [
        "y3", "y4", "y5", "y6", "y7", "y8", "y9", "y10", "y15",
    ]


def test_non_reduced_word_is_rejected(scratch_loader):
    loader = scratch_loader(special_classes="F4:\n  node: 1\n  classes:\n    y3: [1, 1, 1]\n")
    with pytest.raises(FixtureError):
        loader.special_class_group("F4")


def test_non_minimal_word_is_rejected(scratch_loader):
    loader = scratch_loader(special_classes="F4:\n  node: 1\n  classes:\n    y3: [1, 2, 3]\n")
    with pytest.raises(FixtureError):
        loader.special_class_group("F4")


def test_word_length_must_match_the_name(scratch_loader):
    loader = scratch_loader(special_classes="F4:\n  node: 1\n  classes:\n    y3: [2, 1]\n")
    with pytest.raises(FixtureError):
        loader.special_classes()


def test_inhomogeneous_relation_is_rejected(scratch_loader):
    text = (
        "- name: G2/T\n  group: G2\n  parabolic: all\n  ring: [w1, w2, y3]\n"
        "  relations:\n    - {name: r3, polynomial: \"2*y3 - w1^2\"}\n"
    )
    with pytest.raises(FixtureError):
        scratch_loader(presentations=text).presentations()


def test_unknown_symbol_is_rejected(scratch_loader):
    text = (
        "- name: G2/T\n  group: G2\n  parabolic: all\n  ring: [w1, w2, y3]\n"
        "  relations:\n    - {name: r4, polynomial: \"y4 - w1^4\"}\n"
    )
    with pytest.raises(FixtureError):
        scratch_loader(presentations=text).presentations()


def test_missing_file_is_a_fixture_error(helper_config, run_config, tmp_path):
    loader = FixtureLoader(helper_config, run_config.model_copy(update={"fixture_dir": str(tmp_path)}))
    with pytest.raises(FixtureError):
        loader.golden_tables()


def test_erratum_relation_uses_its_alternative():
    relation = Relation(
        name="r8",
        polynomial="y4*(c4 - 2*w1*y3)",
        alternatives=["y4*(c4 - 2*w2*y3)"],
        erratum="w1 read as w2",
    )
    assert relation.effective_polynomial == "y4*(c4 - 2*w2*y3)"
    assert Relation(name="g2", polynomial="c2").effective_polynomial == "c2"


def test_chern_formulas_carry_their_flags(fixture_loader):
    f4 = {f.k: f for f in fixture_loader.chern_formulas("F4")}
    assert f4[5].corrected == "3*w1*y4"
    assert [f.k for f in fixture_loader.chern_formulas("E7") if f.sign_tolerant] == [5]


def test_basic_data_and_roles_agree(fixture_loader):
    data = fixture_loader.basic_data().basic_data["E7"]
    assert (data.k, data.m) == (3, 4)
    assert data.generator_names() == ["y3", "y4", "y5", "y9"]
    assert list(fixture_loader.roles("E7").generators) == data.generator_names()


def test_e8_has_no_roles(fixture_loader):
    with pytest.raises(FixtureUnavailableError):
        fixture_loader.roles("E8")


def test_roles_with_wrong_degrees_are_rejected(scratch_loader):
    text = (
        "basic_data:\n  G2: {k: 1, m: 1, rho_degrees: [4], y_degrees: [6], primes: [2], exponents: [2]}\n"
        "roles:\n  G2:\n    presentation: G2/T\n    rho: [r3]\n    generators:\n      y3: {lam: r3, mu: r6}\n"
    )
    with pytest.raises(FixtureError):
        scratch_loader(basic_data=text).basic_data()


def test_basic_data_validates_list_lengths():
    with pytest.raises(ValueError):
        BasicData(k=1, m=2, rho_degrees=[4], y_degrees=[6], primes=[2], exponents=[2])
    with pytest.raises(ValueError):
        BasicData(k=1, m=1, rho_degrees=[4], y_degrees=[6], primes=[7], exponents=[2])
