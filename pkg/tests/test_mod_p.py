import pytest

from services.poly.helper.PolynomialParser import format_polynomial, parse_polynomial
from services.presentations.ModPEliminator import ModPEliminator
from services.presentations.models import STATUS_PASS, BasicData, ClassicalBasicData
from shared.models.errors import EliminationError, FixtureUnavailableError, UsageError


@pytest.fixture(scope="module")
def eliminator(helper_config, fixture_loader) -> ModPEliminator:
    return ModPEliminator(helper_config, fixture_loader)


@pytest.mark.parametrize("group", ["G2", "F4", "E6", "E7"])
def test_relations_have_the_expected_shape(eliminator, group):
    report = eliminator.presentation_shape(group)
    assert report.passed
    assert {c.status for c in report.checks} == {STATUS_PASS}


def test_e8_shape_is_unavailable(eliminator):
    with pytest.raises(FixtureUnavailableError):
        eliminator.presentation_shape("E8")


def test_g2_mod_2(eliminator):
    presentation = eliminator.mod_p_presentation("G2", 2)
    ring = ("w1", "w2", "y3")
    assert presentation.generators == list(ring)
    assert presentation.relation("gamma2").polynomial == parse_polynomial("w1^2 + w1*w2 + w2^2", ring)
    assert presentation.relation("gamma3").polynomial == parse_polynomial("w1^3", ring)
    assert presentation.relation("h6").polynomial == parse_polynomial("y3^2", ring)
    assert presentation.substitutions == {}


def test_g2_mod_3_eliminates_y3(eliminator):
    presentation = eliminator.mod_p_presentation("G2", 3)
    ring = ("w1", "w2")
    assert presentation.generators == list(ring)
    assert format_polynomial(presentation.substitutions["y3"]) == "-w1^3"
    assert presentation.relation("gamma2").polynomial == parse_polynomial("w2^2", ring)
    assert presentation.relation("gamma6").polynomial == parse_polynomial("w1^6", ring)


@pytest.mark.parametrize("p", [2, 3])
def test_g2_hilbert_series(eliminator, p):
    presentation = eliminator.mod_p_presentation("G2", p)
    assert eliminator.graded_dimensions(presentation, 8) == [1, 2, 2, 2, 2, 2, 1, 0, 0]
    assert eliminator.expected_dimensions("G2", 8) == [1, 2, 2, 2, 2, 2, 1, 0, 0]


def test_e7_mod_2_degrees(eliminator):
    presentation = eliminator.mod_p_presentation("E7", 2)
    assert presentation.generators == [f"w{k}" for k in range(1, 8)] + ["y3", "y5", "y9"]
    assert presentation.relation_degrees() == [4, 6, 10, 12, 16, 18, 20, 24, 28, 36]
    assert sorted(r.name for r in presentation.relations if r.name.startswith("h")) == ["h10", "h18", "h6"]
    assert set(presentation.substitutions) == {"y4"}


def test_e7_mod_3_degrees(eliminator):
    presentation = eliminator.mod_p_presentation("E7", 3)
    assert presentation.generators == [f"w{k}" for k in range(1, 8)] + ["y4"]
    assert presentation.relation_degrees() == [4, 8, 12, 16, 20, 24, 28, 36]
    assert [r.name for r in presentation.relations if r.name.startswith("h")] == ["h12"]
    assert set(presentation.substitutions) == {"y3", "y5", "y9"}


def test_large_primes_eliminate_every_generator(eliminator):
    presentation = eliminator.mod_p_presentation("F4", 5)
    assert presentation.generators == ["w1", "w2", "w3", "w4"]
    assert set(presentation.substitutions) == {"y3", "y4"}


def test_payload_lists_relations(eliminator):
    payload = eliminator.mod_p_presentation("G2", 2).to_payload()
    assert payload["relation_degrees"] == [4, 6, 12]
    assert [r["name"] for r in payload["relations"]] == ["gamma2", "gamma3", "h6"]


def test_non_prime_modulus_is_rejected(eliminator):
    with pytest.raises(UsageError):
        eliminator.mod_p_presentation("G2", 4)


def test_vanishing_coefficient_stops_elimination(helper_config, scratch_loader):
    basic = (
        "basic_data:\n  G2: {k: 1, m: 1, rho_degrees: [4], y_degrees: [6], primes: [3], exponents: [2]}\n"
        "roles:\n  G2:\n    presentation: G2/T\n    rho: [g2]\n    generators:\n      y3: {lam: r3, mu: r6}\n"
    )
    eliminator = ModPEliminator(helper_config, scratch_loader(basic_data=basic))
    with pytest.raises(EliminationError):
        eliminator.mod_p_presentation("G2", 2)


@pytest.mark.slow
@pytest.mark.parametrize("p", [2, 3])
def test_f4_hilbert_series_up_to_degree_eight(eliminator, p):
    presentation = eliminator.mod_p_presentation("F4", p)
    assert eliminator.graded_dimensions(presentation, 8) == eliminator.expected_dimensions("F4", 8)


@pytest.mark.parametrize("group, p, expected", [
    ("G2", 2, ["1", "y3"]),
    ("F4", 2, ["1", "y3"]),
    ("F4", 3, ["1", "y4", "y4^2"]),
    ("E8", 5, ["1", "y6", "y6^2", "y6^3", "y6^4"]),
])
def test_monotonous_basis(eliminator, group, p, expected):
    assert [format_polynomial(m) for m in eliminator.monotonous_basis(group, p)] == expected


def test_monotonous_monomials_share_the_unit(eliminator):
    monomials = [format_polynomial(m) for m in eliminator.monotonous_monomials("F4")]
    assert monomials == ["1", "y3", "y4", "y4^2"]


def test_basic_data(eliminator):
    e8 = eliminator.basic_data("E8")
    assert isinstance(e8, BasicData)
    assert e8.primes == [2, 3, 2, 5, 2, 3, 2]
    assert e8.generator_names() == ["y3", "y4", "y5", "y6", "y9", "y10", "y15"]
    classical = eliminator.basic_data("A3")
    assert isinstance(classical, ClassicalBasicData)
    assert classical.km == "(n-1, 0)"
