import itertools

import pytest

from services.lie_data.models import LieType
from services.poly.helper.PolynomialParser import parse_polynomial
from services.presentations.PresentationService import PresentationService, levi_chain
from services.presentations.models import (
    SKIP_BUDGET,
    SKIP_TIER,
    STATUS_ERRATUM,
    STATUS_FAIL,
    STATUS_PASS,
    STATUS_SKIPPED,
    VerificationReport,
)
from services.schubert.SchubertService import SchubertService
from shared.models.errors import UsageError


def statuses(report: VerificationReport) -> dict[str, str]:
    return {check.name: check.status for check in report.checks}


##########################################
############# CHERN CLASSES ##############
##########################################

async def test_f4_chern_formulas(presentation_service):
    report = await presentation_service.verify_chern_formulas("F4")
    assert statuses(report) == {
        "c1": STATUS_PASS, "c2": STATUS_PASS, "c3": STATUS_PASS,
        "c4": STATUS_PASS, "c5": STATUS_ERRATUM, "c6": STATUS_PASS,
    }
    c5 = next(c for c in report.checks if c.name == "c5")
    assert c5.variant == "3*w1*y4"


async def test_e6_chern_formulas(presentation_service):
    report = await presentation_service.verify_chern_formulas("E6")
    assert set(statuses(report).values()) == {STATUS_PASS}


async def test_g2_has_no_chern_formulas(presentation_service):
    with pytest.raises(UsageError):
        await presentation_service.verify_chern_formulas("G2")


@pytest.mark.parametrize("group", ["F4", "E6"])
async def test_chern_coefficient_rows(presentation_service, group):
    report = await presentation_service.chern_coefficient_report(group)
    assert report.passed
    assert set(statuses(report).values()) == {STATUS_PASS}


async def test_f4_giambelli_report(presentation_service):
    report = await presentation_service.giambelli_report("F4")
    assert report.passed
    assert report.status_of("solver:4") == STATUS_PASS
    assert report.status_of("s4_1") == STATUS_PASS


async def test_e6_giambelli_misprint_is_flagged(presentation_service):
    report = await presentation_service.giambelli_report("E6")
    assert report.passed
    assert report.status_of("s5_2") == STATUS_ERRATUM


##########################################
############### RELATIONS ################
##########################################

@pytest.mark.parametrize("name", ["G2/T", "F4/P{1}", "F4/T"])
async def test_relations_vanish(presentation_service, name):
    report = await presentation_service.verify_relations(name)
    assert set(statuses(report).values()) == {STATUS_PASS}


async def test_e6_grassmannian_relations(presentation_service):
    report = await presentation_service.verify_relations("E6/P{2}")
    assert set(statuses(report).values()) == {STATUS_PASS}


async def test_corrected_e6_r8_vanishes_on_the_grassmannian(presentation_service):
    fixture = presentation_service.loader.presentations()["E6/T"]
    relation = next(r for r in fixture.relations if r.name == "r8")
    assert relation.alternatives == ["y4*(c4 - w2^4) - 2*c5*y3 - w2^2*c6 + w2^3*c5"]
    grassmannian = await presentation_service.grassmannian(LieType.parse("E6"))
    value = grassmannian.evaluate_generator_polynomial(
        parse_polynomial(relation.alternatives[0]), presentation_service.special_generators(grassmannian)
    )
    assert value.is_zero


@pytest.mark.slow
async def test_e6_full_flag_relations_use_the_corrected_r8(presentation_service):
    report = await presentation_service.verify_relations("E6/T")
    assert report.status_of("r8") == STATUS_ERRATUM
    r8 = [c for c in report.checks if c.name == "r8"][0]
    assert r8.variant == "y4*(c4 - w2^4) - 2*c5*y3 - w2^2*c6 + w2^3*c5"
    assert "r6" in r8.note
    assert report.passed


@pytest.mark.slow
async def test_e7_grassmannian_relations_up_to_tier_two(presentation_service):
    report = await presentation_service.verify_relations("E7/P{2}")
    assert report.status_of("r18") == STATUS_SKIPPED
    assert all(check.status == STATUS_PASS for check in report.checks if check.name != "r18")


async def test_relations_above_the_tier_are_skipped(helper_config, run_config, fixture_loader):
    config = run_config.model_copy(update={"tier": 1})
    service = PresentationService(helper_config, config, SchubertService(helper_config, config), fixture_loader)
    report = await service.verify_relations("E7/T")
    assert {check.reason for check in report.checks} == {SKIP_TIER}
    assert report.passed


async def test_exhausted_budget_skips_the_rest(helper_config, run_config, fixture_loader):
    config = run_config.model_copy(update={"budget_seconds": 5})
    service = PresentationService(helper_config, config, SchubertService(helper_config, config), fixture_loader)
    ticks = itertools.count(0, 4)
    service._clock = lambda: next(ticks)
    report = await service.verify_relations("G2/T")
    assert report.status_of("g2") == STATUS_PASS
    assert [c.reason for c in report.checks[1:]] == [SKIP_BUDGET, SKIP_BUDGET]


async def test_failing_relation_reports_its_value(scratch_loader, helper_config, run_config):
    text = (
        "- name: G2/T\n  group: G2\n  parabolic: all\n  ring: [w1, w2, y3]\n"
        "  relations:\n    - {name: r3, polynomial: \"y3 - w1^3\"}\n"
    )
    service = PresentationService(
        helper_config, run_config, SchubertService(helper_config, run_config), scratch_loader(presentations=text)
    )
    report = await service.verify_relations("G2/T")
    assert report.status_of("r3") == STATUS_FAIL
    assert report.failures[0].witness["degree"] == 3


##########################################
######### GENERATION AND KERNEL ##########
##########################################

@pytest.mark.parametrize("name, degree", [("G2/T", 6), ("F4/P{1}", 15)])
async def test_generation(presentation_service, name, degree):
    report = await presentation_service.verify_generation(name, degree)
    assert len(report.checks) == degree + 1
    assert set(statuses(report).values()) == {STATUS_PASS}


@pytest.mark.parametrize("name, degree", [("G2/T", 6), ("F4/P{1}", 12)])
async def test_kernel_equals_the_ideal(presentation_service, name, degree):
    report = await presentation_service.verify_kernel(name, degree)
    assert set(statuses(report).values()) == {STATUS_PASS}


async def test_missing_relation_leaves_kernel_elements(scratch_loader, helper_config, run_config):
    text = (
        "- name: G2/T\n  group: G2\n  parabolic: all\n  ring: [w1, w2, y3]\n"
        "  relations:\n"
        "    - {name: g2, polynomial: \"3*w1^2 - 3*w1*w2 + w2^2\"}\n"
        "    - {name: r3, polynomial: \"2*y3 - w1^3\"}\n"
    )
    service = PresentationService(
        helper_config, run_config, SchubertService(helper_config, run_config), scratch_loader(presentations=text)
    )
    report = await service.verify_kernel("G2/T", 6)
    assert all(report.status_of(f"degree-{r}") == STATUS_PASS for r in range(6))
    assert report.status_of("degree-6") == STATUS_FAIL
    assert "kernel_element_outside_ideal" in report.failures[0].witness


##########################################
############## RESTRICTION ###############
##########################################

def test_levi_chains():
    fibre, chain, dropped = levi_chain(LieType.parse("E6"))
    assert fibre.name == "A5" and dropped == 2
    assert chain == {6: 1, 5: 2, 4: 3, 3: 4, 1: 5}
    fibre, chain, dropped = levi_chain(LieType.parse("F4"))
    assert fibre.name == "C3" and dropped == 1
    assert chain == {4: 1, 3: 2, 2: 3}
    with pytest.raises(UsageError):
        levi_chain(LieType.parse("G2"))


@pytest.mark.parametrize("group", ["F4", "E6", "E7"])
async def test_restriction_to_the_classical_fibre(presentation_service, group):
    report = await presentation_service.verify_restriction(group)
    assert report.passed
    assert "A3:s4" in statuses(report)


async def test_classical_relations_vanish(presentation_service):
    report = await presentation_service.verify_classical_relations("C3")
    assert statuses(report) == {"s2": STATUS_PASS, "s4": STATUS_PASS, "s6": STATUS_PASS}


##########################################
######### MONOTONOUS GENERATION ##########
##########################################

@pytest.mark.parametrize("group, degree", [("G2", 6), ("F4", 6)])
async def test_monotonous_monomials_span(presentation_service, group, degree):
    report = await presentation_service.verify_monotonous_spanning(group, degree)
    assert set(statuses(report).values()) == {STATUS_PASS}


async def test_payload_counts_statuses(presentation_service):
    payload = (await presentation_service.verify_relations("G2/T")).to_payload()
    assert payload["passed"] is True
    assert payload["counts"] == {STATUS_PASS: 3}
    assert [c["name"] for c in payload["checks"]] == ["g2", "r3", "r6"]
