import json

import pytest
import yaml

from cli.main import build_parser, main, run
from tests.conftest import CONFIG_DIR


@pytest.fixture
def cli(monkeypatch, tmp_path, capsys):
    """Run one command against a scratch cache; returns (exit code, parsed stdout)."""
    monkeypatch.setenv("CACHE_FILE_DIR", str(tmp_path / "cache"))
    monkeypatch.setenv("SCHUBERT_FIXTURE_DIR", str(CONFIG_DIR))

    async def invoke(*argv: str):
        code = await run(build_parser().parse_args(list(argv)))
        out = capsys.readouterr().out
        if "--format" in argv and argv[argv.index("--format") + 1] == "text":
            return code, yaml.safe_load(out)
        return code, json.loads(out) if out else None

    return invoke


##########################################
############### SCHUBERT #################
##########################################

@pytest.mark.parametrize("group, parabolic, size", [("G2", "1,2", 12), ("G2", "all", 12), ("F4", "1", 24)])
async def test_enumerate(cli, group, parabolic, size):
    code, payload = await cli("enumerate", "--group", group, "--parabolic", parabolic)
    assert code == 0
    assert payload["size"] == size
    assert len(payload["entries"]) == size
    assert payload["entries"][0] == {"r": 0, "i": 1, "word": []}


async def test_enumerate_up_to_length_zero(cli):
    code, payload = await cli("enumerate", "--group", "F4", "--parabolic", "1", "--max-length", "0")
    assert code == 0
    assert payload["entries"] == [{"r": 0, "i": 1, "word": []}]
    assert payload["complete"] is False


@pytest.mark.parametrize("group, parabolic, poly, expected", [
    ("F4", "1", "c3", [("1", "6")]),
    ("F4", "1", "c4", [("1", "2"), ("2", "7")]),
    ("E6", "2", "c4", [("1", "1"), ("2", "2"), ("3", "4")]),
    ("F4", "1", "1", [("1", "1")]),
])
async def test_expand(cli, group, parabolic, poly, expected):
    code, payload = await cli("expand", "--group", group, "--parabolic", parabolic, "--poly", poly)
    assert code == 0
    assert [(str(c["i"]), c["value"]) for c in payload["coefficients"]] == expected


async def test_expand_mixed_expression_vanishes(cli):
    code, payload = await cli("expand", "--group", "G2", "--poly", "2*y3 - w1^3")
    assert code == 0
    assert payload["degree"] == 3
    assert payload["coefficients"] == []


async def test_inhomogeneous_input_is_a_usage_error(cli):
    code, payload = await cli("expand", "--group", "F4", "--parabolic", "1", "--poly", "w1 + w1^2")
    assert code == 2
    assert payload["error"]["type"] == "UsageError"


async def test_bad_parabolic_is_a_usage_error(cli):
    code, payload = await cli("enumerate", "--group", "F4", "--parabolic", "one")
    assert code == 2
    assert "parabolic" in payload["error"]["message"]


async def test_multiply_special_classes(cli):
    code, payload = await cli("multiply", "--group", "G2", "--left", "y3", "--right", "y3")
    assert code == 0
    assert payload["degree"] == 6
    assert payload["coefficients"] == []


async def test_giambelli(cli):
    code, payload = await cli("giambelli", "--group", "F4", "--parabolic", "1", "--degree", "4")
    assert code == 0
    assert [entry["class"] for entry in payload["entries"]] == ["s4_1", "s4_2"]
    assert {"w1", "y3", "y4"} <= set(payload["generators"])


async def test_chern_report(cli):
    code, payload = await cli("chern", "--group", "F4")
    assert code == 0
    assert payload["passed"] is True
    assert payload["counts"]["pass-with-erratum"] == 1


##########################################
############### VERIFY ###################
##########################################

async def test_verify_fixture_with_generation_and_kernel(cli):
    code, payload = await cli(
        "verify", "--fixture", "G2/T", "--generation-degree", "6", "--kernel-degree", "6"
    )
    assert code == 0
    assert [report["title"] for report in payload["reports"]] == ["G2/T relations", "G2/T generation", "G2/T kernel"]
    assert set(payload["counts"]) == {"pass"}


async def test_verify_restriction_of_a_classical_type(cli):
    code, payload = await cli("verify", "--restriction", "A2")
    assert code == 0
    assert [c["name"] for c in payload["reports"][0]["checks"]] == ["s2", "s3"]


async def test_verify_tier_one_skips(cli):
    code, payload = await cli("verify", "--fixture", "E7/T", "--tier", "1")
    assert code == 0
    assert set(payload["counts"]) == {"skipped"}


async def test_verify_by_theorem_number(cli):
    code, payload = await cli("verify", "--theorem", "1")
    assert code == 0
    assert [report["title"] for report in payload["reports"]] == ["G2/T relations"]
    assert set(payload["counts"]) == {"pass"}


async def test_verify_theorem_five_at_tier_one(cli):
    code, payload = await cli("verify", "--theorem", "5", "--tier", "1")
    assert code == 0
    assert [report["title"] for report in payload["reports"]] == ["E8/T relations"]
    checks = {c["name"]: c for c in payload["reports"][0]["checks"]}
    assert {"r12", "r14", "r15", "r18", "r20"} <= set(checks)
    assert all(checks[name]["status"] == "skipped" for name in ("r12", "r14", "r15", "r18", "r20"))
    assert payload["counts"]["skipped"] == len(checks)


def test_theorem_numbers_outside_one_to_five_are_rejected():
    with pytest.raises(SystemExit) as exit_info:
        build_parser().parse_args(["verify", "--theorem", "6"])
    assert exit_info.value.code == 2


async def test_verify_needs_a_selection(cli):
    code, payload = await cli("verify")
    assert code == 2
    assert payload["error"]["type"] == "UsageError"


async def test_verify_unknown_fixture(cli):
    code, _ = await cli("verify", "--fixture", "G2/P{1}")
    assert code == 2


async def test_tables(cli):
    code, payload = await cli("tables", "--group", "F4")
    assert code == 0
    assert [report["title"] for report in payload["reports"]] == ["F4 Chern coefficients", "F4 Giambelli polynomials"]


async def test_shape(cli):
    code, payload = await cli("shape", "--group", "G2")
    assert code == 0
    assert payload["passed"] is True


async def test_shape_of_e8_is_unavailable(cli):
    code, payload = await cli("shape", "--group", "E8")
    assert code == 2
    assert payload["error"]["type"] == "FixtureUnavailableError"


async def test_basic(cli):
    code, payload = await cli("basic", "--group", "E7")
    assert code == 0
    assert (payload["data"]["k"], payload["data"]["m"]) == (3, 4)


##########################################
################# MOD P ##################
##########################################

async def test_modp_e7_mod_3(cli):
    code, payload = await cli("modp", "--group", "E7", "--prime", "3")
    assert code == 0
    assert payload["presentation"]["generators"] == [f"w{k}" for k in range(1, 8)] + ["y4"]
    assert payload["dimensions"] is None


async def test_modp_dimensions(cli):
    code, payload = await cli("modp", "--group", "G2", "--prime", "2", "--dims", "8")
    assert code == 0
    assert payload["dimensions"] == payload["expected"] == [1, 2, 2, 2, 2, 2, 1, 0, 0]


async def test_modp_rejects_composite_moduli(cli):
    code, payload = await cli("modp", "--group", "G2", "--prime", "4")
    assert code == 2


async def test_spanning(cli):
    code, payload = await cli("spanning", "--group", "F4", "--degree", "6")
    assert code == 0
    assert payload["monomials"] == ["1", "y3", "y4"]


##########################################
########## OUTPUT AND EXIT CODES #########
##########################################

async def test_text_format_renders_yaml(cli):
    code, payload = await cli("basic", "--group", "G2", "--format", "text")
    assert code == 0
    assert payload["group"] == "G2"


async def test_out_writes_a_file(cli, tmp_path):
    target = tmp_path / "listing.json"
    code, payload = await cli("enumerate", "--group", "G2", "--out", str(target))
    assert code == 0
    assert payload is None
    assert json.loads(target.read_text(encoding="utf-8"))["size"] == 12


async def test_element_cap_is_a_resource_error(cli):
    code, payload = await cli("enumerate", "--group", "E8", "--parabolic", "2", "--element-cap", "10")
    assert code == 3
    assert payload["error"]["type"] == "ResourceCapError"


async def test_invalid_environment_is_a_configuration_error(cli, monkeypatch):
    monkeypatch.setenv("SCHUBERT_TIER", "high")
    code, payload = await cli("basic", "--group", "G2")
    assert code == 2
    assert payload["error"]["type"] == "ConfigurationError"


def test_missing_arguments_exit_with_usage_code():
    with pytest.raises(SystemExit) as exit_info:
        build_parser().parse_args(["expand", "--group", "F4"])
    assert exit_info.value.code == 2


def test_main_runs_a_command(monkeypatch, capsys):
    monkeypatch.setenv("SCHUBERT_FIXTURE_DIR", str(CONFIG_DIR))
    assert main(["basic", "--group", "A3"]) == 0
    assert json.loads(capsys.readouterr().out)["data"]["km"] == "(n-1, 0)"


##########################################
################# CACHE ##################
##########################################

async def test_cache_warm_stats_verify_and_clear(cli, tmp_path):
    cache_dir = str(tmp_path / "cache")
    code, payload = await cli("cache", "warm", "--group", "G2", "--cache-dir", cache_dir)
    assert code == 0
    assert payload == {"table": "G2/T", "degrees": 6, "lift_spaces_stored": 7}

    code, payload = await cli("cache", "stats", "--cache-dir", cache_dir)
    assert payload["engine"] == "file"
    assert payload["entries"]["lift-space"] == 7
    assert payload["entries"]["coset-table"] >= 1

    code, payload = await cli("cache", "verify", "--cache-dir", cache_dir)
    assert code == 0
    assert payload["mismatches"] == []

    code, payload = await cli("cache", "clear", "--namespace", "lift-space", "--cache-dir", cache_dir)
    assert payload["removed"] == 7
    code, payload = await cli("cache", "stats", "--cache-dir", cache_dir)
    assert payload["entries"]["lift-space"] == 0
