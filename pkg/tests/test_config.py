import pytest
from pydantic import ValidationError

from shared.models.config import RunConfig


def test_typed_getters(helper_config, monkeypatch):
    monkeypatch.setenv("SCHUBERT_SAMPLE_NUMBER", "2.5")
    monkeypatch.setenv("SCHUBERT_SAMPLE_FLAG", "Yes")
    monkeypatch.setenv("SCHUBERT_SAMPLE_LIST", "[3, 4,5]")
    assert helper_config.get_number_val("schubert_sample_number") == 2.5
    assert helper_config.get_bool_val("SCHUBERT_SAMPLE_FLAG") is True
    assert helper_config.get_list_val("SCHUBERT_SAMPLE_LIST", element_type=int) == [3, 4, 5]
    assert helper_config.get_string_val("SCHUBERT_SAMPLE_MISSING", default="x") == "x"


def test_unset_variable_without_default(helper_config, monkeypatch):
    monkeypatch.setenv("SCHUBERT_SAMPLE_EMPTY", "  ")
    with pytest.raises(ValueError, match="SCHUBERT_SAMPLE_EMPTY"):
        helper_config.get_string_val("SCHUBERT_SAMPLE_EMPTY")


@pytest.mark.parametrize("raw", ["3,4", "[E7/T]", "[E7/T:many]"])
def test_malformed_mapping(helper_config, monkeypatch, raw):
    monkeypatch.setenv("SCHUBERT_DEGREE_CAPS", raw)
    with pytest.raises(ValueError):
        helper_config.get_mapping_val("SCHUBERT_DEGREE_CAPS", default={})


def test_run_config_from_env(helper_config, monkeypatch):
    monkeypatch.setenv("SCHUBERT_TIER", "1")
    monkeypatch.setenv("SCHUBERT_DEGREE_CAPS", "[E7/T:12,F4/T:8]")
    monkeypatch.setenv("SCHUBERT_OUTPUT_FORMAT", "TEXT")
    monkeypatch.delenv("SCHUBERT_LONG_RUNNING", raising=False)
    run_config = RunConfig.from_env(helper_config)
    assert run_config.tier == 1
    assert run_config.output_format == "text"
    assert run_config.degree_cap("E7/T") == 12
    assert run_config.degree_cap("F4/T") == 8
    assert run_config.degree_cap("E8/P") == 15
    assert run_config.degree_cap("G2/T") is None


def test_long_running_unlocks_the_e8_grassmannian():
    run_config = RunConfig().with_long_running(True)
    assert run_config.long_running
    assert run_config.degree_cap("E8/P") == 30
    assert run_config.with_long_running(False).long_running is False


@pytest.mark.parametrize("fields", [{"tier": 4}, {"degree_caps": {"E8/T": 0}}, {"output_format": "xml"}, {"element_cap": 0}])
def test_run_config_rejects_invalid_values(fields):
    with pytest.raises(ValidationError):
        RunConfig(**fields)
