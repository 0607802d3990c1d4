import os

from pydantic import BaseModel, Field, field_validator

from shared.helper.HelperConfig import HelperConfig


class EnvConfig(BaseModel):
    """One environment key a client reads; default None marks it as required."""

    env_key: str
    val_type: str
    default: str | int | bool | list | None = None


# tables whose working degree is bounded unless overridden
DEFAULT_DEGREE_CAPS: dict[str, int] = {"E7/T": 18, "E8/T": 10, "E8/P": 15}
LONG_RUNNING_DEGREE_CAPS: dict[str, int] = {"E7/T": 18, "E8/T": 10, "E8/P": 30}


def default_cache_dir() -> str:
    data_home = os.getenv("XDG_DATA_HOME") or os.path.join(os.path.expanduser("~"), ".local", "share")
    return os.path.join(data_home, "schubert-engine", "cache")


class RunConfig(BaseModel):
    """Settings of one engine run.

    Built from the environment by :meth:`from_env`; CLI flags are applied on
    top with :meth:`model_copy`.

    Attributes:
        tier: verification tier, 1 (minutes) to 3 (hours).
        degree_caps: maximal working degree per table key ("E7/T", "E8/P", ...).
        element_cap: maximal number of coset elements one table may hold.
        cache_dir: directory of the file cache engine.
        output_format: "json" or "text".
        long_running: unlocks the large E8 Grassmannian degrees.
        check_degree: degree bound of the Chevalley/divided-difference oracle.
        budget_seconds: wall-clock budget of a verification run, 0 = unlimited.
        debug_checks: enables the expensive internal consistency assertions.
        fixture_dir: directory holding the YAML fixtures.
    """

    tier: int = Field(default=2, ge=1, le=3)
    degree_caps: dict[str, int] = Field(default_factory=lambda: dict(DEFAULT_DEGREE_CAPS))
    element_cap: int = Field(default=1_000_000, gt=0)
    cache_dir: str = Field(default_factory=default_cache_dir)
    output_format: str = "json"
    long_running: bool = False
    check_degree: int = Field(default=5, ge=0)
    budget_seconds: float = Field(default=0, ge=0)
    debug_checks: bool = False
    fixture_dir: str = "config"

    @field_validator("degree_caps")
    @classmethod
    def _caps_positive(cls, caps: dict[str, int]) -> dict[str, int]:
        for key, cap in caps.items():
            if cap <= 0:
                raise ValueError(f"degree cap for '{key}' must be positive, got {cap}")
        return caps

    @field_validator("output_format")
    @classmethod
    def _known_format(cls, fmt: str) -> str:
        fmt = fmt.lower()
        if fmt not in ("json", "text"):
            raise ValueError(f"unsupported output format '{fmt}'")
        return fmt

    ##########################################
    ################ GETTER ##################
    ##########################################

    def degree_cap(self, table_key: str) -> int | None:
        """Return the degree cap of a table key like "E8/P", None if unbounded."""
        return self.degree_caps.get(table_key)

    def with_long_running(self, enabled: bool) -> "RunConfig":
        """Return a copy with the long-running caps applied (explicit caps still win)."""
        if not enabled:
            return self.model_copy(update={"long_running": False})
        caps = dict(LONG_RUNNING_DEGREE_CAPS)
        caps.update({k: v for k, v in self.degree_caps.items() if v > DEFAULT_DEGREE_CAPS.get(k, 0)})
        return self.model_copy(update={"long_running": True, "degree_caps": caps})

    @classmethod
    def from_env(cls, helper_config: HelperConfig) -> "RunConfig":
        """Build the run configuration from SCHUBERT_* environment variables."""
        long_running = helper_config.get_bool_val("SCHUBERT_LONG_RUNNING", default=False)
        caps = dict(LONG_RUNNING_DEGREE_CAPS if long_running else DEFAULT_DEGREE_CAPS)
        caps.update(helper_config.get_mapping_val("SCHUBERT_DEGREE_CAPS", default={}))
        return cls(
            tier=int(helper_config.get_number_val("SCHUBERT_TIER", default=2)),
            degree_caps=caps,
            element_cap=int(helper_config.get_number_val("SCHUBERT_ELEMENT_CAP", default=1_000_000)),
            cache_dir=helper_config.get_string_val("CACHE_FILE_DIR", default=default_cache_dir()),
            output_format=helper_config.get_string_val("SCHUBERT_OUTPUT_FORMAT", default="json"),
            long_running=long_running,
            check_degree=int(helper_config.get_number_val("SCHUBERT_CHECK_DEGREE", default=5)),
            budget_seconds=float(helper_config.get_number_val("SCHUBERT_BUDGET_SECONDS", default=0)),
            debug_checks=helper_config.get_bool_val("SCHUBERT_DEBUG_CHECKS", default=False),
            fixture_dir=helper_config.get_string_val("SCHUBERT_FIXTURE_DIR", default="config"),
        )
