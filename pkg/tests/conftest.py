import os
import shutil
from pathlib import Path

import pytest

from services.lie_data.models import LieType
from services.presentations.FixtureLoader import FixtureLoader
from services.presentations.PresentationService import PresentationService
from services.schubert.SchubertCalculator import SchubertCalculator, calibrate_convention
from services.schubert.SchubertService import SchubertService
from services.weyl.CosetDecomposer import CosetDecomposer
from shared.helper.HelperConfig import HelperConfig
from shared.logging.logging_setup import setup_logging
from shared.models.config import RunConfig

CONFIG_DIR = Path(__file__).resolve().parents[1] / "config"


@pytest.fixture(scope="session", autouse=True)
def isolated_root(tmp_path_factory):
    root = tmp_path_factory.mktemp("root")
    os.environ["ROOT_DIR"] = str(root)
    os.environ["CACHE_ENGINE"] = "file"
    os.environ["CACHE_FILE_DIR"] = str(root / "cache")
    return root


@pytest.fixture(scope="session")
def helper_config(isolated_root) -> HelperConfig:
    return HelperConfig(logger=setup_logging())


@pytest.fixture(scope="session")
def run_config(isolated_root) -> RunConfig:
    return RunConfig(cache_dir=str(isolated_root / "cache"), debug_checks=True, fixture_dir=str(CONFIG_DIR))


@pytest.fixture(scope="session")
def decomposer(helper_config, run_config) -> CosetDecomposer:
    return CosetDecomposer(helper_config, run_config)


@pytest.fixture(scope="session")
def g2_full(decomposer):
    return decomposer.decompose(LieType.parse("G2"), {1, 2})


@pytest.fixture(scope="session")
def f4_grassmannian(decomposer):
    return decomposer.decompose(LieType.parse("F4"), {1})


@pytest.fixture(scope="session")
def f4_full(decomposer):
    return decomposer.decompose(LieType.parse("F4"), {1, 2, 3, 4})


@pytest.fixture(scope="session")
def e6_grassmannian(decomposer):
    return decomposer.decompose(LieType.parse("E6"), {2})


@pytest.fixture(scope="session")
def e7_grassmannian(decomposer):
    return decomposer.decompose(LieType.parse("E7"), {2})


@pytest.fixture(scope="session")
def convention(helper_config, run_config, f4_grassmannian):
    return calibrate_convention(helper_config, run_config, f4_grassmannian)


@pytest.fixture(scope="session")
def g2_calculator(helper_config, run_config, g2_full, convention):
    return SchubertCalculator(helper_config, run_config, g2_full, convention=convention)


@pytest.fixture(scope="session")
def f4_calculator(helper_config, run_config, f4_grassmannian, convention):
    return SchubertCalculator(helper_config, run_config, f4_grassmannian, convention=convention)


@pytest.fixture(scope="session")
def f4_full_calculator(helper_config, run_config, f4_full, convention):
    return SchubertCalculator(helper_config, run_config, f4_full, convention=convention)


@pytest.fixture(scope="session")
def e6_calculator(helper_config, run_config, e6_grassmannian, convention):
    return SchubertCalculator(helper_config, run_config, e6_grassmannian, convention=convention)


@pytest.fixture(scope="session")
def fixture_loader(helper_config, run_config) -> FixtureLoader:
    return FixtureLoader(helper_config, run_config)


@pytest.fixture(scope="module")
def presentation_service(helper_config, run_config, fixture_loader) -> PresentationService:
    return PresentationService(helper_config, run_config, SchubertService(helper_config, run_config), fixture_loader)


@pytest.fixture
def scratch_loader(helper_config, run_config, tmp_path):
    """Loader over a scratch copy of the fixtures; tests overwrite single files."""
    for path in CONFIG_DIR.glob("*.yml"):
        shutil.copy(path, tmp_path / path.name)

    def build(**files: str) -> FixtureLoader:
        for name, text in files.items():
            (tmp_path / f"{name}.yml").write_text(text, encoding="utf-8")
        return FixtureLoader(helper_config, run_config.model_copy(update={"fixture_dir": str(tmp_path)}))

    return build
