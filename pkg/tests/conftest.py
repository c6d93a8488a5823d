import pytest

from services.advisory_service import load_advisories
from services.config_service import ASSETS_DIR
from services.crypto_service import keygen

SBOM_DIR = ASSETS_DIR / "sboms"
SCENARIO_DIR = ASSETS_DIR / "scenarios"
ADVISORIES = ASSETS_DIR / "advisories.json"
DEPENDENCY_COUNTS = ASSETS_DIR / "dependency_counts.csv"

LOG4J_282 = "org.apache.logging.log4j:log4j-core@2.8.2@MAVEN"


@pytest.fixture(scope="session")
def advisories():
    return load_advisories(ADVISORIES)


@pytest.fixture
def druid_bytes():
    return (SBOM_DIR / "druid.cdx.json").read_bytes()


@pytest.fixture
def empty_bytes():
    return (SBOM_DIR / "empty.cdx.json").read_bytes()


@pytest.fixture(scope="session")
def supplier_keys():
    return keygen(bytes(range(32)))


@pytest.fixture(scope="session")
def other_keys():
    return keygen(bytes([7]) * 32)
