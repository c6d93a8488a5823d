# ============================================================
# data_service.py – Bundled fixtures (SBOMs, advisories, scenarios)
# ============================================================

from __future__ import annotations

from pathlib import Path

import pandas as pd

from services.advisory_service import AdvisoryDb, load_advisories
from services.config_service import ASSETS_DIR
from services.harness_service import Scenario, load_scenario
from services.leakage_service import DependencyCountRecord, load_dependency_counts
from services.sbom_service import SbomDocument, load_sbom

SBOM_DIR = ASSETS_DIR / "sboms"
SCENARIO_DIR = ASSETS_DIR / "scenarios"
ADVISORIES_PATH = ASSETS_DIR / "advisories.json"
DEPENDENCY_COUNTS_PATH = ASSETS_DIR / "dependency_counts.csv"


def list_sboms() -> dict[str, Path]:
    """Fixture SBOMs keyed by subject name (`druid`, `strapi`, ...)."""
    return {p.name.split(".")[0]: p for p in sorted(SBOM_DIR.glob("*.cdx.json"))}


def list_scenarios() -> list[Scenario]:
    return [load_scenario(p) for p in sorted(SCENARIO_DIR.glob("*.json"))]


def load_fixture_sbom(name: str) -> SbomDocument:
    return load_sbom(list_sboms()[name])


def load_fixture_advisories() -> AdvisoryDb:
    return load_advisories(ADVISORIES_PATH)


def load_fixture_counts() -> list[DependencyCountRecord]:
    return load_dependency_counts(DEPENDENCY_COUNTS_PATH)


def sbom_frame(sbom: SbomDocument) -> pd.DataFrame:
    """One row per component for display."""
    return pd.DataFrame(
        [
            {"ecosystem": c.ecosystem.value, "group": c.group or "", "name": c.name, "version": c.version, "id": c.canonical}
            for c in sbom.components
        ],
        columns=["ecosystem", "group", "name", "version", "id"],
    )
