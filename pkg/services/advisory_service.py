# ============================================================
# advisory_service.py – Offline vulnerability database
#
# Resolves CVE identifiers to the exact component versions they
# affect. Fixtures are JSON arrays of {id, affected: [canonical ids]}
# with version ranges already expanded.
# ============================================================

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from services.core_model import (
    ComponentId,
    DuplicateAdvisoryIdError,
    MalformedComponentError,
    MalformedFixtureError,
    StorageError,
    UnknownCveError,
    canonical_id,
    parse_id,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Advisory:
    id: str
    affected: tuple[ComponentId, ...]

    def __post_init__(self) -> None:
        if not self.id:
            raise MalformedFixtureError("advisory id must be non-empty")
        if not self.affected:
            raise MalformedFixtureError(f"advisory {self.id} lists no affected components")


@dataclass(frozen=True)
class AdvisoryDb:
    advisories: dict[str, Advisory] = field(default_factory=dict)
    source: str = ""

    @classmethod
    def from_advisories(cls, advisories: Iterable[Advisory], source: str = "<memory>") -> "AdvisoryDb":
        table: dict[str, Advisory] = {}
        for advisory in advisories:
            if advisory.id in table:
                raise DuplicateAdvisoryIdError(f"duplicate advisory id {advisory.id}")
            table[advisory.id] = advisory
        return cls(advisories=table, source=source)

    def __len__(self) -> int:
        return len(self.advisories)

    def ids(self) -> list[str]:
        return sorted(self.advisories)


def _parse_advisory(raw: object) -> Advisory:
    if not isinstance(raw, dict) or not isinstance(raw.get("id"), str) or not isinstance(raw.get("affected"), list):
        raise MalformedFixtureError(f"advisory entry must have string `id` and array `affected`: {raw!r}")

    affected: list[ComponentId] = []
    seen: set[str] = set()
    for text in raw["affected"]:
        if not isinstance(text, str):
            raise MalformedFixtureError(f"affected entries must be strings in {raw['id']}")
        try:
            component = parse_id(text)
        except MalformedComponentError as exc:
            raise MalformedFixtureError(f"{raw['id']}: {exc}") from exc
        if canonical_id(component) not in seen:
            seen.add(canonical_id(component))
            affected.append(component)
    return Advisory(id=raw["id"], affected=tuple(affected))


def load_advisories(path: str | Path) -> AdvisoryDb:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise StorageError(f"cannot read advisory fixture {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except ValueError as exc:
        raise MalformedFixtureError(f"advisory fixture {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, list):
        raise MalformedFixtureError("advisory fixture must be a JSON array")

    db = AdvisoryDb.from_advisories((_parse_advisory(item) for item in data), source=str(path))
    logger.info("Loaded %d advisories from %s", len(db), path)
    return db


def resolve(db: AdvisoryDb, cve_id: str) -> list[ComponentId]:
    """Every affected component-version for cve_id, in fixture order."""
    advisory = db.advisories.get(cve_id)
    if advisory is None:
        raise UnknownCveError(f"unknown vulnerability id {cve_id!r}")
    return list(advisory.affected)
