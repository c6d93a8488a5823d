# ============================================================
# sbom_service.py – CycloneDX ingestion (ToDatastore)
#
# Reads the top-level `components` array of a CycloneDX JSON
# document and turns it into the committed Datastore. Dependency
# edges, licenses, hashes and the root component are ignored.
# ============================================================

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from packageurl import PackageURL

from services.core_model import (
    ComponentId,
    Datastore,
    Ecosystem,
    MalformedComponentError,
    MalformedDocumentError,
    UnsupportedSpecVersionError,
    canonical_id,
)

logger = logging.getLogger(__name__)

SUPPORTED_SPEC_VERSIONS = ("1.4", "1.5", "1.6")
ECOSYSTEM_HINT_PROPERTY = "zksbom:ecosystem"


@dataclass(frozen=True)
class SbomDocument:
    serial_or_name: str
    components: tuple[ComponentId, ...]
    spec_version: str = ""
    parsed_count: int = 0
    skipped_count: int = 0


# ============================================================
# PARSING
# ============================================================
def _component_from_purl(purl_text: str) -> Optional[ComponentId]:
    try:
        purl = PackageURL.from_string(purl_text)
    except (ValueError, TypeError, AttributeError) as exc:
        raise MalformedComponentError(f"bad purl {purl_text!r}: {exc}") from exc

    ecosystem = Ecosystem.from_purl_type(purl.type)
    if ecosystem is None:
        return None
    if not purl.version:
        raise MalformedComponentError(f"purl without version: {purl_text!r}")

    group = purl.namespace or None
    if ecosystem is Ecosystem.NPM and group and group.startswith("@"):
        # npm scopes carry a leading '@', which is reserved in canonical ids
        group = group[1:]
    return ComponentId(name=purl.name, version=purl.version, ecosystem=ecosystem, group=group)


def _component_from_coordinates(entry: dict[str, Any], hint: Optional[Ecosystem]) -> Optional[ComponentId]:
    if hint is None:
        return None
    group = entry.get("group") or None
    if group is not None and not isinstance(group, str):
        raise MalformedComponentError(f"component group must be a string, got {group!r}")
    if hint is Ecosystem.NPM and group and group.startswith("@"):
        group = group[1:]
    return ComponentId(
        name=str(entry.get("name") or ""),
        version=str(entry.get("version") or ""),
        ecosystem=hint,
        group=group,
    )


def _metadata(data: dict[str, Any]) -> dict[str, Any]:
    metadata = data.get("metadata") or {}
    if not isinstance(metadata, dict):
        raise MalformedDocumentError("`metadata` must be an object")
    root = metadata.get("component") or {}
    if not isinstance(root, dict):
        raise MalformedDocumentError("`metadata.component` must be an object")
    return metadata


def _document_hint(metadata: dict[str, Any]) -> Optional[Ecosystem]:
    properties = metadata.get("properties") or []
    if not isinstance(properties, list):
        raise MalformedDocumentError("`metadata.properties` must be an array")
    for prop in properties:
        if isinstance(prop, dict) and prop.get("name") == ECOSYSTEM_HINT_PROPERTY:
            try:
                return Ecosystem.from_token(str(prop.get("value", "")).upper())
            except MalformedComponentError:
                logger.warning("Ignoring unknown ecosystem hint %r", prop.get("value"))
    return None


def parse_cyclonedx(document_bytes: bytes, ecosystem_hint: Optional[Ecosystem] = None) -> SbomDocument:
    """
    Parse a CycloneDX JSON document (spec 1.4-1.6) into an SbomDocument.

    Components whose ecosystem is not one of CARGO/GOLANG/MAVEN/NPM, or whose
    coordinates cannot form a valid ComponentId, are skipped and counted.
    """
    try:
        data = json.loads(document_bytes)
    except (ValueError, TypeError) as exc:
        raise MalformedDocumentError(f"SBOM is not valid JSON: {exc}") from exc

    if not isinstance(data, dict) or data.get("bomFormat") != "CycloneDX":
        raise MalformedDocumentError("not a CycloneDX JSON document (bomFormat missing)")

    spec_version = str(data.get("specVersion", ""))
    if spec_version not in SUPPORTED_SPEC_VERSIONS:
        raise UnsupportedSpecVersionError(f"unsupported CycloneDX specVersion {spec_version!r}")

    components_raw = data.get("components") or []
    if not isinstance(components_raw, list):
        raise MalformedDocumentError("`components` must be an array")

    metadata = _metadata(data)
    hint = ecosystem_hint or _document_hint(metadata)

    seen: dict[str, ComponentId] = {}
    skipped = 0
    for entry in components_raw:
        if not isinstance(entry, dict):
            skipped += 1
            continue
        try:
            purl_text = entry.get("purl")
            component = (
                _component_from_purl(purl_text) if purl_text else _component_from_coordinates(entry, hint)
            )
        except MalformedComponentError as exc:
            logger.warning("Skipping component %r: %s", entry.get("name"), exc)
            component = None
        if component is None:
            skipped += 1
            continue
        seen.setdefault(canonical_id(component), component)

    root = metadata.get("component") or {}
    serial_or_name = str(data.get("serialNumber") or root.get("name") or "")

    if skipped:
        logger.warning("Skipped %d unsupported or malformed components in %s", skipped, serial_or_name or "SBOM")

    return SbomDocument(
        serial_or_name=serial_or_name,
        components=tuple(seen.values()),
        spec_version=spec_version,
        parsed_count=len(seen),
        skipped_count=skipped,
    )


def load_sbom(path: str | Path, ecosystem_hint: Optional[Ecosystem] = None) -> SbomDocument:
    return parse_cyclonedx(Path(path).read_bytes(), ecosystem_hint)


# ============================================================
# TO DATASTORE
# ============================================================
def to_datastore(sbom: SbomDocument) -> Datastore:
    """(H(id), id) for every component: deduplicated, sorted by label."""
    return Datastore.from_canonical_ids(canonical_id(c) for c in sbom.components)


# ============================================================
# WRITING (fixtures and synthetic SBOMs)
# ============================================================
def component_purl(component: ComponentId) -> str:
    namespace = component.group
    if component.ecosystem is Ecosystem.NPM and namespace:
        namespace = f"@{namespace}"
    return PackageURL(
        type=component.ecosystem.value.lower(),
        namespace=namespace,
        name=component.name,
        version=component.version,
    ).to_string()


def build_cyclonedx(components: list[ComponentId], name: str = "synthetic", spec_version: str = "1.5") -> bytes:
    """Minimal CycloneDX JSON document listing `components` by purl."""
    document = {
        "bomFormat": "CycloneDX",
        "specVersion": spec_version,
        "version": 1,
        "metadata": {"component": {"type": "application", "name": name}},
        "components": [
            {
                "type": "library",
                "group": c.group or "",
                "name": c.name,
                "version": c.version,
                "purl": component_purl(c),
            }
            for c in components
        ],
    }
    return json.dumps(document, indent=2).encode("utf-8")
