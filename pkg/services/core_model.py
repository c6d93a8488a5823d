# ============================================================
# core_model.py – Shared domain types for zkSBOM
#
# Component identities, digests, datastores, verdicts and the
# exception hierarchy used by every other service module.
# ============================================================

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional


# ============================================================
# ERRORS
# ============================================================
class ZkSbomError(Exception):
    """Base class for every error raised by the zkSBOM services."""


class MalformedComponentError(ZkSbomError):
    pass


class MalformedDocumentError(ZkSbomError):
    pass


class UnsupportedSpecVersionError(ZkSbomError):
    pass


class BadSeedLengthError(ZkSbomError):
    pass


class InvalidKeyError(ZkSbomError):
    pass


class MalformedProofError(ZkSbomError):
    pass


class DuplicateArtifactError(ZkSbomError):
    """A commitment for this artifact hash is already in the log."""


class InvalidSignatureError(ZkSbomError):
    pass


class CorruptLogError(ZkSbomError):
    pass


class MalformedFixtureError(ZkSbomError):
    pass


class DuplicateAdvisoryIdError(ZkSbomError):
    pass


class UnknownCveError(ZkSbomError):
    pass


class UnknownCommitmentError(ZkSbomError):
    pass


class CorruptRecordError(ZkSbomError):
    pass


class StorageError(ZkSbomError):
    pass


class EmptyInputError(ZkSbomError):
    pass


class FixtureError(ZkSbomError):
    pass


# ============================================================
# COMPONENT IDENTITY
# ============================================================
class Ecosystem(enum.Enum):
    CARGO = "CARGO"
    GOLANG = "GOLANG"
    MAVEN = "MAVEN"
    NPM = "NPM"

    @classmethod
    def from_token(cls, token: str) -> "Ecosystem":
        try:
            return cls(token)
        except ValueError as exc:
            raise MalformedComponentError(f"unknown ecosystem token: {token!r}") from exc

    @classmethod
    def from_purl_type(cls, purl_type: str) -> Optional["Ecosystem"]:
        return _PURL_TYPES.get(purl_type.lower())


_PURL_TYPES = {
    "cargo": Ecosystem.CARGO,
    "golang": Ecosystem.GOLANG,
    "maven": Ecosystem.MAVEN,
    "npm": Ecosystem.NPM,
}


@dataclass(frozen=True)
class ComponentId:
    name: str
    version: str
    ecosystem: Ecosystem
    group: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.name or not self.version:
            raise MalformedComponentError("component name and version must be non-empty")
        if self.group is not None and not self.group:
            raise MalformedComponentError("component group must be non-empty when present")
        for label, text in (("name", self.name), ("group", self.group or "")):
            if "@" in text or ":" in text:
                raise MalformedComponentError(f"reserved separator in {label}: {text!r}")
        if "@" in self.version:
            raise MalformedComponentError(f"reserved separator in version: {self.version!r}")
        if any(ch.isspace() for ch in f"{self.group or ''}{self.name}{self.version}"):
            raise MalformedComponentError("component coordinates must not contain whitespace")
        if not isinstance(self.ecosystem, Ecosystem):
            raise MalformedComponentError(f"unknown ecosystem: {self.ecosystem!r}")

    @property
    def canonical(self) -> str:
        return canonical_id(self)


def canonical_id(component: ComponentId) -> str:
    """Render `[group:]name@version@ECOSYSTEM`."""
    prefix = f"{component.group}:" if component.group else ""
    return f"{prefix}{component.name}@{component.version}@{component.ecosystem.value}"


def parse_id(text: str) -> ComponentId:
    """Inverse of canonical_id; splits on the last two '@' separators."""
    parts = text.rsplit("@", 2)
    if len(parts) != 3:
        raise MalformedComponentError(f"expected two '@' separators in {text!r}")
    name_segment, version, token = parts
    ecosystem = Ecosystem.from_token(token)

    group: Optional[str] = None
    name = name_segment
    if ":" in name_segment:
        group, name = name_segment.split(":", 1)
    return ComponentId(name=name, version=version, ecosystem=ecosystem, group=group)


# ============================================================
# DIGESTS
# ============================================================
DIGEST_SIZE = 32


@dataclass(frozen=True, order=True)
class Digest:
    value: bytes

    def __post_init__(self) -> None:
        if not isinstance(self.value, (bytes, bytearray)) or len(self.value) != DIGEST_SIZE:
            raise ValueError(f"digest must be exactly {DIGEST_SIZE} bytes")
        object.__setattr__(self, "value", bytes(self.value))

    @classmethod
    def from_hex(cls, text: str) -> "Digest":
        if len(text) != 2 * DIGEST_SIZE or text != text.lower():
            raise ValueError("digest hex must be 64 lowercase hex characters")
        return cls(bytes.fromhex(text))

    def hex(self) -> str:
        return self.value.hex()

    def as_int(self) -> int:
        return int.from_bytes(self.value, "big")

    def __bytes__(self) -> bytes:
        return self.value

    def __str__(self) -> str:
        return self.hex()


# ============================================================
# DATASTORE
# ============================================================
@dataclass(frozen=True)
class Datastore:
    """Committed set: (H(id), id) pairs, unique and sorted by label bytes."""

    entries: tuple[tuple[Digest, str], ...] = ()

    def __post_init__(self) -> None:
        from services.crypto_service import hash_bytes

        previous: Optional[Digest] = None
        for label, value in self.entries:
            if hash_bytes(value.encode("utf-8")) != label:
                raise ValueError(f"datastore entry label does not match H({value!r})")
            if previous is not None and not previous.value < label.value:
                raise ValueError("datastore labels must be unique and ascending")
            previous = label

    @classmethod
    def from_canonical_ids(cls, values: Iterable[str]) -> "Datastore":
        from services.crypto_service import hash_bytes

        unique = {hash_bytes(v.encode("utf-8")): v for v in values}
        return cls(tuple(sorted(unique.items(), key=lambda item: item[0].value)))

    def __len__(self) -> int:
        return len(self.entries)

    def labels(self) -> list[Digest]:
        return [label for label, _ in self.entries]

    def values(self) -> list[str]:
        return [value for _, value in self.entries]

    def lookup(self, label: Digest) -> Optional[str]:
        for entry_label, value in self.entries:
            if entry_label == label:
                return value
        return None


# ============================================================
# VERDICT
# ============================================================
class VerdictKind(enum.Enum):
    AFFECTED = "Affected"
    NOT_AFFECTED = "NotAffected"
    INVALID = "Invalid"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.kind.value}: {self.detail}" if self.detail else self.kind.value
