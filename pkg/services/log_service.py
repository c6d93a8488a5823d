# ============================================================
# log_service.py – Transparency log (verifiable map)
#
# Append-only map from artifact hash H(A) to a signed commitment.
# The map is an unsalted sparse Merkle tree using the same node
# rules as the ZKS engine; the salt slot of every leaf is zero.
# At most one entry per artifact hash is ever accepted.
# ============================================================

from __future__ import annotations

import logging
import struct
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from services.core_model import (
    CorruptLogError,
    Digest,
    DuplicateArtifactError,
    InvalidSignatureError,
    MalformedProofError,
    StorageError,
)
from services.crypto_service import TAG_BINDING, Signature, hash_raw, verify_sig
from services.zks_service import (
    DEPTH,
    EMPTY_DIGESTS,
    EMPTY_ROOT,
    ZERO32,
    Commitment,
    ProofKind,
    SparseMerkleTree,
    leaf_digest,
    root_from_path,
)

logger = logging.getLogger(__name__)

LogDigest = Digest

ENTRIES_FILE = "entries.log"
DIGESTS_FILE = "digests.log"


# ============================================================
# BINDING MESSAGE (what the supplier signs)
# ============================================================
@dataclass(frozen=True)
class BindingMessage:
    artifact_hash: Digest
    root: Digest
    hash_alg: str

    def encode(self) -> bytes:
        alg = self.hash_alg.encode("ascii")
        return TAG_BINDING + self.artifact_hash.value + self.root.value + bytes([len(alg)]) + alg


# ============================================================
# ENTRIES
# ============================================================
@dataclass(frozen=True)
class LogEntry:
    artifact_hash: Digest
    commitment: Commitment
    signature: Signature
    supplier_public_key: bytes
    sequence: int = field(default=0, compare=False)

    def binding_message(self) -> BindingMessage:
        return BindingMessage(self.artifact_hash, self.commitment.root, self.commitment.hash_alg)

    def signature_valid(self) -> bool:
        return verify_sig(self.signature, self.binding_message().encode(), self.supplier_public_key)

    def encode(self) -> bytes:
        alg = self.commitment.hash_alg.encode("ascii")
        sig = self.signature.value
        key = self.supplier_public_key
        return (
            self.artifact_hash.value
            + self.commitment.root.value
            + bytes([len(alg)]) + alg
            + struct.pack(">H", len(sig)) + sig
            + struct.pack(">H", len(key)) + key
        )

    @classmethod
    def decode(cls, data: bytes, sequence: int = 0) -> "LogEntry":
        try:
            artifact_hash = Digest(data[0:32])
            root = Digest(data[32:64])
            offset = 64
            alg_len = data[offset]
            alg = data[offset + 1:offset + 1 + alg_len].decode("ascii")
            offset += 1 + alg_len
            (sig_len,) = struct.unpack(">H", data[offset:offset + 2])
            sig = data[offset + 2:offset + 2 + sig_len]
            offset += 2 + sig_len
            (key_len,) = struct.unpack(">H", data[offset:offset + 2])
            key = data[offset + 2:offset + 2 + key_len]
            offset += 2 + key_len
        except (IndexError, ValueError, struct.error) as exc:
            raise CorruptLogError(f"cannot decode log entry: {exc}") from exc
        if offset != len(data) or len(sig) != sig_len or len(key) != key_len:
            raise CorruptLogError("log entry has trailing or missing bytes")
        return cls(artifact_hash, Commitment(root, alg), Signature(sig), key, sequence)


def map_leaf(artifact_hash: Digest, entry: LogEntry) -> bytes:
    return leaf_digest(ZERO32, artifact_hash.value, hash_raw(entry.encode()))


# ============================================================
# STATE
# ============================================================
@dataclass(frozen=True)
class LogState:
    entries: tuple[LogEntry, ...]
    tree: SparseMerkleTree = field(repr=False, compare=False)
    digest_history: tuple[Digest, ...] = ()

    @property
    def map_root(self) -> Digest:
        return Digest(self.tree.root)

    def index_of(self, artifact_hash: Digest) -> Optional[int]:
        for index, entry in enumerate(self.entries):
            if entry.artifact_hash == artifact_hash:
                return index
        return None


@dataclass(frozen=True)
class MapProof:
    kind: ProofKind
    key: Digest
    sibling_bitmap: bytes
    siblings: tuple[bytes, ...]

    def to_hex(self) -> str:
        raw = bytes([self.kind.value]) + self.key.value + self.sibling_bitmap + b"".join(self.siblings)
        return raw.hex()

    @classmethod
    def from_hex(cls, text: str) -> "MapProof":
        try:
            raw = bytes.fromhex(text)
            kind = ProofKind(raw[0])
            key = Digest(raw[1:33])
            bitmap = raw[33:65]
            rest = raw[65:]
        except (IndexError, ValueError) as exc:
            raise MalformedProofError(f"bad map proof: {exc}") from exc
        if len(bitmap) != 32 or len(rest) % 32:
            raise MalformedProofError("truncated map proof")
        return cls(kind, key, bitmap, tuple(rest[i:i + 32] for i in range(0, len(rest), 32)))


def tl_setup() -> LogState:
    return LogState(entries=(), tree=SparseMerkleTree.from_leaves({}), digest_history=())


def tl_append(state: LogState, entry: LogEntry) -> tuple[LogState, LogDigest]:
    if not entry.signature_valid():
        raise InvalidSignatureError("entry signature does not verify over its binding message")
    if state.tree.leaf(entry.artifact_hash.as_int()) is not None:
        raise DuplicateArtifactError(f"artifact {entry.artifact_hash.hex()} already has a commitment")

    sequenced = LogEntry(
        entry.artifact_hash,
        entry.commitment,
        entry.signature,
        entry.supplier_public_key,
        sequence=len(state.entries),
    )
    tree = state.tree.with_leaf(entry.artifact_hash.as_int(), map_leaf(entry.artifact_hash, sequenced))
    digest = Digest(tree.root)
    new_state = LogState(
        entries=state.entries + (sequenced,),
        tree=tree,
        digest_history=state.digest_history + (digest,),
    )
    return new_state, digest


def tl_lookup(state: LogState, artifact_hash: Digest) -> tuple[bool, Optional[LogEntry], MapProof]:
    bitmap, siblings = state.tree.path(artifact_hash.as_int())
    index = state.index_of(artifact_hash)
    if index is None:
        return False, None, MapProof(ProofKind.NON_INCLUSION, artifact_hash, bitmap, siblings)
    return True, state.entries[index], MapProof(ProofKind.INCLUSION, artifact_hash, bitmap, siblings)


def tl_verify(
    trusted_digest: LogDigest,
    artifact_hash: Digest,
    found: bool,
    entry: Optional[LogEntry],
    proof: MapProof,
) -> bool:
    """Check a map (non-)inclusion claim against a trusted digest; never raises."""
    try:
        if proof.key != artifact_hash:
            return False
        if found:
            if entry is None or proof.kind is not ProofKind.INCLUSION or entry.artifact_hash != artifact_hash:
                return False
            leaf = map_leaf(artifact_hash, entry)
        else:
            if entry is not None or proof.kind is not ProofKind.NON_INCLUSION:
                return False
            leaf = EMPTY_DIGESTS[DEPTH]
        root = root_from_path(artifact_hash.as_int(), leaf, proof.sibling_bitmap, proof.siblings)
    except (AttributeError, TypeError, ValueError):
        return False
    return root is not None and root == trusted_digest.value


def _replay_roots(entries: tuple[LogEntry, ...]) -> list[Digest]:
    tree = SparseMerkleTree.from_leaves({})
    roots: list[Digest] = []
    for entry in entries:
        tree = tree.with_leaf(entry.artifact_hash.as_int(), map_leaf(entry.artifact_hash, entry))
        roots.append(Digest(tree.root))
    return roots


def tl_audit_append_only(old_digest: LogDigest, new_state: LogState) -> bool:
    """
    True iff old_digest is a recorded historical digest of new_state and the
    entries behind it are still present unchanged.

    The whole history is replayed from the entries, so a rewritten entry,
    a dropped digest or a reordered history all fail the audit.
    """
    keys = [entry.artifact_hash for entry in new_state.entries]
    if len(set(keys)) != len(keys):
        return False
    replayed = _replay_roots(new_state.entries)
    if tuple(replayed) != new_state.digest_history:
        return False
    if replayed and replayed[-1] != new_state.map_root:
        return False
    if old_digest == EMPTY_ROOT:
        return True
    return old_digest in new_state.digest_history


# ============================================================
# PERSISTENT LOG (single writer)
# ============================================================
def _append_line(path: Path, line: str) -> None:
    with open(path, "a", encoding="ascii") as fh:
        fh.write(line + "\n")


def _truncate_to(sizes: dict[Path, int]) -> None:
    """Roll both log files back to their pre-append lengths."""
    for path, size in sizes.items():
        try:
            if path.exists():
                with open(path, "r+b") as fh:
                    fh.truncate(size)
        except OSError as exc:
            logger.error("Could not roll back %s to %d bytes: %s", path.name, size, exc)


class TransparencyLog:
    """
    Directory-backed log: `entries.log` holds one hex-encoded entry per
    line and `digests.log` the digest after each append. Appends are
    serialized; readers always see a complete LogState snapshot.
    """

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self._lock = threading.Lock()
        self._state = self._load()

    @property
    def state(self) -> LogState:
        return self._state

    @property
    def digest(self) -> LogDigest:
        return self._state.map_root

    def _load(self) -> LogState:
        self.directory.mkdir(parents=True, exist_ok=True)
        entries_path = self.directory / ENTRIES_FILE
        digests_path = self.directory / DIGESTS_FILE
        state = tl_setup()
        if not entries_path.exists():
            return state

        try:
            entry_lines = [ln for ln in entries_path.read_text(encoding="ascii").split("\n") if ln]
            digest_lines = (
                [ln for ln in digests_path.read_text(encoding="ascii").split("\n") if ln]
                if digests_path.exists()
                else []
            )
            recorded = [Digest.from_hex(line) for line in digest_lines]
            for sequence, line in enumerate(entry_lines):
                state, _ = tl_append(state, LogEntry.decode(bytes.fromhex(line), sequence))
        except (OSError, ValueError, UnicodeDecodeError) as exc:
            raise CorruptLogError(f"cannot load log from {self.directory}: {exc}") from exc
        except (InvalidSignatureError, DuplicateArtifactError) as exc:
            raise CorruptLogError(f"log replay rejected an entry: {exc}") from exc

        if list(state.digest_history) != recorded:
            raise CorruptLogError("digest history does not match replayed entries")
        logger.info("Loaded transparency log with %d entries from %s", len(state.entries), self.directory)
        return state

    def append(self, entry: LogEntry) -> LogDigest:
        with self._lock:
            try:
                new_state, digest = tl_append(self._state, entry)
            except (DuplicateArtifactError, InvalidSignatureError) as exc:
                logger.warning("Rejected log append for %s: %s", entry.artifact_hash.hex()[:12], exc)
                raise
            appended = new_state.entries[-1]
            entries_path = self.directory / ENTRIES_FILE
            digests_path = self.directory / DIGESTS_FILE
            sizes: dict[Path, int] = {}
            try:
                sizes = {path: path.stat().st_size if path.exists() else 0 for path in (entries_path, digests_path)}
                _append_line(entries_path, appended.encode().hex())
                _append_line(digests_path, digest.hex())
            except OSError as exc:
                _truncate_to(sizes)
                raise StorageError(f"cannot persist log append: {exc}") from exc
            self._state = new_state
            logger.info("Appended entry #%d for artifact %s", appended.sequence, entry.artifact_hash.hex()[:12])
            return digest

    def lookup(self, artifact_hash: Digest) -> tuple[bool, Optional[LogEntry], MapProof]:
        return tl_lookup(self._state, artifact_hash)
