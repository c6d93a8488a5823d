# ============================================================
# zks_service.py – Zero-knowledge set over a salted sparse Merkle tree
#
# Commit / Query / Verify over 256-bit labels. Leaves are salted with
# a per-label salt derived from a secret seed, so sibling digests do
# not reveal which components sit next to a queried label.
#
# Known deviation from an ideal ZKS: the number of non-empty siblings
# on a path weakly leaks the size of the committed set.
# ============================================================

from __future__ import annotations

import bisect
import enum
import logging
import secrets
import struct
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Optional

from services.core_model import Datastore, Digest, MalformedProofError
from services.crypto_service import HASH_ALG, SEED_SIZE, TAG_LEAF, TAG_NODE, TAG_SALT, hash_raw

logger = logging.getLogger(__name__)

DEPTH = 256
PROOF_VERSION = 0x01
ZERO32 = bytes(32)


def _empty_digests() -> list[bytes]:
    empties = [b""] * (DEPTH + 1)
    empties[DEPTH] = ZERO32
    for depth in range(DEPTH, 0, -1):
        empties[depth - 1] = hash_raw(TAG_NODE, empties[depth], empties[depth])
    return empties


# EMPTY_DIGESTS[d] is the root of an empty subtree whose top sits at depth d
EMPTY_DIGESTS: list[bytes] = _empty_digests()
EMPTY_ROOT = Digest(EMPTY_DIGESTS[0])


def _bit(label: int, index: int) -> int:
    """Bit `index` of a 256-bit label, MSB first (index 0 chooses the root's child)."""
    return (label >> (DEPTH - 1 - index)) & 1


def leaf_digest(salt: bytes, label: bytes, value_hash: bytes) -> bytes:
    return hash_raw(TAG_LEAF, salt, label, value_hash)


# ============================================================
# SPARSE MERKLE TREE (shared with the transparency log)
# ============================================================
class _Node:
    __slots__ = ("digest", "left", "right")

    def __init__(self, digest: bytes, left: Optional["_Node"] = None, right: Optional["_Node"] = None):
        self.digest = digest
        self.left = left
        self.right = right


def _child_digest(node: Optional[_Node], depth: int) -> bytes:
    return node.digest if node is not None else EMPTY_DIGESTS[depth]


def _join(left: Optional[_Node], right: Optional[_Node], depth: int) -> Optional[_Node]:
    """Parent at `depth` of two children at depth + 1; None when both are empty."""
    if left is None and right is None:
        return None
    return _Node(hash_raw(TAG_NODE, _child_digest(left, depth + 1), _child_digest(right, depth + 1)), left, right)


def _single(position: int, digest: bytes, depth: int) -> _Node:
    """Subtree rooted at `depth` holding exactly one leaf."""
    node = _Node(digest)
    for index in range(DEPTH - 1, depth - 1, -1):
        if _bit(position, index):
            node = _join(None, node, index)
        else:
            node = _join(node, None, index)
    return node


class SparseMerkleTree:
    """
    Depth-256 persistent binary trie storing only non-empty nodes.

    Versions share every subtree they have in common, so `with_leaf`
    allocates only the nodes on one root-to-leaf path.
    """

    def __init__(self, root: Optional[_Node] = None, size: int = 0):
        self._root = root
        self._size = size

    @classmethod
    def from_leaves(cls, leaves: Mapping[int, bytes]) -> "SparseMerkleTree":
        positions = sorted(leaves)

        def build(lo: int, hi: int, depth: int, prefix: int) -> Optional[_Node]:
            if lo == hi:
                return None
            if depth == DEPTH:
                return _Node(leaves[positions[lo]])
            if hi - lo == 1:
                return _single(positions[lo], leaves[positions[lo]], depth)
            right_prefix = (prefix << 1) | 1
            mid = bisect.bisect_left(positions, right_prefix << (DEPTH - depth - 1), lo, hi)
            return _join(
                build(lo, mid, depth + 1, prefix << 1),
                build(mid, hi, depth + 1, right_prefix),
                depth,
            )

        return cls(build(0, len(positions), 0, 0), len(positions))

    @property
    def root(self) -> bytes:
        return _child_digest(self._root, 0)

    def __len__(self) -> int:
        return self._size

    def leaf(self, position: int) -> Optional[bytes]:
        node = self._root
        for index in range(DEPTH):
            if node is None:
                return None
            node = node.right if _bit(position, index) else node.left
        return node.digest if node is not None else None

    def path(self, position: int) -> tuple[bytes, tuple[bytes, ...]]:
        """Authentication path: (32-byte sibling bitmap, non-empty siblings root-to-leaf)."""
        bitmap = bytearray(32)
        siblings: list[bytes] = []
        node = self._root
        for index in range(DEPTH):
            if node is None:
                break
            if _bit(position, index):
                sibling, node = node.left, node.right
            else:
                sibling, node = node.right, node.left
            if sibling is not None:
                bitmap[index // 8] |= 0x80 >> (index % 8)
                siblings.append(sibling.digest)
        return bytes(bitmap), tuple(siblings)

    def with_leaf(self, position: int, digest: bytes) -> "SparseMerkleTree":
        """Insert or replace one leaf; the receiver is left untouched."""
        trail: list[Optional[_Node]] = []
        node = self._root
        for index in range(DEPTH):
            trail.append(node)
            if node is not None:
                node = node.right if _bit(position, index) else node.left
        size = self._size if node is not None else self._size + 1

        rebuilt: Optional[_Node] = _Node(digest)
        for index in range(DEPTH - 1, -1, -1):
            parent = trail[index]
            left = parent.left if parent is not None else None
            right = parent.right if parent is not None else None
            if _bit(position, index):
                rebuilt = _join(left, rebuilt, index)
            else:
                rebuilt = _join(rebuilt, right, index)
        return SparseMerkleTree(rebuilt, size)


def root_from_path(position: int, leaf: bytes, bitmap: bytes, siblings: tuple[bytes, ...]) -> Optional[bytes]:
    """Fold an authentication path up to the root; None when the path is malformed."""
    if len(bitmap) != 32:
        return None
    flags = [bool(bitmap[i // 8] & (0x80 >> (i % 8))) for i in range(DEPTH)]
    if sum(flags) != len(siblings) or any(len(s) != 32 for s in siblings):
        return None

    node = leaf
    remaining = len(siblings)
    for index in range(DEPTH - 1, -1, -1):
        depth = index + 1
        if flags[index]:
            remaining -= 1
            sibling = siblings[remaining]
        else:
            sibling = EMPTY_DIGESTS[depth]
        if _bit(position, index):
            node = hash_raw(TAG_NODE, sibling, node)
        else:
            node = hash_raw(TAG_NODE, node, sibling)
    return node


# ============================================================
# ZKS TYPES
# ============================================================
@dataclass(frozen=True)
class Seed:
    value: bytes

    def __post_init__(self) -> None:
        if len(self.value) != SEED_SIZE:
            raise ValueError(f"seed must be exactly {SEED_SIZE} bytes")

    @classmethod
    def from_hex(cls, text: str) -> "Seed":
        return cls(bytes.fromhex(text))

    def hex(self) -> str:
        return self.value.hex()

    def __repr__(self) -> str:
        return "Seed(<redacted>)"


def fresh_seed() -> Seed:
    return Seed(secrets.token_bytes(SEED_SIZE))


@dataclass(frozen=True)
class Commitment:
    root: Digest
    hash_alg: str = HASH_ALG

    def hex(self) -> str:
        return self.root.hex()

    @classmethod
    def from_hex(cls, text: str, hash_alg: str = HASH_ALG) -> "Commitment":
        return cls(Digest.from_hex(text), hash_alg)


def derive_salt(seed: Seed, label: Digest) -> bytes:
    return hash_raw(TAG_SALT, seed.value, label.value)


@dataclass(frozen=True)
class SecretState:
    seed: Seed
    datastore: Datastore

    @cached_property
    def tree(self) -> SparseMerkleTree:
        leaves: dict[int, bytes] = {}
        for label, value in self.datastore.entries:
            salt = derive_salt(self.seed, label)
            leaves[label.as_int()] = leaf_digest(salt, label.value, hash_raw(value.encode("utf-8")))
        return SparseMerkleTree.from_leaves(leaves)

    @cached_property
    def values_by_label(self) -> dict[Digest, str]:
        return dict(self.datastore.entries)


class ProofKind(enum.Enum):
    NON_INCLUSION = 0x00
    INCLUSION = 0x01


@dataclass(frozen=True)
class ZksProof:
    kind: ProofKind
    label: Digest
    sibling_bitmap: bytes
    siblings: tuple[bytes, ...]
    salt: Optional[bytes] = None
    value: Optional[str] = None

    # --------------------------------------------------------
    # Wire format:
    #   0x01 | kind | label(32) | [salt(32) | len u16 BE | value] | bitmap(32) | siblings
    # --------------------------------------------------------
    def to_bytes(self) -> bytes:
        out = bytearray([PROOF_VERSION, self.kind.value])
        out += self.label.value
        if self.kind is ProofKind.INCLUSION:
            encoded = (self.value or "").encode("utf-8")
            out += self.salt or b""
            out += struct.pack(">H", len(encoded))
            out += encoded
        out += self.sibling_bitmap
        for sibling in self.siblings:
            out += sibling
        return bytes(out)

    def to_hex(self) -> str:
        return self.to_bytes().hex()

    @classmethod
    def from_bytes(cls, data: bytes) -> "ZksProof":
        try:
            if len(data) < 2 + 32 + 32 or data[0] != PROOF_VERSION:
                raise MalformedProofError("bad proof header")
            kind = ProofKind(data[1])
            label = Digest(data[2:34])
            offset = 34
            salt: Optional[bytes] = None
            value: Optional[str] = None
            if kind is ProofKind.INCLUSION:
                salt = data[offset:offset + 32]
                (length,) = struct.unpack(">H", data[offset + 32:offset + 34])
                offset += 34
                value = data[offset:offset + length].decode("utf-8")
                if len(salt) != 32 or len(data) < offset + length:
                    raise MalformedProofError("truncated inclusion payload")
                offset += length
            bitmap = data[offset:offset + 32]
            offset += 32
            rest = data[offset:]
            if len(bitmap) != 32 or len(rest) % 32:
                raise MalformedProofError("truncated sibling section")
            siblings = tuple(rest[i:i + 32] for i in range(0, len(rest), 32))
        except MalformedProofError:
            raise
        except (ValueError, struct.error) as exc:
            raise MalformedProofError(str(exc)) from exc

        popcount = sum(bin(b).count("1") for b in bitmap)
        if popcount != len(siblings):
            raise MalformedProofError("sibling count does not match bitmap")
        return cls(kind=kind, label=label, sibling_bitmap=bitmap, siblings=siblings, salt=salt, value=value)

    @classmethod
    def from_hex(cls, text: str) -> "ZksProof":
        try:
            raw = bytes.fromhex(text)
        except ValueError as exc:
            raise MalformedProofError(f"proof is not hex: {exc}") from exc
        return cls.from_bytes(raw)


# ============================================================
# COMMIT / QUERY / VERIFY
# ============================================================
def commit(datastore: Datastore, seed: Seed) -> tuple[Commitment, SecretState]:
    state = SecretState(seed=seed, datastore=datastore)
    commitment = Commitment(root=Digest(state.tree.root))
    logger.debug("Committed %d entries to %s", len(datastore), commitment.hex()[:12])
    return commitment, state


def query(state: SecretState, label: Digest) -> tuple[ZksProof, Optional[str]]:
    bitmap, siblings = state.tree.path(label.as_int())
    value = state.values_by_label.get(label)
    if value is None:
        proof = ZksProof(ProofKind.NON_INCLUSION, label, bitmap, siblings)
        return proof, None
    proof = ZksProof(
        ProofKind.INCLUSION,
        label,
        bitmap,
        siblings,
        salt=derive_salt(state.seed, label),
        value=value,
    )
    return proof, value


def verify(commitment: Commitment, label: Digest, value: Optional[str], proof: ZksProof) -> bool:
    """Check a (non-)inclusion proof using only public data; never raises."""
    try:
        if commitment.hash_alg != HASH_ALG or proof.label != label:
            return False
        if proof.kind is ProofKind.INCLUSION:
            if value is None or proof.value != value or proof.salt is None or len(proof.salt) != 32:
                return False
            leaf = leaf_digest(proof.salt, label.value, hash_raw(value.encode("utf-8")))
        else:
            if value is not None or proof.value is not None or proof.salt is not None:
                return False
            leaf = EMPTY_DIGESTS[DEPTH]
        root = root_from_path(label.as_int(), leaf, proof.sibling_bitmap, proof.siblings)
    except (AttributeError, TypeError, ValueError):
        return False
    return root is not None and root == commitment.root.value
