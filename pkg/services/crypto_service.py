# ============================================================
# crypto_service.py – BLAKE2b-256 hashing and Ed25519 signatures
#
# H is BLAKE2b with a 32-byte digest; DS is Ed25519, which signs
# deterministically so republished entries are byte-stable.
# ============================================================

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path

from cryptography.exceptions import InvalidSignature
from cryptography.hazmat.primitives import serialization
from cryptography.hazmat.primitives.asymmetric import ed25519

from services.core_model import BadSeedLengthError, Digest, InvalidKeyError

HASH_ALG = "blake2b-256"
SEED_SIZE = 32
SIGNATURE_SIZE = 64

# Domain separation tags for protocol-internal hashes
TAG_LEAF = b"\x00"
TAG_NODE = b"\x01"
TAG_SALT = b"\x02"
TAG_BINDING = b"\x03"


def hash_bytes(message: bytes) -> Digest:
    return Digest(hashlib.blake2b(message, digest_size=32).digest())


def hash_raw(*parts: bytes) -> bytes:
    """Hash the concatenation of parts, returning raw bytes (tree hot path)."""
    h = hashlib.blake2b(digest_size=32)
    for part in parts:
        h.update(part)
    return h.digest()


# ============================================================
# SIGNATURES
# ============================================================
@dataclass(frozen=True)
class KeyPair:
    public_key: bytes
    private_key: bytes = field(repr=False)


@dataclass(frozen=True)
class Signature:
    value: bytes

    @classmethod
    def from_hex(cls, text: str) -> "Signature":
        return cls(bytes.fromhex(text))

    def hex(self) -> str:
        return self.value.hex()


def keygen(seed: bytes) -> KeyPair:
    """Derive an Ed25519 key pair from a 32-byte seed."""
    if len(seed) != SEED_SIZE:
        raise BadSeedLengthError(f"seed must be {SEED_SIZE} bytes, got {len(seed)}")
    private = ed25519.Ed25519PrivateKey.from_private_bytes(bytes(seed))
    public_raw = private.public_key().public_bytes(
        encoding=serialization.Encoding.Raw,
        format=serialization.PublicFormat.Raw,
    )
    return KeyPair(public_key=public_raw, private_key=bytes(seed))


def sign(message: bytes, private_key: bytes) -> Signature:
    try:
        private = ed25519.Ed25519PrivateKey.from_private_bytes(bytes(private_key))
    except (TypeError, ValueError) as exc:
        raise InvalidKeyError(f"invalid private key: {exc}") from exc
    return Signature(private.sign(message))


def verify_sig(signature: Signature | bytes, message: bytes, public_key: bytes) -> bool:
    """True iff signature is valid for (message, public_key); never raises."""
    raw = signature.value if isinstance(signature, Signature) else signature
    try:
        public = ed25519.Ed25519PublicKey.from_public_bytes(bytes(public_key))
        public.verify(bytes(raw), message)
    except (InvalidSignature, TypeError, ValueError):
        return False
    return True


# ============================================================
# KEY FILES (hex text)
# ============================================================
def _read_hex_file(path: str | Path, size: int) -> bytes:
    try:
        text = Path(path).read_text(encoding="utf-8").strip()
        raw = bytes.fromhex(text)
    except (OSError, ValueError) as exc:
        raise InvalidKeyError(f"cannot read key file {path}: {exc}") from exc
    if len(raw) != size:
        raise InvalidKeyError(f"key file {path} must hold {size} bytes, got {len(raw)}")
    return raw


def load_seed_file(path: str | Path) -> bytes:
    return _read_hex_file(path, SEED_SIZE)


def load_public_key_file(path: str | Path) -> bytes:
    return _read_hex_file(path, 32)


def write_key_files(pair: KeyPair, seed_path: str | Path, public_path: str | Path) -> None:
    Path(seed_path).write_text(pair.private_key.hex() + "\n", encoding="utf-8")
    Path(public_path).write_text(pair.public_key.hex() + "\n", encoding="utf-8")
