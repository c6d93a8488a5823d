# ============================================================
# client_service.py – Supplier and consumer operations
#
# Supplier: recompute the operator's commitment (step 2) and publish
# a signed entry to the transparency log (step 3).
# Consumer: check the publication (step 5) and verify the operator's
# proofs into a verdict (step 7).
# ============================================================

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Optional

from services.advisory_service import AdvisoryDb, resolve
from services.core_model import (
    Digest,
    MalformedComponentError,
    MalformedDocumentError,
    MalformedProofError,
    Verdict,
    VerdictKind,
    canonical_id,
)
from services.crypto_service import hash_bytes, keygen, sign, verify_sig
from services.log_service import BindingMessage, LogDigest, LogEntry, LogState, tl_append, tl_lookup, tl_verify
from services.operator_service import ComponentProof
from services.sbom_service import parse_cyclonedx, to_datastore
from services.zks_service import Commitment, ProofKind, Seed, ZksProof, commit, verify

logger = logging.getLogger(__name__)


# ============================================================
# SUPPLIER
# ============================================================
def supplier_check_commitment(sbom_bytes: bytes, seed: Seed, claimed: Commitment) -> bool:
    """Recompute c' from the supplier's own SBOM and the returned seed."""
    recomputed, _ = commit(to_datastore(parse_cyclonedx(sbom_bytes)), seed)
    if recomputed != claimed:
        logger.warning("Operator commitment %s does not match the recomputed one", claimed.hex()[:12])
        return False
    return True


def make_entry(artifact_bytes: bytes, commitment: Commitment, private_key: bytes) -> LogEntry:
    artifact_hash = hash_bytes(artifact_bytes)
    message = BindingMessage(artifact_hash, commitment.root, commitment.hash_alg).encode()
    signature = sign(message, private_key)
    return LogEntry(artifact_hash, commitment, signature, keygen(private_key).public_key)


def supplier_publish(
    artifact_bytes: bytes,
    commitment: Commitment,
    private_key: bytes,
    log: LogState,
) -> tuple[LogState, LogDigest]:
    return tl_append(log, make_entry(artifact_bytes, commitment, private_key))


# ============================================================
# CONSUMER
# ============================================================
def consumer_check_publication(
    artifact_bytes: bytes,
    trusted_digest: LogDigest,
    log: LogState,
    supplier_pk: bytes,
) -> tuple[bool, Optional[Commitment]]:
    artifact_hash = hash_bytes(artifact_bytes)
    found, entry, proof = tl_lookup(log, artifact_hash)
    if not found or entry is None:
        logger.warning("Artifact %s is not published in the log", artifact_hash.hex()[:12])
        return False, None
    if not tl_verify(trusted_digest, artifact_hash, found, entry, proof):
        logger.warning("Log proof for %s does not verify against the trusted digest", artifact_hash.hex()[:12])
        return False, None
    if entry.supplier_public_key != supplier_pk or not verify_sig(
        entry.signature, entry.binding_message().encode(), supplier_pk
    ):
        logger.warning("Entry for %s is not signed by the expected supplier", artifact_hash.hex()[:12])
        return False, None
    return True, entry.commitment


def _invalid(detail: str) -> Verdict:
    logger.warning("Proof verification failed: %s", detail)
    return Verdict(VerdictKind.INVALID, detail)


def consumer_verify_proofs(
    commitment: Commitment,
    cve_id: str,
    proofs: list[ComponentProof],
    db: AdvisoryDb,
) -> Verdict:
    """
    Turn an operator response into a verdict.

    The response must cover every affected component-version exactly once;
    each value must be the affected id itself or absent; each proof must be
    for H(id) and verify against the commitment.
    """
    expected = [canonical_id(c) for c in resolve(db, cve_id)]
    claimed = [canonical_id(p.component) for p in proofs]
    if len(claimed) != len(set(claimed)):
        return _invalid("duplicate component in proof list")
    if set(claimed) != set(expected):
        missing = sorted(set(expected) - set(claimed))
        extra = sorted(set(claimed) - set(expected))
        return _invalid(f"proof list does not cover the advisory (missing={missing}, extra={extra})")

    included: list[str] = []
    for item in proofs:
        wanted = canonical_id(item.component)
        if item.value is not None and item.value != wanted:
            return _invalid(f"value {item.value!r} is unrelated to {wanted}")
        if item.present != (item.value is not None):
            return _invalid(f"present flag inconsistent with value for {wanted}")
        try:
            proof = ZksProof.from_hex(item.proof_hex)
        except MalformedProofError as exc:
            return _invalid(f"malformed proof for {wanted}: {exc}")
        if (proof.kind is ProofKind.INCLUSION) != item.present:
            return _invalid(f"proof kind disagrees with present flag for {wanted}")
        label = hash_bytes(wanted.encode("utf-8"))
        if not verify(commitment, label, item.value, proof):
            return _invalid(f"proof for {wanted} does not verify against {commitment.hex()[:12]}")
        if item.present:
            included.append(wanted)

    if included:
        return Verdict(VerdictKind.AFFECTED, ", ".join(included))
    return Verdict(VerdictKind.NOT_AFFECTED, f"{len(expected)} verified non-inclusion proofs")


# ============================================================
# FILES
# ============================================================
def load_proofs_file(path: str | Path) -> tuple[str, list[ComponentProof]]:
    """Read the operator's proof endpoint body, verbatim."""
    try:
        body = json.loads(Path(path).read_text(encoding="utf-8"))
        return str(body["cve"]), [ComponentProof.from_json(raw) for raw in body["proofs"]]
    except (OSError, ValueError, KeyError, TypeError, MalformedComponentError) as exc:
        raise MalformedDocumentError(f"cannot read proofs file {path}: {exc}") from exc


def parse_commitment(text: str) -> Commitment:
    return Commitment(Digest.from_hex(text.strip()))
