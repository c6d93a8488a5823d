# ============================================================
# operator_service.py – The zkSBOM operator
#
# Accepts SBOM uploads, commits them with a fresh seed, persists one
# write-once record file per commitment and answers vulnerability
# queries with (non-)inclusion proofs. Exposed over a tornado API.
# ============================================================

from __future__ import annotations

import datetime
import json
import logging
import os
import tempfile
import threading
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Optional

import tornado.web
from tornado.httputil import HTTPServerRequest

from services.advisory_service import AdvisoryDb, resolve
from services.core_model import (
    ComponentId,
    CorruptRecordError,
    Datastore,
    MalformedComponentError,
    MalformedDocumentError,
    StorageError,
    UnknownCommitmentError,
    UnknownCveError,
    UnsupportedSpecVersionError,
    canonical_id,
    parse_id,
)
from services.crypto_service import HASH_ALG, hash_bytes
from services.sbom_service import parse_cyclonedx, to_datastore
from services.zks_service import Commitment, Seed, SecretState, commit, fresh_seed, query

logger = logging.getLogger(__name__)

RECORD_MAGIC = "ZKSBOM/1"
RECORD_SUFFIX = ".zks"


@dataclass(frozen=True)
class CommitmentRecord:
    commitment: Commitment
    seed: Seed
    datastore: Datastore
    created_at: datetime.datetime = field(
        default_factory=lambda: datetime.datetime.now(datetime.timezone.utc), compare=False
    )
    secret_state: Optional[SecretState] = field(default=None, compare=False, repr=False)

    def state(self) -> SecretState:
        if self.secret_state is not None:
            return self.secret_state
        return SecretState(seed=self.seed, datastore=self.datastore)


def _strict_bool(raw: object) -> bool:
    if not isinstance(raw, bool):
        raise MalformedComponentError(f"`present` must be a JSON boolean, got {raw!r}")
    return raw


@dataclass(frozen=True)
class ComponentProof:
    component: ComponentId
    present: bool
    value: Optional[str]
    proof_hex: str

    def to_json(self) -> dict:
        return {
            "component": canonical_id(self.component),
            "present": self.present,
            "value": self.value,
            "proof": self.proof_hex,
        }

    @classmethod
    def from_json(cls, raw: dict) -> "ComponentProof":
        return cls(
            component=parse_id(str(raw["component"])),
            present=_strict_bool(raw["present"]),
            value=raw.get("value"),
            proof_hex=str(raw["proof"]),
        )


# ============================================================
# RECORD FILES (Store / Load)
# ============================================================
def encode_record(record: CommitmentRecord) -> bytes:
    lines = [RECORD_MAGIC, f"hash={record.commitment.hash_alg}", f"seed={record.seed.hex()}"]
    lines.extend(record.datastore.values())
    return ("\n".join(lines) + "\n").encode("utf-8")


def decode_record(data: bytes, commitment: Commitment) -> CommitmentRecord:
    """Parse a record file and check that it recommits to `commitment`."""
    try:
        text = data.decode("utf-8")
        if not text.endswith("\n"):
            raise ValueError("record must end with a newline")
        lines = text[:-1].split("\n")
        if len(lines) < 3 or lines[0] != RECORD_MAGIC:
            raise ValueError("bad record header")
        if lines[1] != f"hash={HASH_ALG}":
            raise ValueError(f"unsupported hash line {lines[1]!r}")
        if not lines[2].startswith("seed="):
            raise ValueError("missing seed line")
        seed_hex = lines[2][len("seed="):]
        if len(seed_hex) != 64 or seed_hex != seed_hex.lower():
            raise ValueError("seed must be 64 lowercase hex characters")
        seed = Seed.from_hex(seed_hex)
        values = lines[3:]
        for value in values:
            if canonical_id(parse_id(value)) != value:
                raise ValueError(f"non-canonical component line {value!r}")
        datastore = Datastore.from_canonical_ids(values)
        if datastore.values() != values:
            raise ValueError("component lines are not unique and in label order")
    except (UnicodeDecodeError, ValueError, MalformedComponentError) as exc:
        raise CorruptRecordError(f"record for {commitment.hex()[:12]} is corrupt: {exc}") from exc

    recomputed, state = commit(datastore, seed)
    if recomputed != commitment:
        raise CorruptRecordError(f"record for {commitment.hex()[:12]} does not recommit to its key")
    return CommitmentRecord(commitment=commitment, seed=seed, datastore=datastore, secret_state=state)


class RecordStore:
    """One `<commitment-hex>.zks` file per commitment; files are write-once."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self._lock = threading.Lock()
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise StorageError(f"cannot create record directory {self.directory}: {exc}") from exc

    def path_for(self, commitment: Commitment) -> Path:
        return self.directory / f"{commitment.hex()}{RECORD_SUFFIX}"

    def store_record(self, record: CommitmentRecord) -> Path:
        path = self.path_for(record.commitment)
        payload = encode_record(record)
        with self._lock:
            if path.exists():
                return path
            try:
                fd, tmp_name = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
                with os.fdopen(fd, "wb") as fh:
                    fh.write(payload)
                os.replace(tmp_name, path)
            except OSError as exc:
                raise StorageError(f"cannot write record {path.name}: {exc}") from exc
        return path

    def load_record(self, commitment: Commitment) -> CommitmentRecord:
        path = self.path_for(commitment)
        try:
            data = path.read_bytes()
            mtime = path.stat().st_mtime
        except FileNotFoundError as exc:
            raise UnknownCommitmentError(f"no record for commitment {commitment.hex()}") from exc
        except OSError as exc:
            raise StorageError(f"cannot read record {path.name}: {exc}") from exc

        try:
            record = decode_record(data, commitment)
        except CorruptRecordError:
            logger.warning("Corrupt record file %s", path.name)
            raise
        created = datetime.datetime.fromtimestamp(mtime, tz=datetime.timezone.utc)
        return replace(record, created_at=created)

    def size_of(self, commitment: Commitment) -> int:
        return self.path_for(commitment).stat().st_size


# ============================================================
# OPERATOR
# ============================================================
class OperatorService:
    def __init__(self, store: RecordStore, advisories: AdvisoryDb):
        self.store = store
        self.advisories = advisories

    def upload_sbom(self, document_bytes: bytes) -> tuple[Commitment, Seed]:
        """Step (1): extract components, fresh seed, commit, store the record."""
        sbom = parse_cyclonedx(document_bytes)
        datastore = to_datastore(sbom)
        seed = fresh_seed()
        commitment, _ = commit(datastore, seed)
        self.store.store_record(CommitmentRecord(commitment=commitment, seed=seed, datastore=datastore))
        logger.info("Committed SBOM %r (%d components) as %s", sbom.serial_or_name, len(datastore), commitment.hex()[:12])
        return commitment, seed

    def query_vulnerability(self, commitment: Commitment, cve_id: str) -> list[ComponentProof]:
        """Step (6): one proof per affected component-version and nothing else."""
        state = self.store.load_record(commitment).state()
        affected = resolve(self.advisories, cve_id)

        proofs: list[ComponentProof] = []
        for component in affected:
            label = hash_bytes(canonical_id(component).encode("utf-8"))
            proof, value = query(state, label)
            proofs.append(ComponentProof(component, value is not None, value, proof.to_hex()))
        logger.info("Answered %s for %s with %d proofs", cve_id, commitment.hex()[:12], len(proofs))
        return proofs


def proofs_body(cve_id: str, proofs: list[ComponentProof]) -> dict:
    return {"cve": cve_id, "proofs": [p.to_json() for p in proofs]}


# ============================================================
# HTTP API
# ============================================================
Authorizer = Callable[[HTTPServerRequest], bool]


def allow_all(request: HTTPServerRequest) -> bool:
    return True


class OperatorHandler(tornado.web.RequestHandler):
    def initialize(self, operator: OperatorService, authorize: Authorizer) -> None:
        self.operator = operator
        self.authorize = authorize

    def prepare(self) -> None:
        if not self.authorize(self.request):
            self._fail(403, "not authorized")

    def _fail(self, status: int, message: str) -> None:
        self.set_status(status)
        self.finish({"message": message})


class SbomHandler(OperatorHandler):
    def post(self) -> None:
        try:
            commitment, seed = self.operator.upload_sbom(self.request.body)
        except (MalformedDocumentError, UnsupportedSpecVersionError) as exc:
            return self._fail(400, str(exc))
        except StorageError as exc:
            logger.error("Upload failed: %s", exc)
            return self._fail(500, "storage failure")
        self.write({"commitment": commitment.hex(), "seed": seed.hex()})


class ProofHandler(OperatorHandler):
    def get(self) -> None:
        commitment_hex = self.get_query_argument("commitment", "")
        cve_id = self.get_query_argument("cve", "")
        if not commitment_hex or not cve_id:
            return self._fail(400, "commitment and cve are required")
        try:
            commitment = Commitment.from_hex(commitment_hex)
        except ValueError:
            return self._fail(400, "commitment must be 64 lowercase hex characters")
        try:
            proofs = self.operator.query_vulnerability(commitment, cve_id)
        except (UnknownCommitmentError, UnknownCveError) as exc:
            return self._fail(404, str(exc))
        except (CorruptRecordError, StorageError) as exc:
            logger.error("Query failed: %s", exc)
            return self._fail(500, "storage failure")
        self.write(proofs_body(cve_id, proofs))


def make_app(operator: OperatorService, authorize: Authorizer = allow_all) -> tornado.web.Application:
    handler_args = {"operator": operator, "authorize": authorize}
    return tornado.web.Application(
        [
            (r"/api/v1/sbom", SbomHandler, handler_args),
            (r"/api/v1/proof", ProofHandler, handler_args),
        ]
    )
