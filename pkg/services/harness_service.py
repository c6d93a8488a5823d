# ============================================================
# harness_service.py – End-to-end protocol runs
#
# Instantiates operator, supplier and consumer in one process and
# replays the seven protocol steps: (1) commit, (2) supplier check,
# (3) publish, (4) consumer lookup, (5) publication check, (6) proof
# generation, (7) proof verification. Adversarial runs inject an
# attack at one step and record where it is caught.
# Also hosts the synthetic SBOM generator and the performance sweeps.
# ============================================================

from __future__ import annotations

import enum
import json
import logging
import secrets
import tempfile
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Optional

import numpy as np
import pandas as pd

from services.advisory_service import Advisory, AdvisoryDb, load_advisories, resolve
from services.client_service import (
    consumer_check_publication,
    consumer_verify_proofs,
    supplier_check_commitment,
    supplier_publish,
)
from services.core_model import (
    ComponentId,
    Datastore,
    DuplicateArtifactError,
    Ecosystem,
    FixtureError,
    Verdict,
    VerdictKind,
    ZkSbomError,
    canonical_id,
)
from services.crypto_service import KeyPair, hash_bytes, keygen, verify_sig
from services.log_service import LogDigest, LogState, tl_lookup, tl_setup, tl_verify
from services.operator_service import CommitmentRecord, ComponentProof, OperatorService, RecordStore
from services.sbom_service import build_cyclonedx, parse_cyclonedx, to_datastore
from services.zks_service import (
    Commitment,
    SecretState,
    commit,
    fresh_seed,
    query,
    verify,
)

logger = logging.getLogger(__name__)


class Adversary(enum.Enum):
    NONE = "None"
    TAMPER_OPERATOR = "TamperOperator"
    FORGE_PROOF_CONSUMER = "ForgeProofConsumer"
    RETROACTIVE_HIDE = "RetroactiveHide"
    REPUDIATE = "Repudiate"
    SPLIT_VIEW = "SplitView"


ADVERSARIES = [a for a in Adversary if a is not Adversary.NONE]


@dataclass(frozen=True)
class Scenario:
    name: str
    sbom_path: Path
    advisories_path: Path
    cves: tuple[str, ...]
    adversary: Adversary = Adversary.NONE

    def __post_init__(self) -> None:
        for path in (self.sbom_path, self.advisories_path):
            if not Path(path).is_file():
                raise FixtureError(f"scenario {self.name!r}: fixture {path} does not exist")


def load_scenario(path: str | Path) -> Scenario:
    """Scenario JSON; fixture paths are relative to the scenario file."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
        base = path.parent
        return Scenario(
            name=str(raw["name"]),
            sbom_path=base / raw["sbom"],
            advisories_path=base / raw["advisories"],
            cves=tuple(str(c) for c in raw.get("cves", [])),
            adversary=Adversary(raw.get("adversary", "None")),
        )
    except FixtureError:
        raise
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise FixtureError(f"cannot load scenario {path}: {exc}") from exc


@dataclass(frozen=True)
class Step:
    actor: str
    step: str
    outcome: str


@dataclass
class Transcript:
    scenario: str
    adversary: Adversary = Adversary.NONE
    steps: list[Step] = field(default_factory=list)
    verdicts: dict[str, Verdict] = field(default_factory=dict)
    responses: dict[str, list[ComponentProof]] = field(default_factory=dict)
    commitment: Optional[Commitment] = None
    detected: bool = False
    detected_at: Optional[str] = None

    def record(self, actor: str, step: str, outcome: str) -> None:
        self.steps.append(Step(actor, step, outcome))
        logger.debug("[%s] %s %s: %s", self.scenario, actor, step, outcome)

    def detect(self, actor: str, step: str, outcome: str) -> None:
        self.record(actor, step, outcome)
        if not self.detected:
            self.detected = True
            self.detected_at = step

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([s.__dict__ for s in self.steps], columns=["actor", "step", "outcome"])


# ============================================================
# ACTORS
# ============================================================
@dataclass
class _Actors:
    """One run's operator, supplier key and in-memory log."""

    operator: OperatorService
    supplier: KeyPair
    log: LogState
    workdir: tempfile.TemporaryDirectory

    @classmethod
    def create(cls, db: AdvisoryDb) -> "_Actors":
        workdir = tempfile.TemporaryDirectory(prefix="zksbom-run-")
        operator = OperatorService(RecordStore(workdir.name), db)
        return cls(operator, keygen(secrets.token_bytes(32)), tl_setup(), workdir)

    def close(self) -> None:
        self.workdir.cleanup()


def artifact_for(sbom_bytes: bytes) -> bytes:
    """Stand-in software artifact the SBOM describes."""
    return b"artifact:" + hash_bytes(sbom_bytes).value


def ground_truth(sbom_bytes: bytes, db: AdvisoryDb, cve_id: str) -> VerdictKind:
    present = {canonical_id(c) for c in parse_cyclonedx(sbom_bytes).components}
    affected = {canonical_id(c) for c in resolve(db, cve_id)}
    return VerdictKind.AFFECTED if present & affected else VerdictKind.NOT_AFFECTED


def _publish(actors: _Actors, t: Transcript, sbom_bytes: bytes) -> Optional[tuple[Commitment, LogDigest]]:
    """Steps (1)-(5). Returns the commitment the consumer trusts, or None if a check failed."""
    commitment, seed = actors.operator.upload_sbom(sbom_bytes)
    t.record("Operator", "(1) commit", f"commitment {commitment.hex()[:12]}")

    if not supplier_check_commitment(sbom_bytes, seed, commitment):
        t.detect("Supplier", "(2) check commitment", "recomputed commitment differs")
        return None
    t.record("Supplier", "(2) check commitment", "commitment matches")

    artifact = artifact_for(sbom_bytes)
    actors.log, digest = supplier_publish(artifact, commitment, actors.supplier.private_key, actors.log)
    t.record("Supplier", "(3) publish", f"log digest {digest.hex()[:12]}")

    found, entry, _ = tl_lookup(actors.log, hash_bytes(artifact))
    t.record("Consumer", "(4) lookup", "entry found" if found else "no entry")

    ok, published = consumer_check_publication(artifact, digest, actors.log, actors.supplier.public_key)
    if not ok or published is None:
        t.detect("Consumer", "(5) check publication", "publication does not verify")
        return None
    t.record("Consumer", "(5) check publication", f"trusted commitment {published.hex()[:12]}")
    t.commitment = published
    return published, digest


def _query_and_verify(
    actors: _Actors,
    t: Transcript,
    commitment: Commitment,
    cve_id: str,
    db: AdvisoryDb,
    doctor: Optional[Callable[[list[ComponentProof]], list[ComponentProof]]] = None,
) -> Verdict:
    proofs = actors.operator.query_vulnerability(commitment, cve_id)
    if doctor is not None:
        proofs = doctor(proofs)
    t.responses[cve_id] = proofs
    t.record("Operator", "(6) generate proofs", f"{cve_id}: {len(proofs)} proofs")
    verdict = consumer_verify_proofs(commitment, cve_id, proofs, db)
    t.verdicts[cve_id] = verdict
    if verdict.kind is VerdictKind.INVALID:
        t.detect("Consumer", "(7) verify proofs", f"{cve_id}: {verdict}")
    else:
        t.record("Consumer", "(7) verify proofs", f"{cve_id}: {verdict}")
    return verdict


def run_protocol(sbom_bytes: bytes, db: AdvisoryDb, cves: list[str] | tuple[str, ...], name: str = "protocol") -> Transcript:
    """Honest run of all seven steps for every cve."""
    t = Transcript(scenario=name)
    actors = _Actors.create(db)
    try:
        published = _publish(actors, t, sbom_bytes)
        if published is not None:
            commitment, _ = published
            for cve_id in cves:
                _query_and_verify(actors, t, commitment, cve_id, db)
    finally:
        actors.close()
    return t


def _load_fixtures(scenario: Scenario) -> tuple[bytes, AdvisoryDb]:
    try:
        return Path(scenario.sbom_path).read_bytes(), load_advisories(scenario.advisories_path)
    except (OSError, ZkSbomError) as exc:
        raise FixtureError(f"scenario {scenario.name!r}: {exc}") from exc


def run_happy_path(scenario: Scenario) -> Transcript:
    if scenario.adversary is not Adversary.NONE:
        raise ValueError(f"scenario {scenario.name!r} is adversarial; use run_adversarial")
    sbom_bytes, db = _load_fixtures(scenario)
    t = run_protocol(sbom_bytes, db, scenario.cves, name=scenario.name)
    logger.info(
        "Scenario %s: %s",
        scenario.name,
        ", ".join(f"{cve}={v.kind.value}" for cve, v in t.verdicts.items()) or "no queries",
    )
    return t


# ============================================================
# ADVERSARIES
# ============================================================
def _tamper_operator(actors: _Actors, t: Transcript, sbom_bytes: bytes, db: AdvisoryDb, cves: tuple[str, ...]) -> None:
    """Operator commits to a doctored component list instead of the uploaded one."""
    honest = to_datastore(parse_cyclonedx(sbom_bytes))
    values = honest.values()
    doctored = values[1:] if values else ["tampered@0.0.0@NPM"]
    datastore = Datastore.from_canonical_ids(doctored)
    seed = fresh_seed()
    commitment, _ = commit(datastore, seed)
    actors.operator.store.store_record(CommitmentRecord(commitment, seed, datastore))
    t.record("Operator", "(1) commit", f"commits doctored SBOM as {commitment.hex()[:12]}")

    if supplier_check_commitment(sbom_bytes, seed, commitment):
        t.record("Supplier", "(2) check commitment", "tampering went unnoticed")
    else:
        t.detect("Supplier", "(2) check commitment", "recomputed commitment differs; supplier refuses to publish")


def _forged_claims(proofs: list[ComponentProof]) -> list[tuple[str, list[ComponentProof]]]:
    variants: list[tuple[str, list[ComponentProof]]] = []
    if not proofs:
        return variants
    first = proofs[0]
    wanted = canonical_id(first.component)

    flipped = replace(first, present=not first.present, value=None if first.present else wanted)
    variants.append(("flip present flag", [flipped] + proofs[1:]))

    raw = bytearray(bytes.fromhex(first.proof_hex))
    raw[-1] ^= 0x01
    variants.append(("mutate proof byte", [replace(first, proof_hex=raw.hex())] + proofs[1:]))

    # inclusion proof from an unrelated tree that does hold the component
    fake_state = SecretState(fresh_seed(), Datastore.from_canonical_ids([wanted]))
    fake_proof, _ = query(fake_state, hash_bytes(wanted.encode("utf-8")))
    variants.append(
        ("fabricate inclusion proof", [ComponentProof(first.component, True, wanted, fake_proof.to_hex())] + proofs[1:])
    )
    variants.append(("drop a proof", proofs[1:]))
    return variants


def _forge_proof_consumer(actors: _Actors, t: Transcript, commitment: Commitment, db: AdvisoryDb, cves: tuple[str, ...]) -> None:
    """Consumer accuses the supplier using altered proofs; an arbiter re-verifies them."""
    accepted = False
    for cve_id in cves:
        honest = actors.operator.query_vulnerability(commitment, cve_id)
        t.record("Operator", "(6) generate proofs", f"{cve_id}: {len(honest)} proofs")
        for label, forged in _forged_claims(honest):
            verdict = consumer_verify_proofs(commitment, cve_id, forged, db)
            t.verdicts[cve_id] = verdict
            if verdict.kind is VerdictKind.INVALID:
                t.detect("Arbiter", "(7) verify proofs", f"{cve_id} [{label}]: claim rejected")
            else:
                accepted = True
                t.record("Arbiter", "(7) verify proofs", f"{cve_id} [{label}]: forged claim accepted as {verdict.kind.value}")
    if accepted:
        t.detected, t.detected_at = False, None


def _retroactive_hide(
    actors: _Actors, t: Transcript, commitment: Commitment, db: AdvisoryDb, cves: tuple[str, ...]
) -> None:
    """After publication the operator answers from a state with the vulnerable component removed."""
    record = actors.operator.store.load_record(commitment)
    present = set(record.datastore.values())

    target_cve, target = None, None
    for cve_id in cves:
        hits = [canonical_id(c) for c in resolve(db, cve_id) if canonical_id(c) in present]
        if hits:
            target_cve, target = cve_id, hits[0]
            break
    if target is None:
        if not present:
            t.record("Operator", "(6) generate proofs", "nothing to hide in an empty SBOM")
            return
        target = sorted(present)[0]

    doctored = SecretState(record.seed, Datastore.from_canonical_ids(sorted(present - {target})))
    label = hash_bytes(target.encode("utf-8"))
    hidden_proof, _ = query(doctored, label)
    t.record("Operator", "(6) generate proofs", f"non-inclusion for {target} from a doctored state")

    if verify(commitment, label, None, hidden_proof):
        t.record("Consumer", "(7) verify proofs", f"{target} hidden successfully")
        return
    t.detect("Consumer", "(7) verify proofs", f"non-inclusion proof for {target} fails against the published commitment")

    if target_cve is not None:

        def hide(proofs: list[ComponentProof]) -> list[ComponentProof]:
            return [
                ComponentProof(p.component, False, None, hidden_proof.to_hex()) if canonical_id(p.component) == target else p
                for p in proofs
            ]

        _query_and_verify(actors, t, commitment, target_cve, db, doctor=hide)


def _repudiate(actors: _Actors, t: Transcript, sbom_bytes: bytes, digest: LogDigest) -> None:
    """Supplier denies the published commitment; the signed log entry says otherwise."""
    artifact_hash = hash_bytes(artifact_for(sbom_bytes))
    t.record("Supplier", "denial", "claims the commitment is not their official SBOM")
    found, entry, proof = tl_lookup(actors.log, artifact_hash)
    if not found or entry is None or not tl_verify(digest, artifact_hash, found, entry, proof):
        t.record("Consumer", "(5) check publication", "no verifiable entry to hold the supplier to")
        return
    if verify_sig(entry.signature, entry.binding_message().encode(), actors.supplier.public_key):
        t.detect("Consumer", "(5) check publication", "logged entry carries a valid supplier signature; denial refuted")
    else:
        t.record("Consumer", "(5) check publication", "signature does not verify")


def _split_view(actors: _Actors, t: Transcript, sbom_bytes: bytes) -> None:
    """Supplier tries to publish a second commitment for the same artifact."""
    fake = build_cyclonedx([ComponentId("left-pad", "1.3.0", Ecosystem.NPM)], name="safe-looking")
    second, _ = actors.operator.upload_sbom(fake)
    t.record("Operator", "(1) commit", f"second commitment {second.hex()[:12]}")
    try:
        supplier_publish(artifact_for(sbom_bytes), second, actors.supplier.private_key, actors.log)
    except DuplicateArtifactError:
        t.detect("Log", "(3) publish", "second commitment for the artifact rejected")
        return
    t.record("Log", "(3) publish", "second commitment accepted")


def run_adversarial(scenario: Scenario) -> Transcript:
    if scenario.adversary is Adversary.NONE:
        raise ValueError(f"scenario {scenario.name!r} has no adversary; use run_happy_path")
    sbom_bytes, db = _load_fixtures(scenario)
    t = Transcript(scenario=scenario.name, adversary=scenario.adversary)
    actors = _Actors.create(db)
    try:
        if scenario.adversary is Adversary.TAMPER_OPERATOR:
            _tamper_operator(actors, t, sbom_bytes, db, scenario.cves)
        else:
            published = _publish(actors, t, sbom_bytes)
            if published is None:
                return t
            commitment, digest = published
            if scenario.adversary is Adversary.FORGE_PROOF_CONSUMER:
                _forge_proof_consumer(actors, t, commitment, db, scenario.cves)
            elif scenario.adversary is Adversary.RETROACTIVE_HIDE:
                _retroactive_hide(actors, t, commitment, db, scenario.cves)
            elif scenario.adversary is Adversary.REPUDIATE:
                _repudiate(actors, t, sbom_bytes, digest)
            elif scenario.adversary is Adversary.SPLIT_VIEW:
                _split_view(actors, t, sbom_bytes)
    finally:
        actors.close()

    if t.detected:
        logger.info("Scenario %s: %s detected at %s", scenario.name, scenario.adversary.value, t.detected_at)
    else:
        logger.warning("Scenario %s: %s went undetected", scenario.name, scenario.adversary.value)
    return t


def run_scenario(scenario: Scenario) -> Transcript:
    if scenario.adversary is Adversary.NONE:
        return run_happy_path(scenario)
    return run_adversarial(scenario)


# ============================================================
# SYNTHETIC FIXTURES
# ============================================================
def vulnerable_component(index: int) -> ComponentId:
    return ComponentId(f"vulnerable-{index}", "1.0.0", Ecosystem.NPM)


def synthetic_components(n: int, vulnerable: int = 0) -> list[ComponentId]:
    """`synthetic-<i>@1.0.0@NPM` with the first `vulnerable` replaced by advisory-matching ids."""
    if n < 0 or vulnerable < 0 or vulnerable > n:
        raise ValueError(f"need 0 <= vulnerable <= n, got n={n} vulnerable={vulnerable}")
    return [vulnerable_component(i) if i < vulnerable else ComponentId(f"synthetic-{i}", "1.0.0", Ecosystem.NPM) for i in range(n)]


def synthetic_sbom(n: int, vulnerable: int = 0) -> bytes:
    return build_cyclonedx(synthetic_components(n, vulnerable), name=f"synthetic-{n}")


def synthetic_advisories(vulnerable: int, cve_id: str = "SYNTHETIC-VULN") -> AdvisoryDb:
    affected = tuple(vulnerable_component(i) for i in range(max(vulnerable, 1)))
    return AdvisoryDb.from_advisories([Advisory(cve_id, affected)], source="<synthetic>")


ORACLE_ECOSYSTEMS = list(Ecosystem)


def random_fixture(rng: np.random.Generator, max_components: int = 64) -> tuple[bytes, AdvisoryDb, list[str]]:
    """Random SBOM over a small pool plus advisories drawn from the same pool."""
    pool = [
        ComponentId(f"pkg{k}", f"1.{v}.0", ORACLE_ECOSYSTEMS[k % len(ORACLE_ECOSYSTEMS)], group="org.example" if k % 4 == 2 else None)
        for k in range(24)
        for v in range(4)
    ]
    n = int(rng.integers(0, max_components + 1))
    chosen = rng.choice(len(pool), size=n, replace=False)
    sbom = build_cyclonedx([pool[i] for i in chosen], name="random")

    advisories = []
    for a in range(int(rng.integers(1, 5))):
        size = int(rng.integers(1, 12))
        picks = rng.choice(len(pool), size=size, replace=False)
        advisories.append(Advisory(f"RAND-{a}", tuple(pool[i] for i in picks)))
    db = AdvisoryDb.from_advisories(advisories, source="<random>")
    return sbom, db, db.ids()


# ============================================================
# PERFORMANCE
# ============================================================
PERF_COLUMNS = [
    "sweep",
    "components",
    "vulnerable",
    "proof_count",
    "commit_ms",
    "inclusion_proof_ms",
    "exclusion_proof_ms",
    "inclusion_verify_ms",
    "exclusion_verify_ms",
    "query_ms",
    "verify_all_ms",
    "record_bytes",
    "inclusion_proof_bytes",
    "exclusion_proof_bytes",
]

ABSENT_LABEL_ID = "absent-component@0.0.0@NPM"


def _ms(fn: Callable[[], object]) -> tuple[float, object]:
    start = time.perf_counter()
    result = fn()
    return (time.perf_counter() - start) * 1000.0, result


def _measure(n: int, vulnerable: int, store: RecordStore) -> dict:
    sbom_bytes = synthetic_sbom(n, vulnerable)
    db = synthetic_advisories(vulnerable)
    operator = OperatorService(store, db)

    commit_ms, (commitment, _) = _ms(lambda: operator.upload_sbom(sbom_bytes))
    # the loaded state already carries the tree built by the recommit check
    state = store.load_record(commitment).state()

    absent = hash_bytes(ABSENT_LABEL_ID.encode("utf-8"))
    exclusion_ms, (exclusion, _) = _ms(lambda: query(state, absent))
    exclusion_verify_ms, _ = _ms(lambda: verify(commitment, absent, None, exclusion))

    row = {
        "components": n,
        "vulnerable": vulnerable,
        "commit_ms": commit_ms,
        "exclusion_proof_ms": exclusion_ms,
        "exclusion_verify_ms": exclusion_verify_ms,
        "record_bytes": store.size_of(commitment),
        "exclusion_proof_bytes": len(exclusion.to_bytes()),
        "inclusion_proof_ms": np.nan,
        "inclusion_verify_ms": np.nan,
        "inclusion_proof_bytes": np.nan,
    }
    if n > 0:
        member = canonical_id(synthetic_components(n, vulnerable)[0])
        label = hash_bytes(member.encode("utf-8"))
        inclusion_ms, (inclusion, _) = _ms(lambda: query(state, label))
        inclusion_verify_ms, _ = _ms(lambda: verify(commitment, label, member, inclusion))
        row.update(
            inclusion_proof_ms=inclusion_ms,
            inclusion_verify_ms=inclusion_verify_ms,
            inclusion_proof_bytes=len(inclusion.to_bytes()),
        )

    if vulnerable > 0:
        query_ms, proofs = _ms(lambda: operator.query_vulnerability(commitment, "SYNTHETIC-VULN"))
        verify_all_ms, _ = _ms(lambda: consumer_verify_proofs(commitment, "SYNTHETIC-VULN", proofs, db))
        row.update(proof_count=len(proofs), query_ms=query_ms, verify_all_ms=verify_all_ms)
    else:
        row.update(proof_count=0, query_ms=0.0, verify_all_ms=0.0)
    return row


def _median_row(rows: list[dict]) -> dict:
    merged = dict(rows[0])
    for key in merged:
        if key.endswith("_ms"):
            merged[key] = float(np.median([r[key] for r in rows]))
    return merged


def run_perf_sweep(
    component_counts: list[int],
    vulnerable_counts: list[int],
    repeats: int = 3,
    fixed_components: int = 1000,
) -> pd.DataFrame:
    """
    Two sweeps, median of `repeats` runs per point:
      "components": n in component_counts, one vulnerable component (none at n=0);
      "vulnerable": fixed_components components, v in vulnerable_counts vulnerable.
    Inclusion columns are NaN where the SBOM is empty.
    """
    if any(c < 0 for c in component_counts) or any(v < 0 for v in vulnerable_counts):
        raise ValueError("counts must be non-negative")
    if any(v > fixed_components for v in vulnerable_counts):
        raise ValueError(f"vulnerable counts cannot exceed {fixed_components} components")

    rows: list[dict] = []
    with tempfile.TemporaryDirectory(prefix="zksbom-perf-") as workdir:
        store = RecordStore(workdir)
        for n in component_counts:
            runs = [_measure(n, min(1, n), store) for _ in range(max(repeats, 1))]
            rows.append({"sweep": "components", **_median_row(runs)})
            logger.info("Perf components=%d commit=%.2fms", n, rows[-1]["commit_ms"])
        for v in vulnerable_counts:
            runs = [_measure(fixed_components, v, store) for _ in range(max(repeats, 1))]
            rows.append({"sweep": "vulnerable", **_median_row(runs)})
            logger.info("Perf vulnerable=%d proofs=%d", v, rows[-1]["proof_count"])
    return pd.DataFrame(rows, columns=PERF_COLUMNS)


def plot_panels(frame: pd.DataFrame):
    """Four panels: commitment time, proof generation, verification, sizes."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    comp = frame[frame["sweep"] == "components"].sort_values("components")
    vuln = frame[frame["sweep"] == "vulnerable"].sort_values("vulnerable")

    fig, axes = plt.subplots(2, 2, figsize=(11, 8))
    ax = axes[0][0]
    ax.plot(comp["components"], comp["commit_ms"], marker="o")
    ax.set_title("Commitment generation")
    ax.set_xlabel("Components")
    ax.set_ylabel("ms")

    ax = axes[0][1]
    ax.plot(comp["components"], comp["inclusion_proof_ms"], marker="o", label="inclusion")
    ax.plot(comp["components"], comp["exclusion_proof_ms"], marker="s", label="non-inclusion")
    if not vuln.empty:
        ax.plot(vuln["vulnerable"], vuln["query_ms"], marker="^", label=f"all proofs ({int(vuln['components'].iloc[0])} comps)")
    ax.set_title("Proof generation")
    ax.set_xlabel("Components / vulnerable components")
    ax.set_ylabel("ms")
    ax.legend()

    ax = axes[1][0]
    ax.plot(comp["components"], comp["inclusion_verify_ms"], marker="o", label="inclusion")
    ax.plot(comp["components"], comp["exclusion_verify_ms"], marker="s", label="non-inclusion")
    if not vuln.empty:
        ax.plot(vuln["vulnerable"], vuln["verify_all_ms"], marker="^", label="all proofs")
    ax.set_title("Proof verification")
    ax.set_xlabel("Components / vulnerable components")
    ax.set_ylabel("ms")
    ax.legend()

    ax = axes[1][1]
    ax.plot(comp["components"], comp["record_bytes"] / 1024.0, marker="o", label="record file")
    ax.plot(comp["components"], comp["inclusion_proof_bytes"] / 1024.0, marker="s", label="inclusion proof")
    ax.plot(comp["components"], comp["exclusion_proof_bytes"] / 1024.0, marker="^", label="non-inclusion proof")
    ax.set_title("Sizes")
    ax.set_xlabel("Components")
    ax.set_ylabel("KB")
    ax.legend()

    fig.tight_layout()
    return fig
