import json
import time

from hypothesis import given, settings
from hypothesis import strategies as st
import numpy as np
import pytest

from services.core_model import Datastore, FixtureError, VerdictKind, canonical_id
from services.harness_service import (
    Adversary,
    ADVERSARIES,
    PERF_COLUMNS,
    Scenario,
    ground_truth,
    load_scenario,
    plot_panels,
    random_fixture,
    run_adversarial,
    run_happy_path,
    run_perf_sweep,
    run_protocol,
    run_scenario,
    synthetic_components,
    synthetic_sbom,
)
from services.sbom_service import parse_cyclonedx
from services.zks_service import Seed, commit
from tests.conftest import ADVISORIES, LOG4J_282, SBOM_DIR, SCENARIO_DIR

A, N = VerdictKind.AFFECTED, VerdictKind.NOT_AFFECTED

HAPPY = {
    "druid-happy": {"CVE-2021-44228": A, "CVE-2025-55182": N},
    "empty-happy": {"CVE-2021-44228": N, "CVE-2026-35613": N},
    "kubernetes-happy": {"CVE-2024-21626": A, "CVE-2025-55182": N},
    "strapi-happy": {"CVE-2023-22621": A, "CVE-2025-55182": N},
    "uv-happy": {"CVE-2025-62518": A, "CVE-2025-55182": N},
}

DETECTED_AT = {
    Adversary.TAMPER_OPERATOR: "(2) check commitment",
    Adversary.FORGE_PROOF_CONSUMER: "(7) verify proofs",
    Adversary.RETROACTIVE_HIDE: "(7) verify proofs",
    Adversary.REPUDIATE: "(5) check publication",
    Adversary.SPLIT_VIEW: "(3) publish",
}


def _scenarios():
    return sorted(SCENARIO_DIR.glob("*.json"))


def test_druid_log4shell_run(druid_bytes, advisories):
    t = run_protocol(druid_bytes, advisories, ["CVE-2021-44228", "CVE-2025-55182"], name="druid")
    assert t.verdicts["CVE-2021-44228"].kind is A
    assert t.verdicts["CVE-2021-44228"].detail == LOG4J_282
    assert t.verdicts["CVE-2025-55182"].kind is N
    assert len(t.responses["CVE-2025-55182"]) == 11
    assert [p.present for p in t.responses["CVE-2021-44228"]].count(True) == 1
    assert not t.detected
    assert [s.step for s in t.steps][:5] == [
        "(1) commit",
        "(2) check commitment",
        "(3) publish",
        "(4) lookup",
        "(5) check publication",
    ]
    assert list(t.to_frame().columns) == ["actor", "step", "outcome"]


def test_bundled_scenarios_cover_every_adversary():
    adversaries = {load_scenario(p).adversary for p in _scenarios()}
    assert adversaries == set(Adversary)


@pytest.mark.parametrize("path", _scenarios(), ids=lambda p: p.stem)
def test_bundled_scenario(path, advisories):
    scenario = load_scenario(path)
    t = run_scenario(scenario)
    if scenario.adversary is Adversary.NONE:
        assert not t.detected
        assert {cve: v.kind for cve, v in t.verdicts.items()} == HAPPY[scenario.name]
        sbom_bytes = scenario.sbom_path.read_bytes()
        db_verdicts = {cve: ground_truth(sbom_bytes, advisories, cve) for cve in scenario.cves}
        assert db_verdicts == HAPPY[scenario.name]
    else:
        assert t.detected
        assert t.detected_at == DETECTED_AT[scenario.adversary]
        assert all(v.kind is VerdictKind.INVALID for v in t.verdicts.values())


@pytest.mark.parametrize("adversary", ADVERSARIES, ids=lambda a: a.value)
def test_every_attack_on_empty_sbom_is_handled(adversary):
    scenario = Scenario("empty", SBOM_DIR / "empty.cdx.json", ADVISORIES, ("CVE-2021-44228",), adversary)
    t = run_adversarial(scenario)
    assert all(v.kind is VerdictKind.INVALID for v in t.verdicts.values())


def test_runner_entry_points_check_adversary():
    honest = Scenario("h", SBOM_DIR / "empty.cdx.json", ADVISORIES, ())
    attack = Scenario("a", SBOM_DIR / "empty.cdx.json", ADVISORIES, (), Adversary.REPUDIATE)
    with pytest.raises(ValueError):
        run_adversarial(honest)
    with pytest.raises(ValueError):
        run_happy_path(attack)
    assert run_happy_path(honest).verdicts == {}


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_random_runs_match_set_intersection(seed):
    sbom, db, cves = random_fixture(np.random.default_rng(seed))
    t = run_protocol(sbom, db, cves, name=f"random-{seed}")
    assert set(t.verdicts) == set(cves)
    for cve in cves:
        assert t.verdicts[cve].kind is ground_truth(sbom, db, cve)


@pytest.mark.parametrize(
    "raw",
    (
        {"name": "x", "sbom": "missing.cdx.json", "advisories": str(ADVISORIES)},
        {"name": "x", "sbom": str(SBOM_DIR / "druid.cdx.json"), "advisories": str(ADVISORIES), "adversary": "Evil"},
        {"name": "x", "advisories": str(ADVISORIES)},
    ),
)
def test_bad_scenarios(tmp_path, raw):
    target = tmp_path / "bad.json"
    target.write_text(json.dumps(raw), encoding="utf-8")
    with pytest.raises(FixtureError):
        load_scenario(target)


def test_scenario_file_must_be_json(tmp_path):
    target = tmp_path / "bad.json"
    target.write_text("{", encoding="utf-8")
    with pytest.raises(FixtureError):
        load_scenario(target)


# ============================================================
# SYNTHETIC FIXTURES AND PERFORMANCE
# ============================================================
def test_synthetic_sbom_parses_back():
    sbom = parse_cyclonedx(synthetic_sbom(10, vulnerable=3))
    ids = [canonical_id(c) for c in sbom.components]
    assert len(ids) == 10
    assert ids[:3] == ["vulnerable-0@1.0.0@NPM", "vulnerable-1@1.0.0@NPM", "vulnerable-2@1.0.0@NPM"]
    with pytest.raises(ValueError):
        synthetic_components(2, vulnerable=3)


def test_perf_sweep_smoke():
    frame = run_perf_sweep([0, 20], [1, 3], repeats=1, fixed_components=20)
    assert list(frame.columns) == PERF_COLUMNS
    comp = frame[frame["sweep"] == "components"].set_index("components")
    vuln = frame[frame["sweep"] == "vulnerable"].set_index("vulnerable")

    assert np.isnan(comp.loc[0, "inclusion_proof_ms"])
    assert comp.loc[0, "proof_count"] == 0
    assert comp.loc[20, "proof_count"] == 1
    assert vuln["proof_count"].tolist() == [1, 3]
    assert (vuln["components"] == 20).all()
    assert (frame["exclusion_proof_bytes"] < 16 * 1024).all()
    assert comp.loc[20, "inclusion_proof_bytes"] < 16 * 1024
    assert comp.loc[20, "record_bytes"] > comp.loc[0, "record_bytes"]
    assert plot_panels(frame) is not None


def test_perf_sweep_rejects_bad_counts():
    with pytest.raises(ValueError):
        run_perf_sweep([-1], [])
    with pytest.raises(ValueError):
        run_perf_sweep([], [5], fixed_components=4)


def test_commit_of_a_thousand_components_is_fast():
    datastore = Datastore.from_canonical_ids(canonical_id(c) for c in synthetic_components(1000))
    start = time.perf_counter()
    commit(datastore, Seed(bytes(32)))
    assert time.perf_counter() - start < 2.0


def test_perf_envelope():
    frame = run_perf_sweep([100, 1000], [], repeats=1).set_index("components")
    large = frame.loc[1000]
    assert large["commit_ms"] < 2000
    assert large["inclusion_proof_ms"] < 100 and large["exclusion_proof_ms"] < 100
    assert large["inclusion_verify_ms"] < 50 and large["exclusion_verify_ms"] < 50
    assert large["commit_ms"] < 20 * frame.loc[100, "commit_ms"]
