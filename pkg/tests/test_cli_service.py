import json

import pytest

from services.cli_service import EXIT_AFFECTED, EXIT_ERROR, EXIT_OK, main, parse_range
from services.config_service import Settings
from services.log_service import TransparencyLog
from services.operator_service import OperatorService, RecordStore, proofs_body
from tests.conftest import ADVISORIES, DEPENDENCY_COUNTS, SBOM_DIR, SCENARIO_DIR


@pytest.fixture
def settings(tmp_path):
    return Settings(store_dir=tmp_path / "records", log_dir=tmp_path / "log", advisories=ADVISORIES)


@pytest.fixture
def druid_upload(tmp_path, advisories, druid_bytes):
    operator = OperatorService(RecordStore(tmp_path / "records"), advisories)
    commitment, seed = operator.upload_sbom(druid_bytes)
    return operator, commitment, seed


def _write_proofs(tmp_path, operator, commitment, cve):
    path = tmp_path / f"{cve}.json"
    path.write_text(json.dumps(proofs_body(cve, operator.query_vulnerability(commitment, cve))), encoding="utf-8")
    return path


def test_leakage_csv(settings, capsys):
    assert main(["leakage", "--input", str(DEPENDENCY_COUNTS), "--format", "csv"], settings) == EXIT_OK
    out = capsys.readouterr().out
    assert "Cargo,120.10,–,120.10,1.21" in out
    assert "npm,13.78,0.24,17.29,0.42" in out


def test_leakage_missing_input(settings, tmp_path):
    assert main(["leakage", "--input", str(tmp_path / "nope.csv")], settings) == EXIT_ERROR


def test_verify_proofs_exit_codes(tmp_path, settings, druid_upload, capsys):
    operator, commitment, _ = druid_upload
    log4shell = _write_proofs(tmp_path, operator, commitment, "CVE-2021-44228")
    react = _write_proofs(tmp_path, operator, commitment, "CVE-2025-55182")

    base = ["verify", "proofs", "--commitment", commitment.hex()]
    assert main(base + ["--cve", "CVE-2021-44228", "--proofs", str(log4shell)], settings) == EXIT_AFFECTED
    assert "Affected:" in capsys.readouterr().out
    assert main(base + ["--cve", "CVE-2025-55182", "--proofs", str(react)], settings) == EXIT_OK
    assert main(base + ["--cve", "CVE-2021-44228", "--proofs", str(react)], settings) == EXIT_ERROR

    body = json.loads(log4shell.read_text(encoding="utf-8"))
    body["proofs"] = body["proofs"][1:]
    log4shell.write_text(json.dumps(body), encoding="utf-8")
    assert main(base + ["--cve", "CVE-2021-44228", "--proofs", str(log4shell)], settings) == EXIT_ERROR


def test_supplier_check(tmp_path, settings, druid_upload):
    _, commitment, seed = druid_upload
    sbom = str(SBOM_DIR / "druid.cdx.json")
    args = ["supplier", "check", "--sbom", sbom, "--commitment", commitment.hex()]
    assert main(args + ["--seed", seed.hex()], settings) == EXIT_OK
    assert main(args + ["--seed", "00" * 32], settings) == EXIT_ERROR


def test_publish_then_verify_publication(tmp_path, settings, druid_upload):
    _, commitment, _ = druid_upload
    keys = tmp_path / "keys"
    assert main(["supplier", "keygen", "--out-dir", str(keys)], settings) == EXIT_OK
    assert main(["supplier", "keygen", "--out-dir", str(tmp_path / "other")], settings) == EXIT_OK

    artifact = tmp_path / "druid.tar.gz"
    artifact.write_bytes(b"druid release")
    publish = ["supplier", "publish", "--artifact", str(artifact), "--commitment", commitment.hex()]
    assert main(publish + ["--key", str(keys / "supplier.key")], settings) == EXIT_OK
    assert main(publish + ["--key", str(keys / "supplier.key")], settings) == EXIT_ERROR

    digest = TransparencyLog(settings.log_dir).digest.hex()
    verify = ["verify", "publication", "--artifact", str(artifact), "--digest", digest]
    assert main(verify + ["--pubkey", str(keys / "supplier.pub")], settings) == EXIT_OK
    assert main(verify + ["--pubkey", str(tmp_path / "other" / "supplier.pub")], settings) == EXIT_ERROR


def test_sim_run_scenario(settings, capsys):
    assert main(["sim", "run", str(SCENARIO_DIR / "tamper-operator.json")], settings) == EXIT_OK
    assert "Detected: True at (2) check commitment" in capsys.readouterr().out


def test_sim_perf_writes_csv(tmp_path, settings):
    out = tmp_path / "perf.csv"
    args = ["sim", "perf", "--components", "0..10", "--step", "10", "--vulnerable", "1,2", "--fixed-components", "10"]
    assert main(args + ["--repeats", "1", "--out", str(out)], settings) == EXIT_OK
    assert len(out.read_text(encoding="utf-8").splitlines()) == 5


@pytest.mark.parametrize(
    "text, step, expected",
    (("0..1000", 250, [0, 250, 500, 750, 1000]), ("5", 1, [5]), ("1,10,50", 1, [1, 10, 50]), ("1..50", 7, [1, 8, 15, 22, 29, 36, 43, 50])),
)
def test_parse_range(text, step, expected):
    assert parse_range(text, step) == expected


@pytest.mark.parametrize("text, step", (("10..1", 1), ("0..10", 0), ("a..b", 1)))
def test_parse_range_rejects(text, step):
    with pytest.raises(ValueError):
        parse_range(text, step)
