# ============================================================
# cli_service.py – Scriptable commands behind `python Dashboard.py <command>`
#
#   serve     run the operator HTTP API
#   supplier  keygen / check / publish (supplier side)
#   verify    publication / proofs (consumer side)
#   leakage   expected leakage table from dependency counts
#   sim       run a scenario or a performance sweep
#
# Exit codes: 0 success (NotAffected / valid), 1 Affected,
# 2 Invalid verdict or error.
# ============================================================

from __future__ import annotations

import argparse
import logging
from pathlib import Path
from typing import Optional

from services.config_service import Settings, configure_logging, load_settings
from services.core_model import VerdictKind, ZkSbomError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_AFFECTED = 1
EXIT_ERROR = 2


def _banner(title: str) -> None:
    print("\n=======================================")
    print(f"  {title}")
    print("=======================================\n")


# ============================================================
# SERVE
# ============================================================
def serve_main(args: argparse.Namespace, settings: Settings) -> int:
    from tornado.ioloop import IOLoop

    from services.advisory_service import load_advisories
    from services.operator_service import OperatorService, RecordStore, make_app

    listen = args.listen or settings.listen
    host, _, port = listen.rpartition(":")
    store = RecordStore(args.store_dir or settings.store_dir)
    advisories = load_advisories(args.advisories or settings.advisories)

    app = make_app(OperatorService(store, advisories))
    app.listen(int(port), address=host or "127.0.0.1")
    logger.info("Operator listening on %s (records in %s, %d advisories)", listen, store.directory, len(advisories))
    IOLoop.current().start()
    return EXIT_OK


# ============================================================
# SUPPLIER
# ============================================================
def supplier_main(args: argparse.Namespace, settings: Settings) -> int:
    import secrets

    from services.client_service import make_entry, parse_commitment, supplier_check_commitment
    from services.crypto_service import keygen, load_seed_file, write_key_files
    from services.log_service import TransparencyLog
    from services.zks_service import Seed

    if args.action == "keygen":
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        private_path, public_path = out_dir / "supplier.key", out_dir / "supplier.pub"
        write_key_files(keygen(secrets.token_bytes(32)), private_path, public_path)
        print(f"✔ Private key : {private_path}")
        print(f"✔ Public key  : {public_path}")
        return EXIT_OK

    commitment = parse_commitment(args.commitment)
    if args.action == "check":
        ok = supplier_check_commitment(Path(args.sbom).read_bytes(), Seed.from_hex(args.seed.strip()), commitment)
        print("✔ Commitment matches the SBOM" if ok else "❌ Commitment does NOT match the SBOM")
        return EXIT_OK if ok else EXIT_ERROR

    log = TransparencyLog(args.log or settings.log_dir)
    private_key = load_seed_file(Path(args.key))
    digest = log.append(make_entry(Path(args.artifact).read_bytes(), commitment, private_key))
    print(f"✔ Published {commitment.hex()} (log digest {digest.hex()})")
    return EXIT_OK


# ============================================================
# VERIFY
# ============================================================
def verify_main(args: argparse.Namespace, settings: Settings) -> int:
    from services.advisory_service import load_advisories
    from services.client_service import (
        consumer_check_publication,
        consumer_verify_proofs,
        load_proofs_file,
        parse_commitment,
    )
    from services.core_model import Digest
    from services.crypto_service import load_public_key_file
    from services.log_service import TransparencyLog

    if args.action == "publication":
        log = TransparencyLog(args.log or settings.log_dir)
        ok, commitment = consumer_check_publication(
            Path(args.artifact).read_bytes(),
            Digest.from_hex(args.digest.strip()),
            log.state,
            load_public_key_file(Path(args.pubkey)),
        )
        if not ok or commitment is None:
            print("❌ Publication INVALID")
            return EXIT_ERROR
        print(f"✔ Publication valid; commitment {commitment.hex()}")
        return EXIT_OK

    commitment = parse_commitment(args.commitment)
    cve, proofs = load_proofs_file(args.proofs)
    if cve != args.cve:
        print(f"❌ Invalid: response is for {cve}, not {args.cve}")
        return EXIT_ERROR
    verdict = consumer_verify_proofs(commitment, args.cve, proofs, load_advisories(args.advisories or settings.advisories))
    print(f"{args.cve}: {verdict}")
    if verdict.kind is VerdictKind.AFFECTED:
        return EXIT_AFFECTED
    if verdict.kind is VerdictKind.NOT_AFFECTED:
        return EXIT_OK
    return EXIT_ERROR


# ============================================================
# LEAKAGE
# ============================================================
def leakage_main(args: argparse.Namespace, settings: Settings) -> int:
    from services.leakage_service import aggregate_stats, emit_table, load_dependency_counts

    p_ac = settings.p_ac if args.p_ac is None else args.p_ac
    stats = aggregate_stats(load_dependency_counts(args.input), p_ac=p_ac)
    print(emit_table(stats, fmt=args.format), end="")
    return EXIT_OK


# ============================================================
# SIM
# ============================================================
def parse_range(text: str, step: int) -> list[int]:
    """`0..1000` with step 100 -> [0, 100, ..., 1000]; `5` -> [5]; `1,10,50` -> list."""
    if ".." in text:
        lo, hi = (int(x) for x in text.split("..", 1))
        if step <= 0 or hi < lo:
            raise ValueError(f"bad range {text!r} with step {step}")
        return list(range(lo, hi + 1, step))
    return [int(x) for x in text.split(",") if x.strip()]


def sim_main(args: argparse.Namespace, settings: Settings) -> int:
    from services.harness_service import load_scenario, plot_panels, run_perf_sweep, run_scenario

    if args.action == "run":
        scenario = load_scenario(args.scenario)
        transcript = run_scenario(scenario)
        _banner(f"SCENARIO: {scenario.name} ({scenario.adversary.value})")
        for step in transcript.steps:
            print(f" - {step.actor:<9} {step.step:<24} {step.outcome}")
        for cve, verdict in transcript.verdicts.items():
            print(f"\n{cve}: {verdict}")
        if transcript.adversary.value != "None":
            print(f"\nDetected: {transcript.detected} at {transcript.detected_at}")
            return EXIT_OK if transcript.detected else EXIT_ERROR
        return EXIT_OK

    frame = run_perf_sweep(
        parse_range(args.components, args.step),
        parse_range(args.vulnerable, args.vulnerable_step),
        repeats=args.repeats,
        fixed_components=args.fixed_components,
    )
    if args.out:
        frame.to_csv(args.out, index=False)
        print(f"✔ Wrote {len(frame)} rows to {args.out}")
    else:
        print(frame.to_string(index=False))
    if args.plot:
        plot_panels(frame).savefig(args.plot, dpi=120)
        print(f"✔ Wrote panels to {args.plot}")
    return EXIT_OK


# ============================================================
# PARSER
# ============================================================
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zksbom", description="Privacy-preserving SBOM sharing")
    commands = parser.add_subparsers(dest="command", required=True)

    serve = commands.add_parser("serve", help="run the operator HTTP API")
    serve.add_argument("--listen")
    serve.add_argument("--store-dir")
    serve.add_argument("--advisories")

    supplier = commands.add_parser("supplier", help="supplier-side operations")
    s_actions = supplier.add_subparsers(dest="action", required=True)
    keygen = s_actions.add_parser("keygen")
    keygen.add_argument("--out-dir", required=True)
    check = s_actions.add_parser("check")
    check.add_argument("--sbom", required=True)
    check.add_argument("--seed", required=True)
    check.add_argument("--commitment", required=True)
    publish = s_actions.add_parser("publish")
    publish.add_argument("--artifact", required=True)
    publish.add_argument("--commitment", required=True)
    publish.add_argument("--key", required=True)
    publish.add_argument("--log")

    verify = commands.add_parser("verify", help="consumer-side verification")
    v_actions = verify.add_subparsers(dest="action", required=True)
    publication = v_actions.add_parser("publication")
    publication.add_argument("--artifact", required=True)
    publication.add_argument("--log")
    publication.add_argument("--digest", required=True)
    publication.add_argument("--pubkey", required=True)
    proofs = v_actions.add_parser("proofs")
    proofs.add_argument("--commitment", required=True)
    proofs.add_argument("--cve", required=True)
    proofs.add_argument("--proofs", required=True)
    proofs.add_argument("--advisories")

    leakage = commands.add_parser("leakage", help="expected leakage table")
    leakage.add_argument("--input", required=True)
    leakage.add_argument("--p-ac", type=float, default=None)
    leakage.add_argument("--format", choices=["csv", "table"], default="table")

    sim = commands.add_parser("sim", help="scenarios and performance sweeps")
    sim_actions = sim.add_subparsers(dest="action", required=True)
    run = sim_actions.add_parser("run")
    run.add_argument("scenario")
    perf = sim_actions.add_parser("perf")
    perf.add_argument("--components", default="0..1000")
    perf.add_argument("--step", type=int, default=100)
    perf.add_argument("--vulnerable", default="1..50")
    perf.add_argument("--vulnerable-step", type=int, default=7)
    perf.add_argument("--fixed-components", type=int, default=1000)
    perf.add_argument("--repeats", type=int, default=3)
    perf.add_argument("--out")
    perf.add_argument("--plot")
    return parser


HANDLERS = {
    "serve": serve_main,
    "supplier": supplier_main,
    "verify": verify_main,
    "leakage": leakage_main,
    "sim": sim_main,
}


def main(argv: Optional[list[str]] = None, settings: Optional[Settings] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = settings or load_settings()
    configure_logging(settings)
    try:
        return HANDLERS[args.command](args, settings)
    except (ZkSbomError, OSError, ValueError) as exc:
        logger.error("%s failed: %s", args.command, exc)
        print(f"❌ ERROR: {exc}")
        return EXIT_ERROR
