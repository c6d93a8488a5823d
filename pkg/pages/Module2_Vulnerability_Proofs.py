# ============================================================
# Module: Vulnerability Proofs
#
# Description:
# Runs the whole protocol for one fixture SBOM and a set of CVEs:
# commitment, publication in the transparency log, proof generation
# by the operator and verification by the consumer. Each affected
# component-version gets exactly one inclusion or non-inclusion proof.
# ============================================================

import json

import pandas as pd

from services.operator_service import proofs_body
from services.zks_service import ZksProof


def proofs_frame(proofs) -> pd.DataFrame:
    rows = []
    for p in proofs:
        proof = ZksProof.from_hex(p.proof_hex)
        rows.append(
            {
                "component": p.component.canonical,
                "present": p.present,
                "kind": proof.kind.name.replace("_", "-").lower(),
                "siblings": len(proof.siblings),
                "bytes": len(proof.to_bytes()),
            }
        )
    return pd.DataFrame(rows, columns=["component", "present", "kind", "siblings", "bytes"])


def run_streamlit():
    import streamlit as st

    from services.data_service import list_sboms, load_fixture_advisories
    from services.harness_service import ground_truth, run_protocol
    from services.ui_service import (
        apply_global_styles,
        render_back_to_home,
        render_kpi_cards,
        render_section_title,
        render_verdict,
    )

    apply_global_styles()
    render_back_to_home()

    st.title("🧪 Vulnerability Proofs")
    st.caption("Steps (3) to (7): publish, query and verify.")

    db = load_fixture_advisories()
    fixtures = list_sboms()
    c1, c2 = st.columns(2)
    with c1:
        name = st.selectbox("Fixture SBOM", list(fixtures))
    with c2:
        cves = st.multiselect("Vulnerabilities", db.ids(), default=["CVE-2021-44228", "CVE-2025-55182"])
    if not cves:
        st.info("Select at least one vulnerability.")
        return

    sbom_bytes = fixtures[name].read_bytes()
    transcript = run_protocol(sbom_bytes, db, cves, name=name)

    render_kpi_cards(
        {
            "Proofs generated": sum(len(p) for p in transcript.responses.values()),
            "Affected": sum(v.kind.value == "Affected" for v in transcript.verdicts.values()),
            "Not affected": sum(v.kind.value == "NotAffected" for v in transcript.verdicts.values()),
        }
    )

    render_section_title("Verdicts", "⚖️")
    for cve_id, verdict in transcript.verdicts.items():
        render_verdict(cve_id, verdict)
        if verdict.kind != ground_truth(sbom_bytes, db, cve_id):
            st.error("Verdict disagrees with the plain set intersection.")

    render_section_title("Proofs", "🧾")
    if transcript.commitment is not None:
        st.code(f"commitment {transcript.commitment.hex()}", language=None)
    for cve_id, proofs in transcript.responses.items():
        st.markdown(f"#### {cve_id}")
        st.dataframe(proofs_frame(proofs), use_container_width=True, hide_index=True)
        st.download_button(
            f"⬇️ Download {cve_id} response",
            json.dumps(proofs_body(cve_id, proofs), indent=2),
            file_name=f"{name}-{cve_id}.json",
            mime="application/json",
            key=f"dl-{cve_id}",
        )

    render_section_title("Protocol trace", "🧭")
    st.dataframe(transcript.to_frame(), use_container_width=True, hide_index=True)


# ============================================================
# CLI VERSION
# ============================================================
def run_vulnerability_proofs_cli():
    """Druid-style run: Log4Shell is included, the React advisory is not."""
    from services.data_service import list_sboms, load_fixture_advisories
    from services.harness_service import run_protocol

    print("\n=======================================")
    print("  VULNERABILITY PROOFS (CLI)           ")
    print("=======================================\n")

    db = load_fixture_advisories()
    cves = ["CVE-2021-44228", "CVE-2025-55182"]
    transcript = run_protocol(list_sboms()["druid"].read_bytes(), db, cves, name="druid")

    for step in transcript.steps:
        print(f" - {step.actor:<9} {step.step:<24} {step.outcome}")

    print("\n📊 Verdicts")
    for cve_id, verdict in transcript.verdicts.items():
        frame = proofs_frame(transcript.responses[cve_id])
        print(f" - {cve_id:<16}: {verdict.kind.value} ({len(frame)} proofs, {int(frame['bytes'].sum())} bytes)")

    print("\n✔ Vulnerability Proofs CLI completed.")
    input("\nPress ENTER to return to main menu...")


def main(mode="streamlit"):
    if mode == "cli":
        run_vulnerability_proofs_cli()
    else:
        run_streamlit()


# ============================================================
# AUTO-RUN STREAMLIT WHEN OPENED AS PAGE
# ============================================================
try:
    import streamlit as st
    if st.runtime.exists():
        run_streamlit()
except Exception:
    pass
