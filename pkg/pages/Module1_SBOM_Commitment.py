# ============================================================
# Module: SBOM Commitment
#
# Description:
# The operator turns a CycloneDX SBOM into a datastore of
# (H(id), id) entries and commits to it with a fresh seed. The
# supplier recomputes the commitment from its own SBOM to make sure
# the operator committed to the untampered document.
# ============================================================

import tempfile

import pandas as pd

from services.core_model import ZkSbomError


def _commit_bytes(sbom_bytes: bytes) -> dict:
    """Upload to a throwaway operator and run the supplier check."""
    from services.client_service import supplier_check_commitment
    from services.data_service import load_fixture_advisories
    from services.operator_service import OperatorService, RecordStore

    with tempfile.TemporaryDirectory(prefix="zksbom-page-") as workdir:
        store = RecordStore(workdir)
        operator = OperatorService(store, load_fixture_advisories())
        commitment, seed = operator.upload_sbom(sbom_bytes)
        record = store.load_record(commitment)
        return {
            "commitment": commitment,
            "seed": seed,
            "components": len(record.datastore),
            "record_bytes": store.size_of(commitment),
            "supplier_ok": supplier_check_commitment(sbom_bytes, seed, commitment),
        }


def run_streamlit():
    import streamlit as st

    from services.data_service import list_sboms, sbom_frame
    from services.sbom_service import parse_cyclonedx
    from services.ui_service import apply_global_styles, render_back_to_home, render_kpi_cards, render_section_title

    apply_global_styles()
    render_back_to_home()

    st.title("🔐 SBOM Commitment")
    st.caption("Step (1) commit and step (2) supplier check.")

    fixtures = list_sboms()
    source = st.radio("SBOM source", ["Fixture", "Upload"], horizontal=True)
    if source == "Fixture":
        name = st.selectbox("Fixture SBOM", list(fixtures))
        sbom_bytes = fixtures[name].read_bytes()
    else:
        uploaded = st.file_uploader("CycloneDX JSON", type=["json"])
        if uploaded is None:
            st.info("Upload a CycloneDX 1.4–1.6 JSON document to continue.")
            return
        sbom_bytes = uploaded.getvalue()

    try:
        sbom = parse_cyclonedx(sbom_bytes)
        result = _commit_bytes(sbom_bytes)
    except ZkSbomError as exc:
        st.error(f"Cannot commit this SBOM: {exc}")
        return

    render_kpi_cards(
        {
            "Components committed": result["components"],
            "Skipped components": sbom.skipped_count,
            "Record file (bytes)": result["record_bytes"],
            "Supplier check": "✔ match" if result["supplier_ok"] else "❌ mismatch",
        }
    )

    render_section_title("Commitment", "🧾")
    st.code(result["commitment"].hex(), language=None)
    with st.expander("Seed (returned to the supplier only)"):
        st.code(result["seed"].hex(), language=None)

    render_section_title("Committed components", "📦")
    frame = sbom_frame(sbom)
    st.dataframe(frame, use_container_width=True, hide_index=True)
    if not frame.empty:
        st.bar_chart(frame["ecosystem"].value_counts())


# ============================================================
# CLI VERSION
# ============================================================
def run_sbom_commitment_cli():
    """Commit every fixture SBOM and print a summary."""
    from services.data_service import list_sboms

    print("\n=======================================")
    print("  SBOM COMMITMENT (CLI)                ")
    print("=======================================\n")

    rows = []
    for name, path in list_sboms().items():
        try:
            result = _commit_bytes(path.read_bytes())
        except ZkSbomError as exc:
            print(f"❌ {name}: {exc}")
            continue
        rows.append(
            {
                "sbom": name,
                "components": result["components"],
                "commitment": result["commitment"].hex()[:16] + "…",
                "record_bytes": result["record_bytes"],
                "supplier_check": "ok" if result["supplier_ok"] else "MISMATCH",
            }
        )
    print(pd.DataFrame(rows).to_string(index=False))

    print("\n✔ SBOM Commitment CLI completed.")
    input("\nPress ENTER to return to main menu...")


def main(mode="streamlit"):
    if mode == "cli":
        run_sbom_commitment_cli()
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
