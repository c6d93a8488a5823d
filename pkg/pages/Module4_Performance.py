# ============================================================
# Module: Performance
#
# Description:
# Synthetic SBOMs of growing size: commitment time, proof generation
# and verification time, record file and proof sizes. A second sweep
# keeps the SBOM size fixed and varies the number of vulnerable
# components, which sets the number of proofs per query.
# ============================================================

import numpy as np


def run_streamlit():
    import streamlit as st

    from services.harness_service import plot_panels, run_perf_sweep
    from services.ui_service import apply_global_styles, render_back_to_home, render_kpi_cards, render_section_title

    apply_global_styles()
    render_back_to_home()

    st.title("⏱️ Performance")

    c1, c2, c3 = st.columns(3)
    with c1:
        max_components = st.slider("Max components", 100, 1000, 500, step=100)
    with c2:
        step = st.slider("Step", 50, 250, 100, step=50)
    with c3:
        repeats = st.slider("Repeats (median)", 1, 5, 1)

    max_vulnerable = st.slider("Max vulnerable components (fixed-size sweep)", 1, 50, 20)

    if not st.button("▶️ Run sweep"):
        st.info("Pick the sweep size and press Run.")
        return

    with st.spinner("Measuring..."):
        frame = run_perf_sweep(
            list(range(0, max_components + 1, step)),
            sorted({int(v) for v in np.linspace(1, max_vulnerable, num=5)}),
            repeats=repeats,
            fixed_components=max_components,
        )

    largest = frame[frame["sweep"] == "components"].iloc[-1]
    render_kpi_cards(
        {
            f"Commit @ {int(largest['components'])} (ms)": f"{largest['commit_ms']:.1f}",
            "Inclusion proof (ms)": f"{largest['inclusion_proof_ms']:.2f}",
            "Verification (ms)": f"{largest['inclusion_verify_ms']:.2f}",
            "Proof size (KB)": f"{largest['inclusion_proof_bytes'] / 1024:.2f}",
        }
    )

    render_section_title("Panels", "📈")
    st.pyplot(plot_panels(frame), clear_figure=True)

    render_section_title("Raw measurements", "🗂️")
    st.dataframe(frame, use_container_width=True, hide_index=True)
    st.download_button("⬇️ Download CSV", frame.to_csv(index=False), file_name="perf.csv", mime="text/csv")


# ============================================================
# CLI VERSION
# ============================================================
def run_performance_cli():
    """Small sweep with fixed CLI assumptions."""
    from services.harness_service import run_perf_sweep

    print("\n=======================================")
    print("  PERFORMANCE (CLI)                    ")
    print("=======================================\n")

    frame = run_perf_sweep([0, 100, 200], [1, 5, 10], repeats=1, fixed_components=200)
    cols = ["sweep", "components", "vulnerable", "proof_count", "commit_ms", "inclusion_proof_ms", "inclusion_verify_ms"]
    print(frame[cols].round(3).to_string(index=False))

    print("\n✔ Performance CLI completed.")
    input("\nPress ENTER to return to main menu...")


def main(mode="streamlit"):
    if mode == "cli":
        run_performance_cli()
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
