# ============================================================
# Module: Leakage Analysis
#
# Description:
# How many additional components an observer can infer from a
# single inclusion or non-inclusion proof, using public ecosystem
# metadata (transitive and peer dependency counts).
# ============================================================

import pandas as pd


def leakage_chart(stats):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    from services.leakage_service import DISPLAY_NAMES, exclusion_leakage, inclusion_leakage

    names = [DISPLAY_NAMES[e] for e in stats]
    inclusion = [inclusion_leakage(s) for s in stats.values()]
    exclusion = [exclusion_leakage(s) for s in stats.values()]

    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    axes[0].bar(names, inclusion, color="#1E3A5F")
    axes[0].set_title("Inclusion proof")
    axes[0].set_ylabel("Expected components revealed")
    axes[1].bar(names, exclusion, color="#14B8A6")
    axes[1].set_title("Non-inclusion proof")
    fig.tight_layout()
    return fig


def run_streamlit():
    import streamlit as st

    from services.config_service import DEFAULT_P_AC
    from services.data_service import load_fixture_counts
    from services.leakage_service import aggregate_stats, emit_table, leakage_frame, load_dependency_counts
    from services.ui_service import apply_global_styles, render_back_to_home, render_section_title

    apply_global_styles()
    render_back_to_home()

    st.title("🕵️ Leakage Analysis")

    uploaded = st.file_uploader("Dependency counts CSV (optional)", type=["csv"])
    records = load_dependency_counts(uploaded) if uploaded is not None else load_fixture_counts()
    p_ac = st.slider("P[unique ancestor]", 0.0, 0.2, DEFAULT_P_AC, step=0.005, format="%.3f")

    stats = aggregate_stats(records, p_ac=p_ac)

    render_section_title("Expected leakage", "📋")
    st.dataframe(leakage_frame(stats), use_container_width=True, hide_index=True)
    st.pyplot(leakage_chart(stats), clear_figure=True)
    st.download_button("⬇️ Download CSV", emit_table(stats, fmt="csv"), file_name="leakage.csv", mime="text/csv")

    with st.expander("Input records"):
        st.dataframe(pd.DataFrame([r.__dict__ for r in records]), use_container_width=True, hide_index=True)


# ============================================================
# CLI VERSION
# ============================================================
def run_leakage_analysis_cli():
    from services.data_service import load_fixture_counts
    from services.leakage_service import aggregate_stats, emit_table

    print("\n=======================================")
    print("  LEAKAGE ANALYSIS (CLI)               ")
    print("=======================================\n")

    records = load_fixture_counts()
    print(f"Records loaded : {len(records)}")
    print("P[AC]          : 0.01\n")
    print(emit_table(aggregate_stats(records, p_ac=0.01)))

    print("✔ Leakage Analysis CLI completed.")
    input("\nPress ENTER to return to main menu...")


def main(mode="streamlit"):
    if mode == "cli":
        run_leakage_analysis_cli()
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
