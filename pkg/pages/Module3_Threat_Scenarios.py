# ============================================================
# Module: Threat Scenarios
#
# Description:
# Replays the bundled scenarios, honest and adversarial. Each
# adversary attacks one protocol step: a tampering operator, a
# consumer forging proofs, a supplier hiding a component after the
# fact, repudiating its publication or equivocating with a second
# commitment. The table shows where each attack is caught.
# ============================================================

import pandas as pd


def scenario_summary() -> pd.DataFrame:
    from services.data_service import list_scenarios
    from services.harness_service import run_scenario

    rows = []
    for scenario in list_scenarios():
        transcript = run_scenario(scenario)
        rows.append(
            {
                "scenario": scenario.name,
                "adversary": scenario.adversary.value,
                "detected": transcript.detected if scenario.adversary.value != "None" else None,
                "detected_at": transcript.detected_at or "",
                "verdicts": ", ".join(f"{c}={v.kind.value}" for c, v in transcript.verdicts.items()),
            }
        )
    return pd.DataFrame(rows, columns=["scenario", "adversary", "detected", "detected_at", "verdicts"])


def run_streamlit():
    import streamlit as st

    from services.data_service import list_scenarios
    from services.harness_service import run_scenario
    from services.ui_service import apply_global_styles, render_back_to_home, render_kpi_cards, render_section_title

    apply_global_styles()
    render_back_to_home()

    st.title("🛡️ Threat Scenarios")
    st.caption("Every attack should end in a detected state, never in a false verdict.")

    summary = scenario_summary()
    attacks = summary[summary["adversary"] != "None"]
    render_kpi_cards(
        {
            "Scenarios": len(summary),
            "Attacks": len(attacks),
            "Detected": int(attacks["detected"].sum()) if not attacks.empty else 0,
        }
    )

    render_section_title("Overview", "📋")
    st.dataframe(summary, use_container_width=True, hide_index=True)

    render_section_title("Transcript", "🧭")
    scenarios = {s.name: s for s in list_scenarios()}
    name = st.selectbox("Scenario", list(scenarios))
    st.dataframe(run_scenario(scenarios[name]).to_frame(), use_container_width=True, hide_index=True)


# ============================================================
# CLI VERSION
# ============================================================
def run_threat_scenarios_cli():
    print("\n=======================================")
    print("  THREAT SCENARIOS (CLI)               ")
    print("=======================================\n")

    summary = scenario_summary()
    print(summary.to_string(index=False))

    attacks = summary[summary["adversary"] != "None"]
    missed = attacks[~attacks["detected"].astype(bool)]
    if missed.empty:
        print(f"\n✔ All {len(attacks)} attacks detected.")
    else:
        print(f"\n❌ Undetected: {', '.join(missed['scenario'])}")
    input("\nPress ENTER to return to main menu...")


def main(mode="streamlit"):
    if mode == "cli":
        run_threat_scenarios_cli()
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
