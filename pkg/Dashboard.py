# ============================================
# zkSBOM
# Privacy-preserving SBOM sharing
# Dashboard (Home Page) + CLI
# ============================================

import sys
import logging

logging.basicConfig(level=logging.INFO)


# =============================================================
# STREAMLIT UI MODE
# =============================================================
def run_streamlit_ui():
    import streamlit as st

    from services.ui_service import apply_global_styles, render_section_title

    st.set_page_config(page_title="zkSBOM Dashboard", page_icon="🔐", layout="wide")

    apply_global_styles()

    st.markdown(
        """
        <style>
          .zkHero{
            border-radius: 16px;
            padding: 28px 26px;
            background: linear-gradient(135deg, #0F172A, #1E3A5F 60%, #0F766E);
          }
          .zkHeroTitle{ color:#fff; font-size: 42px; font-weight: 950; }
          .zkHeroSub{ color: rgba(255,255,255,0.86); font-size: 16.5px; margin-top: 8px; max-width: 980px; }
        </style>
        """,
        unsafe_allow_html=True,
    )

    def go(page_py: str):
        try:
            st.switch_page(page_py)
        except Exception:
            st.error(f"Navigation failed.\n\nMissing file: `{page_py}`")

    st.markdown(
        """
        <div class="zkHero">
          <div class="zkHeroTitle">zkSBOM</div>
          <div class="zkHeroSub">
            Answer "is this artifact affected by CVE-X?" with verifiable inclusion and
            non-inclusion proofs, without handing over the SBOM.
          </div>
        </div>
        """,
        unsafe_allow_html=True,
    )

    render_section_title("How it works")
    a, b = st.columns(2, gap="small")
    with a:
        with st.container(border=True):
            st.markdown("#### 🧭 Protocol")
            st.markdown(
                "1. The operator commits to the supplier's SBOM with a secret seed.\n"
                "2. The supplier recomputes the commitment and signs it into a transparency log.\n"
                "3. A consumer asks about a CVE and gets one proof per affected component-version.\n"
                "4. The consumer verifies every proof against the logged commitment."
            )
    with b:
        with st.container(border=True):
            st.markdown("#### 🗂️ Data")
            st.markdown(
                "- **SBOMs:** CycloneDX fixtures for Cargo, Go, Maven and npm in `assets/sboms`\n"
                "- **Advisories:** offline fixture `assets/advisories.json`\n"
                "- **Leakage inputs:** `assets/dependency_counts.csv`\n"
                "- **UI + CLI:** dashboard pages, menu CLI and scriptable commands"
            )

    modules = [
        ("SBOM Commitment", "🔐", "Commit a CycloneDX SBOM and run the supplier check.", "pages/Module1_SBOM_Commitment.py"),
        ("Vulnerability Proofs", "🧪", "Query CVEs and verify inclusion / non-inclusion proofs.", "pages/Module2_Vulnerability_Proofs.py"),
        ("Threat Scenarios", "🛡️", "Replay honest and adversarial runs and see where attacks are caught.", "pages/Module3_Threat_Scenarios.py"),
        ("Performance", "⏱️", "Timing and size sweeps over synthetic SBOMs.", "pages/Module4_Performance.py"),
        ("Leakage Analysis", "🕵️", "Expected components revealed by a single proof, per ecosystem.", "pages/Module5_Leakage_Analysis.py"),
    ]

    render_section_title("Modules", icon="📊")
    cols = st.columns(2, gap="small")
    for idx, (title, emoji, desc, page_py) in enumerate(modules):
        with cols[idx % 2]:
            with st.container(border=True):
                st.markdown(f"#### {emoji} {title}")
                st.markdown(desc)
                if st.button("➡️ Open module", key=f"open_{idx}", use_container_width=True):
                    go(page_py)


# =============================================================
# CLI MODE
# =============================================================
def run_cli():
    """
    Menu-driven CLI with a summary for each module.

    :return: None
    """
    from pages.Module1_SBOM_Commitment import run_sbom_commitment_cli
    from pages.Module2_Vulnerability_Proofs import run_vulnerability_proofs_cli
    from pages.Module3_Threat_Scenarios import run_threat_scenarios_cli
    from pages.Module4_Performance import run_performance_cli
    from pages.Module5_Leakage_Analysis import run_leakage_analysis_cli

    menu = {
        "1": ("SBOM Commitment", run_sbom_commitment_cli),
        "2": ("Vulnerability Proofs", run_vulnerability_proofs_cli),
        "3": ("Threat Scenarios", run_threat_scenarios_cli),
        "4": ("Performance", run_performance_cli),
        "5": ("Leakage Analysis", run_leakage_analysis_cli),
    }

    print("===========================================")
    print("              zkSBOM CLI")
    print("===========================================")

    while True:
        print()
        for key, (label, _) in menu.items():
            print(f"{key}. {label}")
        print("6. Exit\n")

        choice = input("Enter option (1–6): ").strip()

        if choice in menu:
            menu[choice][1]()
        elif choice == "6":
            print("Goodbye.")
            break
        else:
            print("❌ Invalid option.")
            input("Press ENTER to continue...")


# =============================================================
# ENTRY POINT
# =============================================================
COMMANDS = {"serve", "supplier", "verify", "leakage", "sim"}

if __name__ == "__main__":
    if len(sys.argv) > 1 and sys.argv[1].lower() == "cli":
        run_cli()
    elif len(sys.argv) > 1 and sys.argv[1] in COMMANDS:
        from services.cli_service import main

        sys.exit(main(sys.argv[1:]))
    else:
        run_streamlit_ui()
