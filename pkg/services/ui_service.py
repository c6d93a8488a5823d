# ============================================================
# ui_service.py – Shared Streamlit theme and widgets
# ============================================================

import streamlit as st

# ============================================================
# COLOR PALETTE
# ============================================================

PRIMARY_SLATE = "#1E3A5F"
ACCENT_TEAL = "#14B8A6"
BACKGROUND = "#F4F6F8"
TEXT_GREY = "#4B5563"

CARD_BG = "#FFFFFF"
CARD_BORDER = "#E5E7EB"

VERDICT_COLORS = {
    "Affected": "#DC2626",
    "NotAffected": "#16A34A",
    "Invalid": "#D97706",
}


# ============================================================
# GLOBAL STYLE INJECTION
# ============================================================

def apply_global_styles():
    st.markdown(
        f"""
<style>
.stApp {{
    background-color: {BACKGROUND} !important;
}}

.block-container {{
    padding: 2.5rem 3rem 3rem 3rem;
}}

h1, h2, h3, h4, h5 {{
    color: {PRIMARY_SLATE} !important;
    font-weight: 800 !important;
}}

p, li {{
    color: {TEXT_GREY} !important;
    font-size: 1.05rem;
}}

.zk-card {{
    background: {CARD_BG};
    padding: 1.2rem 1.4rem;
    border-radius: 14px;
    border: 1px solid {CARD_BORDER};
    box-shadow: 0 6px 18px rgba(0,0,0,0.06);
}}

.zk-card-title {{
    color: {PRIMARY_SLATE};
    font-size: 1.6rem;
    font-weight: 800;
    word-break: break-all;
}}

.zk-card-desc {{
    color: {TEXT_GREY};
    font-size: 0.95rem;
}}

.zk-verdict {{
    display: inline-block;
    padding: 4px 12px;
    border-radius: 999px;
    color: white;
    font-weight: 800;
}}

.stButton > button {{
    background-color: {PRIMARY_SLATE};
    color: white;
    border-radius: 8px;
    padding: 0.6rem 1.2rem;
    font-weight: 600;
    border: none;
}}

.stButton > button:hover {{
    background-color: {ACCENT_TEAL};
}}
</style>
        """,
        unsafe_allow_html=True,
    )


# ============================================================
# UI HELPERS
# ============================================================

def render_section_title(title: str, icon: str = "📌"):
    st.markdown(f"<h2>{icon} {title}</h2>", unsafe_allow_html=True)
    st.markdown("---")


def render_kpi_cards(metrics: dict):
    cols = st.columns(len(metrics))
    for idx, (label, value) in enumerate(metrics.items()):
        with cols[idx]:
            st.markdown(
                f"""
<div class="zk-card">
    <div class="zk-card-title">{value}</div>
    <div class="zk-card-desc">{label}</div>
</div>
                """,
                unsafe_allow_html=True,
            )


def render_verdict(cve_id: str, verdict) -> None:
    color = VERDICT_COLORS.get(verdict.kind.value, TEXT_GREY)
    st.markdown(
        f'<b>{cve_id}</b> &nbsp; <span class="zk-verdict" style="background:{color}">{verdict.kind.value}</span>'
        f'<div class="zk-card-desc">{verdict.detail}</div>',
        unsafe_allow_html=True,
    )


def render_back_to_home():
    st.page_link("Dashboard.py", label="Back to Dashboard", icon="🏠")
