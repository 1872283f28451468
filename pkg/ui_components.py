"""
ui_components.py
Reusable Streamlit components for the verification dashboard
"""

import streamlit as st

from utils import format_duration, get_status_color, get_status_emoji, get_status_label

CARD_COLORS = {
    "blue": ("#1E3A8A", "#3B82F6", "#DBEAFE"),
    "green": ("#064E3B", "#10B981", "#D1FAE5"),
    "orange": ("#78350F", "#F59E0B", "#FEF3C7"),
    "red": ("#7F1D1D", "#EF4444", "#FEE2E2"),
    "gray": ("#374151", "#6B7280", "#F9FAFB"),
}

# one stylesheet for every component; injected by render_header
STYLESHEET = """
<style>
.cp-header {text-align: center; padding: 2rem 0 2.5rem 0;}
.cp-header h1 {font-size: 2.4rem; font-weight: 700; margin-bottom: 0.4rem;
    background: linear-gradient(135deg, #818CF8 0%, #A78BFA 100%);
    -webkit-background-clip: text; -webkit-text-fill-color: transparent;}
.cp-muted {color: #9CA3AF; font-size: 0.875rem; margin: 0;}
.cp-section {display: flex; align-items: center; gap: 0.75rem;
    padding: 1rem 0; border-bottom: 2px solid #374151; margin-bottom: 1.5rem;}
.cp-section h2 {margin: 0; font-size: 1.5rem; font-weight: 600; color: #F9FAFB;}
.cp-card {display: flex; gap: 0.75rem; border-radius: 0.75rem; padding: 1rem 1.25rem; margin: 1rem 0;}
.cp-card p {margin: 0; font-size: 0.875rem; line-height: 1.5;}
.cp-card .cp-title {font-weight: 600; margin-bottom: 0.25rem;}
.cp-stat {background: #1F2937; border: 1px solid #374151; border-radius: 0.75rem; padding: 1.25rem;
    display: flex; justify-content: space-between;}
.cp-stat .cp-label {font-size: 0.75rem; font-weight: 600; color: #9CA3AF; text-transform: uppercase;}
.cp-stat .cp-value {font-size: 1.8rem; font-weight: 700; color: #818CF8; margin: 0;}
.cp-empty {text-align: center; padding: 3rem 2rem; background: #374151; border-radius: 0.75rem;
    border: 2px dashed #4B5563;}
.cp-empty h3 {font-size: 1.125rem; color: #F9FAFB; margin: 0.75rem 0 0.5rem 0;}
</style>
"""


def _html(markup: str):
    st.markdown(markup, unsafe_allow_html=True)


def render_header():
    """Page title; also injects the stylesheet the other components rely on."""
    _html(STYLESHEET)
    _html("<div class='cp-header'><h1>🎨 Coloured Partitions</h1>"
          "<p class='cp-muted'>Exact enumeration and identity checks</p></div>")


def render_section_header(icon, title, subtitle=None):
    subtitle_html = f"<p class='cp-muted'>{subtitle}</p>" if subtitle else ""
    _html(f"<div class='cp-section'><span style='font-size: 1.5rem;'>{icon}</span>"
          f"<div><h2>{title}</h2>{subtitle_html}</div></div>")


def render_info_card(title, content, icon="ℹ️", color="blue"):
    """
    Coloured card with a title line and a body.

    Args:
        title: Bold first line
        content: Body text (may contain <br/>)
        icon: Emoji shown on the left
        color: Key of CARD_COLORS; unknown keys fall back to blue
    """
    bg, border, text = CARD_COLORS.get(color, CARD_COLORS["blue"])
    _html(f"<div class='cp-card' style='background: {bg}; border-left: 4px solid {border}; color: {text};'>"
          f"<span style='font-size: 1.25rem;'>{icon}</span>"
          f"<div><p class='cp-title'>{title}</p><p>{content}</p></div></div>")


def render_stat_card(label, value, icon):
    _html(f"<div class='cp-stat'><div><p class='cp-label'>{label}</p><p class='cp-value'>{value}</p></div>"
          f"<span style='font-size: 2rem; opacity: 0.5;'>{icon}</span></div>")


def render_report_card(report):
    """Summary card for a VerificationReport; the first mismatch goes in the body when there is one"""
    status = report.status
    params = ", ".join(f"{k}={v}" for k, v in sorted(report.parameters.items()))
    body = f"{report.checked_terms} terms checked in {format_duration(report.wall_time)} ({params})"
    if report.mismatch:
        m = report.mismatch
        body += f"<br/>first mismatch at q^{m.get('q')}: expected {m.get('expected')}, got {m.get('actual')}"
    render_info_card(f"{report.claim}: {get_status_label(status)}", body,
                     get_status_emoji(status), get_status_color(status))


def render_empty_state(icon, title, description, action_text=None):
    action_html = f"<p style='color: #818CF8; margin-top: 1rem;'>{action_text}</p>" if action_text else ""
    _html(f"<div class='cp-empty'><div style='font-size: 3rem; opacity: 0.5;'>{icon}</div>"
          f"<h3>{title}</h3><p class='cp-muted'>{description}</p>{action_html}</div>")
