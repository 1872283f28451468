"""
app.py
Streamlit dashboard: run claims, explore families and matrices, try the bijection, browse report history.
"""

import json

import pandas as pd
import streamlit as st

from bijection import PartitionPair, conservation_summary, phi_inverse_steps, phi_steps
from cli import load_table, parse_classical, parse_dilation
from colour import Metric, PartitionsError, Variant, build_delta_matrix, build_variant_matrix
from database import ReportStore
from frobenius import enumerate_frobenius
from partition import ColouredPartition, MembershipSpec, enumerate_partitions, generating_series, partition_statistics
from ui_components import (render_empty_state, render_header, render_info_card, render_report_card,
                           render_section_header, render_stat_card)
from utils import format_duration, get_status_emoji, series_rows
from verifier import CLAIMS, BudgetError, ClaimVerifier, Settings

st.set_page_config(
    page_title="Coloured Partitions",
    layout="centered",
    page_icon="🎨",
    initial_sidebar_state="expanded"
)

# ============================================================================
# DARK THEME CSS
# ============================================================================
st.markdown("""
<style>
    .stApp { background-color: #0E1117; }
    [data-testid="stSidebar"] { background-color: #1a1d24; }
    [data-testid="stSidebar"] * { color: #FAFAFA !important; }
    .stMarkdown, p, span, div { color: #FAFAFA !important; }
    h1, h2, h3, h4, h5, h6 { color: #FAFAFA !important; }
    .stTextInput input, .stTextArea textarea {
        background-color: #262730 !important;
        color: #FAFAFA !important;
        border-color: #404040 !important;
    }
    .stDataFrame { background-color: #1a1d24 !important; }
</style>
""", unsafe_allow_html=True)

settings = Settings.from_env()

if 'db' not in st.session_state:
    st.session_state.db = ReportStore(settings.db_path)

if 'page' not in st.session_state:
    st.session_state.page = "Verify"

if 'last_report' not in st.session_state:
    st.session_state.last_report = None

PAGES = ["Verify", "Explore", "Bijection", "History"]

# ===== SIDEBAR =====
with st.sidebar:
    st.subheader("📑 Pages")
    st.session_state.page = st.radio("Page", PAGES, index=PAGES.index(st.session_state.page),
                                      label_visibility="collapsed")
    st.markdown("---")
    stats = st.session_state.db.get_report_statistics()
    st.caption(f"📊 {stats['total_reports']} stored report(s), {stats['pass_rate']}% passing")
    st.caption(f"Budget: {settings.budget:,} nodes, default order {settings.default_order}")

render_header()


def table_picker(n: int, key: str):
    saved = [t["name"] for t in st.session_state.db.get_all_tables() if t["n"] == n]
    choice = st.selectbox("δ/γ table", [v.value for v in Variant] + saved, key=key)
    return load_table(choice, n, st.session_state.db)


# ===== VERIFY =====
if st.session_state.page == "Verify":
    render_section_header("✅", "Verify a claim", "Both sides are computed exactly and compared coefficient by coefficient")

    claim_id = st.selectbox("Claim", sorted(CLAIMS), format_func=lambda c: f"{c}: {CLAIMS[c].description}")
    claim = CLAIMS[claim_id]
    col1, col2 = st.columns(2)
    with col1:
        n_choices = list(claim.allowed_n or range(1 if claim_id == "main2" else 2, 6))
        n = st.selectbox("n", n_choices, index=n_choices.index(claim.default_n) if claim.default_n in n_choices else 0)
    with col2:
        order = st.number_input("Order", min_value=0, max_value=60,
                                value=claim.default_order or settings.default_order)
    table = table_picker(n, "verify_table") if claim.uses_table and n >= 2 else None
    force = st.checkbox("Ignore the enumeration budget", value=False)
    save = st.checkbox("Save the report", value=True)

    verifier = ClaimVerifier(settings)
    verifier.set_force(force)
    try:
        estimate = verifier.estimate(claim_id, n, int(order))
        st.caption(f"Estimated enumeration nodes: {estimate:,}")
    except PartitionsError as e:
        st.error(f"❌ {e}")
        estimate = None

    if st.button("▶️ Run", type="primary", use_container_width=True, disabled=estimate is None):
        with st.spinner(f"Verifying {claim_id}..."):
            try:
                report = verifier.run(claim_id, n=n, order=int(order), table=table)
                st.session_state.last_report = report
                if save:
                    st.session_state.db.save_report(report)
            except BudgetError as e:
                render_info_card("Over budget", str(e), "⚠️", "orange")
            except PartitionsError as e:
                st.error(f"❌ {e}")

    report = st.session_state.last_report
    if report is not None:
        render_report_card(report)
        if report.details:
            with st.expander("Details"):
                st.json(report.details)
        st.download_button("📄 Download JSON", data=json.dumps(report.to_dict(), indent=2),
                           file_name=f"{report.claim}_report.json", mime="application/json")

# ===== EXPLORE =====
elif st.session_state.page == "Explore":
    render_section_header("🔎", "Explore", "Minimal-difference matrices and family enumeration")
    tab1, tab2 = st.tabs(["🧮 Matrices", "📋 Enumerate"])

    with tab1:
        n = st.selectbox("n", [2, 3, 4], key="matrix_n")
        kind = st.selectbox("Matrix", [m.value for m in Metric] + [f"variant:{v.value}" for v in Variant])
        if kind.startswith("variant:"):
            colours, matrix = build_variant_matrix(Variant(kind.split(":", 1)[1]), n)
        else:
            colours, matrix = build_delta_matrix(n, Metric(kind))
        names = [str(c) for c in colours]
        st.dataframe(pd.DataFrame(matrix, index=names, columns=names), use_container_width=True)

    with tab2:
        col1, col2, col3 = st.columns(3)
        with col1:
            family = st.selectbox("Family", ["pn", "cn", "p0", "variant", "frobenius"])
        with col2:
            n = st.selectbox("n", [1, 2, 3, 4], index=1, key="enum_n")
        with col3:
            max_weight = st.number_input("Max weight", min_value=0, max_value=20, value=5)
        dilation_text = st.text_input("Dilation (optional)", placeholder="principal, capparelli or 3:0,-1")

        try:
            if family == "frobenius":
                items = list(enumerate_frobenius(n, int(max_weight)))
                rows = [{"weight": f.weight, "symbol": str(f)} for f in items]
                series = None
            else:
                if family == "pn":
                    spec = MembershipSpec.pn(n)
                elif family == "p0":
                    spec = MembershipSpec.p0()
                elif family == "variant":
                    spec = MembershipSpec.difference_variant(
                        st.selectbox("Variant", list(Variant), format_func=lambda v: v.value), n)
                else:
                    spec = MembershipSpec.cn(table_picker(n, "enum_table"))
                dilation = parse_dilation(dilation_text.strip(), spec.n) if dilation_text.strip() else None
                items = list(enumerate_partitions(spec, int(max_weight), dilation))
                rows = [{"weight": p.weight, "partition": str(p) or "0"} for p in items]
                series = None if dilation else generating_series(
                    items, int(max_weight), spec.n, lambda p: (p.weight, partition_statistics(p, spec.n).monomial()))

            render_stat_card("Members", len(rows), "🧩")
            if rows:
                df = pd.DataFrame(rows)
                st.dataframe(df, use_container_width=True, hide_index=True)
                st.download_button("📊 Download CSV", data=df.to_csv(index=False),
                                   file_name=f"{family}_n{n}_w{int(max_weight)}.csv", mime="text/csv")
            else:
                render_empty_state("🫙", "Nothing to list", "No members up to this weight")
            if series is not None:
                with st.expander("Generating series"):
                    st.dataframe(pd.DataFrame(series_rows(series)), use_container_width=True, hide_index=True)
        except PartitionsError as e:
            st.error(f"❌ {e}")

# ===== BIJECTION =====
elif st.session_state.page == "Bijection":
    render_section_header("🔁", "Bijection", "P_n against pairs (μ, ν) with μ in C_n(δ, γ) and ν classical")
    n = st.selectbox("n", [2, 3, 4], key="biject_n")
    table = table_picker(n, "biject_table")
    direction = st.radio("Direction", ["forward", "inverse"], horizontal=True)

    try:
        if direction == "forward":
            text = st.text_input("λ", value="1[a1b0]" if n == 2 else "2[a2b2]+2[a1b0]")
            lam = ColouredPartition.parse(text)
            steps = phi_steps(lam, table)
            pair = PartitionPair(steps[-1].mu, steps[-1].nu)
            summary = conservation_summary(lam, pair)
            st.success(f"✅ {lam or '0'} → {pair}")
        else:
            mu_text = st.text_input("μ", value="1[a1b0]")
            nu_text = st.text_input("ν", value="1")
            pair = PartitionPair(ColouredPartition.parse(mu_text), parse_classical(nu_text))
            steps = phi_inverse_steps(pair, table)
            summary = conservation_summary(steps[-1].mu, pair)
            st.success(f"✅ {pair} → {steps[-1].mu or '0'}")

        st.dataframe(pd.DataFrame([{"step": s.name, "μ": str(s.mu) or "0", "ν": str(s.nu) or "0"} for s in steps]),
                     use_container_width=True, hide_index=True)
        verdict = "conserved" if summary["preserved"] else "NOT conserved"
        render_info_card("Conservation", f"weight {summary['weight'][0]}, {summary['parts'][0]} parts: {verdict}",
                         "⚖️", "green" if summary["preserved"] else "red")
    except PartitionsError as e:
        st.error(f"❌ {e}")

# ===== HISTORY =====
else:
    render_section_header("🗂️", "History", "Stored verification reports")
    db = st.session_state.db
    stats = db.get_report_statistics()

    if stats['total_reports'] == 0:
        render_empty_state("🗂️", "No reports yet", "Run a claim on the Verify page with saving enabled")
    else:
        col1, col2, col3 = st.columns(3)
        with col1:
            render_stat_card("Reports", stats['total_reports'], "📄")
        with col2:
            render_stat_card("Pass rate", f"{stats['pass_rate']}%", "✅")
        with col3:
            render_stat_card("Mean time", format_duration(stats['avg_wall_time']), "⏱️")

        claim_filter = st.selectbox("Claim", ["(all)"] + sorted(stats['per_claim']))
        claim = None if claim_filter == "(all)" else claim_filter
        reports = db.get_reports_by_claim(claim) if claim else db.get_all_reports()

        for row in reports:
            with st.expander(f"{get_status_emoji(row['status'])} #{row['id']} {row['claim']} "
                             f"(n={row['n']}, order={row['order']}) {row['created_at'][:16]}"):
                full = db.load_report(row['id'])
                if full is not None:
                    render_report_card(full)
                if st.button("🗑️ Delete", key=f"del_{row['id']}"):
                    if db.delete_report(row['id']):
                        st.success(f"✅ Deleted #{row['id']}")
                        st.rerun()

        df = db.export_reports_to_csv(claim)
        st.download_button("📊 Export CSV", data=df.to_csv(index=False),
                           file_name="verification_reports.csv", mime="text/csv")

        if st.button("🗑️ Delete all", help="Delete every report shown"):
            st.session_state.confirm_delete_all = True
        if st.session_state.get('confirm_delete_all', False):
            st.warning("⚠️ Delete all these reports?")
            col1, col2 = st.columns(2)
            with col1:
                if st.button("✅ Yes, Delete All", type="primary", key="confirm_yes"):
                    count = db.delete_all_reports(claim)
                    st.session_state.confirm_delete_all = False
                    st.success(f"✅ Deleted {count} report(s)")
                    st.rerun()
            with col2:
                if st.button("❌ Cancel", key="confirm_no"):
                    st.session_state.confirm_delete_all = False
                    st.rerun()
