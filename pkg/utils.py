"""
utils.py
Helper functions for pass rates, status labels and compact series display.
"""

from typing import Dict, List, Sequence

from qseries import QSeries


def calculate_pass_rate(passed: int, total: int) -> float:
    """
    Calculate the percentage of passing reports.

    Args:
        passed: Number of passing reports
        total: Number of reports

    Returns:
        float: Percentage (0-100)
    """
    if total == 0:
        return 0.0
    return round((passed / total) * 100, 2)


def get_status_label(status: str) -> str:
    labels = {
        "pass": "Verified",
        "fail": "Mismatch",
    }
    return labels.get(status, "Unknown")


def get_status_color(status: str) -> str:
    """
    Get color name for a report status (for badges/UI).

    Args:
        status: pass or fail

    Returns:
        str: Color name for Streamlit
    """
    colors = {
        "pass": "green",
        "fail": "red",
    }
    return colors.get(status, "gray")


def get_status_emoji(status: str) -> str:
    emojis = {
        "pass": "✅",
        "fail": "❌",
    }
    return emojis.get(status, "📊")


def format_duration(seconds: float) -> str:
    """Format a wall time, e.g. "0.42s", "3.1s" or "2m 05s"."""
    if seconds < 1:
        return f"{seconds:.2f}s"
    if seconds < 60:
        return f"{seconds:.1f}s"
    minutes, rest = divmod(int(round(seconds)), 60)
    return f"{minutes}m {rest:02d}s"


def series_rows(series: QSeries, names: Sequence[str] = ()) -> List[Dict]:
    """
    One row per q-exponent through the series order, for tables and CSV export.

    Args:
        series: Series to tabulate
        names: Variable names; a0, a1, ... when empty

    Returns:
        List[Dict]: {"q": e, "coefficient": text, "count": value at all variables = 1}
    """
    names = list(names) or [f"a{i}" for i in range(series.nvars)]
    rows = []
    for e in range(min(series.valuation, 0), series.order + 1):
        coeff = series.coefficient(e)
        rows.append({
            "q": e,
            "coefficient": coeff.format(names),
            "count": sum(coeff.terms.values()),
        })
    return rows
