"""
Tests for display helpers.
"""

from qseries import LaurentPoly, QSeries
from utils import (calculate_pass_rate, format_duration, get_status_color, get_status_emoji, get_status_label,
                   series_rows)


class TestStatusHelpers:
    """Labels, colours and rates for report statuses."""

    def test_pass_rate(self):
        assert calculate_pass_rate(0, 0) == 0.0
        assert calculate_pass_rate(1, 3) == 33.33
        assert calculate_pass_rate(4, 4) == 100.0

    def test_labels(self):
        assert get_status_label("pass") == "Verified"
        assert get_status_label("fail") == "Mismatch"
        assert get_status_label("bogus") == "Unknown"

    def test_colours_and_emoji(self):
        assert get_status_color("pass") == "green"
        assert get_status_color("fail") == "red"
        assert get_status_color("bogus") == "gray"
        assert get_status_emoji("fail") == "❌"

    def test_durations(self):
        assert format_duration(0.421) == "0.42s"
        assert format_duration(3.14) == "3.1s"
        assert format_duration(125) == "2m 05s"


class TestSeriesDisplay:
    """Series tables."""

    def test_series_rows(self):
        a = LaurentPoly.variable(0, 1)
        rows = series_rows(QSeries({0: 1, 2: a + a * a}, 2, 1))
        assert [r["q"] for r in rows] == [0, 1, 2]
        assert rows[1] == {"q": 1, "coefficient": "0", "count": 0}
        assert rows[2]["coefficient"] == "a0^2 + a0"
        assert rows[2]["count"] == 2

    def test_plain_series_rows(self):
        rows = series_rows(QSeries.from_counts([1, 1, 2]))
        assert [r["coefficient"] for r in rows] == ["1", "1", "2"]
