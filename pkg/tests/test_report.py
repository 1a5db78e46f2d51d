import datetime as dt
import io
import re

import numpy as np
import pytest

from topiclandscape.diachronic import ElectionCalendar, TimeWindow, TopicEmotionSeries
from topiclandscape.emotions import EmotionLabel
from topiclandscape.report import (
    ChartSeries,
    ChartStyle,
    emit_crosstable_csv,
    emit_heat_table,
    emit_timeseries_chart,
    read_heat_csv,
)
from topiclandscape.synchronic import SkewnessGroup, classify_table, relative_differences
from topiclandscape.testkit import appendix_b_fixture


@pytest.fixture(scope="module")
def table_and_groups():
    rel = relative_differences(appendix_b_fixture().crosstable())
    return rel, classify_table(rel)


def render(fmt, rel, groups):
    buf = io.StringIO()
    emit_heat_table(rel, groups, fmt, buf)
    return buf.getvalue()


class TestHeatTable:
    def test_csv_round_trip(self, table_and_groups):
        rel, groups = table_and_groups
        parsed = read_heat_csv(io.StringIO(render("csv", rel, groups)))
        assert len(parsed) == 26
        for i, t in enumerate(rel.topics):
            np.testing.assert_array_equal(parsed[t]["values"], rel.rounded(2)[i])
            np.testing.assert_array_equal(parsed[t]["bold"], rel.bold_mask[i])
            assert parsed[t]["group"] is groups[t]

    def test_group_order(self, table_and_groups):
        rel, groups = table_and_groups
        lines = render("csv", rel, groups).splitlines()[1:]
        order = [SkewnessGroup(line.split(",")[11]).display_order for line in lines]
        assert order == sorted(order)
        assert lines[0].startswith("Employment,") and lines[1].startswith("Energy,")

    def test_markdown_bold(self, table_and_groups):
        rel, groups = table_and_groups
        md = render("markdown", rel, groups)
        assert "**3.44**" in md and "**1.20**" in md
        crime = next(line for line in md.splitlines() if "| Crime |" in line)
        assert "| 0.50 |" in crime  # equal to the threshold, so not bold

    def test_html(self, table_and_groups):
        rel, groups = table_and_groups
        out = render("html", rel, groups)
        assert out.count("<tr>") == 27 and "<b>3.44</b>" in out

    def test_deterministic(self, table_and_groups):
        rel, groups = table_and_groups
        assert render("html", rel, groups) == render("html", rel, groups)

    def test_bad_inputs(self, table_and_groups):
        rel, groups = table_and_groups
        with pytest.raises(ValueError):
            render("pdf", rel, groups)

    def test_crosstable_csv_is_lossless(self):
        ct = appendix_b_fixture().crosstable()
        buf = io.StringIO()
        emit_crosstable_csv(ct, buf)
        rows = [line.split(",") for line in buf.getvalue().splitlines()[1:]]
        np.testing.assert_array_equal(np.array([[float(x) for x in r[1:10]] for r in rows]), ct.prevalence)


def chart(series, elections=None):
    buf = io.StringIO()
    emit_timeseries_chart(series, elections, ChartStyle(title="t"), buf)
    return buf.getvalue()


class TestChart:
    def points(self, n=24, gap=None):
        pts = []
        for i in range(n):
            d = dt.date(2000 + i // 12, i % 12 + 1, 15)
            pts.append((d, None if gap and i in gap else float(i % 5)))
        return pts

    def test_elections_are_the_only_dashed_lines(self):
        svg = chart([ChartSeries("x", self.points())], ElectionCalendar.parse(["2000-06-01", "2001-03-01", "2009-01-01"]))
        assert len(re.findall(r'class="election"', svg)) == 2
        assert svg.count("stroke-dasharray") == 2

    def test_gaps_break_lines(self):
        svg = chart([ChartSeries("x", self.points(gap={5, 6, 12}))])
        assert svg.count("<polyline") == 3
        assert svg.count("<circle") == 0
        svg = chart([ChartSeries("x", self.points(gap={1, 3}))])
        assert svg.count("<circle") == 2  # lone points at indices 0 and 2

    def test_deterministic_and_wellformed(self):
        import xml.etree.ElementTree as ET

        series = [ChartSeries("a & b", self.points()), ChartSeries("c", self.points(gap={3}))]
        svg = chart(series)
        assert svg == chart(series)
        ET.fromstring(svg)

    def test_from_topic_emotion(self):
        wins = [TimeWindow.at(2001, m) for m in (3, 4, 5)]
        s = ChartSeries.from_topic_emotion(TopicEmotionSeries(2, EmotionLabel.HOPE, wins, np.array([0.1, np.nan, 0.3])))
        assert s.name == "topic 2 / HOPE" and s.points[1][1] is None

    def test_empty(self):
        with pytest.raises(ValueError):
            chart([ChartSeries("x", [(dt.date(2000, 1, 1), None)])])
