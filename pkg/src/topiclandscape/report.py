"""File emitters: heat tables (CSV / Markdown / HTML) and SVG time-series charts."""

from __future__ import annotations

import csv
import datetime as dt
import html
import math
from dataclasses import dataclass, field
from typing import IO, Mapping, Sequence

import numpy as np

from .diachronic import ElectionCalendar, TopicEmotionSeries
from .emotions import EMOTIONS
from .synchronic import CrossTable, RelativeDifferenceTable, SkewnessGroup

HEAT_FORMATS = ("csv", "markdown", "html")


def _ordered_rows(table: RelativeDifferenceTable, groups: Mapping[str, SkewnessGroup]) -> list[int]:
    def key(i):
        t = table.topics[i]
        g = groups.get(t, SkewnessGroup.AVERAGE)
        return (SkewnessGroup(g).display_order, t.casefold(), t)
    return sorted(range(len(table.topics)), key=key)


def _fmt2(x: float) -> str:
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


def emit_heat_table(table: RelativeDifferenceTable, groups: Mapping[str, SkewnessGroup],
                    format: str, sink: IO[str]) -> None:
    """Write the proportional-difference table grouped by skewness.

    Rows follow the group order (polarized, negatively, neutrally,
    positively skewed, average) and then topic name. Cells over +0.5 at
    two decimals are marked bold.
    """
    if format not in HEAT_FORMATS:
        raise ValueError(f"unknown table format {format!r}; choose from {HEAT_FORMATS}")
    if not np.isfinite(table.values).all():
        raise ValueError("table has non-finite entries")
    rows = _ordered_rows(table, groups)
    rounded = table.rounded(2)
    bold = table.bold_mask
    codes = [e.code for e in EMOTIONS]

    if format == "csv":
        w = csv.writer(sink, lineterminator="\n")
        w.writerow(["topic", *codes, "average", "group", *(f"bold_{c}" for c in codes)])
        for i in rows:
            t = table.topics[i]
            w.writerow([t, *(_fmt2(v) for v in rounded[i]), f"{table.averages[i]:.5f}",
                        SkewnessGroup(groups[t]).value, *("true" if b else "false" for b in bold[i])])
    elif format == "markdown":
        sink.write("| group | topic | " + " | ".join(codes) + " |\n")
        sink.write("|---|---|" + "---:|" * len(codes) + "\n")
        for i in rows:
            t = table.topics[i]
            cells = [f"**{_fmt2(v)}**" if b else _fmt2(v) for v, b in zip(rounded[i], bold[i])]
            sink.write(f"| {SkewnessGroup(groups[t]).value} | {t} | " + " | ".join(cells) + " |\n")
    else:
        sink.write("<table class=\"heat\">\n<thead><tr><th>group</th><th>topic</th>")
        sink.write("".join(f"<th>{html.escape(c)}</th>" for c in codes) + "</tr></thead>\n<tbody>\n")
        for i in rows:
            t = table.topics[i]
            sink.write(f"<tr><td>{html.escape(SkewnessGroup(groups[t]).value)}</td><td>{html.escape(t)}</td>")
            for v, b in zip(rounded[i], bold[i]):
                txt = _fmt2(v)
                if b:
                    txt = f"<b>{txt}</b>"
                sink.write(f"<td style=\"background:{_heat_colour(v)}\">{txt}</td>")
            sink.write("</tr>\n")
        sink.write("</tbody>\n</table>\n")


def _heat_colour(v: float) -> str:
    # red for over-, blue for underrepresentation; saturates at +/-1
    a = min(1.0, abs(v))
    if v >= 0:
        r, g, b = 255, round(255 * (1 - 0.6 * a)), round(255 * (1 - 0.6 * a))
    else:
        r, g, b = round(255 * (1 - 0.6 * a)), round(255 * (1 - 0.6 * a)), 255
    return f"#{r:02x}{g:02x}{b:02x}"


def read_heat_csv(source: IO[str]) -> dict[str, dict]:
    """Parse a heat-table CSV back into {topic: {"values", "group", "bold"}}."""
    out = {}
    for row in csv.DictReader(source):
        out[row["topic"]] = {
            "values": np.array([float(row[e.code]) for e in EMOTIONS]),
            "average": float(row["average"]),
            "group": SkewnessGroup(row["group"]),
            "bold": np.array([row[f"bold_{e.code}"] == "true" for e in EMOTIONS]),
        }
    return out


def emit_crosstable_csv(table: CrossTable, sink: IO[str]) -> None:
    w = csv.writer(sink, lineterminator="\n")
    w.writerow(["topic", *(e.code for e in EMOTIONS), "average"])
    for t, row, avg in zip(table.topics, table.prevalence, table.averages):
        w.writerow([t, *(repr(float(v)) for v in row), repr(float(avg))])


# ---------------------------------------------------------------------------
# SVG charts

PALETTE = ("#000000", "#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd",
           "#8c564b", "#e377c2", "#7f7f7f", "#17becf")


@dataclass
class ChartSeries:
    """Named series; a None value is a gap and breaks the line."""

    name: str
    points: list[tuple[dt.date, float | None]]
    colour: str | None = None

    @classmethod
    def from_topic_emotion(cls, s: TopicEmotionSeries, name: str | None = None) -> "ChartSeries":
        pts = [(w.center_date, None if math.isnan(v) else float(v)) for w, v in zip(s.windows, s.values)]
        return cls(name or f"topic {s.topic} / {s.label.code}", pts)


@dataclass
class ChartStyle:
    width: int = 900
    height: int = 360
    margin_left: int = 60
    margin_right: int = 160
    margin_top: int = 30
    margin_bottom: int = 40
    title: str = ""
    y_label: str = ""
    stroke_width: float = 1.5
    palette: Sequence[str] = field(default=PALETTE)


def _f(x: float) -> str:
    return f"{x:.2f}"


def _segments(points):
    seg = []
    for d, v in points:
        if v is None or (isinstance(v, float) and math.isnan(v)):
            if seg:
                yield seg
            seg = []
        else:
            seg.append((d, v))
    if seg:
        yield seg


def emit_timeseries_chart(series: Sequence[ChartSeries], elections: ElectionCalendar | None,
                          style: ChartStyle | None, sink: IO[str]) -> None:
    """Standalone SVG line chart with year ticks, a legend and dashed election markers.

    Gaps break lines instead of being interpolated. Output depends only on
    the inputs.
    """
    style = style or ChartStyle()
    pts = [(d, v) for s in series for d, v in s.points if v is not None and not math.isnan(v)]
    if not pts:
        raise ValueError("chart needs at least one series point")
    x0 = min(d for d, _ in pts).toordinal()
    x1 = max(d for d, _ in pts).toordinal()
    if x1 == x0:
        x0, x1 = x0 - 1, x1 + 1
    y0 = min(v for _, v in pts)
    y1 = max(v for _, v in pts)
    pad = (y1 - y0) * 0.05 or max(abs(y0) * 0.05, 0.05)
    y0, y1 = y0 - pad, y1 + pad
    L, T = style.margin_left, style.margin_top
    R = style.width - style.margin_right
    B = style.height - style.margin_bottom

    def sx(d: dt.date) -> float:
        return L + (d.toordinal() - x0) / (x1 - x0) * (R - L)

    def sy(v: float) -> float:
        return B - (v - y0) / (y1 - y0) * (B - T)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{style.width}" height="{style.height}" '
        f'viewBox="0 0 {style.width} {style.height}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{style.width}" height="{style.height}" fill="#ffffff"/>',
    ]
    if style.title:
        out.append(f'<text x="{L}" y="{T - 10}" font-size="13">{html.escape(style.title)}</text>')
    out.append(f'<line class="axis" x1="{L}" y1="{B}" x2="{R}" y2="{B}" stroke="#333333"/>')
    out.append(f'<line class="axis" x1="{L}" y1="{T}" x2="{L}" y2="{B}" stroke="#333333"/>')

    first = dt.date.fromordinal(x0)
    last = dt.date.fromordinal(x1)
    for year in range(first.year, last.year + 1):
        d = dt.date(year, 1, 1)
        if not first <= d <= last:
            continue
        x = _f(sx(d))
        out.append(f'<line class="tick" x1="{x}" y1="{B}" x2="{x}" y2="{B + 4}" stroke="#333333"/>')
        out.append(f'<text x="{x}" y="{B + 16}" text-anchor="middle">{year}</text>')
    for i in range(5):
        v = y0 + (y1 - y0) * i / 4
        y = _f(sy(v))
        out.append(f'<line class="tick" x1="{L - 4}" y1="{y}" x2="{L}" y2="{y}" stroke="#333333"/>')
        out.append(f'<text x="{L - 6}" y="{y}" text-anchor="end" dominant-baseline="middle">{v:.3g}</text>')
    if style.y_label:
        out.append(f'<text x="14" y="{_f((T + B) / 2)}" transform="rotate(-90 14 {_f((T + B) / 2)})" '
                   f'text-anchor="middle">{html.escape(style.y_label)}</text>')
    if y0 < 0 < y1:
        out.append(f'<line class="zero" x1="{L}" y1="{_f(sy(0))}" x2="{R}" y2="{_f(sy(0))}" stroke="#bbbbbb"/>')

    if elections is not None:
        for d in elections.within(first, last):
            x = _f(sx(d))
            out.append(f'<line class="election" x1="{x}" y1="{T}" x2="{x}" y2="{B}" '
                       f'stroke="#555555" stroke-dasharray="5 4"/>')

    for i, s in enumerate(series):
        colour = s.colour or style.palette[i % len(style.palette)]
        for seg in _segments(s.points):
            if len(seg) == 1:
                d, v = seg[0]
                out.append(f'<circle class="series" cx="{_f(sx(d))}" cy="{_f(sy(v))}" r="1.5" fill="{colour}"/>')
                continue
            coords = " ".join(f"{_f(sx(d))},{_f(sy(v))}" for d, v in seg)
            out.append(f'<polyline class="series" fill="none" stroke="{colour}" '
                       f'stroke-width="{style.stroke_width}" points="{coords}"/>')
        ly = T + 14 * i + 6
        out.append(f'<line class="legend" x1="{R + 12}" y1="{ly}" x2="{R + 30}" y2="{ly}" '
                   f'stroke="{colour}" stroke-width="2"/>')
        out.append(f'<text x="{R + 34}" y="{ly}" dominant-baseline="middle">{html.escape(s.name)}</text>')
    out.append("</svg>")
    sink.write("\n".join(out) + "\n")
