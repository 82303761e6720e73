"""Serialize results as CSV, JSON or a small standalone SVG chart.

Floats are written with ``repr`` (shortest round-trip form) so identical
inputs always give byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .congestion_index import IndexSeries
from .equilibrium import EquilibriumResult, ZoneDiagnosis
from .scenarios import CurveSample, FractureReport, SweepResult

WIDTH, HEIGHT = 800, 500
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 70, 30, 40, 60
N_TICKS = 10
SERIES_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


@dataclass(frozen=True)
class SolveOutput:
    equilibrium: EquilibriumResult
    diagnosis: ZoneDiagnosis | None = None

    def to_dict(self) -> dict:
        d = self.equilibrium.to_dict()
        if self.diagnosis is not None:
            d["diagnosis"] = self.diagnosis.to_dict()
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SolveOutput":
        diag = d.get("diagnosis")
        return cls(
            EquilibriumResult.from_dict(d),
            None if diag is None else ZoneDiagnosis.from_dict(diag),
        )


@dataclass(frozen=True)
class PlaceboOutput:
    treatment_ratio: float
    control_ratio: float
    divergence: float
    year_from: int
    year_to: int

    def to_dict(self) -> dict:
        return {
            "year_from": self.year_from,
            "year_to": self.year_to,
            "treatment_ratio": self.treatment_ratio,
            "control_ratio": self.control_ratio,
            "divergence": self.divergence,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PlaceboOutput":
        return cls(d["treatment_ratio"], d["control_ratio"], d["divergence"], d["year_from"], d["year_to"])


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    if hasattr(value, "value"):  # enums
        return str(value.value)
    return str(value)


def to_json(result) -> str:
    return json.dumps(result.to_dict(), indent=2, allow_nan=False) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def to_csv(result) -> str:
    if isinstance(result, SolveOutput):
        eq, diag = result.equilibrium, result.diagnosis
        header = ["m_star", "w_star", "mb_at_star", "mc_at_star", "soc_value", "method"]
        row = [eq.m_star, eq.w_star, eq.mb_at_star, eq.mc_at_star, eq.soc_value, eq.method]
        if diag is not None:
            header += ["m_actual", "zone", "gap"]
            row += [diag.m_actual, diag.zone, diag.gap]
        return _csv(header, [row])
    if isinstance(result, CurveSample):
        rows = zip(result.m_grid, result.benefit_values, result.cost_values, result.welfare_values)
        return _csv(["m", "benefit", "cost", "welfare"], rows)
    if isinstance(result, SweepResult):
        # invalid rows carry their message in the zone column
        rows = [
            [r.parameter_value, r.m_star, r.w_star, r.zone if r.ok else f"error: {r.error}"]
            for r in result.rows
        ]
        return _csv(["param_value", "m_star", "w_star", "zone"], rows)
    if isinstance(result, FractureReport):
        rows = [[g.label, g.capacity, g.m_star, g.zone, g.welfare_at_actual] for g in result.per_group]
        return _csv(["label", "capacity", "m_star", "zone", "welfare_at_actual"], rows)
    if isinstance(result, IndexSeries):
        return result.to_csv()
    if isinstance(result, PlaceboOutput):
        r = result
        return _csv(
            ["year_from", "year_to", "treatment_ratio", "control_ratio", "divergence"],
            [[r.year_from, r.year_to, r.treatment_ratio, r.control_ratio, r.divergence]],
        )
    raise TypeError(f"no CSV layout for {type(result).__name__}")


def _ticks(lo: float, hi: float, n: int = N_TICKS) -> list[float]:
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _tick_label(v: float) -> str:
    return f"{v:.4g}"


def line_chart(
    series: list[tuple[str, list[float], list[float]]],
    *,
    title: str,
    x_label: str,
    y_label: str,
    marker_x: float | None = None,
    marker_label: str = "",
) -> str:
    """Render ``(name, xs, ys)`` series as an SVG document, one polyline each."""
    xs = [x for _, sx, _ in series for x in sx]
    ys = [y for _, _, sy in series for y in sy]
    if marker_x is not None:
        xs.append(marker_x)
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0

    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def sx(x):
        return MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def sy(y):
        return MARGIN_TOP + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h

    left, right = MARGIN_LEFT, MARGIN_LEFT + plot_w
    top, bottom = MARGIN_TOP, MARGIN_TOP + plot_h
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.2f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{bottom}" stroke="black"/>',
    ]
    for t in _ticks(x_lo, x_hi):
        x = sx(t)
        out.append(f'<line x1="{x:.2f}" y1="{bottom}" x2="{x:.2f}" y2="{bottom + 5}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{bottom + 18}" text-anchor="middle">{_tick_label(t)}</text>')
    for t in _ticks(y_lo, y_hi):
        y = sy(t)
        out.append(f'<line x1="{left - 5}" y1="{y:.2f}" x2="{left}" y2="{y:.2f}" stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{y + 4:.2f}" text-anchor="end">{_tick_label(t)}</text>')
    out.append(
        f'<text x="{(left + right) / 2:.2f}" y="{HEIGHT - 15}" text-anchor="middle">{escape(x_label)}</text>'
    )
    out.append(
        f'<text x="18" y="{(top + bottom) / 2:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {(top + bottom) / 2:.2f})">{escape(y_label)}</text>'
    )

    for i, (name, px, py) in enumerate(series):
        color = SERIES_COLORS[i % len(SERIES_COLORS)]
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(px, py))
        out.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{pts}">'
            f"<title>{escape(name)}</title></polyline>"
        )
        out.append(
            f'<text x="{right - 110}" y="{top + 15 + 15 * i}" fill="{color}">{escape(name)}</text>'
        )

    if marker_x is not None:
        x = sx(marker_x)
        out.append(
            f'<line x1="{x:.2f}" y1="{top}" x2="{x:.2f}" y2="{bottom}" '
            f'stroke="gray" stroke-dasharray="4 3"/>'
        )
        out.append(f'<text x="{x + 4:.2f}" y="{top + 12}" fill="gray">{escape(marker_label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def to_svg(result) -> str:
    if isinstance(result, CurveSample):
        m = result.m_grid
        return line_chart(
            [
                ("benefit B(M)", m, result.benefit_values),
                ("cost C(M)", m, result.cost_values),
                ("welfare W(M)", m, result.welfare_values),
            ],
            title="Welfare of globalization intensity",
            x_label="globalization intensity M",
            y_label="welfare units",
            marker_x=result.m_star_marker,
            marker_label=f"M* = {result.m_star_marker:.3f}",
        )
    if isinstance(result, IndexSeries):
        years = result.years
        counts = [float(result.counts.get(y, 0)) for y in years]
        if not years:
            raise ValueError("cannot chart an empty series")
        return line_chart(
            [(result.label or "hits", [float(y) for y in years], counts)],
            title=f"Congestion index{': ' + result.label if result.label else ''}",
            x_label="year",
            y_label=result.unit,
        )
    raise TypeError(f"no SVG layout for {type(result).__name__}")


def render(result, output_format: str) -> str:
    if output_format == "json":
        return to_json(result)
    if output_format == "csv":
        return to_csv(result)
    if output_format == "svg":
        return to_svg(result)
    raise ValueError(f"unknown output format {output_format!r}")
