"""SVG emission for the two figure types, with exact-coordinate sidecars.

Plots are written as standalone SVG documents built by string assembly;
no plotting framework is involved. Next to every SVG goes a plain-text
CSV sidecar carrying the exact plotted coordinates at full precision, so
tests assert on numbers rather than rendered pixels.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import InputError
from .freqdata import FrequencyDistribution, bin_histogram
from .loglogfit import Denominator, FitResult, to_percent_series

__all__ = ["PlotKind", "PlotSpec", "emit_plot"]

_WIDTH, _HEIGHT = 640, 480
_MARGIN_LEFT, _MARGIN_RIGHT, _MARGIN_TOP, _MARGIN_BOTTOM = 75, 20, 20, 55


class PlotKind(enum.Enum):
    HISTOGRAM = "histogram"
    LOGLOG = "loglog"


@dataclass(frozen=True)
class PlotSpec:
    """What to draw and where to put it."""

    kind: PlotKind
    out_path: str | Path
    include_trendline: bool = False
    xlabel: str = ""
    ylabel: str = ""
    bin_width: int = 1


class _Frame:
    """Maps data coordinates into the SVG plot area."""

    def __init__(self, x_lo: float, x_hi: float, y_lo: float, y_hi: float) -> None:
        if x_hi <= x_lo:
            x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
        if y_hi <= y_lo:
            y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
        self.x_lo, self.x_hi, self.y_lo, self.y_hi = x_lo, x_hi, y_lo, y_hi
        self.plot_w = _WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT
        self.plot_h = _HEIGHT - _MARGIN_TOP - _MARGIN_BOTTOM

    def x(self, v: float) -> float:
        return _MARGIN_LEFT + (v - self.x_lo) / (self.x_hi - self.x_lo) * self.plot_w

    def y(self, v: float) -> float:
        return _HEIGHT - _MARGIN_BOTTOM - (v - self.y_lo) / (self.y_hi - self.y_lo) * self.plot_h


def _axes(frame: _Frame, xlabel: str, ylabel: str) -> list[str]:
    left, bottom = _MARGIN_LEFT, _HEIGHT - _MARGIN_BOTTOM
    right, top = _WIDTH - _MARGIN_RIGHT, _MARGIN_TOP
    parts = [
        f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>',
        f'<line x1="{left}" y1="{bottom}" x2="{left}" y2="{top}" stroke="black"/>',
    ]
    for i in range(5):
        fx = frame.x_lo + i * (frame.x_hi - frame.x_lo) / 4
        px = frame.x(fx)
        parts.append(f'<line x1="{px:.2f}" y1="{bottom}" x2="{px:.2f}" y2="{bottom + 5}" stroke="black"/>')
        parts.append(
            f'<text x="{px:.2f}" y="{bottom + 18}" font-size="11" text-anchor="middle">{fx:.3g}</text>'
        )
        fy = frame.y_lo + i * (frame.y_hi - frame.y_lo) / 4
        py = frame.y(fy)
        parts.append(f'<line x1="{left - 5}" y1="{py:.2f}" x2="{left}" y2="{py:.2f}" stroke="black"/>')
        parts.append(
            f'<text x="{left - 8}" y="{py + 4:.2f}" font-size="11" text-anchor="end">{fy:.3g}</text>'
        )
    parts.append(
        f'<text x="{(left + right) / 2:.2f}" y="{_HEIGHT - 12}" font-size="13" '
        f'text-anchor="middle">{xlabel}</text>'
    )
    parts.append(
        f'<text x="16" y="{(top + bottom) / 2:.2f}" font-size="13" text-anchor="middle" '
        f'transform="rotate(-90 16 {(top + bottom) / 2:.2f})">{ylabel}</text>'
    )
    return parts


def _svg_document(body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"


def _emit_loglog(
    dist: FrequencyDistribution, fit: FitResult | None, spec: PlotSpec
) -> tuple[str, str]:
    series = to_percent_series(dist, Denominator.FULL)
    xs = [math.log10(level) for level, _ in series.points]
    ys = [math.log10(percent) for _, percent in series.points]
    frame = _Frame(min(xs), max(xs), min(ys), max(ys))
    xlabel = spec.xlabel or "log10 works per author"
    ylabel = spec.ylabel or "log10 percent of authors"
    body = _axes(frame, xlabel, ylabel)
    if spec.include_trendline:
        assert fit is not None
        x0, x1 = min(xs), max(xs)
        body.append(
            f'<line x1="{frame.x(x0):.2f}" y1="{frame.y(fit.intercept + fit.slope * x0):.2f}" '
            f'x2="{frame.x(x1):.2f}" y2="{frame.y(fit.intercept + fit.slope * x1):.2f}" '
            f'stroke="#d62728" stroke-width="1.5"/>'
        )
    for x, y in zip(xs, ys):
        body.append(f'<circle cx="{frame.x(x):.2f}" cy="{frame.y(y):.2f}" r="3" fill="#1f77b4"/>')
    header = "level,percent,log10_level,log10_percent"
    if spec.include_trendline:
        header += ",fit_log10_percent,residual"
    rows = [header]
    for (level, percent), x, y in zip(series.points, xs, ys):
        row = f"{level},{percent!r},{x!r},{y!r}"
        if spec.include_trendline:
            fitted = fit.intercept + fit.slope * x
            row += f",{fitted!r},{y - fitted!r}"
        rows.append(row)
    return _svg_document(body), "\n".join(rows) + "\n"


def _emit_histogram(dist: FrequencyDistribution, spec: PlotSpec) -> tuple[str, str]:
    bins = bin_histogram(dist, spec.bin_width)
    top_count = max(count for _, _, count, _ in bins.bins)
    frame = _Frame(0.5, bins.bins[-1][1] + 0.5, 0.0, float(top_count))
    xlabel = spec.xlabel or "works per author (binned)"
    ylabel = spec.ylabel or "authors"
    body = _axes(frame, xlabel, ylabel)
    for start, end, count, _ in bins.bins:
        if count == 0:
            continue
        x_left = frame.x(start - 0.5)
        x_right = frame.x(end + 0.5)
        y_top = frame.y(float(count))
        y_base = frame.y(0.0)
        body.append(
            f'<rect x="{x_left:.2f}" y="{y_top:.2f}" width="{x_right - x_left:.2f}" '
            f'height="{y_base - y_top:.2f}" fill="#1f77b4" stroke="white" stroke-width="0.5"/>'
        )
    rows = ["range_start,range_end,author_count,author_percent"]
    rows.extend(f"{s},{e},{c},{p!r}" for s, e, c, p in bins.bins)
    return _svg_document(body), "\n".join(rows) + "\n"


def emit_plot(
    dist: FrequencyDistribution, fit: FitResult | None, spec: PlotSpec
) -> tuple[Path, Path]:
    """Write the SVG and its sidecar; returns both paths.

    The sidecar sits next to the SVG with a .csv suffix and carries the
    exact plotted values at full precision.
    """
    if spec.kind is PlotKind.LOGLOG and spec.include_trendline and fit is None:
        raise InputError("trendline requested without a fit")
    if spec.kind is PlotKind.LOGLOG:
        svg, sidecar = _emit_loglog(dist, fit, spec)
    else:
        svg, sidecar = _emit_histogram(dist, spec)
    out = Path(spec.out_path)
    sidecar_path = out.with_suffix(".csv")
    if sidecar_path == out:
        sidecar_path = out.with_suffix(".points.csv")
    out.write_text(svg, encoding="utf-8")
    sidecar_path.write_text(sidecar, encoding="utf-8")
    return out, sidecar_path
