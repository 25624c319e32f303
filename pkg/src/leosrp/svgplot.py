"""Minimal deterministic SVG line/scatter plots.

Hand-built markup so identical inputs give byte-identical files: no
timestamps, no generated ids, fixed float formatting throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


@dataclass
class Series:
    """One plotted series; mode is "line" or "points"."""

    xs: list
    ys: list
    color: str = ""
    mode: str = "line"
    label: str = ""
    radius: float = 3.0
    width: float = 1.5


@dataclass
class Figure:
    """Plot description consumed by render()."""

    series: list[Series] = field(default_factory=list)
    title: str = ""
    x_label: str = ""
    y_label: str = ""
    x_range: tuple[float, float] | None = None
    y_range: tuple[float, float] | None = None
    width: int = 860
    height: int = 500
    grid_step: tuple[float, float] | None = None


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _tick_text(x: float) -> str:
    if x == 0:
        return "0"
    if abs(x) >= 1e5 or abs(x) < 1e-3:
        return f"{x:.3e}"
    return f"{x:.6g}"


def _data_range(series, axis, fixed):
    if fixed is not None:
        lo, hi = float(fixed[0]), float(fixed[1])
    else:
        vals = np.concatenate(
            [np.asarray(s.xs if axis == 0 else s.ys, dtype=float)
             for s in series if len(s.xs)])
        if vals.size == 0:
            raise DomainError("nothing to plot")
        lo, hi = float(vals.min()), float(vals.max())
    if lo == hi:
        pad = 1.0 if lo == 0 else abs(lo) * 0.05
        lo, hi = lo - pad, hi + pad
    return lo, hi


def render(fig: Figure) -> str:
    """Render a Figure to standalone SVG text."""
    ml, mr, mt, mb = 72, 16, 34, 46
    pw = fig.width - ml - mr
    ph = fig.height - mt - mb
    x_lo, x_hi = _data_range(fig.series, 0, fig.x_range)
    y_lo, y_hi = _data_range(fig.series, 1, fig.y_range)

    def px(x):
        return ml + (x - x_lo) / (x_hi - x_lo) * pw

    def py(y):
        return mt + (y_hi - y) / (y_hi - y_lo) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{fig.width}" '
        f'height="{fig.height}" viewBox="0 0 {fig.width} {fig.height}">',
        f'<rect width="{fig.width}" height="{fig.height}" fill="white"/>',
    ]
    if fig.title:
        out.append(
            f'<text x="{fig.width // 2}" y="20" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">{fig.title}</text>')

    # grid lines at fixed steps when requested (maps), otherwise ticks only
    if fig.grid_step is not None:
        gx, gy = fig.grid_step
        v = np.ceil(x_lo / gx) * gx
        while v <= x_hi + 1e-9:
            out.append(
                f'<line x1="{_fmt(px(v))}" y1="{mt}" x2="{_fmt(px(v))}" '
                f'y2="{mt + ph}" stroke="#dddddd" stroke-width="0.7"/>')
            v += gx
        v = np.ceil(y_lo / gy) * gy
        while v <= y_hi + 1e-9:
            out.append(
                f'<line x1="{ml}" y1="{_fmt(py(v))}" x2="{ml + pw}" '
                f'y2="{_fmt(py(v))}" stroke="#dddddd" stroke-width="0.7"/>')
            v += gy

    out.append(
        f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" '
        f'stroke="black" stroke-width="1"/>')

    for k in range(5):
        fx = x_lo + (x_hi - x_lo) * k / 4
        fy = y_lo + (y_hi - y_lo) * k / 4
        out.append(
            f'<text x="{_fmt(px(fx))}" y="{mt + ph + 18}" '
            f'text-anchor="middle" font-family="sans-serif" '
            f'font-size="11">{_tick_text(fx)}</text>')
        out.append(
            f'<text x="{ml - 6}" y="{_fmt(py(fy) + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{_tick_text(fy)}</text>')
    if fig.x_label:
        out.append(
            f'<text x="{ml + pw // 2}" y="{fig.height - 8}" '
            f'text-anchor="middle" font-family="sans-serif" '
            f'font-size="12">{fig.x_label}</text>')
    if fig.y_label:
        out.append(
            f'<text x="16" y="{mt + ph // 2}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12" '
            f'transform="rotate(-90 16 {mt + ph // 2})">{fig.y_label}</text>')

    for idx, s in enumerate(fig.series):
        color = s.color or _PALETTE[idx % len(_PALETTE)]
        xs = np.asarray(s.xs, dtype=float)
        ys = np.asarray(s.ys, dtype=float)
        if s.mode == "points":
            for x, y in zip(xs, ys):
                out.append(
                    f'<circle cx="{_fmt(px(x))}" cy="{_fmt(py(y))}" '
                    f'r="{s.radius}" fill="{color}" fill-opacity="0.8"/>')
        else:
            pts = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}"
                           for x, y in zip(xs, ys))
            out.append(
                f'<polyline points="{pts}" fill="none" stroke="{color}" '
                f'stroke-width="{s.width}"/>')
        if s.label:
            ly = mt + 16 + 16 * idx
            out.append(
                f'<rect x="{ml + 8}" y="{ly - 9}" width="10" height="10" '
                f'fill="{color}"/>')
            out.append(
                f'<text x="{ml + 22}" y="{ly}" font-family="sans-serif" '
                f'font-size="11">{s.label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
