"""Bound-curve evaluation and CSV/SVG rendering.

A CurveSpec names a channel, a set of bounds, fixed parameters, and a
sweep over one parameter; build_curves evaluates every requested bound
at every sweep point and returns one RateCurve per bound.  Sweep points
are independent, so large grids are evaluated on a thread pool; output
order is fixed by the grid regardless of completion order.

The writers are deliberately plain: CSV with %.12g values and UNIX
newlines, and a fixed-size self-contained SVG line chart, so repeated
runs of the same spec produce byte-identical files.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import sticky, synthesis
from .errors import DomainError
from .numeric import entropy

__all__ = [
    "CurveSpec",
    "RateCurve",
    "STICKY_BOUNDS",
    "SYNTHESIS_BOUNDS",
    "build_curves",
    "rows_to_csv",
    "write_csv",
    "render_svg",
    "write_svg",
]

STICKY_BOUNDS = ("gv", "sp", "lb", "capacity")
SYNTHESIS_BOUNDS = ("gv", "lb", "capacity")

_PARALLEL_THRESHOLD = 64
_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")

_LABELS = {
    "gv": "gv",
    "sp": "sp",
    "lb": "lb",
    "capacity": "capacity",
}


@dataclass(frozen=True)
class CurveSpec:
    """One sweep request: channel, bounds, fixed params, sweep grid."""

    channel: str
    bounds: tuple[str, ...]
    sweep_param: str
    lo: float
    hi: float
    steps: int
    fixed: dict[str, float] = field(default_factory=dict)

    def validate(self) -> None:
        if self.channel not in ("sticky", "synthesis"):
            raise DomainError(f"unknown channel {self.channel!r}")
        allowed = STICKY_BOUNDS if self.channel == "sticky" else SYNTHESIS_BOUNDS
        if not self.bounds:
            raise DomainError("at least one bound must be requested")
        for b in self.bounds:
            if b not in allowed:
                raise DomainError(
                    f"bound {b!r} not available for {self.channel} "
                    f"(choose from {', '.join(allowed)})"
                )
        if self.steps < 2:
            raise DomainError(f"sweep needs steps >= 2, got {self.steps}")
        if not self.lo < self.hi:
            raise DomainError(f"sweep range must satisfy lo < hi, got {self.lo}:{self.hi}")
        if self.channel == "sticky":
            if self.sweep_param != "beta":
                raise DomainError("sticky curves sweep the beta parameter")
            if self.lo < 0.0 or self.hi > 0.5:
                raise DomainError(
                    f"beta sweep must stay within [0, 0.5], got {self.lo}:{self.hi}"
                )
        else:
            if self.sweep_param != "delta":
                raise DomainError("synthesis curves sweep the delta parameter")
            if "tau" not in self.fixed:
                raise DomainError("synthesis curves need a fixed tau")
            if self.fixed["tau"] <= 1.0:
                raise DomainError(f"tau must be > 1, got {self.fixed['tau']}")
            if self.lo < 0.0 or self.hi > 1.0:
                raise DomainError(
                    f"delta sweep must stay within [0, 1], got {self.lo}:{self.hi}"
                )

    def grid(self) -> list[float]:
        step = (self.hi - self.lo) / (self.steps - 1)
        return [self.lo + k * step for k in range(self.steps)]


@dataclass(frozen=True)
class RateCurve:
    """One bound evaluated over the sweep grid."""

    label: str
    rows: tuple[tuple[float, float, tuple[str, ...]], ...]


def _eval_sticky(bound: str, beta: float) -> tuple[float, tuple[str, ...]]:
    if bound == "gv":
        rate, _ = sticky.gv_rate(beta)
        flags = ("saturated",) if rate == 0.0 and beta > 0.0 else ()
        return rate, flags
    if bound == "sp":
        return sticky.sp_rate(beta), ()
    if bound == "lb":
        value = sticky.simple_lb_rate(beta)
        return value, ("boundary",) if beta >= 0.25 else ()
    if bound == "capacity":
        return 1.0, ()
    raise DomainError(f"unknown sticky bound {bound!r}")


def _eval_synthesis(bound: str, tau: float, delta: float) -> tuple[float, tuple[str, ...]]:
    if bound == "gv":
        raw = 2.0 * synthesis.capacity(tau) - synthesis.ball_rate_upper(tau, delta)
        flags = ["upper-bound"]
        if tau < 2.5 and delta >= synthesis.delta_max(tau)[0]:
            flags.append("saturated")
        if raw < 0.0:
            flags.append("floored")
        return max(raw, 0.0), tuple(flags)
    if bound == "lb":
        raw = synthesis.capacity(tau) - entropy(delta) - delta * math.log2(3.0)
        return max(raw, 0.0), ("floored",) if raw < 0.0 else ()
    if bound == "capacity":
        return synthesis.capacity(tau), ()
    raise DomainError(f"unknown synthesis bound {bound!r}")


def build_curves(spec: CurveSpec) -> list[RateCurve]:
    """Evaluate every requested bound over the sweep grid."""
    spec.validate()
    grid = spec.grid()

    def eval_point(x: float) -> list[tuple[float, tuple[str, ...]]]:
        if spec.channel == "sticky":
            return [_eval_sticky(b, x) for b in spec.bounds]
        tau = spec.fixed["tau"]
        return [_eval_synthesis(b, tau, x) for b in spec.bounds]

    if len(grid) > _PARALLEL_THRESHOLD:
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(eval_point, grid))
    else:
        results = [eval_point(x) for x in grid]

    curves = []
    for idx, bound in enumerate(spec.bounds):
        rows = tuple(
            (x, results[k][idx][0], results[k][idx][1]) for k, x in enumerate(grid)
        )
        curves.append(RateCurve(label=_LABELS[bound], rows=rows))
    return curves


def _fmt(value: float) -> str:
    return "%.12g" % value


def rows_to_csv(spec: CurveSpec, curves: list[RateCurve]) -> str:
    """CSV text: sweep param, one value column per bound, merged flags."""
    header = [spec.sweep_param] + [c.label for c in curves] + ["flags"]
    lines = [",".join(header)]
    for k in range(len(curves[0].rows)):
        x = curves[0].rows[k][0]
        cells = [_fmt(x)]
        tokens: list[str] = []
        for c in curves:
            _, y, flags = c.rows[k]
            cells.append(_fmt(y))
            tokens.extend(f"{c.label}:{f}" for f in flags)
        cells.append(";".join(tokens))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def write_csv(path: str, spec: CurveSpec, curves: list[RateCurve]) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(rows_to_csv(spec, curves))


def _svg_escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def render_svg(spec: CurveSpec, curves: list[RateCurve]) -> str:
    """Self-contained 800x600 line chart, one path per curve."""
    width, height = 800, 600
    left, right, top, bottom = 80, 30, 30, 60
    plot_w = width - left - right
    plot_h = height - top - bottom

    x_lo, x_hi = spec.lo, spec.hi
    y_values = [row[1] for c in curves for row in c.rows if math.isfinite(row[1])]
    y_lo = 0.0
    y_hi = max(y_values) if y_values else 1.0
    if y_hi <= y_lo:
        y_hi = y_lo + 1.0
    y_hi *= 1.05

    def sx(x: float) -> float:
        return left + (x - x_lo) / (x_hi - x_lo) * plot_w

    def sy(y: float) -> float:
        return top + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{left}" y="{top}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="black" stroke-width="1"/>',
    ]

    ticks = 5
    for k in range(ticks + 1):
        xv = x_lo + (x_hi - x_lo) * k / ticks
        px = sx(xv)
        parts.append(
            f'<line x1="{px:.2f}" y1="{top + plot_h}" x2="{px:.2f}" '
            f'y2="{top + plot_h + 6}" stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{px:.2f}" y="{top + plot_h + 22}" font-size="13" '
            f'font-family="sans-serif" text-anchor="middle">{_fmt_tick(xv)}</text>'
        )
        yv = y_lo + (y_hi - y_lo) * k / ticks
        py = sy(yv)
        parts.append(
            f'<line x1="{left - 6}" y1="{py:.2f}" x2="{left}" y2="{py:.2f}" '
            'stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{left - 10}" y="{py + 4:.2f}" font-size="13" '
            f'font-family="sans-serif" text-anchor="end">{_fmt_tick(yv)}</text>'
        )

    x_label = spec.sweep_param
    parts.append(
        f'<text x="{left + plot_w / 2:.2f}" y="{height - 15}" font-size="15" '
        f'font-family="sans-serif" text-anchor="middle">{_svg_escape(x_label)}</text>'
    )
    parts.append(
        f'<text x="22" y="{top + plot_h / 2:.2f}" font-size="15" '
        f'font-family="sans-serif" text-anchor="middle" '
        f'transform="rotate(-90 22 {top + plot_h / 2:.2f})">rate (bits/symbol)</text>'
    )

    for idx, curve in enumerate(curves):
        color = _PALETTE[idx % len(_PALETTE)]
        points = " ".join(
            f"{sx(x):.2f},{sy(y):.2f}" for x, y, _ in curve.rows if math.isfinite(y)
        )
        parts.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" '
            'stroke-width="2"/>'
        )

    legend_x = left + plot_w - 150
    legend_y = top + 14
    for idx, curve in enumerate(curves):
        color = _PALETTE[idx % len(_PALETTE)]
        y0 = legend_y + idx * 20
        parts.append(
            f'<line x1="{legend_x}" y1="{y0}" x2="{legend_x + 28}" y2="{y0}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{legend_x + 34}" y="{y0 + 4}" font-size="13" '
            f'font-family="sans-serif">{_svg_escape(curve.label)}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _fmt_tick(value: float) -> str:
    return "%.4g" % value


def write_svg(path: str, spec: CurveSpec, curves: list[RateCurve]) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(render_svg(spec, curves))
