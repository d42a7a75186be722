"""Chart payloads for marginals and indifference curves.

The payload builders are pure data (rationals as strings) so the CLI and
the HTTP service can share them; rendering to image files is an optional
extra on top and imports matplotlib lazily.
"""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .model import Grid, UtaModel, format_rational


def indifference_polyline(
    model: UtaModel, i: int, j: int, level: Fraction
) -> list[tuple[Fraction, Fraction]]:
    """Vertices of {(x_i, x_j) : u_i(x_i) + u_j(x_j) = level} in plane (i, j).

    Returned left-to-right in x_i. Empty when the level is outside the
    reachable range. The curve is polygonal: vertices occur exactly where
    one marginal crosses a breakpoint value.
    """
    top_i = model.max_value(i)
    top_j = model.max_value(j)
    lo = max(Fraction(0), level - top_j)
    hi = min(top_i, level)
    if level < 0 or lo > hi:
        return []
    # candidate u_i levels: range ends plus every corner value of either marginal
    candidates = {lo, hi}
    for value in model.corner_values(i):
        if lo <= value <= hi:
            candidates.add(value)
    for value in model.corner_values(j):
        if lo <= level - value <= hi:
            candidates.add(level - value)
    points = []
    for t in sorted(candidates):
        x_i = model.invert_marginal(i, t)
        x_j = model.invert_marginal(j, level - t)
        assert x_i is not None and x_j is not None
        points.append((x_i, x_j))
    return points


def curve_payload(
    labeled: list[tuple[str, UtaModel]], i: int, j: int, levels: int = 5
) -> dict:
    """Indifference-curve bundle for one criteria plane.

    Levels are evenly spaced strictly inside (0, V) per model, where V is
    that model's top value on the plane, so every curve is non-empty.
    """
    grid = labeled[0][1].grid
    curves = []
    for label, model in labeled:
        top = model.max_value(i) + model.max_value(j)
        for step in range(1, levels + 1):
            level = top * step / (levels + 1)
            poly = indifference_polyline(model, i, j, level)
            curves.append(
                {
                    "model": label,
                    "level": format_rational(level),
                    "points": [[format_rational(x), format_rational(y)] for x, y in poly],
                }
            )
    return {
        "plane": [i, j],
        "axes": [grid.scale(i).name, grid.scale(j).name],
        "curves": curves,
    }


def marginal_payload(labeled: list[tuple[str, UtaModel]]) -> dict:
    """Cumulative marginal-value polylines, one per (model, criterion)."""
    grid = labeled[0][1].grid
    out = []
    for index, scale in enumerate(grid.scales, start=1):
        series = []
        for label, model in labeled:
            values = model.corner_values(index)
            series.append(
                {
                    "model": label,
                    "points": [
                        [format_rational(x), format_rational(v)]
                        for x, v in zip(scale.breakpoints, values)
                    ],
                }
            )
        out.append({"criterion": scale.name, "series": series})
    return {"marginals": out}


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_curves(payload: dict, path: str | Path) -> None:
    """Draw one curve-bundle payload to an image file."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5, 5))
    styles = {}
    for curve in payload["curves"]:
        label = curve["model"]
        if label not in styles:
            styles[label] = f"C{len(styles)}"
        xs = [float(Fraction(p[0])) for p in curve["points"]]
        ys = [float(Fraction(p[1])) for p in curve["points"]]
        ax.plot(xs, ys, color=styles[label], linewidth=1.2)
    for label, color in styles.items():
        ax.plot([], [], color=color, label=label)
    ax.set_xlabel(payload["axes"][0])
    ax.set_ylabel(payload["axes"][1])
    ax.set_title("indifference curves, plane ({}, {})".format(*payload["plane"]))
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_marginals(payload: dict, path: str | Path) -> None:
    """Draw all cumulative marginals as a row of subplots."""
    plt = _pyplot()
    blocks = payload["marginals"]
    fig, axes = plt.subplots(1, len(blocks), figsize=(4 * len(blocks), 3.5), squeeze=False)
    for ax, block in zip(axes[0], blocks):
        for k, series in enumerate(block["series"]):
            xs = [float(Fraction(p[0])) for p in series["points"]]
            ys = [float(Fraction(p[1])) for p in series["points"]]
            ax.plot(xs, ys, marker="o", markersize=3, color=f"C{k}", label=series["model"])
        ax.set_title(block["criterion"], fontsize=9)
        ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
