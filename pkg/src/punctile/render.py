"""Rendering: deterministic SVG for patches, matplotlib figures for the
report path.

SVG output is byte-stable for a fixed input: fixed attribute order, fixed
palette derivation, no timestamps.  Figures are for human inspection and
carry no determinism promise.
"""

from __future__ import annotations

from pathlib import Path as FsPath

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Rectangle

from .geometry import ORIGIN, Patch

# a colorblind-friendly cycle; labels are assigned in sorted order
_COLORS = (
    "#4477aa",
    "#ee6677",
    "#228833",
    "#ccbb44",
    "#66ccee",
    "#aa3377",
    "#bbbbbb",
    "#222255",
)


def default_palette(labels) -> dict[str, str]:
    ordered = sorted(set(labels))
    return {lab: _COLORS[i % len(_COLORS)] for i, lab in enumerate(ordered)}


def render_svg(patch: Patch, palette: dict[str, str] | None = None, cell: int = 16) -> str:
    """SVG 1.1 document: one rect per tile, y axis up, origin marked."""
    if palette is None:
        palette = default_palette(t.label for t in patch.tiles)
    xmin, ymin, xmax, ymax = patch.bbox()
    width = (xmax - xmin + 1) * cell
    height = (ymax - ymin + 1) * cell
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
    ]
    # tiles sorted (y, x): deterministic element order; svg y grows down,
    # so row ymax maps to the top
    for t in patch.tiles:
        sx = (t.pos.x - xmin) * cell
        sy = (ymax - t.pos.y) * cell
        lines.append(
            f'<rect x="{sx}" y="{sy}" width="{cell}" height="{cell}" '
            f'fill="{palette[t.label]}" stroke="#000000" stroke-width="1">'
            f"<title>{t.label} {t.pos.x} {t.pos.y}</title></rect>"
        )
    if ORIGIN in patch.cells:
        cx = (0 - xmin) * cell + cell // 2
        cy = (ymax - 0) * cell + cell // 2
        lines.append(
            f'<circle cx="{cx}" cy="{cy}" r="{max(cell // 5, 2)}" '
            f'fill="#000000"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def save_patch_figure(patch: Patch, path: str | FsPath, title: str = "") -> None:
    """Matplotlib rendering of a patch to an image file."""
    palette = default_palette(t.label for t in patch.tiles)
    xmin, ymin, xmax, ymax = patch.bbox()
    fig, ax = plt.subplots(figsize=(6, 6))
    for t in patch.tiles:
        ax.add_patch(
            Rectangle(
                (t.pos.x, t.pos.y),
                1,
                1,
                facecolor=palette[t.label],
                edgecolor="black",
                linewidth=0.3,
            )
        )
    if ORIGIN in patch.cells:
        ax.plot([0.5], [0.5], marker="o", color="black", markersize=4)
    ax.set_xlim(xmin, xmax + 1)
    ax.set_ylim(ymin, ymax + 1)
    ax.set_aspect("equal")
    ax.set_title(title)
    handles = [
        Rectangle((0, 0), 1, 1, facecolor=color, edgecolor="black")
        for color in palette.values()
    ]
    ax.legend(handles, list(palette), loc="upper right", fontsize="small")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def save_status_figure(counts: dict[str, int], path: str | FsPath, title: str) -> None:
    """Bar chart of pass/fail/indet counts for a report run."""
    fig, ax = plt.subplots(figsize=(4, 3))
    names = ["pass", "fail", "indet"]
    values = [counts.get(n, 0) for n in names]
    bars = ax.bar(names, values, color=["#228833", "#ee6677", "#ccbb44"])
    for bar, value in zip(bars, values):
        ax.text(
            bar.get_x() + bar.get_width() / 2,
            bar.get_height(),
            str(value),
            ha="center",
            va="bottom",
        )
    ax.set_title(title)
    ax.set_ylabel("checks")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
