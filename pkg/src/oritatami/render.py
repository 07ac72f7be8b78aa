"""Conformation rendering: SVG (circles, path polyline, dashed bonds) and a
plain offset-row ASCII sketch. Output is byte-stable for identical inputs."""

from __future__ import annotations

import zlib
from dataclasses import dataclass

from .folding import Conformation
from .grid import to_cartesian


@dataclass(frozen=True)
class RenderOptions:
    format: str = "svg"  # "svg" or "ascii"
    scale: float = 40.0
    show_bonds: bool = True
    label_beads: bool = True

    def __post_init__(self):
        if self.format not in ("svg", "ascii"):
            raise ValueError(f"unknown render format {self.format!r}")
        if self.scale <= 0:
            raise ValueError("scale must be positive")


def render(c: Conformation, opts: RenderOptions = RenderOptions()) -> str:
    if opts.format == "ascii":
        return render_ascii(c, opts)
    return render_svg(c, opts)


def _bead_color(bead: str) -> str:
    # Deterministic per-name hue; cosmetic only.
    hue = zlib.crc32(bead.encode("utf-8")) % 360
    return f"hsl({hue},60%,72%)"


def render_svg(c: Conformation, opts: RenderOptions = RenderOptions()) -> str:
    s = opts.scale
    pts = [to_cartesian(p) for p in c.path]
    if not pts:
        return (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="10" height="10"></svg>\n'
        )
    xs = [x for x, _ in pts]
    ys = [y for _, y in pts]
    pad = 1.0
    minx, maxy = min(xs) - pad, max(ys) + pad
    width = (max(xs) - min(xs) + 2 * pad) * s
    height = (max(ys) - min(ys) + 2 * pad) * s

    def sx(x: float) -> str:
        return f"{(x - minx) * s:.2f}"

    def sy(y: float) -> str:
        return f"{(maxy - y) * s:.2f}"  # SVG y grows downward

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:.2f}" height="{height:.2f}">',
    ]
    if len(pts) > 1:
        poly = " ".join(f"{sx(x)},{sy(y)}" for x, y in pts)
        lines.append(
            f'  <polyline points="{poly}" fill="none" stroke="#444444" stroke-width="{0.08 * s:.2f}"/>'
        )
    if opts.show_bonds:
        for i, j in sorted(c.bonds):
            (x1, y1), (x2, y2) = pts[i], pts[j]
            lines.append(
                f'  <line x1="{sx(x1)}" y1="{sy(y1)}" x2="{sx(x2)}" y2="{sy(y2)}" '
                f'stroke="#cc3333" stroke-width="{0.06 * s:.2f}" '
                f'stroke-dasharray="{0.15 * s:.2f},{0.1 * s:.2f}"/>'
            )
    for (x, y), bead in zip(pts, c.beads):
        lines.append(
            f'  <circle cx="{sx(x)}" cy="{sy(y)}" r="{0.3 * s:.2f}" '
            f'fill="{_bead_color(bead)}" stroke="#222222" stroke-width="{0.03 * s:.2f}"/>'
        )
    if opts.label_beads:
        for (x, y), bead in zip(pts, c.beads):
            lines.append(
                f'  <text x="{sx(x)}" y="{sy(y)}" font-size="{0.25 * s:.2f}" '
                f'text-anchor="middle" dominant-baseline="central">{bead}</text>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_ascii(c: Conformation, opts: RenderOptions = RenderOptions()) -> str:
    """Bead names on offset rows (one text row per grid row, half-cell shifts)."""
    if not c.path:
        return ""
    cell = max(len(b) for b in c.beads) + 1
    xs = [to_cartesian(p)[0] for p in c.path]
    minx = min(xs)
    rows: dict[int, list[tuple[int, str]]] = {}
    for p, bead, x in zip(c.path, c.beads, xs):
        col = round((x - minx) * cell)
        rows.setdefault(p.y, []).append((col, bead))
    lines = []
    for y in sorted(rows, reverse=True):
        line: list[str] = []
        for col, bead in sorted(rows[y]):
            if len(line) < col:
                line.extend(" " * (col - len(line)))
            line.extend(bead)
        lines.append("".join(line).rstrip())
    return "\n".join(lines) + "\n"
