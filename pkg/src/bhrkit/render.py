"""Grid diagrams of paths: label l sits at column l mod x, row l // x (row 0 at the bottom)."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence
from xml.sax.saxutils import escape

from .lengths import MalformedInput, PathSeq, as_path


class EdgeClass(enum.Enum):
    HORIZONTAL = "horizontal"  # length 1 inside a row
    VERTICAL = "vertical"  # length x
    DIAGONAL = "diagonal"  # neighbouring columns in neighbouring rows
    WRAP = "wrap"  # length 1 from the end of one row to the start of the next
    ARC = "arc"  # anything else


@dataclass(frozen=True)
class GridLayout:
    v: int
    width: int

    def __post_init__(self) -> None:
        if self.width < 2:
            raise MalformedInput("grid width must be at least 2")
        if self.v < 1:
            raise MalformedInput("a grid needs at least one label")

    @property
    def rows(self) -> int:
        return (self.v + self.width - 1) // self.width

    def place(self, label: int) -> tuple[int, int]:
        return label % self.width, label // self.width

    def classify(self, a: int, b: int) -> EdgeClass:
        (ca, ra), (cb, rb) = self.place(a), self.place(b)
        dc, dr = abs(ca - cb), abs(ra - rb)
        if dr == 0 and dc == 1:
            return EdgeClass.HORIZONTAL
        if dc == 0 and dr == 1:
            return EdgeClass.VERTICAL
        if dc == 1 and dr == 1:
            return EdgeClass.DIAGONAL
        if abs(a - b) == 1:
            return EdgeClass.WRAP
        return EdgeClass.ARC


def edges(path: PathSeq, layout: GridLayout) -> list[tuple[int, int, EdgeClass]]:
    return [(a, b, layout.classify(a, b)) for a, b in zip(path.labels, path.labels[1:])]


def render_ascii(path: PathSeq | Sequence[int], width: int) -> str:
    """Fixed-pitch drawing; edges that are not lattice steps are listed under the grid."""
    path = as_path(path)
    layout = GridLayout(path.v, width)
    w = len(str(path.v - 1))
    pitch = w + 3
    line_len = (width - 1) * pitch + w
    horiz: set[tuple[int, int]] = set()  # (column, row) of left end
    vert: set[tuple[int, int]] = set()  # (column, row) of lower end
    diag: dict[tuple[int, int], str] = {}  # (left column, lower row) -> char
    notes: list[str] = []
    for a, b, cls in edges(path, layout):
        (ca, ra), (cb, rb) = layout.place(a), layout.place(b)
        if cls is EdgeClass.HORIZONTAL:
            horiz.add((min(ca, cb), ra))
        elif cls is EdgeClass.VERTICAL:
            vert.add((ca, min(ra, rb)))
        elif cls is EdgeClass.DIAGONAL:
            key = (min(ca, cb), min(ra, rb))
            rising = (ca - cb) * (ra - rb) > 0
            char = "/" if rising else "\\"
            diag[key] = "X" if diag.get(key, char) != char else char
        else:
            notes.append(f"{cls.value} {a}~{b} (length {abs(a - b)})")

    lines: list[str] = []
    for r in range(layout.rows - 1, -1, -1):
        row = [" "] * line_len
        for c in range(width):
            label = r * width + c
            if label >= path.v:
                continue
            text = str(label).rjust(w)
            row[c * pitch : c * pitch + w] = text
            if (c, r) in horiz:
                row[c * pitch + w : c * pitch + w + 3] = "---"
        lines.append("".join(row).rstrip())
        if r == 0:
            break
        between = [" "] * line_len
        for c in range(width):
            if (c, r - 1) in vert:
                between[c * pitch + w - 1] = "|"
            if (c, r - 1) in diag:
                between[c * pitch + w + 1] = diag[(c, r - 1)]
        lines.append("".join(between).rstrip())
    header = f"v={path.v} width={width} ends {path.labels[0]} .. {path.labels[-1]}"
    return "\n".join([header, *lines, *notes]) + "\n"


def render_svg(path: PathSeq | Sequence[int], width: int, spacing: int = 40, margin: int = 30) -> str:
    """A self-contained SVG drawing of the path on the lattice."""
    path = as_path(path)
    layout = GridLayout(path.v, width)
    rows = layout.rows
    w = 2 * margin + (width - 1) * spacing
    h = 2 * margin + (rows - 1) * spacing

    def xy(label: int) -> tuple[float, float]:
        c, r = layout.place(label)
        return margin + c * spacing, margin + (rows - 1 - r) * spacing

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" width="{w}" height="{h}">',
        '<g fill="none" stroke="black" stroke-width="2" stroke-linecap="round">',
    ]
    for a, b, cls in edges(path, layout):
        (x1, y1), (x2, y2) = xy(a), xy(b)
        if cls in (EdgeClass.HORIZONTAL, EdgeClass.VERTICAL, EdgeClass.DIAGONAL):
            out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
        elif y1 == y2:
            lift = min(margin - 4, 8 + abs(x2 - x1) / 4)
            out.append(f'<path d="M {x1} {y1} Q {(x1 + x2) / 2} {y1 - 2 * lift} {x2} {y2}"/>')
        else:
            mx, my = (x1 + x2) / 2, (y1 + y2) / 2
            bend = spacing * 0.3
            out.append(f'<path d="M {x1} {y1} Q {mx + bend} {my - bend} {x2} {y2}" stroke-dasharray="4 3"/>')
    out.append("</g>")
    out.append('<g fill="black">')
    ends = {path.labels[0], path.labels[-1]}
    for label in range(path.v):
        cx, cy = xy(label)
        radius = 5 if label in ends else 3
        out.append(f'<circle cx="{cx}" cy="{cy}" r="{radius}"/>')
    out.append("</g>")
    out.append('<g font-family="sans-serif" font-size="10" fill="black">')
    for label in sorted({0, width - 1, path.v - 1} & set(range(path.v))):
        cx, cy = xy(label)
        out.append(f'<text x="{cx + 5}" y="{cy + 13}">{escape(str(label))}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_grid(path: PathSeq | Sequence[int], width: int, fmt: str = "ascii") -> str:
    if fmt == "ascii":
        return render_ascii(path, width)
    if fmt == "svg":
        return render_svg(path, width)
    raise MalformedInput(f"unknown format {fmt!r}; use ascii or svg")
