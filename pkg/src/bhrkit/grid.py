"""Column chains on the width-x grid.

A construction is a list of :class:`Seg` pieces.  Each piece is a run of rows
of one residue class; consecutive pieces are joined by an edge of the stated
length.  The first piece is walked as written, later pieces are walked as
written if that joins up, otherwise reversed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .lengths import q_star


class ChainError(ValueError):
    """A piece could not be attached, or a label was visited twice."""


@dataclass(frozen=True)
class Seg:
    k: int
    lo: int = 0
    hi: int | None = None  # None means the top row of the column
    rev: bool = False
    bridge: int = 1  # length of the edge into this piece (ignored for the first)
    fixed: bool = False  # walk as written even when the reversed piece would also attach

    def rows(self, v: int, x: int) -> tuple[int, int]:
        top = q_star(v, x, self.k)
        hi = top if self.hi is None else self.hi
        if not 0 <= self.lo <= hi <= top:
            raise ChainError(f"rows {self.lo}..{hi} outside column {self.k} (top row {top})")
        return self.lo, hi

    def labels(self, v: int, x: int) -> list[int]:
        lo, hi = self.rows(v, x)
        out = [self.k + i * x for i in range(lo, hi + 1)]
        return out[::-1] if self.rev else out


def chain_with_flips(v: int, x: int, segs: Sequence[Seg]) -> tuple[list[int], list[bool]]:
    """Walk the pieces; also report which pieces were reversed to attach.

    When both ends of a piece could attach, the end in the same grid row as
    the current end wins (the serpentine choice), then the piece as written.
    """
    out: list[int] = []
    flips: list[bool] = []
    seen: set[int] = set()
    for i, seg in enumerate(segs):
        piece = seg.labels(v, x)
        flipped = False
        if i:
            end = out[-1]
            fits = [abs(piece[0] - end) == seg.bridge, abs(piece[-1] - end) == seg.bridge]
            if not any(fits):
                raise ChainError(
                    f"piece {i} (column {seg.k}) cannot attach to {end} by a {seg.bridge}-edge: "
                    f"its ends are {piece[0]} and {piece[-1]}"
                )
            if seg.fixed and fits[0]:
                flipped = False
            elif all(fits) and len(piece) > 1:
                flipped = piece[0] // x != end // x and piece[-1] // x == end // x
            else:
                flipped = not fits[0]
            if flipped:
                piece = piece[::-1]
        for ell in piece:
            if ell in seen:
                raise ChainError(f"label {ell} visited twice")
            seen.add(ell)
        out.extend(piece)
        flips.append(flipped)
    return out, flips


def chain(v: int, x: int, segs: Sequence[Seg]) -> list[int]:
    return chain_with_flips(v, x, segs)[0]


def _row_expr(row: int, top: int) -> str:
    d = top - row
    if row > 0 and 0 <= d <= 2:
        return "q*" if d == 0 else f"q*-{d}"
    return str(row)


def _bridge_expr(length: int, x: int) -> str:
    if length == 1:
        return "++"
    for name, value in (("x", x), ("x+1", x + 1), ("x-1", x - 1)):
        if length == value:
            return f"++[{name}]"
    return f"++[{length}]"


def to_notation(segs: Sequence[Seg], v: int, x: int) -> str:
    """Render a piece list as an expression in the Psi/++ notation.

    A piece that the chain reverses although it could attach as written is
    marked ``rev`` so that evaluating the expression gives the same path.
    """
    parts = []
    labels, flips = chain_with_flips(v, x, segs)
    pos = 0
    for i, seg in enumerate(segs):
        piece = seg.labels(v, x)
        ambiguous = False
        if i and len(piece) > 1:
            end = labels[pos - 1]
            ambiguous = abs(piece[0] - end) == seg.bridge and abs(piece[-1] - end) == seg.bridge
        pos += len(piece)
        lo, hi = seg.rows(v, x)
        top = q_star(v, x, seg.k)
        if seg.lo == 0 and seg.hi is None:
            term = f"Psi({seg.k})"
        elif lo == hi:
            term = f"Psi({seg.k}, {_row_expr(lo, top)})"
        else:
            term = f"Psi({seg.k}, {_row_expr(lo, top)}..{_row_expr(hi, top)})"
        if seg.rev != (ambiguous and flips[i]):
            term = "rev " + term
        parts.append(term if i == 0 else f"{_bridge_expr(seg.bridge, x)} {term}")
    return " ".join(parts)
