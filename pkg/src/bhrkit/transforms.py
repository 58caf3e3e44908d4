"""Path surgery: relabelings, gluing operations, and local moves that trade one length for another.

Every function takes and returns immutable paths.  Operations with a pattern
precondition raise :class:`PatternMissing` naming the clause that failed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .lengths import MalformedInput, PathSeq, as_path


class PatternMissing(MalformedInput):
    """A local move could not find the run of labels it rewrites."""

    def __init__(self, operation: str, detail: str, anchor: int | None = None):
        self.operation = operation
        self.detail = detail
        self.anchor = anchor
        where = f" at anchor {anchor}" if anchor is not None else ""
        super().__init__(f"{operation}{where}: {detail}")


def complement(path: PathSeq | Sequence[int]) -> PathSeq:
    path = as_path(path)
    top = path.v - 1
    return PathSeq(tuple(top - ell for ell in path))


def translate(labels: Sequence[int], t: int) -> tuple[int, ...]:
    """Shift every label by t >= 0; the result is a path embedded in a larger K_n."""
    if t < 0:
        raise MalformedInput("translation offset must be non-negative")
    return tuple(ell + t for ell in labels)


def standardize(path: PathSeq | Sequence[int]) -> PathSeq:
    """Orient a path so it starts at 0, complementing first if only v-1 is an end."""
    path = as_path(path)
    labels = path.labels
    if labels[0] == 0:
        return path
    if labels[-1] == 0:
        return PathSeq(labels[::-1])
    top = path.v - 1
    if top in (labels[0], labels[-1]):
        return standardize(complement(path))
    raise MalformedInput("path has neither 0 nor v-1 as an end")


def _require_standard(path: PathSeq, name: str) -> PathSeq:
    if 0 not in (path.labels[0], path.labels[-1]):
        raise MalformedInput(f"{name} is not standard (no end labelled 0)")
    return path if path.labels[0] == 0 else PathSeq(path.labels[::-1])


def concatenate(g: PathSeq | Sequence[int], h: PathSeq | Sequence[int]) -> PathSeq:
    """Glue the complement of g to h shifted by |g|-1, sharing that label."""
    g = _require_standard(as_path(g), "g")
    h = _require_standard(as_path(h), "h")
    left = complement(g).labels[::-1]  # ends at |g|-1
    return PathSeq(left + translate(h.labels, g.v - 1)[1:])


def append_ones(g: PathSeq | Sequence[int], s: int) -> PathSeq:
    """Add s edges of length 1 while keeping the path standard (and perfect if it was)."""
    if s < 0:
        raise MalformedInput("cannot append a negative number of 1-edges")
    g = _require_standard(as_path(g), "g")
    if s == 0:
        return g
    return standardize(concatenate(g, range(s + 1)))


def insert_between_0_1(g: PathSeq | Sequence[int], h: PathSeq | Sequence[int]) -> PathSeq:
    """Splice h (from 0 to 1) into the 0-1 edge of g; one 1-edge is consumed."""
    g, h = as_path(g), as_path(h)
    pos = {ell: i for i, ell in enumerate(g.labels)}
    if g.v < 2 or abs(pos[0] - pos[1]) != 1:
        raise MalformedInput("g does not contain the edge between labels 0 and 1")
    if h.v < 2 or h.labels[0] != 0 or h.labels[-1] != 1:
        if h.v >= 2 and h.labels[0] == 1 and h.labels[-1] == 0:
            h = PathSeq(h.labels[::-1])
        else:
            raise MalformedInput("h must run from label 0 to label 1")
    top = g.v - 1
    comp = complement(g).labels
    i = comp.index(top)
    j = comp.index(top - 1)
    middle = translate(h.labels, top - 1)  # runs top-1 ... top
    if j == i + 1:
        middle = middle[::-1]
    lo, hi = min(i, j), max(i, j)
    return PathSeq(comp[:lo] + middle + comp[hi + 1 :])


@dataclass(frozen=True)
class BridgeParams:
    v1: int
    v2: int
    x: int
    b: int
    squash: bool = False

    def __post_init__(self) -> None:
        if self.v1 < 1 or self.v2 < 1 or self.b < 1:
            raise MalformedInput("bridge sizes and b must be positive")
        if self.squash:
            if self.x != self.v1 + self.v2 - 1 or (self.b - self.v1) % self.x:
                raise MalformedInput("squashed bridge needs x = v1+v2-1 and b = v1 (mod x)")
        elif self.x != self.v1 + self.v2 or (self.b - self.v1 - 1) % self.x:
            raise MalformedInput("bridge needs x = v1+v2 and b = v1+1 (mod x)")

    @property
    def v(self) -> int:
        return self.x + self.b


def column(v: int, x: int, k: int) -> list[int]:
    """The residue class k modulo x inside 0..v-1, bottom to top."""
    return list(range(k, v, x))


def bridge_partial_row(
    g: PathSeq | Sequence[int], h: PathSeq | Sequence[int], params: BridgeParams
) -> PathSeq:
    """Join realizations g and h through a grid of width x with b vertical edges.

    The columns named by h (mirrored) are walked first, then column 0 from its
    top down to 0, then the columns named by g.  In the plain mode the last two
    parts meet along the edge 0-1; in the squashed mode column 0 is followed
    directly by the column g_2.
    """
    g = _require_standard(as_path(g), "g")
    h = _require_standard(as_path(h), "h")
    if (g.v, h.v) != (params.v1, params.v2):
        raise MalformedInput("bridge sizes do not match the input paths")
    v, x = params.v, params.x
    first = [x - hj for hj in h.labels[:0:-1]]
    if params.squash:
        second = list(g.labels[1:])
    else:
        second = [gi + 1 for gi in g.labels]
    out: list[int] = []
    ascending = len(first) % 2 == 1
    for k in first:
        col = column(v, x, k)
        out.extend(col if ascending else col[::-1])
        ascending = not ascending
    out.extend(column(v, x, 0)[::-1])
    ascending = True
    for k in second:
        col = column(v, x, k)
        out.extend(col if ascending else col[::-1])
        ascending = not ascending
    return PathSeq(tuple(out))


def _adjacent(labels: Sequence[int], pos: dict[int, int], a: int, b: int) -> bool:
    return a in pos and b in pos and abs(pos[a] - pos[b]) == 1


def _run_present(labels: Sequence[int], pos: dict[int, int], run: Sequence[int]) -> bool:
    if any(ell not in pos for ell in run):
        return False
    idx = [pos[ell] for ell in run]
    steps = {j - i for i, j in zip(idx, idx[1:])}
    return steps == {1} or steps == {-1}


def _insert_between(labels: list[int], a: int, b: int, new: int) -> list[int]:
    i, j = labels.index(a), labels.index(b)
    lo = min(i, j)
    return labels[: lo + 1] + [new] + labels[lo + 1 :]


def gamma_move_up(path: PathSeq | Sequence[int], x: int, g: int) -> PathSeq:
    """Move g+1 next to g: two (x+1)-edges become two x-edges."""
    path = as_path(path)
    X = x + 1
    pos = {ell: i for i, ell in enumerate(path.labels)}
    if not _adjacent(path.labels, pos, g, g + X):
        raise PatternMissing("gamma_move_up", f"labels {g} and {g + X} are not adjacent", g)
    if not _run_present(path.labels, pos, (g + X + 1, g + 1, g + 2)):
        raise PatternMissing("gamma_move_up", f"run ({g + X + 1}, {g + 1}, {g + 2}) absent", g)
    rest = [ell for ell in path.labels if ell != g + 1]
    return PathSeq(tuple(_insert_between(rest, g, g + X, g + 1)))


def gamma_move_down(path: PathSeq | Sequence[int], x: int, g: int) -> PathSeq:
    """Move g between g-1 and g-x-1: two x-edges become two (x+1)-edges."""
    path = as_path(path)
    pos = {ell: i for i, ell in enumerate(path.labels)}
    if not _run_present(path.labels, pos, (g - x, g, g + 1)):
        raise PatternMissing("gamma_move_down", f"run ({g - x}, {g}, {g + 1}) absent", g)
    if not _adjacent(path.labels, pos, g - 1, g - x - 1):
        raise PatternMissing("gamma_move_down", f"labels {g - 1} and {g - x - 1} are not adjacent", g)
    rest = [ell for ell in path.labels if ell != g]
    return PathSeq(tuple(_insert_between(rest, g - 1, g - x - 1, g)))


def corner_cut(path: PathSeq | Sequence[int], x: int, modified: bool = False) -> PathSeq:
    """Trade a 1-edge and an (x+1)-edge for one x-edge at the top corner.

    The plain cut deletes the top label v-1 from the run (v-2, v-1, v-x-2).
    The modified cut keeps the order: when v-1 is an end and (v-3, v-2, v-x-3)
    is a run, v-2 moves to the end next to v-1, trading an (x+1)-edge for an
    x-edge.
    """
    path = as_path(path)
    labels = path.labels
    v = path.v
    pos = {ell: i for i, ell in enumerate(labels)}
    if not modified:
        if not _run_present(labels, pos, (v - 2, v - 1, v - x - 2)):
            raise PatternMissing("corner_cut", f"run ({v - 2}, {v - 1}, {v - x - 2}) absent")
        return PathSeq(tuple(ell for ell in labels if ell != v - 1))
    if labels[-1] != v - 1 and labels[0] != v - 1:
        raise PatternMissing("corner_cut", f"label {v - 1} is not an end")
    if not _run_present(labels, pos, (v - 3, v - 2, v - x - 3)):
        raise PatternMissing("corner_cut", f"run ({v - 3}, {v - 2}, {v - x - 3}) absent")
    rest = tuple(ell for ell in labels if ell != v - 2)
    if rest[-1] == v - 1:
        return PathSeq(rest + (v - 2,))
    return PathSeq((v - 2,) + rest)


def corner_flap(path: PathSeq | Sequence[int], x: int) -> PathSeq:
    """Insert a new top label v between v-1 and v-x-1, trading an x-edge for a 1-edge and an (x+1)-edge."""
    path = as_path(path)
    v = path.v
    pos = {ell: i for i, ell in enumerate(path.labels)}
    if not _adjacent(path.labels, pos, v - 1, v - x - 1):
        raise PatternMissing("corner_flap", f"labels {v - 1} and {v - x - 1} are not adjacent")
    return PathSeq(tuple(_insert_between(list(path.labels), v - 1, v - x - 1, v)))


def rotate_end(path: PathSeq | Sequence[int], drop: int, gain: int) -> PathSeq:
    """Reroute one end of the path to trade an edge of length ``drop`` for one of length ``gain``.

    If the path ends at e and some label u at distance ``gain`` from e is
    followed by an edge of length ``drop``, the tail after u is reversed so
    that u joins e directly.  The last end is tried before the first.
    """
    path = as_path(path)
    for labels, flip in ((path.labels, False), (path.labels[::-1], True)):
        end = labels[-1]
        for i in range(len(labels) - 2, -1, -1):
            u = labels[i]
            if abs(u - end) == gain and abs(labels[i + 1] - u) == drop:
                out = labels[: i + 1] + labels[:i:-1]
                return PathSeq(out[::-1] if flip else out)
    raise PatternMissing("rotate_end", f"no end can swap a {drop}-edge for a {gain}-edge")
