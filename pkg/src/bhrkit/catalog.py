"""Named constructions of standard linear realizations, and the dispatcher that picks one.

Every public builder returns a :class:`Certificate` that has already been
checked against the requested multiset.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from . import transforms as tf
from .grid import ChainError, Seg, chain, to_notation
from .lengths import (
    Certificate,
    LengthMultiset,
    MalformedInput,
    PathSeq,
    RealizationKind,
    admissibility_violation,
    certify,
    fauxset_necessity,
    verify_realization,
)


class Strategy(str, enum.Enum):
    H1 = "H1"
    H2 = "H2"
    H3 = "H3"
    H4 = "H4"
    H3Prime = "H3Prime"
    G1 = "G1"
    G2 = "G2"
    SmallB = "SmallB"
    SmallC = "SmallC"
    Consecutive = "Consecutive"
    H5 = "H5"
    H6 = "H6"
    H7 = "H7"
    OmegaConcat = "OmegaConcat"
    XEquals2 = "XEquals2"
    EvenX = "EvenX"
    FinalEdge = "FinalEdge"
    Support45 = "Support45"
    Oracle = "Oracle"


class NotApplicable(MalformedInput):
    """A construction was asked for parameters outside its stated range."""


def _need(condition: bool, message: str) -> None:
    if not condition:
        raise NotApplicable(message)


# --- omega -----------------------------------------------------------------


def omega(x: int, b: int) -> int:
    """Fewest 1-edges in a standard linear realization of {1^a, x^b}."""
    if x < 2:
        raise MalformedInput("omega needs x >= 2")
    if b < 0:
        raise MalformedInput("omega needs b >= 0")
    q, r = divmod(b, x)
    if x % 2 == 0 or r % 2 == 0 or q == 0 or r == 1:
        return x - 1
    return x


# --- column chains ------------------------------------------------------------


def segs_h1(v: int, x: int) -> list[Seg]:
    return [Seg(k) for k in range(x)]


def segs_h2(v: int, x: int) -> list[Seg]:
    return [Seg(0)] + [Seg(k) for k in range(x - 1, 0, -1)]


def _curl(v: int, x: int, k: int, tail: int, at_top: bool = True) -> list[Seg]:
    """Visit column k at one label, then column ``tail``, then the rest of column k."""
    top = q_top(v, x, k)
    if at_top:
        return [Seg(k, top, top), Seg(tail), Seg(k, 0, top - 1)]
    return [Seg(k, 0, 0), Seg(tail), Seg(k, 1, top)]


def q_top(v: int, x: int, k: int) -> int:
    from .lengths import q_star

    return q_star(v, x, k)


def segs_h3(v: int, x: int) -> list[Seg]:
    return [Seg(0)] + [Seg(k) for k in range(x - 1, 2, -1)] + _curl(v, x, 2, 1)


def segs_h3_prime(v: int, x: int) -> list[Seg]:
    return [Seg(0)] + [Seg(k) for k in range(x - 1, 2, -1)] + _curl(v, x, 2, 1, at_top=False)


def segs_h4(v: int, x: int) -> list[Seg]:
    head = [Seg(k) for k in range(x - 2)]
    top = q_top(v, x, x - 2)
    if v % x != x - 1:
        return head + _curl(v, x, x - 2, x - 1)
    return head + [Seg(x - 2, top - 1, top), Seg(x - 1), Seg(x - 2, 0, top - 2)]


def segs_g1(x: int) -> list[Seg]:
    return [Seg(0)] + [Seg(k, bridge=x - 1, fixed=True) for k in range(1, x)]


def segs_g2(x: int) -> list[Seg]:
    return [Seg(0)] + [Seg(k, bridge=x + 1) for k in range(x - 1, 0, -1)]


def segs_h5(v: int, y: int, x: int) -> list[Seg]:
    return (
        [Seg(i) for i in range(y - x - 1)]
        + [Seg(y - 2, bridge=x), Seg(y - 1)]
        + [Seg(i, bridge=x if i == y - x - 1 else 1) for i in range(y - x - 1, y - 2)]
    )


def segs_h6(v: int, y: int) -> list[Seg]:
    top = q_top(v, y, y - 1)
    return (
        [Seg(i) for i in range(y - 2)]
        + [Seg(y - 1, top, top, bridge=2), Seg(y - 2), Seg(y - 1, 0, top - 1)]
    )


def segs_h7(v: int, y: int, x: int) -> list[Seg]:
    head = (
        [Seg(i) for i in range(y - x - 1)]
        + [Seg(y - 2, bridge=x), Seg(y - 1)]
        + [Seg(i, bridge=x if i == y - x - 1 else 1) for i in range(y - x - 1, y - 4)]
    )
    k = y - 4
    top = q_top(v, y, k)
    if (v - 1 - y) % y != y - 4:  # c mod y, with v = y + c + 1
        return head + _curl(v, y, k, y - 3)
    return head + [Seg(k, top - 1, top), Seg(y - 3), Seg(k, 0, top - 2)]


@dataclass(frozen=True)
class GridConstruction:
    """A construction given as a column chain, with the width it is drawn at."""

    name: str
    v: int
    width: int
    segs: tuple[Seg, ...]

    def path(self) -> PathSeq:
        return PathSeq(tuple(chain(self.v, self.width, self.segs)))

    def notation(self) -> str:
        return to_notation(self.segs, self.v, self.width)


def grid_construction(name: str, v: int, x: int, y: int | None = None) -> GridConstruction:
    """Look up a chain by name: h1..h4, h3', g1, g2 take (v, x); h5 and h7 take (v, y, x); h6 takes (v, y)."""
    builders: dict[str, Callable[[], tuple[int, list[Seg]]]] = {
        "h1": lambda: (x, segs_h1(v, x)),
        "h2": lambda: (x, segs_h2(v, x)),
        "h3": lambda: (x, segs_h3(v, x)),
        "h3'": lambda: (x, segs_h3_prime(v, x)),
        "h4": lambda: (x, segs_h4(v, x)),
        "g1": lambda: (x, segs_g1(x)),
        "g2": lambda: (x, segs_g2(x)),
        "h5": lambda: (y, segs_h5(v, y, x)),
        "h6": lambda: (y, segs_h6(v, y)),
        "h7": lambda: (y, segs_h7(v, y, x)),
    }
    if name not in builders:
        raise MalformedInput(f"unknown construction {name!r}")
    if name in ("h5", "h6", "h7") and y is None:
        raise MalformedInput(f"{name} needs the long length y")
    width, segs = builders[name]()
    return GridConstruction(name, v, width, tuple(segs))


def _grid(name: str, v: int, x: int, y: int | None = None) -> PathSeq:
    try:
        return grid_construction(name, v, x, y).path()
    except ChainError as exc:
        raise NotApplicable(f"{name} does not close up at v={v}: {exc}") from exc


# --- omega-constructions --------------------------------------------------------


def omega_path(x: int, b: int) -> tuple[Strategy, PathSeq]:
    """The standard realization of {1^omega(x,b), x^b} built in the proof of the omega formula."""
    w = omega(x, b)
    v = w + b + 1
    if w == x:
        return Strategy.H3, _grid("h3", v, x)
    if (b % x) % 2 == 0:
        return Strategy.H1, _grid("h1", v, x)
    return Strategy.H2, _grid("h2", v, x)


def _ones(a: int, x: int, b: int) -> LengthMultiset:
    return LengthMultiset.of({1: a, x: b})


def build_omega_realization(x: int, b: int) -> Certificate:
    strategy, path = omega_path(x, b)
    return certify(path, _ones(omega(x, b), x, b), strategy.value)


def standard_two(x: int, b: int, a: int) -> tuple[Strategy, PathSeq]:
    """Standard realization of {1^a, x^b}: an omega-construction with 1-edges appended."""
    if b == 0:
        return Strategy.H1, PathSeq(tuple(range(a + 1)))
    w = omega(x, b)
    _need(a >= w, f"{{1^{a},{x}^{b}}} needs at least omega={w} 1-edges for a standard realization")
    strategy, path = omega_path(x, b)
    return strategy, tf.append_ones(path, a - w)


def trim_leading_ones(path: PathSeq, s: int) -> PathSeq:
    """Drop s 1-edges at the 0 end; the path must start 0, 1, ..., s."""
    if s < 0:
        raise MalformedInput("cannot trim a negative number of 1-edges")
    path = tf.standardize(path)
    if tuple(path.labels[: s + 1]) != tuple(range(s + 1)):
        raise NotApplicable(f"path does not start with {s} consecutive 1-edges")
    return PathSeq(tuple(ell - s for ell in path.labels[s:]))


def prepend_ones(path: PathSeq, s: int) -> PathSeq:
    """Add s 1-edges at the 0 end, keeping the final edge."""
    return tf.concatenate(range(s + 1), path) if s else path


def build_final_edge_realization(x: int, b: int, last_edge: str) -> Certificate:
    """Standard realization of {1^(x-1), x^b} ending in an x-edge, or of {1^x, x^b} ending in a 1-edge."""
    if last_edge in ("x", "x_edge"):
        _need(b >= 2, "an x-edge ending needs b >= 2")
        _need(omega(x, b) == x - 1, f"{{1^{x - 1},{x}^{b}}} has no standard realization")
        v = x + b
        for name in ("h2", "h1") if b <= x - 1 else ("h1", "h2"):
            try:
                path = _grid(name, v, x)
            except NotApplicable:
                continue
            if abs(path[-1] - path[-2]) == x:
                return certify(path, _ones(x - 1, x, b), Strategy.FinalEdge.value)
        raise NotApplicable(f"no omega-construction of {{1^{x - 1},{x}^{b}}} ends in an x-edge")
    if last_edge != "one":
        raise MalformedInput(f"last_edge must be 'one' or 'x_edge', not {last_edge!r}")
    _need(0 <= b <= x, "a 1-edge ending with a = x needs b <= x")
    for path in _one_ending_candidates(x, b):
        if abs(path[-1] - path[-2]) == 1:
            return certify(path, _ones(x, x, b), Strategy.FinalEdge.value)
    raise NotApplicable(f"no standard realization of {{1^{x},{x}^{b}}} ending in a 1-edge was found")


def _one_ending_candidates(x: int, b: int) -> Iterator[PathSeq]:
    if b == 0:
        yield PathSeq(tuple(range(x + 1)))
        return
    try:
        if b == 1 or (b % 2 == 0 and b < x):
            yield prepend_ones(omega_path(x, b)[1], 1)
        elif b % 2:
            yield _grid("h3", x + b + 1, x)
        else:
            yield _grid("h3'", x + b + 1, x)
    except NotApplicable:
        pass
    # x = 2 has no room for a tail curl; the perfect block [0,2,1,3] plus a 1-edge serves b = 2.
    if (x, b) == (2, 2):
        yield tf.append_ones(perfect_gridlock(2, "g1").path, 1)


def perfect_gridlock(x: int, variant: str) -> Certificate:
    """g1 realizes {(x-1)^(x-1), x^x} on 2x labels; g2 realizes {x^(x+2), (x+1)^(x-1)} on 2x+2 labels."""
    if x < 2:
        raise MalformedInput("gridlock blocks need x >= 2")
    if variant == "g1":
        path = _grid("g1", 2 * x, x)
        target = LengthMultiset.of({x - 1: x - 1, x: x})
        return certify(path, target, Strategy.G1.value)
    if variant == "g2":
        path = _grid("g2", 2 * x + 2, x)
        target = LengthMultiset.of({x: x + 2, x + 1: x - 1})
        return certify(path, target, Strategy.G2.value)
    raise MalformedInput(f"variant must be g1 or g2, not {variant!r}")


# --- gamma-move families ------------------------------------------------------


def _exchange(
    path: PathSeq,
    move: Callable[[PathSeq, int, int], PathSeq],
    x: int,
    preferred: Iterable[int],
    count: int,
) -> PathSeq:
    """Apply ``count`` moves, taking anchors from ``preferred`` first and then any other label."""
    done = 0
    tried: set[int] = set()
    for g in list(preferred) + list(range(path.v)):
        if done == count:
            break
        if g in tried:
            continue
        tried.add(g)
        try:
            path = move(path, x, g)
        except tf.PatternMissing:
            continue
        done += 1
    if done < count:
        raise NotApplicable(f"only {done} of {count} gamma-moves were available")
    return path


def _small_b_plan(x: int, b: int, c: int) -> tuple[list[int], bool, int]:
    """Anchors, whether the cut is the modified one, and the resulting 1-edge count."""
    X, B = x + 1, b + c
    q, r = divmod(B, X)
    if B < X:
        anchors = list(range(0 if r % 2 == 0 else 1, B - 1, 2))
        modified = False
    elif r % 2 == 0:
        anchors = list(range(0, x - 2 if X % 2 == 0 else x - 3, 2))
        modified = X % 2 == 1 and r == 0
    elif X % 2 == 0:
        anchors = list(range(1, x - 1, 2))
        modified = False
    elif r == 1:
        anchors = list(range(0, x - 1, 2))
        modified = False
    else:
        anchors = list(range(2, x - 1, 2))
        modified = False
    ones = omega(X, B)
    if b % 2 and not modified:
        ones -= 1
    return anchors, modified, ones


def small_b_ones(x: int, b: int, c: int) -> int:
    """1-edges produced by the small-b construction before any are appended."""
    return _small_b_plan(x, b, c)[2]


def realize_small_b(a: int, x: int, b: int, c: int) -> Certificate:
    """Turn b of the (x+1)-edges of an omega-construction into x-edges.

    With fewer 1-edges than the construction yields, leading 1-edges are
    trimmed when the result starts 0, 1, ...
    """
    _need(x >= 2 and 0 < b < x and c > 0, "small-b construction needs 0 < b < x and c > 0")
    anchors, modified, ones = _small_b_plan(x, b, c)
    _need(a >= 0, "a must be non-negative")
    _, path = omega_path(x + 1, b + c)
    path = _exchange(path, tf.gamma_move_up, x, anchors, b // 2)
    if b % 2:
        path = tf.corner_cut(path, x, modified=modified)
    if a < ones:
        try:
            path = trim_leading_ones(path, ones - a)
        except NotApplicable as exc:
            raise NotApplicable(f"small-b construction needs a >= {ones} here") from exc
    else:
        path = tf.append_ones(path, a - ones)
    return certify(path, LengthMultiset.of({1: a, x: b, x + 1: c}), Strategy.SmallB.value)


def _small_c_plan(x: int, b: int, c: int) -> tuple[str, list[int], int, int]:
    """Base chain, anchors (in base labels), base order, and resulting 1-edge count.

    The base chain is one of h1, h2, h3, or "shift" for the even-x odd-r route
    that builds the h1 case for b+c-1 and then adds one x-edge below 0.
    """
    B = b + c
    q, r = divmod(B, x)
    if B < x:
        base = "h1" if r % 2 == 0 else "h2"
        v = x + B
        anchors = list(range(v - 2, v - B, -2))
        ones = x - 1
    elif x % 2 == 0 and r % 2 == 0:
        base, v, ones = "h1", x + B, x - 1
        lowest = v - x if B > x else v - x + 2
        anchors = list(range(v - 2, lowest - 1, -2))
    elif x % 2 == 0:
        base, v, ones = "shift", x + B - 1, x - 1
        lowest = v - x if B - 1 > x else v - x + 2
        anchors = list(range(v - 2, lowest - 1, -2))
    elif r == 1 or (r % 2 == 0 and r != 0):
        base, v, ones = "h2", x + B, x - 1
        if r == 1:
            anchors = list(range(v - x + 1, v - 1, 2))
        else:
            anchors = list(range(v - x, v - r, 2)) + list(range(v - r + 2, v - 1, 2))
    else:
        base, v, ones = "h3", x + B + 1, x
        if r == 0:
            anchors = [v - x] + list(range(v - x + 3, v - 1, 2))
        else:
            anchors = list(range(v - x, v - r + 1, 2)) + list(range(v - r + 3, v - 1, 2))
    if c % 2:
        ones += 1
    return base, anchors, v, ones


def small_c_ones(x: int, b: int, c: int) -> int:
    """1-edges produced by the small-c construction before any are appended."""
    if x % 2 == 0 and b + c == x + 1 and c == x:
        return small_b_ones(x, b, c)
    return _small_c_plan(x, b, c)[3]


def realize_small_c(a: int, x: int, b: int, c: int) -> Certificate:
    """Turn c of the x-edges of an omega-construction into (x+1)-edges."""
    _need(x >= 2 and b > 0 and 0 < c <= x, "small-c construction needs b > 0 and 0 < c <= x")
    target = LengthMultiset.of({1: a, x: b, x + 1: c})
    if x % 2 == 0 and b + c == x + 1 and c == x:
        cert = realize_small_b(a, x, b, c)
        return certify(cert.path, target, Strategy.SmallC.value)
    base, anchors, v, ones = _small_c_plan(x, b, c)
    _need(a >= ones, f"small-c construction needs a >= {ones}")
    path = _grid("h1" if base == "shift" else base, v, x)
    path = _exchange(path, tf.gamma_move_down, x, anchors, c // 2)
    if c % 2:
        path = tf.corner_flap(path, x)
    if base == "shift":
        if path[-1] != x - 1:
            raise NotApplicable(f"expected final label {x - 1} before the downward x-edge")
        path = PathSeq(tuple(ell + 1 for ell in path) + (0,))
    path = tf.append_ones(path, a - ones)
    return certify(path, target, Strategy.SmallC.value)


def _gridlock_blocks(x: int, k: int) -> PathSeq:
    block = perfect_gridlock(x + 1, "g1").path
    out = block
    for _ in range(k - 1):
        out = tf.concatenate(out, block)
    return out


def realize_consecutive(a: int, x: int, b: int, c: int) -> Certificate:
    """Standard realization of {1^a, x^b, (x+1)^c} for any a >= x+1."""
    _need(x >= 2 and a >= x + 1, f"needs a >= x+1 = {x + 1}")
    target = LengthMultiset.of({1: a, x: b, x + 1: c})
    k = min(b // x, c // (x + 1))
    b_rest, c_rest = b - k * x, c - k * (x + 1)
    if c_rest == 0:
        path = standard_two(x, b_rest, a)[1]
    elif b_rest == 0:
        path = standard_two(x + 1, c_rest, a)[1]
    elif b_rest < x:
        path = realize_small_b(a, x, b_rest, c_rest).path
    else:
        path = realize_small_c(a, x, b_rest, c_rest).path
    if k:
        path = tf.standardize(tf.concatenate(path, _gridlock_blocks(x, k)))
    return certify(path, target, Strategy.Consecutive.value)


def realize_support_45(
    a: int, x: int, b: int, c: int, y: int, d: int, e: int | None = None
) -> Certificate:
    """Concatenate a consecutive-pair realization with one for {y^d} or {y^d, (y+1)^e}."""
    _need(x + 1 < y, "needs x+1 < y")
    counts = {1: a, x: b, x + 1: c, y: d}
    if e is None:
        _need(a >= x + y + 1, f"needs a >= x+y+1 = {x + y + 1}")
        right = standard_two(y, d, a - x - 1)[1]
    else:
        _need(a >= x + y + 2, f"needs a >= x+y+2 = {x + y + 2}")
        counts[y + 1] = e
        right = realize_consecutive(a - x - 1, y, d, e).path
    left = realize_consecutive(x + 1, x, b, c).path
    path = tf.concatenate(left, right)
    return certify(path, LengthMultiset.of(counts), Strategy.Support45.value)


# --- support {1, x, y} --------------------------------------------------------------


def realize_omega_concat(a: int, x: int, b: int, y: int, c: int) -> Certificate:
    """Concatenate the omega-constructions for x and y and append the remaining 1-edges."""
    need = omega(x, b) + omega(y, c)
    _need(a >= need, f"needs a >= omega(x,b)+omega(y,c) = {need}")
    left = omega_path(x, b)[1]
    right = standard_two(y, c, a - omega(x, b))[1]
    path = tf.concatenate(left, right)
    return certify(path, LengthMultiset.of({1: a, x: b, y: c}), Strategy.OmegaConcat.value)


def _edge_01(path: PathSeq) -> PathSeq:
    """Return path or its complement, whichever has labels 0 and 1 adjacent."""
    for cand in (path, tf.complement(path)):
        pos = {ell: i for i, ell in enumerate(cand)}
        if abs(pos[0] - pos[1]) == 1:
            return cand
    raise NotApplicable("neither the path nor its complement joins 0 and 1")


def _even_step_branch(a: int, x: int, b: int, y: int, c: int) -> Strategy:
    if y == x + 1:
        return Strategy.Consecutive
    if y % 2 == 0 or a >= x + y - 1 or omega(y, c) == y - 1 or b == 0:
        return Strategy.OmegaConcat
    if b == 1:
        return Strategy.H3
    r = c % y
    if r == y - 2:
        return Strategy.H5
    if x == 2:
        return Strategy.H6
    return Strategy.H7


def _bare_core(a: int, x: int, b: int, y: int, c: int) -> tuple[Strategy, PathSeq] | None:
    """The h5, h6 and h7 grids on their own, when the multiset is exactly one of them."""
    shapes = (
        (Strategy.H5, "h5", y + c, (y - 3, 2)),
        (Strategy.H6, "h6", y + c + 1, (y - 1, 1)),
        (Strategy.H7, "h7", y + c + 1, (y - 2, 2)),
    )
    target = LengthMultiset.of({1: a, x: b, y: c})
    for strategy, name, v, ones_xs in shapes:
        if (a, b) != ones_xs or v != target.v:
            continue
        try:
            path = _grid(name, v, x, y)
        except (NotApplicable, MalformedInput):
            continue
        if verify_realization(path, target, RealizationKind.LINEAR).ok:
            return strategy, path
    return None


def realize_even_x_step(a: int, x: int, b: int, y: int, c: int) -> Certificate:
    """Realization of {1^a, x^b, y^c} for even x and a >= x+y-2, or one of the bare h5/h6/h7 grids."""
    _need(x % 2 == 0 and 1 < x < y, "needs even x < y")
    target = LengthMultiset.of({1: a, x: b, y: c})
    core = _bare_core(a, x, b, y, c)
    if core is not None:
        return certify(core[1], target, core[0].value)
    _need(a >= x + y - 2, f"needs a >= x+y-2 = {x + y - 2}")
    branch = _even_step_branch(a, x, b, y, c)
    if branch is Strategy.Consecutive:
        return certify(realize_consecutive(a, x, b, c).path, target, branch.value)
    if branch is Strategy.OmegaConcat:
        if b == 0:
            return certify(standard_two(y, c, a)[1], target, branch.value)
        return realize_omega_concat(a, x, b, y, c)
    if branch is Strategy.H3:
        return certify(even_step_insertion(x, y, c), target, branch.value)
    if branch is Strategy.H5:
        core = _grid("h5", y + c, x, y)
        rest = (x - 1, b - 2)
    elif branch is Strategy.H6:
        core = _grid("h6", y + c + 1, x, y)
        rest = (x - 1, b - 1)
    else:
        core = _grid("h7", y + c + 1, x, y)
        rest = (x - 1, b - 2)
    ones_core = {Strategy.H5: y - 3, Strategy.H6: y - 1, Strategy.H7: y - 2}[branch]
    tail = standard_two(x, rest[1], a - ones_core)[1]
    path = tf.concatenate(core, tail)
    return certify(path, target, branch.value)


def even_step_insertion(x: int, y: int, c: int) -> PathSeq:
    """Realize {1^(x+y-2), x, y^c} by splicing h2 for {1^(x-1), x} into a realization of {1^y, y^c}."""
    if omega(y, c) == y:
        big = _grid("h3", y + c + 1, y)
    else:
        big = standard_two(y, c, y)[1]
    small = _grid("h2", x + 1, x)
    return tf.insert_between_0_1(_edge_01(big), small)


def _walk_columns(v: int, width: int, first: Sequence[int], second: Sequence[int]) -> PathSeq:
    """Columns ``first`` (ending at a top), column 0 downward, then ``second`` alternating from the bottom."""
    out: list[int] = []
    ascending = len(first) % 2 == 1
    for k in first:
        col = tf.column(v, width, k)
        out.extend(col if ascending else col[::-1])
        ascending = not ascending
    out.extend(tf.column(v, width, 0)[::-1])
    ascending = True
    for k in second:
        col = tf.column(v, width, k)
        out.extend(col if ascending else col[::-1])
        ascending = not ascending
    return PathSeq(tuple(out))


def _side_options(x: int, a_i: int, b_i: int) -> Iterator[PathSeq]:
    """Standard realizations of {1^a_i, x^b_i}, those with special final edges first."""
    if b_i == 0:
        yield PathSeq(tuple(range(a_i + 1)))
        return
    if b_i >= 2 and a_i >= x - 1 and omega(x, b_i) == x - 1:
        yield prepend_ones(build_final_edge_realization(x, b_i, "x_edge").path, a_i - x + 1)
    if b_i <= x and a_i >= x:
        yield prepend_ones(build_final_edge_realization(x, b_i, "one").path, a_i - x)
    w = omega(x, b_i)
    if a_i >= w:
        base = omega_path(x, b_i)[1]
        yield prepend_ones(base, a_i - w)
        yield tf.append_ones(base, a_i - w)


def _side_ok(x: int, a_i: int, b_i: int) -> bool:
    return a_i >= 0 and b_i >= 0 and (b_i == 0 or a_i >= omega(x, b_i))


def _inner_candidates(x: int, ones: int, y: int, c: int) -> Iterator[PathSeq]:
    """Realizations of {1^ones, x^(y-1-ones), y^c} that contain the edge 0-1.

    Two sides of sizes v1-1 and v2-1 are joined across a partial row of width
    y (or, when c is 0 or 1 mod y, one side is walked after column 0).
    """
    r = c % y
    v = y + c
    if r in (0, 1):
        a_g, b_g = ones - 1, y - 1 - ones
        if not _side_ok(x, a_g, b_g):
            return
        for g in _side_options(x, a_g, b_g):
            yield _walk_columns(v, y, [], [gi + 1 for gi in g])
        return
    v1, v2 = r - 1, y - r + 1
    total = ones - 1
    preferred = min(total - 1, v1 - 1)
    if r == 2:
        preferred = 0
    order = [preferred] + [a1 for a1 in range(v1 - 1, -1, -1) if a1 != preferred]
    params = tf.BridgeParams(v1, v2, y, c)
    for a1 in order:
        a2 = total - a1
        b1, b2 = v1 - 1 - a1, v2 - 1 - a2
        if r == 2 and a1 != 0:
            continue
        if not (_side_ok(x, a1, b1) and _side_ok(x, a2, b2)):
            continue
        for g in _side_options(x, a1, b1):
            for h in _side_options(x, a2, b2):
                yield tf.bridge_partial_row(g, h, params)


def _outer_01(x: int, b1: int) -> PathSeq:
    """Realization of {1^(x-1), x^b1} from 0 to 1."""
    path = omega_path(x, b1)[1]
    if path[-1] != 1:
        raise NotApplicable(f"omega-construction for {{1^{x - 1},{x}^{b1}}} does not end at 1")
    return path


def _split_build(x: int, a: int, b: int, y: int, c: int) -> Iterator[PathSeq]:
    """Realizations of {1^a, x^b, y^c} from the bridging split (a+b+y even, or x = 2)."""
    ones_inner = a - x + 2
    b2 = y - 1 - ones_inner
    b1 = b - b2
    _need(b2 >= 0 and b1 >= 0, "split needs a <= x+y-3 and a+b >= x+y-3")
    outer = _outer_01(x, b1) if b1 or x > 2 else PathSeq((0, 1))
    for inner in _inner_candidates(x, ones_inner, y, c):
        yield tf.insert_between_0_1(_edge_01(inner), outer)


def realize_x_equals_2(a: int, b: int, y: int, c: int) -> Certificate:
    """Realization of {1^a, 2^b, y^c} for y >= 5, a >= 3, a+b >= y-1."""
    _need(y >= 5 and a >= 3 and a + b >= y - 1 and c >= 1, "needs y >= 5, a >= 3, a+b >= y-1, c >= 1")
    target = LengthMultiset.of({1: a, 2: b, y: c})
    if a >= y:
        return certify(realize_even_x_step(a, 2, b, y, c).path, target, Strategy.XEquals2.value)
    path = next(_split_build(2, a, b, y, c), None)
    if path is None:
        raise NotApplicable("no admissible split of the 1-edges between the two sides")
    return certify(path, target, Strategy.XEquals2.value)


def _three_part(x: int, a: int, b: int, y: int, c: int) -> Iterator[PathSeq]:
    """Candidate realizations of {1^a, x^b, y^c} from the partial-row bridge.

    With a+b = y-1 the bridge alone suffices; otherwise the multiset is split
    around an outer {1^(x-1), x^b1} spliced in at the edge 0-1.
    """
    if a + b == y - 1:
        yield from _inner_candidates(x, a, y, c)
    else:
        try:
            yield from _split_build(x, a, b, y, c)
        except NotApplicable:
            return


def _curled(x: int, a: int, b: int, y: int, c: int) -> Iterator[PathSeq]:
    """Build with one y-edge too many, then reroute an end to trade it for an x-edge or a 1-edge."""
    options = [(a, b - 1, x), (a - 1, b, 1)]
    if a >= y - x - 2:
        options.reverse()
    for pre_a, pre_b, gain in options:
        if pre_a < 1 or pre_b < 0:
            continue
        for pre in _three_part(x, pre_a, pre_b, y, c + 1):
            try:
                yield tf.rotate_end(pre, drop=y, gain=gain)
            except tf.PatternMissing:
                continue


def realize_even_x(a: int, x: int, b: int, y: int, c: int) -> Certificate:
    """Realization of {1^a, x^b, y^c} for even x and y >= 2x+1.

    Covers a >= 3x-2 with a+b >= x+y-1, and also a+b in {y-1, y}, where the
    bridge needs no outer piece (plus one end rerouting when a+b = y).
    """
    _need(x % 2 == 0 and x >= 2, "needs even x")
    _need(y >= 2 * x + 1, "needs y >= 2x+1")
    _need(c >= 1 and a >= 1, "needs a, c >= 1")
    general = a >= 3 * x - 2 and a + b >= x + y - 1
    _need(general or a + b in (y - 1, y), "needs a >= 3x-2 and a+b >= x+y-1, or a+b in {y-1, y}")
    target = LengthMultiset.of({1: a, x: b, y: c})
    if general and a >= x + y - 2:
        return certify(realize_even_x_step(a, x, b, y, c).path, target, Strategy.EvenX.value)
    if general and x == 2:
        return certify(realize_x_equals_2(a, b, y, c).path, target, Strategy.EvenX.value)
    if a + b == y - 1 or (a + b != y and (a + b + y) % 2 == 0):
        path = next(_three_part(x, a, b, y, c), None)
    else:
        path = next(_curled(x, a, b, y, c), None)
    if path is None:
        raise NotApplicable("no admissible split of the 1-edges between the two sides")
    return certify(path, target, Strategy.EvenX.value)


# --- dispatcher ------------------------------------------------------------------


@dataclass(frozen=True)
class NotRealizable:
    reason: str


@dataclass(frozen=True)
class Unknown:
    reason: str


@dataclass(frozen=True)
class Plan:
    strategy: Strategy
    build: Callable[[], PathSeq]


def _plan_two(a: int, x: int, b: int) -> Plan | None:
    w = omega(x, b)
    if a < w:
        return None
    name = Strategy.H3 if w == x else Strategy.H1 if (b % x) % 2 == 0 else Strategy.H2
    return Plan(name, lambda: standard_two(x, b, a)[1])


def _plan_three(a: int, x: int, b: int, y: int, c: int) -> Plan | None:
    if y == x + 1:
        if a >= x + 1:
            return Plan(Strategy.Consecutive, lambda: realize_consecutive(a, x, b, c).path)
        if b < x and a >= small_b_ones(x, b, c):
            return Plan(Strategy.SmallB, lambda: realize_small_b(a, x, b, c).path)
        if c <= x and a >= small_c_ones(x, b, c):
            return Plan(Strategy.SmallC, lambda: realize_small_c(a, x, b, c).path)
    if x % 2 == 0 and a >= x + y - 2:
        branch = _even_step_branch(a, x, b, y, c)
        return Plan(branch, lambda: realize_even_x_step(a, x, b, y, c).path)
    if x == 2 and y >= 5 and a >= 3 and a + b >= y - 1:
        return Plan(Strategy.XEquals2, lambda: realize_x_equals_2(a, b, y, c).path)
    if x % 2 == 0 and y >= 2 * x + 1 and a >= 3 * x - 2 and a + b >= x + y - 1:
        return Plan(Strategy.EvenX, lambda: realize_even_x(a, x, b, y, c).path)
    if a >= omega(x, b) + omega(y, c):
        return Plan(Strategy.OmegaConcat, lambda: realize_omega_concat(a, x, b, y, c).path)
    return None


def _plan_many(L: LengthMultiset) -> Plan | None:
    a = L.count(1)
    rest = [(ell, cnt) for ell, cnt in L.pairs if ell != 1]
    if len(rest) in (3, 4):
        (x, b), (x1, c), (y, d) = rest[:3]
        if x1 == x + 1 and x + 1 < y:
            if len(rest) == 3 and a >= x + y + 1:
                return Plan(Strategy.Support45, lambda: realize_support_45(a, x, b, c, y, d).path)
            if len(rest) == 4 and rest[3][0] == y + 1 and a >= x + y + 2:
                e = rest[3][1]
                return Plan(Strategy.Support45, lambda: realize_support_45(a, x, b, c, y, d, e).path)
    return None


def plan_linear(L: LengthMultiset) -> Plan | None:
    """Pick a construction for a linear realization of L without building it."""
    support = L.support
    if not support:
        return Plan(Strategy.H1, lambda: PathSeq((0,)))
    if support[0] != 1:
        if len(support) == 2:
            (x, b), (y, c) = L.pairs
            if y == x + 1 and b == x and c == x + 1:
                return Plan(Strategy.G1, lambda: perfect_gridlock(y, "g1").path)
            if y == x + 1 and b == x + 2 and c == x - 1:
                return Plan(Strategy.G2, lambda: perfect_gridlock(x, "g2").path)
        return None
    a = L.count(1)
    rest = [(ell, cnt) for ell, cnt in L.pairs if ell != 1]
    if not rest:
        return Plan(Strategy.H1, lambda: PathSeq(tuple(range(a + 1))))
    if len(rest) == 1:
        return _plan_two(a, *rest[0])
    if len(rest) == 2:
        (x, b), (y, c) = rest
        return _plan_three(a, x, b, y, c)
    return _plan_many(L)


DEFAULT_ORACLE_CAP = 12


def realize(
    L: LengthMultiset,
    kind: RealizationKind = RealizationKind.LINEAR,
    oracle_cap: int = DEFAULT_ORACLE_CAP,
    node_limit: int = 2_000_000,
) -> Certificate | NotRealizable | Unknown:
    """Realize L by the first applicable construction, falling back to exhaustive search on small orders.

    Order: necessary-condition gate, constructions (two-length omega,
    consecutive pair, even-x step, x = 2, even x, omega-concatenation,
    larger supports), then the oracle when v <= ``oracle_cap``.
    """
    from .oracle import Exhausted, Found, SearchBudget, brute_force

    if kind is RealizationKind.LINEAR:
        if not fauxset_necessity(L):
            top = L.max_length()
            return NotRealizable(
                f"fauxset bound: {L.size - L.count(top)} edges shorter than {top} cannot join {top} columns"
            )
    else:
        if not L.is_cyclic_ranged():
            raise MalformedInput(f"cyclic lengths must be at most {L.v // 2}")
        d = admissibility_violation(L)
        if d is not None:
            return NotRealizable(f"admissibility: more than {L.v - d} lengths are multiples of {d}")
    plan = plan_linear(L)
    if plan is not None:
        return certify(plan.build(), L, plan.strategy.value, kind)
    if L.v > oracle_cap:
        return Unknown("no construction applies and the order is above the search cap")
    outcome = brute_force(L, kind, SearchBudget(node_limit=node_limit, cap=max(oracle_cap, L.v)))
    if isinstance(outcome, Found):
        return certify(outcome.path, L, Strategy.Oracle.value, kind)
    if isinstance(outcome, Exhausted):
        return Unknown("exhaustive search ran out of budget")
    return NotRealizable("exhaustive search found no realization")
