"""Parser and evaluator for column-chain expressions.

Grammar::

    expr   := term (bridge term)*
    bridge := "++" ("[" int "]")?
    term   := "rev" term | ("Psi" | "Ψ") "(" int ("," int (".." int)?)? ")"
    int    := atom (("+" | "-") atom)*
    atom   := NUMBER | "x" | "v" | "q*" | "(" int ")" | "-" atom

``Psi(k)`` is the residue class k modulo x inside 0..v-1, bottom to top;
``Psi(k, a..b)`` keeps rows a to b and ``Psi(k, a)`` the single row a.  ``q*``
is the top row of the segment's own column.  ``++[n]`` joins two pieces by an
edge of length n (default 1).  The first piece is walked as written; every
later piece is attached as written if its first label is at the right
distance from the current end, otherwise reversed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .lengths import MalformedInput, PathSeq, q_star


class NotationError(MalformedInput):
    """A syntax or evaluation error, with the character offset it refers to."""

    def __init__(self, message: str, pos: int, text: str | None = None):
        self.pos = pos
        self.text = text
        where = f" at offset {pos}"
        if text is not None:
            where += f"\n  {text}\n  {' ' * pos}^"
        super().__init__(message + where)


# --- lexer -------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<qstar>q\*)|(?P<name>[A-Za-z_Ψ][A-Za-z_0-9]*)|(?P<op>\+\+|\.\.|[\[\](),+\-]))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # num, name, op, end
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    while i < len(text):
        if text[i:].strip() == "":
            break
        m = _TOKEN.match(text, i)
        if m is None:
            j = i
            while j < len(text) and text[j].isspace():
                j += 1
            raise NotationError(f"unexpected character {text[j]!r}", j, text)
        kind = m.lastgroup
        value = m.group(kind)
        pos = m.start(kind)
        if kind == "qstar":
            kind = "name"
        tokens.append(Token(kind, value, pos))
        i = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


# --- AST -----------------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int
    pos: int


@dataclass(frozen=True)
class Var:
    name: str  # x, v or q*
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "IntExpr"
    right: "IntExpr"
    pos: int


@dataclass(frozen=True)
class Neg:
    operand: "IntExpr"
    pos: int


IntExpr = Union[Num, Var, BinOp, Neg]


@dataclass(frozen=True)
class Segment:
    k: IntExpr
    lo: IntExpr | None
    hi: IntExpr | None  # equal to lo for a single row
    rev: bool
    pos: int
    end: int


@dataclass(frozen=True)
class Bridge:
    length: IntExpr | None  # None means 1
    left: "SegmentExpr"
    right: Segment
    pos: int


SegmentExpr = Union[Segment, Bridge]


# --- parser ------------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token | None = None) -> NotationError:
        tok = tok or self.tok
        return NotationError(message, tok.pos, self.text)

    def accept(self, text: str) -> Token | None:
        if self.tok.text == text and self.tok.kind in ("op", "name"):
            tok = self.tok
            self.i += 1
            return tok
        return None

    def expect(self, text: str) -> Token:
        tok = self.accept(text)
        if tok is None:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return tok

    def parse(self) -> SegmentExpr:
        expr: SegmentExpr = self.term()
        while True:
            tok = self.accept("++")
            if tok is None:
                break
            length = None
            if self.accept("["):
                length = self.int_expr()
                self.expect("]")
            expr = Bridge(length, expr, self.term(), tok.pos)
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return expr

    def term(self) -> Segment:
        start = self.tok
        if self.accept("rev"):
            inner = self.term()
            return Segment(inner.k, inner.lo, inner.hi, not inner.rev, start.pos, inner.end)
        if self.tok.kind == "name" and self.tok.text in ("Psi", "Ψ"):
            self.i += 1
        else:
            found = self.tok.text or "end of input"
            raise self.error(f"expected a segment 'Psi(...)', found {found!r}")
        self.expect("(")
        k = self.int_expr()
        lo = hi = None
        if self.accept(","):
            lo = self.int_expr()
            hi = self.int_expr() if self.accept("..") else lo
        close = self.expect(")")
        return Segment(k, lo, hi, False, start.pos, close.pos + 1)

    def int_expr(self) -> IntExpr:
        left = self.atom()
        while self.tok.text in ("+", "-") and self.tok.kind == "op":
            op = self.tok
            self.i += 1
            left = BinOp(op.text, left, self.atom(), op.pos)
        return left

    def atom(self) -> IntExpr:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return Num(int(tok.text), tok.pos)
        if tok.kind == "name":
            if tok.text not in ("x", "v", "q*"):
                raise self.error(f"unknown identifier {tok.text!r}")
            self.i += 1
            return Var(tok.text, tok.pos)
        if self.accept("("):
            inner = self.int_expr()
            self.expect(")")
            return inner
        if self.accept("-"):
            return Neg(self.atom(), tok.pos)
        found = tok.text or "end of input"
        raise self.error(f"expected an integer expression, found {found!r}")


def parse(text: str) -> SegmentExpr:
    """Parse an expression; errors carry the offending offset."""
    return _Parser(text).parse()


# --- evaluation -------------------------------------------------------------------------


def _eval_int(e: IntExpr, env: dict[str, int], text: str | None) -> int:
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        if e.name not in env:
            raise NotationError("q* is only meaningful inside a row range", e.pos, text)
        return env[e.name]
    if isinstance(e, Neg):
        return -_eval_int(e.operand, env, text)
    left, right = _eval_int(e.left, env, text), _eval_int(e.right, env, text)
    return left + right if e.op == "+" else left - right


def _flatten(expr: SegmentExpr) -> list[tuple[Segment, IntExpr | None, int]]:
    """Pieces in order with the bridge (length expression, offset) leading into each."""
    if isinstance(expr, Segment):
        return [(expr, None, expr.pos)]
    return _flatten(expr.left) + [(expr.right, expr.length, expr.pos)]


@dataclass
class Evaluation:
    """Labels produced by an expression; partial covers are allowed."""

    labels: tuple[int, ...]
    v: int
    warnings: list[str] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return sorted(self.labels) == list(range(self.v))

    def as_path(self) -> PathSeq:
        if not self.complete:
            missing = sorted(set(range(self.v)) - set(self.labels))
            raise MalformedInput(f"expression does not visit every label; missing {missing}")
        return PathSeq(self.labels)


def evaluate(expr: SegmentExpr | str, v: int, x: int) -> Evaluation:
    """Walk the expression on the width-x grid with labels 0..v-1."""
    text = expr if isinstance(expr, str) else None
    if isinstance(expr, str):
        expr = parse(expr)
    if v < 1 or x < 1:
        raise MalformedInput("v and x must be positive")
    base = {"x": x, "v": v}
    out: list[int] = []
    seen: set[int] = set()
    warnings: list[str] = []
    for i, (seg, length_expr, bpos) in enumerate(_flatten(expr)):
        k = _eval_int(seg.k, base, text)
        if not 0 <= k < x or k >= v:
            raise NotationError(f"column {k} outside 0..{min(x, v) - 1}", seg.pos, text)
        top = q_star(v, x, k)
        env = dict(base, **{"q*": top})
        lo = 0 if seg.lo is None else _eval_int(seg.lo, env, text)
        hi = top if seg.hi is None else _eval_int(seg.hi, env, text)
        if not 0 <= lo <= hi <= top:
            raise NotationError(f"rows {lo}..{hi} outside column {k} (rows 0..{top})", seg.pos, text)
        piece = [k + r * x for r in range(lo, hi + 1)]
        if seg.rev:
            piece.reverse()
        if i:
            length = 1 if length_expr is None else _eval_int(length_expr, base, text)
            end = out[-1]
            first_ok = abs(piece[0] - end) == length
            last_ok = abs(piece[-1] - end) == length
            if not first_ok and not last_ok:
                raise NotationError(
                    f"cannot attach column {k} to {end} by a {length}-edge: "
                    f"candidate endpoints {piece[0]} and {piece[-1]}",
                    bpos,
                    text,
                )
            if first_ok and last_ok and len(piece) > 1:
                warnings.append(f"offset {seg.pos}: both ends of column {k} attach to {end}; taking it as written")
            if not first_ok:
                piece.reverse()
        for ell in piece:
            if ell in seen:
                raise NotationError(f"label {ell} visited twice", seg.pos, text)
            seen.add(ell)
        out.extend(piece)
    return Evaluation(tuple(out), v, warnings)

