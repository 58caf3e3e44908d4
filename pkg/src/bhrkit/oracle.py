"""Exhaustive backtracking search: ground truth for small orders.

The search extends a partial path one label at a time, consuming a
remaining-length table.  Branches where some remaining length has no pair of
labels left that it could join are cut.  Symmetry reduction fixes the start
up to complement (linear) or rotation plus negation (cyclic).
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .lengths import (
    LengthMultiset,
    MalformedInput,
    PathSeq,
    RealizationKind,
    is_admissible,
)

THREADS_ENV = "BHRKIT_THREADS"
DEFAULT_CAP = 18


@dataclass(frozen=True)
class SearchBudget:
    node_limit: int | None = 5_000_000
    time_limit: float | None = None  # seconds
    symmetry: bool = True
    cap: int = DEFAULT_CAP


@dataclass(frozen=True)
class Found:
    path: PathSeq
    nodes: int


@dataclass(frozen=True)
class ProvenNone:
    nodes: int


@dataclass(frozen=True)
class Exhausted:
    nodes: int
    reason: str


Outcome = Found | ProvenNone | Exhausted


class _OutOfBudget(Exception):
    pass


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError as exc:
            raise MalformedInput(f"{THREADS_ENV} must be an integer, not {raw!r}") from exc
    return os.cpu_count() or 1


class _Search:
    def __init__(self, v: int, counts: dict[int, int], cyclic: bool, budget: SearchBudget):
        self.v = v
        self.cyclic = cyclic
        self.full = (1 << v) - 1
        self.lengths = sorted(counts)
        self.cnt = dict(counts)
        self.path: list[int] = []
        self.nodes = 0
        self.node_limit = budget.node_limit
        self.deadline = None if budget.time_limit is None else time.monotonic() + budget.time_limit

    def _reachable(self, avail: int, ell: int) -> bool:
        if self.cyclic:
            rot = ((avail >> ell) | (avail << (self.v - ell))) & self.full
            return bool(avail & rot)
        return bool(avail & (avail >> ell))

    def _neighbours(self, end: int, ell: int) -> list[int]:
        v = self.v
        if self.cyclic:
            up, down = (end + ell) % v, (end - ell) % v
            return [up] if up == down else [up, down]
        return [n for n in (end + ell, end - ell) if 0 <= n < v]

    def _tick(self) -> None:
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise _OutOfBudget("node limit")
        if self.deadline is not None and self.nodes % 4096 == 0 and time.monotonic() > self.deadline:
            raise _OutOfBudget("time limit")

    def extend(self, end: int, visited: int) -> bool:
        if len(self.path) == self.v:
            return True
        self._tick()
        avail = (~visited & self.full) | (1 << end)
        live = [ell for ell in self.lengths if self.cnt[ell]]
        for ell in live:
            if not self._reachable(avail, ell):
                return False
        for ell in live:
            for nb in self._neighbours(end, ell):
                if visited >> nb & 1:
                    continue
                self.cnt[ell] -= 1
                self.path.append(nb)
                if self.extend(nb, visited | (1 << nb)):
                    return True
                self.path.pop()
                self.cnt[ell] += 1
        return False

    def run_from(self, prefix: tuple[int, ...]) -> bool:
        """Search all completions of a fixed prefix (whose steps must use available lengths)."""
        self.path = list(prefix)
        visited = 0
        for a, b in zip(prefix, prefix[1:]):
            ell = self._length(a, b)
            if not self.cnt.get(ell):
                return False
            self.cnt[ell] -= 1
        for ell in prefix:
            if visited >> ell & 1:
                return False
            visited |= 1 << ell
        return self.extend(prefix[-1], visited)

    def _length(self, a: int, b: int) -> int:
        d = abs(a - b)
        return min(d, self.v - d) if self.cyclic else d


def _validate(L: LengthMultiset, kind: RealizationKind, budget: SearchBudget) -> None:
    if L.v > budget.cap:
        raise MalformedInput(f"order {L.v} exceeds the search cap {budget.cap}; raise the cap to override")
    if kind is RealizationKind.CYCLIC and not L.is_cyclic_ranged():
        raise MalformedInput(f"cyclic lengths must be at most {L.v // 2}")


def _prefixes(L: LengthMultiset, kind: RealizationKind, symmetry: bool, starts: tuple[int, ...] | None) -> list[tuple[int, ...]]:
    """Start labels (and for cyclic search with symmetry, first steps) in canonical order."""
    v = L.v
    if v == 1:
        return [(0,)]
    if starts is not None:
        return [(s,) for s in starts]
    if kind is RealizationKind.LINEAR:
        return [(s,) for s in range(v) if not symmetry or s <= v - 1 - s]
    if not symmetry:
        return [(s,) for s in range(v)]
    firsts = sorted({ell for ell in L.support})
    return [(0, ell) for ell in firsts]


def _run_prefix(args) -> tuple[str, tuple[int, ...] | None, int]:
    L, kind, budget, prefix = args
    search = _Search(L.v, dict(L.pairs), kind is RealizationKind.CYCLIC, budget)
    try:
        ok = search.run_from(prefix)
    except _OutOfBudget as exc:
        return ("exhausted:" + str(exc), None, search.nodes)
    return ("found" if ok else "none", tuple(search.path) if ok else None, search.nodes)


def brute_force(
    L: LengthMultiset,
    kind: RealizationKind = RealizationKind.LINEAR,
    budget: SearchBudget | None = None,
    starts: tuple[int, ...] | None = None,
    workers: int | None = 1,
) -> Outcome:
    """Decide by exhaustive search whether L has a realization of the given kind.

    ``starts`` restricts the first label (e.g. ``(0,)`` for standard paths)
    and disables start symmetry.  ``workers`` > 1 farms the first choices out
    to processes; results are merged in canonical order so the verdict and
    witness do not depend on scheduling.  ``None`` reads the thread variable.
    """
    budget = budget or SearchBudget()
    _validate(L, kind, budget)
    prefixes = _prefixes(L, kind, budget.symmetry, starts)
    jobs = [(L, kind, budget, p) for p in prefixes]
    workers = worker_count() if workers is None else workers
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_prefix, jobs))
    else:
        results = []
        for job in jobs:
            res = _run_prefix(job)
            results.append(res)
            if res[0] == "found":
                break
    total = sum(nodes for _, _, nodes in results)
    for status, path, _ in results:
        if status == "found":
            return Found(PathSeq(path), total)
        if status.startswith("exhausted"):
            return Exhausted(total, status.split(":", 1)[1])
    return ProvenNone(total)


def min_ones(x: int, b: int, budget: SearchBudget | None = None) -> int | Exhausted:
    """Smallest a for which {1^a, x^b} has a standard linear realization."""
    if x < 2 or b < 1:
        raise MalformedInput("min_ones needs x >= 2 and b >= 1")
    budget = budget or SearchBudget(node_limit=None)
    budget = SearchBudget(budget.node_limit, budget.time_limit, budget.symmetry, max(budget.cap, x + 2 * b + 2))
    a = x - 1
    while True:
        L = LengthMultiset.of({1: a, x: b})
        outcome = brute_force(L, RealizationKind.LINEAR, budget, starts=(0,))
        if isinstance(outcome, Found):
            return a
        if isinstance(outcome, Exhausted):
            return outcome
        a += 1


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Positive compositions of total into parts, lexicographic."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_admissible(v: int, support: set[int] | frozenset[int] | tuple[int, ...]) -> Iterator[LengthMultiset]:
    """Admissible multisets with exactly this support at order v, in lexicographic order of multiplicities."""
    lengths = sorted(set(support))
    if not lengths or any(ell < 1 or ell > v // 2 for ell in lengths):
        raise MalformedInput(f"support must be a non-empty subset of 1..{v // 2}")
    for counts in _compositions(v - 1, len(lengths)):
        L = LengthMultiset(v, tuple(zip(lengths, counts)))
        if is_admissible(L):
            yield L


@dataclass
class ExhaustiveReport:
    v: int
    max_support_size: int
    checked: int = 0
    by_strategy: dict[str, int] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    exhausted: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and not self.exhausted


def exhaustive_check(v: int, max_support_size: int, budget: SearchBudget | None = None) -> ExhaustiveReport:
    """Realize every admissible cyclic multiset of order v with small support, constructions first."""
    from .catalog import NotRealizable, Unknown, realize

    budget = budget or SearchBudget(node_limit=20_000_000)
    report = ExhaustiveReport(v, max_support_size)
    pool = range(1, v // 2 + 1)
    for size in range(1, max_support_size + 1):
        for support in itertools.combinations(pool, size):
            for L in enumerate_admissible(v, support):
                report.checked += 1
                res = realize(L, RealizationKind.CYCLIC, oracle_cap=max(budget.cap, v), node_limit=budget.node_limit or 10**12)
                if isinstance(res, NotRealizable):
                    report.failures.append(f"{{{L}}}: {res.reason}")
                elif isinstance(res, Unknown):
                    report.exhausted.append(f"{{{L}}}: {res.reason}")
                else:
                    report.by_strategy[res.strategy] = report.by_strategy.get(res.strategy, 0) + 1
    return report
