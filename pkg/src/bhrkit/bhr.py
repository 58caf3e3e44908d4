"""Cyclic coverage via the unit group of Z_v.

Multiplying every label by a unit s of Z_v maps a cyclic realization of L to
one of the multiset whose lengths are multiplied by s and reduced.  A linear
realization of any such equivalent multiset therefore settles L.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Iterable, Iterator, Sequence

from .catalog import Plan, Strategy, plan_linear, realize_omega_concat, realize_x_equals_2
from .lengths import (
    Certificate,
    LengthMultiset,
    MalformedInput,
    PathSeq,
    RealizationKind,
    certify,
    is_admissible,
)


def reduce(x: int, v: int) -> int:
    """The reduced form min(x mod v, v - x mod v) of a length."""
    r = x % v
    if r == 0:
        raise MalformedInput(f"{x} is 0 modulo {v}")
    return min(r, v - r)


@dataclass(frozen=True)
class Equivalent:
    multiplier: int  # labels of a realization of ``multiset`` are multiplied by this to realize L
    source: int  # the length of L that becomes 1
    multiset: LengthMultiset


def equivalents(L: LengthMultiset) -> list[Equivalent]:
    """For each length s of L coprime to v, L multiplied by s^-1 and reduced (deduplicated)."""
    v = L.v
    out: list[Equivalent] = []
    seen: set[LengthMultiset] = set()
    for s, _ in L.pairs:
        if gcd(s, v) != 1:
            continue
        inv = pow(s, -1, v)
        counts: dict[int, int] = {}
        for ell, c in L.pairs:
            r = reduce(ell * inv, v)
            counts[r] = counts.get(r, 0) + c
        E = LengthMultiset.of(counts, v)
        if E not in seen:
            seen.add(E)
            out.append(Equivalent(s, s, E))
    return out


def equivalent_multisets(L: LengthMultiset) -> list[LengthMultiset]:
    """Equivalent multisets with 1 in the support; empty when no length is a unit modulo v."""
    return [e.multiset for e in equivalents(L)]


def map_path(path: PathSeq, s: int) -> PathSeq:
    """Apply the automorphism l -> s*l mod v to every label."""
    v = path.v
    return PathSeq(tuple(s * ell % v for ell in path))


# --- known results ------------------------------------------------------------


@dataclass(frozen=True)
class KnownFact:
    key: str
    description: str
    holds: Callable[[LengthMultiset], bool]


def _three(L: LengthMultiset) -> tuple[int, int, int, int, int, int] | None:
    if len(L.pairs) != 3 or L.pairs[0][0] != 1:
        return None
    (_, a), (x, b), (y, c) = L.pairs
    return a, x, b, y, c, L.v


def _item3(L):
    t = _three(L)
    return t is not None and t[1:4] == (4, 4, 8) and t[0] >= 3


def _item4(L):
    t = _three(L)
    return t is not None and t[1] == 2 and t[3] % 2 == 0 and t[0] + t[2] >= t[3] - 1


def _item5(L):
    t = _three(L)
    return t is not None and t[1] == 2 and t[2] == t[3] - 1 and t[4] == 1


def _item6(L):
    t = _three(L)
    if t is None or t[1] != 3:
        return False
    a, _, b, y, c, _ = t
    return y % 2 == 0 and c % 2 == 1 and (a >= y + 1 or (a == y and b % 3 != 0))


def _item7(L):
    t = _three(L)
    if t is None:
        return False
    a, x, b, y, c, _ = t
    return y == x + 1 and x % 2 == 1 and (a >= min(3 * x - 3, b + 2 * x - 3) or (a >= 2 * x - 2 and 3 * c >= 4 * b))


def _item8(L):
    t = _three(L)
    if t is None:
        return False
    a, x, b, y, c, _ = t
    return y == x + 1 and x % 2 == 0 and (a >= min(3 * x - 1, c + 2 * x - 1) or (a >= 2 * x - 1 and b >= c))


def _item9(L):
    t = _three(L)
    if t is None:
        return False
    a, x, b, y, c, _ = t
    return y == 2 * x and a >= x - 2 and c % 2 == 0 and 2 * b >= 10 * x - 4 + c


def _item10(L):
    t = _three(L)
    if t is None:
        return False
    a, x, b, y, c, _ = t
    return x % 2 == 0 and ((y % 2 == 0 and a >= y - 1) or (y % 2 == 1 and a >= 3 * y - 4))


def _item11(L):
    t = _three(L)
    return t is not None and t[0] >= t[1] + 4 * t[3] - 5


KNOWN_FACTS: dict[str, KnownFact] = {
    f.key: f
    for f in (
        KnownFact("support<=2", "support of size at most 2", lambda L: len(L.pairs) <= 2),
        KnownFact(
            "max<=7",
            "largest length at most 7, or support {1,2,8}, {1,2,10} or {1,2,12}",
            lambda L: L.max_length() <= 7 or L.support in ((1, 2, 8), (1, 2, 10), (1, 2, 12)),
        ),
        KnownFact("1,4^4,8", "{1^a, 4^4, 8^c} with a >= 3", _item3),
        KnownFact("1,2,even", "{1^a, 2^b, x^c} with x even and a+b >= x-1", _item4),
        KnownFact("1,2^(x-1),x", "{1^a, 2^(x-1), x}", _item5),
        KnownFact("1,3,even", "{1^a, 3^b, x^c}, x even, c odd, a >= x+1 or (a = x and 3 does not divide b)", _item6),
        KnownFact("1,x,x+1 odd", "{1^a, x^b, (x+1)^c}, x odd, a >= min(3x-3, b+2x-3) or (a >= 2x-2 and c >= 4b/3)", _item7),
        KnownFact("1,x,x+1 even", "{1^a, x^b, (x+1)^c}, x even, a >= min(3x-1, c+2x-1) or (a >= 2x-1 and b >= c)", _item8),
        KnownFact("1,x,2x", "{1^a, x^b, (2x)^c}, a >= x-2, c even, b >= 5x-2+c/2", _item9),
        KnownFact("1,even,y", "{1^a, x^b, y^c}, x even, a >= y-1 (y even) or a >= 3y-4 (y odd)", _item10),
        KnownFact("1,x,y", "{1^a, x^b, y^c} with a >= x+4y-5", _item11),
        KnownFact("v<=37", "order at most 37", lambda L: L.v <= 37),
    )
}

SCAN_FACTS: tuple[str, ...] = ("support<=2", "max<=7", "v<=37")


# --- decisions ---------------------------------------------------------------------


class Verdict(enum.Enum):
    COVERED = "Covered"
    KNOWN_COVERED = "KnownCovered"
    UNKNOWN = "Unknown"
    NOT_REALIZABLE = "NotRealizable"


@dataclass(frozen=True)
class CoverageDecision:
    verdict: Verdict
    strategy: str | None = None
    equivalent: LengthMultiset | None = None
    multiplier: int | None = None
    citation: str | None = None
    certificate: Certificate | None = None
    reason: str = ""

    @property
    def covered(self) -> bool:
        return self.verdict in (Verdict.COVERED, Verdict.KNOWN_COVERED)


def _certificate(L: LengthMultiset, eq: Equivalent, build: Callable[[], PathSeq], strategy: str) -> Certificate:
    linear = build()
    return certify(map_path(linear, eq.multiplier), L, strategy, RealizationKind.CYCLIC)


def coverage_decision(
    L: LengthMultiset,
    facts: Sequence[str] = SCAN_FACTS,
    with_certificate: bool = False,
    planner: Callable[[LengthMultiset], Plan | None] = plan_linear,
) -> CoverageDecision:
    """Decide L by known results, then by a construction for L or any equivalent multiset.

    With ``with_certificate`` the construction is run, mapped back through the
    automorphism and verified as a cyclic realization of L.
    """
    if len(L.pairs) > 3:
        raise MalformedInput("coverage decisions take supports of size at most 3")
    if not L.is_cyclic_ranged():
        raise MalformedInput(f"cyclic lengths must be at most {L.v // 2}")
    if not is_admissible(L):
        return CoverageDecision(Verdict.NOT_REALIZABLE, reason="not admissible")
    eqs = equivalents(L)
    candidates = [L] + [e.multiset for e in eqs]
    for key in facts:
        fact = KNOWN_FACTS[key]
        for M in candidates:
            if fact.holds(M):
                return CoverageDecision(Verdict.KNOWN_COVERED, citation=key, equivalent=M)
    for eq in eqs:
        plan = planner(eq.multiset)
        if plan is None:
            continue
        cert = _certificate(L, eq, plan.build, plan.strategy.value) if with_certificate else None
        return CoverageDecision(
            Verdict.COVERED, strategy=plan.strategy.value, equivalent=eq.multiset, multiplier=eq.multiplier, certificate=cert
        )
    return CoverageDecision(Verdict.UNKNOWN, reason="no known result or construction applies to any equivalent")


# --- theorem-level coverage for consecutive supports ------------------------------------


def consecutive_theorem_plan(M: LengthMultiset) -> Plan | None:
    """The consecutive-pair construction alone: {1^a, y^b, (y+1)^c} with a >= y+1."""
    if len(M.pairs) != 3 or M.pairs[0][0] != 1:
        return None
    (_, a), (y, b), (y1, c) = M.pairs
    if y1 != y + 1 or a < y + 1:
        return None
    from .catalog import realize_consecutive

    return Plan(Strategy.Consecutive, lambda: realize_consecutive(a, y, b, c).path)


def theorem_bound(x: int) -> int:
    """Order from which every multiset with support {1, x, x+1} is covered by the consecutive construction."""
    return 2 * x * x + 13 * x + 11


@dataclass
class ScanRow:
    v: int
    covered: int
    known: int
    unknown: int
    unknown_triples: list[tuple[int, int, int]] = field(default_factory=list)


@dataclass
class ScanReport:
    x: int
    mode: str
    rows: list[ScanRow]

    @property
    def uncovered(self) -> list[int]:
        return [row.v for row in self.rows if row.unknown]


def _support_known(x: int, v: int, facts: Sequence[str]) -> bool:
    """Whether a support-level known fact settles every multiset with support {1,x,x+1} at order v."""
    probe = LengthMultiset.of({1: v - 3, x: 1, x + 1: 1}, v)
    for M in [probe] + equivalent_multisets(probe):
        for key in facts:
            if key in ("support<=2", "max<=7", "v<=37") and KNOWN_FACTS[key].holds(M):
                return True
    return False


def _caps(x: int, v: int) -> tuple[int, int, int]:
    """Largest (a, b, c) the consecutive construction leaves open, coordinatewise over the equivalents."""
    caps = {1: v, x: v, x + 1: v}
    probe = LengthMultiset.of({1: v - 3, x: 1, x + 1: 1}, v)
    for eq in equivalents(probe):
        lengths = sorted(ell for ell in eq.multiset.support if ell != 1)
        if len(lengths) == 2 and lengths[1] == lengths[0] + 1:
            caps[eq.source] = min(caps[eq.source], lengths[0])
    return caps[1], caps[x], caps[x + 1]


def scan_order(x: int, v: int, mode: str = "theorem", facts: Sequence[str] = SCAN_FACTS) -> ScanRow:
    """Coverage of all {1^a, x^b, (x+1)^c} with a, b, c >= 1 at order v."""
    total = (v - 2) * (v - 3) // 2
    if _support_known(x, v, facts):
        return ScanRow(v, 0, total, 0)
    if v >= theorem_bound(x):
        return ScanRow(v, total, 0, 0)
    ca, cb, cc = _caps(x, v)
    unknown: list[tuple[int, int, int]] = []
    for a in range(1, min(ca, v - 3) + 1):
        for b in range(1, min(cb, v - 2 - a) + 1):
            c = v - 1 - a - b
            if c < 1 or c > cc:
                continue
            if mode == "dispatcher":
                L = LengthMultiset.of({1: a, x: b, x + 1: c}, v)
                if coverage_decision(L, facts).covered:
                    continue
            unknown.append((a, b, c))
    return ScanRow(v, total - len(unknown), 0, len(unknown), unknown)


def scan_orders(x: int) -> Iterator[int]:
    """Orders v with gcd(v,x) = gcd(v,x+1) = 1 and x+1 <= v/2, below the theorem bound."""
    for v in range(2 * x + 2, theorem_bound(x)):
        if gcd(v, x) == 1 and gcd(v, x + 1) == 1:
            yield v


def scan_consecutive_support(
    x: int, v_range: Iterable[int] | None = None, mode: str = "theorem", facts: Sequence[str] = SCAN_FACTS
) -> ScanReport:
    """Scan support {1, x, x+1}.

    ``theorem`` mode counts a multiset as covered when a known result applies
    or some equivalent {1^a, y^b, (y+1)^c} has a >= y+1.  ``dispatcher`` mode
    also tries every construction in the catalog on the multisets left open.
    """
    if x < 2:
        raise MalformedInput("x must be at least 2")
    if mode not in ("theorem", "dispatcher"):
        raise MalformedInput(f"mode must be theorem or dispatcher, not {mode!r}")
    orders = scan_orders(x) if v_range is None else (
        v for v in v_range if gcd(v, x) == 1 and gcd(v, x + 1) == 1 and v >= 2 * x + 2
    )
    return ScanReport(x, mode, [scan_order(x, v, mode, facts) for v in orders])


def bhr_table(x_max: int, mode: str = "theorem") -> dict[int, list[int]]:
    """Open orders v for support {1, x, x+1}, for 2 <= x <= x_max."""
    return {x: scan_consecutive_support(x, mode=mode).uncovered for x in range(2, x_max + 1)}


# --- support {1, 2, x} ------------------------------------------------------------------


def check_1_2_x(L: LengthMultiset, with_certificate: bool = True) -> CoverageDecision:
    """Coverage of {1^a, 2^b, x^c} for v > 4x and gcd(v, x) = 1.

    Either c <= v-x, where the x = 2 construction (x odd) or the known even-x
    result applies, or c is large enough for an omega-concatenation of the
    equivalent multiset with x mapped to 1.  Odd x with a in {1, 2} is left open.
    """
    if L.support[:2] != (1, 2) or len(L.pairs) != 3:
        raise MalformedInput("check_1_2_x takes a multiset with support {1, 2, x}")
    (_, a), (_, b), (x, c) = L.pairs
    v = L.v
    if v <= 4 * x or gcd(v, x) != 1:
        raise MalformedInput("check_1_2_x needs v > 4x and gcd(v, x) = 1")
    if x % 2 == 1 and a in (1, 2):
        return CoverageDecision(Verdict.UNKNOWN, reason="x odd and a in {1, 2}")
    if c <= v - x:
        if x % 2 == 0:
            return CoverageDecision(Verdict.KNOWN_COVERED, citation="1,2,even", equivalent=L)
        if x == 3:
            return CoverageDecision(Verdict.KNOWN_COVERED, citation="max<=7", equivalent=L)
        cert = None
        if with_certificate:
            eq = Equivalent(1, 1, L)
            cert = _certificate(L, eq, lambda: realize_x_equals_2(a, b, x, c).path, Strategy.XEquals2.value)
        return CoverageDecision(Verdict.COVERED, strategy=Strategy.XEquals2.value, equivalent=L, multiplier=1, certificate=cert)
    from .catalog import omega

    eq = next(e for e in equivalents(L) if e.source == x)
    pairs = eq.multiset.pairs
    if len(pairs) == 3 and pairs[0][0] == 1 and pairs[0][1] >= omega(*pairs[1]) + omega(*pairs[2]):
        (_, ones), (p, cp), (q, cq) = pairs
        cert = None
        if with_certificate:
            cert = _certificate(L, eq, lambda: realize_omega_concat(ones, p, cp, q, cq).path, Strategy.OmegaConcat.value)
        return CoverageDecision(
            Verdict.COVERED, strategy=Strategy.OmegaConcat.value, equivalent=eq.multiset, multiplier=eq.multiplier, certificate=cert
        )
    return CoverageDecision(Verdict.UNKNOWN, reason="neither branch of the {1,2,x} argument applies")
