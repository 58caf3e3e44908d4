"""Length multisets, paths on K_v, and the realization checks everything else relies on."""

from __future__ import annotations

import enum
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence


class MalformedInput(ValueError):
    """Raised for inputs that violate a type invariant or a stated precondition."""


class RealizationKind(enum.Enum):
    LINEAR = "linear"
    CYCLIC = "cyclic"


@dataclass(frozen=True)
class LengthMultiset:
    """A multiset of edge lengths of total size v-1.

    Stored as sorted ``(length, count)`` pairs with no zero counts, so two
    multisets are equal exactly when they hold the same lengths.
    """

    v: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        total = 0
        prev = 0
        for length, count in self.pairs:
            if length <= prev:
                raise MalformedInput("pairs must be sorted by strictly increasing length")
            if count <= 0:
                raise MalformedInput(f"non-positive multiplicity for length {length}")
            if length >= self.v:
                raise MalformedInput(f"length {length} does not fit in K_{self.v}")
            prev = length
            total += count
        if self.v < 1 or total != self.v - 1:
            raise MalformedInput(f"multiset of size {total} cannot live in K_{self.v}")

    @classmethod
    def of(cls, counts: Mapping[int, int] | Iterable[int], v: int | None = None) -> LengthMultiset:
        """Build from a length->count mapping or an iterable of lengths; v defaults to size+1."""
        if isinstance(counts, Mapping):
            tally = Counter({k: c for k, c in counts.items() if c})
        else:
            tally = Counter(counts)
        for length, count in tally.items():
            if length < 1:
                raise MalformedInput(f"length {length} is not positive")
            if count < 0:
                raise MalformedInput(f"negative multiplicity for length {length}")
        size = sum(tally.values())
        if v is None:
            v = size + 1
        return cls(v, tuple(sorted(tally.items())))

    @classmethod
    def parse(cls, text: str, v: int | None = None) -> LengthMultiset:
        """Parse ``1^6,7^18`` style text; ``^1`` may be omitted."""
        tally: Counter[int] = Counter()
        text = text.strip()
        if text in ("", "{}"):
            return cls.of({}, v)
        for term in text.strip("{}").split(","):
            m = re.fullmatch(r"\s*(\d+)\s*(?:\^\s*(\d+))?\s*", term)
            if m is None:
                raise MalformedInput(f"bad multiset term {term!r}")
            tally[int(m.group(1))] += int(m.group(2) or 1)
        return cls.of(tally, v)

    @property
    def size(self) -> int:
        return self.v - 1

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(length for length, _ in self.pairs)

    def count(self, length: int) -> int:
        for ell, c in self.pairs:
            if ell == length:
                return c
        return 0

    def as_counter(self) -> Counter[int]:
        return Counter(dict(self.pairs))

    def max_length(self) -> int:
        return self.pairs[-1][0] if self.pairs else 0

    def is_cyclic_ranged(self) -> bool:
        return self.max_length() <= self.v // 2

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs)

    def __str__(self) -> str:
        return ",".join(f"{ell}^{c}" if c != 1 else str(ell) for ell, c in self.pairs)


def ms(text: str) -> LengthMultiset:
    """Shorthand for :meth:`LengthMultiset.parse`."""
    return LengthMultiset.parse(text)


@dataclass(frozen=True)
class PathSeq:
    """A Hamiltonian path on K_v given as a permutation of 0..v-1."""

    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if sorted(labels) != list(range(len(labels))):
            raise MalformedInput("labels must be a permutation of 0..v-1")

    @classmethod
    def parse(cls, text: str) -> PathSeq:
        try:
            return cls(tuple(int(tok) for tok in text.replace("[", "").replace("]", "").split(",")))
        except ValueError as exc:
            raise MalformedInput(f"bad path {text!r}") from exc

    @property
    def v(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[int]:
        return iter(self.labels)

    def __getitem__(self, i):
        return self.labels[i]

    def __str__(self) -> str:
        return ",".join(map(str, self.labels))


def as_path(path: PathSeq | Sequence[int]) -> PathSeq:
    return path if isinstance(path, PathSeq) else PathSeq(tuple(path))


def linear_lengths(labels: Sequence[int]) -> list[int]:
    return [abs(b - a) for a, b in zip(labels, labels[1:])]


def cyclic_length(a: int, b: int, v: int) -> int:
    d = abs(b - a) % v
    return min(d, v - d)


def linear_length_multiset(path: PathSeq | Sequence[int]) -> LengthMultiset:
    path = as_path(path)
    return LengthMultiset.of(linear_lengths(path.labels), path.v)


def cyclic_length_multiset(path: PathSeq | Sequence[int]) -> LengthMultiset:
    path = as_path(path)
    v = path.v
    return LengthMultiset.of((cyclic_length(a, b, v) for a, b in zip(path, path.labels[1:])), v)


def length_multiset(path: PathSeq | Sequence[int], kind: RealizationKind) -> LengthMultiset:
    if kind is RealizationKind.LINEAR:
        return linear_length_multiset(path)
    return cyclic_length_multiset(path)


@dataclass(frozen=True)
class Verification:
    ok: bool
    computed: LengthMultiset
    target: LengthMultiset
    missing: dict[int, int] = field(default_factory=dict)  # in target, not realized
    extra: dict[int, int] = field(default_factory=dict)  # realized, not in target

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return f"ok: path realizes {{{self.target}}}"
        return (
            f"mismatch: path realizes {{{self.computed}}}, target {{{self.target}}}; "
            f"missing {_fmt(self.missing)}, extra {_fmt(self.extra)}"
        )


def _fmt(counts: Mapping[int, int]) -> str:
    return "{" + ",".join(f"{k}^{c}" for k, c in sorted(counts.items())) + "}"


def verify_realization(
    path: PathSeq | Sequence[int], target: LengthMultiset, kind: RealizationKind = RealizationKind.LINEAR
) -> Verification:
    path = as_path(path)
    if path.v != target.v:
        raise MalformedInput(f"path has {path.v} labels but the multiset lives in K_{target.v}")
    computed = length_multiset(path, kind)
    got, want = computed.as_counter(), target.as_counter()
    return Verification(
        ok=got == want,
        computed=computed,
        target=target,
        missing=dict(want - got),
        extra=dict(got - want),
    )


def divisors_above_one(v: int) -> list[int]:
    return [d for d in range(2, v + 1) if v % d == 0]


def admissibility_violation(L: LengthMultiset) -> int | None:
    """Return the first divisor d of v whose multiples occur more than v-d times, or None."""
    for d in divisors_above_one(L.v):
        if sum(c for ell, c in L.pairs if ell % d == 0) > L.v - d:
            return d
    return None


def is_admissible(L: LengthMultiset) -> bool:
    return admissibility_violation(L) is None


def fauxset_necessity(L: LengthMultiset) -> bool:
    """Counting bound for linear realizations: edges other than the longest must join its columns."""
    if not L.pairs:
        return True
    top, mult = L.pairs[-1]
    return L.size - mult >= top - 1


@dataclass(frozen=True)
class Classification:
    standard: bool
    perfect: bool


def classify(path: PathSeq | Sequence[int]) -> Classification:
    path = as_path(path)
    ends = {path.labels[0], path.labels[-1]}
    return Classification(standard=0 in ends, perfect=ends == {0, path.v - 1})


def q_star(v: int, x: int, k: int) -> int:
    """Row index of the top member of the residue class k modulo x within 0..v-1."""
    q, r = divmod(v, x)
    return q if k < r else q - 1


@dataclass(frozen=True)
class Fauxset:
    """Labels congruent to k modulo x inside 0..v-1: one column of the width-x grid."""

    x: int
    k: int
    v: int

    def __post_init__(self) -> None:
        if not 0 <= self.k < self.x:
            raise MalformedInput(f"residue {self.k} outside 0..{self.x - 1}")

    @property
    def top_row(self) -> int:
        return q_star(self.v, self.x, self.k)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(range(self.k, self.v, self.x))

    @property
    def top(self) -> int:
        return self.top_row * self.x + self.k


class VerificationFailure(RuntimeError):
    """A construction produced a path that does not realize its target.  Always a defect."""

    def __init__(self, strategy: str, report: Verification):
        self.strategy = strategy
        self.report = report
        super().__init__(f"{strategy}: {report.describe()}")


@dataclass(frozen=True)
class Certificate:
    path: PathSeq
    target: LengthMultiset
    kind: RealizationKind
    strategy: str
    standard: bool
    perfect: bool

    def recheck(self) -> Verification:
        return verify_realization(self.path, self.target, self.kind)


def certify(
    path: PathSeq | Sequence[int],
    target: LengthMultiset,
    strategy: str,
    kind: RealizationKind = RealizationKind.LINEAR,
) -> Certificate:
    """Verify ``path`` against ``target`` and wrap it; a mismatch raises :class:`VerificationFailure`."""
    path = as_path(path)
    if path.v != target.v:
        computed = length_multiset(path, kind)
        raise VerificationFailure(strategy, Verification(False, computed, target))
    report = verify_realization(path, target, kind)
    if not report.ok:
        raise VerificationFailure(strategy, report)
    flags = classify(path)
    return Certificate(path, target, kind, strategy, flags.standard, flags.perfect)
