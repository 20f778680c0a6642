"""Arithmetic-progression value types and the primitives the solvers share.

Integers are plain Python ints throughout, so values of any magnitude are
handled exactly.  Every multi-element progression is stored ascending with a
positive difference; a single element is stored with difference 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import InvalidDifferenceError, PreconditionError

COVER = "cover"
EXACT_COVER = "exact-cover"


@dataclass(frozen=True, order=True)
class AP:
    """A finite arithmetic progression ``first, first+diff, ..., first+(length-1)*diff``."""

    first: int
    diff: int
    length: int

    def __post_init__(self):
        if self.length < 1:
            raise PreconditionError(f"AP length must be positive, got {self.length}")
        if self.length == 1 and self.diff != 0:
            raise PreconditionError("a singleton AP must have diff 0")
        if self.length >= 2 and self.diff <= 0:
            raise PreconditionError("a multi-element AP must have a positive diff")

    @classmethod
    def of(cls, first: int, diff: int, length: int) -> "AP":
        """Build a canonical AP, collapsing length-1 progressions to diff 0."""
        if length == 1:
            return cls(first, 0, 1)
        if diff < 0:
            return cls(first + (length - 1) * diff, -diff, length)
        return cls(first, diff, length)

    @classmethod
    def from_elements(cls, values: Iterable[int]) -> "AP":
        vals = sorted(values)
        if not vals:
            raise PreconditionError("an AP needs at least one element")
        if not is_ap(vals):
            raise PreconditionError(f"{vals} is not an arithmetic progression")
        if len(vals) == 1:
            return cls(vals[0], 0, 1)
        return cls(vals[0], vals[1] - vals[0], len(vals))

    @property
    def last(self) -> int:
        return self.first + (self.length - 1) * self.diff

    def element(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return self.first + i * self.diff

    def elements(self) -> tuple[int, ...]:
        return tuple(self)

    def __iter__(self) -> Iterator[int]:
        x = self.first
        for _ in range(self.length):
            yield x
            x += self.diff

    def __len__(self) -> int:
        return self.length

    def __contains__(self, x: object) -> bool:
        if not isinstance(x, int) or x < self.first or x > self.last:
            return False
        if self.diff == 0:
            return x == self.first
        return (x - self.first) % self.diff == 0

    def __str__(self) -> str:
        if self.length <= 4:
            return "{" + ",".join(map(str, self)) + "}"
        return f"{{{self.first},{self.first + self.diff},...,{self.last}}}"


class Instance:
    """A finite set of distinct integers kept in ascending order."""

    __slots__ = ("elements", "_members", "_index")

    def __init__(self, values: Iterable[int] = ()):
        vals = sorted(values)
        for a, b in zip(vals, vals[1:]):
            if a == b:
                raise PreconditionError(f"duplicate element {a}")
        self.elements: tuple[int, ...] = tuple(vals)
        self._members = frozenset(vals)
        self._index = None

    def __contains__(self, x: object) -> bool:
        return x in self._members

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Instance):
            return self.elements == other.elements
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"Instance({list(self.elements)})"

    @property
    def members(self) -> frozenset:
        return self._members

    def index(self, x: int) -> int:
        """Position of ``x`` in the sorted element list."""
        if self._index is None:
            self._index = {v: i for i, v in enumerate(self.elements)}
        return self._index[x]


@dataclass(frozen=True)
class Solution:
    aps: tuple[AP, ...]
    kind: str = COVER

    def __len__(self) -> int:
        return len(self.aps)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def as_instance(X) -> Instance:
    return X if isinstance(X, Instance) else Instance(X)


def is_ap(seq: Sequence[int]) -> bool:
    """True iff the sorted sequence has all consecutive differences equal."""
    if len(seq) <= 2:
        return True
    d = seq[1] - seq[0]
    return all(b - a == d for a, b in zip(seq[1:], seq[2:]))


def make_ap(X, a: int, d: int) -> AP:
    """Inclusion-maximal AP of difference ``d`` through ``a`` inside ``X``."""
    X = as_instance(X)
    if d <= 0:
        raise InvalidDifferenceError(f"difference must be positive, got {d}")
    if a not in X:
        raise PreconditionError(f"{a} is not an element of the instance")
    lo = a
    while lo - d in X:
        lo -= d
    hi = a
    while hi + d in X:
        hi += d
    return AP.of(lo, d, (hi - lo) // d + 1)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b)``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def intersect(A: AP, B: AP) -> AP | None:
    """Intersection of two APs, or None when they share no element.

    The common elements satisfy two congruences; they are combined with the
    extended Euclidean algorithm and clipped to the overlapping range.
    """
    if A.length == 1:
        return A if A.first in B else None
    if B.length == 1:
        return B if B.first in A else None
    lo = max(A.first, B.first)
    hi = min(A.last, B.last)
    if lo > hi:
        return None
    g, p, _ = xgcd(A.diff, B.diff)
    delta = B.first - A.first
    if delta % g:
        return None
    step = A.diff // g * B.diff
    x0 = A.first + A.diff * ((delta // g) * p % (B.diff // g))
    x = lo + (x0 - lo) % step
    if x > hi:
        return None
    return AP.of(x, step, (hi - x) // step + 1)


def prefix_meet(start: int, d: int, X, blocked=frozenset()) -> AP | None:
    """Longest prefix of ``start, start+d, ...`` inside ``X`` avoiding ``blocked``."""
    if d < 0:
        raise InvalidDifferenceError(f"difference must be non-negative, got {d}")
    if start not in X or start in blocked:
        return None
    if d == 0:
        return AP(start, 0, 1)
    n = 1
    x = start + d
    while x in X and x not in blocked:
        n += 1
        x += d
    return AP.of(start, d, n)


def enumerate_maximal_aps(X) -> list[AP]:
    """All inclusion-maximal APs inside ``X``, ordered by (diff, first).

    Singletons appear only for one-element instances, since any two elements
    already span a multi-element AP.
    """
    X = as_instance(X)
    xs = X.elements
    if len(xs) == 1:
        return [AP(xs[0], 0, 1)]
    out = []
    for i, a in enumerate(xs):
        for b in xs[i + 1:]:
            d = b - a
            if a - d in X:
                continue
            n = 2
            x = b + d
            while x in X:
                n += 1
                x += d
            out.append(AP(a, d, n))
    out.sort(key=lambda ap: (ap.diff, ap.first))
    return out


def enumerate_all_aps(X) -> list[AP]:
    """Every AP contained in ``X``: singletons, then longer ones by (diff, first, length)."""
    X = as_instance(X)
    out = [AP(x, 0, 1) for x in X]
    for m in enumerate_maximal_aps(X):
        if m.length < 2:
            continue
        for s in range(m.length - 1):
            for n in range(2, m.length - s + 1):
                out.append(AP(m.first + s * m.diff, m.diff, n))
    out[len(X):] = sorted(out[len(X):], key=lambda ap: (ap.diff, ap.first, ap.length))
    return out


def has_three_term_ap(X) -> bool:
    X = as_instance(X)
    xs = X.elements
    for i, a in enumerate(xs):
        for b in xs[i + 1:]:
            if 2 * b - a in X:
                return True
    return False


def verify_solution(X, S: Solution) -> Verdict:
    """Check that ``S`` covers (or, for exact covers, partitions) ``X``.

    The reason string starts with ``not contained``, ``overlap`` or
    ``uncovered`` and names the first violation found.
    """
    X = as_instance(X)
    seen: dict[int, int] = {}
    for idx, ap in enumerate(S.aps):
        for x in ap:
            if x not in X:
                return Verdict(False, f"not contained: {ap} has element {x} outside the instance")
            if S.kind == EXACT_COVER and x in seen:
                return Verdict(False, f"overlap: element {x} lies in APs #{seen[x]} and #{idx}")
            seen.setdefault(x, idx)
    for x in X:
        if x not in seen:
            return Verdict(False, f"uncovered: element {x} is not covered")
    return Verdict(True, "ok")
