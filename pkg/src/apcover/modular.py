"""Progressions modulo a prime, the reduction that picks a safe prime, and
small exhaustive solvers for the modular cover problems.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations, product

from .errors import CapacityError, PreconditionError
from .generators import powers
from .progressions import Instance, Verdict, as_instance
from .setcover import SetCoverInstance, min_exact_cover, min_set_cover

ENUMERATION_CAP = 25

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# bases 2..41 decide primality for every n below this bound
_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981
_EXTRA_BASES = (43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


def is_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases.

    Exact below 3.3e24; above that the extra bases make it a strong
    probable-prime test.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _SMALL_PRIMES if n < _DETERMINISTIC_LIMIT else _SMALL_PRIMES + _EXTRA_BASES
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than ``n``."""
    c = max(n + 1, 2)
    while not is_prime(c):
        c += 1
    return c


@dataclass(frozen=True)
class ZpInstance:
    p: int
    elements: frozenset

    def __post_init__(self):
        if not is_prime(self.p):
            raise PreconditionError(f"{self.p} is not prime")
        object.__setattr__(self, "elements", frozenset(self.elements))
        for r in self.elements:
            if not 0 <= r < self.p:
                raise PreconditionError(f"residue {r} outside [0, {self.p})")

    def sorted(self) -> list[int]:
        return sorted(self.elements)


class ZpAP:
    """An AP ``start, start+diff, ...`` of ``length`` terms modulo ``p``.

    Equality and hashing go by the element set, so e.g. the full cycle has a
    single identity regardless of which start and difference produced it.
    """

    __slots__ = ("p", "start", "diff", "length", "_elems")

    def __init__(self, p: int, start: int, diff: int, length: int):
        if not 1 <= length <= p:
            raise PreconditionError(f"length must lie in [1, {p}]")
        diff %= p
        if length >= 2 and diff == 0:
            raise PreconditionError("a multi-element modular AP needs a nonzero diff")
        self.p = p
        self.start = start % p
        self.diff = diff if length >= 2 else 0
        self.length = length
        self._elems = frozenset((self.start + i * diff) % p for i in range(length))

    def elements(self) -> frozenset:
        return self._elems

    def terms(self) -> list[int]:
        return [(self.start + i * self.diff) % self.p for i in range(self.length)]

    def __iter__(self):
        return iter(self.terms())

    def __len__(self) -> int:
        return self.length

    def __contains__(self, r) -> bool:
        return r in self._elems

    def __eq__(self, other):
        if isinstance(other, ZpAP):
            return self.p == other.p and self._elems == other._elems
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self._elems))

    def __repr__(self):
        return f"ZpAP(p={self.p}, start={self.start}, diff={self.diff}, length={self.length})"


def mod_project(X, p: int) -> list[int]:
    """Residues of ``X`` modulo ``p`` with repeats kept, in the order of ``X``."""
    if p < 2:
        raise PreconditionError("p must be at least 2")
    return [x % p for x in as_instance(X)]


@dataclass(frozen=True)
class SuitabilityReport:
    p: int
    suitable: bool
    pairs_checked: int
    triples_checked: int
    violation: str = ""


def suitability_report(p: int, X) -> SuitabilityReport:
    """Check both divisibility conditions that make ``p`` a safe modulus.

    ``p`` must divide no ``x - y`` for distinct ``x, y`` and no nonzero
    ``2x - y - z`` over all (not necessarily distinct) input triples.  The
    triple condition is checked through residue classes: for each ``(x, y)``
    a bad ``z`` is any member of the class of ``2x - y`` other than
    ``2x - y`` itself.
    """
    X = as_instance(X)
    xs = X.elements
    n = len(xs)
    classes: dict[int, list[int]] = defaultdict(list)
    for x in xs:
        classes[x % p].append(x)
    pairs = n * (n - 1) // 2
    for members in classes.values():
        if len(members) > 1:
            a, b = members[0], members[1]
            return SuitabilityReport(p, False, pairs, 0, f"{p} divides {b} - {a}")
    for x in xs:
        for y in xs:
            target = 2 * x - y
            for z in classes.get(target % p, ()):
                if z != target:
                    return SuitabilityReport(
                        p, False, pairs, n * n * n,
                        f"{p} divides 2*{x} - {y} - {z} = {target - z}")
    return SuitabilityReport(p, True, pairs, n * n * n)


def is_suitable_prime(p: int, X) -> bool:
    return suitability_report(p, X).suitable


def reduce_mod_p(X) -> tuple[int, ZpInstance]:
    """Smallest suitable prime and the (injective) projection of ``X``."""
    X = as_instance(X)
    p = 2
    while not is_suitable_prime(p, X):
        p = next_prime(p)
    return p, ZpInstance(p, frozenset(mod_project(X, p)))


def zp_enumerate_aps(inst: ZpInstance, cap: int = ENUMERATION_CAP) -> list[ZpAP]:
    """Every modular AP whose elements all lie in ``inst``, one per element set."""
    elems = inst.elements
    if len(elems) > cap:
        raise CapacityError(f"{len(elems)} residues exceed the enumeration cap of {cap}")
    p = inst.p
    seen: dict[frozenset, ZpAP] = {}
    for s in sorted(elems):
        seen.setdefault(frozenset([s]), ZpAP(p, s, 0, 1))
    for s, t in product(sorted(elems), repeat=2):
        if s == t:
            continue
        d = (t - s) % p
        length = 2
        while length < p and (s + length * d) % p in elems:
            length += 1
        for n in range(2, length + 1):
            ap = ZpAP(p, s, d, n)
            seen.setdefault(ap.elements(), ap)
    return list(seen.values())


def _family(inst: ZpInstance, cap: int) -> tuple[SetCoverInstance, list[ZpAP]]:
    aps = zp_enumerate_aps(inst, cap)
    pos = {r: i for i, r in enumerate(inst.sorted())}
    sets = []
    for i, ap in enumerate(aps):
        m = 0
        for r in ap.elements():
            m |= 1 << pos[r]
        sets.append((m, i))
    return SetCoverInstance(len(pos), tuple(sets), cap=cap), aps


def zp_min_cover(inst: ZpInstance, cap: int = ENUMERATION_CAP) -> tuple[int, list[ZpAP]]:
    sc, aps = _family(inst, cap)
    res = min_set_cover(sc)
    return res.size, [aps[i] for i in res.chosen]


def zp_min_exact_cover(inst: ZpInstance, cap: int = ENUMERATION_CAP) -> tuple[int, list[ZpAP]]:
    sc, aps = _family(inst, cap)
    res = min_exact_cover(sc)
    return res.size, [aps[i] for i in res.chosen]


def zp_cover_decide(inst: ZpInstance, k: int, cap: int = ENUMERATION_CAP) -> bool:
    sc, _ = _family(inst, cap)
    return min_set_cover(sc, max_size=k) is not None


def zp_exact_cover_decide(inst: ZpInstance, k: int, cap: int = ENUMERATION_CAP) -> bool:
    sc, _ = _family(inst, cap)
    return min_exact_cover(sc, max_size=k) is not None


def verify_zp_solution(inst: ZpInstance, aps, exact: bool = False) -> Verdict:
    """Modular counterpart of :func:`~apcover.progressions.verify_solution`."""
    seen: dict[int, int] = {}
    for idx, ap in enumerate(aps):
        if ap.p != inst.p:
            return Verdict(False, f"not contained: AP #{idx} lives modulo {ap.p}, not {inst.p}")
        for r in ap.terms():
            if r not in inst.elements:
                return Verdict(False, f"not contained: {ap} has residue {r} outside the instance")
            if exact and r in seen:
                return Verdict(False, f"overlap: residue {r} lies in APs #{seen[r]} and #{idx}")
            seen.setdefault(r, idx)
    for r in inst.sorted():
        if r not in seen:
            return Verdict(False, f"uncovered: residue {r} is not covered")
    return Verdict(True, "ok")


def forms_three_ap(a: int, b: int, c: int, p: int | None = None) -> bool:
    """Whether some ordering of the three values has ``2*mid == lo + hi`` (mod ``p`` if given)."""
    for mid, u, v in ((a, b, c), (b, a, c), (c, a, b)):
        lhs = 2 * mid - u - v
        if (lhs % p == 0) if p else lhs == 0:
            return True
    return False


def is_three_ap_preserving(X, A) -> bool:
    """Same 3-AP triples on both sides under the index correspondence ``x_i <-> a_i``.

    ``X`` and ``A`` are index-aligned sequences (``A`` need not be sorted).
    """
    xs = list(X.elements if isinstance(X, Instance) else X)
    as_ = list(A.elements if isinstance(A, Instance) else A)
    if len(xs) != len(as_):
        raise PreconditionError(f"size mismatch: {len(xs)} vs {len(as_)}")
    for i, j, k in combinations(range(len(xs)), 3):
        if forms_three_ap(xs[i], xs[j], xs[k]) != forms_three_ap(as_[i], as_[j], as_[k]):
            return False
    return True


def search_small_preserver(n: int, bound: int, max_size: int = 10) -> tuple[int, ...] | None:
    """Look for distinct values in ``[0, bound]`` with the same 3-AP triples as
    ``powers(n) = {0, 1, 2, 4, ..., 2**n}``.

    The answer is index-aligned with the sorted powers family and is the
    lexicographically first such tuple, or None when the bounded search space
    holds none.  Backtracking assigns one position at a time and checks every
    triple the new position completes.
    """
    xs = list(powers(n).elements)
    m = len(xs)
    if m > max_size:
        raise CapacityError(f"exhaustive search is limited to {max_size} values")
    if bound < 0:
        raise PreconditionError("bound must be non-negative")
    want = {
        (i, j, k): forms_three_ap(xs[i], xs[j], xs[k])
        for i, j, k in combinations(range(m), 3)
    }
    vals: list[int] = []
    used: set[int] = set()

    def extend() -> bool:
        k = len(vals)
        if k == m:
            return True
        for v in range(bound + 1):
            if v in used:
                continue
            if all(
                forms_three_ap(vals[i], vals[j], v) == want[(i, j, k)]
                for i, j in combinations(range(k), 2)
            ):
                vals.append(v)
                used.add(v)
                if extend():
                    return True
                vals.pop()
                used.discard(v)
        return False

    return tuple(vals) if extend() else None
