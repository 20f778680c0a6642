"""Branching search for partitioning a set of integers into at most k APs.

The search keeps k slots.  Slot ``i`` holds the committed members ``T[i]``,
the potentially covered continuation ``P[i]`` and the difference ``d[i]``
(0 while unknown).  Every node dispatches on four cases, in order:

1. two continuations overlap: branch on which one stops before the overlap;
2. a slot has exactly two members and no difference yet: branch on the
   difference, using a bounded set of gcd-derived candidates;
3. every element is committed or potentially covered: report the partition;
4. otherwise put the smallest free element into a slot with fewer than two
   members.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import PreconditionError
from .progressions import AP, EXACT_COVER, Instance, Solution, as_instance, is_ap, prefix_meet

_EMPTY: frozenset = frozenset()


@dataclass
class PartitionStats:
    nodes: int = 0
    overlap_branches: int = 0
    difference_branches: int = 0
    assignment_branches: int = 0


@dataclass(frozen=True)
class PartitionState:
    assigned: tuple[frozenset, ...]
    potential: tuple[frozenset, ...]
    diffs: tuple[int, ...]

    @classmethod
    def initial(cls, X: Instance, k: int) -> "PartitionState":
        assigned = [_EMPTY] * k
        if len(X):
            assigned[0] = frozenset([X[0]])
        return cls(tuple(assigned), (_EMPTY,) * k, (0,) * k)

    def check(self, X: Instance) -> None:
        """Assert the structural invariants (used by the debug mode)."""
        k = len(self.assigned)
        for i in range(k):
            assert self.assigned[i] <= X.members
            for j in range(k):
                if i != j:
                    assert not self.assigned[i] & self.assigned[j]
                assert not self.potential[i] & self.assigned[j]
            if self.diffs[i]:
                assert len(self.assigned[i]) >= 2
                ts = sorted(self.assigned[i])
                assert all(b - a == self.diffs[i] for a, b in zip(ts, ts[1:]))


@dataclass(frozen=True)
class Decision:
    feasible: bool
    solution: Solution | None = None
    stats: PartitionStats = field(default_factory=PartitionStats)

    def __bool__(self) -> bool:
        return self.feasible


def candidate_differences(a_lo: int, a_hi: int, diffs, k: int) -> list[int]:
    """Possible differences of a slot known to contain ``a_lo < a_hi``.

    For every tuple ``(b_1, ..., b_k)`` in ``{0, ..., 2**k + 1}**k`` take
    ``g = gcd(a_hi - a_lo, b_1*d_1, ..., b_k*d_k)`` (zero terms ignored) and
    emit ``g // m`` for each ``m <= k*(k+1)`` dividing ``g``.  Returned in
    decreasing order without repeats.
    """
    if a_hi <= a_lo:
        raise PreconditionError("expected a_lo < a_hi")
    gs = {a_hi - a_lo}
    bmax = (1 << k) + 1
    for dj in diffs:
        if dj:
            # folding coordinates one at a time yields the same set of gcds
            gs = {gcd(g, b * dj) if b else g for g in gs for b in range(bmax + 1)}
    out = set()
    mmax = k * (k + 1)
    for g in gs:
        for m in range(1, mmax + 1):
            if g % m == 0:
                out.add(g // m)
    return sorted(out, reverse=True)


def update_potential(P: frozenset, T) -> frozenset:
    """Truncate ``P`` below its smallest element shared with ``T``."""
    common = P & T if isinstance(T, frozenset) else P.intersection(T)
    if not common:
        return P
    c = min(common)
    return frozenset(x for x in P if x < c)


class _Partitioner:
    def __init__(self, X: Instance, k: int, debug: bool = False):
        self.X = X
        self.k = k
        self.debug = debug
        self.stats = PartitionStats()

    def run(self, state: PartitionState) -> list[AP] | None:
        self.stats.nodes += 1
        if self.debug:
            state.check(self.X)
        T, P, d = state.assigned, state.potential, state.diffs
        k = self.k

        overlap = None
        for i in range(k):
            if not P[i]:
                continue
            for j in range(i + 1, k):
                common = P[i] & P[j]
                if common:
                    c = min(common)
                    if overlap is None or c < overlap[0]:
                        overlap = (c, i, j)
        if overlap is not None:
            c, i, j = overlap
            for s in (i, j):
                self.stats.overlap_branches += 1
                pot = list(P)
                pot[s] = frozenset(x for x in P[s] if x < c)
                found = self.run(PartitionState(T, tuple(pot), d))
                if found is not None:
                    return found
            return None

        for i in range(k):
            if len(T[i]) == 2 and d[i] == 0:
                return self._fix_difference(state, i)

        covered = set().union(*T, *P)
        if len(covered) == len(self.X):
            return self._emit(state)

        a = min(x for x in self.X if x not in covered)
        tried_empty = False
        for i in range(k):
            if len(T[i]) >= 2:
                continue
            if not T[i]:
                # empty slots are interchangeable
                if tried_empty:
                    continue
                tried_empty = True
            self.stats.assignment_branches += 1
            assigned = list(T)
            assigned[i] = T[i] | {a}
            found = self.run(PartitionState(tuple(assigned), P, d))
            if found is not None:
                return found
        return None

    def _fix_difference(self, state: PartitionState, i: int) -> list[AP] | None:
        T, P, d = state.assigned, state.potential, state.diffs
        lo, hi = sorted(T[i])
        others = frozenset().union(*(T[j] for j in range(self.k) if j != i))
        for dd in candidate_differences(lo, hi, d, self.k):
            members = []
            x = lo
            while x <= hi and x in self.X and x not in others:
                members.append(x)
                x += dd
            if x <= hi:
                continue
            run = frozenset(members)
            cont = prefix_meet(hi + dd, dd, self.X, others)
            pot = [update_potential(P[j], run) for j in range(self.k)]
            pot[i] = frozenset(cont) if cont is not None else _EMPTY
            assigned = list(T)
            assigned[i] = run
            diffs = list(d)
            diffs[i] = dd
            self.stats.difference_branches += 1
            found = self.run(PartitionState(tuple(assigned), tuple(pot), tuple(diffs)))
            if found is not None:
                return found
        return None

    def _emit(self, state: PartitionState) -> list[AP]:
        aps = []
        for t, p in zip(state.assigned, state.potential):
            if not t:
                continue
            elems = sorted(t | p)
            assert is_ap(elems), f"slot {elems} is not an AP"
            aps.append(AP.from_elements(elems))
        return aps


def exact_cover_decide(X, k: int, *, debug: bool = False) -> Decision:
    """Decide whether ``X`` splits into at most ``k`` disjoint APs contained in ``X``."""
    X = as_instance(X)
    if k < 0:
        raise ValueError("k must be non-negative")
    if not len(X):
        return Decision(True, Solution((), EXACT_COVER))
    if k == 0:
        return Decision(False)
    search = _Partitioner(X, k, debug)
    found = search.run(PartitionState.initial(X, k))
    if found is None:
        return Decision(False, None, search.stats)
    return Decision(True, Solution(tuple(found), EXACT_COVER), search.stats)


def exact_cover_minimize(X) -> tuple[int, Solution]:
    """Smallest ``k`` for which an exact cover by ``k`` APs exists."""
    X = as_instance(X)
    k = 0
    while True:
        res = exact_cover_decide(X, k)
        if res.feasible:
            return k, res.solution
        k += 1
