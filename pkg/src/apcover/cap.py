"""Bounded search tree for covering a set of integers with at most k APs.

Each level commits one inclusion-maximal AP.  It is found by pairing two of
the k*k+1 smallest uncovered elements and guessing how many steps of the AP
separate them (at most 2**k).  Once at most k*k elements are left uncovered
the remainder is handed to the exact set-cover engine.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .progressions import AP, COVER, Instance, Solution, as_instance, enumerate_maximal_aps, make_ap
from .setcover import DEFAULT_CAP, SetCoverInstance, min_set_cover


@dataclass
class SearchStats:
    nodes: int = 0
    base_calls: int = 0
    memo_hits: int = 0


@dataclass(frozen=True)
class Decision:
    feasible: bool
    solution: Solution | None = None
    stats: SearchStats = field(default_factory=SearchStats)

    def __bool__(self) -> bool:
        return self.feasible


def difference_candidates(D: int, k: int) -> list[int]:
    """Differences ``D // l`` for ``l = 1 .. 2**k`` that divide ``D`` exactly."""
    return [D // l for l in range(1, (1 << k) + 1) if D % l == 0]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _prune_dominated(masks):
    kept = []
    for m in sorted(set(masks), key=lambda m: -m.bit_count()):
        if not any(m & ~o == 0 for o in kept):
            kept.append(m)
    return kept


class _CapSearch:
    def __init__(self, X: Instance, k: int, cap: int):
        self.X = X
        self.xs = X.elements
        self.k = k
        self.cap = cap
        self.full = (1 << len(self.xs)) - 1
        self.stats = SearchStats()
        self._aps: dict[tuple[int, int], tuple[AP, int]] = {}
        self._maximal: list[tuple[AP, int]] | None = None
        self._failed: set[tuple[int, int]] = set()

    def mask_of(self, ap: AP) -> int:
        m = 0
        for x in ap:
            m |= 1 << self.X.index(x)
        return m

    def ap_through(self, a: int, d: int) -> tuple[AP, int]:
        key = (a, d)
        got = self._aps.get(key)
        if got is None:
            ap = make_ap(self.X, a, d)
            got = self._aps[key] = (ap, self.mask_of(ap))
        return got

    @property
    def maximal(self) -> list[tuple[AP, int]]:
        if self._maximal is None:
            self._maximal = [(ap, self.mask_of(ap)) for ap in enumerate_maximal_aps(self.X)]
        return self._maximal

    def base_case(self, rest: int, budget: int) -> list[AP] | None:
        """Cover the uncovered elements ``rest`` with at most ``budget`` maximal APs."""
        self.stats.base_calls += 1
        local = {b: i for i, b in enumerate(_bits(rest))}
        by_inter: dict[int, AP] = {}
        for ap, mask in self.maximal:
            inter = mask & rest
            if inter and inter not in by_inter:
                by_inter[inter] = ap
        widest = max(m.bit_count() for m in by_inter)
        if widest * budget < len(local):
            return None
        greedy = self._greedy(rest, budget, by_inter)
        if greedy is not None:
            return greedy
        masks = _prune_dominated(by_inter) if len(local) >= 12 else list(by_inter)
        by_mask: dict[int, AP] = {}
        for inter in masks:
            lm = 0
            for b in _bits(inter):
                lm |= 1 << local[b]
            by_mask[lm] = by_inter[inter]
        family = list(by_mask)
        inst = SetCoverInstance(len(local), tuple((m, i) for i, m in enumerate(family)), cap=self.cap)
        res = min_set_cover(inst, max_size=budget)
        if res is None:
            return None
        return [by_mask[family[i]] for i in res.chosen]

    @staticmethod
    def _greedy(rest: int, budget: int, by_inter: dict[int, AP]) -> list[AP] | None:
        picked = []
        while rest:
            if len(picked) == budget:
                return None
            best = max(by_inter, key=lambda m: (m & rest).bit_count())
            picked.append(by_inter[best])
            rest &= ~best
        return picked

    def covering(self, covered: int, used: int, budget: int, chosen: list[AP]) -> list[AP] | None:
        self.stats.nodes += 1
        rest = self.full & ~covered
        if rest == 0:
            return chosen
        if budget == 0:
            return None
        key = (covered, budget)
        if key in self._failed:
            self.stats.memo_hits += 1
            return None
        k = self.k
        if rest.bit_count() <= k * k:
            tail = self.base_case(rest, budget)
            found = None if tail is None else chosen + tail
        else:
            found = self._branch(covered, used, budget, chosen, rest)
        if found is None:
            self._failed.add(key)
        return found

    def _branch(self, covered, used, budget, chosen, rest):
        k = self.k
        smallest = []
        for b in _bits(rest):
            smallest.append(self.xs[b])
            if len(smallest) == k * k + 1:
                break
        branches: dict[int, AP] = {}
        for i in range(len(smallest) - 1):
            for j in range(i + 1, len(smallest)):
                for d in difference_candidates(smallest[j] - smallest[i], k):
                    ap, mask = self.ap_through(smallest[i], d)
                    nxt = covered | mask
                    if nxt != covered and nxt not in branches:
                        branches[nxt] = ap
        # widest progress first; dict order breaks ties deterministically
        order = sorted(branches, key=lambda m: -(m & rest).bit_count())
        for nxt in order:
            found = self.covering(nxt, used + 1, budget - 1, chosen + [branches[nxt]])
            if found is not None:
                return found
        return None


def cover_decide(X, k: int, *, cap: int = DEFAULT_CAP) -> Decision:
    """Decide whether ``X`` is the union of at most ``k`` APs contained in ``X``.

    A witness of at most ``k`` maximal APs is returned on success.  The
    set-cover fallback handles up to ``k*k`` elements, so ``k*k`` above ``cap``
    can raise :class:`~apcover.errors.CapacityError`.
    """
    X = as_instance(X)
    if k < 0:
        raise ValueError("k must be non-negative")
    search = _CapSearch(X, k, cap)
    found = search.covering(0, 0, k, [])
    if found is None:
        return Decision(False, None, search.stats)
    return Decision(True, Solution(tuple(found), COVER), search.stats)


def cover_minimize(X, *, cap: int = DEFAULT_CAP) -> tuple[int, Solution]:
    """Smallest ``k`` admitting a cover, by trying ``k = 0, 1, 2, ...``."""
    X = as_instance(X)
    k = 0
    while True:
        res = cover_decide(X, k, cap=cap)
        if res.feasible:
            return k, res.solution
        k += 1
