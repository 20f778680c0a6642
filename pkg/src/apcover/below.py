"""Set cover below the ``ceil(n/t)`` guarantee for t-uniform families.

A t-uniform family implicitly contains every t-subset of the universe, so
``ceil(n/t)`` sets always suffice.  The question is whether ``ceil(n/t) - k``
do.  The algorithm:

* greedily pick explicit sets that cover at least ``t + 1`` new elements,
  stopping early once padding the rest with t-subsets already fits the budget;
* otherwise the covered part ``G`` is small (O(k) elements).  Some solution
  spends ``s`` sets covering ``G`` plus ``h`` further elements, where ``h``
  follows from the budget, and pads the rest with t-subsets.  Colouring the
  uncovered elements with ``h`` colours shrinks this to a cover problem on
  ``G`` plus ``h`` colour classes.

When ``t`` does not divide ``n`` the last padding set is only partly used, so
the counting works with the exact slack (``h = n - |G| - t*(budget - s)``).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Iterator

from .errors import CapacityError, PreconditionError
from .progressions import AP, COVER, Solution, as_instance, enumerate_maximal_aps
from .setcover import DEFAULT_CAP, SetCoverInstance, min_set_cover

EXHAUSTIVE = "exhaustive"
RANDOMIZED = "randomized"
DEFAULT_DELTA = 1e-3
# above this many colourings the exhaustive mode switches to the splitter family
FULL_COLORING_LIMIT = 1 << 14


@dataclass(frozen=True)
class TUSCInstance:
    """Universe ``0..n-1``, uniformity ``t`` and the explicitly listed sets."""

    n: int
    t: int
    explicit_sets: tuple[frozenset, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise PreconditionError("n must be non-negative")
        if self.t < 1:
            raise PreconditionError("t must be at least 1")
        sets = tuple(frozenset(s) for s in self.explicit_sets)
        for s in sets:
            if any(not 0 <= x < self.n for x in s):
                raise PreconditionError(f"set {sorted(s)} leaves the universe [0, {self.n})")
        object.__setattr__(self, "explicit_sets", sets)

    @property
    def guarantee(self) -> int:
        return -(-self.n // self.t)

    def budget(self, k: int) -> int:
        return self.guarantee - k


@dataclass(frozen=True)
class GreedyOutcome:
    picked: tuple[int, ...]
    covered: frozenset
    early_yes: bool


@dataclass(frozen=True)
class BelowDecision:
    """``cover`` lists ``(source, elements)``; ``source`` is an explicit-set
    index, or None for an implicit t-subset."""

    feasible: bool
    cover: tuple[tuple[int | None, frozenset], ...] | None = None
    colorings: int = 0

    def __bool__(self) -> bool:
        return self.feasible


def _pad_count(inst: TUSCInstance, uncovered: int) -> int:
    return -(-uncovered // inst.t)


def greedy_phase(inst: TUSCInstance, k: int) -> GreedyOutcome:
    """Pick explicit sets by largest gain while the gain exceeds ``t``.

    Stops early (``early_yes``) once the picks plus t-subset padding of the
    uncovered rest fit into ``ceil(n/t) - k`` sets.
    """
    budget = inst.budget(k)
    covered: set[int] = set()
    picked: list[int] = []

    def fits() -> bool:
        return len(picked) + _pad_count(inst, inst.n - len(covered)) <= budget

    while not fits():
        best, gain = None, inst.t
        for i, s in enumerate(inst.explicit_sets):
            g = len(s - covered)
            if g > gain:
                best, gain = i, g
        if best is None:
            break
        picked.append(best)
        covered |= inst.explicit_sets[best]
    early = fits()
    if not early:
        t = inst.t
        assert len(picked) <= t * k and len(covered) <= t * t * k + t * k, \
            "greedy phase exceeded its size bound"
    return GreedyOutcome(tuple(picked), frozenset(covered), early)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _reduced_search(images: list[int], size: int, t: int, budget: int) -> list[int] | None:
    """At most ``budget`` sets, drawn from ``images`` or t-subsets, covering ``0..size-1``.

    Returns the images used; whatever they leave uncovered fits into the
    remaining budget as t-subsets.  Branches on the lowest open element: either
    an image covers it or it is left to the t-subsets.
    """
    containing = [[m for m in images if m >> e & 1] for e in range(size)]
    failed: set[tuple[int, int, int]] = set()

    def go(open_: int, left: int, used: int) -> list[int] | None:
        if used + -(-(left + open_.bit_count()) // t) <= budget:
            return []
        if not open_ or used + -(-left // t) > budget:
            return None
        key = (open_, left, used)
        if key in failed:
            return None
        e = (open_ & -open_).bit_length() - 1
        if used < budget:
            for m in containing[e]:
                rest = go(open_ & ~m, left, used + 1)
                if rest is not None:
                    return [m] + rest
        rest = go(open_ & ~(1 << e), left + 1, used)
        if rest is not None:
            return rest
        failed.add(key)
        return None

    return go((1 << size) - 1, 0, 0)


def _reduced_setcover(images: list[int], size: int, t: int, budget: int) -> list[int] | None:
    """Same question as :func:`_reduced_search`, answered by materialising every
    t-subset and calling the generic set-cover engine."""
    sets = [(m, i) for i, m in enumerate(images)]
    width = min(t, size)
    for combo in combinations(range(size), width):
        m = 0
        for e in combo:
            m |= 1 << e
        sets.append((m, -1))
    res = min_set_cover(SetCoverInstance(size, tuple(sets), cap=max(size, 1)), max_size=budget)
    if res is None:
        return None
    return [sets[p][0] for p in res.chosen if sets[p][1] >= 0]


_ENGINES = {"search": _reduced_search, "setcover": _reduced_setcover}


def _colorings(rest: list[int], h: int, mode: str, trials: int | None, seed: int,
               delta: float) -> Iterator[dict[int, int]]:
    if h == 0:
        yield {}
        return
    if mode == EXHAUSTIVE:
        if h ** len(rest) <= FULL_COLORING_LIMIT:
            for colors in product(range(h), repeat=len(rest)):
                yield dict(zip(rest, colors))
        else:
            # one colouring per h-subset, injective on it: still hits every h-set
            for chosen in combinations(rest, h):
                f = dict.fromkeys(rest, 0)
                f.update((x, c) for c, x in enumerate(chosen))
                yield f
    elif mode == RANDOMIZED:
        if trials is None:
            trials = math.ceil(math.exp(h) * math.log(1 / delta))
        rng = random.Random(seed)
        for _ in range(trials):
            yield {x: rng.randrange(h) for x in rest}
    else:
        raise PreconditionError(f"unknown colouring mode {mode!r}")


def color_coding_search(inst: TUSCInstance, covered: frozenset, sets_for_g: int, k: int, *,
                        mode: str = EXHAUSTIVE, trials: int | None = None, seed: int = 0,
                        delta: float = DEFAULT_DELTA, engine: str = "search",
                        cap: int = DEFAULT_CAP) -> tuple[list[int] | None, int]:
    """Look for ``sets_for_g`` sets that cover ``covered`` and enough outside
    elements for t-subset padding to finish within ``ceil(n/t) - k``.

    Returns the explicit set indices used (or None) and the number of
    colourings tried.
    """
    t, budget = inst.t, inst.budget(k)
    g_list = sorted(covered)
    rest = [x for x in range(inst.n) if x not in covered]
    h = max(inst.n - len(g_list) - t * (budget - sets_for_g), 0)
    if h > len(rest) or h > sets_for_g * t:
        return None, 0
    size = len(g_list) + h
    if size > cap:
        raise CapacityError(f"reduced universe of {size} elements exceeds the cap of {cap}")
    g_pos = {x: i for i, x in enumerate(g_list)}
    solve = _ENGINES[engine]
    tried = 0
    for f in _colorings(rest, h, mode, trials, seed, delta):
        tried += 1
        if h and len(set(f.values())) < h:
            continue
        owner: dict[int, int] = {}
        for i, s in enumerate(inst.explicit_sets):
            m = 0
            for x in s:
                if x in g_pos:
                    m |= 1 << g_pos[x]
                elif h:
                    m |= 1 << (len(g_list) + f[x])
            if m:
                owner.setdefault(m, i)
        found = solve(list(owner), size, t, sets_for_g)
        if found is not None:
            return [owner[m] for m in found], tried
    return None, tried


def _pad(inst: TUSCInstance, explicit: Iterable[int]) -> tuple[tuple[int | None, frozenset], ...]:
    cover = [(i, inst.explicit_sets[i]) for i in explicit]
    seen = set().union(*(s for _, s in cover)) if cover else set()
    left = [x for x in range(inst.n) if x not in seen]
    for j in range(0, len(left), inst.t):
        chunk = set(left[j:j + inst.t])
        # top up a short last chunk so it is a genuine t-subset
        for x in range(inst.n):
            if len(chunk) >= inst.t:
                break
            chunk.add(x)
        cover.append((None, frozenset(chunk)))
    return tuple(cover)


def tusc_below_decide(inst: TUSCInstance, k: int, *, mode: str = EXHAUSTIVE,
                      trials: int | None = None, seed: int = 0, delta: float = DEFAULT_DELTA,
                      engine: str = "search", cap: int = DEFAULT_CAP) -> BelowDecision:
    """Decide whether at most ``ceil(n/t) - k`` sets cover the universe.

    ``mode`` selects deterministic (exhaustive) or seeded random colourings;
    the randomized mode can only err by answering no on a yes-instance.
    """
    if k < 0:
        raise PreconditionError("k must be non-negative")
    budget = inst.budget(k)
    if budget < 0:
        return BelowDecision(False)
    greedy = greedy_phase(inst, k)
    if greedy.early_yes:
        return BelowDecision(True, _pad(inst, greedy.picked))
    total = 0
    for s in range(1, len(greedy.covered) + 1):
        found, tried = color_coding_search(
            inst, greedy.covered, s, k, mode=mode, trials=trials, seed=seed + s,
            delta=delta, engine=engine, cap=cap)
        total += tried
        if found is not None:
            cover = _pad(inst, found)
            assert len(cover) <= budget
            return BelowDecision(True, cover, total)
    return BelowDecision(False, None, total)


def check_tusc_cover(inst: TUSCInstance, cover, bound: int) -> bool:
    """Whether ``cover`` uses at most ``bound`` family members and covers everything."""
    if len(cover) > bound:
        return False
    seen: set[int] = set()
    for source, elems in cover:
        if source is None:
            if len(elems) != min(inst.t, inst.n):
                return False
        elif not 0 <= source < len(inst.explicit_sets) or inst.explicit_sets[source] != elems:
            return False
        seen |= elems
    return seen == set(range(inst.n))


@dataclass(frozen=True)
class CapBelowDecision:
    feasible: bool
    solution: Solution | None = None
    colorings: int = 0
    details: BelowDecision = field(default_factory=lambda: BelowDecision(False))

    def __bool__(self) -> bool:
        return self.feasible


def cap_tusc_instance(X) -> tuple[TUSCInstance, list[AP]]:
    """Positions of ``X`` as a 2-uniform instance whose explicit sets are the
    maximal APs with three or more terms (shorter ones are implicit pairs)."""
    X = as_instance(X)
    aps = [ap for ap in enumerate_maximal_aps(X) if ap.length >= 3]
    sets = tuple(frozenset(X.index(x) for x in ap) for ap in aps)
    return TUSCInstance(len(X), 2, sets), aps


def cap_below_decide(X, k: int, **kwargs) -> CapBelowDecision:
    """Decide whether ``X`` is covered by at most ``ceil(|X|/2) - k`` APs."""
    X = as_instance(X)
    inst, aps = cap_tusc_instance(X)
    res = tusc_below_decide(inst, k, **kwargs)
    if not res.feasible:
        return CapBelowDecision(False, None, res.colorings, res)
    out = []
    for source, elems in res.cover:
        out.append(aps[source] if source is not None
                   else AP.from_elements(X[i] for i in elems))
    return CapBelowDecision(True, Solution(tuple(out), COVER), res.colorings, res)
