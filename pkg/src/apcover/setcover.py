"""Exact minimum set cover and minimum exact cover over small bitmask universes.

Element ``i`` of the universe is bit ``i`` of a set mask.  ``min_set_cover``
runs a layered dynamic program over all ``2**u`` masks with numpy;
``min_exact_cover`` recurses on the lowest uncovered element with a memo.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable

import numpy as np

from .errors import CapacityError, PreconditionError

DEFAULT_CAP = 25


@dataclass(frozen=True)
class SetCoverInstance:
    universe_size: int
    sets: tuple[tuple[int, Hashable], ...] = field(default_factory=tuple)
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple((int(m), sid) for m, sid in self.sets))
        full = self.full_mask
        for mask, sid in self.sets:
            if mask < 0 or mask & ~full:
                raise PreconditionError(f"set {sid!r} has elements outside the universe")

    @property
    def full_mask(self) -> int:
        return (1 << self.universe_size) - 1


@dataclass(frozen=True)
class CoverResult:
    size: int
    chosen: tuple[Hashable, ...]


def _check_cap(inst: SetCoverInstance):
    if inst.universe_size > inst.cap:
        raise CapacityError(
            f"universe of {inst.universe_size} elements exceeds the cap of {inst.cap}")


def _distinct_masks(inst: SetCoverInstance) -> list[tuple[int, int]]:
    """(mask, position) pairs, keeping the earliest position for repeated masks."""
    seen: dict[int, int] = {}
    for pos, (mask, _) in enumerate(inst.sets):
        if mask and mask not in seen:
            seen[mask] = pos
    return sorted(((m, p) for m, p in seen.items()), key=lambda mp: mp[1])


def min_set_cover(inst: SetCoverInstance, max_size: int | None = None) -> CoverResult | None:
    """Minimum-cardinality sub-family covering the universe, or None if infeasible.

    With ``max_size`` the search stops after that many layers and returns None
    when no cover of at most ``max_size`` sets exists.  Among optimal covers the
    one whose sorted set positions are lexicographically smallest is returned.
    """
    _check_cap(inst)
    u = inst.universe_size
    full = inst.full_mask
    if u == 0:
        return CoverResult(0, ())
    masks = _distinct_masks(inst)
    union = 0
    for m, _ in masks:
        union |= m
    if union != full:
        return None
    limit = len(masks) if max_size is None else min(max_size, len(masks))

    idx = np.arange(1 << u, dtype=np.int32 if u < 31 else np.int64)
    reach = np.zeros(1 << u, dtype=bool)
    reach[0] = True
    layers = [reach]
    # layers[j][M] is True iff M lies inside the union of some j sets
    while not layers[-1][full]:
        if len(layers) - 1 >= limit:
            return None
        prev = layers[-1]
        nxt = prev.copy()
        for m, _ in masks:
            nxt |= prev[idx & ~m]
        layers.append(nxt)

    chosen = []
    rest = full
    for j in range(len(layers) - 1, 0, -1):
        below = layers[j - 1]
        for m, pos in masks:
            if pos in chosen:
                continue
            if below[rest & ~m]:
                chosen.append(pos)
                rest &= ~m
                break
    chosen.sort()
    return CoverResult(len(chosen), tuple(inst.sets[p][1] for p in chosen))


def min_exact_cover(inst: SetCoverInstance, max_size: int | None = None) -> CoverResult | None:
    """Minimum number of pairwise-disjoint sets whose union is the universe.

    Returns None when no exact cover exists (or none within ``max_size``).
    """
    _check_cap(inst)
    u = inst.universe_size
    full = inst.full_mask
    if u == 0:
        return CoverResult(0, ())
    masks = _distinct_masks(inst)
    containing = [[(m, p) for m, p in masks if m >> e & 1] for e in range(u)]

    inf = u + 1
    memo: dict[int, int] = {full: 0}

    def best(covered: int) -> int:
        got = memo.get(covered)
        if got is not None:
            return got
        free = ~covered & full
        low = (free & -free).bit_length() - 1
        val = inf
        for m, _ in containing[low]:
            if m & covered == 0:
                sub = best(covered | m)
                if sub + 1 < val:
                    val = sub + 1
        memo[covered] = val
        return val

    size = best(0)
    if size >= inf or (max_size is not None and size > max_size):
        return None
    chosen = []
    covered = 0
    while covered != full:
        free = ~covered & full
        low = (free & -free).bit_length() - 1
        for m, pos in containing[low]:
            if m & covered == 0 and best(covered | m) == memo[covered] - 1:
                chosen.append(pos)
                covered |= m
                break
    chosen.sort()
    return CoverResult(len(chosen), tuple(inst.sets[p][1] for p in chosen))
