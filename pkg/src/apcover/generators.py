"""Seeded instance generators."""
from __future__ import annotations

import random

from .errors import PreconditionError
from .progressions import AP, Instance, has_three_term_ap, intersect


def union_of_aps(k: int, length: int, max_value: int, seed: int = 0,
                 disjoint: bool = False) -> tuple[Instance, list[AP]]:
    """Union of ``k`` random APs of ``length`` terms inside ``[0, max_value]``.

    Returns the instance together with the planted APs, so it is coverable by
    ``k`` APs (and partitionable by ``k`` when ``disjoint`` is set).
    """
    if k < 1 or length < 1 or max_value < length - 1:
        raise PreconditionError("need k >= 1, length >= 1 and max_value >= length - 1")
    rng = random.Random(seed)
    planted: list[AP] = []
    for _ in range(1000 * k):
        if len(planted) == k:
            break
        if length == 1:
            ap = AP(rng.randint(0, max_value), 0, 1)
        else:
            diff = rng.randint(1, max_value // (length - 1))
            first = rng.randint(0, max_value - diff * (length - 1))
            ap = AP(first, diff, length)
        if disjoint and any(intersect(ap, q) is not None for q in planted):
            continue
        planted.append(ap)
    else:
        raise PreconditionError("could not place disjoint APs; widen max_value")
    values = set()
    for ap in planted:
        values.update(ap)
    return Instance(values), planted


def no_three_ap(n: int, seed: int = 0, accept: float = 0.7) -> Instance:
    """Greedy 3-AP-free set: scan upwards, keep a value if it closes no 3-term AP.

    Each admissible value is kept with probability ``accept`` so different seeds
    give different sets; ``accept=1`` reproduces the classic greedy sequence.
    """
    if n < 0:
        raise PreconditionError("n must be non-negative")
    rng = random.Random(seed)
    chosen: list[int] = []
    members: set[int] = set()
    x = 0
    while len(chosen) < n:
        if not any(2 * b - x in members for b in chosen) and rng.random() < accept:
            chosen.append(x)
            members.add(x)
        x += 1
    inst = Instance(chosen)
    assert not has_three_term_ap(inst)
    return inst


def random_instance(n: int, max_value: int, seed: int = 0, min_value: int = 0) -> Instance:
    if n < 0 or max_value - min_value + 1 < n:
        raise PreconditionError("range too small for n distinct values")
    rng = random.Random(seed)
    return Instance(rng.sample(range(min_value, max_value + 1), n))


def powers(n: int) -> Instance:
    """The family ``{0, 1, 2, 4, ..., 2**n}`` with ``n + 2`` elements."""
    if n < 0:
        raise PreconditionError("n must be non-negative")
    return Instance([0] + [1 << i for i in range(n + 1)])
