"""Brute-force reference solvers and falsification harnesses.

Nothing here shares search code with the branching solvers; only the AP
primitives and the generic set-cover engines are reused.  The harnesses can
only ever detect a counterexample, never prove the statements they probe.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .below import TUSCInstance
from .errors import CapacityError
from .progressions import (
    AP, COVER, EXACT_COVER, Solution, as_instance, enumerate_all_aps, enumerate_maximal_aps,
)
from .setcover import SetCoverInstance, min_exact_cover, min_set_cover

CAP_LIMIT = 14
XCAP_LIMIT = 12
TUSC_LIMIT = 18


def _family(X, aps):
    pos = {x: i for i, x in enumerate(X)}
    sets = []
    for i, ap in enumerate(aps):
        m = 0
        for x in ap:
            m |= 1 << pos[x]
        sets.append((m, i))
    return SetCoverInstance(len(X), tuple(sets), cap=max(len(X), 1))


def brute_cap_solution(X, limit: int = CAP_LIMIT) -> Solution:
    X = as_instance(X)
    if len(X) > limit:
        raise CapacityError(f"brute_cap handles at most {limit} elements")
    aps = enumerate_maximal_aps(X)
    res = min_set_cover(_family(X, aps))
    return Solution(tuple(aps[i] for i in res.chosen), COVER)


def brute_cap(X, limit: int = CAP_LIMIT) -> int:
    """Minimum number of APs covering ``X`` (exhaustive set cover)."""
    return len(brute_cap_solution(X, limit))


def brute_xcap_solution(X, limit: int = XCAP_LIMIT) -> Solution:
    X = as_instance(X)
    if len(X) > limit:
        raise CapacityError(f"brute_xcap handles at most {limit} elements")
    aps = enumerate_all_aps(X)
    res = min_exact_cover(_family(X, aps))
    return Solution(tuple(aps[i] for i in res.chosen), EXACT_COVER)


def brute_xcap(X, limit: int = XCAP_LIMIT) -> int:
    """Minimum number of disjoint APs partitioning ``X``."""
    return len(brute_xcap_solution(X, limit))


def all_min_exact_covers(X, limit: int = XCAP_LIMIT) -> list[Solution]:
    """Every minimum-size partition of ``X`` into APs."""
    X = as_instance(X)
    if len(X) > limit:
        raise CapacityError(f"exhaustive partition search handles at most {limit} elements")
    if not len(X):
        return [Solution((), EXACT_COVER)]
    target = brute_xcap(X, limit)
    aps = enumerate_all_aps(X)
    pos = {x: i for i, x in enumerate(X)}
    masks = []
    for ap in aps:
        m = 0
        for x in ap:
            m |= 1 << pos[x]
        masks.append(m)
    full = (1 << len(X)) - 1
    out = []

    def rec(covered, picked):
        if covered == full:
            out.append(Solution(tuple(aps[i] for i in picked), EXACT_COVER))
            return
        if len(picked) == target:
            return
        free = ~covered & full
        low = free & -free
        for i, m in enumerate(masks):
            if m & low and not m & covered:
                rec(covered | m, picked + [i])

    rec(0, [])
    return out


def intersection_gap_violations(X, solution: Solution) -> list[tuple]:
    """Gaps that break the bound on interruptions between exact-cover APs.

    For every AP ``s`` inside ``X`` and every solution AP sharing at least
    ``k+1`` elements with it, consecutive shared elements may have at most
    ``2**(k-1) - 1`` elements of ``s`` strictly between them.
    """
    X = as_instance(X)
    k = len(solution.aps)
    bound = (1 << (k - 1)) - 1 if k else 0
    bad = []
    for s in enumerate_all_aps(X):
        if s.length < 2:
            continue
        members = set(s)
        for part in solution.aps:
            common = sorted(x for x in part if x in members)
            if len(common) < k + 1:
                continue
            for a, b in zip(common, common[1:]):
                between = (b - a) // s.diff - 1
                if between > bound:
                    bad.append((s, part, a, b, between))
    return bad


def brute_tusc(inst: TUSCInstance, limit: int = TUSC_LIMIT) -> int:
    """Minimum cover size with every t-subset materialised next to the explicit sets."""
    if inst.n > limit:
        raise CapacityError(f"brute_tusc handles at most {limit} elements")
    if inst.n == 0:
        return 0
    sets = []
    for s in inst.explicit_sets:
        m = 0
        for x in s:
            m |= 1 << x
        if m:
            sets.append((m, len(sets)))
    for combo in combinations(range(inst.n), min(inst.t, inst.n)):
        m = 0
        for x in combo:
            m |= 1 << x
        sets.append((m, len(sets)))
    return min_set_cover(SetCoverInstance(inst.n, tuple(sets), cap=limit)).size


def _covers(family, x: int) -> bool:
    for start, diff in family:
        if x == start or (diff > 0 and x > start and (x - start) % diff == 0):
            return True
    return False


def check_cve_property(k: int, family, horizon: int) -> bool:
    """Check that covering ``1..2**k`` implies covering ``1..horizon``.

    ``family`` lists one-sided infinite APs as ``(start, diff)`` pairs,
    ``start, start+diff, start+2*diff, ...``; ``diff == 0`` is the constant AP.
    Vacuously true when the first ``2**k`` positive integers are not covered.
    """
    if len(family) > k:
        raise ValueError(f"family has {len(family)} APs, more than k={k}")
    if not all(_covers(family, x) for x in range(1, (1 << k) + 1)):
        return True
    return all(_covers(family, x) for x in range(1, horizon + 1))


def sample_cve_family(k: int, rng: random.Random, max_modulus: int = 8) -> list[tuple[int, int]]:
    """Random family biased towards covering ``1..2**k``.

    Each AP starts at (or just before, in its own residue class) the smallest
    integer the previous APs leave uncovered.
    """
    family = []
    for _ in range(k):
        x = 1
        while _covers(family, x) and x <= (1 << k):
            x += 1
        diff = rng.randint(0, max_modulus)
        start = x - diff * rng.randint(0, 2) if diff else x
        family.append((start, diff))
    return family


@dataclass
class HarnessReport:
    checked: int = 0
    relevant: int = 0
    violations: int = 0
    max_seen: int = -1

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def __bool__(self) -> bool:
        return self.ok


def cve_harness(samples: int, seed: int = 0, max_k: int = 4, max_modulus: int = 8,
                horizon: int = 10_000) -> HarnessReport:
    rng = random.Random(seed)
    rep = HarnessReport()
    for _ in range(samples):
        k = rng.randint(1, max_k)
        fam = sample_cve_family(k, rng, max_modulus)
        rep.checked += 1
        if all(_covers(fam, x) for x in range(1, (1 << k) + 1)):
            rep.relevant += 1
            if not check_cve_property(k, fam, horizon):
                rep.violations += 1
    return rep


def _skip_patterns(t: int):
    """Coverage patterns on positions ``0..t-1`` of APs that skip position ``t``.

    An AP avoiding ``s0(t)`` yet reaching past it meets the positions of ``s0``
    in a progression ``a, a+m, ...`` with ``m`` not dividing ``t - a``; the
    masks below list every such pattern restricted to ``0..t-1``.
    """
    masks = set()
    for a in range(t):
        for m in range(1, t + 2):
            if (t - a) % m == 0:
                continue
            mask = 0
            for x in range(a, t, m):
                mask |= 1 << x
            masks.add(mask)
    return masks


def max_skipping_prefix(k: int, t_max: int | None = None) -> int:
    """Largest ``t`` for which ``k`` skipping APs cover positions ``0..t-1``.

    Exhaustive over coverage patterns; ``t`` ranges up to ``t_max``
    (default ``2**k + 2``).
    """
    if t_max is None:
        t_max = (1 << k) + 2
    best = 0
    for t in range(1, t_max + 1):
        full = (1 << t) - 1
        fam = sorted(_skip_patterns(t), key=lambda m: -m.bit_count())
        reach = {0}
        for _ in range(k):
            reach = {r | m for r in reach for m in fam}
            if full in reach:
                break
        if full in reach:
            best = t
    return best


def skipping_config_ok(k: int, s0: AP, t: int, covering: list[AP]) -> bool | None:
    """Evaluate one configuration directly from the definitions.

    Returns None if ``covering`` does not satisfy the hypotheses (covers
    ``s0(0..t-1)``, misses ``s0(t)``, every AP reaches beyond ``s0(t)``);
    otherwise whether ``t < 2**k`` holds.
    """
    if s0.length < t + 1 or len(covering) > k:
        return None
    target = s0.element(t)
    if any(target in ap for ap in covering):
        return None
    if any(ap.last <= target for ap in covering):
        return None
    for j in range(t):
        x = s0.element(j)
        if not any(x in ap for ap in covering):
            return None
    return t < (1 << k)


def sample_skipping_config(k: int, rng: random.Random):
    """Random configuration that greedily covers a prefix of ``s0``.

    Covering APs may step through ``s0`` at a coarser spacing or, by using a
    fraction of it, also contain integers between the elements of ``s0``.
    """
    d0 = rng.randint(1, 6)
    a0 = rng.randint(-20, 20)
    t = rng.randint(1, (1 << k) + 2)
    s0 = AP.of(a0, d0, t + 1 + rng.randint(0, 3))
    covering = []
    covered = set()
    for _ in range(k):
        j = next((j for j in range(t) if j not in covered), rng.randrange(t))
        diff = rng.randint(1, t + 1) * d0
        refine = rng.choice([1, 1, 1, 2, 3])
        if diff % refine == 0:
            diff //= refine
        first = s0.element(j) - diff * rng.randint(0, 2)
        length = (s0.element(t) + 1 - first) // diff + 1 + rng.randint(0, 2)
        ap = AP.of(first, diff, max(length, 2))
        covering.append(ap)
        covered.update(jj for jj in range(t) if s0.element(jj) in ap)
    return s0, t, covering


def check_lemma3_property(samples: int, k: int, seed: int = 0) -> HarnessReport:
    """Sample configurations for ``k`` APs and count those with ``t >= 2**k``."""
    rng = random.Random(seed)
    rep = HarnessReport()
    for _ in range(samples):
        s0, t, covering = sample_skipping_config(k, rng)
        rep.checked += 1
        verdict = skipping_config_ok(k, s0, t, covering)
        if verdict is None:
            continue
        rep.relevant += 1
        rep.max_seen = max(rep.max_seen, t)
        if not verdict:
            rep.violations += 1
    return rep
