"""End-to-end acceptance checks, one test class per criterion.

The terminal summary (see conftest.py) prints a PASS/FAIL line per criterion.
"""
import random
import time
from functools import lru_cache
from itertools import combinations

import pytest

from apcover import cap, xcap
from apcover.below import RANDOMIZED, TUSCInstance, cap_below_decide, check_tusc_cover, tusc_below_decide
from apcover.generators import no_three_ap, powers, random_instance, union_of_aps
from apcover.modular import (
    is_prime, is_suitable_prime, is_three_ap_preserving, reduce_mod_p, search_small_preserver,
    zp_min_cover, zp_min_exact_cover,
)
from apcover.oracle import (
    all_min_exact_covers, brute_cap, brute_tusc, brute_xcap, check_cve_property, check_lemma3_property,
    cve_harness, max_skipping_prefix, intersection_gap_violations,
)
from apcover.progressions import AP, EXACT_COVER, Instance, Solution, verify_solution


def half(n):
    return -(-n // 2)


def corpus(universe, n_max, max_value, count, seed):
    """Every non-empty subset of range(universe), then seeded random instances."""
    out = [Instance(c) for r in range(1, universe + 1) for c in combinations(range(universe), r)]
    rng = random.Random(seed)
    for i in range(count):
        out.append(random_instance(rng.randint(1, n_max), max_value, seed=rng.randrange(1 << 30)))
    return out


@lru_cache(maxsize=None)
def cap_corpus():
    return [(X, brute_cap(X)) for X in corpus(12, 12, 40, 1000, seed=2)]


@lru_cache(maxsize=None)
def xcap_corpus():
    return [(X, brute_xcap(X)) for X in corpus(11, 10, 30, 1000, seed=3)]


@pytest.mark.criterion(1, "worked example")
class TestWorkedExample:
    X = Instance([0, 4, 6, 7, 8, 9])

    def test_minima_and_witnesses(self):
        start = time.perf_counter()
        c, csol = cap.cover_minimize(self.X)
        x, xsol = xcap.exact_cover_minimize(self.X)
        assert c == 2 and x == 2
        assert verify_solution(self.X, csol) and verify_solution(self.X, xsol)
        assert AP(0, 4, 2) in xsol.aps and AP(0, 4, 3) not in xsol.aps
        assert time.perf_counter() - start < 1.0

    def test_longer_progression_breaks_exactness(self):
        forced = Solution((AP(0, 4, 3), AP(6, 1, 4)), EXACT_COVER)
        assert not verify_solution(self.X, forced)
        assert not xcap.exact_cover_decide(self.X, 1)


@pytest.mark.criterion(2, "cover decision matches the brute-force minimum")
def test_cover_oracle_equivalence():
    start = time.perf_counter()
    mismatches = []
    for X, best in cap_corpus():
        for k in range(half(len(X)) + 1):
            res = cap.cover_decide(X, k)
            if res.feasible != (best <= k):
                mismatches.append((list(X), k, best))
            elif res and not (len(res.solution) <= k and verify_solution(X, res.solution)):
                mismatches.append((list(X), k, "bad witness"))
    assert mismatches == []
    assert time.perf_counter() - start < 600


@pytest.mark.criterion(3, "exact cover decision matches the brute-force minimum")
def test_exact_cover_oracle_equivalence():
    start = time.perf_counter()
    mismatches = []
    for X, best in xcap_corpus():
        for k in range(half(len(X)) + 1):
            res = xcap.exact_cover_decide(X, k)
            if res.feasible != (best <= k):
                mismatches.append((list(X), k, best))
            elif res and not (len(res.solution) <= k and verify_solution(X, res.solution)):
                mismatches.append((list(X), k, "bad witness"))
    assert mismatches == []
    assert time.perf_counter() - start < 900


@pytest.mark.criterion(4, "prefix-covering and covering-system harnesses find no violation")
class TestHarnesses:
    def test_prefix_exhaustive(self):
        for k in range(3):
            assert max_skipping_prefix(k) < 2 ** k

    def test_prefix_sampled(self):
        rep = check_lemma3_property(10_000, k=3, seed=0)
        assert rep.violations == 0 and rep.relevant > 0
        assert rep.max_seen < 8

    def test_covering_systems(self):
        rep = cve_harness(10_000, seed=0, max_modulus=8, horizon=10_000)
        assert rep.violations == 0 and rep.relevant > 100

    def test_covering_system_examples(self):
        assert check_cve_property(2, [(0, 2), (1, 2)], 10_000)
        assert check_cve_property(3, [(0, 2), (1, 4), (3, 4)], 10_000)


@pytest.mark.criterion(5, "gaps between intersections of minimum exact covers stay small")
def test_intersection_gaps():
    violations = []
    for X, best in xcap_corpus():
        if best == 0:
            continue
        for sol in all_min_exact_covers(X):
            violations += intersection_gap_violations(X, sol)
    assert violations == []


@pytest.mark.criterion(6, "reduction to a prime field preserves both minima")
class TestModularRoundTrip:
    def test_round_trip(self):
        start = time.perf_counter()
        rng = random.Random(6)
        mismatches = []
        for i in range(500):
            X = random_instance(rng.randint(1, 10), 1 << 20, seed=rng.randrange(1 << 30))
            p, Z = reduce_mod_p(X)
            assert is_prime(p) and len(Z.elements) == len(X)
            assert exhaustive_suitable(p, X)
            if zp_min_cover(Z)[0] != brute_cap(X) or zp_min_exact_cover(Z)[0] != brute_xcap(X):
                mismatches.append(list(X))
        assert mismatches == []
        assert time.perf_counter() - start < 600

    def test_collapsing_prime_is_rejected(self):
        assert not is_suitable_prime(3, Instance([3, 6, 18]))


def exhaustive_suitable(p, X):
    xs = list(X)
    if any((a - b) % p == 0 for a, b in combinations(xs, 2)):
        return False
    return all((2 * x - y - z) % p or 2 * x - y - z == 0 for x in xs for y in xs for z in xs)


def random_tusc(rng):
    n = rng.randint(1, 16)
    big = rng.random() < 0.3
    sets = []
    for _ in range(rng.randint(0, 10)):
        size = rng.randint(1, n if big else min(n, 6))
        sets.append(frozenset(rng.sample(range(n), size)))
    return TUSCInstance(n, 2, tuple(sets))


@pytest.mark.criterion(7, "below-guarantee decisions match brute force")
class TestBelowGuarantee:
    def test_tusc(self):
        start = time.perf_counter()
        rng = random.Random(7)
        wrong, yes, missed = [], 0, 0
        for i in range(300):
            inst = random_tusc(rng)
            best = brute_tusc(inst)
            for k in range(4):
                want = best <= inst.budget(k)
                res = tusc_below_decide(inst, k)
                if res.feasible != want or (res and not check_tusc_cover(inst, res.cover, inst.budget(k))):
                    wrong.append((inst, k))
                rnd = tusc_below_decide(inst, k, mode=RANDOMIZED, delta=1e-3, seed=i)
                if want:
                    yes += 1
                    missed += not rnd
                elif rnd:
                    wrong.append((inst, k, "randomized yes on a no-instance"))
        assert wrong == []
        assert missed < 0.01 * yes
        assert time.perf_counter() - start < 900

    def test_cap_specialisation(self):
        wrong = []
        for X, best in cap_corpus():
            for k in range(4):
                res = cap_below_decide(X, k)
                if res.feasible != (best <= half(len(X)) - k):
                    wrong.append((list(X), k))
        assert wrong == []


@pytest.mark.criterion(8, "every instance is covered by at most half its size, sharp on 3-AP-free sets")
class TestGuarantee:
    def test_generated_instances(self):
        rng = random.Random(8)
        for X, best in cap_corpus():
            assert best <= half(len(X))
        for i in range(200):
            X, _ = union_of_aps(rng.randint(1, 4), rng.randint(1, 4), 60, seed=i)
            if len(X) <= 14:
                assert brute_cap(X) <= half(len(X))
        for n in range(8):
            assert brute_cap(powers(n)) <= half(n + 2)

    def test_three_ap_free_sets_are_tight(self):
        for seed in range(40):
            for n in (1, 4, 7, 10, 13):
                X = no_three_ap(n, seed=seed)
                assert brute_cap(X) == half(n)


@pytest.mark.criterion(9, "3-AP preservers for the powers family")
class TestPreservers:
    def test_small_members_have_preservers(self):
        for n in range(3):
            found = search_small_preserver(n, 64)
            assert found is not None and is_three_ap_preserving(list(powers(n)), found)

    def test_threshold_at_bound_64(self):
        # the identity fits while 2**n <= 64; n = 7 still has a compressed preserver
        found = search_small_preserver(7, 64)
        assert found is not None and is_three_ap_preserving(list(powers(7)), found)
        assert search_small_preserver(8, 64) is None

    def test_checker_matches_triple_enumeration(self):
        rng = random.Random(9)
        for _ in range(1000):
            m = rng.randint(0, 7)
            xs = rng.sample(range(-20, 21), m)
            as_ = rng.sample(range(-20, 21), m)
            assert is_three_ap_preserving(xs, as_) == definitional(xs, as_)


def definitional(xs, as_):
    def ap3(a, b, c):
        lo, mid, hi = sorted((a, b, c))
        return 2 * mid == lo + hi
    return all(ap3(*(xs[i] for i in t)) == ap3(*(as_[i] for i in t)) for t in combinations(range(len(xs)), 3))


@pytest.mark.criterion(10, "planted instances with huge values decide quickly")
class TestScaling:
    @pytest.mark.parametrize("seed", range(3))
    def test_cover(self, seed):
        X, _ = union_of_aps(4, 50, 10**12, seed=seed)
        assert len(X) == 200
        start = time.perf_counter()
        res = cap.cover_decide(X, 4)
        assert res and verify_solution(X, res.solution)
        assert time.perf_counter() - start < 60

    @pytest.mark.parametrize("seed", range(3))
    def test_exact_cover(self, seed):
        X, _ = union_of_aps(4, 50, 10**12, seed=seed, disjoint=True)
        assert len(X) == 200
        start = time.perf_counter()
        res = xcap.exact_cover_decide(X, 4)
        assert res and verify_solution(X, res.solution)
        assert time.perf_counter() - start < 120
