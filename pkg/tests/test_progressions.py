from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apcover.errors import InvalidDifferenceError, PreconditionError
from apcover.progressions import (
    AP, COVER, EXACT_COVER, Instance, Solution, enumerate_all_aps, enumerate_maximal_aps,
    has_three_term_ap, intersect, is_ap, make_ap, prefix_meet, verify_solution,
)

X_EX = Instance([0, 4, 6, 7, 8, 9])


def aps_strategy(lo=-50, hi=50):
    @st.composite
    def build(draw):
        first = draw(st.integers(lo, hi))
        length = draw(st.integers(1, 12))
        diff = draw(st.integers(1, 9)) if length > 1 else 0
        return AP(first, diff, length)
    return build()


small_sets = st.lists(st.integers(-20, 40), max_size=10, unique=True).map(Instance)


class TestAPType:
    def test_canonical_forms(self):
        assert AP.of(5, 3, 1) == AP(5, 0, 1)
        assert AP.of(10, -2, 3) == AP(6, 2, 3)
        assert list(AP(1, 3, 4)) == [1, 4, 7, 10]

    @pytest.mark.parametrize("args", [(0, 0, 0), (0, 1, 1), (0, 0, 2), (0, -1, 3)])
    def test_rejects_non_canonical(self, args):
        with pytest.raises(PreconditionError):
            AP(*args)

    def test_element_and_membership(self):
        ap = AP(-3, 4, 5)
        assert ap.element(4) == ap.last == 13
        assert 5 in ap and 6 not in ap and 17 not in ap
        with pytest.raises(IndexError):
            ap.element(5)

    def test_huge_values_are_exact(self):
        big = 10**30
        ap = AP(big, big, 3)
        assert ap.last == 3 * big
        assert 2 * big in ap and 2 * big + 1 not in ap


class TestInstance:
    def test_sorted_and_distinct(self):
        X = Instance([5, -1, 3])
        assert list(X) == [-1, 3, 5]
        assert X.index(3) == 1

    def test_duplicates_rejected(self):
        with pytest.raises(PreconditionError):
            Instance([1, 2, 1])


class TestIsAp:
    @pytest.mark.parametrize("seq,want", [([3, 5, 7], True), ([1, 2, 4], False), ([], True), ([42], True)])
    def test_examples(self, seq, want):
        assert is_ap(seq) is want


class TestMakeAp:
    def test_examples(self):
        assert make_ap(X_EX, 0, 4) == AP(0, 4, 3)
        assert set(make_ap(X_EX, 6, 1)) == {6, 7, 8, 9}
        assert make_ap(Instance([5]), 5, 3) == AP(5, 0, 1)

    def test_errors(self):
        with pytest.raises(PreconditionError):
            make_ap(X_EX, 5, 1)
        with pytest.raises(InvalidDifferenceError):
            make_ap(X_EX, 0, 0)
        with pytest.raises(InvalidDifferenceError):
            make_ap(X_EX, 0, -4)

    @given(small_sets.filter(len), st.integers(1, 12), st.data())
    def test_maximal(self, X, d, data):
        a = data.draw(st.sampled_from(X.elements))
        ap = make_ap(X, a, d)
        assert a in ap and all(x in X for x in ap)
        step = ap.diff or d
        assert ap.first - step not in X and ap.last + step not in X


class TestIntersect:
    def test_examples(self):
        assert intersect(AP(0, 2, 10), AP(0, 3, 7)) == AP(0, 6, 4)
        assert intersect(AP(0, 2, 3), AP(1, 2, 3)) is None
        a = AP(3, 5, 6)
        assert intersect(a, a) == a

    @given(aps_strategy(), aps_strategy())
    def test_matches_set_intersection(self, a, b):
        got = intersect(a, b)
        want = set(a) & set(b)
        assert (set(got) if got is not None else set()) == want
        if got is not None:
            assert is_ap(list(got))

    def test_large_moduli(self):
        a = AP(10**18, 10**12 + 3, 10**6)
        b = AP(10**18, 7, 10**13)
        got = intersect(a, b)
        assert got.first == 10**18 and got.diff == (10**12 + 3) * 7


class TestPrefixMeet:
    def test_examples(self):
        assert set(prefix_meet(6, 1, X_EX)) == {6, 7, 8, 9}
        assert prefix_meet(8, 2, X_EX) == AP(8, 0, 1)
        assert set(prefix_meet(6, 1, X_EX, blocked={8})) == {6, 7}
        assert prefix_meet(5, 1, X_EX) is None
        assert prefix_meet(6, 1, X_EX, blocked={6}) is None

    @given(small_sets, st.integers(-20, 40), st.integers(1, 6),
           st.frozensets(st.integers(-20, 40), max_size=4))
    def test_prefix_property(self, X, start, d, blocked):
        got = prefix_meet(start, d, X, blocked)
        run = [] if got is None else list(got)
        assert run == [start + i * d for i in range(len(run))]
        assert all(x in X and x not in blocked for x in run)
        nxt = start + len(run) * d
        assert nxt not in X or nxt in blocked


def _definitional_aps(X):
    """Every subset of X that is an AP, found by brute force over subsets."""
    out = set()
    xs = list(X)
    for r in range(1, len(xs) + 1):
        for combo in combinations(xs, r):
            if is_ap(list(combo)):
                out.add(frozenset(combo))
    return out


class TestEnumerate:
    def test_maximal_examples(self):
        assert {frozenset(a) for a in enumerate_maximal_aps(Instance([0, 2, 4]))} == {
            frozenset({0, 2, 4}), frozenset({0, 4})}
        assert enumerate_maximal_aps(Instance([7])) == [AP(7, 0, 1)]
        got = {frozenset(a) for a in enumerate_maximal_aps(Instance([1, 2, 4, 8]))}
        assert got == {frozenset(p) for p in combinations([1, 2, 4, 8], 2)}

    def test_all_examples(self):
        assert len(enumerate_all_aps(Instance([0, 2, 4]))) == 7
        assert enumerate_all_aps(Instance([])) == []
        all_ex = enumerate_all_aps(X_EX)
        assert AP(0, 4, 2) in all_ex and AP(0, 4, 3) in all_ex

    @settings(max_examples=60)
    @given(st.lists(st.integers(0, 20), max_size=8, unique=True).map(Instance))
    def test_all_aps_match_definition(self, X):
        got = enumerate_all_aps(X)
        assert len(got) == len(set(got))
        assert {frozenset(a) for a in got} == _definitional_aps(X)

    @given(small_sets)
    def test_maximal_aps_cover_every_pair(self, X):
        maximal = enumerate_maximal_aps(X)
        assert len(maximal) == len(set(maximal))
        for a, b in combinations(X, 2):
            assert any(a in ap and b in ap and ap.diff == b - a for ap in maximal)


class TestThreeTerm:
    @pytest.mark.parametrize("xs,want", [([3, 5, 7], True), ([1, 2, 4, 8, 16, 32], False), ([], False)])
    def test_examples(self, xs, want):
        assert has_three_term_ap(Instance(xs)) is want


class TestVerify:
    def test_examples(self):
        good = Solution((AP(0, 4, 2), AP(6, 1, 4)), EXACT_COVER)
        assert verify_solution(X_EX, good)
        overlap = Solution((AP(0, 4, 3), AP(6, 1, 4)), EXACT_COVER)
        v = verify_solution(X_EX, overlap)
        assert not v and v.reason.startswith("overlap") and "8" in v.reason
        assert verify_solution(X_EX, Solution(overlap.aps, COVER))

    def test_failures_name_the_problem(self):
        assert verify_solution(X_EX, Solution((AP(0, 5, 2),))).reason.startswith("not contained")
        assert verify_solution(X_EX, Solution((AP(6, 1, 4),))).reason.startswith("uncovered")
