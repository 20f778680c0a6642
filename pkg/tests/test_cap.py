import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apcover.cap import cover_decide, cover_minimize, difference_candidates
from apcover.generators import union_of_aps
from apcover.oracle import brute_cap
from apcover.progressions import COVER, Instance, verify_solution

X_EX = Instance([0, 4, 6, 7, 8, 9])
POWERS = Instance([1, 2, 4, 8, 16, 32])


def test_example_set():
    res = cover_decide(X_EX, 2)
    assert res and len(res.solution) <= 2
    assert verify_solution(X_EX, res.solution)
    assert not cover_decide(X_EX, 1)


def test_three_ap_free_needs_half():
    assert not cover_decide(POWERS, 2)
    assert cover_decide(POWERS, 3)
    assert cover_minimize(POWERS)[0] == 3


def test_trivial_cases():
    assert cover_decide(Instance([]), 0)
    assert not cover_decide(Instance([5]), 0)
    assert cover_decide(Instance([5]), 1)
    assert cover_decide(Instance([0, 3, 6]), 1)
    assert cover_minimize(Instance(range(10)))[0] == 1
    assert cover_minimize(X_EX)[0] == 2


def test_difference_candidates():
    assert difference_candidates(12, 2) == [12, 6, 4, 3]
    assert difference_candidates(7, 3) == [7, 1]
    assert difference_candidates(5, 0) == [5]


def test_negative_k_rejected():
    with pytest.raises(ValueError):
        cover_decide(X_EX, -1)


def test_witness_kind():
    assert cover_decide(X_EX, 2).solution.kind == COVER


instances = st.lists(st.integers(0, 40), max_size=11, unique=True).map(Instance)


@settings(max_examples=120, deadline=None)
@given(instances)
def test_matches_oracle_and_is_monotone(X):
    best = brute_cap(X)
    answers = []
    for k in range(-(-len(X) // 2) + 1):
        res = cover_decide(X, k)
        answers.append(res.feasible)
        assert res.feasible == (best <= k)
        if res.feasible:
            assert len(res.solution) <= k and verify_solution(X, res.solution)
    assert answers == sorted(answers)


@pytest.mark.parametrize("seed", range(5))
def test_planted_unions_stay_small(seed):
    X, planted = union_of_aps(3, 12, 10**9, seed=seed)
    res = cover_decide(X, 3)
    assert res and verify_solution(X, res.solution)
    # sanity budget on the search tree, far below the worst case
    assert res.stats.nodes <= 2 ** (3 * 9)
