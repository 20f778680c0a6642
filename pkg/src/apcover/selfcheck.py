"""Randomized property suites with counterexample shrinking.

Each suite draws cases from a seeded generator and checks them against the
brute-force oracles.  A failing case is shrunk greedily (drop one element or
one set at a time while it keeps failing) before being reported.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable, Iterable

from . import below, cap, modular, oracle, xcap
from .progressions import (
    Instance, enumerate_maximal_aps, intersect, make_ap, verify_solution,
)


@dataclass
class SuiteResult:
    name: str
    cases: int
    failure: str | None = None
    counterexample: Any = None

    @property
    def passed(self) -> bool:
        return self.failure is None


@dataclass(frozen=True)
class _Suite:
    generate: Callable[[random.Random], Any]
    check: Callable[[Any], str | None]
    shrink: Callable[[Any], Iterable[Any]]
    describe: Callable[[Any], Any]


def _half(n: int) -> int:
    return -(-n // 2)


def _random_set(rng: random.Random, max_n: int, max_value: int) -> Instance:
    n = rng.randint(0, max_n)
    return Instance(rng.sample(range(max_value + 1), n))


def _drop_one(X: Instance):
    for i in range(len(X)):
        yield Instance(X.elements[:i] + X.elements[i + 1:])


def _ap_core(X: Instance) -> str | None:
    maximal = enumerate_maximal_aps(X)
    for ap in maximal:
        if any(x not in X for x in ap):
            return f"maximal AP {ap} leaves the instance"
        if ap.length >= 2 and (ap.first - ap.diff in X or ap.last + ap.diff in X):
            return f"maximal AP {ap} extends inside the instance"
    xs = X.elements
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            ap = make_ap(X, xs[i], xs[j] - xs[i])
            if xs[j] not in ap or ap not in maximal:
                return f"make_ap({xs[i]}, {xs[j] - xs[i]}) gave {ap}"
    for a in maximal[:8]:
        for b in maximal[:8]:
            got = intersect(a, b)
            want = set(a) & set(b)
            if (set(got) if got else set()) != want:
                return f"intersect({a}, {b}) = {got}, expected {sorted(want)}"
    sol = oracle.brute_cap_solution(X)
    if not verify_solution(X, sol):
        return "oracle cover fails verification"
    return None


def _cap(X: Instance) -> str | None:
    best = oracle.brute_cap(X)
    for k in range(_half(len(X)) + 1):
        res = cap.cover_decide(X, k)
        if res.feasible != (best <= k):
            return f"cover_decide(k={k}) = {res.feasible} but the minimum is {best}"
        if res.feasible and (len(res.solution) > k or not verify_solution(X, res.solution)):
            return f"cover_decide(k={k}) returned an invalid witness"
    return None


def _xcap(X: Instance) -> str | None:
    best = oracle.brute_xcap(X)
    for k in range(_half(len(X)) + 1):
        res = xcap.exact_cover_decide(X, k)
        if res.feasible != (best <= k):
            return f"exact_cover_decide(k={k}) = {res.feasible} but the minimum is {best}"
        if res.feasible and (len(res.solution) > k or not verify_solution(X, res.solution)):
            return f"exact_cover_decide(k={k}) returned an invalid witness"
    return None


def _zp(X: Instance) -> str | None:
    p, inst = modular.reduce_mod_p(X)
    if not modular.is_suitable_prime(p, X):
        return f"reduce_mod_p chose unsuitable p={p}"
    if len(inst.elements) != len(X):
        return f"projection modulo {p} is not injective"
    for ap in enumerate_maximal_aps(X):
        image = modular.ZpAP(p, ap.first, ap.diff, min(ap.length, p))
        if ap.length <= p and sorted(modular.mod_project(list(ap), p)) != sorted(image.terms()):
            return f"{ap} does not project to a modular AP"
    if len(X):
        if modular.zp_min_cover(inst)[0] != oracle.brute_cap(X):
            return f"modular cover minimum differs from the integer one (p={p})"
        if modular.zp_min_exact_cover(inst)[0] != oracle.brute_xcap(X):
            return f"modular exact-cover minimum differs from the integer one (p={p})"
    if not modular.is_three_ap_preserving(X, X):
        return "identity is not 3-AP preserving"
    return None


def _random_tusc(rng: random.Random) -> below.TUSCInstance:
    n = rng.randint(0, 12)
    sets = []
    if n:
        for _ in range(rng.randint(0, 8)):
            sets.append(frozenset(rng.sample(range(n), rng.randint(1, min(n, 6)))))
    return below.TUSCInstance(n, 2, tuple(sets))


def _tusc(inst: below.TUSCInstance) -> str | None:
    best = oracle.brute_tusc(inst)
    for k in range(4):
        res = below.tusc_below_decide(inst, k)
        if res.feasible != (best <= inst.budget(k)):
            return f"tusc_below_decide(k={k}) = {res.feasible} but the minimum is {best}"
        if res.feasible and not below.check_tusc_cover(inst, res.cover, inst.budget(k)):
            return f"tusc_below_decide(k={k}) returned an invalid cover"
    return None


def _shrink_tusc(inst: below.TUSCInstance):
    for i in range(len(inst.explicit_sets)):
        yield below.TUSCInstance(inst.n, inst.t, inst.explicit_sets[:i] + inst.explicit_sets[i + 1:])
    if inst.n:
        last = inst.n - 1
        sets = tuple(s - {last} for s in inst.explicit_sets)
        yield below.TUSCInstance(last, inst.t, tuple(s for s in sets if s))


def _cap_below(X: Instance) -> str | None:
    best = oracle.brute_cap(X)
    for k in range(4):
        res = below.cap_below_decide(X, k)
        if res.feasible != (best <= _half(len(X)) - k):
            return f"cap_below_decide(k={k}) = {res.feasible} but the minimum is {best}"
        if res.feasible and not verify_solution(X, res.solution):
            return f"cap_below_decide(k={k}) returned an invalid cover"
    return None


def _bounds(X: Instance) -> str | None:
    c, x = oracle.brute_cap(X), oracle.brute_xcap(X)
    if not c <= x <= _half(len(X)):
        return f"expected cover {c} <= partition {x} <= {_half(len(X))}"
    return None


def _random_cve(rng: random.Random):
    k = rng.randint(1, 4)
    return k, tuple(oracle.sample_cve_family(k, rng))


def _cve(case) -> str | None:
    k, family = case
    if not oracle.check_cve_property(k, list(family), 10_000):
        return "family covers 1..2**k but not 1..10000"
    return None


def _random_skipping(rng: random.Random):
    return oracle.sample_skipping_config(rng.randint(1, 3), rng)


def _skipping(case) -> str | None:
    s0, t, covering = case
    if oracle.skipping_config_ok(len(covering), s0, t, covering) is False:
        return f"{len(covering)} APs cover a prefix of length {t}"
    return None


def _no_shrink(case):
    return ()


def _instance_suite(check, max_n, max_value):
    return _Suite(lambda rng: _random_set(rng, max_n, max_value), check, _drop_one,
                  lambda X: list(X))


SUITES: dict[str, list[_Suite]] = {
    "ap-core": [_instance_suite(_ap_core, 10, 40)],
    "cap": [_instance_suite(_cap, 10, 30)],
    "xcap": [_instance_suite(_xcap, 9, 30)],
    "zp": [_instance_suite(_zp, 7, 1 << 20)],
    "tusc": [
        _Suite(_random_tusc, _tusc, _shrink_tusc,
               lambda i: {"n": i.n, "t": i.t, "sets": [sorted(s) for s in i.explicit_sets]}),
        _instance_suite(_cap_below, 10, 30),
    ],
    "theorems": [
        _instance_suite(_bounds, 9, 30),
        _Suite(_random_cve, _cve, _no_shrink, lambda c: {"k": c[0], "family": list(c[1])}),
        _Suite(_random_skipping, _skipping, _no_shrink,
               lambda c: {"s0": list(c[0]), "t": c[1], "covering": [list(a) for a in c[2]]}),
    ],
}


def _shrink(suite: _Suite, case, message: str):
    progress = True
    while progress:
        progress = False
        for smaller in suite.shrink(case):
            msg = _safe_check(suite, smaller)
            if msg is not None:
                case, message, progress = smaller, msg, True
                break
    return case, message


def _safe_check(suite: _Suite, case) -> str | None:
    try:
        return suite.check(case)
    except AssertionError as exc:
        return f"assertion failed: {exc}"


def run_suite(name: str, seed: int = 0, budget: int = 200) -> SuiteResult:
    """Run ``budget`` random cases for each property of suite ``name``."""
    rng = random.Random(f"{name}:{seed}")
    cases = 0
    for suite in SUITES[name]:
        for _ in range(budget):
            case = suite.generate(rng)
            cases += 1
            msg = _safe_check(suite, case)
            if msg is not None:
                case, msg = _shrink(suite, case, msg)
                return SuiteResult(name, cases, msg, suite.describe(case))
    return SuiteResult(name, cases)
