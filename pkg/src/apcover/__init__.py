"""Covering sets of integers by arithmetic progressions.

Exact FPT solvers for covering (:func:`cover_decide`) and partitioning
(:func:`exact_cover_decide`) with at most k progressions, modular variants,
a below-guarantee solver and brute-force reference oracles.
"""
from .below import TUSCInstance, cap_below_decide, greedy_phase, tusc_below_decide
from .cap import cover_decide, cover_minimize
from .errors import APCoverError, CapacityError, InvalidDifferenceError, PreconditionError
from .modular import (
    ZpAP, ZpInstance, is_prime, is_suitable_prime, is_three_ap_preserving, mod_project,
    reduce_mod_p, search_small_preserver, zp_cover_decide, zp_enumerate_aps,
    zp_exact_cover_decide,
)
from .progressions import (
    AP, COVER, EXACT_COVER, Instance, Solution, enumerate_all_aps, enumerate_maximal_aps,
    has_three_term_ap, intersect, make_ap, prefix_meet, verify_solution,
)
from .setcover import SetCoverInstance, min_exact_cover, min_set_cover
from .xcap import exact_cover_decide, exact_cover_minimize

__all__ = [
    "AP", "APCoverError", "COVER", "CapacityError", "EXACT_COVER", "Instance",
    "InvalidDifferenceError", "PreconditionError", "SetCoverInstance", "Solution",
    "TUSCInstance", "ZpAP", "ZpInstance", "cap_below_decide", "cover_decide", "cover_minimize",
    "enumerate_all_aps", "enumerate_maximal_aps", "exact_cover_decide", "exact_cover_minimize",
    "greedy_phase", "has_three_term_ap", "intersect", "is_prime", "is_suitable_prime",
    "is_three_ap_preserving", "make_ap", "min_exact_cover", "min_set_cover", "mod_project",
    "prefix_meet", "reduce_mod_p", "search_small_preserver", "tusc_below_decide",
    "verify_solution", "zp_cover_decide", "zp_enumerate_aps", "zp_exact_cover_decide",
]
