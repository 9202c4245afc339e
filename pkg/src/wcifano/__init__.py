"""Decide, enumerate and certify l-Fano weighted complete intersections.

A weighted complete intersection of multidegree ``(d_1, ..., d_k)`` in
``P(a_0, ..., a_N)`` is l-Fano (in the integer sense used here) when
``c_m = sum a_j^m - sum d_i^m > 0`` for every ``m <= l``.  The package works
in the necessary-conditions regime: candidates are filtered by well
formedness of the ambient space, the linear cone exclusion and the nine
necessary conditions, which every smooth well formed example satisfies but
which do not by themselves certify that a smooth example exists.
"""

from .core import (ChernProfile, Multidegree, WciCandidate, WeightSystem, ceil_log,
                   chern_coefficient, chern_profile, is_l_fano, l_window)
from .conditions import ConditionReport, is_quadric_ci_form, necessary_conditions
from .enumerate import (SearchCaps, VerificationReport, enumerate_candidates, run_search,
                        verify_log2, verify_log3, verify_monotonic)

__version__ = "0.1.0"

__all__ = [
    "ChernProfile", "ConditionReport", "Multidegree", "SearchCaps", "VerificationReport",
    "WciCandidate", "WeightSystem", "ceil_log", "chern_coefficient", "chern_profile",
    "enumerate_candidates", "is_l_fano", "is_quadric_ci_form", "l_window",
    "necessary_conditions", "run_search", "verify_log2", "verify_log3", "verify_monotonic",
]
