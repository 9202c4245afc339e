"""Combinatorial predicates on (weights; degrees).

Everything here is a *necessary* condition for a smooth, well formed Fano
weighted complete intersection that is not an intersection with a linear
cone.  Passing all of them does not mean a smooth model exists; the
well-formedness of ``X`` itself (codimension of ``X`` meeting the singular
locus) is never decided, which is what ``wf_note`` records.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd

from .core import WciCandidate, WeightSystem, ceil_div

WF_NOTE = "necessary-conditions regime"

ITEM_IDS = tuple(f"thm2.6/{i}" for i in range(1, 10))
REPORT_ORDER = ("wf-space", "linear-cone") + ITEM_IDS

# cheapest first; used by the short-circuiting filter
FAST_ORDER = (5, 6, 2, 9, 4, 1, 3, 7, 8)


@dataclass(frozen=True)
class ConditionReport:
    wf_space: bool
    not_linear_cone: bool
    c1: bool
    c2: bool
    c3: bool
    c4: bool
    c5: bool
    c6: bool
    c7: bool
    c8: bool
    c9: bool
    wf_note: str = WF_NOTE

    def flags(self) -> dict[str, bool]:
        items = (self.c1, self.c2, self.c3, self.c4, self.c5, self.c6, self.c7, self.c8, self.c9)
        return {"wf-space": self.wf_space, "linear-cone": self.not_linear_cone,
                **dict(zip(ITEM_IDS, items))}

    @property
    def all_pass(self) -> bool:
        return all(self.flags().values())

    @property
    def first_failure(self) -> str | None:
        for name, ok in self.flags().items():
            if not ok:
                return name
        return None

    def to_dict(self) -> dict:
        return {"flags": self.flags(), "all_pass": self.all_pass,
                "first_failure": self.first_failure, "wf_note": self.wf_note}


def wps_well_formed(ws: WeightSystem) -> bool:
    a = ws.weights
    return all(reduce(gcd, a[:i] + a[i + 1:]) == 1 for i in range(len(a)))


def not_linear_cone(cand: WciCandidate) -> bool:
    return not set(cand.weights) & set(cand.degrees)


def prime_exponents(x: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= x:
        while x % p == 0:
            out[p] = out.get(p, 0) + 1
            x //= p
        p += 1
    if x > 1:
        out[x] = out.get(x, 0) + 1
    return out


def product_divides(small: tuple[int, ...], big: tuple[int, ...]) -> bool:
    """Whether ``prod(small)`` divides ``prod(big)``, via prime exponents."""
    need: dict[int, int] = {}
    for x in small:
        for p, e in prime_exponents(x).items():
            need[p] = need.get(p, 0) + e
    if not need:
        return True
    have: dict[int, int] = {}
    for x in big:
        for p in need:
            while x % p == 0:
                have[p] = have.get(p, 0) + 1
                x //= p
    return all(have.get(p, 0) >= e for p, e in need.items())


def divisor_counts_ok(cand: WciCandidate) -> bool:
    a, d = cand.weights, cand.degrees
    bs = {b for x in a for b in range(2, x + 1) if x % b == 0}
    for b in bs:
        if sum(1 for x in a if x % b == 0) > sum(1 for x in d if x % b == 0):
            return False
    return True


def _item(cand: WciCandidate, i: int) -> bool:
    a, d = cand.weights, cand.degrees
    N, k, s = cand.N, cand.k, cand.s
    if i == 1:
        # vacuous for k = 1
        return all(d[j - 1] > a[N - k + j] for j in range(1, k))
    if i == 2:
        return s >= k + 1
    if i == 3:
        return s >= sum(a) - sum(d)
    if i == 4:
        return not_linear_cone(cand)
    if i == 5:
        return all(x != 1 for x in d)
    if i == 6:
        return N >= 2 * k
    if i == 7:
        return divisor_counts_ok(cand)
    if i == 8:
        return product_divides(a, d)
    if i == 9:
        return d[-1] >= 2 * a[-1]
    raise ValueError(f"no condition {i}")


def necessary_conditions(cand: WciCandidate) -> ConditionReport:
    """Evaluate every flag; nothing short-circuits."""
    items = [_item(cand, i) for i in range(1, 10)]
    return ConditionReport(wps_well_formed(cand.ws), not_linear_cone(cand), *items)


def first_failure_fast(cand: WciCandidate) -> str | None:
    """Short-circuiting filter: identifier of the first failing check or None."""
    for i in FAST_ORDER:
        if not _item(cand, i):
            return ITEM_IDS[i - 1]
    if not wps_well_formed(cand.ws):
        return "wf-space"
    return None


def passes_necessary(cand: WciCandidate) -> bool:
    return first_failure_fast(cand) is None


def is_quadric_ci_form(cand: WciCandidate, l: int) -> bool:
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    if any(a != 1 for a in cand.weights) or any(d != 2 for d in cand.degrees):
        return False
    return cand.k <= ceil_div(cand.N + 1, 2**l) - 1
