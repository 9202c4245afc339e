"""Bounded exhaustive search and the theorem verifiers built on it.

Results are always *confirmed within caps*: the box is finite and the
theorems are not.  The search visits every well formed ``(weights; degrees)``
of dimension ``n`` inside the caps and keeps those passing the necessary
conditions with ``c_1 > 0`` and ``c_l > 0``.

Work is split into units ``(k, a_N)`` (optionally ``(k, a_N, d_k)``).  Units
share nothing; their survivors are merged and sorted by
``(k, weights, degrees)``, so the output does not depend on the number of
workers.
"""

from __future__ import annotations

import logging
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

from . import kernel
from .conditions import is_quadric_ci_form, passes_necessary
from .core import ChernProfile, WciCandidate, ceil_log, chern_coefficient, chern_profile, l_window

log = logging.getLogger(__name__)

SCHEMA = 1


@dataclass(frozen=True)
class SearchCaps:
    dim: int
    max_weight: int
    max_degree: int
    max_codim: int | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if self.max_weight < 1 or self.max_degree < 1:
            raise ValueError("max_weight and max_degree must be positive")
        if self.max_codim is not None and self.max_codim < 1:
            raise ValueError(f"max_codim must be >= 1, got {self.max_codim}")
        if self.max_degree < 4:
            warnings.warn(f"max_degree={self.max_degree} < 4: the search space is empty",
                          stacklevel=3)
        elif self.max_degree < 2 * self.max_weight:
            warnings.warn(
                f"max_degree={self.max_degree} < 2*max_weight: weights above "
                f"{self.max_degree // 2} can never survive (d_k >= 2 a_N)", stacklevel=3)

    @property
    def codim_bound(self) -> int:
        # N >= 2k forces k <= n
        return min(self.dim, self.max_codim or self.dim)

    @property
    def weight_bound(self) -> int:
        return min(self.max_weight, self.max_degree // 2)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Survivor:
    cand: WciCandidate
    chern: ChernProfile
    l: int

    def sort_key(self):
        return (self.cand.k, self.cand.weights, self.cand.degrees)

    def to_record(self) -> dict:
        c = self.cand
        return {"schema": SCHEMA, "n": c.n, "k": c.k, "weights": list(c.weights),
                "degrees": list(c.degrees), "chern": list(self.chern.coefficients),
                "l": self.l}


@dataclass
class SearchResult:
    caps: SearchCaps
    l: int
    scanned: int
    survivors: list[Survivor]
    elapsed: float


def work_units(caps: SearchCaps, split_top_degree: bool = False) -> list[tuple[int, int, int, int]]:
    """Units ``(k, a_N, dk_lo, dk_hi)`` covering the whole box exactly once."""
    units = []
    for k in range(1, caps.codim_bound + 1):
        for top in range(1, caps.weight_bound + 1):
            if split_top_degree:
                units.extend((k, top, dk, dk) for dk in range(2, caps.max_degree + 1))
            else:
                units.append((k, top, 2, caps.max_degree))
    return units


def _run_unit(args):
    n, unit, wcap, maxd, l, backend = args
    k, top, dk_lo, dk_hi = unit
    return kernel.search_unit(n, k, top, dk_lo, dk_hi, wcap, maxd, l, backend=backend)


def run_search(caps: SearchCaps, l: int, jobs: int = 1, *, backend: str | None = None,
               units: Sequence[tuple[int, int, int, int]] | None = None,
               check: bool = False) -> SearchResult:
    """Run every unit and merge survivors in ``(k, weights, degrees)`` order.

    With ``check=True`` each survivor is re-validated against the
    library predicates (catches kernel bugs; used by the tests).
    """
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    start = time.perf_counter()
    units = list(units) if units is not None else work_units(caps)
    args = [(caps.dim, u, caps.weight_bound, caps.max_degree, l, backend) for u in units]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_unit, args, chunksize=1))
    else:
        results = [_run_unit(a) for a in args]
    scanned = 0
    survivors = []
    for sc, found in results:
        scanned += sc
        for w, d in found:
            cand = WciCandidate.of(w, d)
            survivors.append(Survivor(cand, chern_profile(cand, l), l))
    survivors.sort(key=Survivor.sort_key)
    if check:
        for sv in survivors:
            c = sv.cand
            if not (passes_necessary(c) and chern_coefficient(c, 1) > 0
                    and chern_coefficient(c, l) > 0):
                raise AssertionError(f"kernel emitted an invalid candidate {c}")
    elapsed = time.perf_counter() - start
    log.debug("n=%d l=%d scanned=%d survivors=%d %.2fs", caps.dim, l, scanned,
              len(survivors), elapsed)
    return SearchResult(caps, l, scanned, survivors, elapsed)


def enumerate_candidates(caps: SearchCaps, l: int, sink: Callable[[Survivor], object] | None = None,
                         jobs: int = 1, **kwargs) -> int:
    """Feed every survivor to ``sink`` in deterministic order; return the count."""
    result = run_search(caps, l, jobs, **kwargs)
    if sink is not None:
        for sv in result.survivors:
            sink(sv)
    return len(result.survivors)


@dataclass
class VerificationReport:
    theorem: str
    caps: dict
    dims: list[int]
    candidates_scanned: int = 0
    survivors: list[Survivor] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)
    runs: list[dict] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def verdict(self) -> str:
        return "violation" if self.violations else "confirmed-within-caps"

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "theorem": self.theorem,
            "caps": self.caps,
            "dims": self.dims,
            "candidates_scanned": self.candidates_scanned,
            "survivor_count": len(self.survivors),
            "survivors": [sv.to_record() for sv in self.survivors],
            "violations": self.violations,
            "runs": self.runs,
            "verdict": self.verdict,
            "elapsed_s": round(self.elapsed, 3),
        }


def _caps_dict(max_weight, max_degree, max_codim):
    return {"max_weight": max_weight, "max_degree": max_degree, "max_codim": max_codim}


def verify_log2(dims: Iterable[int], max_weight: int, max_degree: int,
                max_codim: int | None = None, jobs: int = 1, **kwargs) -> VerificationReport:
    """No survivor at ``l = ceil(log2(n+2))`` for any ``n`` in ``dims``."""
    dims = list(dims)
    rep = VerificationReport("log2", _caps_dict(max_weight, max_degree, max_codim), dims)
    start = time.perf_counter()
    for n in dims:
        l = ceil_log(2, n + 2)
        res = run_search(SearchCaps(n, max_weight, max_degree, max_codim), l, jobs, **kwargs)
        rep.candidates_scanned += res.scanned
        rep.survivors.extend(res.survivors)
        rep.violations.extend({"reason": "survivor at l = ceil(log2(n+2))", **sv.to_record()}
                              for sv in res.survivors)
        rep.runs.append({"n": n, "l": l, "scanned": res.scanned,
                         "survivors": len(res.survivors), "elapsed_s": round(res.elapsed, 3)})
    rep.elapsed = time.perf_counter() - start
    return rep


def verify_log3(dims: Iterable[int], max_weight: int, max_degree: int,
                max_codim: int | None = None, jobs: int = 1, **kwargs) -> VerificationReport:
    """Every survivor with ``l`` in the window is an intersection of few quadrics."""
    dims = list(dims)
    rep = VerificationReport("log3", _caps_dict(max_weight, max_degree, max_codim), dims)
    start = time.perf_counter()
    for n in dims:
        lo, hi = l_window(n)
        for l in range(lo, hi + 1):
            res = run_search(SearchCaps(n, max_weight, max_degree, max_codim), l, jobs, **kwargs)
            rep.candidates_scanned += res.scanned
            rep.survivors.extend(res.survivors)
            rep.violations.extend({"reason": "survivor not a quadric complete intersection",
                                   **sv.to_record()}
                                  for sv in res.survivors if not is_quadric_ci_form(sv.cand, l))
            rep.runs.append({"n": n, "l": l, "scanned": res.scanned,
                             "survivors": len(res.survivors), "elapsed_s": round(res.elapsed, 3)})
    rep.elapsed = time.perf_counter() - start
    return rep


def default_m_max(dims: Iterable[int]) -> int:
    return max([l_window(n)[1] + 3 for n in dims] + [10])


def filtered_corpus(dims: Iterable[int], max_weight: int, max_degree: int,
                    max_codim: int | None = None, jobs: int = 1, **kwargs) -> tuple[list[Survivor], int]:
    """All candidates passing the necessary conditions with ``c_1 > 0``."""
    corpus: list[Survivor] = []
    scanned = 0
    for n in dims:
        res = run_search(SearchCaps(n, max_weight, max_degree, max_codim), 1, jobs, **kwargs)
        corpus.extend(res.survivors)
        scanned += res.scanned
    return corpus, scanned


def verify_monotonic(corpus: Iterable[WciCandidate | Survivor], m_max: int) -> VerificationReport:
    """Check ``c_m > c_{m+1}`` for ``1 <= m < m_max`` on every corpus element."""
    start = time.perf_counter()
    rep = VerificationReport("monotonic", {"m_max": m_max}, [])
    dims = set()
    for item in corpus:
        cand = item.cand if isinstance(item, Survivor) else item
        if not passes_necessary(cand) or chern_coefficient(cand, 1) <= 0:
            raise ValueError(f"{cand} does not pass the necessary conditions with c_1 > 0")
        dims.add(cand.n)
        prof = chern_profile(cand, m_max)
        rep.survivors.append(Survivor(cand, prof, 1))
        for m in range(1, m_max):
            if not prof[m] > prof[m + 1]:
                rep.violations.append({"weights": list(cand.weights),
                                       "degrees": list(cand.degrees), "m": m,
                                       "c_m": prof[m], "c_m+1": prof[m + 1]})
                break
    rep.dims = sorted(dims)
    rep.candidates_scanned = len(rep.survivors)
    rep.elapsed = time.perf_counter() - start
    return rep
