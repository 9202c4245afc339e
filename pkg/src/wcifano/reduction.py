"""Executable reductions behind the monotonicity and log3 arguments.

Two step machines rewrite the data ``(a; d)`` while controlling the power
sum difference ``f(l) = sum d_i^l - sum a_j^l``:

* :func:`reduce_additive` moves weight from ``a_s`` (the least nonunit
  weight) onto ``a_N`` in integer amounts.  Each step makes ``f`` grow no
  faster, and it stops at ``s = N`` or ``s = N + 1`` where ``f`` has an
  obviously increasing closed form.
* :func:`reduce_multiplicative` moves a rational factor ``p`` from ``a_s``
  onto ``a_{N-1}``.  Each step does not increase ``f(l)`` at the target
  ``l``, and it stops in one of three terminal shapes handled by
  :func:`check_allbut1` and :func:`check_case3`.

Every step is recorded in a :class:`ReductionTrace`.  States are
revalidated after each step; a failure there is an implementation bug and
raises :class:`ReductionInvariantError` instead of being repaired.

The inequality oracles :func:`lemma_at_gap`, :func:`lemma_at2` and
:func:`lemma_power_gap` are the elementary facts the steps rely on.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import IO, Iterable, Sequence

from mpmath.ctx_iv import MPIntervalContext

from .conditions import necessary_conditions
from .core import WciCandidate, ceil_log, chern_coefficient

SCHEMA = 1
MONOTONE_RANGE = range(1, 13)

Rational = int | Fraction


class HypothesisError(ValueError):
    """Input violates a stated hypothesis; ``hypothesis`` names which one."""

    def __init__(self, hypothesis: str, detail: str = ""):
        self.hypothesis = hypothesis
        self.detail = detail
        super().__init__(f"{hypothesis}: {detail}" if detail else hypothesis)


class ReductionInvariantError(RuntimeError):
    """A step produced a state outside the invariants (a bug, never repaired)."""


def frac_str(x: Rational) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"7"``, ``"7/3"`` into an exact positive rational."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc
    return value


def _require(ok: bool, hypothesis: str, detail: str = "") -> None:
    if not ok:
        raise HypothesisError(hypothesis, detail)


def _powsum(values: Iterable[Rational], l: int) -> Fraction:
    return sum((Fraction(v) ** l for v in values), Fraction(0))


# ---------------------------------------------------------------------------
# additive normalization


@dataclass(frozen=True)
class AdditiveState:
    weights: tuple[int, ...]
    degrees: tuple[int, ...]

    def __init__(self, weights: Iterable[int], degrees: Iterable[int]):
        object.__setattr__(self, "weights", tuple(sorted(weights)))
        object.__setattr__(self, "degrees", tuple(sorted(degrees)))

    @property
    def N(self) -> int:
        return len(self.weights) - 1

    @property
    def k(self) -> int:
        return len(self.degrees)

    @property
    def s(self) -> int:
        return self.weights.count(1)

    def f(self, l: int) -> int:
        return sum(d**l for d in self.degrees) - sum(a**l for a in self.weights)

    def validate(self) -> None:
        a, d = self.weights, self.degrees
        _require(all(isinstance(x, int) and x >= 1 for x in a + d), "additive/integers",
                 "weights and degrees must be positive integers")
        _require(len(a) >= 2 and len(d) >= 1, "additive/shape", "need N >= 1 and k >= 1")
        N, k, s = self.N, self.k, self.s
        _require(k <= N + 1, "additive/k<=N+1", f"k={k}, N={N}")
        _require(all(x >= 2 for x in d), "additive/d>=2", f"degrees {d}")
        _require(s >= 1, "additive/s>=1", "no unit weight")
        for i in range(1, k + 1):
            _require(d[i - 1] > a[N - k + i], "additive/d>a",
                     f"d_{i}={d[i - 1]} <= a_{N - k + i}={a[N - k + i]}")
        rest = sum(a[s:])
        _require(rest <= sum(d) < rest + s, "additive/sum",
                 f"need {rest} <= {sum(d)} < {rest + s}")

    def to_dict(self) -> dict:
        return {"weights": list(self.weights), "degrees": list(self.degrees),
                "N": self.N, "k": self.k, "s": self.s}


# ---------------------------------------------------------------------------
# multiplicative algorithm


@dataclass(frozen=True)
class MultiplicativeState:
    """Rational weights in position order; ``a_N`` is the last entry.

    Only ``a_0 <= ... <= a_{N-1}`` and ``a_{N-2} <= a_N`` are assumed, so
    the weights are kept in the order given rather than sorted.
    """

    weights: tuple[Fraction, ...]
    degrees: tuple[int, ...]

    def __init__(self, weights: Iterable[Rational], degrees: Iterable[int]):
        object.__setattr__(self, "weights", tuple(Fraction(x) for x in weights))
        object.__setattr__(self, "degrees", tuple(sorted(degrees)))

    @property
    def N(self) -> int:
        return len(self.weights) - 1

    @property
    def k(self) -> int:
        return len(self.degrees)

    @property
    def s(self) -> int:
        return sum(1 for x in self.weights if x == 1)

    def f(self, l: int) -> Fraction:
        return _powsum(self.degrees, l) - _powsum(self.weights, l)

    def validate(self) -> None:
        a, d = self.weights, self.degrees
        _require(len(a) >= 3 and len(d) >= 1, "multiplicative/shape", "need N >= 2 and k >= 1")
        _require(all(isinstance(x, int) for x in d), "multiplicative/integers",
                 "degrees must be integers")
        N, k, s = self.N, self.k, self.s
        _require(N - k >= 2, "multiplicative/N-k>=2", f"N={N}, k={k}")
        _require(all(x >= 1 for x in a), "multiplicative/order", "weights must be >= 1")
        _require(all(a[j] <= a[j + 1] for j in range(N - 1)) and a[N - 2] <= a[N],
                 "multiplicative/order", "need a_0 <= ... <= a_{N-1} and a_{N-2} <= a_N")
        for i in range(1, k):
            _require(d[i - 1] > a[N - k + i], "multiplicative/d>a",
                     f"d_{i}={d[i - 1]} <= a_{N - k + i}={frac_str(a[N - k + i])}")
        _require(all(x != 1 for x in d), "multiplicative/d!=1", f"degrees {d}")
        _require(a[N] >= 3, "multiplicative/aN>=3", f"a_N={frac_str(a[N])}")
        ratio = Fraction(prod(d)) / prod(a)
        _require(ratio.denominator == 1 and ratio > 0, "multiplicative/divisibility",
                 f"prod(d)/prod(a) = {frac_str(ratio)}")
        _require(d[-1] >= 2 * a[N], "multiplicative/dk>=2aN",
                 f"d_k={d[-1]}, a_N={frac_str(a[N])}")
        for j, x in enumerate(a):
            if j not in (s, N - 1):
                _require(x.denominator == 1, "multiplicative/integrality", f"a_{j}={frac_str(x)}")

    def to_dict(self) -> dict:
        return {"weights": [frac_str(x) for x in self.weights], "degrees": list(self.degrees),
                "N": self.N, "k": self.k, "s": self.s}


# ---------------------------------------------------------------------------
# traces


@dataclass(frozen=True)
class ReductionStep:
    case: str  # "s-up", "drop-pair" or "both"
    amount: Rational  # transfer c (additive) or factor p (multiplicative)
    state: AdditiveState | MultiplicativeState

    def to_dict(self) -> dict:
        return {"case": self.case, "amount": frac_str(self.amount), "state": self.state.to_dict()}


@dataclass(frozen=True)
class Terminal:
    case: str  # "s=N", "s=N+1", "case-1", "case-2" or "case-3"
    checker: str
    verdict: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"case": self.case, "checker": self.checker, "verdict": self.verdict, **self.detail}


@dataclass(frozen=True)
class ReductionTrace:
    mode: str
    initial: AdditiveState | MultiplicativeState
    steps: tuple[ReductionStep, ...]
    terminal: Terminal

    @property
    def final(self) -> AdditiveState | MultiplicativeState:
        return self.steps[-1].state if self.steps else self.initial

    def states(self) -> list:
        return [self.initial] + [st.state for st in self.steps]

    def to_dict(self) -> dict:
        return {"schema": SCHEMA, "mode": self.mode, "initial": self.initial.to_dict(),
                "steps": [st.to_dict() for st in self.steps],
                "terminal": self.terminal.to_dict()}

    def jsonl_records(self) -> list[dict]:
        out = [{"schema": SCHEMA, "record": "initial", "mode": self.mode,
                **self.initial.to_dict()}]
        for i, st in enumerate(self.steps, 1):
            out.append({"schema": SCHEMA, "record": "step", "index": i, **st.to_dict()})
        out.append({"schema": SCHEMA, "record": "terminal", **self.terminal.to_dict()})
        return out

    def write_jsonl(self, fh: IO[str]) -> None:
        for rec in self.jsonl_records():
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


def _revalidate(state, step_no: int) -> None:
    try:
        state.validate()
    except HypothesisError as exc:
        raise ReductionInvariantError(
            f"state after step {step_no} broke {exc.hypothesis}: {exc}") from exc


def _additive_step(st: AdditiveState) -> ReductionStep:
    a, d = list(st.weights), list(st.degrees)
    s, N = st.s, st.N
    c = min(a[s] - 1, d[-1] - a[N])
    lower_tight = a[s] - c == 1
    upper_tight = a[N] + c == d[-1]
    if lower_tight and not upper_tight:
        case = "s-up"
        a[s] = 1
        a[N] += c
    elif upper_tight and not lower_tight:
        case = "drop-pair"
        a[s] -= c
        a.pop()
        d.pop()
    else:
        case = "both"
        a[s] = 1
        a.pop()
        d.pop()
    return ReductionStep(case, c, AdditiveState(a, d))


def _additive_terminal(st: AdditiveState) -> Terminal:
    d, a, s, N = st.degrees, st.weights, st.s, st.N
    if s == N:
        # f(l) = (d_k^l - a_N^l) + sum_{i<k} d_i^l - s
        structural = d[-1] > a[N] and all(x >= 1 for x in d[:-1])
        formula = " + ".join([f"({d[-1]}^l - {a[N]}^l)"] + [f"{x}^l" for x in d[:-1]]) + f" - {s}"

        def closed(m):
            return (d[-1] ** m - a[N] ** m) + sum(x**m for x in d[:-1]) - s
        case = "s=N"
    else:
        structural = all(x >= 2 for x in d)
        formula = " + ".join(f"{x}^l" for x in d) + f" - {N + 1}"

        def closed(m):
            return sum(x**m for x in d) - (N + 1)
        case = "s=N+1"
    values = [closed(m) for m in MONOTONE_RANGE]
    agrees = all(closed(m) == st.f(m) for m in MONOTONE_RANGE)
    increasing = all(x < y for x, y in zip(values, values[1:]))
    return Terminal(case, "closed-form", structural and agrees and increasing,
                    {"formula": formula, "f": values[:4]})


def reduce_additive(state: AdditiveState) -> ReductionTrace:
    """Run the additive normalization to ``s = N`` or ``s = N + 1``."""
    state.validate()
    bound = state.N + state.k
    steps: list[ReductionStep] = []
    st = state
    while st.s < st.N:
        if len(steps) >= bound:
            raise ReductionInvariantError(f"no termination after {bound} steps")
        step = _additive_step(st)
        _revalidate(step.state, len(steps) + 1)
        steps.append(step)
        st = step.state
    return ReductionTrace("additive", state, tuple(steps), _additive_terminal(st))


def _multiplicative_step(st: MultiplicativeState) -> ReductionStep:
    a, d = list(st.weights), list(st.degrees)
    s, N, k = st.s, st.N, st.k
    p = min(a[s], Fraction(d[k - 2]) / a[N - 1])
    lower_tight = a[s] / p == 1
    upper_tight = a[N - 1] * p == d[k - 2]
    if lower_tight and not upper_tight:
        case = "s-up"
        a[s] = Fraction(1)
        a[N - 1] *= p
    elif upper_tight and not lower_tight:
        # cancel a_{N-1} p = d_{k-1}; a_N and d_k stay put
        case = "drop-pair"
        a[s] /= p
        del a[N - 1]
        del d[k - 2]
    else:
        case = "both"
        a[s] = Fraction(1)
        del a[N - 1]
        del d[k - 2]
    return ReductionStep(case, p, MultiplicativeState(a, d))


def _multiplicative_case(st: MultiplicativeState) -> str | None:
    s, N, k = st.s, st.N, st.k
    if s >= N:
        return "case-2"
    if k == 1:
        return "case-3"
    if s == N - 1:
        return "case-1"
    return None


def reduce_multiplicative(state: MultiplicativeState) -> ReductionTrace:
    """Run the multiplicative algorithm and hand off to its terminal checker."""
    state.validate()
    bound = state.N + state.k
    steps: list[ReductionStep] = []
    st = state
    while (case := _multiplicative_case(st)) is None:
        if len(steps) >= bound:
            raise ReductionInvariantError(f"no termination after {bound} steps")
        step = _multiplicative_step(st)
        _revalidate(step.state, len(steps) + 1)
        steps.append(step)
        st = step.state
    if case == "case-3":
        l = ceil_log(3, st.N + 1)
        verdict = check_case3(st, l)
        checker = "case3"
    else:
        l = ceil_log(3, st.N - st.k + 2)
        verdict = check_allbut1(st, l)
        checker = "allbut1"
    detail = {"l": l, "sum_d_l": frac_str(_powsum(st.degrees, l)),
              "sum_a_l": frac_str(_powsum(st.weights, l))}
    return ReductionTrace("multiplicative", state, tuple(steps),
                          Terminal(case, checker, verdict, detail))


# ---------------------------------------------------------------------------
# terminal checkers


def _weights_degrees(state) -> tuple[tuple[Fraction, ...], tuple[int, ...]]:
    return tuple(Fraction(x) for x in state.weights), tuple(sorted(state.degrees))


def check_allbut1(state, l: int | None = None) -> bool:
    """``sum d^l >= sum a^l`` when at most ``k`` weights are nonunit.

    ``a_{N-1} <= a_N`` is not required: the multiplicative algorithm can
    push ``a_{N-1}`` past ``a_N`` and the argument never compares them.
    """
    a, d = _weights_degrees(state)
    N, k = len(a) - 1, len(d)
    _require(N - k >= 2, "allbut1/N-k>=2", f"N={N}, k={k}")
    s = sum(1 for x in a if x == 1)
    _require(all(x == 1 for x in a[:s]) and all(x > 1 for x in a[s:])
             and all(a[j] <= a[j + 1] for j in range(N - 1)), "allbut1/order",
             "need 1 = a_0 = ... = a_{s-1} < a_s <= ... <= a_{N-1}")
    _require(a[N] >= 2, "allbut1/aN>=2", f"a_N={frac_str(a[N])}")
    _require(d[-1] >= 2 * a[N], "allbut1/dk>=2aN", f"d_k={d[-1]}, a_N={frac_str(a[N])}")
    for i in range(1, k):
        _require(d[i - 1] > a[N - k + i], "allbut1/d>a", f"d_{i}={d[i - 1]}")
    _require(1 <= N + 1 - s <= k, "allbut1/nonunit-count", f"{N + 1 - s} nonunit weights, k={k}")
    if l is None:
        l = ceil_log(3, N - k + 2)
    return _powsum(d, l) >= _powsum(a, l)


def check_case3(state, l: int | None = None) -> bool:
    """``d^l >= sum a^l`` for a single degree divisible by ``prod(a)``."""
    a, d = _weights_degrees(state)
    N = len(a) - 1
    _require(len(d) == 1, "case3/k=1", f"k={len(d)}")
    _require(N >= 3, "case3/N>=3", f"N={N}")
    s = sum(1 for x in a if x == 1)
    _require(all(x == 1 for x in a[:s]) and all(a[j] <= a[j + 1] for j in range(N)),
             "case3/order", "weights must be sorted with the units first")
    _require(s <= N - 1, "case3/s<=N-1", f"s={s}, N={N}")
    for j, x in enumerate(a):
        if j != s:
            _require(x.denominator == 1, "case3/integrality", f"a_{j}={frac_str(x)}")
    _require(a[N] >= 3, "case3/aN>=3", f"a_N={frac_str(a[N])}")
    ratio = Fraction(d[0]) / prod(a)
    _require(ratio.denominator == 1 and ratio > 0, "case3/divisibility",
             f"d/prod(a) = {frac_str(ratio)}")
    _require(d[0] >= 2 * a[N], "case3/d>=2aN", f"d={d[0]}, a_N={frac_str(a[N])}")
    if l is None:
        l = ceil_log(3, N + 1)
    return Fraction(d[0]) ** l >= _powsum(a, l)


def check_alla1(N: int, k: int, degrees: Sequence[int], l: int | None = None) -> bool:
    """``sum d^l >= N + 1`` for a Fano complete intersection in P^N."""
    d = sorted(degrees)
    _require(len(d) == k and k >= 1, "alla1/k", f"{len(d)} degrees for k={k}")
    _require(N - k >= 2, "alla1/N-k>=2", "N - k <= 1 is the conic case")
    _require(all(x >= 2 for x in d), "alla1/hyperplane", f"degrees {d}")
    _require(any(x > 2 for x in d), "alla1/not-quadrics", "all degrees equal 2")
    _require(sum(d) < N + 1, "alla1/fano", f"sum(d)={sum(d)} >= N+1={N + 1}")
    if l is None:
        l = ceil_log(3, N - k + 2)
    return sum(x**l for x in d) >= N + 1


def classify_conic_case(N: int, k: int, weights: Sequence[int], degrees: Sequence[int]) -> str:
    """``"not-applicable"``, ``"conic"`` or ``"excluded"``.

    When ``ceil(log3(N - k + 2)) = 1`` the only candidate passing the
    necessary conditions with ``c_1 > 0`` is the conic ``P(1,1,1)[2]``;
    anything else in that range is ``"excluded"``.
    """
    _require(len(weights) == N + 1, "conic/N", f"{len(weights)} weights for N={N}")
    _require(len(degrees) == k, "conic/k", f"{len(degrees)} degrees for k={k}")
    if N - k + 2 < 1 or ceil_log(3, N - k + 2) != 1:
        return "not-applicable"
    if N - k < 1:
        return "excluded"
    cand = WciCandidate.of(weights, degrees)
    if not (necessary_conditions(cand).all_pass and chern_coefficient(cand, 1) > 0):
        return "excluded"
    if (N, k, cand.weights, cand.degrees) != (2, 1, (1, 1, 1), (2,)):
        raise ReductionInvariantError(f"{cand} passes in the conic range but is not the conic")
    return "conic"


# ---------------------------------------------------------------------------
# inequality oracles

_PRECISIONS = (96, 256, 1024)


def _iv_rational(ctx, x: Rational):
    x = Fraction(x)
    return ctx.mpf(x.numerator) / ctx.mpf(x.denominator)


def _iv_pow(ctx, base: Fraction, l):
    if base == 0:
        return ctx.mpf(0)
    return _iv_rational(ctx, base) ** l


def lemma_at_gap(a: Rational, b: Rational, c: Rational, l1: Rational, l2: Rational) -> bool | None:
    """Whether ``h(l2) >= h(l1)`` for ``h(l) = (a+c)^l + (b-c)^l - a^l - b^l``.

    Evaluated in interval arithmetic at increasing precision.  Returns
    ``None`` (indeterminate) when the enclosure of ``h(l2) - h(l1)`` still
    straddles zero at the highest precision.

    The inequality needs ``b >= 1`` (the reductions only apply it to
    integers).  Below that it can fail, e.g. ``a = b = c = 1/10`` with
    ``l1 = 2, l2 = 5``; the oracle then answers ``False`` rather than raising.
    """
    a, b, c, l1, l2 = (Fraction(x) for x in (a, b, c, l1, l2))
    if not (a >= b >= c > 0):
        raise ValueError(f"need a >= b >= c > 0, got {a}, {b}, {c}")
    if not (1 <= l1 <= l2):
        raise ValueError(f"need 1 <= l1 <= l2, got {l1}, {l2}")
    if l1 == l2:
        return True
    if l1.denominator == 1 and l2.denominator == 1:
        def h_exact(l):
            return (a + c) ** l + (b - c) ** l - a**l - b**l
        return h_exact(int(l2)) >= h_exact(int(l1))
    for bits in _PRECISIONS:
        ctx = MPIntervalContext()
        ctx.prec = bits

        def h(l):
            li = _iv_rational(ctx, l)
            return _iv_pow(ctx, a + c, li) + _iv_pow(ctx, b - c, li) - _iv_pow(ctx, a, li) - _iv_pow(ctx, b, li)
        gap = h(l2) - h(l1)
        if gap.a >= 0:
            return True
        if gap.b < 0:
            return False
    return None


def lemma_at2(a: Rational, b: Rational, d: Rational) -> bool:
    """``a + b <= a/d + b d`` for ``1 <= d <= a <= b``, exactly.

    The difference is computed directly and through the factorization
    ``(a/d)(d - 1)(b d / a - 1)``; the two must agree.
    """
    a, b, d = Fraction(a), Fraction(b), Fraction(d)
    if not (1 <= d <= a <= b):
        raise ValueError(f"need 1 <= d <= a <= b, got {a}, {b}, {d}")
    direct = a / d + b * d - a - b
    factored = (a / d) * (d - 1) * (b * d / a - 1)
    if direct != factored:
        raise ReductionInvariantError(f"factorization mismatch at a={a}, b={b}, d={d}")
    return factored >= 0


def lemma_power_gap(l: Rational):
    """``4^l - 2^l - 3^l``.

    Exact integer for integer ``l``; otherwise an mpmath interval enclosing
    the value (check ``.a > 0`` for certified positivity).
    """
    l = Fraction(l)
    if l < 2:
        raise ValueError(f"need l >= 2, got {l}")
    if l.denominator == 1:
        m = int(l)
        return 4**m - 2**m - 3**m
    ctx = MPIntervalContext()
    ctx.prec = _PRECISIONS[0]
    li = _iv_rational(ctx, l)
    return ctx.mpf(4) ** li - ctx.mpf(2) ** li - ctx.mpf(3) ** li
