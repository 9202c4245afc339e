"""Chern character pairings on the blow-up of P^n at a point.

Classes live in Q[H, E] / (H E) truncated above degree ``n``; a class is a
dict ``{(i, j): coeff}`` for ``H^i E^j`` (only pure powers survive).  The
Chern character ``exp(H + E) + n exp(H - E) - 1`` is expanded term by term,
then paired against the generators of the effective cone

    X_k = H^{n-k} - (-1)^{n-k+1} E^{n-k},    Y_k = (-1)^{n-k+1} E^{n-k}

using ``H^n = 1`` and ``E^n = (-1)^{n+1}``.  The even characters come out
nef but not positive: ``ch_k . X_k = 0`` for even ``k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

Class = dict[tuple[int, int], Fraction]


def _add(x: Class, y: Class, scale: Fraction = Fraction(1)) -> Class:
    out = dict(x)
    for mono, c in y.items():
        out[mono] = out.get(mono, Fraction(0)) + scale * c
    return {m: c for m, c in out.items() if c}


def _mul(x: Class, y: Class, top: int) -> Class:
    out: Class = {}
    for (i1, j1), c1 in x.items():
        for (i2, j2), c2 in y.items():
            i, j = i1 + i2, j1 + j2
            if (i and j) or i + j > top:
                continue  # H E = 0, and nothing lives above the top degree
            out[(i, j)] = out.get((i, j), Fraction(0)) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _exp(x: Class, top: int) -> Class:
    """Truncated exponential of a class with no constant term."""
    result: Class = {(0, 0): Fraction(1)}
    power: Class = {(0, 0): Fraction(1)}
    for m in range(1, top + 1):
        power = _mul(power, x, top)
        result = _add(result, power, Fraction(1, factorial(m)))
    return result


def chern_character(n: int) -> Class:
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    H_plus_E = {(1, 0): Fraction(1), (0, 1): Fraction(1)}
    H_minus_E = {(1, 0): Fraction(1), (0, 1): Fraction(-1)}
    ch = _add(_exp(H_plus_E, n), _exp(H_minus_E, n), Fraction(n))
    return _add(ch, {(0, 0): Fraction(1)}, Fraction(-1))


def graded_piece(cls: Class, k: int) -> Class:
    return {(i, j): c for (i, j), c in cls.items() if i + j == k}


def degree(cls: Class, n: int) -> Fraction:
    """Degree of a top-dimensional class."""
    total = Fraction(0)
    for (i, j), c in cls.items():
        if i + j != n:
            raise ValueError("not a top-degree class")
        if j == 0:
            total += c  # H^n = 1
        elif i == 0:
            total += c * (-1) ** (n + 1)  # E^n = (-1)^{n+1}
    return total


def effective_generators(n: int, k: int) -> tuple[Class, Class]:
    sign = (-1) ** (n - k + 1)
    X = {(n - k, 0): Fraction(1), (0, n - k): Fraction(-sign)}
    Y = {(0, n - k): Fraction(sign)}
    return X, Y


@dataclass(frozen=True)
class PairingResult:
    n: int
    k: int
    ch_dot_X: Fraction
    ch_dot_Y: Fraction
    top: Fraction | None = None

    def __post_init__(self):
        f = factorial(self.k)
        for v in (self.ch_dot_X, self.ch_dot_Y):
            if f % v.denominator:
                raise ValueError(f"denominator of {v} does not divide {self.k}!")

    def to_dict(self) -> dict:
        from .reduction import frac_str
        d = {"n": self.n, "k": self.k, "ch_dot_X": frac_str(self.ch_dot_X),
             "ch_dot_Y": frac_str(self.ch_dot_Y)}
        if self.top is not None:
            d["top"] = frac_str(self.top)
        return d


def blowup_chern_pairings(n: int, k: int) -> PairingResult:
    """``ch_k . X_k`` and ``ch_k . Y_k`` from the expansion, for ``1 <= k < n``."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
    ch_k = graded_piece(chern_character(n), k)
    X, Y = effective_generators(n, k)
    return PairingResult(n, k, degree(_mul(ch_k, X, n), n), degree(_mul(ch_k, Y, n), n))


def blowup_top_chern(n: int) -> Fraction:
    """Degree of ``ch_n`` from the expansion."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return degree(graded_piece(chern_character(n), n), n)


def closed_form_pairings(n: int, k: int) -> tuple[Fraction, Fraction]:
    f = factorial(k)
    return Fraction(1 - (-1) ** k, f), Fraction(n + (-1) ** k, f)


def closed_form_top(n: int) -> Fraction:
    return Fraction(1 - (-1) ** n, factorial(n))


def blowup_table(n: int) -> tuple[list[PairingResult], Fraction]:
    """Rows for ``k = 1 .. n - 1`` and the degree of ``ch_n``."""
    return [blowup_chern_pairings(n, k) for k in range(1, n)], blowup_top_chern(n)
