"""Candidate data model and exact Chern-coefficient arithmetic.

A weighted complete intersection ``X`` of multidegree ``(d_1, ..., d_k)`` in
``P(a_0, ..., a_N)`` has

    ch_m(X) = (1/m!) * (sum_j a_j**m - sum_i d_i**m) * H**m|_X

so everything here reduces to integer power sums.  Python integers are
arbitrary precision, which keeps every comparison exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal

Mode = Literal["full", "top"]


def _sorted_positive(values: Iterable[int], what: str) -> tuple[int, ...]:
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, int):
            raise TypeError(f"{what} must be integers, got {v!r}")
        if v < 1:
            raise ValueError(f"{what} must be positive, got {v}")
        out.append(v)
    return tuple(sorted(out))


@dataclass(frozen=True)
class WeightSystem:
    """Weights of a weighted projective space, stored sorted."""

    weights: tuple[int, ...]

    def __init__(self, weights: Iterable[int]):
        ws = _sorted_positive(weights, "weights")
        if len(ws) < 2:
            raise ValueError("a weighted projective space needs at least two weights")
        object.__setattr__(self, "weights", ws)

    @property
    def N(self) -> int:
        return len(self.weights) - 1

    @property
    def s(self) -> int:
        """Number of unit weights."""
        return sum(1 for a in self.weights if a == 1)

    def __iter__(self):
        return iter(self.weights)

    def __len__(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class Multidegree:
    degrees: tuple[int, ...]

    def __init__(self, degrees: Iterable[int]):
        ds = _sorted_positive(degrees, "degrees")
        if not ds:
            raise ValueError("multidegree must be nonempty")
        object.__setattr__(self, "degrees", ds)

    @property
    def k(self) -> int:
        return len(self.degrees)

    def __iter__(self):
        return iter(self.degrees)

    def __len__(self) -> int:
        return len(self.degrees)


@dataclass(frozen=True)
class WciCandidate:
    """A (weights; degrees) pair of positive dimension ``n = N - k``."""

    ws: WeightSystem
    md: Multidegree
    n: int = field(init=False)
    s: int = field(init=False)

    def __post_init__(self):
        n = self.ws.N - self.md.k
        if n < 1:
            raise ValueError(
                f"dimension N - k must be >= 1, got {self.ws.N} - {self.md.k} = {n}"
            )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "s", self.ws.s)

    @classmethod
    def of(cls, weights: Iterable[int], degrees: Iterable[int]) -> "WciCandidate":
        return cls(WeightSystem(weights), Multidegree(degrees))

    @property
    def weights(self) -> tuple[int, ...]:
        return self.ws.weights

    @property
    def degrees(self) -> tuple[int, ...]:
        return self.md.degrees

    @property
    def N(self) -> int:
        return self.ws.N

    @property
    def k(self) -> int:
        return self.md.k

    def __str__(self) -> str:
        w = ",".join(map(str, self.weights))
        d = ",".join(map(str, self.degrees))
        return f"P({w})[{d}]"


@dataclass(frozen=True)
class ChernProfile:
    """Coefficients ``c_1, ..., c_L`` with ``c_m = sum a**m - sum d**m``."""

    coefficients: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, m: int) -> int:
        # 1-based, matching c_m
        if not 1 <= m <= self.depth:
            raise IndexError(m)
        return self.coefficients[m - 1]


def power_sum_difference(plus: Iterable[int], minus: Iterable[int], m: int) -> int:
    return sum(x**m for x in plus) - sum(x**m for x in minus)


def chern_coefficient(cand: WciCandidate, m: int) -> int:
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return power_sum_difference(cand.weights, cand.degrees, m)


def chern_profile(cand: WciCandidate, depth: int) -> ChernProfile:
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    return ChernProfile(tuple(chern_coefficient(cand, m) for m in range(1, depth + 1)))


def is_l_fano(cand: WciCandidate, l: int, mode: Mode = "full") -> bool:
    """Decide l-Fano from the sign of the Chern coefficients.

    ``mode="full"`` requires ``c_m > 0`` for every ``1 <= m <= l``.
    ``mode="top"`` only looks at ``c_l``; it is valid for candidates that
    already pass the necessary conditions and are Fano, where the chain is
    strictly decreasing.  The caller is responsible for that.  With
    assertions enabled the full chain is recomputed and compared.
    """
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    if mode == "full":
        return all(chern_coefficient(cand, m) > 0 for m in range(1, l + 1))
    if mode != "top":
        raise ValueError(f"unknown mode {mode!r}")
    top = chern_coefficient(cand, l) > 0
    if __debug__ and top:
        assert is_l_fano(cand, l, "full"), (
            f"top-only and full-chain disagree for {cand} at l={l}; "
            "top-only mode needs a Fano candidate passing the necessary conditions"
        )
    return top


def ceil_log(base: int, x: int) -> int:
    """Least ``L >= 0`` with ``base**L >= x``, by integer multiplication."""
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    L, p = 0, 1
    while p < x:
        p *= base
        L += 1
    return L


def l_window(n: int) -> tuple[int, int]:
    """``(ceil(log3(n+2)), ceil(log2(n+2)) - 1)``; empty when lo > hi."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return ceil_log(3, n + 2), ceil_log(2, n + 2) - 1


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)
