"""Random valid inputs for the reduction engines."""

from __future__ import annotations

import random
from math import gcd, prod

from wcifano.reduction import AdditiveState, MultiplicativeState


def random_additive_state(rng: random.Random, max_N: int = 12, max_weight: int = 30) -> AdditiveState:
    while True:
        N = rng.randint(1, max_N)
        t = rng.randint(0, N)  # nonunit weights; s = N + 1 - t >= 1
        s = N + 1 - t
        a = [1] * s + sorted(rng.randint(2, max_weight) for _ in range(t))
        k = rng.randint(1, N + 1)
        d = [max(2, a[N - k + i] + 1) for i in range(1, k + 1)]
        W = sum(a[s:])
        if sum(d) > W + s - 1:
            continue
        target = rng.randint(max(W, sum(d)), W + s - 1)
        for _ in range(target - sum(d)):
            # bias extra degree towards the bottom so d_k - a_N stays small sometimes
            d[rng.randrange(k)] += 1
        return AdditiveState(a, d)


def random_multiplicative_state(rng: random.Random, max_k: int = 4,
                                max_weight: int = 12) -> MultiplicativeState:
    while True:
        k = rng.randint(1, max_k)
        N = k + 2 + rng.randint(0, 6)
        t = rng.randint(1, N - 1)
        a = [1] * (N + 1 - t) + sorted(rng.randint(2, max_weight) for _ in range(t))
        if a[N] < 3:
            continue
        d = [a[N - k + i] + 1 + rng.randint(0, 6) for i in range(1, k)]
        need = prod(a) // gcd(prod(a), prod(d))
        base = max([2 * a[N]] + d)
        dk = need * -(-base // need) * rng.choice((1, 1, 1, 2, 3))
        st = MultiplicativeState(a, d + [dk])
        st.validate()
        return st
