"""Pure-Python search kernel.

One call explores a single work unit: fixed codimension ``k`` and fixed
largest weight ``top`` (``top == 1`` is the all-ones weight system), with
the largest degree restricted to ``[dk_lo, dk_hi]``.  The compiled kernel in
``_csearch.pyx`` performs the same traversal; both return identical
``(scanned, survivors)``, ``scanned`` being the number of complete
candidates reaching the final test.

Every prune is implied by one of the nine necessary-condition items or by ``c_1 > 0``; the l-Fano
test is applied only at the leaves.

Weights: for each count ``t <= n`` of nonunit weights (item 2), the nonunit
weights are chosen in descending order starting from ``top``.  A branch is
cut when

* some ``b >= 2`` divides more than ``k`` weights (item 7),
* the product of the weights cannot divide any admissible ``prod(d)``
  (item 8), bounded by ``min(sum(d) // k + 1, max_degree)**k``,
* the least admissible degree sum exceeds the largest possible
  ``sum(a) - 1`` (c_1 > 0).  The least degree sum uses ``d_i > a_{N-k+i}``
  (item 1), ``d_k >= 2 a_N`` (item 9), and the fact that the ``c_v`` weights
  divisible by a weight value ``v`` need ``c_v`` degrees that are proper
  multiples of ``v`` (items 7 and 4), i.e. the top ``c_v`` degrees are at
  least ``2v``.

Degrees: nondecreasing from those lower bounds, never equal to a weight
(item 4), with ``sum(a) - s <= sum(d) < sum(a)`` (item 3 and c_1 > 0); a
partial tuple is cut when some ``b`` cannot reach its item-7 count in the
remaining slots, and the last degree steps through multiples of everything
items 7 and 8 still require.
"""

from __future__ import annotations

from math import gcd


def _factor(x: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= x:
        if x % p == 0:
            e = 0
            while x % p == 0:
                x //= p
                e += 1
            out.append((p, e))
        p += 1
    if x > 1:
        out.append((x, 1))
    return out


def _wf(weights: list[int]) -> bool:
    if weights.count(1) >= 2:
        return True
    for i in range(len(weights)):
        g = 0
        for j, a in enumerate(weights):
            if j != i:
                g = gcd(g, a)
        if g != 1:
            return False
    return True


def degree_lower_bounds(k: int, t: int, desc: list[int], cnt: dict[int, int]) -> list[int]:
    """Least value of each sorted degree position given the chosen weights.

    ``desc`` holds the first chosen nonunit weights in descending order
    (``desc[0]`` is ``a_N``); the remaining ``t - len(desc)`` nonunit weights
    are unknown but at least 2, all other weights are 1.
    """
    lo = []
    for i in range(1, k):
        r = k - i  # rank of a_{N-k+i} from the top
        if r < len(desc):
            a = desc[r]
        elif r < t:
            a = 2
        else:
            a = 1
        lo.append(a + 1)
    lo.append(2 * desc[0])
    for v in set(desc):
        c = cnt.get(v, 0)
        if c:
            for i in range(max(0, k - c), k):
                if lo[i] < 2 * v:
                    lo[i] = 2 * v
    return lo


def search_unit(n: int, k: int, top: int, dk_lo: int, dk_hi: int,
                wcap: int, maxd: int, l: int) -> tuple[int, list]:
    if k > n or top > wcap or dk_lo > dk_hi or top < 1:
        return 0, []
    N = n + k
    divisors = {b: [x for x in range(2, b + 1) if b % x == 0] for b in range(2, top + 1)}
    factors = {x: _factor(x) for x in range(2, top + 1)}
    prodcap = maxd**k
    survivors: list = []
    scanned = 0

    def degrees_for(weights: list[int], lo: list[int], cnt: dict[int, int], need: dict[int, int]):
        nonlocal scanned
        s = weights.count(1)
        W = sum(weights) - s
        budget = W + s - 1
        is_w = set(weights)
        bs = sorted(cnt)
        want = [cnt[b] for b in bs]
        nb = len(bs)
        have = [0] * nb
        primes = sorted(need)
        sa_l = sum(a**l for a in weights)
        d = [0] * k

        def leaf():
            nonlocal scanned
            scanned += 1
            for j in range(nb):
                b = bs[j]
                c = 0
                for x in d:
                    if x % b == 0:
                        c += 1
                if c < want[j]:
                    return
            for p in primes:
                got = 0
                for x in d:
                    while x % p == 0:
                        x //= p
                        got += 1
                if got < need[p]:
                    return
            if sa_l - sum(x**l for x in d) > 0:
                survivors.append((tuple(weights), tuple(d)))

        def last_step(prefix_len: int) -> int:
            # d_k must be divisible by every b still one degree short (item 7)
            # and by the prime powers still missing from prod(d) (item 8)
            step = 1
            for j in range(nb):
                if want[j] > have[j]:
                    step = step * bs[j] // gcd(step, bs[j])
            for p in primes:
                got = 0
                for i in range(prefix_len):
                    x = d[i]
                    while x % p == 0:
                        x //= p
                        got += 1
                miss = need[p] - got
                if miss > 0:
                    q = p**miss
                    step = step * q // gcd(step, q)
            return step

        def rec(i: int, prev: int, prefix: int):
            if i == k - 1:
                first = max(prev, lo[i], W - prefix, dk_lo)
                last = min(maxd, budget - prefix, dk_hi)
                if first > last:
                    return
                step = last_step(i)
                x = -(-first // step) * step
                while x <= last:
                    if x not in is_w:
                        d[i] = x
                        leaf()
                    x += step
                return
            x = max(prev, lo[i])
            hi = min(maxd, dk_hi)
            slots = k - i - 1
            while x <= hi:
                rest = 0
                for j in range(i + 1, k):
                    rest += x if x > lo[j] else lo[j]
                if prefix + x + rest > budget:
                    break
                if x not in is_w:
                    for j in range(nb):
                        if x % bs[j] == 0:
                            have[j] += 1
                    ok = True
                    for j in range(nb):
                        if want[j] - have[j] > slots:
                            ok = False
                            break
                    if ok:
                        d[i] = x
                        rec(i + 1, x, prefix + x)
                    for j in range(nb):
                        if x % bs[j] == 0:
                            have[j] -= 1
                x += 1

        rec(0, 0, 0)

    if top == 1:
        weights = [1] * (N + 1)
        if _wf(weights):
            degrees_for(weights, degree_lower_bounds(k, 0, [1], {}), {}, {})
        return scanned, survivors

    cnt: dict[int, int] = {}
    need: dict[int, int] = {}

    def add(w: int) -> bool:
        ok = True
        for b in divisors[w]:
            c = cnt.get(b, 0) + 1
            cnt[b] = c
            if c > k:
                ok = False
        for p, e in factors[w]:
            need[p] = need.get(p, 0) + e
        return ok

    def remove(w: int):
        for b in divisors[w]:
            cnt[b] -= 1
            if not cnt[b]:
                del cnt[b]
        for p, e in factors[w]:
            need[p] -= e
            if not need[p]:
                del need[p]

    if not add(top) or top > prodcap:
        return 0, []
    desc = [top]
    for t in range(1, n + 1):
        s = N + 1 - t

        def rec_w(wsum: int, prod: int):
            m = len(desc)
            lo = degree_lower_bounds(k, t, desc, cnt)
            # largest possible sum(a) - 1 once the t - m missing weights are placed
            budget = s + wsum + (t - m) * desc[-1] - 1
            if sum(lo) > budget:
                return
            # prod(a) divides prod(d) <= (sum(d)/k)**k; each missing weight is >= 2
            q = min(budget // k + 1, maxd)
            if prod > q**k >> (t - m):
                return
            if m == t:
                weights = [1] * s + desc[::-1]
                if _wf(weights):
                    degrees_for(weights, lo, dict(cnt), dict(need))
                return
            for w in range(2, desc[-1] + 1):
                p2 = prod * w
                if p2 > prodcap:
                    break
                if add(w):
                    desc.append(w)
                    rec_w(wsum + w, p2)
                    desc.pop()
                remove(w)

        rec_w(top, top)
    return scanned, survivors
