# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled search kernel; same traversal and output as ``_pysearch``.

Power sums use 64-bit integers and the product bound uses 128-bit ones.
The dispatcher in ``wcifano.kernel`` only calls this when the caps keep
every intermediate exact.
"""

from libc.stdlib cimport calloc, free

cdef extern from *:
    """
    typedef unsigned __int128 u128;
    """
    ctypedef unsigned long long u128

ctypedef long long i64

DEF MAXN = 128


cdef inline i64 ipow(i64 x, int e) nogil:
    cdef i64 r = 1
    while e > 0:
        r *= x
        e -= 1
    return r


cdef inline u128 upow(u128 x, int e) nogil:
    cdef u128 r = 1
    while e > 0:
        r *= x
        e -= 1
    return r


cdef inline i64 igcd(i64 a, i64 b) nogil:
    cdef i64 t
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef class _Search:
    cdef int n, k, N, top, dk_lo, dk_hi, maxd, l
    cdef int t, s, m
    cdef u128 prodcap
    cdef int desc[MAXN]
    cdef int *cnt
    cdef int *need
    cdef int *is_w
    cdef int *div_start
    cdef int *div_list
    cdef int *fac_start
    cdef int *fac_p
    cdef int *fac_e
    # degree stage
    cdef int weights[2 * MAXN]
    cdef int nw
    cdef int lo[MAXN]
    cdef int d[MAXN]
    cdef int *bs
    cdef int *want
    cdef int *have
    cdef int nb
    cdef int *primes
    cdef int *pneed
    cdef int np
    cdef i64 W, budget, sa_l
    cdef public long long scanned
    cdef public list survivors

    def __cinit__(self, int n, int k, int top, int dk_lo, int dk_hi, int maxd, int l):
        cdef int x, b, p, e, pos, y
        self.n = n
        self.k = k
        self.N = n + k
        self.top = top
        self.dk_lo = dk_lo
        self.dk_hi = dk_hi
        self.maxd = maxd
        self.l = l
        self.prodcap = upow(<u128>maxd, k)
        self.scanned = 0
        self.survivors = []
        self.cnt = <int *>calloc(top + 2, sizeof(int))
        self.need = <int *>calloc(top + 2, sizeof(int))
        self.is_w = <int *>calloc((maxd if maxd > top else top) + 2, sizeof(int))
        self.bs = <int *>calloc(top + 2, sizeof(int))
        self.want = <int *>calloc(top + 2, sizeof(int))
        self.have = <int *>calloc(top + 2, sizeof(int))
        self.primes = <int *>calloc(top + 2, sizeof(int))
        self.pneed = <int *>calloc(top + 2, sizeof(int))
        self.div_start = <int *>calloc(top + 3, sizeof(int))
        self.fac_start = <int *>calloc(top + 3, sizeof(int))
        # divisor and factor tables for 2..top
        pos = 0
        for x in range(2, top + 1):
            for b in range(2, x + 1):
                if x % b == 0:
                    pos += 1
        self.div_list = <int *>calloc(pos + 1, sizeof(int))
        self.fac_p = <int *>calloc(pos + 1, sizeof(int))
        self.fac_e = <int *>calloc(pos + 1, sizeof(int))
        if (self.cnt == NULL or self.need == NULL or self.is_w == NULL or self.div_start == NULL
                or self.fac_start == NULL or self.div_list == NULL or self.fac_p == NULL
                or self.fac_e == NULL or self.bs == NULL or self.want == NULL
                or self.have == NULL or self.primes == NULL or self.pneed == NULL):
            raise MemoryError()
        pos = 0
        for x in range(2, top + 1):
            self.div_start[x] = pos
            for b in range(2, x + 1):
                if x % b == 0:
                    self.div_list[pos] = b
                    pos += 1
        self.div_start[top + 1] = pos
        pos = 0
        for x in range(2, top + 1):
            self.fac_start[x] = pos
            y = x
            p = 2
            while p * p <= y:
                if y % p == 0:
                    e = 0
                    while y % p == 0:
                        y //= p
                        e += 1
                    self.fac_p[pos] = p
                    self.fac_e[pos] = e
                    pos += 1
                p += 1
            if y > 1:
                self.fac_p[pos] = y
                self.fac_e[pos] = 1
                pos += 1
        self.fac_start[top + 1] = pos

    def __dealloc__(self):
        free(self.cnt)
        free(self.need)
        free(self.is_w)
        free(self.div_start)
        free(self.div_list)
        free(self.fac_start)
        free(self.fac_p)
        free(self.fac_e)
        free(self.bs)
        free(self.want)
        free(self.have)
        free(self.primes)
        free(self.pneed)

    cdef int add(self, int w):
        cdef int ok = 1, j
        for j in range(self.div_start[w], self.div_start[w + 1]):
            self.cnt[self.div_list[j]] += 1
            if self.cnt[self.div_list[j]] > self.k:
                ok = 0
        for j in range(self.fac_start[w], self.fac_start[w + 1]):
            self.need[self.fac_p[j]] += self.fac_e[j]
        return ok

    cdef void remove(self, int w):
        cdef int j
        for j in range(self.div_start[w], self.div_start[w + 1]):
            self.cnt[self.div_list[j]] -= 1
        for j in range(self.fac_start[w], self.fac_start[w + 1]):
            self.need[self.fac_p[j]] -= self.fac_e[j]

    cdef i64 lower_bounds(self):
        """Fill ``lo`` from the chosen weights; return its sum."""
        cdef int i, r, a, v, c, j, k = self.k
        cdef i64 total = 0
        for i in range(1, k):
            r = k - i
            if r < self.m:
                a = self.desc[r]
            elif r < self.t:
                a = 2
            else:
                a = 1
            self.lo[i - 1] = a + 1
        self.lo[k - 1] = 2 * self.desc[0]
        for j in range(self.m):
            v = self.desc[j]
            if v < 2:
                continue
            c = self.cnt[v]
            if c:
                i = k - c
                if i < 0:
                    i = 0
                while i < k:
                    if self.lo[i] < 2 * v:
                        self.lo[i] = 2 * v
                    i += 1
        for i in range(k):
            total += self.lo[i]
        return total

    cdef int well_formed(self):
        cdef int i, j
        cdef i64 g
        if self.s >= 2:
            return 1
        for i in range(self.nw):
            g = 0
            for j in range(self.nw):
                if j != i:
                    g = igcd(g, self.weights[j])
            if g != 1:
                return 0
        return 1

    cdef void leaf(self):
        cdef int j, i, c, got
        cdef i64 x, sd = 0
        self.scanned += 1
        for j in range(self.nb):
            c = 0
            for i in range(self.k):
                if self.d[i] % self.bs[j] == 0:
                    c += 1
            if c < self.want[j]:
                return
        for j in range(self.np):
            got = 0
            for i in range(self.k):
                x = self.d[i]
                while x % self.primes[j] == 0:
                    x //= self.primes[j]
                    got += 1
            if got < self.pneed[j]:
                return
        for i in range(self.k):
            sd += ipow(self.d[i], self.l)
        if self.sa_l - sd > 0:
            self.survivors.append((tuple([self.weights[i] for i in range(self.nw)]),
                                   tuple([self.d[i] for i in range(self.k)])))

    cdef i64 last_step(self, int prefix_len):
        cdef i64 step = 1, q, g, x
        cdef int j, i, got, miss
        for j in range(self.nb):
            if self.want[j] > self.have[j]:
                g = igcd(step, self.bs[j])
                step = step * self.bs[j] // g
                if step > self.maxd:
                    return self.maxd + 1
        for j in range(self.np):
            got = 0
            for i in range(prefix_len):
                x = self.d[i]
                while x % self.primes[j] == 0:
                    x //= self.primes[j]
                    got += 1
            miss = self.pneed[j] - got
            if miss > 0:
                q = 1
                while miss > 0:
                    q *= self.primes[j]
                    miss -= 1
                    if q > self.maxd:
                        return self.maxd + 1
                g = igcd(step, q)
                step = step * q // g
                if step > self.maxd:
                    return self.maxd + 1
        return step

    cdef void rec_deg(self, int i, int prev, i64 prefix):
        cdef i64 first, last, step, x, hi, rest
        cdef int j, slots, ok, k = self.k
        if i == k - 1:
            first = prev
            if self.lo[i] > first:
                first = self.lo[i]
            if self.W - prefix > first:
                first = self.W - prefix
            if self.dk_lo > first:
                first = self.dk_lo
            last = self.maxd
            if self.budget - prefix < last:
                last = self.budget - prefix
            if self.dk_hi < last:
                last = self.dk_hi
            if first > last:
                return
            step = self.last_step(i)
            x = ((first + step - 1) // step) * step
            while x <= last:
                if not self.is_w[x]:
                    self.d[i] = <int>x
                    self.leaf()
                x += step
            return
        x = prev if prev > self.lo[i] else self.lo[i]
        hi = self.maxd if self.maxd < self.dk_hi else self.dk_hi
        slots = k - i - 1
        while x <= hi:
            rest = 0
            for j in range(i + 1, k):
                rest += x if x > self.lo[j] else self.lo[j]
            if prefix + x + rest > self.budget:
                break
            if not self.is_w[x]:
                for j in range(self.nb):
                    if x % self.bs[j] == 0:
                        self.have[j] += 1
                ok = 1
                for j in range(self.nb):
                    if self.want[j] - self.have[j] > slots:
                        ok = 0
                        break
                if ok:
                    self.d[i] = <int>x
                    self.rec_deg(i + 1, <int>x, prefix + x)
                for j in range(self.nb):
                    if x % self.bs[j] == 0:
                        self.have[j] -= 1
            x += 1

    cdef void degrees_for(self):
        cdef int j, b
        cdef i64 total = 0
        for j in range(self.nw):
            total += self.weights[j]
        self.W = total - self.s
        self.budget = self.W + self.s - 1
        self.sa_l = 0
        for j in range(self.nw):
            self.sa_l += ipow(self.weights[j], self.l)
            self.is_w[self.weights[j]] = 1
        self.nb = 0
        self.np = 0
        for b in range(2, self.top + 1):
            if self.cnt[b] > 0:
                self.bs[self.nb] = b
                self.want[self.nb] = self.cnt[b]
                self.have[self.nb] = 0
                self.nb += 1
            if self.need[b] > 0:
                self.primes[self.np] = b
                self.pneed[self.np] = self.need[b]
                self.np += 1
        self.rec_deg(0, 0, 0)
        for j in range(self.nw):
            self.is_w[self.weights[j]] = 0

    cdef void rec_w(self, i64 wsum, u128 prod):
        cdef int m = self.m, w, j
        cdef i64 budget, q
        cdef u128 p2, lhs
        cdef i64 lo_sum = self.lower_bounds()
        budget = self.s + wsum + (self.t - m) * self.desc[m - 1] - 1
        if lo_sum > budget:
            return
        q = budget // self.k + 1
        if q > self.maxd:
            q = self.maxd
        lhs = prod << (self.t - m)
        if lhs > upow(<u128>q, self.k):
            return
        if m == self.t:
            self.nw = self.N + 1
            for j in range(self.s):
                self.weights[j] = 1
            for j in range(m):
                self.weights[self.s + j] = self.desc[m - 1 - j]
            if self.well_formed():
                self.degrees_for()
            return
        for w in range(2, self.desc[m - 1] + 1):
            p2 = prod * <u128>w
            if p2 > self.prodcap:
                break
            if self.add(w):
                self.desc[m] = w
                self.m = m + 1
                self.rec_w(wsum + w, p2)
                self.m = m
            self.remove(w)

    cdef void run(self):
        cdef int t, j
        if self.top == 1:
            self.t = 0
            self.m = 1
            self.desc[0] = 1
            self.s = self.N + 1
            self.nw = self.N + 1
            for j in range(self.nw):
                self.weights[j] = 1
            self.lower_bounds()
            if self.well_formed():
                self.degrees_for()
            return
        if not self.add(self.top) or <u128>self.top > self.prodcap:
            return
        self.desc[0] = self.top
        for t in range(1, self.n + 1):
            self.t = t
            self.s = self.N + 1 - t
            self.m = 1
            self.rec_w(self.top, <u128>self.top)


def search_unit(int n, int k, int top, int dk_lo, int dk_hi, int wcap, int maxd, int l):
    if k > n or top > wcap or dk_lo > dk_hi or top < 1:
        return 0, []
    if n + k + 1 > MAXN:
        raise ValueError("dimension too large for the compiled kernel")
    cdef _Search srch = _Search(n, k, top, dk_lo, dk_hi, maxd, l)
    srch.run()
    return srch.scanned, srch.survivors
