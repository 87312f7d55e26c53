"""Brute-force reference implementations, deliberately independent of chebbias."""

import math

import mpmath as mp


def is_prime_td(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power_base(n):
    """p if n = p^k (k >= 1) by trial division, else None."""
    if n < 2:
        return None
    for p in range(2, math.isqrt(n) + 1):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return p if n == 1 else None
    return n


def bytearray_sieve(n):
    """Primes <= n, plain Eratosthenes on a bytearray."""
    s = bytearray([1]) * (n + 1)
    s[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if s[i]:
            s[i * i :: i] = bytes(len(range(i * i, n + 1, i)))
    return [i for i in range(n + 1) if s[i]]


def legendre_by_squares(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if any(b * b % p == a for b in range(1, p)) else -1


class BruteState:
    """Walks n = 2, 3, ... keeping per-class prime counts and log sums."""

    def __init__(self, q):
        self.q = q
        self.reduced = [a for a in range(1, q) if math.gcd(a, q) == 1]
        self.counts = {a: 0 for a in self.reduced}
        self.logs = {a: [] for a in self.reduced}
        self.n = 1

    def advance(self, n):
        while self.n < n:
            self.n += 1
            p = prime_power_base(self.n)
            if p is None:
                continue
            a = self.n % self.q
            if a in self.counts:
                self.logs[a].append(math.log(p))
                if p == self.n:
                    self.counts[a] += 1

    def psi(self, a):
        return math.fsum(self.logs[a])


def li_quad(y):
    """li(y) = Ei(log y) by quadrature; the principal value is folded into
    2*int_0^L sinh(u)/u du, which has no singularity."""
    y = mp.mpf(y)
    L = mp.log(y)
    if L < 0:
        return -mp.quad(lambda v: mp.exp(-v) / v, [-L, mp.inf])
    tail = -mp.quad(lambda v: mp.exp(-v) / v, [L, mp.inf])
    return tail + 2 * mp.quad(lambda u: mp.sinh(u) / u, [0, L])


def signs_by_squares(q):
    squares = {b * b % q for b in range(q)}
    return {a: (1 if a in squares else -1) for a in range(1, q) if math.gcd(a, q) == 1}


def brute_delta(state):
    s = signs_by_squares(state.q)
    return -sum(s[a] * state.counts[a] for a in s)


def brute_B(state, a):
    phi = len(state.reduced)
    arg = phi * state.psi(a)
    li = 0.0 if arg == 0 else float(mp.li(arg))
    return li - phi * state.counts[a]


def brute_delta_reg(state):
    q = state.q
    s = signs_by_squares(q)
    w = 1.0 if q == 4 else 1.0 / (q // 2)
    return w * math.fsum(s[a] * brute_B(state, a) for a in s)


class BruteWalk(BruteState):
    """BruteState that also keeps B(n; q, a) per class, recomputing only the
    class touched by each new prime power."""

    def __init__(self, q):
        super().__init__(q)
        self.B = {a: 0.0 for a in self.reduced}
        self.signs = signs_by_squares(q)
        self.weight = 1.0 if q == 4 else 1.0 / (q // 2)

    def step(self):
        """Advance to the next prime power in a reduced class; return it."""
        while True:
            before = {a: len(v) for a, v in self.logs.items()}
            self.advance(self.n + 1)
            changed = [a for a in self.reduced if len(self.logs[a]) != before[a]]
            if changed:
                a = changed[0]
                self.B[a] = brute_B(self, a)
                return self.n

    def delta(self):
        return brute_delta(self)

    def delta_reg(self):
        return self.weight * math.fsum(self.signs[a] * self.B[a] for a in self.signs)
