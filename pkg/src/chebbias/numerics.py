"""Special functions and small arithmetic helpers.

The logarithmic integral is evaluated as ``li(y) = Ei(log y)`` with three
regimes for the exponential integral:

* ``t = log y < -1``: ``Ei(t) = -E1(-t)`` by a continued fraction,
* ``-1 <= t <= 40``: the convergent power series
  ``gamma + log|t| + sum t^k / (k k!)``,
* ``t > 40``: the asymptotic expansion ``e^t/t sum k!/t^k`` truncated at
  its smallest term (below 1e-16 relative there).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

EULER_GAMMA = 0.57721566490153286060651209008240243
SOLDNER = 1.45136923488338105028396848589202744

# li is singular at 1; arguments closer than this raise
SINGULAR_TOL = 1e-9

_SERIES_MAX = 40.0
_SERIES_TERMS = 180
_ASYMPTOTIC_TERMS = 45
_CF_ITERATIONS = 200


class SingularArgumentError(ValueError):
    """Raised when li is asked for a value at (or within tolerance of) 1."""


class UnsupportedModulusError(ValueError):
    """Raised for moduli outside q = 4 or odd primes."""


def _ei_series(t: np.ndarray) -> np.ndarray:
    total = np.zeros_like(t)
    power = np.ones_like(t)  # t^k / k!
    for k in range(1, _SERIES_TERMS + 1):
        power = power * t / k
        term = power / k
        total += term
        if np.all(np.abs(term) <= 1e-17 * np.abs(total)):
            break
    return EULER_GAMMA + np.log(np.abs(t)) + total


def _ei_asymptotic(t: np.ndarray) -> np.ndarray:
    total = np.ones_like(t)
    term = np.ones_like(t)
    best = np.ones_like(t)
    done = np.zeros(t.shape, dtype=bool)
    for k in range(1, _ASYMPTOTIC_TERMS + 1):
        term = term * k / t
        # stop each lane once terms start growing
        done |= np.abs(term) > np.abs(best)
        total = np.where(done, total, total + term)
        best = np.where(done, best, term)
    return np.exp(t) / t * total


def _e1_continued_fraction(x: np.ndarray) -> np.ndarray:
    # modified Lentz on E1(x) = e^-x / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
    tiny = 1e-300
    b = x + 1.0
    c = np.full_like(x, 1.0 / tiny)
    d = 1.0 / b
    h = d.copy()
    for i in range(1, _CF_ITERATIONS + 1):
        a = -float(i * i)
        b = b + 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if np.all(np.abs(delta - 1.0) < 1e-16):
            break
    return h * np.exp(-x)


def _ei_scalar(t: float) -> float:
    # the same three regimes on Python floats; numpy overhead dominates for one value
    if t < -1.0:
        x = -t
        b = x + 1.0
        c, d = 1e300, 1.0 / b
        h = d
        for i in range(1, _CF_ITERATIONS + 1):
            a = -float(i * i)
            b += 2.0
            d = 1.0 / (a * d + b)
            c = b + a / c
            h *= c * d
            if abs(c * d - 1.0) < 1e-16:
                break
        return -h * math.exp(-x)
    if t <= _SERIES_MAX:
        total, power = 0.0, 1.0
        for k in range(1, _SERIES_TERMS + 1):
            power = power * t / k
            term = power / k
            total += term
            if abs(term) <= 1e-17 * abs(total):
                break
        return EULER_GAMMA + math.log(abs(t)) + total
    total = term = best = 1.0
    for k in range(1, _ASYMPTOTIC_TERMS + 1):
        term = term * k / t
        if abs(term) > abs(best):
            break
        total += term
        best = term
    return math.exp(t) / t * total


def expint_ei(t):
    """Exponential integral Ei(t) for real t != 0 (scalar or array)."""
    if isinstance(t, (float, int)):
        return _ei_scalar(float(t))
    arr = np.asarray(t, dtype=float)
    out = np.empty_like(arr)
    low = arr < -1.0
    high = arr > _SERIES_MAX
    mid = ~(low | high)
    if np.any(low):
        out[low] = -_e1_continued_fraction(-arr[low])
    if np.any(mid):
        out[mid] = _ei_series(arr[mid])
    if np.any(high):
        out[high] = _ei_asymptotic(arr[high])
    if out.ndim == 0:
        return float(out)
    return out


def logint(y):
    """Principal-value logarithmic integral li(y) = PV int_0^y dt/log t.

    Accepts a scalar or an array.  ``li(0) = 0``; negative arguments and
    arguments within ``SINGULAR_TOL`` of 1 raise.
    """
    if isinstance(y, (float, int, np.floating, np.integer)):
        v = float(y)
        if not v >= 0:
            raise ValueError("logint: argument must be >= 0")
        if abs(v - 1.0) <= SINGULAR_TOL:
            raise SingularArgumentError("logint: argument at the singularity y = 1")
        if v == 0:
            return 0.0
        return _ei_scalar(math.log1p(v - 1.0) if 0.5 < v < 2.0 else math.log(v))
    arr = np.asarray(y, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0):
        raise ValueError("logint: argument must be >= 0")
    if np.any(np.abs(arr - 1.0) <= SINGULAR_TOL):
        raise SingularArgumentError("logint: argument at the singularity y = 1")
    out = np.zeros_like(arr)
    pos = arr > 0
    if np.any(pos):
        v = arr[pos]
        near = (v > 0.5) & (v < 2.0)
        t = np.where(near, np.log1p(v - 1.0), np.log(v))
        out[pos] = expint_ei(t)
    if out.ndim == 0:
        return float(out)
    return out


def _factorize(n: int) -> dict[int, int]:
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError(f"mobius: n must be >= 1, got {n}")
    factors = _factorize(n)
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


def euler_phi(q: int) -> int:
    if q < 1:
        raise ValueError(f"euler_phi: q must be >= 1, got {q}")
    result = q
    for p in _factorize(q):
        result -= result // p
    return result


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion."""
    if p < 3 or not is_prime(p):
        raise ValueError(f"legendre: p must be an odd prime, got {p}")
    r = pow(a % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


@dataclass(frozen=True)
class ResidueClassification:
    q: int
    R: frozenset[int]
    N: frozenset[int]

    @property
    def reduced(self) -> tuple[int, ...]:
        return tuple(sorted(self.R | self.N))


@lru_cache(maxsize=None)
def classify_residues(q: int) -> ResidueClassification:
    """Split the reduced classes mod q into squares (R) and non-squares (N)."""
    if q < 3:
        raise ValueError(f"classify_residues: q must be >= 3, got {q}")
    squares = {b * b % q for b in range(q)}
    reduced = [a for a in range(1, q) if math.gcd(a, q) == 1]
    R = frozenset(a for a in reduced if a in squares)
    N = frozenset(a for a in reduced if a not in squares)
    return ResidueClassification(q, R, N)


def c_term(q: int, a: int) -> int:
    """-1 plus the number of square roots of a mod q among 1..q."""
    if math.gcd(a, q) != 1:
        raise ValueError(f"c_term: class {a} is not coprime to {q}")
    a %= q
    return -1 + sum(1 for b in range(1, q + 1) if b * b % q == a)


def check_modulus(q: int) -> None:
    """Accept q = 4 or an odd prime; anything else is rejected loudly."""
    if q == 4 or (q >= 3 and q % 2 == 1 and is_prime(q)):
        return
    raise UnsupportedModulusError(
        f"modulus {q} unsupported: only q = 4 or an odd prime"
    )


@lru_cache(maxsize=None)
def class_signs(q: int) -> dict[int, int]:
    """+1 for square classes, -1 for non-squares (the Legendre symbol for prime q)."""
    check_modulus(q)
    cls = classify_residues(q)
    signs = {a: 1 for a in cls.R}
    signs.update({a: -1 for a in cls.N})
    return dict(sorted(signs.items()))


def regularized_weight(q: int) -> float:
    """Normalisation of the signed B-sum: 1 for q = 4, 1/floor(p/2) for prime p."""
    check_modulus(q)
    return 1.0 if q == 4 else 1.0 / (q // 2)
