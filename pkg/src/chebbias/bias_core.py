"""Chebyshev bias, Robin's B-function and the regularized bias at a single x.

All functions read a :class:`~chebbias.primes.ResidueTally` whose frontier is
the evaluation point; the tally counts x itself when x is prime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .numerics import (
    check_modulus,
    class_signs,
    euler_phi,
    logint,
    mobius,
    regularized_weight,
)
from .primes import ResidueTally, tally_to


@dataclass(frozen=True)
class BiasPoint:
    x: int
    delta: int
    delta_reg: float
    B_by_class: dict[int, float]
    normalized: float


def _check_tally(x: int, q: int, tally: ResidueTally) -> None:
    if tally.q != q:
        raise ValueError(f"tally is for modulus {tally.q}, not {q}")
    if tally.frontier != x:
        raise ValueError(f"tally frontier {tally.frontier} does not match x={x}")
    if tally.start != 2:
        raise ValueError("tally must start at 2")


def delta(x: int, q: int, tally: ResidueTally) -> int:
    """Non-square minus square prime counts.

    For q = 4 this is pi(x;4,3) - pi(x;4,1); for an odd prime p it is
    -sum_a (a/p) pi(x;p,a).
    """
    check_modulus(q)
    _check_tally(x, q, tally)
    return -sum(s * tally.counts[a] for a, s in class_signs(q).items())


def robin_B(x: int, q: int, a: int, tally: ResidueTally) -> float:
    """li(phi(q) psi(x;q,a)) - phi(q) pi(x;q,a), with li(0) = 0."""
    _check_tally(x, q, tally)
    if a not in tally.counts:
        raise ValueError(f"class {a} is not reduced mod {q}")
    phi = euler_phi(q)
    return logint(phi * tally.psi[a]) - phi * tally.counts[a]


def delta_reg(x: int, q: int, tally: ResidueTally) -> float:
    """Regularized bias: B(R) - B(N) for q = 4, the Legendre-weighted mean for prime q."""
    check_modulus(q)
    terms = [s * robin_B(x, q, a, tally) for a, s in class_signs(q).items()]
    return regularized_weight(q) * math.fsum(terms)


def pi_reg(x: int, q: int, a: int, tally: ResidueTally) -> float:
    """pi(x;q,a) - psi(x;q,a)/log x."""
    if x < 2:
        raise ValueError(f"pi_reg: x must be >= 2, got {x}")
    _check_tally(x, q, tally)
    return tally.counts[a] - tally.psi[a] / math.log(x)


def bias_point(x: int, q: int, tally: ResidueTally) -> BiasPoint:
    B = {a: robin_B(x, q, a, tally) for a in class_signs(q)}
    dr = regularized_weight(q) * math.fsum(s * B[a] for a, s in class_signs(q).items())
    return BiasPoint(x, delta(x, q, tally), dr, B, dr / math.sqrt(x))


def pi_approx(x: int, psi_x: float | None = None, weighting: str = "riemann") -> float:
    """Three-term prime count from psi: sum_{n=1}^{3} mu(n) w_n li(psi(x)^(1/n)).

    ``weighting="riemann"`` uses w_n = 1/n (the weights of Riemann's R
    function); ``"unit"`` uses w_n = 1, which falls short by about
    2 sqrt(x)/log x.  psi(x) takes the discrete values log 2, log 6, log 12,
    ... so no root lands within the li guard band around 1; a singular case
    would raise :class:`~chebbias.numerics.SingularArgumentError`.
    """
    if x < 2:
        raise ValueError(f"pi_approx: x must be >= 2, got {x}")
    if weighting not in ("riemann", "unit"):
        raise ValueError(f"unknown weighting {weighting!r}")
    if psi_x is None:
        psi_x = tally_to(x, 3).total_psi
    w = (lambda n: 1.0 / n) if weighting == "riemann" else (lambda n: 1.0)
    return math.fsum(mobius(n) * w(n) * logint(psi_x ** (1.0 / n)) for n in (1, 2, 3))
