"""Single-pass scans of the bias: champions, b(q), logarithmic density, zones.

Everything here is driven by :class:`BiasScanner`, which walks the prime
powers segment by segment and keeps per-class running state.  Within a
segment the work is vectorised; the regularized bias is only evaluated where
it is asked for (every prime, or just the champions).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Literal

import numpy as np

from .bias_core import BiasPoint
from .numerics import (
    EULER_GAMMA,
    check_modulus,
    class_signs,
    euler_phi,
    logint,
    regularized_weight,
)
from .primes import DEFAULT_SEGMENT_SIZE, iter_events

Policy = Literal["all-primes", "champions"]


class _Neumaier:
    """Per-class compensated running sums (hi + lo)."""

    def __init__(self, n: int):
        self.hi = np.zeros(n)
        self.lo = np.zeros(n)

    def add(self, idx: np.ndarray, values: np.ndarray) -> None:
        hi = self.hi[idx]
        t = hi + values
        big = np.abs(hi) >= np.abs(values)
        err = np.where(big, (hi - t) + values, (values - t) + hi)
        self.hi[idx] = t
        self.lo[idx] += err

    def value(self) -> np.ndarray:
        return self.hi + self.lo


@dataclass
class ScanChunk:
    """Bias data at the primes coprime to q inside one sieve segment.

    ``delta`` is the bias just after each prime; ``delta_reg`` is filled only
    for dense scans.  :meth:`BiasScanner.class_state` recovers per-class
    counts and psi at any subset of these primes.
    """

    lo: int
    hi: int
    x: np.ndarray
    delta: np.ndarray
    delta_reg: np.ndarray | None
    # private per-chunk state used for lazy evaluation
    _order: np.ndarray
    _edges: np.ndarray
    _pi_sorted: np.ndarray
    _psi_sorted: np.ndarray
    _event_pos: np.ndarray
    _pi0: np.ndarray
    _psi0: np.ndarray


class BiasScanner:
    """Walk the prime powers up to ``limit`` keeping per-class state mod q."""

    def __init__(
        self,
        q: int,
        limit: int,
        segment_size: int = DEFAULT_SEGMENT_SIZE,
        threads: int = 1,
    ):
        check_modulus(q)
        if limit < 3:
            raise ValueError(f"scan: limit must be >= 3, got {limit}")
        self.q = q
        self.limit = limit
        self.segment_size = segment_size
        self.threads = threads
        self.phi = euler_phi(q)
        self.weight = regularized_weight(q)
        self.signs = np.zeros(q, dtype=np.int64)
        for a, s in class_signs(q).items():
            self.signs[a] = s
        self.classes = np.array(sorted(class_signs(q)), dtype=np.int64)

    def chunks(self, dense: bool = False) -> Iterator[ScanChunk]:
        q, phi, signs = self.q, self.phi, self.signs
        pi0 = np.zeros(q, dtype=np.int64)
        psi = _Neumaier(q)
        B0 = np.zeros(q)
        delta0 = 0
        dreg0 = 0.0
        for ev in iter_events(self.limit, self.segment_size, self.threads):
            cls = ev.values % q
            keep = signs[cls] != 0
            c = cls[keep]
            isp = ev.is_prime[keep].astype(np.int64)
            logs = np.log(ev.primes[keep].astype(float))
            values = ev.values[keep]

            d_all = delta0 + np.cumsum(-signs[c] * isp)

            order = np.argsort(c, kind="stable")
            cs = c[order]
            edges = np.searchsorted(cs, np.arange(q + 1))
            gstart = edges[cs]
            cum_pi = np.concatenate([[0], np.cumsum(isp[order])])
            cum_log = np.concatenate([[0.0], np.cumsum(logs[order])])
            idx = np.arange(cs.size)
            within_pi = cum_pi[idx + 1] - cum_pi[gstart]
            within_log = cum_log[idx + 1] - cum_log[gstart]
            psi_now = psi.value()
            pi_sorted = pi0[cs] + within_pi
            psi_sorted = psi.hi[cs] + (psi.lo[cs] + within_log)

            dreg_all = None
            if dense and cs.size:
                B_sorted = logint(phi * psi_sorted) - phi * pi_sorted
                prev = np.empty_like(B_sorted)
                prev[1:] = B_sorted[:-1]
                first = idx == gstart
                prev[first] = B0[cs[first]]
                inc = np.empty_like(B_sorted)
                inc[order] = signs[cs] * (B_sorted - prev)
                dreg_all = dreg0 + self.weight * np.cumsum(inc)
                last = edges[1:] - 1
                has = edges[1:] > edges[:-1]
                B0[has] = B_sorted[last[has]]

            prime_pos = np.flatnonzero(isp)
            chunk = ScanChunk(
                lo=ev.lo,
                hi=ev.hi,
                x=values[prime_pos],
                delta=d_all[prime_pos],
                delta_reg=None if dreg_all is None else dreg_all[prime_pos],
                _order=order,
                _edges=edges,
                _pi_sorted=pi_sorted,
                _psi_sorted=psi_sorted,
                _event_pos=prime_pos,
                _pi0=pi0.copy(),
                _psi0=psi_now,
            )

            # carry state into the next segment
            if cs.size:
                delta0 = int(d_all[-1])
                np.add.at(pi0, c, isp)
                logs_sorted = logs[order]
                group_sums = np.array(
                    [np.sum(logs_sorted[edges[a] : edges[a + 1]]) for a in range(q)]
                )
                nz = np.flatnonzero(edges[1:] > edges[:-1])
                psi.add(nz, group_sums[nz])
                if dense:
                    dreg0 = self.weight * math.fsum(
                        (signs[self.classes] * B0[self.classes]).tolist()
                    )
            yield chunk

    def class_state(self, chunk: ScanChunk, which: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Counts and psi per reduced class (columns) at chunk primes ``which`` (rows)."""
        pos = chunk._event_pos[which]
        pis = np.empty((pos.size, self.classes.size), dtype=np.int64)
        psis = np.empty((pos.size, self.classes.size))
        for j, a in enumerate(self.classes.tolist()):
            g0, g1 = chunk._edges[a], chunk._edges[a + 1]
            k = np.searchsorted(chunk._order[g0:g1], pos, side="right")
            at = g0 + k - 1
            empty = k == 0
            safe = np.where(empty, 0, at)
            if chunk._pi_sorted.size:
                pis[:, j] = np.where(empty, chunk._pi0[a], chunk._pi_sorted[safe])
                psis[:, j] = np.where(empty, chunk._psi0[a], chunk._psi_sorted[safe])
            else:
                pis[:, j] = chunk._pi0[a]
                psis[:, j] = chunk._psi0[a]
        return pis, psis

    def robin_B_at(self, chunk: ScanChunk, which: np.ndarray) -> np.ndarray:
        pis, psis = self.class_state(chunk, which)
        return logint(self.phi * psis) - self.phi * pis

    def delta_reg_at(self, chunk: ScanChunk, which: np.ndarray) -> np.ndarray:
        B = self.robin_B_at(chunk, which)
        return self.weight * np.sum(B * self.signs[self.classes], axis=1)


def _point(scanner: BiasScanner, chunk: ScanChunk, i: int, B: np.ndarray | None, dr: float) -> BiasPoint:
    x = int(chunk.x[i])
    by_class = {} if B is None else dict(zip(scanner.classes.tolist(), B.tolist()))
    return BiasPoint(x, int(chunk.delta[i]), float(dr), by_class, float(dr) / math.sqrt(x))


def _record_mask(d: np.ndarray, best: int, eps: int) -> np.ndarray:
    s = eps * d
    prior = np.maximum.accumulate(np.concatenate([[best], s]))[:-1]
    return s > prior


def scan(
    q: int,
    limit: int,
    policy: Policy = "champions",
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
    with_classes: bool = False,
) -> Iterator[BiasPoint]:
    """Stream BiasPoints at every prime coprime to q, or at champions of either sign."""
    if policy not in ("all-primes", "champions"):
        raise ValueError(f"unknown sampling policy {policy!r}")
    scanner = BiasScanner(q, limit, segment_size, threads)
    best = {1: 0, -1: 0}
    dense = policy == "all-primes" and not with_classes
    for chunk in scanner.chunks(dense=dense):
        if policy == "champions":
            hit = _record_mask(chunk.delta, best[1], 1) | _record_mask(chunk.delta, best[-1], -1)
            which = np.flatnonzero(hit)
            if chunk.delta.size:
                best[1] = max(best[1], int(chunk.delta.max()))
                best[-1] = max(best[-1], int(-chunk.delta.min()))
        else:
            which = np.arange(chunk.x.size)
        if not which.size:
            continue
        if dense:
            for i in which.tolist():
                yield _point(scanner, chunk, i, None, chunk.delta_reg[i])
        else:
            B = scanner.robin_B_at(chunk, which)
            dr = scanner.weight * np.sum(B * scanner.signs[scanner.classes], axis=1)
            for j, i in enumerate(which.tolist()):
                yield _point(scanner, chunk, i, B[j], dr[j])


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    checked: int
    first_checked: int | None
    witness: int | None = None
    witness_value: float | None = None
    min_normalized: float = math.inf


def verify_positivity(
    q: int,
    limit: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
    scanner: BiasScanner | None = None,
) -> VerifyResult:
    """Check delta_reg(x, q) > 0 at every prime coprime to q up to ``limit``.

    Checking starts at the first prime by which both a square and a
    non-square class hold a prime; before that delta_reg is trivially
    signed by the single populated side.  Stops at the first violation.
    """
    if scanner is None:
        scanner = BiasScanner(q, limit, segment_size, threads)
    square = scanner.signs > 0
    seen_R = seen_N = False
    checked = 0
    first = None
    lowest = math.inf
    for chunk in scanner.chunks(dense=True):
        if not chunk.x.size:
            continue
        cls = chunk.x % scanner.q
        in_R = np.logical_or.accumulate(square[cls]) | seen_R
        in_N = np.logical_or.accumulate(~square[cls]) | seen_N
        active = in_R & in_N
        seen_R, seen_N = bool(in_R[-1]), bool(in_N[-1])
        if not active.any():
            continue
        xs = chunk.x[active]
        dr = chunk.delta_reg[active]
        if first is None:
            first = int(xs[0])
        bad = np.flatnonzero(dr <= 0)
        if bad.size:
            i = bad[0]
            checked += int(i) + 1
            return VerifyResult(False, checked, first, int(xs[i]), float(dr[i]), lowest)
        checked += xs.size
        lowest = min(lowest, float(np.min(dr / np.sqrt(xs))))
    return VerifyResult(True, checked, first, min_normalized=lowest)


@dataclass(frozen=True)
class ChampionRecord:
    n: int
    epsilon: int
    x_n: int
    delta_reg_at: float
    normalized: float


def champions(
    q: int,
    limit: int,
    epsilon: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> list[ChampionRecord]:
    """First primes x_n <= limit with delta(x_n, q) = epsilon * n, for n = 1, 2, ..."""
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    scanner = BiasScanner(q, limit, segment_size, threads)
    best = 0
    out: list[ChampionRecord] = []
    for chunk in scanner.chunks():
        which = np.flatnonzero(_record_mask(chunk.delta, best, epsilon))
        if not which.size:
            continue
        dr = scanner.delta_reg_at(chunk, which)
        for j, i in enumerate(which.tolist()):
            n = int(epsilon * chunk.delta[i])
            if n != best + 1:
                raise AssertionError(f"champion level jumped from {best} to {n}")
            best = n
            x = int(chunk.x[i])
            out.append(ChampionRecord(n, epsilon, x, float(dr[j]), float(dr[j]) / math.sqrt(x)))
    return out


def bias_sum(
    q: int,
    limit: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
    normalize: bool = True,
) -> float:
    """b(q): sum over champions of both signs of epsilon*n / x_n.

    With ``normalize`` (default) the sum is divided by floor(p/2) for a prime
    modulus p, the same weight the regularized bias carries; q = 4 is
    unaffected.  The raw sum is dominated by the smallest primes when they
    all fall in one class (every prime below 41 is a non-residue mod 163).
    """
    if limit < 3:
        raise ValueError(f"bias_sum: limit must be >= 3, got {limit}")
    scanner = BiasScanner(q, limit, segment_size, threads)
    best = {1: 0, -1: 0}
    terms: list[float] = []
    for chunk in scanner.chunks():
        for eps in (1, -1):
            which = np.flatnonzero(_record_mask(chunk.delta, best[eps], eps))
            if which.size:
                terms.extend((chunk.delta[which] / chunk.x[which]).tolist())
                best[eps] = int(eps * chunk.delta[which[-1]])
    total = math.fsum(terms)
    return total * regularized_weight(q) if normalize else total


_H_TABLE_SIZE = 64
# G(n) = H(n-1) - log n for small n, H(0) = 0
_G_SMALL = np.array(
    [0.0] + [math.fsum(1.0 / k for k in range(1, n)) - math.log(n) for n in range(1, _H_TABLE_SIZE)]
)


def _harmonic_offset(n: np.ndarray) -> np.ndarray:
    """H(n-1) - log n, exact table below 64 and Euler-Maclaurin above."""
    n = np.asarray(n, dtype=np.int64)
    out = np.empty(n.shape)
    small = n < _H_TABLE_SIZE
    out[small] = _G_SMALL[n[small]]
    big = n[~small].astype(float)
    inv = 1.0 / big
    inv2 = inv * inv
    out[~small] = EULER_GAMMA - 0.5 * inv - inv2 * (1 / 12 - inv2 * (1 / 120 - inv2 / 252))
    return out


def harmonic_span(m, n) -> np.ndarray:
    """sum_{a=m}^{n-1} 1/a for integer arrays 1 <= m <= n."""
    m = np.asarray(m, dtype=np.int64)
    n = np.asarray(n, dtype=np.int64)
    return np.log1p((n - m) / m.astype(float)) + (_harmonic_offset(n) - _harmonic_offset(m))


@dataclass(frozen=True)
class LogDensity:
    d_plus: float
    d_minus: float
    d_zero: float
    limit: int


def _runs(scanner: BiasScanner) -> Iterator[tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """(start, end, delta) runs covering the integers [1, limit]; delta is constant on [start, end)."""
    prev_x, prev_d = 1, 0
    for chunk in scanner.chunks():
        if not chunk.x.size:
            continue
        starts = np.concatenate([[prev_x], chunk.x[:-1]])
        ends = chunk.x
        ds = np.concatenate([[prev_d], chunk.delta[:-1]])
        yield starts, ends, ds
        prev_x, prev_d = int(chunk.x[-1]), int(chunk.delta[-1])
    yield np.array([prev_x]), np.array([scanner.limit + 1]), np.array([prev_d])


def log_density(
    q: int,
    limit: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> LogDensity:
    """(1/log X) sum 1/a over integers a <= X split by the sign of delta(a, q)."""
    scanner = BiasScanner(q, limit, segment_size, threads)
    parts: dict[int, list[float]] = {1: [], -1: [], 0: []}
    for starts, ends, ds in _runs(scanner):
        span = harmonic_span(starts, ends)
        sgn = np.sign(ds)
        for s in (1, -1, 0):
            parts[s].append(float(np.sum(span[sgn == s])))
    L = math.log(limit)
    return LogDensity(
        math.fsum(parts[1]) / L, math.fsum(parts[-1]) / L, math.fsum(parts[0]) / L, limit
    )


@dataclass(frozen=True)
class Zone:
    """Integers t in [start, end) share the sign of delta(t, q).

    ``primes`` counts the primes coprime to q inside the zone.
    """

    start: int
    end: int
    sign: int
    primes: int

    @property
    def length(self) -> int:
        return self.end - self.start


def zones(
    q: int,
    limit: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> list[Zone]:
    """Maximal constant-sign intervals of delta(., q) over [2, limit]."""
    scanner = BiasScanner(q, limit, segment_size, threads)
    out: list[Zone] = []
    cur_start, cur_sign, cur_primes = 2, 0, 0
    for chunk in scanner.chunks():
        if not chunk.x.size:
            continue
        sg = np.sign(chunk.delta)
        prev = np.concatenate([[cur_sign], sg[:-1]])
        change = np.flatnonzero(sg != prev)
        bounds = np.concatenate([[0], change, [sg.size]])
        for k in range(len(bounds) - 1):
            i0, i1 = int(bounds[k]), int(bounds[k + 1])
            if k > 0:
                # a sign change at x = 2 itself leaves nothing to close
                if int(chunk.x[i0]) > cur_start:
                    out.append(Zone(cur_start, int(chunk.x[i0]), cur_sign, cur_primes))
                cur_start, cur_sign, cur_primes = int(chunk.x[i0]), int(sg[i0]), 0
            cur_primes += i1 - i0
    out.append(Zone(cur_start, limit + 1, cur_sign, cur_primes))
    return out
