"""Segmented odd-only sieve, prime-power enumeration and residue-class tallies."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from .numerics import classify_residues

DEFAULT_SEGMENT_SIZE = 1 << 20
MAX_LIMIT = 1 << 62


def small_primes(n: int) -> np.ndarray:
    """All primes <= n from a plain sieve (used for base primes up to sqrt(limit))."""
    if n < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(n) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    return np.flatnonzero(flags).astype(np.int64)


@dataclass(frozen=True)
class SieveSegment:
    """Primality of the integers in ``[lo, hi)``.

    ``flags[i]`` refers to the odd integer ``first_odd + 2*i``; the even
    prime 2 is reported by :meth:`primes` when it lies in range.
    """

    lo: int
    hi: int
    flags: np.ndarray = field(repr=False)

    @property
    def first_odd(self) -> int:
        return self.lo | 1

    def primes(self) -> np.ndarray:
        odd = self.first_odd + 2 * np.flatnonzero(self.flags).astype(np.int64)
        if self.lo <= 2 < self.hi:
            return np.concatenate([np.array([2], dtype=np.int64), odd])
        return odd

    def count(self) -> int:
        return int(np.count_nonzero(self.flags)) + (1 if self.lo <= 2 < self.hi else 0)


def sieve_segment(
    lo: int,
    hi: int,
    base_primes: np.ndarray | None = None,
    budget: int = DEFAULT_SEGMENT_SIZE,
) -> SieveSegment:
    """Sieve ``[lo, hi)``.  ``base_primes`` must contain every prime <= sqrt(hi-1)."""
    if not (2 <= lo < hi):
        raise ValueError(f"sieve_segment: need 2 <= lo < hi, got [{lo}, {hi})")
    if hi - lo > budget:
        raise ValueError(f"sieve_segment: length {hi - lo} exceeds budget {budget}")
    if hi - 1 > MAX_LIMIT:
        raise ValueError("sieve_segment: beyond 2^62")
    if base_primes is None:
        base_primes = small_primes(math.isqrt(hi - 1))
    first = lo | 1
    n_odd = max(0, (hi - first + 1) // 2)
    flags = np.ones(n_odd, dtype=bool)
    if first == 1 and n_odd:
        flags[0] = False
    for p in base_primes[1:].tolist():  # skip 2
        sq = p * p
        if sq >= hi:
            break
        start = max(sq, -(-lo // p) * p)
        if start % 2 == 0:
            start += p
        if start < hi:
            flags[(start - first) // 2 :: p] = False
    return SieveSegment(lo, hi, flags)


def iter_segments(
    limit: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
    start: int = 2,
) -> Iterator[SieveSegment]:
    """Segments covering ``[start, limit]`` in increasing order.

    With ``threads > 1`` segments are sieved concurrently in bounded batches
    but still yielded in order, so downstream results do not depend on it.
    """
    if limit > MAX_LIMIT:
        raise ValueError("limit beyond 2^62")
    if limit < start:
        return
    base = small_primes(math.isqrt(limit))
    bounds = [(lo, min(lo + segment_size, limit + 1)) for lo in range(start, limit + 1, segment_size)]
    if threads <= 1:
        for lo, hi in bounds:
            yield sieve_segment(lo, hi, base, budget=segment_size)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        batch = 4 * threads
        for i in range(0, len(bounds), batch):
            chunk = bounds[i : i + batch]
            yield from pool.map(lambda b: sieve_segment(b[0], b[1], base, budget=segment_size), chunk)


def pi(x: int) -> int:
    """Number of primes <= x."""
    if x < 2:
        return 0
    return sum(seg.count() for seg in iter_segments(x))


@dataclass(frozen=True, order=True)
class PrimePower:
    value: int
    p: int
    k: int
    logp: float


def higher_prime_powers(limit: int) -> tuple[np.ndarray, np.ndarray]:
    """Values p^k <= limit with k >= 2, sorted, with their base primes."""
    values: list[int] = []
    bases: list[int] = []
    for p in small_primes(math.isqrt(limit)).tolist():
        v = p * p
        while v <= limit:
            values.append(v)
            bases.append(p)
            v *= p
    order = np.argsort(np.array(values, dtype=np.int64), kind="stable")
    return (
        np.array(values, dtype=np.int64)[order],
        np.array(bases, dtype=np.int64)[order],
    )


@dataclass(frozen=True)
class EventChunk:
    """Prime powers in ``[lo, hi)`` in increasing order.

    ``primes`` holds the base prime of each value; ``is_prime`` marks k = 1.
    """

    lo: int
    hi: int
    values: np.ndarray
    primes: np.ndarray
    is_prime: np.ndarray

    @property
    def logp(self) -> np.ndarray:
        return np.log(self.primes.astype(float))


def iter_events(
    limit: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> Iterator[EventChunk]:
    """Stream every prime power <= limit, one chunk per sieve segment."""
    hv, hb = higher_prime_powers(limit)
    for seg in iter_segments(limit, segment_size, threads):
        ps = seg.primes()
        i0, i1 = np.searchsorted(hv, [seg.lo, seg.hi])
        if i1 > i0:
            values = np.concatenate([ps, hv[i0:i1]])
            bases = np.concatenate([ps, hb[i0:i1]])
            is_p = np.concatenate([np.ones(ps.size, bool), np.zeros(i1 - i0, bool)])
            order = np.argsort(values, kind="stable")
            yield EventChunk(seg.lo, seg.hi, values[order], bases[order], is_p[order])
        else:
            yield EventChunk(seg.lo, seg.hi, ps, ps, np.ones(ps.size, bool))


def iterate_prime_powers(limit: int, visitor: Callable[[PrimePower], None]) -> None:
    """Call ``visitor`` once for each prime power p^k <= limit, by increasing value."""
    if limit < 2:
        raise ValueError(f"iterate_prime_powers: limit must be >= 2, got {limit}")
    for chunk in iter_events(limit):
        for v, p, isp in zip(chunk.values.tolist(), chunk.primes.tolist(), chunk.is_prime.tolist()):
            k = 1 if isp else round(math.log(v) / math.log(p))
            visitor(PrimePower(v, p, k, math.log(p)))


@dataclass(frozen=True)
class ResidueTally:
    """Per-class prime counts and psi sums over the integers in ``[start, frontier]``.

    ``counts`` and ``psi`` are keyed by the reduced classes mod ``q``; prime
    powers of primes dividing ``q`` go to ``offclass_psi``/``offclass_count``.
    """

    q: int
    frontier: int
    counts: dict[int, int]
    psi: dict[int, float]
    offclass_psi: float = 0.0
    offclass_count: int = 0
    start: int = 2

    @property
    def total_count(self) -> int:
        return sum(self.counts.values()) + self.offclass_count

    @property
    def total_psi(self) -> float:
        return math.fsum([*self.psi.values(), self.offclass_psi])

    def merge(self, other: "ResidueTally") -> "ResidueTally":
        """Combine with the tally of the adjacent range that follows (or precedes) this one."""
        if other.q != self.q:
            raise ValueError("cannot merge tallies of different moduli")
        first, second = (self, other) if self.start <= other.start else (other, self)
        if second.start != first.frontier + 1:
            raise ValueError(
                f"tallies not adjacent: [{first.start}, {first.frontier}] and "
                f"[{second.start}, {second.frontier}]"
            )
        return ResidueTally(
            q=self.q,
            frontier=second.frontier,
            counts={a: first.counts[a] + second.counts[a] for a in first.counts},
            psi={a: first.psi[a] + second.psi[a] for a in first.psi},
            offclass_psi=first.offclass_psi + second.offclass_psi,
            offclass_count=first.offclass_count + second.offclass_count,
            start=first.start,
        )


def tally_range(
    lo: int,
    hi: int,
    q: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> ResidueTally:
    """Tally prime powers in ``[lo, hi]`` (inclusive) by class mod q."""
    if q < 3:
        raise ValueError(f"tally: modulus must be >= 3, got {q}")
    if lo < 2 or hi < lo - 1:
        raise ValueError(f"tally: bad range [{lo}, {hi}]")
    reduced = classify_residues(q).reduced
    counts = dict.fromkeys(reduced, 0)
    partials: dict[int, list[float]] = {a: [] for a in reduced}
    off_partials: list[float] = []
    off_count = 0
    hv, hb = higher_prime_powers(hi) if hi >= 4 else (np.array([], np.int64),) * 2
    for seg in iter_segments(hi, segment_size, threads, start=lo):
        ps = seg.primes()
        i0, i1 = np.searchsorted(hv, [seg.lo, seg.hi])
        values = np.concatenate([ps, hv[i0:i1]])
        logs = np.log(np.concatenate([ps, hb[i0:i1]]).astype(float))
        cls = values % q
        pcls = ps % q
        order = np.argsort(cls, kind="stable")
        cls_sorted = cls[order]
        logs_sorted = logs[order]
        edges = np.searchsorted(cls_sorted, np.arange(q + 1))
        pcount = np.bincount(pcls, minlength=q)
        for a in range(q):
            s, e = edges[a], edges[a + 1]
            if a in counts:
                counts[a] += int(pcount[a])
                if e > s:
                    partials[a].append(float(np.sum(logs_sorted[s:e])))
            else:
                off_count += int(pcount[a])
                if e > s:
                    off_partials.append(float(np.sum(logs_sorted[s:e])))
    return ResidueTally(
        q=q,
        frontier=hi,
        counts=counts,
        psi={a: math.fsum(v) for a, v in partials.items()},
        offclass_psi=math.fsum(off_partials),
        offclass_count=off_count,
        start=lo,
    )


def tally_to(
    limit: int,
    q: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> ResidueTally:
    """Exact pi(limit; q, a) and psi(limit; q, a) for every reduced class a."""
    if limit < 2:
        raise ValueError(f"tally_to: limit must be >= 2, got {limit}")
    return tally_range(2, limit, q, segment_size, threads)
