"""Membership in E(S), sieve counts of E(S) up to x, and the error envelope."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from math import isqrt

import numpy as np

from .density import density
from .primes import PrimeTable, primes_up_to
from .sequences import SSequence, contains

ENVELOPE_C = 7.443083  # 4 * sqrt(2.4 / log 2), rounded as published
ENVELOPE_MIN_X = 16
COUNT_WIDTH = 1e-9
SEGMENT_SIZE = 10**8
MEMORY_BUDGET = 2**31
MAX_COUNT_LIMIT = 10**9


class MemoryBudgetError(ValueError):
    pass


@dataclass(frozen=True)
class CountReport:
    sequence: str
    x: int
    count: int
    predicted: float
    deviation: float
    deviation_uncertainty: float
    envelope: float | None
    ratio: float | None
    density_lo: float
    density_hi: float

    def to_dict(self) -> dict:
        return asdict(self)


def is_member(n: int, s: SSequence, table: PrimeTable) -> bool:
    """True iff every exponent in the factorization of n lies in S (vacuously for n = 1)."""
    return all(contains(s, e) for _, e in table.factor_exponents(n))


def envelope(x: int) -> float:
    """sqrt(x) log x exp(c sqrt(log x) / log log x) with natural logs."""
    if x < ENVELOPE_MIN_X:
        raise ValueError(f"envelope needs x >= {ENVELOPE_MIN_X}, got {x}")
    lx = math.log(x)
    return math.sqrt(x) * lx * math.exp(ENVELOPE_C * math.sqrt(lx) / math.log(lx))


def _allowed_exponents(s: SSequence, x: int) -> list[bool]:
    return [False] + [contains(s, e) for e in range(1, max(x, 2).bit_length() + 1)]


def _segment_mask(allowed: list[bool], lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    """Membership mask for [lo, hi).

    Only multiples of p**2 can carry a forbidden exponent. For each forbidden
    e, clear k * p**e with p not dividing k, i.e. integers whose p-adic
    valuation is exactly e.
    """
    mask = np.ones(hi - lo, dtype=bool)
    forbidden = [e for e in range(2, len(allowed)) if not allowed[e]]
    if not forbidden:
        return mask
    for p in base:
        p = int(p)
        if p * p >= hi:
            break
        for e in forbidden:
            pe = p**e
            if pe >= hi:
                break
            first = -(-lo // pe)
            k = np.arange(first, (hi - 1) // pe + 1, dtype=np.int64)
            k = k[k % p != 0]
            mask[k * pe - lo] = False
    return mask


def _segments(x: int, segment: int):
    lo = 1
    while lo <= x:
        hi = min(lo + segment, x + 1)
        yield lo, hi
        lo = hi


def sieve_count(s: SSequence, x: int, segment: int = SEGMENT_SIZE) -> CountReport:
    """Count E(S) in [1, x] with the exclusion sieve and compare against h * x."""
    x = int(x)
    if x < 1:
        raise ValueError(f"x must be positive, got {x}")
    if x > MAX_COUNT_LIMIT:
        raise MemoryBudgetError(f"x = {x} exceeds the supported limit {MAX_COUNT_LIMIT}")
    allowed = _allowed_exponents(s, x)
    base = primes_up_to(max(isqrt(x), 2))
    total = 0
    for lo, hi in _segments(x, segment):
        total += int(np.count_nonzero(_segment_mask(allowed, lo, hi, base)))

    h = density(s, width=COUNT_WIDTH)
    predicted = h.point * x
    env = envelope(x) if x >= ENVELOPE_MIN_X else None
    deviation = abs(total - predicted)
    return CountReport(
        sequence=str(s),
        x=x,
        count=total,
        predicted=predicted,
        deviation=deviation,
        deviation_uncertainty=h.width / 2 * x,
        envelope=env,
        ratio=deviation / env if env else None,
        density_lo=h.lo,
        density_hi=h.hi,
    )


def enumerate_members(s: SSequence, x: int, segment: int = SEGMENT_SIZE) -> list[int]:
    """Members of E(S) in [1, x], ascending."""
    x = int(x)
    if x < 1:
        raise ValueError(f"x must be positive, got {x}")
    if x > MEMORY_BUDGET:
        raise MemoryBudgetError(f"x = {x} exceeds the memory budget of {MEMORY_BUDGET} entries")
    allowed = _allowed_exponents(s, x)
    base = primes_up_to(max(isqrt(x), 2))
    out: list[int] = []
    for lo, hi in _segments(x, segment):
        out.extend((lo + np.flatnonzero(_segment_mask(allowed, lo, hi, base))).tolist())
    return out


def brute_force_members(s: SSequence, x: int, table: PrimeTable | None = None) -> list[int]:
    """Reference filter: factor every n <= x independently and test its exponents."""
    table = table or PrimeTable(max(x, 2))
    return [n for n in range(1, x + 1) if is_member(n, s, table)]
