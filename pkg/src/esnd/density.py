"""Certified enclosures of h(E(S)) from its Euler product.

The density is prod_p f_p with the local factor

    f_p = 1 + sum_{i>=2} (u(i) - u(i-1)) / p**i = (1 - 1/p) * sum_{s in S + {0}} p**-s,

where u is the characteristic function of S. Factors for p <= P are evaluated
in floating point with explicit error terms and summed as logarithms with
``math.fsum``; the primes above P are enclosed analytically using explicit
bounds on the prime-counting function.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import exp1

from . import primes
from .primes import prime_count, primes_up_to
from .sequences import Kind, SSequence, delta

DEFAULT_PRIME_BOUND = 10**6
DEFAULT_EXPONENT_BOUND = 64
DEFAULT_WIDTH = 1e-8
MAX_PRIME_BOUND = 10**8

SQUAREFREE_DENSITY = 6 / math.pi**2

EPS = sys.float_info.epsilon

# pi(x) <= x/log x * (1 + PI_UPPER/log x) for x > 1, and
# pi(x) >= x/log x * (1 + PI_LOWER/log x) for x >= PI_LOWER_FROM (Dusart 1999).
PI_UPPER = 1.2762
PI_LOWER = 1.0
PI_LOWER_FROM = 599
# relative slack on scipy's exp1, far above its documented accuracy
_E1_SLACK = 1e-9


@dataclass(frozen=True)
class FactorBracket:
    point: float
    lo: float
    hi: float
    truncation: float


@dataclass(frozen=True)
class TailBounds:
    prime_tail_bound: float
    exponent_tail_bound: float


@dataclass(frozen=True)
class TailTerms:
    prime_tail_bound: float
    exponent_tail_bound: float
    rounding_bound: float
    prime_tail_enclosure: tuple[float, float] = (0.0, 0.0)


@dataclass(frozen=True)
class DensityBracket:
    lo: float
    hi: float
    point: float
    prime_bound: int
    exponent_bound: int
    tail_terms: TailTerms
    requested_width: float | None = field(default=None, compare=False)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def meets_target(self) -> bool:
        return self.requested_width is None or self.width <= self.requested_width

    def __contains__(self, value: float) -> bool:
        return self.lo <= value <= self.hi


def local_factor(s: SSequence, p: int, exponent_bound: int = DEFAULT_EXPONENT_BOUND) -> FactorBracket:
    """Local factor at p by direct summation over 2 <= i <= exponent_bound.

    The omitted terms are bounded by sum_{i>I} p**-i = 1 / (p**I (p - 1)); each
    term and the final addition of 1 add at most EPS relative rounding.
    """
    if exponent_bound < 2:
        raise ValueError(f"exponent bound must be >= 2, got {exponent_bound}")
    if s.horizon is not None:
        diffs = [(i, d) for i, d in s.change_points() if i <= exponent_bound]
    else:
        diffs = [(i, d) for i in range(2, exponent_bound + 1) if (d := delta(s, i))]
    terms = [d / p**i for i, d in diffs]
    point = 1.0 + math.fsum(terms)
    trunc = 1.0 / (float(p) ** exponent_bound * (p - 1))
    err = trunc + EPS * (1.0 + 2.0 * math.fsum(map(abs, terms)))
    return FactorBracket(point, max(point - err, 0.0), min(point + err, 1.0), trunc)


def local_factor_closed(s: SSequence, p: int) -> Fraction:
    """Exact local factor (1 - 1/p) * sum_{s in S + {0}} p**-s.

    A cofinite tail from m contributes the geometric series p**-m / (1 - 1/p).
    """
    if s.kind is Kind.NAMED:
        raise ValueError(f"no closed form for named family {s.name!r}; use local_factor")
    q = Fraction(1, p)
    total = 1 + sum(q**t for t in s.finite_part)
    if s.kind is Kind.COFINITE_TAIL:
        total += q**s.tail_start / (1 - q)
    return (1 - q) * total


def _zeta_tail(start: int, k: int) -> float:
    """Upper bound for sum_{m >= start} m**-k, k >= 2."""
    return float(start) ** -k + float(start) ** (1 - k) / (k - 1)


def tail_bounds(prime_bound: int, exponent_bound: int = DEFAULT_EXPONENT_BOUND) -> TailBounds:
    """Sequence-independent truncation bounds.

    For every S, |f_p - 1| <= 1/(p(p-1)) and |log(1+x)| <= 2|x| when |x| <= 1/2, so
    the primes above P shift the log-density by at most 2 * sum_{n>P} 1/(n(n-1)) = 2/P.
    Cutting each local sum at I costs at most 1/(p**I (p-1)) per factor.
    """
    if prime_bound < 2 or exponent_bound < 2:
        raise ValueError("prime and exponent bounds must be >= 2")
    pf = primes_up_to(prime_bound).astype(float)
    return TailBounds(
        prime_tail_bound=2.0 / prime_bound,
        exponent_tail_bound=math.fsum(pf ** -exponent_bound / (pf - 1)),
    )


def prime_power_tail(prime_bound: int, s: int) -> tuple[float, float]:
    """Enclosure of sum_{p > P} p**-s for an integer s >= 2.

    Partial summation gives sum_{p>P} p**-s = -pi(P) P**-s + s * int_P^inf pi(t) t**(-s-1) dt,
    and with pi(t) between t/log t * (1 + c/log t) for the two constants above the
    integral is s * (E1(a) + c * (P**-b / log P - b * E1(a))) with b = s - 1, a = b log P.
    """
    P = prime_bound
    b = s - 1
    log_p = math.log(P)
    a = b * log_p
    e1 = float(exp1(a))
    k2 = float(P) ** -b / log_p - b * e1
    boundary = prime_count(P) * float(P) ** -s

    def integral(c: float) -> float:
        return s * (e1 + c * k2)

    slack = _E1_SLACK * (integral(PI_UPPER) + boundary)
    hi = integral(PI_UPPER) - boundary + slack
    lo = integral(PI_LOWER) - boundary - slack if P >= PI_LOWER_FROM else 0.0
    return max(lo, 0.0), hi


def _first_change(s: SSequence) -> int | None:
    if s.horizon is not None:
        cps = s.change_points()
        return cps[0][0] if cps else None
    i = 2
    while delta(s, i) == 0:
        i += 1
    return i


def _log_tail_enclosure(s: SSequence, prime_bound: int, j: int) -> tuple[float, float]:
    # The first nonzero difference is u(j) - u(j-1) = -1 since u(1) = 1, so with
    # x_p = f_p - 1 we have |x_p + p**-j| <= 1/(p-1)**(j+1), |x_p| <= 1/(p-1)**j,
    # and x - x**2 <= log(1+x) <= x for |x| <= 1/2.
    t_lo, t_hi = prime_power_tail(prime_bound, j)
    r1 = _zeta_tail(prime_bound, j + 1)
    r2 = _zeta_tail(prime_bound, 2 * j)
    lo = -t_hi - r1 - r2
    hi = min(-t_lo + r1, 0.0)
    generic = 2.0 / prime_bound
    return max(lo, -generic), min(hi, 0.0)


def _differences(s: SSequence, exponent_bound: int) -> tuple[list[tuple[int, int]], bool]:
    if s.kind is not Kind.NAMED or s.name == "all":
        return list(s.change_points() if s.kind is not Kind.NAMED else ()), False
    return [(i, d) for i in range(2, exponent_bound + 1) if (d := delta(s, i))], True


@lru_cache(maxsize=4096)
def _evaluate(s: SSequence, prime_bound: int, exponent_bound: int) -> DensityBracket:
    diffs, truncated = _differences(s, exponent_bound)
    if not diffs:
        # u is identically 1: every factor is exactly 1
        terms = TailTerms(0.0, 0.0, 0.0)
        return DensityBracket(1.0, 1.0, 1.0, prime_bound, exponent_bound, terms)

    pf = primes_up_to(prime_bound).astype(float)
    q = 1.0 / pf
    coeffs = np.zeros(diffs[-1][0] + 1)
    for i, d in diffs:
        coeffs[i] = d
    # Horner in q = 1/p: two roundings per step plus the error carried in q**i
    x = np.zeros_like(pf)
    magnitude = np.zeros_like(pf)
    for c in coeffs[::-1]:
        x = x * q + c
        magnitude = magnitude * q + abs(c)
    rounding = (3 * len(coeffs) + 4) * EPS * magnitude
    trunc = pf**-exponent_bound / (pf - 1) if truncated else np.zeros_like(pf)

    # true factors lie in [1 - 1/p**2, 1]
    floor = -(pf**-2) * (1 + 2 * EPS)
    x_lo = np.maximum(x - rounding - trunc, floor)
    x_hi = np.minimum(x + rounding + trunc, 0.0)
    log_lo = np.log1p(x_lo)
    log_hi = np.log1p(x_hi)
    log_lo -= 2 * EPS * np.abs(log_lo)
    log_hi += 2 * EPS * np.abs(log_hi)
    sum_lo = math.fsum(log_lo)
    sum_hi = math.fsum(log_hi)
    sum_lo -= EPS * abs(sum_lo)
    sum_hi += EPS * abs(sum_hi)

    tail_lo, tail_hi = _log_tail_enclosure(s, prime_bound, _first_change(s))
    lo = math.exp(sum_lo + tail_lo) * (1 - 4 * EPS)
    hi = min(math.exp(sum_hi + tail_hi) * (1 + 4 * EPS), 1.0)

    scale = 1.0 / (1.0 + x_lo)
    terms = TailTerms(
        prime_tail_bound=max(abs(tail_lo), abs(tail_hi)),
        exponent_tail_bound=math.fsum(2 * trunc * scale),
        rounding_bound=math.fsum(2 * rounding * scale) + 4 * EPS * math.fsum(np.abs(log_lo)),
        prime_tail_enclosure=(tail_lo, tail_hi),
    )
    return DensityBracket(lo, hi, (lo + hi) / 2, prime_bound, exponent_bound, terms)


def clear_caches() -> None:
    """Drop memoized brackets and sieved primes, e.g. before a cold timing run."""
    _evaluate.cache_clear()
    primes.clear_cache()


def _next_bound(prime_bound: int) -> int:
    """Half-decade ladder: 1e6 -> 3e6 -> 1e7 -> 3e7 -> ..."""
    scale = 10 ** int(math.log10(prime_bound))
    return 3 * scale if prime_bound < 3 * scale else 10 * scale


def density(
    s: SSequence,
    prime_bound: int = DEFAULT_PRIME_BOUND,
    exponent_bound: int = DEFAULT_EXPONENT_BOUND,
    width: float | None = None,
) -> DensityBracket:
    """Bracket [lo, hi] guaranteed to contain h(E(S)).

    When ``width`` is given and the bracket is wider, the prime bound climbs the
    ladder 1e6, 3e6, 1e7, 3e7, ... up to MAX_PRIME_BOUND. Failing to reach the
    width is not an error; check ``meets_target`` on the result.
    """
    prime_bound, exponent_bound = int(prime_bound), int(exponent_bound)
    if prime_bound < 2 or exponent_bound < 2:
        raise ValueError("prime and exponent bounds must be >= 2")
    result = _evaluate(s, prime_bound, exponent_bound)
    while width is not None and result.width > width and prime_bound < MAX_PRIME_BOUND:
        prime_bound = min(_next_bound(prime_bound), MAX_PRIME_BOUND)
        result = _evaluate(s, prime_bound, exponent_bound)
    if width is not None:
        result = DensityBracket(
            result.lo, result.hi, result.point, result.prime_bound,
            result.exponent_bound, result.tail_terms, requested_width=width,
        )
    return result
