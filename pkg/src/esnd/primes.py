"""Prime sieves and smallest-prime-factor tables."""

from __future__ import annotations

import threading
from math import isqrt

import numpy as np

DEFAULT_TABLE_LIMIT = 10**7
PLAIN_SIEVE_LIMIT = 10**7
SEGMENT_SIZE = 10**7
LIST_LOOKUP_LIMIT = 2 * 10**6


def _plain_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    # index k stands for the odd number 2k + 1
    odd = np.ones(limit // 2 + 1, dtype=bool)
    odd[0] = False
    if limit % 2 == 0:
        odd[-1] = False
    for i in range(1, (isqrt(limit) - 1) // 2 + 1):
        if odd[i]:
            p = 2 * i + 1
            odd[p * p // 2 :: p] = False
    return np.concatenate(([2], 2 * np.flatnonzero(odd) + 1)).astype(np.int64)


def _segmented_sieve(limit: int, segment: int = SEGMENT_SIZE) -> np.ndarray:
    base = _plain_sieve(isqrt(limit) + 1)
    chunks = [base[base <= limit]]
    low = int(base[-1]) + 1
    odd_base = base[1:]
    while low <= limit:
        high = min(low + segment, limit + 1)
        mask = np.ones(high - low, dtype=bool)
        for p in odd_base:
            p = int(p)
            if p * p >= high:
                break
            start = max(p * p, -(-low // p) * p)
            mask[start - low :: p] = False
        mask[(low & 1) :: 2] = False  # even offsets from an even low, odd ones otherwise
        chunks.append(low + np.flatnonzero(mask))
        low = high
    return np.concatenate(chunks).astype(np.int64)


_cache_lock = threading.Lock()
_cached_primes = np.empty(0, dtype=np.int64)
_cached_limit = 1


def primes_up_to(limit: int) -> np.ndarray:
    """Ascending array of the primes in [2, limit].

    Results are cached; a request below the cached limit is a slice.
    """
    global _cached_primes, _cached_limit
    limit = int(limit)
    if limit < 2:
        raise ValueError(f"prime bound must be >= 2, got {limit}")
    with _cache_lock:
        if limit > _cached_limit:
            sieve = _plain_sieve if limit <= PLAIN_SIEVE_LIMIT else _segmented_sieve
            _cached_primes = sieve(limit)
            _cached_limit = limit
        primes = _cached_primes
    return primes[: np.searchsorted(primes, limit, side="right")]


def clear_cache() -> None:
    """Forget the cached primes and factor tables."""
    global _cached_primes, _cached_limit
    with _cache_lock:
        _cached_primes = np.empty(0, dtype=np.int64)
        _cached_limit = 1
        _tables.clear()


def prime_count(limit: int) -> int:
    return 0 if limit < 2 else len(primes_up_to(limit))


class PrimeTable:
    """Smallest-prime-factor table over [0, limit]; immutable once built."""

    def __init__(self, limit: int = DEFAULT_TABLE_LIMIT):
        if limit < 2:
            raise ValueError(f"table limit must be >= 2, got {limit}")
        self.limit = int(limit)
        spf = np.zeros(self.limit + 1, dtype=np.int32)
        for p in primes_up_to(isqrt(self.limit)):
            p = int(p)
            block = spf[p * p :: p]
            block[block == 0] = p
        spf[spf == 0] = np.arange(self.limit + 1, dtype=np.int32)[spf == 0]
        spf.flags.writeable = False
        self.spf = spf
        # a Python list makes scalar lookups ~5x faster but costs ~36 bytes per entry
        self._spf_list = spf.tolist() if self.limit <= LIST_LOOKUP_LIMIT else spf

    def __repr__(self) -> str:
        return f"PrimeTable(limit={self.limit})"

    def is_prime(self, n: int) -> bool:
        self._check(n)
        return n >= 2 and int(self._spf_list[n]) == n

    def _check(self, n: int) -> None:
        if not 1 <= n <= self.limit:
            raise ValueError(f"{n} outside table range [1, {self.limit}]")

    def factor_exponents(self, n: int) -> list[tuple[int, int]]:
        """Prime factorization of n as ascending (prime, exponent) pairs; [] for n = 1."""
        self._check(n)
        spf = self._spf_list
        out = []
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out


_tables: dict[int, PrimeTable] = {}


def table_for(limit: int) -> PrimeTable:
    """A shared table covering at least ``limit``."""
    with _cache_lock:
        for lim, table in _tables.items():
            if lim >= limit:
                return table
    table = PrimeTable(max(limit, 1000))
    with _cache_lock:
        _tables[table.limit] = table
    return table


def factor_exponents(n: int, table: PrimeTable) -> list[tuple[int, int]]:
    return table.factor_exponents(n)
