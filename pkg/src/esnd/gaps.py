"""Gaps in the set of all densities h(E(S)).

For a finite S1 = {s(1), ..., s(k)} with k >= 2, let S2 be S1 with s(k) removed
and every integer above s(k) added. The open interval (h(E(S2)), h(E(S1))) then
contains no density. The order of densities needs no evaluation at all: the
sequence owning the smallest element of the symmetric difference has the larger
density.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ._parallel import parallel_map
from .density import DEFAULT_PRIME_BOUND, SQUAREFREE_DENSITY, DensityBracket, density, local_factor_closed
from .primes import primes_up_to
from .sequences import (
    Kind,
    SSequence,
    bounded_cofinite_sequences,
    bounded_finite_sequences,
    first_divergence,
)

GAP_WIDTH = 1e-9
MIN_BOUND, MAX_BOUND = 2, 12
GAP_MEASURE_TARGET = 1 - SQUAREFREE_DENSITY
CONJECTURE_NOTE = (
    "Whether the gap lengths sum to 1 - 6/pi^2 (equivalently, whether the set of "
    "densities has measure zero) is an open question; this total is a lower "
    "estimate from finitely many gaps and decides nothing."
)


class Ordering(enum.Enum):
    A_GREATER = "A_greater"
    B_GREATER = "B_greater"


def compare(a: SSequence, b: SSequence) -> Ordering:
    """Order h(E(a)) and h(E(b)) from the first element where a and b differ."""
    return Ordering.A_GREATER if first_divergence(a, b).owner == "A" else Ordering.B_GREATER


def lower_neighbour(s1: SSequence) -> SSequence:
    """S1 without its last term, plus every integer past that term."""
    if s1.kind is not Kind.EXPLICIT_FINITE:
        raise ValueError(f"gap sequences must be explicit finite, got {s1}")
    if len(s1.finite_part) < 2:
        raise ValueError(f"{s1} has fewer than 2 terms; {{1}} has no gap below it")
    *head, last = s1.finite_part
    return SSequence.cofinite(head, last + 1)


@dataclass(frozen=True)
class GapInterval:
    s1: SSequence
    s2: SSequence
    left: DensityBracket
    right: DensityBracket

    @property
    def length(self) -> float:
        return self.right.point - self.left.point

    @property
    def uncertainty(self) -> float:
        return self.left.width + self.right.width

    @property
    def separated(self) -> bool:
        return self.left.hi < self.right.lo


def gap_for(
    s1: SSequence, width: float = GAP_WIDTH, prime_bound: int = DEFAULT_PRIME_BOUND
) -> GapInterval:
    s2 = lower_neighbour(s1)
    left = density(s2, prime_bound, width=width)
    right = density(s1, prime_bound, width=width)
    gap = GapInterval(s1, s2, left, right)
    if not gap.separated:
        raise ArithmeticError(
            f"endpoint brackets for {s1} overlap: [{left.lo}, {left.hi}] vs [{right.lo}, {right.hi}]"
        )
    return gap


def berend_gap(width: float = GAP_WIDTH, check_primes_up_to: int = 100) -> GapInterval:
    """The gap below the cubefree density, with factors 1 - (p-1)/p**3 and 1 - 1/p**3."""
    gap = gap_for(SSequence.finite([1, 2]), width)
    for p in primes_up_to(check_primes_up_to).tolist():
        if local_factor_closed(gap.s1, p) != 1 - Fraction(1, p**3):
            raise AssertionError(f"upper endpoint factor at p={p} is not 1 - 1/p^3")
        if local_factor_closed(gap.s2, p) != 1 - Fraction(p - 1, p**3):
            raise AssertionError(f"lower endpoint factor at p={p} is not 1 - (p-1)/p^3")
    return gap


class Disjointness(enum.Enum):
    DISJOINT = "disjoint"
    VIOLATION = "violation"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class DisjointResult:
    status: Disjointness
    pair: tuple[GapInterval, GapInterval] | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.status is Disjointness.DISJOINT


def verify_disjoint(gaps) -> DisjointResult:
    """Check that consecutive gaps (ordered by left endpoint) are strictly apart.

    A pair is a violation when the brackets prove overlap and inconclusive
    when the brackets cannot tell.
    """
    gaps = sorted(getattr(gaps, "gaps", gaps), key=lambda g: g.left.point)
    for g, h in zip(gaps, gaps[1:]):
        if g.right.hi < h.left.lo:
            continue
        if h.left.hi < g.right.lo:
            msg = f"gaps for {g.s1} and {h.s1} overlap"
            return DisjointResult(Disjointness.VIOLATION, (g, h), msg)
        msg = f"brackets cannot separate the gaps for {g.s1} and {h.s1}; tighten the width"
        return DisjointResult(Disjointness.INCONCLUSIVE, (g, h), msg)
    return DisjointResult(Disjointness.DISJOINT)


@dataclass(frozen=True)
class GapCatalog:
    bound: int
    gaps: tuple[GapInterval, ...]
    disjointness: DisjointResult

    @property
    def total_length(self) -> float:
        return math.fsum(g.length for g in self.gaps)

    def __len__(self) -> int:
        return len(self.gaps)


def _check_bound(bound: int) -> None:
    if not MIN_BOUND <= bound <= MAX_BOUND:
        raise ValueError(f"max term must be in [{MIN_BOUND}, {MAX_BOUND}], got {bound}")


def catalog_sequences(bound: int) -> list[SSequence]:
    """Every admissible S1 with terms in 1..bound and at least two terms."""
    _check_bound(bound)
    return [s for s in bounded_finite_sequences(bound) if len(s.finite_part) >= 2]


def gap_catalog(bound: int, width: float = GAP_WIDTH) -> GapCatalog:
    gaps = parallel_map(lambda s1: gap_for(s1, width), catalog_sequences(bound))
    gaps.sort(key=lambda g: g.left.point)
    return GapCatalog(bound, tuple(gaps), verify_disjoint(gaps))


@dataclass(frozen=True)
class GapMeasure:
    bound: int
    gap_count: int
    total_length: float
    lower_conf: float
    upper_conf: float
    target: float = GAP_MEASURE_TARGET
    note: str = CONJECTURE_NOTE

    @property
    def fraction_of_target(self) -> float:
        return self.total_length / self.target


def gap_measure(bound: int, width: float = GAP_WIDTH) -> GapMeasure:
    """Summed gap length over the catalog, with a band from the endpoint brackets."""
    catalog = gap_catalog(bound, width)
    return GapMeasure(
        bound=bound,
        gap_count=len(catalog),
        total_length=catalog.total_length,
        lower_conf=math.fsum(g.right.lo - g.left.hi for g in catalog.gaps),
        upper_conf=math.fsum(g.right.hi - g.left.lo for g in catalog.gaps),
    )


@dataclass(frozen=True)
class Intrusion:
    sequence: SSequence
    gap: GapInterval
    bracket: DensityBracket


def find_gap_intrusions(
    sequences, gaps, width: float = GAP_WIDTH
) -> list[Intrusion]:
    """Sequences whose density bracket lands strictly inside some gap.

    The test is bracket-aware: a density counts as outside a gap when its
    bracket reaches the left endpoint's bracket or the right one's, up to the
    combined bracket widths.
    """
    out = []
    for s in sequences:
        h = density(s, width=width)
        for g in getattr(gaps, "gaps", gaps):
            eps = h.width + g.uncertainty
            if h.hi <= g.left.hi + eps or h.lo >= g.right.lo - eps:
                continue
            out.append(Intrusion(s, g, h))
    return out


def avoidance_sequences(max_term: int) -> list[SSequence]:
    """Explicit finite and cofinite-tail sequences with terms and tail start <= max_term."""
    return bounded_finite_sequences(max_term) + bounded_cofinite_sequences(max_term)


def finite_pairs(max_term: int):
    """Every unordered pair of distinct finite sequences with terms <= max_term."""
    return combinations(bounded_finite_sequences(max_term), 2)
