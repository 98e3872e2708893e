"""Densities of exponentially S-numbers.

An integer is an exponentially S-number when every exponent in its prime
factorization belongs to S. This package evaluates the density of such
integers with certified brackets, counts them with a sieve, and builds the
catalog of gaps in the set of all such densities.
"""

from .density import DensityBracket, density, local_factor, local_factor_closed, tail_bounds
from .enumeration import CountReport, enumerate_members, envelope, is_member, sieve_count
from .gaps import (
    GapCatalog,
    GapInterval,
    berend_gap,
    compare,
    gap_catalog,
    gap_for,
    gap_measure,
    verify_disjoint,
)
from .primes import PrimeTable, factor_exponents, primes_up_to
from .sequences import SSequence, contains, delta, first_divergence, parse_descriptor, partial

__all__ = [
    "CountReport", "DensityBracket", "GapCatalog", "GapInterval", "PrimeTable", "SSequence",
    "berend_gap", "compare", "contains", "delta", "density", "enumerate_members", "envelope",
    "factor_exponents", "first_divergence", "gap_catalog", "gap_for", "gap_measure",
    "is_member", "local_factor", "local_factor_closed", "parse_descriptor", "partial",
    "primes_up_to", "sieve_count", "tail_bounds", "verify_disjoint",
]
