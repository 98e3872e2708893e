"""Numerical checks of the density ordering, gap and convergence results.

Each suite returns a SuiteResult carrying the first counterexample found.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from .density import density
from .enumeration import enumerate_members
from .gaps import Disjointness, Ordering, compare, finite_pairs, gap_catalog
from .sequences import SSequence, parse_descriptor, partial

OEIS_FIXTURES = {
    "A005117": "finite:1",
    "A004709": "finite:1,2",
    "A268335": "named:odd",
    "A138302": "named:pow2",
}


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int
    counterexample: str | None = None
    details: list[str] = field(default_factory=list)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.name}: {self.checked} checks"
        if self.counterexample:
            line += f"; first counterexample: {self.counterexample}"
        return line


def ordering(max_term: int = 6, width: float = 1e-10) -> SuiteResult:
    """Comparator verdict against bracket order for every pair of finite sequences."""
    checked = 0
    for a, b in finite_pairs(max_term):
        ha, hb = density(a, width=width), density(b, width=width)
        verdict = compare(a, b)
        hi, lo = (ha, hb) if verdict is Ordering.A_GREATER else (hb, ha)
        checked += 1
        if not (ha.meets_target and hb.meets_target and lo.hi < hi.lo):
            return SuiteResult(
                "lemma4", False, checked,
                f"{a} vs {b}: verdict {verdict.value}, brackets "
                f"[{ha.lo!r}, {ha.hi!r}] and [{hb.lo!r}, {hb.hi!r}]",
            )
    return SuiteResult("lemma4", True, checked)


def disjoint(max_term: int = 6, width: float = 1e-9) -> SuiteResult:
    catalog = gap_catalog(max_term, width)
    expected = 2 ** (max_term - 1) - 1
    result = catalog.disjointness
    if len(catalog) != expected:
        return SuiteResult("disjoint", False, len(catalog), f"expected {expected} gaps, got {len(catalog)}")
    if result.status is not Disjointness.DISJOINT:
        return SuiteResult("disjoint", False, len(catalog), f"{result.status.value}: {result.message}")
    return SuiteResult("disjoint", True, len(catalog), details=[f"{len(catalog)} gaps pairwise disjoint"])


def convergence(
    family: str = "odd", n_decreasing: int = 10, n_final: int = 12,
    final_tol: float = 1e-6, width: float = 1e-9,
) -> SuiteResult:
    """Partial sequences approach S from below; cofinite extensions bound it from above."""
    s = SSequence.named(family)
    h = density(s, width=width)
    dist = {}
    for n in range(2, n_final + 1):
        hn = density(partial(s, n), width=width)
        dist[n] = abs(hn.point - h.point)
    details = [f"n={n}: |h(S_n) - h(S)| = {d:.6e}" for n, d in dist.items()]
    checked = 0
    for n in range(2, n_decreasing):
        checked += 1
        if not dist[n + 1] < dist[n]:
            return SuiteResult("convergence", False, checked, f"distance did not drop from n={n} to n={n + 1}", details)
    checked += 1
    if not dist[n_final] < final_tol:
        return SuiteResult("convergence", False, checked, f"distance {dist[n_final]:.3e} at n={n_final}", details)
    for n in range(1, n_decreasing + 1):
        head = partial(s, n + 1)
        star = SSequence.cofinite(head.finite_part[:-1], head.finite_part[-1])
        below, above = density(head, width=width), density(star, width=width)
        checked += 1
        if not (below.hi <= h.lo and h.hi <= above.lo):
            return SuiteResult(
                "convergence", False, checked,
                f"h({head}) <= h({s}) <= h({star}) not certified", details,
            )
    return SuiteResult("convergence", True, checked, details=details)


def load_fixture(a_number: str) -> list[int]:
    text = resources.files("esnd").joinpath("fixtures").joinpath(f"{a_number}.txt").read_text()
    return [int(line) for line in text.split()]


def oeis() -> SuiteResult:
    """First terms of E(S) against stored OEIS prefixes."""
    checked = 0
    for a_number, descriptor in OEIS_FIXTURES.items():
        expected = load_fixture(a_number)
        got = enumerate_members(parse_descriptor(descriptor), expected[-1])
        checked += 1
        if got != expected:
            i = next((i for i, (g, e) in enumerate(zip(got, expected)) if g != e), min(len(got), len(expected)))
            return SuiteResult(
                "oeis", False, checked,
                f"{a_number} ({descriptor}) differs at term {i + 1}: "
                f"got {got[i:i + 3]}, expected {expected[i:i + 3]}",
            )
    return SuiteResult("oeis", True, checked)


SUITES = {
    "lemma4": ordering,
    "disjoint": disjoint,
    "convergence": convergence,
    "oeis": oeis,
}
