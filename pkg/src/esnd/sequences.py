"""Exponent sequences: increasing sequences of positive integers beginning with 1.

Only finitely describable sequences are supported: an explicit finite set, a
finite prefix followed by every integer from some point on (a cofinite tail),
or one of a handful of named infinite families.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import count, islice
from math import isqrt
from typing import Iterator, NamedTuple

NAMED_FAMILIES = ("all", "odd", "pow2", "squares", "fibonacci", "squarefree")

DIVERGENCE_SCAN_CAP = 10**6


class DescriptorError(ValueError):
    """Raised for malformed or invalid sequence descriptors."""


class IdenticalSequencesError(ValueError):
    """Raised when two descriptors denote the same set (or agree up to the scan cap)."""


class Kind(enum.Enum):
    EXPLICIT_FINITE = "finite"
    COFINITE_TAIL = "cofinite"
    NAMED = "named"


def _is_square(n: int) -> bool:
    r = isqrt(n)
    return r * r == n


def _is_fibonacci(n: int) -> bool:
    return _is_square(5 * n * n + 4) or _is_square(5 * n * n - 4)


def _is_squarefree(n: int) -> bool:
    # d*d | n for composite d implies p*p | n for a prime p | d
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1 if d == 2 else 2
    return True


_NAMED_MEMBERSHIP = {
    "all": lambda n: True,
    "odd": lambda n: n % 2 == 1,
    "pow2": lambda n: n & (n - 1) == 0,
    "squares": _is_square,
    "fibonacci": _is_fibonacci,
    "squarefree": _is_squarefree,
}


@dataclass(frozen=True)
class SSequence:
    """A finitely described element of the set of admissible exponent sequences.

    Build instances with :meth:`finite`, :meth:`cofinite`, :meth:`named` or
    :func:`parse_descriptor`; these canonicalize, so equal sets given in the same
    kind compare equal.
    """

    kind: Kind
    finite_part: tuple[int, ...] = ()
    tail_start: int | None = None
    name: str | None = None

    @classmethod
    def finite(cls, terms) -> SSequence:
        terms = _check_terms(terms)
        if not terms or terms[0] != 1:
            raise DescriptorError("sequence must contain 1")
        return cls(Kind.EXPLICIT_FINITE, tuple(terms))

    @classmethod
    def cofinite(cls, terms, tail_start: int) -> SSequence:
        terms = _check_terms(terms)
        if tail_start < 1:
            raise DescriptorError(f"tail start must be >= 1, got {tail_start}")
        terms = [t for t in terms if t < tail_start]
        while terms and terms[-1] == tail_start - 1:
            terms.pop()
            tail_start -= 1
        if tail_start > 1 and (not terms or terms[0] != 1):
            raise DescriptorError("sequence must contain 1")
        return cls(Kind.COFINITE_TAIL, tuple(terms), tail_start)

    @classmethod
    def named(cls, name: str) -> SSequence:
        if name not in NAMED_FAMILIES:
            raise DescriptorError(
                f"unknown family {name!r}; expected one of {', '.join(NAMED_FAMILIES)}"
            )
        return cls(Kind.NAMED, name=name)

    def __contains__(self, n: int) -> bool:
        return contains(self, n)

    def __str__(self) -> str:
        return format_descriptor(self)

    @property
    def is_finite(self) -> bool:
        return self.kind is Kind.EXPLICIT_FINITE

    @cached_property
    def horizon(self) -> int | None:
        """Index beyond which u is constant, or None for sequences without one."""
        if self.kind is Kind.EXPLICIT_FINITE:
            return self.finite_part[-1]
        if self.kind is Kind.COFINITE_TAIL:
            return self.tail_start
        return 1 if self.name == "all" else None

    def terms(self) -> Iterator[int]:
        """Iterate the members in increasing order."""
        if self.kind is Kind.EXPLICIT_FINITE:
            yield from self.finite_part
        elif self.kind is Kind.COFINITE_TAIL:
            yield from self.finite_part
            yield from count(self.tail_start)
        else:
            member = _NAMED_MEMBERSHIP[self.name]
            yield from (n for n in count(1) if member(n))

    def change_points(self) -> tuple[tuple[int, int], ...]:
        """The pairs (i, u(i) - u(i-1)) with i >= 2 and a nonzero difference.

        Only defined for sequences with a horizon; named infinite families have
        infinitely many change points.
        """
        if self.horizon is None:
            raise ValueError(f"{self} has infinitely many change points")
        return self._change_points

    @cached_property
    def _change_points(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, d) for i in range(2, self.horizon + 2) if (d := delta(self, i)))


def _check_terms(terms) -> list[int]:
    terms = [int(t) for t in terms]
    if any(t < 1 for t in terms):
        raise DescriptorError("terms must be positive integers")
    if any(b <= a for a, b in zip(terms, terms[1:])):
        raise DescriptorError("terms must be strictly increasing without duplicates")
    return terms


_INT_LIST = r"\s*(\d+(?:\s*,\s*\d+)*)?\s*"
_FINITE_RE = re.compile(rf"finite:{_INT_LIST}")
_COFINITE_RE = re.compile(rf"cofinite:{_INT_LIST};\s*tail\s*=\s*(\d+)\s*")


def _ints(group: str | None) -> list[int]:
    return [int(t) for t in group.split(",")] if group else []


def parse_descriptor(text: str) -> SSequence:
    """Parse ``finite:1,2,5``, ``cofinite:1,2;tail=4``, ``named:odd`` or ``odd``."""
    text = text.strip()
    if m := _FINITE_RE.fullmatch(text):
        return SSequence.finite(_ints(m.group(1)))
    if m := _COFINITE_RE.fullmatch(text):
        return SSequence.cofinite(_ints(m.group(1)), int(m.group(2)))
    name = text.removeprefix("named:")
    if name in NAMED_FAMILIES:
        return SSequence.named(name)
    raise DescriptorError(f"cannot parse sequence descriptor {text!r}")


def format_descriptor(s: SSequence) -> str:
    body = ",".join(map(str, s.finite_part))
    if s.kind is Kind.EXPLICIT_FINITE:
        return f"finite:{body}"
    if s.kind is Kind.COFINITE_TAIL:
        return f"cofinite:{body};tail={s.tail_start}"
    return f"named:{s.name}"


def contains(s: SSequence, n: int) -> bool:
    """Characteristic function u(n)."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if s.kind is Kind.NAMED:
        return _NAMED_MEMBERSHIP[s.name](n)
    if s.kind is Kind.COFINITE_TAIL and n >= s.tail_start:
        return True
    return n in s.finite_part


def delta(s: SSequence, i: int) -> int:
    """u(i) - u(i-1), the numerator of the i-th term of a local Euler factor."""
    if i < 2:
        raise ValueError(f"i must be >= 2, got {i}")
    return int(contains(s, i)) - int(contains(s, i - 1))


class Divergence(NamedTuple):
    s_star: int
    owner: str  # "A" or "B"


def first_divergence(
    a: SSequence, b: SSequence, cap: int = DIVERGENCE_SCAN_CAP
) -> Divergence:
    """Smallest integer in exactly one of ``a`` and ``b``, and which one holds it."""
    if a == b:
        raise IdenticalSequencesError(f"{a} and {b} are identical")
    if a.horizon is not None and b.horizon is not None:
        stop = max(a.horizon, b.horizon) + 1
    else:
        stop = cap
    for i in range(2, stop + 1):
        in_a, in_b = contains(a, i), contains(b, i)
        if in_a != in_b:
            return Divergence(i, "A" if in_a else "B")
    if stop < cap:
        raise IdenticalSequencesError(f"{a} and {b} denote the same set")
    raise IdenticalSequencesError(f"{a} and {b} agree on 1..{cap}")


def partial(s: SSequence, n: int) -> SSequence:
    """The n-partial sequence: the first n terms as an explicit finite sequence."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    head = list(islice(s.terms(), n))
    if len(head) < n:
        raise ValueError(f"{s} has only {len(head)} terms, cannot take {n}")
    return SSequence.finite(head)


def bounded_finite_sequences(max_term: int) -> list[SSequence]:
    """All explicit finite sequences with terms in 1..max_term, in binary order."""
    rest = range(2, max_term + 1)
    out = []
    for mask in range(1 << len(rest)):
        out.append(SSequence.finite([1] + [t for j, t in enumerate(rest) if mask >> j & 1]))
    return out


def bounded_cofinite_sequences(max_tail: int) -> list[SSequence]:
    """All canonical cofinite-tail sequences with tail start at most ``max_tail``."""
    out = [SSequence.cofinite([], 1)]
    for m in range(3, max_tail + 1):
        for s in bounded_finite_sequences(m - 2):
            out.append(SSequence.cofinite(s.finite_part, m))
    return out
