import pytest
from hypothesis import given
from hypothesis import strategies as st

from esnd.sequences import (
    NAMED_FAMILIES,
    DescriptorError,
    Divergence,
    IdenticalSequencesError,
    Kind,
    SSequence,
    bounded_cofinite_sequences,
    bounded_finite_sequences,
    contains,
    delta,
    first_divergence,
    format_descriptor,
    parse_descriptor,
    partial,
)

fin = SSequence.finite
cof = SSequence.cofinite
named = SSequence.named


def test_parse_examples():
    assert parse_descriptor("finite:1,2,5") == SSequence(Kind.EXPLICIT_FINITE, (1, 2, 5))
    s = parse_descriptor("cofinite:1;tail=3")
    assert s == SSequence(Kind.COFINITE_TAIL, (1,), 3)
    assert [contains(s, n) for n in range(1, 7)] == [True, False, True, True, True, True]
    assert parse_descriptor("odd") == parse_descriptor("named:odd") == named("odd")
    assert parse_descriptor("cofinite:;tail=1") == cof([], 1)


@pytest.mark.parametrize(
    "text",
    ["finite:2,3", "finite:", "finite:1,3,2", "finite:1,1", "cofinite:2;tail=5",
     "cofinite:1;tail=0", "named:primes", "evens", "finite 1,2", "finite:1,-2"],
)
def test_parse_rejects(text):
    with pytest.raises(DescriptorError):
        parse_descriptor(text)


def test_must_contain_one_message():
    with pytest.raises(DescriptorError, match="must contain 1"):
        parse_descriptor("finite:2,3")


def test_cofinite_canonical_form():
    # a last finite term adjacent to the tail is absorbed into it
    assert cof([1, 2, 3], 4) == cof([1], 2) == cof([], 1)
    assert cof([1, 3], 4) == cof([1], 3)
    assert str(cof([1, 2, 5], 6)) == "cofinite:1,2;tail=5"
    assert cof([1, 7], 5) == cof([1], 5)


def test_contains_examples():
    assert contains(fin([1, 2]), 2)
    assert not contains(named("odd"), 4)
    assert not contains(cof([1, 2], 4), 3)
    with pytest.raises(ValueError):
        contains(fin([1]), 0)


@pytest.mark.parametrize(
    "name, prefix",
    [
        ("all", [1, 2, 3, 4, 5, 6, 7, 8, 9, 10]),
        ("odd", [1, 3, 5, 7, 9, 11, 13, 15, 17, 19]),
        ("pow2", [1, 2, 4, 8, 16, 32, 64, 128, 256, 512]),
        ("squares", [1, 4, 9, 16, 25, 36, 49, 64, 81, 100]),
        ("fibonacci", [1, 2, 3, 5, 8, 13, 21, 34, 55, 89]),
        ("squarefree", [1, 2, 3, 5, 6, 7, 10, 11, 13, 14]),
    ],
)
def test_named_prefixes(name, prefix):
    assert partial(named(name), 10).finite_part == tuple(prefix)


def test_delta_examples():
    assert delta(fin([1]), 2) == -1
    assert delta(fin([1, 2]), 2) == 0
    assert delta(cof([1], 3), 3) == 1
    with pytest.raises(ValueError):
        delta(fin([1]), 1)


EVERY_KIND = [named(n) for n in NAMED_FAMILIES] + [fin([1, 2, 5]), fin([1]), cof([1, 3], 6)]


@pytest.mark.parametrize("s", EVERY_KIND, ids=str)
def test_delta_telescopes(s):
    running = 0
    for i in range(2, 10**4 + 1):
        running += delta(s, i)
        if i % 997 == 0 or i < 50:
            assert running == int(contains(s, i)) - 1


def test_first_divergence_examples():
    assert first_divergence(fin([1, 2, 4]), fin([1, 2, 3])) == Divergence(3, "B")
    assert first_divergence(fin([1]), fin([1, 2])) == Divergence(2, "B")
    assert first_divergence(named("odd"), named("squarefree")) == Divergence(2, "B")


def test_first_divergence_identical():
    with pytest.raises(IdenticalSequencesError):
        first_divergence(fin([1, 2]), fin([1, 2]))
    # different descriptors, same set
    with pytest.raises(IdenticalSequencesError):
        first_divergence(named("all"), cof([], 1))


def test_first_divergence_cap():
    with pytest.raises(IdenticalSequencesError, match="agree on 1..50"):
        first_divergence(named("odd"), cof(list(range(1, 200, 2)), 5000), cap=50)


def test_first_divergence_across_kinds():
    assert first_divergence(fin([1, 2, 3]), named("fibonacci")) == Divergence(5, "B")
    assert first_divergence(cof([1, 2], 4), named("squarefree")) == Divergence(3, "B")
    assert first_divergence(named("pow2"), named("squares")) == Divergence(2, "A")


def test_partial_examples():
    assert partial(named("odd"), 3) == fin([1, 3, 5])
    assert partial(fin([1, 2, 5]), 2) == fin([1, 2])
    with pytest.raises(ValueError):
        partial(fin([1, 2]), 5)
    assert partial(cof([1], 4), 4) == fin([1, 4, 5, 6])


def test_bounded_families():
    finite = bounded_finite_sequences(6)
    assert len(finite) == len(set(finite)) == 32
    cofinite = bounded_cofinite_sequences(8)
    assert len(cofinite) == len(set(cofinite)) == 64
    assert all(c.tail_start <= 8 for c in cofinite)


def sets_with_one(max_term=40):
    return st.sets(st.integers(2, max_term)).map(lambda s: [1] + sorted(s))


descriptors = st.one_of(
    sets_with_one().map(fin),
    st.tuples(sets_with_one(), st.integers(1, 45)).map(
        lambda t: cof([x for x in t[0] if x < t[1]] if t[1] > 1 else [], t[1])
    ),
    st.sampled_from(NAMED_FAMILIES).map(named),
)


@given(descriptors)
def test_format_parse_round_trip(s):
    assert parse_descriptor(format_descriptor(s)) == s


@given(descriptors, descriptors)
def test_first_divergence_symmetric(a, b):
    try:
        d = first_divergence(a, b)
    except IdenticalSequencesError:
        with pytest.raises(IdenticalSequencesError):
            first_divergence(b, a)
        return
    e = first_divergence(b, a)
    assert d.s_star == e.s_star >= 2
    assert {d.owner, e.owner} == {"A", "B"}
    assert contains(a, d.s_star) != contains(b, d.s_star)
    assert all(contains(a, i) == contains(b, i) for i in range(1, d.s_star))
