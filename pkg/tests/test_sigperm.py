import math
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bderange.sigperm import (
    ENUMERATION_CAP,
    EnumerationCapError,
    SignedPermutation,
    Statistic,
    asc_b,
    des_b,
    enumerate_derangements_b,
    enumerate_group,
    enumerate_symmetric,
    exc_a,
    exc_b,
    fixed_points,
    histogram,
    is_derangement_b,
    parse_signed_permutation,
    wexc_b,
)

PI = (3, -5, 4, 2, 9, -6, 8, 7, -1)


@st.composite
def signed_perms(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    perm = draw(st.permutations(range(1, n + 1)))
    signs = draw(st.lists(st.sampled_from((-1, 1)), min_size=n, max_size=n))
    return SignedPermutation([s * v for s, v in zip(signs, perm)])


def test_worked_example_statistics():
    assert exc_b(PI) == 5
    assert wexc_b(PI) == 4
    assert is_derangement_b(PI)


@pytest.mark.parametrize("text", ["3,-1,2", "3, -1, 2", "3,1̄,2"])
def test_parse_forms(text):
    assert parse_signed_permutation(text) == (3, -1, 2)


@pytest.mark.parametrize("bad", ["1,1", "0,1", "1,3", "a,b", "1,-1", "1 2"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_signed_permutation(bad)


def test_text_roundtrip():
    assert parse_signed_permutation(SignedPermutation(PI).to_text()) == PI


@pytest.mark.parametrize("n", range(0, 6))
def test_group_sizes(n):
    group = list(enumerate_group(n))
    assert len(group) == 2**n * math.factorial(n)
    assert len(set(group)) == len(group)
    assert len(list(enumerate_symmetric(n))) == math.factorial(n)


def test_generator_order_is_signed_lexicographic():
    assert list(enumerate_group(1)) == [(-1,), (1,)]
    two = list(enumerate_group(2))
    assert two == sorted(two)


# B_n derangement counts 1, 1, 5, 29, 233, 2329, 27949
@pytest.mark.parametrize("n,count", [(0, 1), (1, 1), (2, 5), (3, 29), (4, 233), (5, 2329)])
def test_derangement_counts(n, count):
    assert sum(1 for _ in enumerate_derangements_b(n)) == count


@given(signed_perms())
def test_statistic_definitions_against_set_builders(s):
    n = len(s)
    tail = {i for i in range(1, n + 1) if s[abs(s[i - 1]) - 1] > s[i - 1]}
    neg_fix = {i for i in range(1, n + 1) if s[i - 1] == -i}
    fix = {i for i in range(1, n + 1) if s[i - 1] == i}
    assert exc_b(s) == len(neg_fix | tail)
    assert wexc_b(s) == len(fix | tail)
    assert wexc_b(s) - exc_b(s) == len(fix) - len(neg_fix)
    assert des_b(s) + asc_b(s) == n
    assert fixed_points(s) == frozenset(fix)


@given(signed_perms())
def test_type_a_exc_agrees_with_type_b_on_positive_perms(s):
    p = tuple(abs(v) for v in s)
    # with no bars, sigma_{sigma_i} > sigma_i counts the same per cycle as sigma_i > i
    assert exc_a(p) == sum(1 for i, v in enumerate(p, 1) if v > i)
    assert exc_b(p) == exc_a(p)


@pytest.mark.parametrize("stat", list(Statistic))
@pytest.mark.parametrize("n", range(0, 6))
def test_numpy_histogram_matches_generator(stat, n):
    source = (tuple(p) for p in enumerate_symmetric(n)) if stat.is_type_a else enumerate_group(n)
    expected = Counter(stat.function(s) for s in source)
    assert histogram(n, stat).counts == dict(sorted(expected.items()))


@pytest.mark.parametrize("n", range(0, 6))
def test_derangement_histogram_matches_generator(n):
    expected = Counter(exc_b(s) for s in enumerate_derangements_b(n))
    assert histogram(n, "exc_b", True).counts == dict(sorted(expected.items()))


def test_parallel_histogram_is_identical():
    assert histogram(6, "exc_b", True, workers=2).counts == histogram(6, "exc_b", True).counts


@pytest.mark.parametrize("n", range(1, 7))
def test_exc_wexc_des_equidistributed(n):
    group = list(enumerate_group(n))
    e = Counter(map(exc_b, group))
    assert e == Counter(map(wexc_b, group)) == Counter(map(des_b, group))


def test_enumeration_cap():
    with pytest.raises(EnumerationCapError):
        histogram(ENUMERATION_CAP + 1, "exc_b")
    with pytest.raises(EnumerationCapError):
        next(enumerate_group(ENUMERATION_CAP + 1))


def test_histogram_totals_and_merge():
    h = histogram(4, "exc_b", True)
    assert h.total == 233
    assert h.expected_total() is None
    assert histogram(4, "exc_b").expected_total() == histogram(4, "exc_b").total == 384
    assert h.merge(h).total == 466
    with pytest.raises(ValueError):
        h.merge(histogram(4, "des_b"))
