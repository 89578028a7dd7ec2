import pytest

from bderange import typea
from bderange.polyseries import IntPolynomial


# ordinary derangement numbers 1, 0, 1, 2, 9, 44, 265
@pytest.mark.parametrize("n,count", [(0, 1), (1, 0), (2, 1), (3, 2), (4, 9), (5, 44), (6, 265)])
def test_derangement_counts(n, count):
    assert typea.derangement_a(n)(1) == count


def test_known_members():
    assert typea.derangement_a(4) == IntPolynomial([0, 1, 7, 1])
    assert typea.eulerian_a_exc(3) == IntPolynomial([1, 4, 1])
    assert typea.eulerian_a_des1(3) == IntPolynomial([0, 1, 4, 1])
    assert typea.eulerian_a_des1(0) == IntPolynomial.one()


@pytest.mark.parametrize("n", range(0, 8))
def test_enumeration_agrees(n):
    assert typea.derangement_a_by_enumeration(n) == typea.derangement_a(n)
    assert typea.eulerian_a_exc_by_enumeration(n) == typea.eulerian_a_exc(n)
    assert typea.eulerian_a_des1_by_enumeration(n) == typea.eulerian_a_des1(n)


def test_binomial_formula():
    assert all(typea.binomial_check_a(n) for n in range(21))


def test_palindromic():
    assert all(typea.is_palindromic(typea.derangement_a(n)) for n in range(2, 60))
    assert not typea.is_palindromic(IntPolynomial([0, 1, 2]))


def test_egf():
    assert typea.egf_check_typea(12) == (True, True)


@pytest.mark.parametrize("n", range(2, 12))
def test_interlacing(n):
    w = typea.interlacing_check_a(n)
    assert w.holds, w.failures
    # d_n has degree n - 1: one root at 0 and n - 2 negative ones
    assert typea.derangement_a(n).degree == n - 1
