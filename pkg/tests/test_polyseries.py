from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bderange.polyseries import EgfSeries, IntPolynomial, egf_exp_linear, egf_mul, egf_poly_arg_exp

coeff_lists = st.lists(st.integers(-(10**30), 10**30), max_size=8)
polys = coeff_lists.map(IntPolynomial)


def test_canonical_stripping():
    assert IntPolynomial([1, 2, 0, 0]).coeffs == (1, 2)
    assert IntPolynomial([0, 0]).is_zero()
    assert IntPolynomial([]).degree == -1
    assert IntPolynomial([0, 0, 3]).lowest_degree() == 2


def test_text_forms():
    p = IntPolynomial([0, 8, 20, 1])
    assert p.to_compact() == "8q+20q^2+q^3"
    assert p.to_text() == "8*q + 20*q^2 + 1*q^3"
    assert str(IntPolynomial([1, -1])) == "1-q"
    assert str(IntPolynomial.zero()) == "0"


@pytest.mark.parametrize("text", ["q", "4q+q^2", "1-q", "-3+2q^5", "0", "1"])
def test_parse_roundtrip(text):
    assert IntPolynomial.parse(text).to_compact() == text


def test_json_keeps_big_integers_exact():
    big = 2**200 + 1
    p = IntPolynomial([big, -big])
    data = p.to_json()
    assert data == [str(big), str(-big)]
    assert IntPolynomial.from_json(data) == p


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == IntPolynomial.zero()
    assert a * IntPolynomial.one() == a


@given(polys, polys)
def test_leibniz_rule(a, b):
    assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


@given(polys, st.integers(-50, 50), st.integers(1, 50))
def test_rational_evaluation_matches_fraction_horner(p, num, den):
    x = Fraction(num, den)
    expected = sum((Fraction(c) * x**k for k, c in enumerate(p.coeffs)), Fraction(0))
    assert p.eval_at_rational(x) == expected
    assert p.sign_at(x) == (expected > 0) - (expected < 0)


@given(polys, st.integers(0, 4))
def test_shift_and_divide_are_inverse(p, k):
    assert p.shift(k).divide_by_q(k) == p


def test_divide_by_q_rejects_nonzero_low_terms():
    with pytest.raises(ValueError):
        IntPolynomial([1, 1]).divide_by_q()


def test_geometric_and_power():
    assert IntPolynomial.geometric(1, 3) == IntPolynomial([0, 1, 1, 1])
    assert (1 + IntPolynomial.q()) ** 3 == IntPolynomial([1, 3, 3, 1])


def series(draw_list):
    return EgfSeries(IntPolynomial(c) for c in draw_list)


egf6 = st.lists(coeff_lists, min_size=7, max_size=7).map(series)


@settings(max_examples=40)
@given(egf6, egf6, egf6)
def test_egf_product_is_associative_and_commutative(f, g, h):
    assert egf_mul(f, g) == egf_mul(g, f)
    assert egf_mul(egf_mul(f, g), h) == egf_mul(f, egf_mul(g, h))


def test_exponentials_multiply():
    # e^{qt} e^{t} = e^{(1+q)t}
    order = 10
    lhs = egf_exp_linear(1, 1, order) * egf_exp_linear(1, 0, order)
    assert lhs == egf_poly_arg_exp(1 + IntPolynomial.q(), order)


def test_order_mismatch_is_an_error():
    with pytest.raises(ValueError):
        egf_mul(EgfSeries.one(3), EgfSeries.one(4))


def test_first_mismatch():
    a = EgfSeries([1, 2, 3])
    assert a.first_mismatch(EgfSeries([1, 2, 4])) == 2
    assert a.first_mismatch(a) is None
