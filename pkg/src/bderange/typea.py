"""Ordinary derangement and Eulerian polynomials, used as cross-checks.

Two Eulerian conventions are kept apart on purpose:

* ``A_n^exc(q) = sum_{S_n} q^exc``, ``A_0^exc = 1``. This is the one that makes
  ``d_n = sum (-1)^(n-k) C(n,k) A_k`` hold (``d_1 = 0`` forces it).
* ``Â_n(q) = sum_{S_n} q^(des+1) = q A_n^exc(q)`` for ``n >= 1``, with ``Â_0 = 1``.
  This is the one with EGF ``(1-q) e^{qt} / (e^{qt} - q e^t)``.
"""

from __future__ import annotations

from math import comb

from .analysis import InterlacingWitness, check_interlacing
from .polyseries import EgfSeries, IntPolynomial, egf_exp_linear
from .sigperm import Statistic, histogram
from .typeb import PolynomialFamily, Provenance, prime_cycle_weight_series

__all__ = [
    "derangement_a",
    "eulerian_a",
    "eulerian_a_exc",
    "eulerian_a_des1",
    "derangement_a_by_enumeration",
    "eulerian_a_exc_by_enumeration",
    "eulerian_a_des1_by_enumeration",
    "binomial_check_a",
    "egf_check_typea",
    "interlacing_check_a",
    "is_palindromic",
]

Q = IntPolynomial.q()


def _derangement_a_step(d: list[IntPolynomial], n: int) -> IntPolynomial:
    if n == 0:
        return IntPolynomial.one()
    if n == 1:
        return IntPolynomial.zero()
    prev = d[n - 1]
    return prev.shift(1).scale(n - 1) + (Q * (1 - Q)) * prev.derivative() + d[n - 2].shift(1).scale(n - 1)


def _eulerian_exc_step(a: list[IntPolynomial], n: int) -> IntPolynomial:
    acc = IntPolynomial.zero()
    for k in range(n + 1):
        acc = acc + DERANGEMENT_A[k].scale(comb(n, k))
    return acc


DERANGEMENT_A = PolynomialFamily("derangement_a", Provenance.RECURRENCE, _derangement_a_step)
EULERIAN_A_EXC = PolynomialFamily("eulerian_a_exc", Provenance.BINOMIAL_SUM, _eulerian_exc_step)


def derangement_a(n: int) -> IntPolynomial:
    """``d_n(q)`` from ``d_n = (n-1)q d_{n-1} + q(1-q) d'_{n-1} + (n-1)q d_{n-2}``.

    >>> print(derangement_a(4))
    q+7q^2+q^3
    """
    return DERANGEMENT_A[n]


def eulerian_a_exc(n: int) -> IntPolynomial:
    """``A_n^exc = sum_k C(n,k) d_k`` (binomial inverse of the derangement formula)."""
    return EULERIAN_A_EXC[n]


eulerian_a = eulerian_a_exc


def eulerian_a_des1(n: int) -> IntPolynomial:
    return IntPolynomial.one() if n == 0 else eulerian_a_exc(n).shift(1)


def derangement_a_by_enumeration(n: int) -> IntPolynomial:
    return histogram(n, Statistic.EXC_A, True).to_polynomial() if n else IntPolynomial.one()


def eulerian_a_exc_by_enumeration(n: int) -> IntPolynomial:
    return histogram(n, Statistic.EXC_A).to_polynomial() if n else IntPolynomial.one()


def eulerian_a_des1_by_enumeration(n: int) -> IntPolynomial:
    if n == 0:
        return IntPolynomial.one()
    return histogram(n, Statistic.DES_A).to_polynomial().shift(1)


def binomial_check_a(n: int) -> bool:
    """Whether ``d_n = sum_k (-1)^(n-k) C(n,k) A_k^exc`` holds exactly."""
    acc = IntPolynomial.zero()
    for k in range(n + 1):
        acc = acc + eulerian_a_exc(k).scale((-1) ** (n - k) * comb(n, k))
    return acc == derangement_a(n)


def egf_check_typea(order: int = 12) -> tuple[bool, bool]:
    """The Eulerian and derangement EGFs, cross-multiplied through ``order``.

    ``(sum Â_n t^n/n!) (e^{qt} - q e^t) == (1-q) e^{qt}`` and
    ``(sum d_n t^n/n!) (1 - sum_{m>=2} (q+...+q^{m-1}) t^m/m!) == 1``.
    """
    a_hat = EgfSeries.from_function(eulerian_a_des1, order)
    e_qt = egf_exp_linear(1, 1, order)
    eulerian_ok = a_hat * (e_qt - egf_exp_linear(1, 0, order) * Q) == e_qt * (1 - Q)
    d = EgfSeries.from_function(derangement_a, order)
    derangement_ok = d * (EgfSeries.one(order) - prime_cycle_weight_series(order, base=1)) == EgfSeries.one(order)
    return eulerian_ok, derangement_ok


def interlacing_check_a(n: int) -> InterlacingWitness:
    """Negative roots of ``d_n/q`` and ``d_{n-1}/q`` are simple and interleave.

    ``d_n`` has degree ``n - 1``, so there are ``n - 1`` roots counting ``0``.
    """
    if n < 2:
        raise ValueError("interlacing is stated for n >= 2")
    f = derangement_a(n).divide_by_q()
    if n == 2:
        # d_2 = q: the only root is 0 and there is nothing to interleave
        return InterlacingWitness(n, 0, [], [])
    return check_interlacing(f, derangement_a(n - 1).divide_by_q(), n)


def is_palindromic(p: IntPolynomial) -> bool:
    """Coefficient vector of ``p / q^m`` (``m`` = lowest degree) reads the same reversed."""
    if p.is_zero():
        return True
    c = p.coeffs[p.lowest_degree():]
    return c == c[::-1]
