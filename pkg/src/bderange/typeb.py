"""Type B Eulerian polynomials ``B_n(q)`` and derangement polynomials ``d_n^B(q)``.

``d_n^B`` is available by three independent routes:

* enumeration of excedances over signed derangements (:func:`derangement_b_by_enumeration`),
* the three-term recurrence in ``n`` (:func:`derangement_b`),
* the alternating binomial sum of Eulerian polynomials (:func:`derangement_b_by_binomial`).

plus the coefficient triangle ``d_{n,k}`` built directly from its own
recurrence (:func:`derangement_coeff_table`). The check functions compare these
against each other and against the generating functions.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass, field
from math import comb
from typing import Callable

from .polyseries import EgfSeries, IntPolynomial, egf_exp_linear, egf_poly_arg_exp
from .sigperm import Statistic, histogram

__all__ = [
    "FamilyKind",
    "Provenance",
    "PolynomialFamily",
    "eulerian_b",
    "derangement_b",
    "derangement_b_by_binomial",
    "derangement_b_by_enumeration",
    "eulerian_b_by_enumeration",
    "derangement_coeff_table",
    "binomial_convolution_check",
    "eulerian_b_series",
    "derangement_b_series",
    "prime_cycle_weight_series",
    "egf_check_eulerian_b",
    "egf_check_derangement_b",
    "SpiralWitness",
    "spiral_chain",
    "spiral_check",
    "EquidistributionWitness",
    "equidistribution_check",
    "family_json",
    "triangle_csv",
    "DEFAULT_EGF_ORDER",
]

DEFAULT_EGF_ORDER = 12

Q = IntPolynomial.q()
ONE_MINUS_Q = 1 - Q


class FamilyKind(str, enum.Enum):
    EULERIAN_B = "eulerian_b"
    DERANGEMENT_B = "derangement_b"


class Provenance(str, enum.Enum):
    ENUMERATION = "enumeration"
    RECURRENCE = "recurrence"
    BINOMIAL_SUM = "binomial_sum"


class PolynomialFamily:
    """Memoised sequence ``members[0], members[1], ...`` grown on demand.

    ``step(members, n)`` returns member ``n`` given all earlier ones. Members
    are never recomputed, so asking for ``n = 200`` after ``n = 199`` costs a
    single step.
    """

    def __init__(
        self,
        kind: str,
        provenance: Provenance,
        step: Callable[[list[IntPolynomial], int], IntPolynomial],
    ):
        self.kind = kind
        self.provenance = provenance
        self._step = step
        self.members: list[IntPolynomial] = []

    def __getitem__(self, n: int) -> IntPolynomial:
        if n < 0:
            raise ValueError("n must be nonnegative")
        while len(self.members) <= n:
            self.members.append(self._step(self.members, len(self.members)))
        return self.members[n]

    def clear(self) -> None:
        """Drop the memoised members (useful for cold-start timing)."""
        self.members.clear()

    def __repr__(self) -> str:
        return f"PolynomialFamily({self.kind!s}, {self.provenance.value}, computed={len(self.members)})"


def _eulerian_b_step(b: list[IntPolynomial], n: int) -> IntPolynomial:
    if n == 0:
        return IntPolynomial.one()
    prev = b[n - 1]
    return (IntPolynomial([1, 2 * n - 1]) * prev) + (2 * Q * ONE_MINUS_Q) * prev.derivative()


def _derangement_b_step(d: list[IntPolynomial], n: int) -> IntPolynomial:
    if n == 0:
        return IntPolynomial.one()
    if n == 1:
        return Q
    prev = d[n - 1]
    return (
        prev.shift(1).scale(2 * n - 1)
        + (2 * Q * ONE_MINUS_Q) * prev.derivative()
        + d[n - 2].shift(1).scale(2 * (n - 1))
    )


def _binomial_step(d: list[IntPolynomial], n: int) -> IntPolynomial:
    acc = IntPolynomial.zero()
    for k in range(n + 1):
        sign = -1 if (n - k) % 2 else 1
        acc = acc + EULERIAN_B[k].scale(sign * comb(n, k))
    return acc


EULERIAN_B = PolynomialFamily(FamilyKind.EULERIAN_B, Provenance.RECURRENCE, _eulerian_b_step)
DERANGEMENT_B = PolynomialFamily(FamilyKind.DERANGEMENT_B, Provenance.RECURRENCE, _derangement_b_step)
DERANGEMENT_B_BINOMIAL = PolynomialFamily(FamilyKind.DERANGEMENT_B, Provenance.BINOMIAL_SUM, _binomial_step)


def eulerian_b(n: int) -> IntPolynomial:
    """``B_n(q)`` from ``B_n = ((2n-1)q + 1) B_{n-1} + 2q(1-q) B'_{n-1}``.

    >>> eulerian_b(2)
    IntPolynomial([1, 6, 1])
    """
    return EULERIAN_B[n]


def derangement_b(n: int) -> IntPolynomial:
    """``d_n^B(q)`` from the three-term recurrence.

    >>> print(derangement_b(4))
    16q+144q^2+72q^3+q^4
    """
    return DERANGEMENT_B[n]


def derangement_b_by_binomial(n: int) -> IntPolynomial:
    """``sum_k (-1)^(n-k) C(n,k) B_k(q)``."""
    return DERANGEMENT_B_BINOMIAL[n]


def derangement_b_by_enumeration(n: int, *, workers: int = 1) -> IntPolynomial:
    """``sum q^exc_B`` over signed derangements, by brute force (``n <= 9``)."""
    return histogram(n, Statistic.EXC_B, True, workers=workers).to_polynomial()


def eulerian_b_by_enumeration(n: int, *, workers: int = 1) -> IntPolynomial:
    return histogram(n, Statistic.DES_B, False, workers=workers).to_polynomial()


def derangement_coeff_table(n_max: int) -> list[list[int]]:
    """Rows ``[d_{n,0}, ..., d_{n,n}]`` for ``n = 0..n_max`` from the coefficient recurrence.

    ``d_{n,k} = 2k d_{n-1,k} + (2n-2k+1) d_{n-1,k-1} + 2(n-1) d_{n-2,k-1}``,
    seeded with ``d_0 = 1`` and ``d_1 = q``. Built independently of
    :func:`derangement_b`.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    rows = [[1], [0, 1]]

    def at(row: list[int], k: int) -> int:
        return row[k] if 0 <= k < len(row) else 0

    for n in range(2, n_max + 1):
        p, pp = rows[n - 1], rows[n - 2]
        row = [0] * (n + 1)
        for k in range(1, n + 1):
            row[k] = 2 * k * at(p, k) + (2 * n - 2 * k + 1) * at(p, k - 1) + 2 * (n - 1) * at(pp, k - 1)
        rows.append(row)
    return rows[: n_max + 1]


def binomial_convolution_check(n: int) -> bool:
    """Whether ``B_n(q) = sum_k C(n,k) d_k^B(q)`` holds exactly."""
    total = IntPolynomial.zero()
    for k in range(n + 1):
        total = total + derangement_b(k).scale(comb(n, k))
    return total == eulerian_b(n)


# -- generating functions ------------------------------------------------------


def eulerian_b_series(order: int, members: Callable[[int], IntPolynomial] = eulerian_b) -> EgfSeries:
    return EgfSeries.from_function(members, order)


def derangement_b_series(order: int, members: Callable[[int], IntPolynomial] = derangement_b) -> EgfSeries:
    return EgfSeries.from_function(members, order)


def prime_cycle_weight_series(order: int, base: int = 2) -> EgfSeries:
    """``sum_{m>=2} base^m (q + ... + q^(m-1)) t^m/m!``; ``base=1`` gives the type A series."""
    return EgfSeries.from_function(
        lambda m: IntPolynomial.geometric(1, m - 1).scale(base**m) if m >= 2 else IntPolynomial.zero(),
        order,
    )


def egf_check_eulerian_b(order: int = DEFAULT_EGF_ORDER, series: EgfSeries | None = None) -> bool:
    """``(sum B_n t^n/n!) (1 - q e^{2t(1-q)}) == (1-q) e^{t(1-q)}`` through ``order``."""
    b = series if series is not None else eulerian_b_series(order)
    lhs = b * (EgfSeries.one(b.order) - egf_poly_arg_exp(2 * ONE_MINUS_Q, b.order) * Q)
    rhs = egf_poly_arg_exp(ONE_MINUS_Q, b.order) * ONE_MINUS_Q
    return lhs == rhs


def egf_check_derangement_b(order: int = DEFAULT_EGF_ORDER, series: EgfSeries | None = None) -> bool:
    """Both closed forms of the ``d_n^B`` generating function, cross-multiplied.

    ``D (e^{2tq} - q e^{2t}) == (1-q) e^{tq}`` and
    ``D (1 - sum_{m>=2} 2^m (q+...+q^{m-1}) t^m/m!) == e^{tq}``.
    """
    d = series if series is not None else derangement_b_series(order)
    n = d.order
    e_tq = egf_exp_linear(1, 1, n)
    first = d * (egf_exp_linear(2, 1, n) - egf_exp_linear(2, 0, n) * Q) == e_tq * ONE_MINUS_Q
    second = d * (EgfSeries.one(n) - prime_cycle_weight_series(n)) == e_tq
    return first and second


# -- spiral property -----------------------------------------------------------


def spiral_chain(n: int) -> list[int]:
    """Indices ``n, 1, n-1, 2, n-2, ...`` in the order the spiral asserts increasing."""
    hi, lo, out = n, 1, []
    while lo <= hi:
        out.append(hi)
        if lo < hi:
            out.append(lo)
        hi, lo = hi - 1, lo + 1
    return out


@dataclass
class SpiralWitness:
    n: int
    chain: list[tuple[int, int]]  # (k, d_{n,k}) in asserted increasing order
    failures: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return not self.failures

    @property
    def holds(self) -> bool:
        return not self.failures


def spiral_check(n: int, row: list[int] | None = None) -> SpiralWitness:
    """Check ``d_{n,n+1-k} < d_{n,k} < d_{n,n-k}`` for ``1 <= k <= f(n)``, and
    ``d_{n,n/2+1} < d_{n,n/2}`` for even ``n``.

    ``f(n) = n/2 - 1`` for even ``n`` and ``(n-1)/2`` for odd ``n``. The witness
    chain lists the coefficients in spiral order.
    """
    if n < 2:
        raise ValueError("the spiral property is stated for n >= 2")
    d = row if row is not None else list(derangement_b(n).coeffs)
    at = lambda k: d[k] if 0 <= k < len(d) else 0  # noqa: E731
    f = n // 2 - 1 if n % 2 == 0 else (n - 1) // 2
    failures = []
    for k in range(1, f + 1):
        if not at(n + 1 - k) < at(k):
            failures.append(f"d[{n},{n + 1 - k}]={at(n + 1 - k)} !< d[{n},{k}]={at(k)}")
        if not at(k) < at(n - k):
            failures.append(f"d[{n},{k}]={at(k)} !< d[{n},{n - k}]={at(n - k)}")
    if n % 2 == 0 and not at(n // 2 + 1) < at(n // 2):
        failures.append(f"d[{n},{n // 2 + 1}]={at(n // 2 + 1)} !< d[{n},{n // 2}]={at(n // 2)}")
    return SpiralWitness(n, [(k, at(k)) for k in spiral_chain(n)], failures)


# -- equidistribution ----------------------------------------------------------


@dataclass
class EquidistributionWitness:
    n: int
    des_b: dict[int, int]
    exc_b: dict[int, int]

    @property
    def holds(self) -> bool:
        return self.des_b == self.exc_b

    def __bool__(self) -> bool:
        return self.holds


def equidistribution_check(n: int, *, workers: int = 1) -> EquidistributionWitness:
    """Compare the ``des_B`` and ``exc_B`` histograms over all of ``B_n``."""
    return EquidistributionWitness(
        n,
        histogram(n, Statistic.DES_B, workers=workers).counts,
        histogram(n, Statistic.EXC_B, workers=workers).counts,
    )


# -- export ----------------------------------------------------------------------


def family_json(kind: str, n_max: int, members: Callable[[int], IntPolynomial]) -> str:
    """One JSON object per member, coefficients as decimal strings."""
    records = [{"kind": str(getattr(kind, "value", kind)), "n": n, "coeffs": members(n).to_json()} for n in range(n_max + 1)]
    return json.dumps(records, indent=1)


def triangle_csv(rows: list[list[int]]) -> str:
    """``n,k,value`` rows of a coefficient triangle (all coefficients, zeros included)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "k", "value"])
    for n, row in enumerate(rows):
        for k, v in enumerate(row):
            w.writerow([n, k, v])
    return buf.getvalue()
