"""Roots, derivatives at ``q = 1``, moments and normal approximation of ``d_n^B``.

Real-rootedness and interlacing are certified with Sturm chains over the
integers (signed pseudo-remainders) and bisection on rational endpoints; no
floating point enters that path. Moments are exact :class:`~fractions.Fraction`
values. Only the normal CDF uses ``mpmath``, at 40 significant digits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

import mpmath

from .polyseries import IntPolynomial
from .typeb import derangement_b, derangement_coeff_table, eulerian_b

__all__ = [
    "NotSquarefreeError",
    "s_value",
    "ClosedFormReport",
    "closed_form_checks",
    "MomentReport",
    "moments",
    "sturm_chain",
    "sturm_root_count",
    "RootIsolation",
    "isolate_roots",
    "InterlacingWitness",
    "check_interlacing",
    "interlacing_check",
    "NormalityReport",
    "normality_report",
    "standard_normal_cdf",
]

Q = IntPolynomial.q()


class NotSquarefreeError(ValueError):
    def __init__(self, poly: IntPolynomial, gcd: IntPolynomial):
        super().__init__(f"{poly} is not squarefree: gcd(p, p') ~ {gcd}")
        self.poly = poly
        self.gcd = gcd


# -- s_n and closed forms ---------------------------------------------------------


def s_value(m: int) -> Fraction:
    """``sum_{k=0}^m (-1)^k / (2^k k!)``, and ``0`` for ``m < 0``.

    >>> s_value(3)
    Fraction(29, 48)
    """
    total = Fraction(0)
    for k in range(m + 1):
        total += Fraction((-1) ** k, 2**k * factorial(k))
    return total


def _alt_binomial_sum(n: int, values) -> int:
    return sum((-1) ** (n - k) * comb(n, k) * values(k) for k in range(n + 1))


@dataclass
class ClosedFormReport:
    n_max: int
    checked: int = 0
    mismatches: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def record(self, name: str, n: int, lhs, rhs) -> None:
        self.checked += 1
        if lhs != rhs:
            self.mismatches.append(f"{name} n={n}: {lhs} != {rhs}")


def closed_form_checks(n_max: int) -> ClosedFormReport:
    """Derivative identities for ``B_n`` and ``d_n^B`` at ``q = 1``, all exact.

    Polynomial identities: the once- and twice-differentiated Eulerian
    recurrence. Values: ``B_n(1)``, ``B_n'(1)``, ``B_n''(1)`` and their
    recurrences at ``1``, and ``d_n^B(1)``, ``d_n^B'(1)``, ``d_n^B''(1)`` in
    terms of ``s_m`` (with ``s_m = 0`` for ``m < 0``).
    """
    rep = ClosedFormReport(n_max)
    x = Q
    two_x_one_minus_x = 2 * x * (1 - x)
    for n in range(n_max + 1):
        B = eulerian_b(n)
        g = 2**n * factorial(n)
        rep.record("B_n(1)", n, B(1), g)
        d = derangement_b(n)
        s = s_value
        rep.record("dnb1-binomial", n, d(1), _alt_binomial_sum(n, lambda k: eulerian_b(k)(1)))
        rep.record("dnb1-s", n, Fraction(d(1)), g * s(n))
        if n >= 1:
            P = eulerian_b(n - 1)
            rep.record(
                "bn1",
                n,
                B.derivative(),
                P.scale(2 * n - 1) + IntPolynomial([3, 2 * n - 5]) * P.derivative() + two_x_one_minus_x * P.derivative(2),
            )
            rep.record(
                "bn2",
                n,
                B.derivative(2),
                P.derivative().scale(4 * n - 6)
                + IntPolynomial([5, 2 * n - 9]) * P.derivative(2)
                + two_x_one_minus_x * P.derivative(3),
            )
            rep.record(
                "b'1-recurrence",
                n,
                B.derivative()(1),
                (2 * n - 1) * factorial(n - 1) * 2 ** (n - 1) + (2 * n - 2) * P.derivative()(1),
            )
            rep.record("b'1", n, Fraction(B.derivative()(1)), Fraction(n * g, 2))
            rep.record("dnb11", n, Fraction(d.derivative()(1)), Fraction(g, 2) * (n * s(n - 1) + s(n - 2) / 2))
        if n >= 2:
            P = eulerian_b(n - 1)
            rep.record(
                "b''1-recurrence",
                n,
                B.derivative(2)(1),
                (2 * n - 3) * (n - 1) * 2 ** (n - 1) * factorial(n - 1) + (2 * n - 4) * P.derivative(2)(1),
            )
            rep.record("b''1", n, Fraction(B.derivative(2)(1)), Fraction((3 * n * n - 5 * n + 1) * g, 12))
            rep.record(
                "dnb12",
                n,
                Fraction(d.derivative(2)(1)),
                Fraction(g, 12) * ((3 * n * n - 5 * n + 1) * s(n - 2) + (3 * n - 4) * s(n - 3) + Fraction(3, 4) * s(n - 4)),
            )
    return rep


# -- moments ----------------------------------------------------------------------------


@dataclass
class MomentReport:
    n: int
    mean_exact: Fraction
    var_exact: Fraction
    mean_asymptotic_gap: Fraction  # mean - (n/2 + 1/4)
    var_gap_shifted: Fraction  # var - (n/12 - 1/16)
    var_gap_derived: Fraction  # var - n/12

    def to_dict(self) -> dict:
        def frac(x: Fraction) -> dict:
            return {"num": str(x.numerator), "den": str(x.denominator)}

        return {
            "n": self.n,
            "mean_exact": frac(self.mean_exact),
            "var_exact": frac(self.var_exact),
            "mean_asymptotic_gap": frac(self.mean_asymptotic_gap),
            "var_gap_shifted": frac(self.var_gap_shifted),
            "var_gap_derived": frac(self.var_gap_derived),
            "mean_asymptotic_gap_approx": f"{float(self.mean_asymptotic_gap):.6e}",
            "var_gap_shifted_approx": f"{float(self.var_gap_shifted):.6e}",
            "var_gap_derived_approx": f"{float(self.var_gap_derived):.6e}",
        }


def moments(n: int) -> MomentReport:
    """Exact mean and variance of ``exc_B`` over a uniform random derangement in ``D_n^B``.

    >>> moments(3).mean_exact
    Fraction(51, 29)
    """
    if n < 1:
        raise ValueError("moments need n >= 1")
    d = derangement_b(n)
    total = d(1)
    mean = Fraction(d.derivative()(1), total)
    var = Fraction(d.derivative(2)(1), total) + mean - mean * mean
    return MomentReport(
        n,
        mean,
        var,
        mean - Fraction(2 * n + 1, 4),
        var - (Fraction(n, 12) - Fraction(1, 16)),
        var - Fraction(n, 12),
    )


# -- Sturm chains -----------------------------------------------------------------------


def _prem(a: IntPolynomial, b: IntPolynomial) -> tuple[IntPolynomial, int]:
    """``lc(b)^e * a mod b`` over Z, returning the remainder and ``e``."""
    db, lb = b.degree, b.leading
    e = a.degree - db + 1
    if e <= 0:
        return a, 0
    r, steps = a, e
    while not r.is_zero() and r.degree >= db:
        r = r.scale(lb) - (b * IntPolynomial.monomial(r.leading, r.degree - db))
        steps -= 1
    return r.scale(lb**steps), e


def _primitive(p: IntPolynomial) -> IntPolynomial:
    c = p.content()
    return IntPolynomial([a // c for a in p.coeffs]) if c > 1 else p


def sturm_chain(p: IntPolynomial) -> list[IntPolynomial]:
    """``p, p', -rem(p, p'), ...`` with every member scaled by a positive integer.

    The last member is a constant iff ``p`` is squarefree.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no Sturm chain")
    chain = [p, p.derivative()]
    while not chain[-1].is_zero():
        a, b = chain[-2], chain[-1]
        r, e = _prem(a, b)
        # prem multiplies by lc(b)^e; undo the sign so that r ~ +rem(a, b)
        if b.leading < 0 and e % 2:
            r = -r
        chain.append(_primitive(-r))
    chain.pop()
    return chain


def _check_squarefree(p: IntPolynomial, chain: list[IntPolynomial]) -> None:
    if chain[-1].degree > 0:
        raise NotSquarefreeError(p, chain[-1])


def _variations(chain: list[IntPolynomial], x: Fraction | None, at_plus_inf: bool = True) -> int:
    if x is None:
        signs = []
        for f in chain:
            s = 1 if f.leading > 0 else -1
            if not at_plus_inf and f.degree % 2:
                s = -s
            signs.append(s)
    else:
        signs = [f.sign_at(x) for f in chain]
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_root_count(
    p: IntPolynomial,
    a: Fraction | int | None = None,
    b: Fraction | int | None = None,
    chain: list[IntPolynomial] | None = None,
) -> int:
    """Number of distinct real roots of squarefree ``p`` in ``(a, b]``.

    ``None`` stands for ``-inf`` / ``+inf``. Raises :class:`NotSquarefreeError`
    with the offending gcd when ``p`` has a repeated factor.
    """
    if chain is None:
        chain = sturm_chain(p)
        _check_squarefree(p, chain)
    va = _variations(chain, None if a is None else Fraction(a), at_plus_inf=False)
    vb = _variations(chain, None if b is None else Fraction(b), at_plus_inf=True)
    return va - vb


def _cauchy_bound(p: IntPolynomial) -> int:
    lead = abs(p.leading)
    top = max((abs(c) for c in p.coeffs[:-1]), default=0)
    return 1 + -(-top // lead)


@dataclass
class RootIsolation:
    poly_id: tuple[str, int] | None
    intervals: list[tuple[Fraction, Fraction]]  # half-open (a, b], increasing
    multiplicity_at_zero: int
    degree: int

    @property
    def num_roots(self) -> int:
        return len(self.intervals) + self.multiplicity_at_zero

    def all_nonpositive(self) -> bool:
        return all(b <= 0 for _, b in self.intervals)

    def to_dict(self) -> dict:
        def frac(x: Fraction) -> dict:
            return {"num": str(x.numerator), "den": str(x.denominator)}

        return {
            "poly_id": list(self.poly_id) if self.poly_id else None,
            "degree": self.degree,
            "multiplicity_at_zero": self.multiplicity_at_zero,
            "intervals": [{"lo": frac(a), "hi": frac(b)} for a, b in self.intervals],
            "intervals_approx": [[float(a), float(b)] for a, b in self.intervals],
        }


def _isolate(p: IntPolynomial, chain: list[IntPolynomial], lo: Fraction, hi: Fraction) -> list[tuple[Fraction, Fraction]]:
    out = []
    stack = [(lo, hi, sturm_root_count(p, lo, hi, chain))]
    while stack:
        a, b, c = stack.pop()
        if c == 0:
            continue
        if c == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        left = sturm_root_count(p, a, m, chain)
        stack.append((m, b, c - left))
        stack.append((a, m, left))
    return sorted(out)


def isolate_roots(p: IntPolynomial, poly_id: tuple[str, int] | None = None) -> RootIsolation:
    """Disjoint rational intervals ``(a, b]`` each holding exactly one real root.

    A root at ``q = 0`` is split off first and reported as ``multiplicity_at_zero``;
    the remaining factor must be squarefree.
    """
    if p.is_zero():
        raise ValueError("cannot isolate the roots of the zero polynomial")
    m = p.lowest_degree()
    r = p.divide_by_q(m)
    if r.degree == 0:
        return RootIsolation(poly_id, [], m, p.degree)
    chain = sturm_chain(r)
    _check_squarefree(r, chain)
    B = Fraction(_cauchy_bound(r))
    return RootIsolation(poly_id, _isolate(r, chain, -B, B), m, p.degree)


def _refine(p: IntPolynomial, chain, a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
    m = (a + b) / 2
    if sturm_root_count(p, a, m, chain) == 1:
        return a, m
    return m, b


# -- interlacing ---------------------------------------------------------------------------


@dataclass
class InterlacingWitness:
    n: int | None
    f_roots: int
    g_intervals: list[tuple[Fraction, Fraction]]
    gap_counts: list[int]
    failures: list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.holds


MAX_REFINEMENTS = 400


def check_interlacing(f: IntPolynomial, g: IntPolynomial, n: int | None = None) -> InterlacingWitness:
    """Certify that ``f`` (``m`` roots) and ``g`` (``m-1`` roots) have negative,
    simple, strictly interleaving real roots.

    ``g``'s isolating intervals are shrunk until none contains a root of ``f``;
    then each gap between consecutive ``g``-intervals must hold exactly one
    root of ``f``. A common root makes the shrinking fail after
    :data:`MAX_REFINEMENTS` bisections, which is reported as a failure.
    """
    failures: list[str] = []
    m = f.degree
    if f.sign_at(0) == 0 or (g.degree > 0 and g.sign_at(0) == 0):
        failures.append("q = 0 is a repeated root")
    try:
        fc = sturm_chain(f)
        _check_squarefree(f, fc)
        gc = sturm_chain(g) if g.degree > 0 else [g]
        if g.degree > 0:
            _check_squarefree(g, gc)
    except NotSquarefreeError as err:
        return InterlacingWitness(n, 0, [], [], [str(err)])
    f_neg = sturm_root_count(f, None, 0, fc) if m > 0 else 0
    f_real = sturm_root_count(f, None, None, fc) if m > 0 else 0
    if f_neg != m or f_real != m:
        failures.append(f"f has {f_real} real roots, {f_neg} non-positive, degree {m}")
    if g.degree != m - 1:
        failures.append(f"degree mismatch: deg f = {m}, deg g = {g.degree}")
    if failures:
        return InterlacingWitness(n, f_neg, [], [], failures)
    if g.degree <= 0:
        return InterlacingWitness(n, f_neg, [], [f_neg])
    B = Fraction(max(_cauchy_bound(f), _cauchy_bound(g)))
    g_real = sturm_root_count(g, -B, 0, gc)
    if g_real != g.degree:
        failures.append(f"g has {g_real} roots in (-B, 0], degree {g.degree}")
        return InterlacingWitness(n, f_neg, [], [], failures)
    intervals = []
    for a, b in _isolate(g, gc, -B, Fraction(0)):
        steps = 0
        while sturm_root_count(f, a, b, fc) != 0:
            a, b = _refine(g, gc, a, b)
            steps += 1
            if steps > MAX_REFINEMENTS:
                failures.append(f"could not separate a root of g in ({a}, {b}] from the roots of f")
                break
        intervals.append((a, b))
    edges = [-B] + [x for ab in intervals for x in ab] + [Fraction(0)]
    gaps = [sturm_root_count(f, edges[2 * i], edges[2 * i + 1], fc) for i in range(len(intervals) + 1)]
    if any(c != 1 for c in gaps):
        failures.append(f"roots of f per gap between roots of g: {gaps}")
    return InterlacingWitness(n, f_neg, intervals, gaps, failures)


def interlacing_check(n: int) -> InterlacingWitness:
    """``d_n^B`` has ``n`` distinct non-positive roots separated by those of ``d_{n-1}^B``.

    Zero is a common simple root; the negative roots of ``d_n^B/q`` and
    ``d_{n-1}^B/q`` must interleave.
    """
    if n < 2:
        raise ValueError("interlacing is stated for n >= 2")
    d, e = derangement_b(n), derangement_b(n - 1)
    w = check_interlacing(d.divide_by_q(), e.divide_by_q(), n)
    if d[1] == 0:
        w.failures.append("q = 0 is not a simple root")
    return w


# -- normality ----------------------------------------------------------------------------

_DPS = 40


def standard_normal_cdf(z) -> mpmath.mpf:
    with mpmath.workdps(_DPS):
        return mpmath.erfc(-mpmath.mpf(z) / mpmath.sqrt(2)) / 2


@dataclass
class NormalityReport:
    n: int
    sup_cdf_distance: mpmath.mpf  # max_k |F(k) - Phi(z_k)|
    kolmogorov_distance: mpmath.mpf  # also includes the left limits F(k-)
    continuity_corrected_distance: mpmath.mpf  # max_k |F(k) - Phi(z_{k+1/2})|
    mean: Fraction
    variance: Fraction

    def to_dict(self, digits: int = 20) -> dict:
        return {
            "n": self.n,
            "sup_cdf_distance": mpmath.nstr(self.sup_cdf_distance, digits),
            "kolmogorov_distance": mpmath.nstr(self.kolmogorov_distance, digits),
            "continuity_corrected_distance": mpmath.nstr(self.continuity_corrected_distance, digits),
            "mean": {"num": str(self.mean.numerator), "den": str(self.mean.denominator)},
            "variance": {"num": str(self.variance.numerator), "den": str(self.variance.denominator)},
        }


def normality_report(n: int, row: list[int] | None = None) -> NormalityReport:
    """Distance between the standardised exact law of ``exc_B`` on ``D_n^B`` and N(0, 1)."""
    if n < 2:
        raise ValueError("normality report needs n >= 2")
    if row is None:
        row = derangement_coeff_table(n)[n]
    total = sum(row)
    mean = Fraction(sum(k * c for k, c in enumerate(row)), total)
    var = Fraction(sum(k * k * c for k, c in enumerate(row)), total) - mean * mean
    with mpmath.workdps(_DPS):
        mu = mpmath.mpf(mean.numerator) / mean.denominator
        sd = mpmath.sqrt(mpmath.mpf(var.numerator) / var.denominator)
        sup = kol = cc = mpmath.mpf(0)
        cum = 0
        for k, c in enumerate(row):
            before = mpmath.mpf(cum) / total
            cum += c
            after = mpmath.mpf(cum) / total
            phi = standard_normal_cdf((k - mu) / sd)
            sup = max(sup, abs(after - phi))
            kol = max(kol, abs(after - phi), abs(before - phi))
            cc = max(cc, abs(after - standard_normal_cdf((k + mpmath.mpf(1) / 2 - mu) / sd)))
    return NormalityReport(n, sup, kol, cc, mean, var)
