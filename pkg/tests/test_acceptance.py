"""Acceptance criteria, one test per criterion.

Run ``python tests/test_acceptance.py`` for a one-line PASS/FAIL summary per
criterion, or ``pytest tests/test_acceptance.py -v``.
"""

import time
from fractions import Fraction
from importlib.resources import files
from math import factorial

from bderange import analysis, decomp, typea, typeb
from bderange.decomp import SignedCycle
from bderange.polyseries import IntPolynomial
from bderange.sigperm import exc_b
from bderange.verify import suite_decomposition

PI = (3, -5, 4, 2, 9, -6, 8, 7, -1)


class Clock:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_criterion_01_printed_table():
    golden = files("bderange").joinpath("data/derangement_b_table.txt").read_text().split()
    typeb.DERANGEMENT_B.clear()
    with Clock() as c:
        computed = [typeb.derangement_b(n) for n in range(1, 11)]
    assert computed == [IntPolynomial.parse(line) for line in golden]
    assert c.elapsed < 1.0


def test_criterion_02_oracle_triple_agreement():
    with Clock() as c:
        for n in range(0, 8):
            enum_poly = typeb.derangement_b_by_enumeration(n)
            assert enum_poly == typeb.derangement_b(n) == typeb.derangement_b_by_binomial(n), n
    assert c.elapsed < 60
    # stretch size
    with Clock() as c:
        assert typeb.derangement_b_by_enumeration(8) == typeb.derangement_b(8) == typeb.derangement_b_by_binomial(8)
    assert c.elapsed < 15 * 60


def test_criterion_03_identities():
    assert all(typeb.binomial_convolution_check(n) for n in range(0, 16))
    assert all(typeb.eulerian_b(n)(1) == 2**n * factorial(n) for n in range(0, 51))
    assert all(typeb.derangement_b(n)[1] == 2**n for n in range(2, 51))


def test_criterion_04_egf():
    with Clock() as c:
        assert typeb.egf_check_eulerian_b(12)
        assert typeb.egf_check_derangement_b(12)
        assert typea.egf_check_typea(12) == (True, True)
    assert c.elapsed < 5


def test_criterion_05_decomposition():
    report = suite_decomposition(6)
    assert report.passed, [ch.name for ch in report.checks if not ch.passed]
    # the worked example, cycles taken in the order they are listed there
    listed = [SignedCycle((7, 8)), SignedCycle((-6,)), SignedCycle((-5, 9, -1, 3, 4, 2))]
    u, p = decomp.decompose_sequence(listed)
    assert f"U(π)=({decomp.barred(u)})" == "U(π)=(7 8, 6̄, 5̄ 9, 1̄ 3 4 2)"
    assert f"V∘U(π)=({decomp.barred(p)})" == "V∘U(π)=(7 8, 6̄, 5̄ 9, 1̄ 2, 3 4)"
    assert sum(decomp.cycle_exc_b(c) for c in u) == sum(decomp.cycle_exc_b(c) for c in p) == exc_b(PI) == 5
    # the canonical decomposition is the same set of prime cycles
    canonical = decomp.p_decompose(PI)
    assert canonical.canonical_key() == decomp.PDecomposition(tuple(p)).canonical_key()


def test_criterion_06_equidistribution():
    for n in range(0, 8):
        w = typeb.equidistribution_check(n)
        assert w.holds, n


def test_criterion_07_interlacing():
    with Clock() as c:
        for n in range(2, 15):
            w = analysis.interlacing_check(n)
            assert w.holds, (n, w.failures)
            iso = analysis.isolate_roots(typeb.derangement_b(n))
            assert iso.num_roots == n and iso.all_nonpositive
        for n in range(2, 15):
            assert typea.interlacing_check_a(n).holds, n
    assert c.elapsed < 60


def test_criterion_08_spiral():
    with Clock() as c:
        rows = typeb.derangement_coeff_table(200)
        failures = [n for n in range(2, 201) if not typeb.spiral_check(n, rows[n])]
    assert failures == []
    assert c.elapsed < 30


def test_criterion_09_closed_forms():
    rep = analysis.closed_form_checks(50)
    assert rep.passed, rep.mismatches[:5]


def test_criterion_10_moments():
    for n in range(12, 51):
        m = analysis.moments(n)
        assert abs(m.mean_asymptotic_gap) < Fraction(1, 10**9), n
        assert abs(m.var_gap_derived) < Fraction(1, 10**6), n
    # the -1/16 constant must show up as a visible, non-vanishing gap
    gap = analysis.moments(50).var_gap_shifted
    assert abs(gap - Fraction(1, 16)) < Fraction(1, 10**6)
    from bderange.verify import suite_moments

    assert any("1/16" in ch.name for ch in suite_moments(50).checks)


def test_criterion_11_normality():
    with Clock() as c:
        dist = {n: float(analysis.normality_report(n).sup_cdf_distance) for n in (10, 20, 50, 100)}
    values = [dist[n] for n in (10, 20, 50, 100)]
    decreasing = all(a > b for a, b in zip(values, values[1:]))
    assert c.elapsed < 60
    assert decreasing, dist
    assert dist[100] < 0.05, f"sup CDF distance at n=100 is {dist[100]:.4f}; distances {dist}"


def test_criterion_12_type_a():
    assert all(typea.is_palindromic(typea.derangement_a(n)) for n in range(2, 101))
    assert all(typea.binomial_check_a(n) for n in range(0, 21))


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if not name.startswith("test_criterion_"):
            continue
        try:
            fn()
            status = "PASS"
        except AssertionError as err:
            status, failed = f"FAIL  {err}", failed + 1
        print(f"criterion {int(name.split('_')[2]):2d}: {status}")
    raise SystemExit(1 if failed else 0)
