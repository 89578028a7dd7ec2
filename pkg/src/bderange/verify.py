"""Verification suites: named groups of exact checks with a structured report."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable

from . import analysis, decomp, typea, typeb
from .polyseries import IntPolynomial
from .sigperm import enumerate_derangements_b, exc_b

__all__ = ["Check", "SuiteReport", "SUITES", "DEFAULT_N_MAX", "run_suite"]


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class SuiteReport:
    suite: str
    n_max: int | None
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "n_max": self.n_max,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_text(self) -> str:
        lines = [f"suite {self.suite} (n_max={self.n_max}): {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            lines.append(f"  [{'pass' if c.passed else 'FAIL'}] {c.name}" + (f": {c.detail}" if c.detail else ""))
        return "\n".join(lines)


def _first_bad(ns, pred) -> int | None:
    for n in ns:
        if not pred(n):
            return n
    return None


def _range_check(report: SuiteReport, name: str, ns, pred) -> None:
    ns = list(ns)
    bad = _first_bad(ns, pred)
    span = f"n in [{ns[0]}, {ns[-1]}]" if ns else "empty range"
    report.add(name, bad is None, span if bad is None else f"fails at n={bad}")


def suite_oracle(n_max: int) -> SuiteReport:
    r = SuiteReport("oracle", n_max)
    for n in range(n_max + 1):
        enum_poly = typeb.derangement_b_by_enumeration(n)
        rec, binom = typeb.derangement_b(n), typeb.derangement_b_by_binomial(n)
        r.add(f"triple agreement n={n}", enum_poly == rec == binom, str(rec))
    for n in range(n_max + 1):
        w = typeb.equidistribution_check(n)
        r.add(f"des_B ~ exc_B on B_{n}", w.holds, "" if w.holds else f"{w.des_b} vs {w.exc_b}")
    _range_check(r, "B_n by enumeration = recurrence", range(n_max + 1), lambda n: typeb.eulerian_b_by_enumeration(n) == typeb.eulerian_b(n))
    a_max = min(n_max, 8)
    _range_check(r, "type A d_n by enumeration = recurrence", range(a_max + 1), lambda n: typea.derangement_a_by_enumeration(n) == typea.derangement_a(n))
    _range_check(r, "type A A_n^exc by enumeration = binomial inverse", range(a_max + 1), lambda n: typea.eulerian_a_exc_by_enumeration(n) == typea.eulerian_a_exc(n))
    _range_check(r, "type A q^(des+1) = q A_n^exc", range(1, a_max + 1), lambda n: typea.eulerian_a_des1_by_enumeration(n) == typea.eulerian_a_des1(n))
    return r


def suite_identities(n_max: int) -> SuiteReport:
    r = SuiteReport("identities", n_max)
    _range_check(r, "B_n = sum C(n,k) d_k^B", range(n_max + 1), typeb.binomial_convolution_check)
    _range_check(r, "B_n(1) = 2^n n!", range(max(n_max, 50) + 1), lambda n: typeb.eulerian_b(n)(1) == 2**n * factorial(n))
    _range_check(r, "d_{n,1} = 2^n", range(2, max(n_max, 50) + 1), lambda n: typeb.derangement_b(n)[1] == 2**n)
    _range_check(r, "recurrence = binomial sum", range(max(n_max, 30) + 1), lambda n: typeb.derangement_b(n) == typeb.derangement_b_by_binomial(n))
    rows = typeb.derangement_coeff_table(max(n_max, 50))
    _range_check(r, "coefficient triangle = polynomial recurrence", range(len(rows)), lambda n: typeb.derangement_b(n).coeffs == tuple(rows[n]))
    _range_check(r, "d_{n,k} > 0 for 1 <= k <= n", range(1, len(rows)), lambda n: all(c > 0 for c in rows[n][1:]))
    _range_check(r, "d_{n,n} = 1", range(1, len(rows)), lambda n: rows[n][n] == 1)
    _range_check(r, "log-concave coefficients", range(1, len(rows)), lambda n: all(rows[n][k] ** 2 >= rows[n][k - 1] * rows[n][k + 1] for k in range(1, n)))
    _range_check(r, "type A binomial formula", range(max(n_max, 20) + 1), typea.binomial_check_a)
    _range_check(r, "type A d_n palindromic", range(2, max(n_max, 100) + 1), lambda n: typea.is_palindromic(typea.derangement_a(n)))
    return r


def suite_egf(order: int) -> SuiteReport:
    r = SuiteReport("egf", order)
    r.add("Eulerian B generating function", typeb.egf_check_eulerian_b(order), f"order {order}")
    r.add("derangement B generating function (both forms)", typeb.egf_check_derangement_b(order), f"order {order}")
    eul_a, der_a = typea.egf_check_typea(order)
    r.add("Eulerian A generating function", eul_a, f"order {order}")
    r.add("derangement A generating function", der_a, f"order {order}")
    return r


def suite_spiral(n_max: int) -> SuiteReport:
    r = SuiteReport("spiral", n_max)
    rows = typeb.derangement_coeff_table(n_max)
    bad = [n for n in range(2, n_max + 1) if not typeb.spiral_check(n, rows[n])]
    r.add("spiral property from the coefficient triangle", not bad, f"n in [2, {n_max}]" if not bad else f"fails at n={bad[:5]}")
    return r


def suite_interlacing(n_max: int) -> SuiteReport:
    r = SuiteReport("interlacing", n_max)
    for n in range(2, n_max + 1):
        w = analysis.interlacing_check(n)
        r.add(f"type B n={n}", w.holds, "; ".join(w.failures))
    for n in range(2, n_max + 1):
        w = typea.interlacing_check_a(n)
        r.add(f"type A n={n}", w.holds, "; ".join(w.failures))
    return r


def suite_moments(n_max: int) -> SuiteReport:
    r = SuiteReport("moments", n_max)
    cf = analysis.closed_form_checks(n_max)
    r.add("closed-form derivative identities", cf.passed, f"{cf.checked} exact checks" if cf.passed else "; ".join(cf.mismatches[:5]))
    ns = list(range(12, n_max + 1))
    reps = {n: analysis.moments(n) for n in range(4, n_max + 1)}
    mean_bad = [n for n in ns if not abs(reps[n].mean_asymptotic_gap) < Fraction(1, 10**9)]
    r.add("|mean - (n/2 + 1/4)| < 1e-9 for n >= 12", not mean_bad, f"fails at {mean_bad}" if mean_bad else "")
    var_bad = [n for n in ns if not abs(reps[n].var_gap_derived) < Fraction(1, 10**6)]
    r.add("|var - n/12| < 1e-6 for n >= 12", not var_bad, f"fails at {var_bad}" if var_bad else "")
    if ns:
        gap = reps[ns[-1]].var_gap_shifted
        r.add(
            "var - (n/12 - 1/16) at largest n (reported; the -1/16 term is not observed)",
            True,
            f"n={ns[-1]}: {float(gap):.12f}",
        )
    upto = min(n_max, 20)
    gaps = [abs(reps[n].mean_asymptotic_gap) for n in range(4, upto + 1)]
    r.add("mean gap strictly decreasing on [4, 20]", all(a > b for a, b in zip(gaps, gaps[1:])))
    return r


def suite_decomposition(n_max: int) -> SuiteReport:
    r = SuiteReport("decomposition", n_max)
    for n in range(1, n_max + 1):
        images, conserved, by_weight = set(), True, Counter()
        for s in enumerate_derangements_b(n):
            p = decomp.p_decompose(s)
            conserved &= p.weight_exponent == exc_b(s)
            images.add(p.canonical_key())
            by_weight[p.weight_exponent] += 1
        total = typeb.derangement_b(n)(1)
        r.add(f"exc conserved by V o U, n={n}", conserved)
        r.add(f"p_decompose injective, n={n}", len(images) == total, f"{len(images)} images of {total}")
        weights = IntPolynomial([by_weight.get(k, 0) for k in range(n + 1)])
        r.add(f"image weights reproduce d_{n}^B", weights == typeb.derangement_b(n) == decomp.compositions_weight_sum(n))
    pi = (3, -5, 4, 2, 9, -6, 8, 7, -1)
    r.add("worked example V o U", str(decomp.p_decompose(pi)) == "(7 8)(-5 9)(-1 2)(3 4)(-6)")
    red = decomp.reduce_fixed_points((4, 6, 3, -7, 5, 1, -2))
    r.add("worked example reduction", red.reduced == (3, 4, -5, 1, -2) and red.fixed == (3, 5))
    return r


DEFAULT_N_MAX = {
    "oracle": 7,
    "identities": 15,
    "egf": 12,
    "spiral": 200,
    "interlacing": 14,
    "moments": 50,
    "decomposition": 6,
}

SUITES: dict[str, Callable[[int], SuiteReport]] = {
    "oracle": suite_oracle,
    "identities": suite_identities,
    "egf": suite_egf,
    "spiral": suite_spiral,
    "interlacing": suite_interlacing,
    "moments": suite_moments,
    "decomposition": suite_decomposition,
}


def run_suite(name: str, n_max: int | None = None) -> list[SuiteReport]:
    """Run one suite (or ``"all"`` with each suite's default size)."""
    if name == "all":
        return [SUITES[s](DEFAULT_N_MAX[s]) for s in SUITES]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return [SUITES[name](DEFAULT_N_MAX[name] if n_max is None else n_max)]
