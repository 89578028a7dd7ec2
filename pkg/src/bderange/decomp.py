"""Cycle structure of signed permutations and the U/V decomposition of derangements.

Cycles are written ``(s_1 s_2 ... s_k)`` meaning ``sigma_{|s_i|} = s_{i+1}``
with ``s_{k+1} = s_1``, and ``s_1`` is the smallest entry. Signed values are
compared as plain integers, which is exactly the order ``-n < ... < -1 < 1 < ... < n``.

:func:`p_decompose` sends a type B derangement to a sequence of prime cycles
(negative singletons allowed) while preserving the number of type B excedances.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from math import comb, factorial
from typing import Iterable, Sequence

from .polyseries import IntPolynomial
from .sigperm import SignedPermutation, exc_b, fixed_points, is_derangement_b

__all__ = [
    "SignedCycle",
    "CycleDecomposition",
    "PDecomposition",
    "Reduction",
    "reduce_fixed_points",
    "expand",
    "cycle_decompose",
    "is_unimodal",
    "is_prime",
    "u_algorithm",
    "v_algorithm",
    "p_decompose",
    "decompose_sequence",
    "barred",
    "u_stage",
    "image_weight_histogram",
    "cycle_exc_b",
    "type_weight_gf",
    "compositions_weight_sum",
]


@dataclass(frozen=True)
class SignedCycle:
    entries: tuple[int, ...]

    def __post_init__(self):
        e = tuple(self.entries)
        object.__setattr__(self, "entries", e)
        if not e:
            raise ValueError("empty cycle")
        if 0 in e:
            raise ValueError("cycle entries must be nonzero")
        if len({abs(x) for x in e}) != len(e):
            raise ValueError(f"repeated absolute value in cycle {e}")
        if e[0] != min(e):
            raise ValueError(f"cycle {e} must start at its minimum entry")

    @classmethod
    def from_rotation(cls, entries: Sequence[int]) -> SignedCycle:
        """Rotate an arbitrary cyclic listing so the minimum comes first."""
        e = list(entries)
        i = e.index(min(e))
        return cls(tuple(e[i:] + e[:i]))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def minimum(self) -> int:
        return self.entries[0]

    @property
    def support(self) -> frozenset[int]:
        return frozenset(abs(x) for x in self.entries)

    def mapping(self) -> dict[int, int]:
        """Partial signed map ``|s_i| -> s_{i+1}``."""
        e = self.entries
        return {abs(e[i]): e[(i + 1) % len(e)] for i in range(len(e))}

    def __str__(self) -> str:
        return "(" + " ".join(str(x) for x in self.entries) + ")"


def _parse_cycles(text: str) -> list[SignedCycle]:
    groups = re.findall(r"\(([^()]*)\)", text)
    if not groups or re.sub(r"\([^()]*\)", "", text).strip():
        raise ValueError(f"cannot parse cycle notation {text!r}")
    return [SignedCycle.from_rotation([int(x) for x in g.replace(",", " ").split()]) for g in groups]


@dataclass(frozen=True)
class CycleDecomposition:
    cycles: tuple[SignedCycle, ...]

    def __post_init__(self):
        object.__setattr__(self, "cycles", tuple(self.cycles))
        mins = [c.minimum for c in self.cycles]
        if mins != sorted(mins, reverse=True):
            raise ValueError("cycles must be listed in decreasing order of their minima")
        _check_partition(self.cycles)

    @property
    def n(self) -> int:
        return sum(len(c) for c in self.cycles)

    def to_permutation(self) -> SignedPermutation:
        return _rebuild(self.cycles)

    def __str__(self) -> str:
        return "".join(str(c) for c in self.cycles)

    @classmethod
    def parse(cls, text: str) -> CycleDecomposition:
        cycles = _parse_cycles(text)
        return cls(tuple(sorted(cycles, key=lambda c: c.minimum, reverse=True)))

    def to_json(self) -> list[list[int]]:
        return [list(c.entries) for c in self.cycles]


@dataclass(frozen=True)
class PDecomposition:
    cycles: tuple[SignedCycle, ...]

    def __post_init__(self):
        object.__setattr__(self, "cycles", tuple(self.cycles))
        for c in self.cycles:
            if not is_prime(c):
                raise ValueError(f"{c} is not a prime cycle")
        _check_partition(self.cycles)

    @property
    def composition(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cycles)

    @property
    def singletons(self) -> frozenset[int]:
        return frozenset(c.minimum for c in self.cycles if len(c) == 1)

    @property
    def weight_exponent(self) -> int:
        return sum(cycle_exc_b(c) for c in self.cycles)

    def canonical_key(self) -> tuple:
        """Singletons as a set, longer primes as an ordered sequence."""
        return (self.singletons, tuple(c.entries for c in self.cycles if len(c) > 1))

    def to_permutation(self) -> SignedPermutation:
        return _rebuild(self.cycles)

    def __str__(self) -> str:
        return "".join(str(c) for c in self.cycles)

    def to_json(self) -> list[list[int]]:
        return [list(c.entries) for c in self.cycles]


def _check_partition(cycles: Iterable[SignedCycle]) -> None:
    seen: set[int] = set()
    for c in cycles:
        if seen & c.support:
            raise ValueError("cycle supports overlap")
        seen |= c.support
    if seen != set(range(1, len(seen) + 1)):
        raise ValueError(f"cycle supports do not partition [1..{len(seen)}]")


def _rebuild(cycles: Iterable[SignedCycle]) -> SignedPermutation:
    m: dict[int, int] = {}
    for c in cycles:
        m.update(c.mapping())
    return SignedPermutation([m[i] for i in range(1, len(m) + 1)])


def barred(cycles: Iterable[SignedCycle]) -> str:
    """Comma-separated listing with bars over negative entries.

    >>> barred([SignedCycle((7, 8)), SignedCycle((-6,))])
    '7 8, 6̄'
    """
    return ", ".join(" ".join(f"{-v}\u0304" if v < 0 else str(v) for v in c) for c in cycles)

# -- fixed point reduction -------------------------------------------------------


@dataclass(frozen=True)
class Reduction:
    non_fixed: tuple[int, ...]
    fixed: tuple[int, ...]
    reduced: SignedPermutation


def reduce_fixed_points(pi: Sequence[int]) -> Reduction:
    """Split ``pi`` into its fixed points and an order-preserving relabelled derangement.

    >>> reduce_fixed_points([4, 6, 3, -7, 5, 1, -2]).reduced
    SignedPermutation(3, 4, -5, 1, -2)
    """
    pi = SignedPermutation(pi)
    fixed = sorted(fixed_points(pi))
    fixed_set = set(fixed)
    s = [i for i in range(1, len(pi) + 1) if i not in fixed_set]
    rank = {a: r for r, a in enumerate(s, start=1)}
    tau = [pi[i - 1] for i in s]
    sigma = [rank[v] if v > 0 else -rank[-v] for v in tau]
    return Reduction(tuple(s), tuple(fixed), SignedPermutation(sigma))


def expand(r: Reduction) -> SignedPermutation:
    """Inverse of :func:`reduce_fixed_points`."""
    s, t, sigma = list(r.non_fixed), list(r.fixed), SignedPermutation(r.reduced)
    n = len(s) + len(t)
    if sorted(s + t) != list(range(1, n + 1)):
        raise ValueError("non-fixed and fixed sets must partition [1..n]")
    if s != sorted(s) or t != sorted(t):
        raise ValueError("position sets must be sorted")
    if len(sigma) != len(s):
        raise ValueError(f"reduced permutation has size {len(sigma)}, expected {len(s)}")
    if not is_derangement_b(sigma):
        raise ValueError("reduced permutation must be a type B derangement")
    out = list(range(1, n + 1))
    for j, v in enumerate(sigma):
        out[s[j] - 1] = s[v - 1] if v > 0 else -s[-v - 1]
    return SignedPermutation(out)


# -- cycles ------------------------------------------------------------------------


def cycle_decompose(sigma: Sequence[int]) -> CycleDecomposition:
    """Canonical cycle decomposition, cycles in decreasing order of their minima.

    >>> str(cycle_decompose([3, -5, 4, 2, 9, -6, 8, 7, -1]))
    '(7 8)(-5 9 -1 3 4 2)(-6)'
    """
    sigma = SignedPermutation(sigma)
    seen = [False] * (len(sigma) + 1)
    cycles = []
    for start in range(1, len(sigma) + 1):
        if seen[start]:
            continue
        entries, pos = [], start
        while not seen[pos]:
            seen[pos] = True
            v = sigma[pos - 1]
            entries.append(v)
            pos = abs(v)
        cycles.append(SignedCycle.from_rotation(entries))
    cycles.sort(key=lambda c: c.minimum, reverse=True)
    return CycleDecomposition(tuple(cycles))


def cycle_exc_b(c: SignedCycle | Sequence[int]) -> int:
    """Type B excedances of the partial map a cycle induces on its support."""
    m = c.mapping() if isinstance(c, SignedCycle) else SignedCycle.from_rotation(c).mapping()
    return sum(1 for i, v in m.items() if v == -i or m[abs(v)] > v)


def is_unimodal(c: SignedCycle) -> bool:
    """``s_1 < ... < s_i > ... > s_k`` for some ``2 <= i <= k``; negative singletons count."""
    s = c.entries
    k = len(s)
    if k == 1:
        return s[0] < 0
    i = 1
    while i < k and s[i - 1] < s[i]:
        i += 1
    # i is now one past the peak (0-based peak index i-1)
    if i == 1:
        return False
    return all(s[j - 1] > s[j] for j in range(i, k))


def _peak(s: Sequence[int]) -> int:
    # 1-based index of the maximum entry
    return max(range(len(s)), key=lambda j: s[j]) + 1


def is_prime(c: SignedCycle) -> bool:
    """Unimodal with ``s_{i-1} < s_k`` at the peak ``i``; negative singletons count."""
    if not is_unimodal(c):
        return False
    s = c.entries
    if len(s) == 1:
        return True
    i = _peak(s)
    return s[i - 2] < s[-1]


def _split(s: Sequence[int], i: int, j: int) -> tuple[SignedCycle, SignedCycle]:
    # 1-based i < j: outer = s_1..s_{i-1} s_{j+1}..s_k, inner = s_i..s_j
    outer = tuple(s[: i - 1]) + tuple(s[j:])
    inner = tuple(s[i - 1 : j])
    return SignedCycle(outer), SignedCycle(inner)


def u_algorithm(c: SignedCycle) -> list[SignedCycle]:
    """Split a cycle into unimodal cycles (repeatedly peel off the last valley run).

    >>> [str(x) for x in u_algorithm(SignedCycle((-5, 9, -1, 3, 4, 2)))]
    ['(-5 9)', '(-1 3 4 2)']
    """
    out: list[SignedCycle] = []
    while not is_unimodal(c):
        s = c.entries
        k = len(s)
        at = lambda m: s[(m - 1) % k]  # noqa: E731  (1-based, cyclic)
        valleys = [i for i in range(2, k + 1) if at(i - 1) > at(i) < at(i + 1)]
        assert valleys, f"non-unimodal cycle {c} without a valley"
        i = max(valleys)
        js = [j for j in range(i + 1, k + 1) if at(j) > at(i) > at(j + 1)]
        assert len(js) == 1, f"U-algorithm: expected a unique j for {c}, i={i}, got {js}"
        c, inner = _split(s, i, js[0])
        assert is_unimodal(inner), f"U-algorithm produced non-unimodal {inner}"
        out.append(inner)
    out.append(c)
    return out[::-1]


def v_algorithm(c: SignedCycle) -> list[SignedCycle]:
    """Split a unimodal cycle into prime cycles.

    >>> [str(x) for x in v_algorithm(SignedCycle((-1, 3, 4, 2)))]
    ['(-1 2)', '(3 4)']
    """
    if not is_unimodal(c):
        raise ValueError(f"V-algorithm needs a unimodal cycle, got {c}")
    out: list[SignedCycle] = []
    while not is_prime(c):
        s = c.entries
        k = len(s)
        found = None
        for j in range(1, k):
            # s_{k+1} = s_1 can never exceed s_{i-1}, so j = k is never valid
            pairs = [i for i in range(2, k + 1) if s[j - 1] > s[i - 1] > s[j] > s[i - 2]]
            if pairs:
                assert len(pairs) == 1, f"V-algorithm: ambiguous i for {c}, j={j}: {pairs}"
                found = (pairs[0], j)
                break
        assert found is not None, f"V-algorithm: no split found for non-prime {c}"
        c, inner = _split(s, *found)
        assert is_prime(inner), f"V-algorithm produced non-prime {inner}"
        out.append(inner)
    out.append(c)
    return out[::-1]


def p_decompose(sigma: Sequence[int]) -> PDecomposition:
    """``V o U`` applied cycle by cycle to a type B derangement.

    >>> str(p_decompose([3, -5, 4, 2, 9, -6, 8, 7, -1]))
    '(7 8)(-5 9)(-1 2)(3 4)(-6)'
    """
    sigma = SignedPermutation(sigma)
    if not is_derangement_b(sigma):
        raise ValueError(f"{sigma.to_text()} has fixed points {sorted(fixed_points(sigma))}")
    return PDecomposition(tuple(decompose_sequence(cycle_decompose(sigma).cycles)[1]))


def decompose_sequence(cycles: Sequence[SignedCycle]) -> tuple[list[SignedCycle], list[SignedCycle]]:
    """``U`` and ``V o U`` images of an explicitly ordered cycle list.

    >>> u, p = decompose_sequence([SignedCycle((7, 8)), SignedCycle((-6,)), SignedCycle((-5, 9, -1, 3, 4, 2))])
    >>> "".join(map(str, u)), "".join(map(str, p))
    ('(7 8)(-6)(-5 9)(-1 3 4 2)', '(7 8)(-6)(-5 9)(-1 2)(3 4)')
    """
    unimodal = [u for cyc in cycles for u in u_algorithm(cyc)]
    return unimodal, [p for u in unimodal for p in v_algorithm(u)]


def u_stage(sigma: Sequence[int]) -> list[SignedCycle]:
    """Concatenated ``U`` images of every cycle (fixed points allowed)."""
    return [u for cyc in cycle_decompose(sigma).cycles for u in (u_algorithm(cyc) if len(cyc) > 1 or cyc.minimum < 0 else [cyc])]


# -- weights ---------------------------------------------------------------------------


def type_weight_gf(singletons: int, lengths: Sequence[int], n: int | None = None) -> IntPolynomial:
    """Total weight of P-decompositions of type ``(1^k, l_1, ..., l_m)`` on labelled supports.

    Returns ``q^k * multinomial(sum l; l_1..l_m) * prod 2^l (q + ... + q^(l-1))``;
    the ``C(n, k)`` choice of the singleton support is left to the caller.
    """
    lengths = list(lengths)
    if singletons < 0 or any(l < 2 for l in lengths):
        raise ValueError(f"malformed type (1^{singletons}, {lengths})")
    if n is not None and singletons + sum(lengths) != n:
        raise ValueError(f"type (1^{singletons}, {lengths}) does not sum to {n}")
    total = sum(lengths)
    mult = factorial(total)
    for l in lengths:
        mult //= factorial(l)
    w = IntPolynomial.monomial(mult, singletons)
    for l in lengths:
        w = w * IntPolynomial.geometric(1, l - 1).scale(2**l)
    return w


def _compositions(total: int, min_part: int = 2):
    if total == 0:
        yield ()
        return
    for first in range(min_part, total + 1):
        for rest in _compositions(total - first, min_part):
            yield (first,) + rest


def compositions_weight_sum(n: int) -> IntPolynomial:
    """``sum_k C(n,k) sum_{compositions of n-k into parts >= 2} type_weight_gf``."""
    acc = IntPolynomial.zero()
    for k in range(n + 1):
        for comp in _compositions(n - k):
            acc = acc + type_weight_gf(k, comp, n).scale(comb(n, k))
    return acc


def image_weight_histogram(n: int) -> Counter:
    """Counts of ``weight_exponent`` over ``p_decompose`` images of all of ``D_n^B``."""
    from .sigperm import enumerate_derangements_b

    return Counter(p_decompose(s).weight_exponent for s in enumerate_derangements_b(n))
