"""Dense integer polynomials in ``q`` and truncated exponential generating functions.

Every polynomial family in this package (type B Eulerian and derangement
polynomials, their type A counterparts) lives in :class:`IntPolynomial`.
Coefficients are Python ints, so nothing overflows.

An :class:`EgfSeries` of order ``N`` stores the coefficients ``f_0, ..., f_N``
of ``sum f_n t^n / n!``; each ``f_n`` is an :class:`IntPolynomial`.
Multiplication is the binomial convolution, which keeps all arithmetic in
``Z[q]`` as long as identities are checked by cross-multiplication.

>>> q = IntPolynomial.q()
>>> (1 + q) * (1 - q)
IntPolynomial([1, 0, -1])
>>> egf_mul(egf_exp_linear(1, 0, 3), egf_exp_linear(1, 0, 3)).terms[3]
IntPolynomial([8])
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence, Union

__all__ = [
    "IntPolynomial",
    "RationalScalar",
    "EgfSeries",
    "egf_mul",
    "egf_exp_linear",
    "egf_poly_arg_exp",
]

# exact rationals are just Fractions (always reduced, denominator > 0)
RationalScalar = Fraction

Coercible = Union["IntPolynomial", int]


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPolynomial:
    """Immutable dense polynomial with integer coefficients, lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree ``-1``.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = _strip(coeffs)
        for a in c:
            if not isinstance(a, int) or isinstance(a, bool):
                raise TypeError(f"coefficients must be int, got {type(a).__name__}")
        self._c = c

    @classmethod
    def _raw(cls, coeffs: tuple[int, ...]) -> IntPolynomial:
        # trusted constructor: coeffs already ints and stripped
        p = cls.__new__(cls)
        p._c = coeffs
        return p

    @classmethod
    def zero(cls) -> IntPolynomial:
        return cls._raw(())

    @classmethod
    def one(cls) -> IntPolynomial:
        return cls._raw((1,))

    @classmethod
    def q(cls) -> IntPolynomial:
        return cls._raw((0, 1))

    @classmethod
    def monomial(cls, coeff: int, power: int) -> IntPolynomial:
        if power < 0:
            raise ValueError("negative power")
        return cls([0] * power + [coeff])

    @classmethod
    def geometric(cls, lo: int, hi: int) -> IntPolynomial:
        """``q^lo + q^(lo+1) + ... + q^hi`` (zero when ``hi < lo``)."""
        if hi < lo:
            return cls.zero()
        return cls([0] * lo + [1] * (hi - lo + 1))

    @staticmethod
    def coerce(x: Coercible) -> IntPolynomial:
        if isinstance(x, IntPolynomial):
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return IntPolynomial._raw((x,) if x else ())
        raise TypeError(f"cannot coerce {type(x).__name__} to IntPolynomial")

    # -- basic accessors -------------------------------------------------
    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def __getitem__(self, k: int) -> int:
        """Coefficient of ``q^k``; zero outside the stored range."""
        if 0 <= k < len(self._c):
            return self._c[k]
        return 0

    def __len__(self) -> int:
        return len(self._c)

    @property
    def leading(self) -> int:
        return self._c[-1] if self._c else 0

    def lowest_degree(self) -> int:
        """Multiplicity of ``q = 0`` as a root (``-1`` for the zero polynomial)."""
        for k, a in enumerate(self._c):
            if a:
                return k
        return -1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntPolynomial):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == IntPolynomial.coerce(other)._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self._c)})"

    def __str__(self) -> str:
        return self.to_compact()

    # -- ring operations -------------------------------------------------
    def __add__(self, other: Coercible) -> IntPolynomial:
        try:
            o = IntPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._c, o._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return IntPolynomial._raw(_strip(out))

    __radd__ = __add__

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial._raw(tuple(-a for a in self._c))

    def __sub__(self, other: Coercible) -> IntPolynomial:
        try:
            o = IntPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Coercible) -> IntPolynomial:
        return IntPolynomial.coerce(other) - self

    def __mul__(self, other: Coercible) -> IntPolynomial:
        if isinstance(other, int) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        a, b = self._c, other._c
        if not a or not b:
            return IntPolynomial.zero()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial._raw(_strip(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> IntPolynomial:
        if e < 0:
            raise ValueError("negative exponent")
        result, base = IntPolynomial.one(), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c: int) -> IntPolynomial:
        if c == 0:
            return IntPolynomial.zero()
        return IntPolynomial._raw(tuple(c * a for a in self._c))

    def shift(self, k: int) -> IntPolynomial:
        """Multiply by ``q^k``."""
        if not self._c:
            return self
        return IntPolynomial._raw((0,) * k + self._c)

    def divide_by_q(self, k: int = 1) -> IntPolynomial:
        """Exact division by ``q^k``; raises if the low coefficients are nonzero."""
        if any(self._c[:k]):
            raise ValueError(f"{self} is not divisible by q^{k}")
        return IntPolynomial._raw(self._c[k:])

    def derivative(self, order: int = 1) -> IntPolynomial:
        c = self._c
        for _ in range(order):
            c = tuple(k * c[k] for k in range(1, len(c)))
        return IntPolynomial._raw(_strip(c))

    def reversed(self) -> IntPolynomial:
        return IntPolynomial(self._c[::-1])

    def content(self) -> int:
        from math import gcd

        g = 0
        for a in self._c:
            g = gcd(g, a)
        return g

    # -- evaluation ------------------------------------------------------
    def eval_at_integer(self, x: int) -> int:
        acc = 0
        for a in reversed(self._c):
            acc = acc * x + a
        return acc

    def eval_at_rational(self, x: Fraction | int) -> Fraction:
        x = Fraction(x)
        # homogenised Horner keeps everything in ints until the last step
        num, den = x.numerator, x.denominator
        acc, dpow = 0, 1
        for a in reversed(self._c):
            acc = acc * num + a * dpow
            dpow *= den
        return Fraction(acc, dpow // den if self._c else 1)

    def sign_at(self, x: Fraction | int) -> int:
        """Sign of ``p(x)`` computed without forming the reduced fraction."""
        x = Fraction(x)
        num, den = x.numerator, x.denominator
        acc, dpow = 0, 1
        for a in reversed(self._c):
            acc = acc * num + a * dpow
            dpow *= den
        return (acc > 0) - (acc < 0)

    def __call__(self, x: Fraction | int) -> Fraction | int:
        if isinstance(x, int):
            return self.eval_at_integer(x)
        return self.eval_at_rational(x)

    # -- text / json -----------------------------------------------------
    def to_text(self) -> str:
        """Explicit form ``a0 + a1*q + a2*q^2`` (zero terms omitted)."""
        terms = []
        for k, a in enumerate(self._c):
            if not a:
                continue
            if k == 0:
                body = str(abs(a))
            elif k == 1:
                body = f"{abs(a)}*q"
            else:
                body = f"{abs(a)}*q^{k}"
            terms.append(("-" if a < 0 else "+", body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_compact(self) -> str:
        """Compact form as in printed tables: ``8q+20q^2+q^3``."""
        parts = []
        for k, a in enumerate(self._c):
            if not a:
                continue
            if k == 0:
                body = str(abs(a))
            else:
                mono = "q" if k == 1 else f"q^{k}"
                body = mono if abs(a) == 1 else f"{abs(a)}{mono}"
            sign = "-" if a < 0 else "+"
            parts.append(body if not parts and sign == "+" else sign + body)
        return "".join(parts) or "0"

    _TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(q(?:\^(\d+))?)?")

    @classmethod
    def parse(cls, text: str) -> IntPolynomial:
        """Parse either :meth:`to_text` or :meth:`to_compact` output."""
        s = text.replace(" ", "")
        if s in ("", "0"):
            return cls.zero()
        coeffs: dict[int, int] = {}
        pos = 0
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if m is None or m.end() == pos or (not m.group(2) and not m.group(3)):
                raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
            sign = -1 if m.group(1) == "-" else 1
            coeff = int(m.group(2)) if m.group(2) else 1
            power = 0 if not m.group(3) else int(m.group(4) or 1)
            coeffs[power] = coeffs.get(power, 0) + sign * coeff
            pos = m.end()
        top = max(coeffs)
        return cls([coeffs.get(k, 0) for k in range(top + 1)])

    def to_json(self) -> list[str]:
        return [str(a) for a in self._c]

    @classmethod
    def from_json(cls, data: Sequence[str | int]) -> IntPolynomial:
        return cls(int(a) for a in data)


class EgfSeries:
    """Truncated EGF ``sum_{n<=order} terms[n] t^n / n!`` with polynomial terms."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Coercible]):
        t = tuple(IntPolynomial.coerce(x) for x in terms)
        if not t:
            raise ValueError("an EgfSeries needs at least the t^0 term")
        self.terms = t

    @property
    def order(self) -> int:
        return len(self.terms) - 1

    @classmethod
    def one(cls, order: int) -> EgfSeries:
        return cls([1] + [0] * order)

    @classmethod
    def from_function(cls, f, order: int) -> EgfSeries:
        return cls(f(n) for n in range(order + 1))

    def _check(self, other: EgfSeries) -> None:
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: EgfSeries) -> EgfSeries:
        self._check(other)
        return EgfSeries(a + b for a, b in zip(self.terms, other.terms))

    def __sub__(self, other: EgfSeries) -> EgfSeries:
        self._check(other)
        return EgfSeries(a - b for a, b in zip(self.terms, other.terms))

    def __mul__(self, other: EgfSeries | IntPolynomial | int) -> EgfSeries:
        if isinstance(other, EgfSeries):
            return egf_mul(self, other)
        p = IntPolynomial.coerce(other)
        return EgfSeries(p * a for a in self.terms)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EgfSeries):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __repr__(self) -> str:
        return f"EgfSeries({[str(p) for p in self.terms]})"

    def first_mismatch(self, other: EgfSeries) -> int | None:
        """Index of the first differing term, or ``None`` when equal."""
        self._check(other)
        for n, (a, b) in enumerate(zip(self.terms, other.terms)):
            if a != b:
                return n
        return None


def egf_mul(f: EgfSeries, g: EgfSeries) -> EgfSeries:
    """Binomial convolution: term n is ``sum_k C(n,k) f_k g_{n-k}``."""
    f._check(g)
    out = []
    for n in range(f.order + 1):
        acc = IntPolynomial.zero()
        for k in range(n + 1):
            a, b = f.terms[k], g.terms[n - k]
            if a.is_zero() or b.is_zero():
                continue
            acc = acc + (a * b).scale(comb(n, k))
        out.append(acc)
    return EgfSeries(out)


def egf_exp_linear(c: int, m: int, order: int) -> EgfSeries:
    """``exp(c t q^m)`` truncated at ``order``: term n is ``c^n q^(m n)``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return EgfSeries(IntPolynomial.monomial(c**n, m * n) for n in range(order + 1))


def egf_poly_arg_exp(p: Coercible, order: int) -> EgfSeries:
    """``exp(t p(q))`` truncated at ``order``: term n is ``p(q)^n``."""
    p = IntPolynomial.coerce(p)
    terms = [IntPolynomial.one()]
    for _ in range(order):
        terms.append(terms[-1] * p)
    return EgfSeries(terms)
