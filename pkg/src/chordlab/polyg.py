"""Univariate polynomials in the genus symbol ``g`` with exact rational coefficients.

A :class:`PolyG` stores its coefficients constant-term first with trailing
zeros stripped, so the zero polynomial is the empty tuple.  :class:`RatG` is a
quotient of two such polynomials kept in reduced form.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Union

Scalar = Union[int, Fraction]


def _strip(coeffs: Iterable[Scalar]) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class PolyG:
    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        self.coeffs = _strip(coeffs)
        self._hash = None

    # constructors

    @classmethod
    def const(cls, c: Scalar) -> "PolyG":
        return cls((c,))

    @classmethod
    def g(cls) -> "PolyG":
        return cls((0, 1))

    @classmethod
    def linear(cls, slope: Scalar, offset: Scalar) -> "PolyG":
        """``slope * g + offset``."""
        return cls((offset, slope))

    @classmethod
    def product(cls, factors: Iterable["PolyG"]) -> "PolyG":
        return reduce(lambda a, b: a * b, factors, cls.const(1))

    # basic properties

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyG):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.coeffs == _strip((other,))
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    # arithmetic

    @staticmethod
    def _coerce(x) -> "PolyG":
        if isinstance(x, PolyG):
            return x
        if isinstance(x, (int, Rational)):
            return PolyG((x,))
        raise TypeError(f"cannot coerce {type(x).__name__} to PolyG")

    def __add__(self, other) -> "PolyG":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolyG(out)

    __radd__ = __add__

    def __neg__(self) -> "PolyG":
        return PolyG(-c for c in self.coeffs)

    def __sub__(self, other) -> "PolyG":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "PolyG":
        return self._coerce(other) - self

    def __mul__(self, other) -> "PolyG":
        if isinstance(other, (int, Rational)):
            return PolyG(c * other for c in self.coeffs)
        if not isinstance(other, PolyG):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return PolyG()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolyG(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PolyG":
        if n < 0:
            raise ValueError("negative power")
        result = PolyG.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "PolyG") -> tuple["PolyG", "PolyG"]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return PolyG(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for shift in range(dq, -1, -1):
            c = rem[shift + len(other.coeffs) - 1] / lead
            quot[shift] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    rem[shift + i] -= c * b
        return PolyG(quot), PolyG(rem)

    def exact_div(self, other: "PolyG") -> "PolyG":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def __call__(self, g: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    evaluate = __call__

    def to_strings(self) -> list[str]:
        return [_frac_str(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items: Iterable[str]) -> "PolyG":
        return cls(Fraction(s) for s in items)

    def __repr__(self) -> str:
        return f"PolyG({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if not c:
                continue
            mag = abs(c)
            if d == 0:
                body = _frac_str(mag)
            else:
                mono = "g" if d == 1 else f"g^{d}"
                body = mono if mag == 1 else f"{_frac_str(mag)}*{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _frac_str(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def poly_gcd(a: PolyG, b: PolyG) -> PolyG:
    """Monic gcd over the rationals (zero if both inputs are zero)."""
    while b:
        a, b = b, a.divmod(b)[1]
    if a.is_zero():
        return a
    return a * (1 / a.leading())


def _two_power_normalizer(den: PolyG) -> Fraction:
    # scale so that the leading coefficient of den becomes 2**deg
    return Fraction(2 ** den.degree) / den.leading()


class RatG:
    """A reduced quotient ``num / den`` of genus polynomials.

    Canonical form: common factors cancelled and the denominator scaled to
    have leading coefficient ``2**deg``, so ``(2g-2)**e`` stays literally
    ``(2g-2)**e``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = PolyG._coerce(num)
        den = PolyG.const(1) if den is None else PolyG._coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = PolyG(), PolyG.const(1)
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        s = _two_power_normalizer(den)
        self.num, self.den = num * s, den * s

    @staticmethod
    def _coerce(x) -> "RatG":
        return x if isinstance(x, RatG) else RatG(x)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other) -> "RatG":
        other = self._coerce(other)
        if self.den == other.den:
            return RatG(self.num + other.num, self.den)
        return RatG(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatG":
        return RatG(-self.num, self.den)

    def __sub__(self, other) -> "RatG":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RatG":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RatG":
        other = self._coerce(other)
        return RatG(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatG":
        other = self._coerce(other)
        return RatG(self.num * other.den, self.den * other.num)

    def __call__(self, g: Scalar) -> Fraction:
        d = self.den(g)
        if d == 0:
            raise ZeroDivisionError(f"denominator {self.den} vanishes at g={g}")
        return self.num(g) / d

    evaluate = __call__

    def __repr__(self) -> str:
        return f"RatG({self})"

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"
