"""Exact Gaussian rationals.

``Rational`` is :class:`fractions.Fraction`.  ``GaussRational`` stores
``(a + b i) / q`` with integers ``a, b`` and ``q > 0`` in lowest terms, which
keeps the hot arithmetic paths to a handful of integer operations and a single
gcd.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational as _RationalABC

Rational = Fraction

__all__ = ["Rational", "GaussRational", "as_gauss", "ZERO", "ONE", "I"]


class GaussRational:
    __slots__ = ("_a", "_b", "_q")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        q = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        a = re.numerator * (q // re.denominator)
        b = im.numerator * (q // im.denominator)
        self._a, self._b, self._q = a, b, q

    @classmethod
    def _raw(cls, a: int, b: int, q: int) -> "GaussRational":
        if q < 0:
            a, b, q = -a, -b, -q
        g = gcd(gcd(a, b), q)
        if g != 1:
            a //= g
            b //= g
            q //= g
        obj = object.__new__(cls)
        obj._a, obj._b, obj._q = a, b, q
        return obj

    # -- accessors -----------------------------------------------------------
    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._q)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._q)

    @property
    def parts(self) -> tuple[int, int, int]:
        """Integer triple ``(a, b, q)`` with value ``(a + b i) / q``."""
        return self._a, self._b, self._q

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def is_real(self) -> bool:
        return self._b == 0

    def conjugate(self) -> "GaussRational":
        obj = object.__new__(GaussRational)
        obj._a, obj._b, obj._q = self._a, -self._b, self._q
        return obj

    def norm(self) -> Fraction:
        return Fraction(self._a * self._a + self._b * self._b, self._q * self._q)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        o = as_gauss(other)
        if o is None:
            return NotImplemented
        if self._q == o._q:
            return GaussRational._raw(self._a + o._a, self._b + o._b, self._q)
        return GaussRational._raw(
            self._a * o._q + o._a * self._q, self._b * o._q + o._b * self._q, self._q * o._q
        )

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(GaussRational)
        obj._a, obj._b, obj._q = -self._a, -self._b, self._q
        return obj

    def __sub__(self, other):
        o = as_gauss(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = as_gauss(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = as_gauss(other)
        if o is None:
            return NotImplemented
        a, b, q = self._a, self._b, self._q
        c, d, r = o._a, o._b, o._q
        return GaussRational._raw(a * c - b * d, a * d + b * c, q * r)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = as_gauss(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero Gaussian rational")
        c, d, r = o._a, o._b, o._q
        n = c * c + d * d
        # 1/o = r (c - d i) / n
        a, b, q = self._a, self._b, self._q
        return GaussRational._raw((a * c + b * d) * r, (b * c - a * d) * r, q * n)

    def __rtruediv__(self, other):
        o = as_gauss(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return ONE / (self ** (-k))
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison / hashing ------------------------------------------------
    def __eq__(self, other):
        o = as_gauss(other)
        if o is None:
            return NotImplemented
        return self._a == o._a and self._b == o._b and self._q == o._q

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._q))
        return hash((self._a, self._b, self._q))

    def __bool__(self):
        return not self.is_zero()

    # -- presentation --------------------------------------------------------
    def __repr__(self):
        return f"GaussRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        re, im = self.re, self.im
        if im == 0:
            return str(re)
        if re == 0:
            return _imag_str(im)
        sign = "+" if im > 0 else "-"
        return f"({re}{sign}{_imag_str(abs(im))})"

    def encode(self) -> list[int]:
        """``[re_num, re_den, im_num, im_den]`` wire encoding."""
        re, im = self.re, self.im
        return [re.numerator, re.denominator, im.numerator, im.denominator]

    @classmethod
    def decode(cls, data) -> "GaussRational":
        if len(data) != 4:
            raise ValueError(f"coefficient needs 4 integers, got {data!r}")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in data):
            raise ValueError(f"coefficient entries must be integers: {data!r}")
        if data[1] == 0 or data[3] == 0:
            raise ValueError(f"zero denominator in coefficient {data!r}")
        return cls(Fraction(data[0], data[1]), Fraction(data[2], data[3]))


def _imag_str(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}i"


def as_gauss(x) -> GaussRational | None:
    if isinstance(x, GaussRational):
        return x
    if isinstance(x, int):
        obj = object.__new__(GaussRational)
        obj._a, obj._b, obj._q = x, 0, 1
        return obj
    if isinstance(x, _RationalABC):
        return GaussRational._raw(int(x.numerator), 0, int(x.denominator))
    return None


ZERO = GaussRational(0)
ONE = GaussRational(1)
I = GaussRational(0, 1)
