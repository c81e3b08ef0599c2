"""Exact scalar arithmetic: Gaussian rationals and rational multiples of powers of pi.

Every quantity in this library is either a Gaussian rational (an element of
Q(i)) or a Gaussian rational times an integer power of pi.  No floating point
arithmetic ever enters a computation; floats appear only in rendering.
"""

from __future__ import annotations

from fractions import Fraction


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot build a rational from {x!r}")


class Scalar:
    """A Gaussian rational re + i*im with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- ring structure -------------------------------------------------

    def __add__(self, other):
        other = as_scalar(other)
        if not self.im and not other.im:
            return Scalar(self.re + other.re)
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-as_scalar(other))

    def __rsub__(self, other):
        return as_scalar(other) + (-self)

    def __mul__(self, other):
        other = as_scalar(other)
        # real-by-real and purely imaginary fast paths dominate in practice
        if not self.im:
            if not other.im:
                return Scalar(self.re * other.re)
            return Scalar(self.re * other.re, self.re * other.im)
        if not other.im:
            return Scalar(self.re * other.re, self.im * other.re)
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        d = self.re * self.re + self.im * self.im
        if d == 0:
            raise ZeroDivisionError("inverse of zero Scalar")
        return Scalar(self.re / d, -self.im / d)

    def __truediv__(self, other):
        return self * as_scalar(other).inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    # -- rendering ------------------------------------------------------

    def __complex__(self):
        return complex(self.re, self.im)

    def __repr__(self):
        if self.im == 0:
            return f"{self.re}"
        if self.re == 0:
            return f"{self.im}*i"
        return f"({self.re} + {self.im}*i)"


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
MINUS_I = Scalar(0, -1)


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(x)
    raise TypeError(f"cannot interpret {x!r} as a Scalar")


class PiScalar:
    """An exact value coeff * pi**pi_power with coeff a Gaussian rational.

    Zero is canonical: a vanishing coefficient forces pi_power = 0, so that
    equality and hashing behave as expected.  Sums are only defined between
    values carrying the same power of pi (or with zero).
    """

    __slots__ = ("coeff", "pi_power")

    def __init__(self, coeff=0, pi_power: int = 0):
        coeff = as_scalar(coeff)
        if coeff.is_zero():
            pi_power = 0
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "pi_power", int(pi_power))

    def __setattr__(self, name, value):
        raise AttributeError("PiScalar is immutable")

    def is_zero(self) -> bool:
        return self.coeff.is_zero()

    def __add__(self, other):
        if not isinstance(other, PiScalar):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.pi_power != other.pi_power:
            raise ValueError(
                f"cannot add pi^{self.pi_power} and pi^{other.pi_power} terms"
            )
        return PiScalar(self.coeff + other.coeff, self.pi_power)

    def __neg__(self):
        return PiScalar(-self.coeff, self.pi_power)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PiScalar):
            return PiScalar(self.coeff * other.coeff, self.pi_power + other.pi_power)
        return PiScalar(self.coeff * as_scalar(other), self.pi_power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PiScalar):
            return PiScalar(self.coeff / other.coeff, self.pi_power - other.pi_power)
        return PiScalar(self.coeff / as_scalar(other), self.pi_power)

    def __eq__(self, other):
        if not isinstance(other, PiScalar):
            return NotImplemented
        return self.coeff == other.coeff and self.pi_power == other.pi_power

    def __hash__(self):
        return hash((self.coeff, self.pi_power))

    def __complex__(self):
        import math

        return complex(self.coeff) * math.pi ** self.pi_power

    def __repr__(self):
        if self.pi_power == 0:
            return repr(self.coeff)
        return f"{self.coeff!r}*pi^{self.pi_power}"


PI_ZERO = PiScalar(0)
