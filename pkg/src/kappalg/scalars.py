"""Exact Gaussian-rational scalars a + b*i with arbitrary-precision rational parts."""

from __future__ import annotations

from fractions import Fraction


class GaussianRational:
    """Immutable field element ``a + b*i`` over the rationals.

    Both parts are :class:`fractions.Fraction`, so arithmetic is exact,
    always in lowest terms with positive denominator.  Values are treated
    as immutable; never assign to ``re``/``im`` after construction.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def _make(cls, re, im):
        # fast path for internal use: both arguments already Fraction
        self = object.__new__(cls)
        self.re = re
        self.im = im
        return self

    # -- conversions -------------------------------------------------

    @staticmethod
    def coerce(value) -> "GaussianRational":
        if type(value) is GaussianRational:
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(value)
        raise TypeError("cannot interpret %r as a Gaussian rational" % (value,))

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, (GaussianRational, int, Fraction)):
            return NotImplemented
        other = GaussianRational.coerce(other)
        return GaussianRational._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (GaussianRational, int, Fraction)):
            return NotImplemented
        other = GaussianRational.coerce(other)
        return GaussianRational._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return GaussianRational.coerce(other).__sub__(self)

    def __mul__(self, other):
        if not isinstance(other, (GaussianRational, int, Fraction)):
            return NotImplemented
        other = GaussianRational.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._make(a * c, b)
        return GaussianRational._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (GaussianRational, int, Fraction)):
            return NotImplemented
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return GaussianRational.coerce(other) * self.inverse()

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._make(self.re, -self.im)

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational._make(self.re / n, -self.im / n)

    # -- comparison / hashing ------------------------------------------

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    # -- display --------------------------------------------------------

    def exact_str(self) -> str:
        """Canonical exact rendering: "p/q", "r/s i" or "p/q+r/s i"."""
        re, im = self.re, self.im
        if not im:
            return str(re)
        if im == 1:
            ipart = "i"
        elif im == -1:
            ipart = "-i"
        else:
            ipart = "%s i" % im
        if not re:
            return ipart
        if im > 0:
            return "%s+%s" % (re, ipart)
        return "%s%s" % (re, ipart)

    def __str__(self):
        return self.exact_str()

    def __repr__(self):
        return "GaussianRational(%r, %r)" % (str(self.re), str(self.im))


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def rat(p, q=1) -> GaussianRational:
    """Shorthand for the real Gaussian rational p/q."""
    return GaussianRational(Fraction(p, q))


def imag(p, q=1) -> GaussianRational:
    """Shorthand for the purely imaginary Gaussian rational (p/q)*i."""
    return GaussianRational(0, Fraction(p, q))
