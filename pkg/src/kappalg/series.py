"""Truncated formal power series in the deformation parameter L = 1/kappa.

Coefficients are AlgebraElements or TensorElements (one kind per series).
A series with ``trunc = N`` knows its coefficients exactly for orders
0..N and nothing beyond; ``trunc = None`` marks an exact polynomial (all
unlisted orders are genuinely zero).  Arithmetic never reads past the
truncation and never pads silently.
"""

from __future__ import annotations

from fractions import Fraction

from kappalg.errors import (
    CancellationError,
    SeriesDomainError,
    TruncationError,
)
from kappalg.scalars import GaussianRational


def _min_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class DeformationSeries:
    """Sparse order-to-coefficient map plus a truncation marker."""

    __slots__ = ("proto", "coeffs", "trunc")

    def __init__(self, proto, coeffs=None, trunc=None, _canonical=False):
        # proto: a zero element of the coefficient kind (presentation + legs)
        self.proto = proto
        coeffs = dict(coeffs or {})
        if not _canonical:
            coeffs = {n: e for n, e in coeffs.items() if not e.is_zero()}
            if any(n < 0 for n in coeffs):
                raise ValueError("negative series order")
            if trunc is not None:
                coeffs = {n: e for n, e in coeffs.items() if n <= trunc}
        self.coeffs = coeffs
        self.trunc = trunc

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, elem, trunc=None):
        return cls(elem - elem, {0: elem}, trunc)

    @classmethod
    def term(cls, elem, order, trunc=None):
        return cls(elem - elem, {order: elem}, trunc)

    @classmethod
    def zero_like(cls, other, trunc=None):
        return cls(other.proto, {}, trunc if trunc is not None else other.trunc)

    def one(self) -> "DeformationSeries":
        return DeformationSeries.constant(self._unit_elem(), self.trunc)

    def _unit_elem(self):
        proto = self.proto
        if hasattr(proto, "legs"):
            from kappalg.tensors import TensorElement

            return TensorElement.unit(proto.pres, proto.legs)
        from kappalg.algebra import AlgebraElement

        return AlgebraElement.one(proto.pres)

    # -- inspection -----------------------------------------------------------

    def coeff(self, n: int):
        if self.trunc is not None and n > self.trunc:
            raise TruncationError(
                "order %d requested from a series truncated at order %d" % (n, self.trunc)
            )
        return self.coeffs.get(n, self.proto)

    def valuation(self):
        """Smallest order with a stored nonzero coefficient; None if none."""
        return min(self.coeffs, default=None)

    def known_orders(self):
        return sorted(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_zero_to(self, n: int) -> bool:
        if self.trunc is not None and n > self.trunc:
            raise TruncationError(
                "cannot certify vanishing to order %d beyond truncation %d" % (n, self.trunc)
            )
        return all(k > n for k in self.coeffs)

    # -- linear structure -------------------------------------------------------

    def _check_kind(self, other):
        if not isinstance(other, DeformationSeries):
            raise TypeError("expected a DeformationSeries")
        a, b = self.proto, other.proto
        if hasattr(a, "legs") != hasattr(b, "legs") or (
            hasattr(a, "legs") and a.legs != b.legs
        ):
            raise TypeError("series coefficient kinds differ")
        if a.pres != b.pres:
            raise TypeError("series over different presentations")

    def __add__(self, other):
        if not isinstance(other, DeformationSeries):
            return NotImplemented
        self._check_kind(other)
        trunc = _min_trunc(self.trunc, other.trunc)
        coeffs = {n: e for n, e in self.coeffs.items() if trunc is None or n <= trunc}
        for n, e in other.coeffs.items():
            if trunc is not None and n > trunc:
                continue
            s = coeffs.get(n)
            s = e if s is None else s + e
            if s.is_zero():
                coeffs.pop(n, None)
            else:
                coeffs[n] = s
        return DeformationSeries(self.proto, coeffs, trunc, _canonical=True)

    def __sub__(self, other):
        if not isinstance(other, DeformationSeries):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return DeformationSeries(
            self.proto, {n: -e for n, e in self.coeffs.items()}, self.trunc, _canonical=True
        )

    def scaled(self, coeff) -> "DeformationSeries":
        coeff = GaussianRational.coerce(coeff)
        if not coeff:
            return DeformationSeries(self.proto, {}, self.trunc, _canonical=True)
        return DeformationSeries(
            self.proto,
            {n: e.scaled(coeff) for n, e in self.coeffs.items()},
            self.trunc,
            _canonical=True,
        )

    def map_coeffs(self, fn, proto=None, trunc=None) -> "DeformationSeries":
        """Apply an order-preserving linear map to every coefficient."""
        coeffs = {}
        for n, e in self.coeffs.items():
            v = fn(e)
            if not v.is_zero():
                coeffs[n] = v
        if proto is None:
            proto = self.proto
        return DeformationSeries(
            proto, coeffs, self.trunc if trunc is None else trunc, _canonical=True
        )

    def shifted(self, k: int) -> "DeformationSeries":
        """Multiply by L^k (k >= 0): order n moves to n + k."""
        if k < 0:
            raise ValueError("use KappaScaled for negative shifts")
        trunc = None if self.trunc is None else self.trunc + k
        return DeformationSeries(
            self.proto, {n + k: e for n, e in self.coeffs.items()}, trunc, _canonical=True
        )

    def truncated(self, n: int) -> "DeformationSeries":
        if self.trunc is not None and n > self.trunc:
            raise TruncationError(
                "cannot extend truncation %d to %d" % (self.trunc, n)
            )
        return DeformationSeries(
            self.proto,
            {k: e for k, e in self.coeffs.items() if k <= n},
            n,
            _canonical=True,
        )

    # -- multiplicative structure ----------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scaled(other)
        if not isinstance(other, DeformationSeries):
            return NotImplemented
        self._check_kind(other)
        # (ab)_n is known iff every needed factor is known; with v = valuation
        # treated as exact knowledge of leading zeros this gives
        # trunc = min(Na + v(b), Nb + v(a)) (None = exact polynomial).
        va = self.valuation()
        vb = other.valuation()
        if va is None or vb is None:
            trunc = None if (self.trunc is None and other.trunc is None) else _min_trunc(
                self.trunc, other.trunc
            )
            return DeformationSeries(self.proto, {}, trunc, _canonical=True)
        ta = None if self.trunc is None else self.trunc + vb
        tb = None if other.trunc is None else other.trunc + va
        trunc = _min_trunc(ta, tb)
        coeffs = {}
        for na, ea in self.coeffs.items():
            for nb, eb in other.coeffs.items():
                n = na + nb
                if trunc is not None and n > trunc:
                    continue
                p = ea * eb
                if p.is_zero():
                    continue
                s = coeffs.get(n)
                s = p if s is None else s + p
                if s.is_zero():
                    coeffs.pop(n, None)
                else:
                    coeffs[n] = s
        return DeformationSeries(self.proto, coeffs, trunc, _canonical=True)

    __rmul__ = scaled

    def __eq__(self, other):
        if not isinstance(other, DeformationSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.trunc, frozenset(self.coeffs.items())))

    def __str__(self):
        from kappalg.printing import series_str

        return series_str(self)

    __repr__ = __str__


def series_add(a: DeformationSeries, b: DeformationSeries) -> DeformationSeries:
    return a + b


def series_mul(a: DeformationSeries, b: DeformationSeries) -> DeformationSeries:
    return a * b


def series_truncate(s: DeformationSeries, n: int) -> DeformationSeries:
    return s.truncated(n)


def series_commutator(a: DeformationSeries, b: DeformationSeries) -> DeformationSeries:
    return a * b - b * a


def _resolve_order(s: DeformationSeries, order):
    if order is None:
        order = s.trunc
    if order is None:
        raise TruncationError("an explicit order is required for an exact polynomial input")
    return order


def _split_unit(s: DeformationSeries, what: str, order):
    n = _resolve_order(s, order)
    if s.trunc is not None and n > s.trunc:
        raise TruncationError("input truncated at %d, %s requested to %d" % (s.trunc, what, n))
    lead = s.coeffs.get(0)
    if lead is None or lead != s._unit_elem():
        raise SeriesDomainError("%s needs a series with unit leading coefficient" % what)
    t = (s - s.one()).truncated(n) if s.trunc is None or s.trunc > n else s - s.one()
    return t, n


def series_exp(s: DeformationSeries, order=None) -> DeformationSeries:
    """exp of a series with vanishing order-0 coefficient.

    Powers of a single series commute with each other, so the literal
    exponential sum is correct even for noncommuting coefficients.
    """
    n = _resolve_order(s, order)
    if s.trunc is not None and n > s.trunc:
        raise TruncationError("input truncated at %d, exp requested to %d" % (s.trunc, n))
    if 0 in s.coeffs:
        raise SeriesDomainError("exp needs a vanishing order-0 coefficient")
    one = DeformationSeries.constant(s._unit_elem(), n)
    acc = one
    p = one
    for k in range(1, n + 1):
        p = (p * s).truncated(n)
        if p.is_zero():
            break
        acc = acc + p.scaled(Fraction(1, _factorial(k)))
    return acc


def series_log(s: DeformationSeries, order=None) -> DeformationSeries:
    """log of a unit-lead series: sum (-1)^(k+1) t^k / k with t = s - 1."""
    t, n = _split_unit(s, "log", order)
    acc = DeformationSeries.zero_like(t, n)
    p = DeformationSeries.constant(s._unit_elem(), n)
    for k in range(1, n + 1):
        p = (p * t).truncated(n)
        if p.is_zero():
            break
        acc = acc + p.scaled(Fraction(-1 if k % 2 == 0 else 1, k))
    return acc


def series_inv(s: DeformationSeries, order=None) -> DeformationSeries:
    """Multiplicative inverse of a unit-lead series."""
    t, n = _split_unit(s, "inverse", order)
    acc = DeformationSeries.constant(s._unit_elem(), n)
    p = acc
    for k in range(1, n + 1):
        p = (p * t).truncated(n)
        if p.is_zero():
            break
        acc = acc + (p if k % 2 == 0 else -p)
    return acc


def series_sqrt(s: DeformationSeries, order=None) -> DeformationSeries:
    """Square root of a unit-lead series via the exact binomial expansion."""
    t, n = _split_unit(s, "sqrt", order)
    acc = DeformationSeries.constant(s._unit_elem(), n)
    p = acc
    c = Fraction(1)
    for k in range(1, n + 1):
        p = (p * t).truncated(n)
        if p.is_zero():
            break
        c = c * (Fraction(1, 2) - (k - 1)) / k
        acc = acc + p.scaled(c)
    return acc


def _factorial(k: int) -> int:
    out = 1
    for j in range(2, k + 1):
        out *= j
    return out


class KappaScaled:
    """A series multiplied by a nonnegative power of kappa = 1/L.

    Keeps quantities like kappa*log(Pi0) well typed: the inner series stays
    a genuine nonnegative-order series, and converting back to a plain
    series demands exact cancellation of the first ``power`` orders.
    """

    __slots__ = ("power", "series")

    def __init__(self, power: int, series: DeformationSeries):
        if power < 0:
            raise ValueError("kappa power must be nonnegative")
        self.power = power
        self.series = series

    @classmethod
    def plain(cls, series):
        return cls(0, series)

    def _aligned(self, other: "KappaScaled"):
        p = max(self.power, other.power)
        return (
            p,
            self.series.shifted(p - self.power),
            other.series.shifted(p - other.power),
        )

    def __add__(self, other):
        p, a, b = self._aligned(other)
        return KappaScaled(p, a + b)

    def __sub__(self, other):
        p, a, b = self._aligned(other)
        return KappaScaled(p, a - b)

    def __mul__(self, other):
        if isinstance(other, KappaScaled):
            return KappaScaled(self.power + other.power, self.series * other.series)
        return KappaScaled(self.power, self.series * other)

    def __neg__(self):
        return KappaScaled(self.power, -self.series)

    def scaled(self, coeff):
        return KappaScaled(self.power, self.series.scaled(coeff))

    def demote(self) -> DeformationSeries:
        """Divide out kappa^power, verifying the low orders cancel exactly."""
        s = self.series
        low = [n for n in s.coeffs if n < self.power]
        if low:
            raise CancellationError(
                "orders %s survive below the kappa^%d prefactor" % (sorted(low), self.power)
            )
        trunc = None if s.trunc is None else s.trunc - self.power
        if trunc is not None and trunc < 0:
            raise TruncationError("series too shallow to divide by kappa^%d" % self.power)
        return DeformationSeries(
            s.proto,
            {n - self.power: e for n, e in s.coeffs.items()},
            trunc,
            _canonical=True,
        )

    def is_zero_to(self, n: int) -> bool:
        return self.series.is_zero_to(n + self.power)

    def __str__(self):
        return "kappa^%d * (%s)" % (self.power, self.series)

    __repr__ = __str__
