"""Coproducts and their twist deformations, plus the quasi-Hopf identity checks.

A CoproductMap stores one 2-leg series per generator and extends to all of
U(g) through the homomorphism property.  Twists act by conjugation; the
coassociator, R-matrix and every displayed identity are built from leg
embeddings, leg permutations and exact series products, and the checks
return full residue data rather than booleans.
"""

from __future__ import annotations

from fractions import Fraction

from kappalg.algebra import AlgebraElement, LiePresentation
from kappalg.errors import LegMismatchError, SeriesDomainError
from kappalg.scalars import GaussianRational
from kappalg.series import (
    DeformationSeries,
    _min_trunc,
    series_commutator,
    series_exp,
    series_inv,
)
from kappalg.tensors import TensorElement, tensor


# -- series-level leg plumbing ------------------------------------------------


def tensor_of_series(a, b) -> DeformationSeries:
    """2-leg series from two algebra factors (plain elements or series)."""
    if isinstance(a, AlgebraElement):
        a = DeformationSeries.constant(a)
    if isinstance(b, AlgebraElement):
        b = DeformationSeries.constant(b)
    pres = a.proto.pres
    proto = TensorElement.zero(pres, 2)
    va, vb = a.valuation(), b.valuation()
    if va is None or vb is None:
        trunc = _min_trunc(a.trunc, b.trunc)
        return DeformationSeries(proto, {}, trunc, _canonical=True)
    ta = None if a.trunc is None else a.trunc + vb
    tb = None if b.trunc is None else b.trunc + va
    trunc = _min_trunc(ta, tb)
    coeffs = {}
    for na, ea in a.coeffs.items():
        for nb, eb in b.coeffs.items():
            n = na + nb
            if trunc is not None and n > trunc:
                continue
            p = tensor(ea, eb)
            s = coeffs.get(n)
            s = p if s is None else s + p
            if s.is_zero():
                coeffs.pop(n, None)
            else:
                coeffs[n] = s
    return DeformationSeries(proto, coeffs, trunc, _canonical=True)


def flip_series(s: DeformationSeries) -> DeformationSeries:
    return s.map_coeffs(lambda e: e.flip())


def permute_series(s: DeformationSeries, sigma) -> DeformationSeries:
    return s.map_coeffs(lambda e: e.permute(sigma))


def embed_series(s: DeformationSeries, positions, legs=3) -> DeformationSeries:
    proto = TensorElement.zero(s.proto.pres, legs)
    return s.map_coeffs(lambda e: e.embed(positions, legs), proto=proto)


# -- coproducts ---------------------------------------------------------------


def primitive_coproduct(a: AlgebraElement) -> TensorElement:
    """Homomorphic extension of x -> x(x)1 + 1(x)x over PBW monomials."""
    pres = a.pres
    one = AlgebraElement.one(pres)
    out = TensorElement.zero(pres, 2)
    for word, coeff in a.terms.items():
        part = TensorElement.unit(pres, 2)
        for k in word:
            g = AlgebraElement.monomial(pres, (k,))
            part = part * (tensor(g, one) + tensor(one, g))
        out = out + part.scaled(coeff)
    return out


class CoproductMap:
    """Per-generator 2-leg coproduct series, extended multiplicatively."""

    def __init__(self, pres: LiePresentation, images: dict):
        self.pres = pres
        norm = {}
        for key, series in images.items():
            idx = key if isinstance(key, int) else pres._gen(key).index
            norm[idx] = series
        missing = [g.name for g in pres.gens if g.index not in norm]
        if missing:
            raise SeriesDomainError("coproduct images missing for %s" % ", ".join(missing))
        for idx, series in norm.items():
            g = AlgebraElement.monomial(pres, (idx,))
            if series.coeff(0) != primitive_coproduct(g):
                raise SeriesDomainError(
                    "order-0 coproduct of %s is not primitive" % pres.gens[idx].name
                )
        self.images = norm
        trunc = None
        for series in norm.values():
            trunc = _min_trunc(trunc, series.trunc)
        self.trunc = trunc
        self._word_cache = {}

    @classmethod
    def primitive(cls, pres: LiePresentation, trunc=None) -> "CoproductMap":
        images = {}
        for g in pres.gens:
            elem = primitive_coproduct(AlgebraElement.monomial(pres, (g.index,)))
            images[g.index] = DeformationSeries.constant(elem, trunc)
        return cls(pres, images)

    def of_gen(self, key) -> DeformationSeries:
        idx = key if isinstance(key, int) else self.pres._gen(key).index
        return self.images[idx]

    def of_word(self, word) -> DeformationSeries:
        word = tuple(word)
        cached = self._word_cache.get(word)
        if cached is not None:
            return cached
        if not word:
            out = DeformationSeries.constant(TensorElement.unit(self.pres, 2))
        else:
            out = self.images[word[0]]
            for k in word[1:]:
                out = out * self.images[k]
        self._word_cache[word] = out
        return out

    def of_element(self, a: AlgebraElement) -> DeformationSeries:
        out = DeformationSeries(TensorElement.zero(self.pres, 2), {}, None, _canonical=True)
        for word, coeff in a.terms.items():
            out = out + self.of_word(word).scaled(coeff)
        return out

    def of_series(self, s: DeformationSeries) -> DeformationSeries:
        out = DeformationSeries(TensorElement.zero(self.pres, 2), {}, None, _canonical=True)
        for n, e in s.coeffs.items():
            out = out + self.of_element(e).shifted(n)
        if s.trunc is not None:
            cap = _min_trunc(out.trunc, s.trunc)
            out = out.truncated(cap) if out.trunc != cap else out
        return out

    def opposite(self) -> "CoproductMap":
        return CoproductMap(
            self.pres, {idx: flip_series(s) for idx, s in self.images.items()}
        )

    def names(self):
        return self.pres.names()


def extend_leg(s: DeformationSeries, delta: CoproductMap, leg: int) -> DeformationSeries:
    """Apply the coproduct to one leg of a tensor series, adding a leg.

    ``leg`` is 0-based; orders of the series and of the coproduct images
    are recollected into total order.
    """
    base_legs = s.proto.legs
    if not 0 <= leg < base_legs:
        raise LegMismatchError("no leg %d in a %d-leg series" % (leg, base_legs))
    proto = TensorElement.zero(s.proto.pres, base_legs + 1)
    vs = s.valuation()
    t2 = None if (delta.trunc is None or vs is None) else delta.trunc + vs
    trunc = _min_trunc(s.trunc, t2)
    coeffs = {}
    for n, e in s.coeffs.items():
        for key, c in e.terms.items():
            image = delta.of_word(key[leg])
            for m, te in image.coeffs.items():
                q = n + m
                if trunc is not None and q > trunc:
                    continue
                for ikey, ic in te.terms.items():
                    new = key[:leg] + ikey + key[leg + 1:]
                    add = TensorElement(
                        s.proto.pres, base_legs + 1, {new: c * ic}
                    )
                    prev = coeffs.get(q)
                    prev = add if prev is None else prev + add
                    if prev.is_zero():
                        coeffs.pop(q, None)
                    else:
                        coeffs[q] = prev
    return DeformationSeries(proto, coeffs, trunc, _canonical=True)


# -- twists ----------------------------------------------------------------------


class TwistSeries:
    """Invertible 2-leg series with unit lead, optionally exp of a stored log."""

    def __init__(self, series: DeformationSeries, log: DeformationSeries | None = None):
        pres = series.proto.pres
        if series.proto.legs != 2:
            raise LegMismatchError("twists live in the tensor square")
        if series.coeff(0) != TensorElement.unit(pres, 2):
            raise SeriesDomainError("twist leading coefficient must be 1(x)1")
        self.pres = pres
        self.series = series
        self.log = log
        self._inverse = None

    @classmethod
    def identity(cls, pres, trunc=None) -> "TwistSeries":
        unit = DeformationSeries.constant(TensorElement.unit(pres, 2), trunc)
        zero = DeformationSeries(TensorElement.zero(pres, 2), {}, trunc, _canonical=True)
        return cls(unit, zero)

    @classmethod
    def from_exponent(cls, exponent, order: int) -> "TwistSeries":
        """F = exp(f) for an exponent with vanishing order-0 coefficient."""
        if isinstance(exponent, TensorElement):
            raise SeriesDomainError(
                "twist exponents carry explicit L-orders; wrap the element in a series"
            )
        log = exponent if exponent.trunc is not None else exponent.truncated(order)
        if log.trunc > order:
            log = log.truncated(order)
        return cls(series_exp(log, order), log)

    @property
    def trunc(self):
        return self.series.trunc

    def inverse_series(self) -> DeformationSeries:
        if self._inverse is None:
            if self.log is not None:
                self._inverse = series_exp(-self.log, self.trunc)
            else:
                self._inverse = series_inv(self.series)
        return self._inverse

    def flipped(self) -> "TwistSeries":
        return TwistSeries(
            flip_series(self.series), None if self.log is None else flip_series(self.log)
        )


def _cap(s: DeformationSeries, trunc) -> DeformationSeries:
    if trunc is None:
        return s
    if s.trunc is None or s.trunc > trunc:
        return s.truncated(trunc)
    return s


def conjugate_by_twist(
    twist: TwistSeries, delta: CoproductMap, crosscheck: bool = True
) -> CoproductMap:
    """Twisted coproduct F Delta(.) F^{-1}.

    With an exponential twist the nested-commutator (adjoint) expansion is
    used and, when ``crosscheck`` is set, verified against the direct
    series sandwich.
    """
    f = twist.series
    finv = twist.inverse_series()
    trunc = _min_trunc(twist.trunc, delta.trunc)
    if trunc is None:
        raise SeriesDomainError("conjugation needs a finite truncation on the twist or coproduct")
    images = {}
    for g in twist.pres.gens:
        base = _cap(delta.of_gen(g.index), trunc)
        sandwich = _cap(f * base * finv, trunc)
        if twist.log is not None:
            acc = base
            p = base
            for m in range(1, trunc + 1):
                p = _cap(series_commutator(twist.log, p).scaled(Fraction(1, m)), trunc)
                if p.is_zero():
                    break
                acc = acc + p
            if crosscheck and acc != sandwich:
                raise AssertionError(
                    "adjoint expansion disagrees with the direct sandwich for %s" % g.name
                )
            images[g.index] = acc
        else:
            images[g.index] = sandwich
    return CoproductMap(twist.pres, images)


def coassociator(twist: TwistSeries, base: CoproductMap | None = None) -> DeformationSeries:
    """3-leg obstruction (1(x)F) (id(x)D)(F) (D(x)id)(F^-1) (F^-1(x)1).

    ``base`` is the coproduct being twisted (primitive by default); using
    the twisted coproduct here breaks the quasi-Hopf identities, see the
    regression tests.
    """
    if base is None:
        base = CoproductMap.primitive(twist.pres)
    f = twist.series
    finv = twist.inverse_series()
    out = (
        embed_series(f, (2, 3))
        * extend_leg(f, base, 1)
        * extend_leg(finv, base, 0)
        * embed_series(finv, (1, 2))
    )
    return out


def twisted_rmatrix(twist: TwistSeries) -> DeformationSeries:
    """R = F^T F^{-1}."""
    return flip_series(twist.series) * twist.inverse_series()


# -- residue reports -----------------------------------------------------------


class ResidueReport:
    """Labelled residue series of an identity check; empty residues = pass."""

    def __init__(self, check: str, entries, order):
        self.check = check
        self.entries = list(entries)  # [(label, DeformationSeries)]
        self.order = order

    @property
    def ok(self) -> bool:
        return all(r.is_zero_to(self.order) for _, r in self.entries)

    def failing(self):
        return [(label, r) for label, r in self.entries if not r.is_zero_to(self.order)]

    def __bool__(self):
        return self.ok

    def __str__(self):
        status = "pass" if self.ok else "FAIL"
        lines = ["%s to order %s: %s" % (self.check, self.order, status)]
        for label, r in self.failing():
            lines.append("  residue[%s] = %s" % (label, r))
        return "\n".join(lines)


def _report(check, entries, order=None):
    if order is None:
        order = None
        for _, r in entries:
            order = _min_trunc(order, r.trunc)
    return ResidueReport(check, entries, order)


# -- identity checks ----------------------------------------------------------


def check_intertwiner(rmatrix: DeformationSeries, delta: CoproductMap) -> ResidueReport:
    """Residues of Delta^T(x) R - R Delta(x) per generator."""
    entries = []
    for g in delta.pres.gens:
        d = delta.of_gen(g.index)
        entries.append((g.name, flip_series(d) * rmatrix - rmatrix * d))
    return _report("intertwiner", entries)


def check_coassociativity(delta: CoproductMap) -> ResidueReport:
    """Residues of (id(x)D)D(x) - (D(x)id)D(x) per generator."""
    entries = []
    for g in delta.pres.gens:
        d = delta.of_gen(g.index)
        entries.append((g.name, extend_leg(d, delta, 1) - extend_leg(d, delta, 0)))
    return _report("coassociativity", entries)


def check_quasi_coassoc(delta: CoproductMap, phi: DeformationSeries) -> ResidueReport:
    """Residues of ((id(x)D)D(x)) phi - phi ((D(x)id)D(x))."""
    entries = []
    for g in delta.pres.gens:
        d = delta.of_gen(g.index)
        lhs = extend_leg(d, delta, 1) * phi
        rhs = phi * extend_leg(d, delta, 0)
        entries.append((g.name, lhs - rhs))
    return _report("quasi-coassociativity", entries)


def check_quasitriangularity(
    rmatrix: DeformationSeries, phi: DeformationSeries, delta: CoproductMap
) -> ResidueReport:
    """Residues of the two hexagon identities with coassociator insertions."""
    phi_inv = series_inv(phi)
    r13 = embed_series(rmatrix, (1, 3))
    r23 = embed_series(rmatrix, (2, 3))
    r12 = embed_series(rmatrix, (1, 2))
    lhs1 = extend_leg(rmatrix, delta, 0)
    rhs1 = (
        permute_series(phi, (3, 1, 2))
        * r13
        * permute_series(phi_inv, (1, 3, 2))
        * r23
        * phi
    )
    lhs2 = extend_leg(rmatrix, delta, 1)
    rhs2 = (
        permute_series(phi_inv, (2, 3, 1))
        * r13
        * permute_series(phi, (2, 1, 3))
        * r12
        * phi_inv
    )
    entries = [("coproduct-on-leg-1", lhs1 - rhs1), ("coproduct-on-leg-2", lhs2 - rhs2)]
    return _report("quasitriangularity", entries)


def check_modified_ybe(rmatrix: DeformationSeries, phi: DeformationSeries) -> ResidueReport:
    """Residue of the Yang-Baxter identity with coassociator insertions."""
    phi_inv = series_inv(phi)
    r13 = embed_series(rmatrix, (1, 3))
    r23 = embed_series(rmatrix, (2, 3))
    r12 = embed_series(rmatrix, (1, 2))
    lhs = (
        r12
        * permute_series(phi, (3, 1, 2))
        * r13
        * permute_series(phi_inv, (1, 3, 2))
        * r23
        * phi
    )
    rhs = (
        permute_series(phi, (3, 2, 1))
        * r23
        * permute_series(phi_inv, (2, 3, 1))
        * r13
        * permute_series(phi, (2, 1, 3))
        * r12
    )
    return _report("modified-ybe", [("ybe", lhs - rhs)])


def check_homomorphism(delta: CoproductMap) -> ResidueReport:
    """Residues of Delta([x,y]) - [Delta(x), Delta(y)] per generator pair."""
    pres = delta.pres
    entries = []
    n = len(pres.gens)
    for a in range(n):
        for b in range(a + 1, n):
            lhs = delta.of_element(pres.bracket(a, b))
            rhs = series_commutator(delta.of_gen(a), delta.of_gen(b))
            label = "[%s,%s]" % (pres.gens[a].name, pres.gens[b].name)
            entries.append((label, lhs - rhs))
    return _report("homomorphism", entries)
