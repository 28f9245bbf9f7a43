"""Tensor squares and cubes of U(g): legwise products, flip, leg permutations."""

from __future__ import annotations

from fractions import Fraction

from kappalg._kernel import multiply_terms
from kappalg.algebra import AlgebraElement, LiePresentation, _same_presentation
from kappalg.errors import LegMismatchError
from kappalg.scalars import GaussianRational


class TensorElement:
    """Canonical combination of 2- or 3-leg PBW tensor monomials.

    Term keys are tuples of per-leg words; every leg word is PBW-canonical.
    """

    __slots__ = ("pres", "legs", "terms")

    def __init__(self, pres: LiePresentation, legs: int, terms=None, _canonical=False):
        if legs not in (2, 3):
            raise LegMismatchError("tensor elements have 2 or 3 legs, not %r" % (legs,))
        self.pres = pres
        self.legs = legs
        if terms is None:
            terms = {}
        if not _canonical:
            terms = {k: c for k, c in terms.items() if c}
        self.terms = terms

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, pres, legs):
        return cls(pres, legs, {}, _canonical=True)

    @classmethod
    def unit(cls, pres, legs):
        return cls(pres, legs, {((),) * legs: GaussianRational(1)}, _canonical=True)

    @classmethod
    def monomial(cls, pres, legwords, coeff=1):
        key = tuple(tuple(w) for w in legwords)
        coeff = GaussianRational.coerce(coeff)
        return cls(pres, len(key), {key: coeff} if coeff else {}, _canonical=True)

    # -- additive structure ------------------------------------------------

    def _check(self, other):
        if not isinstance(other, TensorElement):
            raise TypeError("expected a TensorElement")
        _same_presentation(self, other)
        if self.legs != other.legs:
            raise LegMismatchError("leg counts differ: %d vs %d" % (self.legs, other.legs))

    def __add__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k)
            s = c if s is None else s + c
            if s:
                terms[k] = s
            elif k in terms:
                del terms[k]
        return TensorElement(self.pres, self.legs, terms, _canonical=True)

    def __sub__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return TensorElement(
            self.pres, self.legs, {k: -c for k, c in self.terms.items()}, _canonical=True
        )

    def scaled(self, coeff) -> "TensorElement":
        coeff = GaussianRational.coerce(coeff)
        if not coeff:
            return TensorElement.zero(self.pres, self.legs)
        return TensorElement(
            self.pres, self.legs, {k: c * coeff for k, c in self.terms.items()}, _canonical=True
        )

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scaled(other)
        return NotImplemented

    # -- multiplicative structure ---------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scaled(other)
        if not isinstance(other, TensorElement):
            return NotImplemented
        self._check(other)
        self.pres.require_valid()
        rules = self.pres._rules
        legs = self.legs
        acc = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                # legwise PBW products, then the cross product over legs
                parts = []
                for leg in range(legs):
                    parts.append(multiply_terms({ka[leg]: ca if leg == 0 else _GR_ONE},
                                                {kb[leg]: cb if leg == 0 else _GR_ONE},
                                                rules))
                _cross_accumulate(acc, parts)
        return TensorElement(
            self.pres, legs, {k: c for k, c in acc.items() if c}, _canonical=True
        )

    # -- leg operations ---------------------------------------------------

    def flip(self) -> "TensorElement":
        """Exchange the two legs; rejects 3-leg input (use permute)."""
        if self.legs != 2:
            raise LegMismatchError("flip is defined on 2 legs; use permute for 3")
        return TensorElement(
            self.pres, 2, {(k[1], k[0]): c for k, c in self.terms.items()}, _canonical=True
        )

    def permute(self, sigma) -> "TensorElement":
        """Send tensor factor k into leg position sigma[k] (1-based positions).

        With this convention an element written u_{sigma(1)...sigma(n)} in
        subscript notation equals ``u.permute(sigma)``.
        """
        sigma = tuple(sigma)
        if sorted(sigma) != list(range(1, self.legs + 1)):
            raise LegMismatchError("%r is not a permutation of 1..%d" % (sigma, self.legs))
        terms = {}
        for k, c in self.terms.items():
            new = [None] * self.legs
            for pos, w in zip(sigma, k):
                new[pos - 1] = w
            terms[tuple(new)] = c
        return TensorElement(self.pres, self.legs, terms, _canonical=True)

    def embed(self, positions, legs=3) -> "TensorElement":
        """Place the factors into the given 1-based leg positions, unit elsewhere."""
        positions = tuple(positions)
        if len(positions) != self.legs or len(set(positions)) != len(positions):
            raise LegMismatchError("invalid positions %r" % (positions,))
        if not all(1 <= p <= legs for p in positions):
            raise LegMismatchError("positions %r out of range for %d legs" % (positions, legs))
        terms = {}
        for k, c in self.terms.items():
            new = [()] * legs
            for pos, w in zip(positions, k):
                new[pos - 1] = w
            terms[tuple(new)] = c
        return TensorElement(self.pres, legs, terms, _canonical=True)

    # -- queries -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, legwords) -> GaussianRational:
        key = tuple(tuple(w) for w in legwords)
        return self.terms.get(key, GaussianRational(0))

    def max_word_length(self) -> int:
        return max((max(len(w) for w in k) for k in self.terms), default=0)

    def momentum_degree_of(self, key) -> int:
        return sum(self.pres.momentum_degree(w) for w in key)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.pres == other.pres and self.legs == other.legs and self.terms == other.terms

    def __hash__(self):
        return hash((self.legs, frozenset(self.terms.items())))

    def __str__(self):
        from kappalg.printing import element_str

        return element_str(self)

    __repr__ = __str__


_GR_ONE = GaussianRational(1)


def _cross_accumulate(acc, parts):
    """Accumulate the cross product of per-leg term dicts into acc."""
    if len(parts) == 2:
        for w0, c0 in parts[0].items():
            for w1, c1 in parts[1].items():
                key = (w0, w1)
                c = c0 * c1
                prev = acc.get(key)
                acc[key] = c if prev is None else prev + c
    else:
        for w0, c0 in parts[0].items():
            for w1, c1 in parts[1].items():
                c01 = c0 * c1
                for w2, c2 in parts[2].items():
                    key = (w0, w1, w2)
                    c = c01 * c2
                    prev = acc.get(key)
                    acc[key] = c if prev is None else prev + c


def tensor(*factors: AlgebraElement) -> TensorElement:
    """Tensor product of 2 or 3 algebra elements (no cross-leg mixing)."""
    if len(factors) not in (2, 3):
        raise LegMismatchError("tensor takes 2 or 3 factors")
    pres = factors[0].pres
    for f in factors[1:]:
        _same_presentation(factors[0], f)
    terms = {}
    if len(factors) == 2:
        for wa, ca in factors[0].terms.items():
            for wb, cb in factors[1].terms.items():
                terms[(wa, wb)] = ca * cb
    else:
        for wa, ca in factors[0].terms.items():
            for wb, cb in factors[1].terms.items():
                for wc, cc in factors[2].terms.items():
                    terms[(wa, wb, wc)] = ca * cb * cc
    return TensorElement(pres, len(factors), terms)


def wedge(a: AlgebraElement, b: AlgebraElement) -> TensorElement:
    """a ^ b = a (x) b - b (x) a."""
    return tensor(a, b) - tensor(b, a)


def tensor_multiply(u: TensorElement, v: TensorElement) -> TensorElement:
    return u * v


def flip(u: TensorElement) -> TensorElement:
    return u.flip()


def permute(u: TensorElement, sigma) -> TensorElement:
    return u.permute(sigma)


def embed(u: TensorElement, positions, legs=3) -> TensorElement:
    return u.embed(positions, legs)


def tensor_commutator(u: TensorElement, v: TensorElement) -> TensorElement:
    return u * v - v * u
