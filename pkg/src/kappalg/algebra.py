"""Lie presentations, PBW monomials and exact elements of U(g).

A presentation fixes a finite list of graded generators and a bracket
table on ordered pairs; the PBW total order is the declaration order.
Elements are finite Gaussian-rational combinations of nondecreasing
words, kept canonical (no zero coefficients) at all times.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from kappalg._kernel import multiply_terms, straighten_into
from kappalg.errors import PresentationError
from kappalg.scalars import GaussianRational

GRADES = ("momentum", "rotation", "boost")


@dataclass(frozen=True)
class GeneratorId:
    """One generator: position in PBW order, display name and grade."""

    index: int
    name: str
    grade: str

    @property
    def momentum_degree(self) -> int:
        return 1 if self.grade == "momentum" else 0


@dataclass
class ValidationReport:
    """Outcome of the Jacobi check; ``failures`` lists offending triples."""

    ok: bool
    failures: list  # [(name_triple, residue AlgebraElement)]

    def __bool__(self):
        return self.ok


class LiePresentation:
    """Graded generators plus the bracket table defining U(g).

    ``brackets`` maps generator-name pairs ``(a, b)`` to the expansion of
    ``[a, b]`` as an iterable of ``(coeff, name_or_None)`` terms, where
    ``None`` stands for the unit (word length 0).  Undeclared pairs
    commute.  Each unordered pair may be declared at most once.
    """

    def __init__(self, generators, brackets=None):
        gens = []
        for idx, spec in enumerate(generators):
            if isinstance(spec, GeneratorId):
                spec = (spec.name, spec.grade)
            name, grade = spec
            if grade not in GRADES:
                raise PresentationError("unknown grade %r for generator %r" % (grade, name))
            gens.append(GeneratorId(idx, name, grade))
        self.gens = tuple(gens)
        self.by_name = {g.name: g for g in self.gens}
        if len(self.by_name) != len(self.gens):
            raise PresentationError("duplicate generator names")

        # table[(i, j)] with i < j holds [x_i, x_j] as ((word, coeff), ...)
        table = {}
        for (na, nb), terms in (brackets or {}).items():
            a, b = self._gen(na).index, self._gen(nb).index
            if a == b:
                raise PresentationError("bracket [%s, %s] of a generator with itself" % (na, nb))
            i, j, sign = (a, b, 1) if a < b else (b, a, -1)
            if (i, j) in table:
                raise PresentationError("bracket pair {%s, %s} declared twice" % (na, nb))
            entry = []
            for coeff, target in terms:
                coeff = GaussianRational.coerce(coeff) * sign
                if not coeff:
                    continue
                word = () if target is None else (self._gen(target).index,)
                entry.append((word, coeff))
            table[(i, j)] = tuple(entry)
        self.table = table

        # kernel rewrite rules: (j, i) with j > i  ->  expansion of [x_j, x_i]
        rules = {}
        for (i, j), entry in table.items():
            if entry:
                rules[(j, i)] = tuple((w, -c) for (w, c) in entry)
        self._rules = rules
        self._validation = None

    def _gen(self, name) -> GeneratorId:
        try:
            return self.by_name[name]
        except KeyError:
            raise PresentationError("unknown generator %r" % (name,)) from None

    # -- basic queries ---------------------------------------------------

    def __len__(self):
        return len(self.gens)

    def names(self):
        return tuple(g.name for g in self.gens)

    def momentum_degree(self, word) -> int:
        gens = self.gens
        return sum(1 for k in word if gens[k].grade == "momentum")

    def lorentz_count(self, word) -> int:
        gens = self.gens
        return sum(1 for k in word if gens[k].grade != "momentum")

    def bracket(self, a: int, b: int) -> "AlgebraElement":
        """[x_a, x_b] from the table, for any index order."""
        if a == b:
            return AlgebraElement.zero(self)
        i, j, sign = (a, b, 1) if a < b else (b, a, -1)
        terms = {}
        for word, coeff in self.table.get((i, j), ()):
            terms[word] = coeff * sign
        return AlgebraElement(self, terms, _canonical=True)

    # -- structure checks -------------------------------------------------

    def validate(self) -> ValidationReport:
        """Jacobi check [[x,y],z] + [[y,z],x] + [[z,x],y] = 0 on all triples.

        Evaluated with the bracket table itself (no straightening), so it
        is meaningful even when the table is not a Lie algebra.
        """
        if self._validation is not None:
            return self._validation
        failures = []
        n = len(self.gens)
        for x in range(n):
            for y in range(x + 1, n):
                for z in range(y + 1, n):
                    res = (
                        self._bracket_elem_gen(self.bracket(x, y), z)
                        + self._bracket_elem_gen(self.bracket(y, z), x)
                        + self._bracket_elem_gen(self.bracket(z, x), y)
                    )
                    if not res.is_zero():
                        names = (self.gens[x].name, self.gens[y].name, self.gens[z].name)
                        failures.append((names, res))
        self._validation = ValidationReport(not failures, failures)
        return self._validation

    def _bracket_elem_gen(self, elem: "AlgebraElement", z: int) -> "AlgebraElement":
        # [elem, x_z] for elem of word length <= 1; unit terms drop out
        out = AlgebraElement.zero(self)
        for word, coeff in elem.terms.items():
            if word:
                out = out + coeff * self.bracket(word[0], z)
        return out

    def require_valid(self):
        report = self.validate()
        if not report.ok:
            bad = ", ".join("(%s,%s,%s)" % t for t, _ in report.failures)
            raise PresentationError("bracket table violates the Jacobi identity on %s" % bad)

    # -- equality ----------------------------------------------------------

    def _key(self):
        return (
            tuple((g.name, g.grade) for g in self.gens),
            tuple(sorted((p, tuple(sorted(e))) for p, e in self.table.items() if e)),
        )

    def __eq__(self, other):
        if not isinstance(other, LiePresentation):
            return NotImplemented
        return self is other or self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "LiePresentation(%s)" % (", ".join(self.names()),)


def _same_presentation(a, b):
    if a.pres is not b.pres and a.pres != b.pres:
        raise PresentationError("operands come from different presentations")


class AlgebraElement:
    """Canonical finite combination of PBW-ordered words with exact coefficients."""

    __slots__ = ("pres", "terms")

    def __init__(self, pres: LiePresentation, terms=None, _canonical=False):
        self.pres = pres
        if terms is None:
            terms = {}
        if not _canonical:
            terms = {w: c for w, c in terms.items() if c}
        self.terms = terms

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, pres):
        return cls(pres, {}, _canonical=True)

    @classmethod
    def one(cls, pres):
        return cls(pres, {(): GaussianRational(1)}, _canonical=True)

    @classmethod
    def scalar(cls, pres, value):
        value = GaussianRational.coerce(value)
        return cls(pres, {(): value} if value else {}, _canonical=True)

    @classmethod
    def gen(cls, pres, name):
        idx = pres._gen(name).index
        return cls(pres, {(idx,): GaussianRational(1)}, _canonical=True)

    @classmethod
    def monomial(cls, pres, word, coeff=1):
        """PBW element coeff * word; the word must already be nondecreasing."""
        word = tuple(word)
        if any(word[k] > word[k + 1] for k in range(len(word) - 1)):
            raise ValueError("monomial word %r is not PBW-ordered" % (word,))
        coeff = GaussianRational.coerce(coeff)
        return cls(pres, {word: coeff} if coeff else {}, _canonical=True)

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        _same_presentation(self, other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w)
            s = c if s is None else s + c
            if s:
                terms[w] = s
            elif w in terms:
                del terms[w]
        return AlgebraElement(self.pres, terms, _canonical=True)

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return AlgebraElement(
            self.pres, {w: -c for w, c in self.terms.items()}, _canonical=True
        )

    def scaled(self, coeff) -> "AlgebraElement":
        coeff = GaussianRational.coerce(coeff)
        if not coeff:
            return AlgebraElement.zero(self.pres)
        return AlgebraElement(
            self.pres, {w: c * coeff for w, c in self.terms.items()}, _canonical=True
        )

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scaled(other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scaled(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        _same_presentation(self, other)
        self.pres.require_valid()
        raw = multiply_terms(self.terms, other.terms, self.pres._rules)
        return AlgebraElement(self.pres, {w: c for w, c in raw.items() if c}, _canonical=True)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def max_word_length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def max_momentum_degree(self) -> int:
        return max((self.pres.momentum_degree(w) for w in self.terms), default=0)

    def coefficient(self, word) -> GaussianRational:
        return self.terms.get(tuple(word), GaussianRational(0))

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.pres == other.pres and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        from kappalg.printing import element_str

        return element_str(self)

    __repr__ = __str__


def validate_presentation(pres: LiePresentation) -> ValidationReport:
    return pres.validate()


def normal_order(pres: LiePresentation, word, coeff=1) -> AlgebraElement:
    """PBW normal form of an arbitrary generator word (indices or names)."""
    pres.require_valid()
    idx = tuple(k if isinstance(k, int) else pres._gen(k).index for k in word)
    acc = straighten_into({}, idx, GaussianRational.coerce(coeff), pres._rules)
    return AlgebraElement(pres, {w: c for w, c in acc.items() if c}, _canonical=True)


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a * b


def commutator(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a * b - b * a
