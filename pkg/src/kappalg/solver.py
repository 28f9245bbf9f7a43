"""Order-by-order reconstruction of twists and R-matrices.

The unknown at order n is a 2-leg tensor element drawn from a graded,
finite ansatz basis; the defining identity is linear in it, so each order
becomes an exact linear system over the Gaussian rationals.  Systems are
solved by deterministic reduced Gaussian elimination that tracks the row
operations, so an inconsistent system yields a self-validating functional
v with v.A = 0 and v.b != 0 (the obstruction certificate), and a
consistent one yields a particular solution plus a kernel basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from kappalg.algebra import AlgebraElement, LiePresentation
from kappalg.errors import KappalgError
from kappalg.hopf import CoproductMap, primitive_coproduct
from kappalg.scalars import GaussianRational
from kappalg.series import DeformationSeries, series_commutator
from kappalg.tensors import TensorElement

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)


@dataclass(frozen=True)
class AnsatzConstraints:
    """Finite bounds for the graded 2-leg ansatz."""

    momentum_degree: int
    lorentz_degree_max: int = 1
    max_word_length: int = 2
    o3_invariant: bool = False

    @classmethod
    def for_order(cls, n: int, lorentz_max=None, word_max=None, o3_invariant=False):
        """Defaults for the order-n unknown: momentum grade n, one Lorentz factor."""
        return cls(
            momentum_degree=n,
            lorentz_degree_max=1 if lorentz_max is None else lorentz_max,
            max_word_length=n + 1 if word_max is None else word_max,
            o3_invariant=o3_invariant,
        )

    def payload(self):
        return {
            "momentum_degree": self.momentum_degree,
            "lorentz_degree_max": self.lorentz_degree_max,
            "max_word_length": self.max_word_length,
            "o3_invariant": self.o3_invariant,
        }


def _leg_words(pres: LiePresentation, max_len: int):
    idx = range(len(pres.gens))
    for length in range(max_len + 1):
        yield from combinations_with_replacement(idx, length)


def ansatz_basis(pres: LiePresentation, constraints: AnsatzConstraints):
    """Deterministic graded enumeration of admissible 2-leg ansatz elements.

    Without the rotation-invariance filter the basis is the list of single
    tensor monomials meeting the bounds, ordered by (word length, left
    word, right word).  With it, the basis consists of the exact kernel of
    the rotation action on that span (computed by the same exact solver).
    """
    words = list(_leg_words(pres, constraints.max_word_length))
    mom = {w: pres.momentum_degree(w) for w in words}
    lor = {w: pres.lorentz_count(w) for w in words}
    raw = []
    for a in words:
        for b in words:
            if mom[a] + mom[b] != constraints.momentum_degree:
                continue
            if lor[a] + lor[b] > constraints.lorentz_degree_max:
                continue
            raw.append((a, b))
    raw.sort(key=lambda key: (len(key[0]) + len(key[1]), key))
    basis = [TensorElement.monomial(pres, key) for key in raw]
    if not constraints.o3_invariant:
        return basis
    rotations = [g for g in pres.gens if g.grade == "rotation"]
    if not rotations:
        raise KappalgError("rotation-invariant ansatz requested without rotation generators")
    columns = []
    for u in basis:
        image = {}
        for g in rotations:
            d0 = primitive_coproduct(AlgebraElement.monomial(pres, (g.index,)))
            comm = d0 * u - u * d0
            for key, c in comm.terms.items():
                image[(g.name, key)] = c
        columns.append(image)
    system = build_system(basis, columns, {})
    outcome = solve_linear(system)
    return outcome.kernel_basis


@dataclass
class LinearSystem:
    """Exact linear system A x = b over labelled target monomial rows."""

    unknowns: list
    row_keys: list
    rows: list  # sparse dicts col -> coeff, aligned with row_keys
    rhs: list

    @property
    def shape(self):
        return (len(self.row_keys), len(self.unknowns))


def build_system(unknowns, column_images, rhs_map) -> LinearSystem:
    """Assemble rows from per-unknown sparse images and a sparse right side."""
    keys = set(rhs_map)
    for image in column_images:
        keys.update(image)
    row_keys = sorted(keys, key=lambda rk: (rk[0], sum(len(w) for w in rk[1]), rk[1]))
    index = {rk: i for i, rk in enumerate(row_keys)}
    rows = [{} for _ in row_keys]
    for col, image in enumerate(column_images):
        for rk, c in image.items():
            rows[index[rk]][col] = c
    rhs = [_ZERO] * len(row_keys)
    for rk, c in rhs_map.items():
        rhs[index[rk]] = c
    return LinearSystem(list(unknowns), row_keys, rows, rhs)


@dataclass
class Solution:
    particular: TensorElement
    kernel_basis: list
    particular_coords: list
    kernel_coords: list

    status = "solution"


@dataclass
class Obstruction:
    """Certificate row functional: v.A = 0 while v.b != 0."""

    certificate: list  # [(row_index, coeff)] over original rows
    pairing: GaussianRational
    blocked_rows: list  # row keys in the certificate's support

    status = "obstruction"


def _combine(unknowns, coords) -> TensorElement:
    pres = unknowns[0].pres if unknowns else None
    if pres is None:
        raise KappalgError("empty unknown list")
    out = TensorElement.zero(pres, unknowns[0].legs)
    for u, c in zip(unknowns, coords):
        if c:
            out = out + u.scaled(c)
    return out


def solve_linear(system: LinearSystem):
    """Deterministic exact elimination with Fredholm certificate extraction.

    Pivots are chosen as the first structurally nonzero entry in fixed
    column order, scanning rows in their original order; the eliminated-row
    bookkeeping (v such that v.A = current row) directly provides the
    obstruction certificate when a zero row meets a nonzero right side.
    """
    nrows, ncols = system.shape
    rows = [dict(r) for r in system.rows]
    rhs = list(system.rhs)
    certs = [{i: _ONE} for i in range(nrows)]
    pivot_row_of_col = {}
    used = [False] * nrows
    for col in range(ncols):
        pivot = None
        for r in range(nrows):
            if not used[r] and rows[r].get(col):
                pivot = r
                break
        if pivot is None:
            continue
        used[pivot] = True
        pivot_row_of_col[col] = pivot
        inv = rows[pivot][col].inverse()
        rows[pivot] = {c: v * inv for c, v in rows[pivot].items()}
        rhs[pivot] = rhs[pivot] * inv
        certs[pivot] = {k: v * inv for k, v in certs[pivot].items()}
        prow, prhs, pcert = rows[pivot], rhs[pivot], certs[pivot]
        for r in range(nrows):
            if r == pivot:
                continue
            factor = rows[r].get(col)
            if not factor:
                continue
            row = rows[r]
            for c, v in prow.items():
                s = row.get(c, _ZERO) - factor * v
                if s:
                    row[c] = s
                else:
                    row.pop(c, None)
            rhs[r] = rhs[r] - factor * prhs
            cert = certs[r]
            for k, v in pcert.items():
                s = cert.get(k, _ZERO) - factor * v
                if s:
                    cert[k] = s
                else:
                    cert.pop(k, None)
    for r in range(nrows):
        if not rows[r] and rhs[r]:
            cert = certs[r]
            # normalize: first nonzero entry in row order becomes 1
            lead = cert[min(cert)]
            inv = lead.inverse()
            cert = {k: v * inv for k, v in cert.items()}
            pairing = rhs[r] * inv
            support = sorted(cert)
            return Obstruction(
                certificate=sorted(cert.items()),
                pairing=pairing,
                blocked_rows=[system.row_keys[k] for k in support],
            )
    particular = [_ZERO] * ncols
    for col, r in pivot_row_of_col.items():
        particular[col] = rhs[r]
    free_cols = [c for c in range(ncols) if c not in pivot_row_of_col]
    kernel_coords = []
    for f in free_cols:
        vec = [_ZERO] * ncols
        vec[f] = _ONE
        for col, r in pivot_row_of_col.items():
            v = rows[r].get(f)
            if v:
                vec[col] = -v
        kernel_coords.append(vec)
    return Solution(
        particular=_combine(system.unknowns, particular) if system.unknowns else None,
        kernel_basis=[_combine(system.unknowns, k) for k in kernel_coords],
        particular_coords=particular,
        kernel_coords=kernel_coords,
    )


def verify_outcome(outcome, system: LinearSystem):
    """Independent re-check: substitute a solution or re-multiply a certificate."""
    nrows, ncols = system.shape
    if outcome.status == "solution":
        vectors = [outcome.particular_coords] + [k for k in outcome.kernel_coords]
        targets = [system.rhs] + [[_ZERO] * nrows for _ in outcome.kernel_coords]
        for vec, target in zip(vectors, targets):
            for r in range(nrows):
                acc = _ZERO
                row = system.rows[r]
                for c, v in row.items():
                    if vec[c]:
                        acc = acc + v * vec[c]
                if acc != target[r]:
                    return False, "row %r: got %s, want %s" % (
                        system.row_keys[r],
                        acc,
                        target[r],
                    )
        return True, "solution verified on all %d rows" % nrows
    cert = dict(outcome.certificate)
    comb = {}
    pairing = _ZERO
    for r, coeff in cert.items():
        pairing = pairing + coeff * system.rhs[r]
        for c, v in system.rows[r].items():
            s = comb.get(c, _ZERO) + coeff * v
            if s:
                comb[c] = s
            else:
                comb.pop(c, None)
    if comb:
        return False, "certificate does not annihilate columns %s" % sorted(comb)
    if not pairing:
        return False, "certificate pairs to zero with the right side"
    if pairing != outcome.pairing:
        return False, "stored pairing %s != recomputed %s" % (outcome.pairing, pairing)
    return True, "certificate verified: v.A = 0, v.b = %s" % pairing


# -- the deformation systems -----------------------------------------------------


def _adjoint_exponential(lower: DeformationSeries, base: TensorElement, order: int):
    """sum_m (1/m!) ad_lower^m applied to the constant series at ``base``."""
    acc = DeformationSeries.constant(base, order)
    p = acc
    for m in range(1, order + 1):
        p = series_commutator(lower, p).scaled(Fraction(1, m))
        if p.trunc is None or p.trunc > order:
            p = p.truncated(order)
        if p.is_zero():
            break
        acc = acc + p
    return acc


def _lower_series(pres, lower, order) -> DeformationSeries:
    s = DeformationSeries(TensorElement.zero(pres, 2), {}, order, _canonical=True)
    for k, elem in enumerate(lower, start=1):
        s = s + DeformationSeries.term(elem, k, order)
    return s


def _stack_element(label, elem: TensorElement, into: dict):
    for key, c in elem.terms.items():
        into[(label, key)] = c


def twist_system(
    targets: CoproductMap, n: int, lower, constraints: AnsatzConstraints
) -> LinearSystem:
    """Linear system for the order-n twist exponent coefficient.

    Unknown image: u -> [u, D0(x)] for every generator x; the right side is
    the order-n target coproduct minus every nested-commutator contribution
    of the already-known lower-order exponents.
    """
    pres = targets.pres
    basis = ansatz_basis(pres, constraints)
    lower_series = _lower_series(pres, lower, n)
    d0 = {
        g.name: primitive_coproduct(AlgebraElement.monomial(pres, (g.index,)))
        for g in pres.gens
    }
    rhs_map = {}
    for g in pres.gens:
        known = _adjoint_exponential(lower_series, d0[g.name], n)
        rhs_elem = targets.of_gen(g.index).coeff(n) - known.coeff(n)
        _stack_element(g.name, rhs_elem, rhs_map)
    columns = []
    for u in basis:
        image = {}
        for g in pres.gens:
            comm = u * d0[g.name] - d0[g.name] * u
            _stack_element(g.name, comm, image)
        columns.append(image)
    return build_system(basis, columns, rhs_map)


def solve_twist_order(
    targets: CoproductMap, n: int, lower, constraints: AnsatzConstraints | None = None
):
    """Solve for the order-n twist exponent; returns (outcome, system)."""
    if constraints is None:
        constraints = AnsatzConstraints.for_order(n)
    system = twist_system(targets, n, lower, constraints)
    outcome = solve_linear(system)
    if outcome.status == "solution":
        outcome = _canonicalize_particular(outcome, system)
    return outcome, system


def rmatrix_system(
    delta: CoproductMap, n: int, lower, constraints: AnsatzConstraints
) -> LinearSystem:
    """Linear system for the order-n R-matrix exponent coefficient.

    The defining identity equates the flipped coproduct with the adjoint
    exponential of the R exponent acting on the full deformed coproduct.
    """
    pres = delta.pres
    basis = ansatz_basis(pres, constraints)
    lower_series = _lower_series(pres, lower, n)
    d0 = {
        g.name: primitive_coproduct(AlgebraElement.monomial(pres, (g.index,)))
        for g in pres.gens
    }
    rhs_map = {}
    for g in pres.gens:
        dser = delta.of_gen(g.index)
        flipped = dser.map_coeffs(lambda e: e.flip())
        acc = DeformationSeries.zero_like(dser, n)
        p = dser.truncated(n) if dser.trunc is None or dser.trunc > n else dser
        acc = acc + p
        for m in range(1, n + 1):
            p = series_commutator(lower_series, p).scaled(Fraction(1, m))
            if p.trunc is None or p.trunc > n:
                p = p.truncated(n)
            if p.is_zero():
                break
            acc = acc + p
        rhs_elem = flipped.coeff(n) - acc.coeff(n)
        _stack_element(g.name, rhs_elem, rhs_map)
    columns = []
    for u in basis:
        image = {}
        for g in pres.gens:
            comm = u * d0[g.name] - d0[g.name] * u
            _stack_element(g.name, comm, image)
        columns.append(image)
    return build_system(basis, columns, rhs_map)


def solve_rmatrix_order(
    delta: CoproductMap,
    n: int,
    lower,
    constraints: AnsatzConstraints | None = None,
    antisymmetrize: bool = True,
):
    """Solve for the order-n R exponent; returns (outcome, system)."""
    if constraints is None:
        constraints = AnsatzConstraints.for_order(n)
    system = rmatrix_system(delta, n, lower, constraints)
    outcome = solve_linear(system)
    if outcome.status == "solution":
        outcome = _canonicalize_particular(outcome, system)
        if antisymmetrize:
            outcome = _prefer_antisymmetric(outcome, system)
    return outcome, system


def _canonicalize_particular(outcome: Solution, system: LinearSystem) -> Solution:
    """Reduce the particular solution modulo the kernel span, deterministically."""
    if not outcome.kernel_coords:
        return outcome
    ncols = len(system.unknowns)
    basis = [list(k) for k in outcome.kernel_coords]
    part = list(outcome.particular_coords)
    pivots = []
    for vec in basis:
        lead = next((c for c in range(ncols) if vec[c]), None)
        if lead is None:
            continue
        inv = vec[lead].inverse()
        vec[:] = [v * inv for v in vec]
        for other in basis:
            if other is not vec and other[lead]:
                f = other[lead]
                for c in range(ncols):
                    other[c] = other[c] - f * vec[c]
        pivots.append((lead, vec))
    for lead, vec in pivots:
        f = part[lead]
        if f:
            for c in range(ncols):
                part[c] = part[c] - f * vec[c]
    return Solution(
        particular=_combine(system.unknowns, part),
        kernel_basis=outcome.kernel_basis,
        particular_coords=part,
        kernel_coords=outcome.kernel_coords,
    )


def _prefer_antisymmetric(outcome: Solution, system: LinearSystem) -> Solution:
    """Pick particular + kernel combination with flip(p) = -p when one exists."""
    p = outcome.particular
    sym = p + p.flip()
    if sym.is_zero():
        return outcome
    if not outcome.kernel_basis:
        return outcome
    columns = []
    for k in outcome.kernel_basis:
        image = {}
        _stack_element("sym", k + k.flip(), image)
        columns.append(image)
    rhs_map = {}
    _stack_element("sym", -sym, rhs_map)
    sub = build_system(outcome.kernel_basis, columns, rhs_map)
    fix = solve_linear(sub)
    if fix.status != "solution":
        return outcome
    coords = list(outcome.particular_coords)
    for k, c in zip(outcome.kernel_coords, fix.particular_coords):
        if c:
            for j in range(len(coords)):
                coords[j] = coords[j] + c * k[j]
    return Solution(
        particular=_combine(system.unknowns, coords),
        kernel_basis=outcome.kernel_basis,
        particular_coords=coords,
        kernel_coords=outcome.kernel_coords,
    )
