"""Built-in deformed-Poincare model data in the classical generator basis.

Each model carries its presentation, the Pi0 series and inverse, the
undeformed quadratic Casimir and the deformed target coproducts, plus the
verification suites tying the classical-basis data to the original
exponential-basis relations through the generator substitution map.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from kappalg.algebra import AlgebraElement, LiePresentation
from kappalg.errors import KappalgError
from kappalg.hopf import CoproductMap, ResidueReport, tensor_of_series
from kappalg.scalars import GaussianRational, I, rat
from kappalg.series import (
    DeformationSeries,
    KappaScaled,
    series_commutator,
    series_exp,
    series_inv,
    series_log,
    series_sqrt,
)
from kappalg.tensors import tensor


def epsilon(i: int, j: int, k: int) -> int:
    """Levi-Civita symbol on indices 1..3."""
    return (j - i) * (k - i) * (k - j) // 2 if {i, j, k} == {1, 2, 3} else 0


@dataclass
class KappaModel:
    """One deformed model: presentation, Pi0 data and target coproducts."""

    name: str
    pres: LiePresentation
    order: int
    pi0: DeformationSeries
    pi0_inv: DeformationSeries
    casimir0: AlgebraElement
    coproducts: CoproductMap
    spatial: tuple = ()
    builder: object = field(default=None, repr=False)

    def gen(self, name) -> AlgebraElement:
        return AlgebraElement.gen(self.pres, name)

    def one(self) -> AlgebraElement:
        return AlgebraElement.one(self.pres)

    def rebuilt(self, order: int) -> "KappaModel":
        return self if order == self.order else self.builder(order)


def pi0_series(pres, casimir0: AlgebraElement, order: int):
    """(Pi0, Pi0^{-1}) with Pi0 = L*P0 + sqrt(1 - L^2 C0), truncated at ``order``."""
    one = AlgebraElement.one(pres)
    inside = DeformationSeries(
        casimir0 - casimir0, {0: one, 2: -casimir0}, order
    )
    root = series_sqrt(inside)
    pi0 = root + DeformationSeries.term(AlgebraElement.gen(pres, "P0"), 1, order)
    return pi0, series_inv(pi0)


def _classical_coproducts(pres, pi0, pi0_inv, spatial, rotations=()):
    """Target coproduct images shared by the D=2 and D=4 models."""
    one = AlgebraElement.one(pres)
    p0 = AlgebraElement.gen(pres, "P0")
    images = {}

    cp0 = tensor_of_series(p0, pi0) + tensor_of_series(pi0_inv, p0)
    for name in spatial:
        pk = AlgebraElement.gen(pres, name)
        cp0 = cp0 + tensor_of_series(pi0_inv.map_coeffs(lambda e, pk=pk: pk * e), pk).shifted(1)
    images["P0"] = cp0

    for name in spatial:
        pk = AlgebraElement.gen(pres, name)
        images[name] = tensor_of_series(pk, pi0) + DeformationSeries.constant(tensor(one, pk))

    for name in rotations:
        mi = AlgebraElement.gen(pres, name)
        images[name] = DeformationSeries.constant(tensor(mi, one) + tensor(one, mi))

    return images


def model_d2(order: int = 3) -> KappaModel:
    """Two-dimensional model: momenta P0, P1 and one boost N."""
    pres = LiePresentation(
        [("P0", "momentum"), ("P1", "momentum"), ("N", "boost")],
        {("N", "P0"): [(I, "P1")], ("N", "P1"): [(I, "P0")]},
    )
    p0, p1 = AlgebraElement.gen(pres, "P0"), AlgebraElement.gen(pres, "P1")
    one = AlgebraElement.one(pres)
    c0 = p1 * p1 - p0 * p0
    pi0, pi0_inv = pi0_series(pres, c0, order)

    images = _classical_coproducts(pres, pi0, pi0_inv, spatial=("P1",))
    n = AlgebraElement.gen(pres, "N")
    images["N"] = DeformationSeries.constant(tensor(n, one)) + tensor_of_series(pi0_inv, n)

    return KappaModel(
        name="d2-classical",
        pres=pres,
        order=order,
        pi0=pi0,
        pi0_inv=pi0_inv,
        casimir0=c0,
        coproducts=CoproductMap(pres, images),
        spatial=("P1",),
        builder=model_d2,
    )


def model_d4(order: int = 2) -> KappaModel:
    """Four-dimensional model: momenta P0..P3, rotations M1..M3, boosts N1..N3."""
    gens = [("P0", "momentum")] + [("P%d" % k, "momentum") for k in (1, 2, 3)]
    gens += [("M%d" % k, "rotation") for k in (1, 2, 3)]
    gens += [("N%d" % k, "boost") for k in (1, 2, 3)]

    brackets = {}
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            if i < j:
                brackets[("M%d" % i, "M%d" % j)] = [
                    (I * epsilon(i, j, k), "M%d" % k) for k in (1, 2, 3)
                ]
                brackets[("N%d" % i, "N%d" % j)] = [
                    (-I * epsilon(i, j, k), "M%d" % k) for k in (1, 2, 3)
                ]
            if i != j:
                brackets[("M%d" % i, "N%d" % j)] = [
                    (I * epsilon(i, j, k), "N%d" % k) for k in (1, 2, 3)
                ]
            ejki = [(I * epsilon(i, j, k), "P%d" % k) for k in (1, 2, 3)]
            if any(c for c, _ in ejki):
                brackets[("M%d" % i, "P%d" % j)] = ejki
        brackets[("N%d" % i, "P0")] = [(I, "P%d" % i)]
        brackets[("N%d" % i, "P%d" % i)] = [(I, "P0")]

    pres = LiePresentation(gens, brackets)
    spatial = ("P1", "P2", "P3")
    one = AlgebraElement.one(pres)
    p0 = AlgebraElement.gen(pres, "P0")
    c0 = -(p0 * p0)
    for name in spatial:
        pk = AlgebraElement.gen(pres, name)
        c0 = c0 + pk * pk
    pi0, pi0_inv = pi0_series(pres, c0, order)

    images = _classical_coproducts(
        pres, pi0, pi0_inv, spatial=spatial, rotations=("M1", "M2", "M3")
    )
    for i in (1, 2, 3):
        ni = AlgebraElement.gen(pres, "N%d" % i)
        img = DeformationSeries.constant(tensor(ni, one)) + tensor_of_series(pi0_inv, ni)
        for k in (1, 2, 3):
            for j in (1, 2, 3):
                e = epsilon(i, k, j)
                if not e:
                    continue
                pk = AlgebraElement.gen(pres, "P%d" % k)
                mj = AlgebraElement.gen(pres, "M%d" % j)
                img = img - tensor_of_series(
                    pi0_inv.map_coeffs(lambda u, pk=pk: pk * u), mj
                ).shifted(1).scaled(e)
        images["N%d" % i] = img

    return KappaModel(
        name="d4-classical",
        pres=pres,
        order=order,
        pi0=pi0,
        pi0_inv=pi0_inv,
        casimir0=c0,
        coproducts=CoproductMap(pres, images),
        spatial=spatial,
        builder=model_d4,
    )


MODEL_BUILDERS = {"d2-classical": model_d2, "d4-classical": model_d4}


def get_model(name: str, order: int | None = None) -> KappaModel:
    try:
        builder = MODEL_BUILDERS[name]
    except KeyError:
        raise KappalgError(
            "unknown model %r (have: %s)" % (name, ", ".join(sorted(MODEL_BUILDERS)))
        ) from None
    return builder() if order is None else builder(order)


# -- quantum map and its verification suites -----------------------------------


def quantum_map(model: KappaModel, order: int | None = None):
    """Exponential-basis generators expressed in the classical basis.

    Returns (P0_map, spatial_maps): the time component is kappa * log(Pi0)
    as a KappaScaled value; each spatial component is the plain series
    P_i * Pi0^{-1}.
    """
    order = model.order if order is None else order
    m = model.rebuilt(order)
    logpi = series_log(m.pi0)
    p0_map = KappaScaled(1, logpi)
    spatial_maps = {
        name: m.pi0_inv.map_coeffs(lambda e, g=m.gen(name): g * e) for name in m.spatial
    }
    return p0_map, spatial_maps


def inverse_map_check(model: KappaModel, order: int | None = None) -> ResidueReport:
    """Round trip: substitute the quantum map into the inverse map formulas.

    P0 must come back as (kappa/2)(Pi0 - Pi0^{-1}(1 - L^2 P_vec^2)) and each
    P_i as (P_i Pi0^{-1}) Pi0, exactly to the requested order.
    """
    order = model.order if order is None else order
    m = model.rebuilt(order + 1)
    _, spatial_maps = quantum_map(model, order + 1)
    one = m.one()
    psq = sum((m.gen(k) * m.gen(k) for k in m.spatial), m.gen("P0") - m.gen("P0"))
    poly = DeformationSeries(psq - psq, {0: one, 2: -psq})
    inner = m.pi0 - m.pi0_inv * poly
    p0_back = KappaScaled(1, inner.scaled(rat(1, 2)))
    entries = [
        (
            "P0",
            p0_back.demote() - DeformationSeries.constant(m.gen("P0"), order),
        )
    ]
    for name in m.spatial:
        back = spatial_maps[name] * m.pi0
        entries.append((name, back - DeformationSeries.constant(m.gen(name), back.trunc)))
    return ResidueReport("quantum-map round trip", entries, order)


def bicross_verify(model: KappaModel, order: int | None = None) -> ResidueReport:
    """Verify the exponential-basis algebra and coalgebra relations.

    Every relation is evaluated with the mapped generators substituted in
    and the model's target coproducts; residues must vanish to ``order``.
    """
    order = model.order if order is None else order
    m = model.rebuilt(order + 1)
    logpi = series_log(m.pi0)
    _, smaps = quantum_map(model, order + 1)
    one = m.one()
    half_i = I * rat(1, 2)
    entries = []

    # exp(-2 P0_map / kappa) = Pi0^{-2}, computed through the exponential
    em2 = series_exp(logpi.scaled(-2), order + 1)
    deficit = DeformationSeries.constant(one, order + 1) - em2

    boosts = [g.name for g in m.pres.gens if g.grade == "boost"]
    rotations = [g.name for g in m.pres.gens if g.grade == "rotation"]
    spatial = list(m.spatial)

    # momenta commute after the substitution
    for a in range(len(spatial)):
        for b in range(a + 1, len(spatial)):
            res = series_commutator(smaps[spatial[a]], smaps[spatial[b]])
            entries.append(("[%s_map,%s_map]" % (spatial[a], spatial[b]), res))
    for name in spatial:
        res = series_commutator(logpi, smaps[name])
        entries.append(("[P0_map,%s_map]" % name, KappaScaled(1, res)))

    # rotation sector is undeformed
    for mi in rotations:
        rot = DeformationSeries.constant(m.gen(mi), order + 1)
        res = series_commutator(rot, KappaScaled(1, logpi).demote())
        entries.append(("[%s,P0_map]" % mi, res))
        for j, pj in enumerate(spatial, start=1):
            i = int(mi[1])
            expect = DeformationSeries.zero_like(smaps[pj])
            for k, pk in enumerate(spatial, start=1):
                e = epsilon(i, j, k)
                if e:
                    expect = expect + smaps[pk].scaled(I * e)
            res = series_commutator(rot, smaps[pj]) - expect
            entries.append(("[%s,%s_map]" % (mi, pj), res))

    # boost-momentum relations with the exponential right-hand sides
    for bi in boosts:
        i = int(bi[1]) if len(bi) > 1 else 1
        boost = DeformationSeries.constant(m.gen(bi), order + 1)
        pi_name = "P%d" % i if len(boosts) > 1 else "P1"
        res = KappaScaled(1, series_commutator(boost, logpi)) - KappaScaled.plain(
            smaps[pi_name].scaled(I)
        )
        entries.append(("[%s,P0_map]" % bi, res))
        if len(boosts) > 1:
            pvec = None
            for name in spatial:
                sq = smaps[name] * smaps[name]
                pvec = sq if pvec is None else pvec + sq
        for j, pj in enumerate(spatial, start=1):
            lhs = KappaScaled.plain(series_commutator(boost, smaps[pj]))
            if len(boosts) == 1:
                rhs = KappaScaled(1, deficit.scaled(half_i)) - KappaScaled.plain(
                    (smaps[pj] * smaps[pj]).shifted(1).scaled(half_i)
                )
            else:
                rhs = KappaScaled.plain(
                    (smaps["P%d" % i] * smaps[pj]).shifted(1).scaled(-I)
                )
                if i == j:
                    rhs = rhs + KappaScaled(1, deficit.scaled(half_i)) + KappaScaled.plain(
                        pvec.shifted(1).scaled(half_i)
                    )
            entries.append(("[%s,%s_map]" % (bi, pj), lhs - rhs))

    # coalgebra: primitivity of the time component, twisted legs elsewhere
    delta = m.coproducts
    lhs = delta.of_series(logpi)
    rhs = tensor_of_series(logpi, one) + tensor_of_series(one, logpi)
    entries.append(("coproduct P0_map", KappaScaled(1, lhs - rhs)))
    for name in spatial:
        lhs = delta.of_series(smaps[name])
        rhs = tensor_of_series(smaps[name], one) + tensor_of_series(m.pi0_inv, smaps[name])
        entries.append(("coproduct %s_map" % name, lhs - rhs))
    for bi in boosts:
        lhs = delta.of_series(DeformationSeries.constant(m.gen(bi), order + 1))
        rhs = tensor_of_series(m.gen(bi), DeformationSeries.constant(one, order + 1))
        rhs = rhs + tensor_of_series(m.pi0_inv, m.gen(bi))
        if len(boosts) > 1:
            i = int(bi[1])
            for j, pj in enumerate(spatial, start=1):
                for k in (1, 2, 3):
                    e = epsilon(i, j, k)
                    if e:
                        rhs = rhs - tensor_of_series(
                            smaps[pj], DeformationSeries.constant(m.gen("M%d" % k), order + 1)
                        ).shifted(1).scaled(e)
        entries.append(("coproduct %s" % bi, lhs - rhs))
    for mi in rotations:
        lhs = delta.of_series(DeformationSeries.constant(m.gen(mi), order + 1))
        rhs = tensor_of_series(m.gen(mi), DeformationSeries.constant(one, order + 1))
        rhs = rhs + tensor_of_series(DeformationSeries.constant(one, order + 1), m.gen(mi))
        entries.append(("coproduct %s" % mi, lhs - rhs))

    return ResidueReport("exponential-basis relations", entries, order)


def deformed_casimir(model: KappaModel, order: int | None = None) -> DeformationSeries:
    """kappa^2 (Pi0 + Pi0^{-1} - 2 - L^2 P1^2 Pi0^{-1}), as a genuine series.

    Only defined for the two-dimensional model; the prefactor is handled by
    the kappa-scaled wrapper, which verifies that orders 0 and 1 cancel.
    """
    if model.name != "d2-classical":
        raise KappalgError("the deformed Casimir is only provided for d2-classical")
    order = model.order if order is None else order
    m = model.rebuilt(order + 2)
    one = m.one()
    p1 = m.gen("P1")
    inner = m.pi0 + m.pi0_inv - DeformationSeries.constant(one + one, order + 2)
    inner = inner - m.pi0_inv.map_coeffs(lambda e: p1 * p1 * e).shifted(2)
    return KappaScaled(2, inner).demote()


def casimir_centrality(model: KappaModel, order: int | None = None) -> ResidueReport:
    order = model.order if order is None else order
    cas = deformed_casimir(model, order)
    entries = []
    for g in model.pres.gens:
        gen_series = DeformationSeries.constant(model.gen(g.name), cas.trunc)
        entries.append((g.name, series_commutator(gen_series, cas)))
    return ResidueReport("deformed Casimir centrality", entries, order)


def opposite_coproducts(model: KappaModel) -> CoproductMap:
    return model.coproducts.opposite()
