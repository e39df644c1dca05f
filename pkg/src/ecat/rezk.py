"""Representables, the Yoneda embedding, univalence reporting, desk-scale
Rezk completion by skeletonization, and brute-force verification of the
precomposition universal property.

Skeletonization replaces the presheaf-image construction: with decidable
equality and finite data the two agree up to weak equivalence, which the test
suite cross-checks at micro scale against the image of the Yoneda embedding.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .construct import (
    FunctorCategoryResult,
    functor_category_enrichment,
    full_sub_enrichment,
    opposite_enrichment,
    self_enrichment,
)
from .core import (
    Enrichment,
    EnrichedFunctor,
    EnrichedTransformation,
    check_nat_trans_enrichment,
    compose_functors,
    enumerate_enriched_functors,
    enumerate_enriched_transformations,
    find_inverse,
    invertible_2cell,
    postcompose_mor,
    precompose_mor,
    whisker_left,
)
from .factor import (
    EsoWitness,
    FullyFaithfulWitness,
    is_essentially_surjective,
    is_fully_faithful,
    iso_arrows,
    underlying_hom_inverse,
)
from .report import CapabilityError, CheckReport, Collector, StructuralError
from .vbase import MorRef

__all__ = [
    "UnivalenceReport",
    "RezkResult",
    "representable",
    "representable_transformation",
    "yoneda",
    "check_yoneda_ff",
    "univalence_report",
    "rezk_completion",
    "transport_transformation",
    "extend_functor",
    "check_precomp_equivalence",
    "enumerate_enriched_functors",
    "enumerate_enriched_transformations",
]


@dataclass
class UnivalenceReport:
    """Finite reading of univalence: skeletal (no isos between distinct
    objects) and gaunt (skeletal with trivial automorphism groups)."""

    skeletal: bool
    automorphism_counts: dict
    gaunt: bool


@dataclass
class RezkResult:
    completion: Enrichment
    unit_functor: EnrichedFunctor
    cert_ff: FullyFaithfulWitness
    cert_eso: EsoWitness


def representable(E: Enrichment, y: int, selfE: Enrichment | None = None,
                  opE: Enrichment | None = None) -> EnrichedFunctor:
    """The presheaf E(-, y) as an enriched functor op(E) -> self(base)."""
    V = E.base
    if opE is None:
        opE = opposite_enrichment(E)
    if selfE is None:
        selfE = self_enrichment(V)
    ob_map = {}
    mor_map = {}
    e_fun = {}
    for x in E.objects():
        ob_map[x] = E.hom(x, y)
    for m in opE.under.mors():
        # an op-morphism x1 -> x2 is an E-morphism x2 -> x1
        f = MorRef(m.dst, m.src, m.k)
        mor_map[m] = postcompose_mor(E, y, f)
    for x1, x2 in itertools.product(E.objects(), repeat=2):
        ec = E.ecomp(x2, x1, y)
        if ec is None:
            raise StructuralError(f"enriched composition missing at ({x2},{x1},{y})")
        chain = V.compose(V.symmetry(E.hom(x2, x1), E.hom(x1, y)), ec)
        e_fun[(x1, x2)] = V.lam(E.hom(x2, x1), E.hom(x1, y), E.hom(x2, y), chain)
    return EnrichedFunctor(opE, selfE, ob_map, mor_map, e_fun, name=f"repr({y})")


def representable_transformation(
    E: Enrichment, f: MorRef, r1: EnrichedFunctor, r2: EnrichedFunctor
) -> EnrichedTransformation:
    """The transformation E(-, y1) => E(-, y2) induced by f: y1 -> y2; its
    component at x composes f on the target side."""
    comp = {x: precompose_mor(E, x, f) for x in E.objects()}
    return EnrichedTransformation(r1, r2, comp, name=f"repr({f})")


@dataclass(eq=False)
class YonedaResult:
    embedding: EnrichedFunctor
    functor_category: FunctorCategoryResult
    representables: dict


def yoneda(E: Enrichment, cap: int = 10_000) -> YonedaResult:
    """The enriched Yoneda embedding into the functor category of presheaves."""
    V = E.base
    opE = opposite_enrichment(E)
    selfE = self_enrichment(V)
    fc = functor_category_enrichment(opE, selfE, cap=cap)
    FC = fc.enrichment
    reps = {y: representable(E, y, selfE=selfE, opE=opE) for y in E.objects()}
    ob_map = {y: fc.functor_index(reps[y]) for y in E.objects()}
    mor_map = {}
    for f in E.under.mors():
        tau = representable_transformation(E, f, reps[f.src], reps[f.dst])
        mor_map[f] = MorRef(
            ob_map[f.src],
            ob_map[f.dst],
            fc.transformation_index(ob_map[f.src], ob_map[f.dst], tau.component),
        )
    e_fun = {}
    objs = list(E.objects())
    for y1, y2 in itertools.product(objs, repeat=2):
        a, b = ob_map[y1], ob_map[y2]
        P = fc.products[(a, b)]
        legs = []
        for x in objs:
            ec = E.ecomp(x, y1, y2)
            if ec is None:
                raise StructuralError(f"enriched composition missing at ({x},{y1},{y2})")
            legs.append(V.lam(E.hom(y1, y2), E.hom(x, y1), E.hom(x, y2), ec))
        cone = P.pair(E.hom(y1, y2), legs)
        e_fun[(y1, y2)] = fc.equalizers[(a, b)].factor(cone)
    embedding = EnrichedFunctor(E, FC, ob_map, mor_map, e_fun, name="yoneda")
    return YonedaResult(embedding, fc, reps)


def check_yoneda_ff(E: Enrichment, cap: int = 10_000) -> CheckReport:
    """Fully-faithfulness of the Yoneda embedding; a failure here is a
    library bug, not a property of E."""
    col = Collector()
    res = yoneda(E, cap=cap)
    witness = is_fully_faithful(res.embedding)
    if not witness.ok:
        col.add("yoneda-fully-faithful", witness.failing)
    return col.report()


def univalence_report(E: Enrichment) -> UnivalenceReport:
    cat = E.under
    skeletal = True
    for x, y in itertools.combinations(list(E.objects()), 2):
        if iso_arrows(cat, x, y):
            skeletal = False
            break
    autos = {}
    for x in E.objects():
        autos[x] = len(iso_arrows(cat, x, x))
    gaunt = skeletal and all(c == 1 for c in autos.values())
    return UnivalenceReport(skeletal, autos, gaunt)


def rezk_completion(E: Enrichment) -> RezkResult:
    """Skeletonize: keep the least object of each isomorphism class and send
    every object to its representative along the first iso found. Certificates
    that the unit is a weak equivalence are computed, not assumed."""
    cat = E.under
    rep = {}
    iso_to = {}
    for x in E.objects():
        found = None
        for r in range(x + 1):
            isos = iso_arrows(cat, r, x)
            if isos:
                found = (r, isos[0])  # first iso r -> x
                break
        rep[x], iso_to[x] = found
    kept = sorted({r for r in rep.values()})
    completion, inclusion = full_sub_enrichment(E, lambda x: rep[x] == x)
    new_of = {old: new for new, old in inclusion.ob_map.items()}

    ob_map = {x: new_of[rep[x]] for x in E.objects()}
    mor_map = {}
    for f in cat.mors():
        cx, cy = iso_to[f.src], iso_to[f.dst]
        cy_inv = find_inverse(cat, cy)
        m = cat.compose(cat.compose(cx, f), cy_inv)
        mor_map[f] = MorRef(new_of[rep[f.src]], new_of[rep[f.dst]], m.k)
    e_fun = {}
    V = E.base
    for x, y in itertools.product(E.objects(), repeat=2):
        cx, cy = iso_to[x], iso_to[y]
        cy_inv = find_inverse(cat, cy)
        m = postcompose_mor(E, y, cx)                 # E(x,y) -> E(rx, y)
        m = V.compose(m, precompose_mor(E, rep[x], cy_inv))  # -> E(rx, ry)
        e_fun[(x, y)] = m
    unit = EnrichedFunctor(E, completion, ob_map, mor_map, e_fun, name="rezk-unit")
    return RezkResult(completion, unit, is_fully_faithful(unit), is_essentially_surjective(unit))


# ---------------------------------------------------------------------------
# the precomposition universal property
# ---------------------------------------------------------------------------

def transport_transformation(
    F: EnrichedFunctor,
    G1: EnrichedFunctor,
    G2: EnrichedFunctor,
    tau: EnrichedTransformation,
) -> EnrichedTransformation:
    """Given eso F: E1 -> E2 and tau: F.G1 => F.G2, the unique theta: G1 => G2
    with F whiskered into theta equal to tau. Uniqueness is verified by
    scanning every candidate component."""
    eso = is_essentially_surjective(F)
    if not eso.ok:
        raise CapabilityError(f"transport needs an essentially surjective functor; missed {eso.missed}")
    E2 = F.cod
    E3 = G1.cod
    cat2 = E2.under
    cat3 = E3.under
    comp = {}
    for x in E2.objects():
        candidates = []
        blocking = None
        for cand in cat3.hom(G1.ob(x), G2.ob(x)):
            good = True
            for w2 in F.dom.objects():
                for i2 in iso_arrows(cat2, F.ob(w2), x):
                    lhs = cat3.compose(tau.at(w2), G2.mor(i2))
                    rhs = cat3.compose(G1.mor(i2), cand)
                    if lhs != rhs:
                        good = False
                        blocking = (w2, i2)
                        break
                if not good:
                    break
            if good:
                candidates.append(cand)
        if not candidates:
            raise StructuralError(
                f"no transported component at {x}; incompatible at witness {blocking}"
            )
        if len(candidates) > 1:
            raise StructuralError(
                f"transport component at {x} is not unique: {len(candidates)} candidates"
            )
        comp[x] = candidates[0]
    theta = EnrichedTransformation(G1, G2, comp, name="transported")
    rep = check_nat_trans_enrichment(theta)
    if not rep.ok:
        raise StructuralError(f"transported transformation fails enrichment: {rep.failures[0].describe()}")
    back = whisker_left(F, theta)
    if back.component != tau.component:
        raise StructuralError("transported transformation does not whisker back to tau")
    return theta


def extend_functor(
    F: EnrichedFunctor, G: EnrichedFunctor
) -> tuple[EnrichedFunctor, EnrichedTransformation]:
    """Extend G: E1 -> E3 along a weak equivalence F: E1 -> E2 to H: E2 -> E3
    with an invertible 2-cell F.H => G.

    The object action and hom components are verified against every witness
    pair, turning the uniqueness claims of the construction into checks.
    """
    ffw = is_fully_faithful(F)
    eso = is_essentially_surjective(F)
    if not ffw.ok or not eso.ok:
        raise CapabilityError("extension needs a weak equivalence")
    E1, E2, E3 = F.dom, F.cod, G.cod
    V = E1.base
    cat1, cat2, cat3 = E1.under, E2.under, E3.under

    def f_inv(g: MorRef, w1: int, w2: int) -> MorRef:
        return underlying_hom_inverse(F, ffw, g, w1, w2)

    ob_map = {}
    chosen = {}
    for x in E2.objects():
        w, i = eso.preimage[x]
        chosen[x] = (w, i)
        ob_map[x] = G.ob(w)

    def phi(x: int, w: int, i: MorRef) -> MorRef:
        """The iso G w -> H x for a witness (w, i: F w ~ x)."""
        w0, i0 = chosen[x]
        i0_inv = find_inverse(cat2, i0)
        k = f_inv(cat2.compose(i, i0_inv), w, w0)
        return G.mor(k)

    # coherence of the phi family: G k ; phi(w2, i2) = phi(w1, i1) whenever
    # F k ; i2 = i1
    for x in E2.objects():
        for w1, w2 in itertools.product(E1.objects(), repeat=2):
            for i1 in iso_arrows(cat2, F.ob(w1), x):
                for i2 in iso_arrows(cat2, F.ob(w2), x):
                    for k in cat1.hom(w1, w2):
                        if cat2.compose(F.mor(k), i2) != i1:
                            continue
                        lhs = cat3.compose(G.mor(k), phi(x, w2, i2))
                        rhs = phi(x, w1, i1)
                        if lhs != rhs:
                            raise StructuralError(
                                f"phi family incoherent at {x} with witnesses {(w1, i1)}, {(w2, i2)}"
                            )

    mor_map = {}
    for h in cat2.mors():
        w1, i1 = chosen[h.src]
        w2, i2 = chosen[h.dst]
        i2_inv = find_inverse(cat2, i2)
        k = f_inv(cat2.compose(cat2.compose(i1, h), i2_inv), w1, w2)
        mor_map[h] = G.mor(k)

    e_fun = {}
    for x, y in itertools.product(E2.objects(), repeat=2):
        w1, i1 = chosen[x]
        w2, i2 = chosen[y]
        i2_inv = find_inverse(cat2, i2)
        m = postcompose_mor(E2, y, i1)            # E2(x,y) -> E2(Fw1, y)
        m = V.compose(m, precompose_mor(E2, F.ob(w1), i2_inv))  # -> E2(Fw1, Fw2)
        m = V.compose(m, ffw.inverses[(w1, w2)])  # -> E1(w1, w2)
        m = V.compose(m, G.e_fun(w1, w2))         # -> E3(Gw1, Gw2)
        # chosen-witness phis are identities; general witnesses are verified below
        e_fun[(x, y)] = m
    H = EnrichedFunctor(E2, E3, ob_map, mor_map, e_fun, name="extension")

    # verify the hom component against every witness pair
    for x, y in itertools.product(E2.objects(), repeat=2):
        for w1 in E1.objects():
            for i1 in iso_arrows(cat2, F.ob(w1), x):
                for w2 in E1.objects():
                    for i2 in iso_arrows(cat2, F.ob(w2), y):
                        i2_inv = find_inverse(cat2, i2)
                        m = postcompose_mor(E2, y, i1)
                        m = V.compose(m, precompose_mor(E2, F.ob(w1), i2_inv))
                        m = V.compose(m, ffw.inverses[(w1, w2)])
                        m = V.compose(m, G.e_fun(w1, w2))
                        p1_inv = find_inverse(cat3, phi(x, w1, i1))
                        m = V.compose(m, postcompose_mor(E3, G.ob(w2), p1_inv))
                        m = V.compose(m, precompose_mor(E3, H.ob(x), phi(y, w2, i2)))
                        if m != e_fun[(x, y)]:
                            raise StructuralError(
                                f"extension hom component at ({x},{y}) differs at witnesses"
                                f" {(w1, i1)}, {(w2, i2)}"
                            )

    # comparison 2-cell F.H => G: component at w is phi(F w, w, id)^{-1}
    comp = {}
    for w in E1.objects():
        p = phi(F.ob(w), w, cat2.id_of(F.ob(w)))
        p_inv = find_inverse(cat3, p)
        if p_inv is None:
            raise StructuralError("comparison component is not invertible")
        comp[w] = p_inv
    cell = EnrichedTransformation(compose_functors(F, H), G, comp, name="extension-cell")
    rep = check_nat_trans_enrichment(cell)
    if not rep.ok:
        raise StructuralError(f"extension 2-cell fails enrichment: {rep.failures[0].describe()}")
    if invertible_2cell(cell) is None:
        raise StructuralError("extension 2-cell is not invertible")
    return H, cell


def check_precomp_equivalence(
    F: EnrichedFunctor, E3: Enrichment, cap: int = 10_000
) -> CheckReport:
    """Precomposition with a weak equivalence is an equivalence of functor
    categories: fully faithful and essentially surjective on the enumerated
    underlying categories, cross-validated against the transport/extension
    constructions."""
    col = Collector()
    E1, E2 = F.dom, F.cod
    fun2 = enumerate_enriched_functors(E2, E3, cap=cap)
    fun1 = enumerate_enriched_functors(E1, E3, cap=cap)
    keys1 = {G.table_key(): i for i, G in enumerate(fun1)}

    def precomp(G: EnrichedFunctor) -> int:
        got = compose_functors(F, G)
        key = got.table_key()
        if key not in keys1:
            raise StructuralError("precomposition leaves the enumerated functor category")
        return keys1[key]

    images = [precomp(G) for G in fun2]

    # fully faithful: whiskering is a bijection on each transformation set
    for a, b in itertools.product(range(len(fun2)), repeat=2):
        src = enumerate_enriched_transformations(fun2[a], fun2[b], cap=cap)
        tgt = enumerate_enriched_transformations(fun1[images[a]], fun1[images[b]], cap=cap)
        whiskered = []
        for tau in src:
            w = whisker_left(F, tau)
            whiskered.append(tuple(sorted(w.component.items())))
        if len(set(whiskered)) != len(whiskered):
            col.add("precomp-faithful", (a, b), len(set(whiskered)), len(whiskered))
        if len(whiskered) != len(tgt):
            col.add("precomp-full", (a, b), len(whiskered), len(tgt))
        else:
            # cross-validate fullness via the transport construction
            for tau1 in tgt:
                glue = EnrichedTransformation(
                    compose_functors(F, fun2[a]), compose_functors(F, fun2[b]), tau1.component
                )
                theta = transport_transformation(F, fun2[a], fun2[b], glue)
                w = whisker_left(F, theta)
                if w.component != tau1.component:
                    col.add("precomp-transport-roundtrip", (a, b))

    # essentially surjective: every functor out of E1 is isomorphic to a precomposite
    for j, H in enumerate(fun1):
        hit = False
        for i, G in enumerate(fun2):
            if images[i] == j:
                hit = True
                break
            # isomorphism in the functor category suffices
            for tau in enumerate_enriched_transformations(fun1[images[i]], H, cap=cap):
                if invertible_2cell(tau) is not None:
                    hit = True
                    break
            if hit:
                break
        if not hit:
            col.add("precomp-eso", (j,))
            continue
        ext, cell = extend_functor(F, H)
        ei = precomp(ext)
        iso_found = any(
            invertible_2cell(tau) is not None
            for tau in enumerate_enriched_transformations(fun1[ei], H, cap=cap)
        )
        if not iso_found:
            col.add("precomp-extension-isomorphic", (j,))
    return col.report()
