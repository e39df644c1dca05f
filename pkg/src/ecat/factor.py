"""Image factorization of enriched functors and weak-equivalence inversion.

Fully faithful means every hom-wise enrichment component has a two-sided
inverse in the base; essentially surjective means every codomain object is
isomorphic to a value, with the lexicographically least witness chosen.
Orthogonality is implemented operationally: diagonal lifts of squares against
(eso, ff) pairs and unique 2-cells between lifts. A functor that is both eso
and ff inverts to an adjoint equivalence by lifting its own identity square.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .construct import full_sub_enrichment
from .core import (
    Enrichment,
    EnrichedFunctor,
    EnrichedTransformation,
    compose_functors,
    find_inverse,
    id_functor,
    invertible_2cell,
    postcompose_mor,
    precompose_mor,
    vcompose,
    whisker_left,
    whisker_right,
)
from .report import CapabilityError, CheckReport, Collector, StructuralError
from .vbase import MorRef


@dataclass
class FullyFaithfulWitness:
    ok: bool
    inverses: dict
    failing: tuple | None = None


@dataclass
class EsoWitness:
    ok: bool
    preimage: dict
    missed: list


@dataclass
class FactorizationResult:
    image: Enrichment
    eso_part: EnrichedFunctor
    ff_part: EnrichedFunctor
    comparison: EnrichedTransformation


@dataclass
class AdjointEquivalence:
    fwd: EnrichedFunctor
    bwd: EnrichedFunctor
    unit: EnrichedTransformation
    counit: EnrichedTransformation
    triangle_reports: tuple[CheckReport, CheckReport]


@dataclass
class LiftSquare:
    """F eso, G ff, with glue an invertible 2-cell F.H2 => H1.G."""

    F: EnrichedFunctor
    G: EnrichedFunctor
    H1: EnrichedFunctor
    H2: EnrichedFunctor
    glue: EnrichedTransformation


def base_inverse(V, m: MorRef) -> MorRef | None:
    """Two-sided inverse of a base morphism, by finite search."""
    for k in range(V.hom_size(m.dst, m.src)):
        g = MorRef(m.dst, m.src, k)
        if V.compose(m, g) == V.id_of(m.src) and V.compose(g, m) == V.id_of(m.dst):
            return g
    return None


def is_fully_faithful(F: EnrichedFunctor) -> FullyFaithfulWitness:
    """True iff every enrichment component is invertible; witnesses returned."""
    V = F.dom.base
    inverses = {}
    for x, y in itertools.product(F.dom.objects(), repeat=2):
        inv = base_inverse(V, F.e_fun(x, y))
        if inv is None:
            return FullyFaithfulWitness(False, inverses, failing=(x, y))
        inverses[(x, y)] = inv
    return FullyFaithfulWitness(True, inverses)


def iso_arrows(cat, x: int, y: int) -> list[MorRef]:
    return [f for f in cat.hom(x, y) if find_inverse(cat, f) is not None]


def is_essentially_surjective(F: EnrichedFunctor) -> EsoWitness:
    """For every codomain object the lexicographically first (x, iso F x -> y)."""
    cod = F.cod.under
    preimage = {}
    missed = []
    for y in F.cod.objects():
        found = None
        for x in F.dom.objects():
            for i in iso_arrows(cod, F.ob(x), y):
                found = (x, i)
                break
            if found:
                break
        if found is None:
            missed.append(y)
        else:
            preimage[y] = found
    return EsoWitness(not missed, preimage, missed)


def is_weak_equivalence(F: EnrichedFunctor) -> bool:
    return is_fully_faithful(F).ok and is_essentially_surjective(F).ok


def underlying_hom_inverse(
    F: EnrichedFunctor, ff: FullyFaithfulWitness, g: MorRef, x: int, y: int
) -> MorRef:
    """Preimage of g: F x -> F y in hom(x, y), through the enrichment-component
    inverse and the from_arr bijections."""
    E1, E2 = F.dom, F.cod
    if F.ob(x) != g.src or F.ob(y) != g.dst:
        raise StructuralError(f"{g} does not sit over hom({x},{y})")
    u2 = E2.farr(g)
    if u2 is None:
        raise StructuralError(f"from_arr missing at {g}")
    u1 = E1.base.compose(u2, ff.inverses[(x, y)])
    f = E1.tarr(x, y, u1)
    if f is None or F.mor(f) != g:
        raise StructuralError(f"no underlying preimage for {g} in hom({x},{y})")
    return f


def image_factorization(F: EnrichedFunctor) -> FactorizationResult:
    """Full image: restrict the codomain to objects isomorphic to a value.

    The eso part corestricts F; the ff part is the full inclusion; the
    comparison is the identity-component 2-cell F => eso;ff.
    """
    cod = F.cod
    values = {F.ob(x) for x in F.dom.objects()}
    hit = set()
    for y in cod.objects():
        for v in values:
            if iso_arrows(cod.under, v, y):
                hit.add(y)
                break
    image, inclusion = full_sub_enrichment(cod, lambda y: y in hit)
    new_of = {old: new for new, old in inclusion.ob_map.items()}
    eso = EnrichedFunctor(
        F.dom, image,
        {x: new_of[F.ob(x)] for x in F.dom.objects()},
        {
            f: MorRef(new_of[F.mor(f).src], new_of[F.mor(f).dst], F.mor(f).k)
            for f in F.dom.under.mors()
        },
        dict(F.e_fun_t),
        name=f"{F.name}-corestriction",
    )
    composite = compose_functors(eso, inclusion)
    comparison = EnrichedTransformation(
        F, composite,
        {x: cod.under.id_of(F.ob(x)) for x in F.dom.objects()},
        name="image-comparison",
    )
    return FactorizationResult(image, eso, inclusion, comparison)


def orthogonal_lift(
    sq: LiftSquare, preimage: dict | None = None
) -> tuple[EnrichedFunctor, EnrichedTransformation, EnrichedTransformation]:
    """Diagonal filler L with invertible 2-cells for both triangles.

    Returns (L, upper, lower) where upper: F.L => H1 and lower: L.G => H2.
    ``preimage`` overrides the canonical eso witness choice; different choices
    give equal lifts over thin bases and isomorphic ones in general. Works for
    any eso F and ff G regardless of univalence flags; when the data is not
    skeletal the result is canonical rather than unique.
    """
    F, G, H1, H2, glue = sq.F, sq.G, sq.H1, sq.H2, sq.glue
    eso = is_essentially_surjective(F)
    ff = is_fully_faithful(G)
    if not eso.ok:
        raise CapabilityError(f"lift needs an essentially surjective left leg; missed {eso.missed}")
    if not ff.ok:
        raise CapabilityError(f"lift needs a fully faithful right leg; fails at {ff.failing}")
    if preimage is not None:
        eso = EsoWitness(True, dict(preimage), [])
    E2, E3 = F.cod, G.dom
    E4 = G.cod
    V = E2.base
    cod4 = E4.under

    # gamma_y : G(L y) -> H2 y, built from the glue at the chosen preimage
    ob_map = {}
    gamma = {}
    for y in E2.objects():
        x, i = eso.preimage[y]
        ob_map[y] = H1.ob(x)
        glue_inv = find_inverse(cod4, glue.at(x))
        if glue_inv is None:
            raise StructuralError("glue 2-cell is not invertible")
        gamma[y] = cod4.compose(glue_inv, H2.mor(i))

    def transport(g: MorRef) -> MorRef:
        # L action on g: y -> y' is the G-preimage of gamma_y ; H2 g ; gamma_y'^-1
        lhs = cod4.compose(gamma[g.src], H2.mor(g))
        gmi = find_inverse(cod4, gamma[g.dst])
        whole = cod4.compose(lhs, gmi)
        return underlying_hom_inverse(G, ff, whole, ob_map[g.src], ob_map[g.dst])

    mor_map = {}
    for g in E2.under.mors():
        mor_map[g] = transport(g)

    e_fun = {}
    for y, y2 in itertools.product(E2.objects(), repeat=2):
        # E2(y,y') -> E4(H2 y, H2 y') -> E4(GL y, GL y') -> E3(L y, L y')
        m = H2.e_fun(y, y2)
        m = V.compose(m, postcompose_mor(E4, H2.ob(y2), gamma[y]))
        gmi = find_inverse(cod4, gamma[y2])
        m = V.compose(m, precompose_mor(E4, G.ob(ob_map[y]), gmi))
        e_fun[(y, y2)] = V.compose(m, ff.inverses[(ob_map[y], ob_map[y2])])
    L = EnrichedFunctor(E2, E3, ob_map, mor_map, e_fun, name="lift")

    # lower triangle: L.G => H2 with components gamma
    lower = EnrichedTransformation(compose_functors(L, G), H2, dict(gamma), name="lift-lower")

    # upper triangle: F.L => H1; component at x is the G-preimage of
    # gamma_{F x} followed by the glue at x
    upper_comp = {}
    for x in F.dom.objects():
        w = cod4.compose(gamma[F.ob(x)], glue.at(x))
        upper_comp[x] = underlying_hom_inverse(G, ff, w, ob_map[F.ob(x)], H1.ob(x))
    upper = EnrichedTransformation(compose_functors(F, L), H1, upper_comp, name="lift-upper")
    return L, upper, lower


def lift_2cell(
    sq: LiftSquare,
    l1: EnrichedFunctor,
    l2: EnrichedFunctor,
    tau1: EnrichedTransformation,
    tau2: EnrichedTransformation,
) -> EnrichedTransformation:
    """The unique 2-cell zeta: l1 => l2 with zeta whiskered by G equal to tau1
    and F whiskered into zeta equal to tau2; existence needs the two to be
    compatible, uniqueness is verified by exhausting candidate components."""
    F, G = sq.F, sq.G
    ff = is_fully_faithful(G)
    if not ff.ok:
        raise CapabilityError("lift_2cell needs a fully faithful right leg")
    comp = {}
    for y in l1.dom.objects():
        comp[y] = underlying_hom_inverse(G, ff, tau1.at(y), l1.ob(y), l2.ob(y))
    zeta = EnrichedTransformation(l1, l2, comp, name="lifted-2cell")
    got1 = whisker_right(zeta, G)
    if got1.component != tau1.component:
        raise StructuralError("lifted 2-cell does not whisker to tau1")
    got2 = whisker_left(F, zeta)
    if got2.component != tau2.component:
        raise StructuralError("incompatible 2-cell pair: F into zeta differs from tau2")
    # uniqueness: any other component table satisfying the whisker equations
    cod = l1.cod.under
    for y in l1.dom.objects():
        for cand in cod.hom(l1.ob(y), l2.ob(y)):
            if cand == comp[y]:
                continue
            if G.mor(cand) == tau1.at(y):
                raise StructuralError(f"2-cell component at {y} is not unique")
    return zeta


def weak_equivalence_to_adjoint_equivalence(F: EnrichedFunctor) -> AdjointEquivalence:
    """Quasi-inverse by lifting the identity square of F; unit and counit are
    the triangle 2-cells, with both triangle identities checked."""
    ffw = is_fully_faithful(F)
    eso = is_essentially_surjective(F)
    if not ffw.ok:
        raise CapabilityError(f"not fully faithful at {ffw.failing}")
    if not eso.ok:
        raise CapabilityError(f"not essentially surjective at {eso.missed}")
    E1, E2 = F.dom, F.cod
    sq = LiftSquare(F, F, id_functor(E1), id_functor(E2), identity_glue(F))
    L, upper, lower = orthogonal_lift(sq)
    # upper : F.L => id_E1, lower : L.F => id_E2
    unit = invertible_2cell(upper)
    if unit is None:
        raise StructuralError("unit candidate is not invertible")
    counit = lower
    # triangle identities: (unit whiskered by F) ; (F into counit) = id_F
    # and (L into unit) ; (counit whiskered by L) = id_L
    col1 = Collector()
    t1 = vcompose(whisker_right(unit, F), whisker_left(F, counit))
    for x in E1.objects():
        expect = E2.under.id_of(F.ob(x))
        if t1.at(x) != expect:
            col1.add("triangle-fwd", (x,), t1.at(x), expect)
    col2 = Collector()
    t2 = vcompose(whisker_left(L, unit), whisker_right(counit, L))
    for y in E2.objects():
        expect = E1.under.id_of(L.ob(y))
        if t2.at(y) != expect:
            col2.add("triangle-bwd", (y,), t2.at(y), expect)
    return AdjointEquivalence(F, L, unit, counit, (col1.report(), col2.report()))


def identity_glue(F: EnrichedFunctor) -> EnrichedTransformation:
    """The identity-component 2-cell F.id => id.F."""
    return EnrichedTransformation(
        compose_functors(F, id_functor(F.cod)),
        compose_functors(id_functor(F.dom), F),
        {x: F.cod.under.id_of(F.ob(x)) for x in F.dom.objects()},
        name="identity-glue",
    )
