"""Enrichments of finite categories and their exhaustive law checkers.

An enrichment equips a finite category ``under`` with hom-objects in a
monoidal base, enriched identity/composition morphisms, and a bijection
between the morphisms of ``under`` and the base morphisms out of the unit
(``from_arr``, with ``to_arr`` derived by inversion).

Entries of ``e_id``/``e_comp``/``from_arr`` may be absent; over thin bases a
non-preorder or triangle-violating candidate has no morphism to store, and
check_enrichment reports the absence as a failure of the corresponding
diagram rather than refusing the data.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .report import CheckReport, Collector, StructuralError
from .vbase import FinCat, MonBase, MorRef, require_mor_shape


@dataclass(eq=False)
class Enrichment:
    base: MonBase
    under: FinCat
    hom_obj_t: dict
    e_id_t: dict
    e_comp_t: dict
    from_arr_t: dict
    name: str = ""
    _to_arr: dict = field(default=None, repr=False)

    @property
    def n_objects(self) -> int:
        return self.under.n_objects

    def objects(self):
        return self.under.objects()

    def hom(self, x: int, y: int) -> int:
        try:
            return self.hom_obj_t[(x, y)]
        except KeyError:
            raise StructuralError(f"missing hom object at ({x},{y})") from None

    def eid(self, x: int) -> MorRef | None:
        return self.e_id_t.get(x)

    def ecomp(self, x: int, y: int, z: int) -> MorRef | None:
        return self.e_comp_t.get((x, y, z))

    def farr(self, f: MorRef) -> MorRef | None:
        return self.from_arr_t.get(f)

    def tarr(self, x: int, y: int, m: MorRef) -> MorRef | None:
        """Inverse of from_arr on the hom pair (x, y)."""
        if self._to_arr is None:
            inv = {}
            for f, v in self.from_arr_t.items():
                inv.setdefault((f.src, f.dst), {})[v] = f
            object.__setattr__(self, "_to_arr", inv)
        return self._to_arr.get((x, y), {}).get(m)

    def data_equal(self, other: "Enrichment") -> bool:
        return (
            self.under == other.under
            and self.hom_obj_t == other.hom_obj_t
            and self.e_id_t == other.e_id_t
            and self.e_comp_t == other.e_comp_t
            and self.from_arr_t == other.from_arr_t
        )

    def __repr__(self):
        label = self.name or "enrichment"
        return f"<{label}: {self.n_objects} objects over {getattr(self.base, 'name', 'base')}>"


@dataclass(eq=False)
class EnrichedFunctor:
    dom: Enrichment
    cod: Enrichment
    ob_map: dict
    mor_map: dict
    e_fun_t: dict
    name: str = ""

    def ob(self, x: int) -> int:
        try:
            return self.ob_map[x]
        except KeyError:
            raise StructuralError(f"functor undefined on object {x}") from None

    def mor(self, f: MorRef) -> MorRef:
        try:
            return self.mor_map[f]
        except KeyError:
            raise StructuralError(f"functor undefined on morphism {f}") from None

    def e_fun(self, x: int, y: int) -> MorRef:
        try:
            return self.e_fun_t[(x, y)]
        except KeyError:
            raise StructuralError(f"functor enrichment missing at ({x},{y})") from None

    def data_equal(self, other: "EnrichedFunctor") -> bool:
        return (
            self.ob_map == other.ob_map
            and self.mor_map == other.mor_map
            and self.e_fun_t == other.e_fun_t
        )

    def table_key(self):
        return (
            tuple(sorted(self.ob_map.items())),
            tuple(sorted(self.e_fun_t.items())),
        )

    def __repr__(self):
        label = self.name or "functor"
        obs = dict(sorted(self.ob_map.items()))
        return f"<{label}: ob={obs}>"


@dataclass(eq=False)
class EnrichedTransformation:
    src: EnrichedFunctor
    dst: EnrichedFunctor
    component: dict
    name: str = ""

    def at(self, x: int) -> MorRef:
        try:
            return self.component[x]
        except KeyError:
            raise StructuralError(f"transformation missing component at {x}") from None

    def data_equal(self, other: "EnrichedTransformation") -> bool:
        return self.component == other.component

    def __repr__(self):
        label = self.name or "transformation"
        comps = dict(sorted(self.component.items()))
        return f"<{label}: {comps}>"


@dataclass(eq=False)
class KellyEnrichedCat:
    """Hom-objects with unit/composition morphisms, no underlying category."""

    base: MonBase
    n_objects: int
    hom_obj_t: dict
    e_id_t: dict
    e_comp_t: dict

    def hom(self, x, y):
        return self.hom_obj_t[(x, y)]

    def eid(self, x):
        return self.e_id_t.get(x)

    def ecomp(self, x, y, z):
        return self.e_comp_t.get((x, y, z))


# ---------------------------------------------------------------------------
# derived base-level composites
# ---------------------------------------------------------------------------

def underlying_comp(E: Enrichment, u: MorRef, v: MorRef, x: int, y: int, z: int) -> MorRef:
    """Composite of u: I -> E(x,y) and v: I -> E(y,z) as I -> E(x,z)."""
    V = E.base
    ec = E.ecomp(x, y, z)
    if ec is None:
        raise StructuralError(f"enriched composition missing at ({x},{y},{z})")
    return V.compose_all(V.lunitor_inv(V.unit), V.tensor_mor(v, u), ec)


def precompose_mor(E: Enrichment, w: int, f: MorRef) -> MorRef:
    """The composite E(w,x) -> E(w,y) for f: x -> y in the underlying data.

    Direction note: despite the name this *post*-composes f pointwise
    (g gets sent to g then f); the name follows the displayed composite
    lunitor_inv, from_arr(f) tensor id, enriched composition.
    """
    V = E.base
    x, y = f.src, f.dst
    fa = E.farr(f)
    if fa is None:
        raise StructuralError(f"from_arr missing at {f}")
    ec = E.ecomp(w, x, y)
    if ec is None:
        raise StructuralError(f"enriched composition missing at ({w},{x},{y})")
    e_wx = E.hom(w, x)
    return V.compose_all(
        V.lunitor_inv(e_wx),
        V.tensor_mor(fa, V.id_of(e_wx)),
        ec,
    )


def postcompose_mor(E: Enrichment, z: int, f: MorRef) -> MorRef:
    """The composite E(y,z) -> E(x,z) for f: x -> y: runitor_inv, id tensor
    from_arr(f), enriched composition. Changes the first hom slot."""
    V = E.base
    x, y = f.src, f.dst
    fa = E.farr(f)
    if fa is None:
        raise StructuralError(f"from_arr missing at {f}")
    ec = E.ecomp(x, y, z)
    if ec is None:
        raise StructuralError(f"enriched composition missing at ({x},{y},{z})")
    e_yz = E.hom(y, z)
    return V.compose_all(
        V.runitor_inv(e_yz),
        V.tensor_mor(V.id_of(e_yz), fa),
        ec,
    )


# ---------------------------------------------------------------------------
# enrichment checker
# ---------------------------------------------------------------------------

def _shape_enrichment(E: Enrichment) -> None:
    """Structural pass: every present entry has the right shape."""
    V = E.base
    I = V.unit
    for x in E.objects():
        for y in E.objects():
            h = E.hom(x, y)
            if hasattr(V, "contains_obj") and not V.contains_obj(h):
                raise StructuralError(f"hom object {h} at ({x},{y}) is not a base object")
    for x, m in E.e_id_t.items():
        require_mor_shape(V, m, I, E.hom(x, x))
    for (x, y, z), m in E.e_comp_t.items():
        require_mor_shape(V, m, V.tensor_obj(E.hom(y, z), E.hom(x, y)), E.hom(x, z))
    for f, m in E.from_arr_t.items():
        require_mor_shape(V, m, I, E.hom(f.src, f.dst))


def check_enrichment(E: Enrichment, limit: int | None = None) -> CheckReport:
    """All enrichment law families at every instance.

    Families: identity/composition data present, left and right unit,
    associativity, from_arr bijectivity per hom pair, e_id agreement with
    from_arr(id), and from_arr functoriality.
    """
    E.under.validate()
    _shape_enrichment(E)
    V = E.base
    I = V.unit
    col = Collector(limit)
    objs = list(E.objects())

    for x in objs:
        if E.eid(x) is None:
            col.add("identity", (x,))
    for x, y, z in itertools.product(objs, repeat=3):
        if E.ecomp(x, y, z) is None:
            col.add("composition", (x, y, z))
    for f in E.under.mors():
        if E.farr(f) is None:
            col.add("from-arr-total", (f,))
    if col.full():
        return col.report()

    # from_arr bijectivity onto base(I, E(x,y)), per hom pair
    for x, y in itertools.product(objs, repeat=2):
        seen = {}
        fine = True
        for f in E.under.hom(x, y):
            v = E.farr(f)
            if v is None:
                fine = False
                continue
            if v in seen:
                col.add("from-arr-injective", (x, y), seen[v], f)
                fine = False
            seen[v] = f
        if fine and len(seen) != V.hom_size(I, E.hom(x, y)):
            col.add("from-arr-bijective", (x, y), len(seen), V.hom_size(I, E.hom(x, y)))
        if col.full():
            return col.report()

    # e_id is from_arr of the identity
    for x in objs:
        ei = E.eid(x)
        fa = E.farr(E.under.id_of(x))
        if ei is not None and fa is not None and ei != fa:
            col.add("identity-from-arr", (x,), ei, fa)

    # left and right unit diagrams
    for x, y in itertools.product(objs, repeat=2):
        e_xy = E.hom(x, y)
        ei_y, ei_x = E.eid(y), E.eid(x)
        ec_l = E.ecomp(x, y, y)
        ec_r = E.ecomp(x, x, y)
        if ei_y is not None and ec_l is not None:
            lhs = V.compose(V.tensor_mor(ei_y, V.id_of(e_xy)), ec_l)
            rhs = V.lunitor(e_xy)
            if lhs != rhs:
                col.add("left-unit", (x, y), lhs, rhs)
        if ei_x is not None and ec_r is not None:
            lhs = V.compose(V.tensor_mor(V.id_of(e_xy), ei_x), ec_r)
            rhs = V.runitor(e_xy)
            if lhs != rhs:
                col.add("right-unit", (x, y), lhs, rhs)
        if col.full():
            return col.report()

    # associativity diagram
    for w, x, y, z in itertools.product(objs, repeat=4):
        c_wxy = E.ecomp(w, x, y)
        c_wyz = E.ecomp(w, y, z)
        c_xyz = E.ecomp(x, y, z)
        c_wxz = E.ecomp(w, x, z)
        if None in (c_wxy, c_wyz, c_xyz, c_wxz):
            continue
        e_yz, e_xy, e_wx = E.hom(y, z), E.hom(x, y), E.hom(w, x)
        lhs = V.compose_all(
            V.associator(e_yz, e_xy, e_wx),
            V.tensor_mor(V.id_of(e_yz), c_wxy),
            c_wyz,
        )
        rhs = V.compose(V.tensor_mor(c_xyz, V.id_of(e_wx)), c_wxz)
        if lhs != rhs:
            col.add("associativity", (w, x, y, z), lhs, rhs)
        if col.full():
            return col.report()

    # from_arr functoriality: composition in `under` maps to the enriched
    # composite of the unit-shaped arrows
    for f in E.under.mors():
        for g in E.under.mors():
            if f.dst != g.src:
                continue
            u, v = E.farr(f), E.farr(g)
            if u is None or v is None or E.ecomp(f.src, f.dst, g.dst) is None:
                continue
            lhs = E.farr(E.under.compose(f, g))
            if lhs is None:
                continue
            rhs = underlying_comp(E, u, v, f.src, f.dst, g.dst)
            if lhs != rhs:
                col.add("from-arr-compose", (f, g), lhs, rhs)
            if col.full():
                return col.report()
    return col.report()


def underlying_category(E: Enrichment) -> FinCat:
    """The category with the same objects and hom(x,y) = base(I, E(x,y)).

    Requires a checkable enrichment (all data present); morphism k-indices
    are the base indices of I -> E(x,y).
    """
    V = E.base
    I = V.unit
    n = E.n_objects
    hom_size = {}
    identity = {}
    then = {}
    for x, y in itertools.product(range(n), repeat=2):
        hom_size[(x, y)] = V.hom_size(I, E.hom(x, y))
    for x in range(n):
        ei = E.eid(x)
        if ei is None:
            raise StructuralError(f"enriched identity missing at {x}")
        identity[x] = MorRef(x, x, ei.k)
    for x, y, z in itertools.product(range(n), repeat=3):
        exy, eyz = E.hom(x, y), E.hom(y, z)
        for ku in range(hom_size[(x, y)]):
            u = MorRef(I, exy, ku)
            for kv in range(hom_size[(y, z)]):
                v = MorRef(I, eyz, kv)
                w = underlying_comp(E, u, v, x, y, z)
                then[(MorRef(x, y, ku), MorRef(y, z, kv))] = MorRef(x, z, w.k)
    return FinCat(n, hom_size, identity, then)


def underlying_iso_functor(E: Enrichment) -> EnrichedFunctor:
    """The identity-on-objects comparison from E.under onto underlying_category,
    with from_arr as the hom-wise bijection. Packaged as an enriched functor
    between E and the same enrichment re-glued onto the underlying category."""
    under2 = underlying_category(E)
    E2 = Enrichment(
        base=E.base,
        under=under2,
        hom_obj_t=dict(E.hom_obj_t),
        e_id_t=dict(E.e_id_t),
        e_comp_t=dict(E.e_comp_t),
        from_arr_t={
            MorRef(x, y, k): MorRef(E.base.unit, E.hom(x, y), k)
            for x, y in itertools.product(range(E.n_objects), repeat=2)
            for k in range(under2.hom_size(x, y))
        },
        name=f"underlying({E.name})",
    )
    ob_map = {x: x for x in E.objects()}
    mor_map = {}
    for f in E.under.mors():
        fa = E.farr(f)
        if fa is None:
            raise StructuralError(f"from_arr missing at {f}")
        mor_map[f] = MorRef(f.src, f.dst, fa.k)
    e_fun_t = {
        (x, y): E.base.id_of(E.hom(x, y))
        for x, y in itertools.product(range(E.n_objects), repeat=2)
    }
    return EnrichedFunctor(E, E2, ob_map, mor_map, e_fun_t, name="underlying-iso")


# ---------------------------------------------------------------------------
# Kelly presentation round trip
# ---------------------------------------------------------------------------

def check_kelly(K: KellyEnrichedCat, limit: int | None = None) -> CheckReport:
    """Unit and associativity diagrams of the Kelly-style presentation."""
    V = K.base
    col = Collector(limit)
    objs = range(K.n_objects)
    for x in objs:
        if K.eid(x) is None:
            col.add("identity", (x,))
    for x, y, z in itertools.product(objs, repeat=3):
        if K.ecomp(x, y, z) is None:
            col.add("composition", (x, y, z))
    for x, y in itertools.product(objs, repeat=2):
        e_xy = K.hom(x, y)
        ei_y, ei_x = K.eid(y), K.eid(x)
        if ei_y is not None and K.ecomp(x, y, y) is not None:
            lhs = V.compose(V.tensor_mor(ei_y, V.id_of(e_xy)), K.ecomp(x, y, y))
            if lhs != V.lunitor(e_xy):
                col.add("left-unit", (x, y), lhs, V.lunitor(e_xy))
        if ei_x is not None and K.ecomp(x, x, y) is not None:
            lhs = V.compose(V.tensor_mor(V.id_of(e_xy), ei_x), K.ecomp(x, x, y))
            if lhs != V.runitor(e_xy):
                col.add("right-unit", (x, y), lhs, V.runitor(e_xy))
    for w, x, y, z in itertools.product(objs, repeat=4):
        cs = (K.ecomp(w, x, y), K.ecomp(w, y, z), K.ecomp(x, y, z), K.ecomp(w, x, z))
        if None in cs:
            continue
        e_yz, e_xy, e_wx = K.hom(y, z), K.hom(x, y), K.hom(w, x)
        lhs = V.compose_all(
            V.associator(e_yz, e_xy, e_wx),
            V.tensor_mor(V.id_of(e_yz), cs[0]),
            cs[1],
        )
        rhs = V.compose(V.tensor_mor(cs[2], V.id_of(e_wx)), cs[3])
        if lhs != rhs:
            col.add("associativity", (w, x, y, z), lhs, rhs)
        if col.full():
            return col.report()
    return col.report()


def to_kelly(E: Enrichment) -> KellyEnrichedCat:
    return KellyEnrichedCat(
        base=E.base,
        n_objects=E.n_objects,
        hom_obj_t=dict(E.hom_obj_t),
        e_id_t=dict(E.e_id_t),
        e_comp_t=dict(E.e_comp_t),
    )


def from_kelly(K: KellyEnrichedCat) -> Enrichment:
    """Rebuild an enrichment whose underlying category is generated from K.

    Morphisms x -> y are the base morphisms I -> K(x,y) with identity
    from_arr tables.
    """
    V = K.base
    I = V.unit
    n = K.n_objects
    hom_size = {}
    identity = {}
    then = {}
    for x, y in itertools.product(range(n), repeat=2):
        hom_size[(x, y)] = V.hom_size(I, K.hom(x, y))
    for x in range(n):
        ei = K.eid(x)
        if ei is None:
            raise StructuralError(f"Kelly identity missing at {x}")
        identity[x] = MorRef(x, x, ei.k)
    for x, y, z in itertools.product(range(n), repeat=3):
        ec = K.ecomp(x, y, z)
        if ec is None:
            raise StructuralError(f"Kelly composition missing at ({x},{y},{z})")
        for ku in range(hom_size[(x, y)]):
            for kv in range(hom_size[(y, z)]):
                u = MorRef(I, K.hom(x, y), ku)
                v = MorRef(I, K.hom(y, z), kv)
                w = V.compose_all(V.lunitor_inv(I), V.tensor_mor(v, u), ec)
                then[(MorRef(x, y, ku), MorRef(y, z, kv))] = MorRef(x, z, w.k)
    under = FinCat(n, hom_size, identity, then)
    from_arr = {
        MorRef(x, y, k): MorRef(I, K.hom(x, y), k)
        for x, y in itertools.product(range(n), repeat=2)
        for k in range(hom_size[(x, y)])
    }
    return Enrichment(V, under, dict(K.hom_obj_t), dict(K.e_id_t), dict(K.e_comp_t), from_arr)


def kelly_round_trip_iso(E: Enrichment) -> EnrichedFunctor:
    """Identity-on-objects enriched isomorphism E -> from_kelly(to_kelly(E))."""
    E2 = from_kelly(to_kelly(E))
    ob_map = {x: x for x in E.objects()}
    mor_map = {}
    for f in E.under.mors():
        fa = E.farr(f)
        if fa is None:
            raise StructuralError(f"from_arr missing at {f}")
        mor_map[f] = MorRef(f.src, f.dst, fa.k)
    e_fun_t = {
        (x, y): E.base.id_of(E.hom(x, y))
        for x, y in itertools.product(range(E.n_objects), repeat=2)
    }
    return EnrichedFunctor(E, E2, ob_map, mor_map, e_fun_t, name="kelly-round-trip")


# ---------------------------------------------------------------------------
# functor and transformation checkers
# ---------------------------------------------------------------------------

def check_functor_enrichment(F: EnrichedFunctor, limit: int | None = None) -> CheckReport:
    """Underlying functor laws, the enrichment triangle and square, and the
    from_arr compatibility, at all instances."""
    col = Collector(limit)
    E1, E2 = F.dom, F.cod
    V = E1.base

    for x in E1.objects():
        fx = F.ob(x)
        if not (0 <= fx < E2.n_objects):
            raise StructuralError(f"functor maps {x} outside the codomain")
    for f in E1.under.mors():
        ff = F.mor(f)
        require_mor_shape(E2.under, ff, F.ob(f.src), F.ob(f.dst))
    for x, y in itertools.product(E1.objects(), repeat=2):
        require_mor_shape(V, F.e_fun(x, y), E1.hom(x, y), E2.hom(F.ob(x), F.ob(y)))

    for x in E1.objects():
        if F.mor(E1.under.id_of(x)) != E2.under.id_of(F.ob(x)):
            col.add("underlying-identity", (x,), F.mor(E1.under.id_of(x)), E2.under.id_of(F.ob(x)))
    for f in E1.under.mors():
        for g in E1.under.mors():
            if f.dst != g.src:
                continue
            lhs = F.mor(E1.under.compose(f, g))
            rhs = E2.under.compose(F.mor(f), F.mor(g))
            if lhs != rhs:
                col.add("underlying-composition", (f, g), lhs, rhs)
            if col.full():
                return col.report()

    for x in E1.objects():
        e1 = E1.eid(x)
        e2 = E2.eid(F.ob(x))
        if e1 is None or e2 is None:
            continue
        lhs = V.compose(e1, F.e_fun(x, x))
        if lhs != e2:
            col.add("functor-identity", (x,), lhs, e2)

    for x, y, z in itertools.product(E1.objects(), repeat=3):
        c1 = E1.ecomp(x, y, z)
        c2 = E2.ecomp(F.ob(x), F.ob(y), F.ob(z))
        if c1 is None or c2 is None:
            continue
        lhs = V.compose(c1, F.e_fun(x, z))
        rhs = V.compose(V.tensor_mor(F.e_fun(y, z), F.e_fun(x, y)), c2)
        if lhs != rhs:
            col.add("functor-composition", (x, y, z), lhs, rhs)
        if col.full():
            return col.report()

    for f in E1.under.mors():
        u1 = E1.farr(f)
        u2 = E2.farr(F.mor(f))
        if u1 is None or u2 is None:
            continue
        lhs = V.compose(u1, F.e_fun(f.src, f.dst))
        if lhs != u2:
            col.add("functor-from-arr", (f,), lhs, u2)
        if col.full():
            return col.report()
    return col.report()


def check_nat_trans_enrichment(tau: EnrichedTransformation, limit: int | None = None) -> CheckReport:
    """Underlying naturality plus BOTH enrichment formulations: the unitor
    hexagon and the pre/post-composition square. Their verdicts must agree;
    both are evaluated at every hom pair."""
    col = Collector(limit)
    F1, F2 = tau.src, tau.dst
    E1, E2 = F1.dom, F1.cod
    V = E1.base
    if F2.dom is not E1 and not F2.dom.data_equal(E1):
        raise StructuralError("transformation endpoints have different domains")
    if F2.cod is not E2 and not F2.cod.data_equal(E2):
        raise StructuralError("transformation endpoints have different codomains")

    for x in E1.objects():
        require_mor_shape(E2.under, tau.at(x), F1.ob(x), F2.ob(x))

    for f in E1.under.mors():
        lhs = E2.under.compose(F1.mor(f), tau.at(f.dst))
        rhs = E2.under.compose(tau.at(f.src), F2.mor(f))
        if lhs != rhs:
            col.add("naturality", (f,), lhs, rhs)
        if col.full():
            return col.report()

    for x, y in itertools.product(E1.objects(), repeat=2):
        e1 = E1.hom(x, y)
        fa_x = E2.farr(tau.at(x))
        fa_y = E2.farr(tau.at(y))
        c_right = E2.ecomp(F1.ob(x), F2.ob(x), F2.ob(y))
        c_left = E2.ecomp(F1.ob(x), F1.ob(y), F2.ob(y))
        if None in (fa_x, fa_y, c_right, c_left):
            continue
        hex_lhs = V.compose_all(
            V.runitor_inv(e1),
            V.tensor_mor(F2.e_fun(x, y), fa_x),
            c_right,
        )
        hex_rhs = V.compose_all(
            V.lunitor_inv(e1),
            V.tensor_mor(fa_y, F1.e_fun(x, y)),
            c_left,
        )
        if hex_lhs != hex_rhs:
            col.add("nat-trans-hexagon", (x, y), hex_lhs, hex_rhs)

        sq_lhs = V.compose(F1.e_fun(x, y), precompose_mor(E2, F1.ob(x), tau.at(y)))
        sq_rhs = V.compose(F2.e_fun(x, y), postcompose_mor(E2, F2.ob(y), tau.at(x)))
        if sq_lhs != sq_rhs:
            col.add("nat-trans-square", (x, y), sq_lhs, sq_rhs)
        if col.full():
            return col.report()
    return col.report()


# ---------------------------------------------------------------------------
# bicategorical plumbing: identities, composition, whiskering, inverses
# ---------------------------------------------------------------------------

def id_functor(E: Enrichment) -> EnrichedFunctor:
    return EnrichedFunctor(
        E, E,
        {x: x for x in E.objects()},
        {f: f for f in E.under.mors()},
        {(x, y): E.base.id_of(E.hom(x, y)) for x in E.objects() for y in E.objects()},
        name="id",
    )


def compose_functors(F: EnrichedFunctor, G: EnrichedFunctor) -> EnrichedFunctor:
    """Diagrammatic composite: F then G."""
    if F.cod is not G.dom and not F.cod.data_equal(G.dom):
        raise StructuralError("functors are not composable")
    return EnrichedFunctor(
        F.dom, G.cod,
        {x: G.ob(F.ob(x)) for x in F.dom.objects()},
        {f: G.mor(F.mor(f)) for f in F.dom.under.mors()},
        {
            (x, y): F.dom.base.compose(F.e_fun(x, y), G.e_fun(F.ob(x), F.ob(y)))
            for x in F.dom.objects()
            for y in F.dom.objects()
        },
        name=f"{F.name};{G.name}",
    )


def id_transformation(F: EnrichedFunctor) -> EnrichedTransformation:
    return EnrichedTransformation(
        F, F, {x: F.cod.under.id_of(F.ob(x)) for x in F.dom.objects()}, name="id"
    )


def vcompose(tau: EnrichedTransformation, theta: EnrichedTransformation) -> EnrichedTransformation:
    if tau.dst is not theta.src and not tau.dst.data_equal(theta.src):
        raise StructuralError("transformations are not vertically composable")
    cod = tau.src.cod.under
    return EnrichedTransformation(
        tau.src, theta.dst,
        {x: cod.compose(tau.at(x), theta.at(x)) for x in tau.src.dom.objects()},
    )


def whisker_left(F: EnrichedFunctor, tau: EnrichedTransformation) -> EnrichedTransformation:
    """F whiskered into tau: the 2-cell F.G1 => F.G2 with component tau at F(x)."""
    G1, G2 = tau.src, tau.dst
    return EnrichedTransformation(
        compose_functors(F, G1),
        compose_functors(F, G2),
        {x: tau.at(F.ob(x)) for x in F.dom.objects()},
    )


def whisker_right(tau: EnrichedTransformation, G: EnrichedFunctor) -> EnrichedTransformation:
    """tau whiskered by G: the 2-cell F1.G => F2.G with component G(tau_x)."""
    F1, F2 = tau.src, tau.dst
    return EnrichedTransformation(
        compose_functors(F1, G),
        compose_functors(F2, G),
        {x: G.mor(tau.at(x)) for x in F1.dom.objects()},
    )


def find_inverse(cat: FinCat, f: MorRef) -> MorRef | None:
    """Two-sided inverse in a finite category, by scan; lexicographically first."""
    for g in cat.hom(f.dst, f.src):
        if cat.compose(f, g) == cat.id_of(f.src) and cat.compose(g, f) == cat.id_of(f.dst):
            return g
    return None


def invertible_2cell(tau: EnrichedTransformation) -> EnrichedTransformation | None:
    """Pointwise inverse when every component is invertible, else None.

    The inverse of an enriched transformation is enriched again; this is
    verified, not assumed.
    """
    cod = tau.src.cod.under
    inv = {}
    for x in tau.src.dom.objects():
        g = find_inverse(cod, tau.at(x))
        if g is None:
            return None
        inv[x] = g
    out = EnrichedTransformation(tau.dst, tau.src, inv, name=f"{tau.name}^-1")
    rep = check_nat_trans_enrichment(out)
    if not rep.ok:
        raise StructuralError(
            f"pointwise inverse fails enrichment: {rep.failures[0].describe()}"
        )
    return out


# ---------------------------------------------------------------------------
# thin-base constructors
# ---------------------------------------------------------------------------

def thin_under_category(n: int, arrows: set[tuple[int, int]]) -> FinCat:
    """Thin category on the reflexive-transitive closure of the arrow set."""
    rel = set(arrows) | {(x, x) for x in range(n)}
    changed = True
    while changed:
        changed = False
        for (a, b) in list(rel):
            for (c, d) in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    hom_size = {(x, y): (1 if (x, y) in rel else 0) for x in range(n) for y in range(n)}
    identity = {x: MorRef(x, x, 0) for x in range(n)}
    then = {}
    for (a, b) in rel:
        for (c, d) in rel:
            if b == c:
                then[(MorRef(a, b, 0), MorRef(c, d, 0))] = MorRef(a, d, 0)
    return FinCat(n, hom_size, identity, then)


def thin_enrichment(base: MonBase, n: int, hom_obj: dict, name: str = "") -> Enrichment:
    """Enrichment candidate over a thin base from a hom-object table.

    The underlying category is the thin category on the pairs whose
    hom-object admits a point I -> E(x,y), closed under reflexivity and
    transitivity so the data is always a category; missing enriched
    identities/compositions are left absent for the checker to report.
    """
    I = base.unit
    arrows = {
        (x, y)
        for x in range(n)
        for y in range(n)
        if base.hom_size(I, hom_obj[(x, y)]) > 0
    }
    under = thin_under_category(n, arrows)
    e_id_t = {}
    for x in range(n):
        if base.hom_size(I, hom_obj[(x, x)]) > 0:
            e_id_t[x] = MorRef(I, hom_obj[(x, x)], 0)
    e_comp_t = {}
    for x, y, z in itertools.product(range(n), repeat=3):
        src = base.tensor_obj(hom_obj[(y, z)], hom_obj[(x, y)])
        if base.hom_size(src, hom_obj[(x, z)]) > 0:
            e_comp_t[(x, y, z)] = MorRef(src, hom_obj[(x, z)], 0)
    from_arr_t = {}
    for f in under.mors():
        if base.hom_size(I, hom_obj[(f.src, f.dst)]) > 0:
            from_arr_t[f] = MorRef(I, hom_obj[(f.src, f.dst)], 0)
    return Enrichment(base, under, dict(hom_obj), e_id_t, e_comp_t, from_arr_t, name=name)


def bool_preorder_enrichment(base: MonBase, relation: set[tuple[int, int]], n: int, name: str = "") -> Enrichment:
    """Bool-valued enrichment of a relation; hom object 1 iff related."""
    hom_obj = {(x, y): (1 if (x, y) in relation else 0) for x in range(n) for y in range(n)}
    return thin_enrichment(base, n, hom_obj, name=name)


def cost_space_enrichment(base: MonBase, d: dict, n: int, name: str = "") -> Enrichment:
    """Cost-valued enrichment of a distance table d[(x,y)] (base object indices)."""
    hom_obj = {(x, y): d[(x, y)] for x in range(n) for y in range(n)}
    return thin_enrichment(base, n, hom_obj, name=name)


# ---------------------------------------------------------------------------
# exhaustive enumeration of functors and transformations
# ---------------------------------------------------------------------------

def enumerate_enriched_functors(E1: Enrichment, E2: Enrichment, cap: int = 10_000) -> list[EnrichedFunctor]:
    """Complete, duplicate-free, lexicographically ordered list of enriched
    functors E1 -> E2, each passing its checker.

    Raises EnumerationCapExceeded with the computed bound when the raw search
    space is too large.
    """
    from .report import EnumerationCapExceeded

    n1, n2 = E1.n_objects, E2.n_objects
    mors1 = list(E1.under.mors())
    if n1 == 0:
        empty = EnrichedFunctor(E1, E2, {}, {}, {})
        return [empty]
    bound = n2 ** n1
    if bound > cap:
        raise EnumerationCapExceeded("functor object-map space too large", bound)
    out = []
    V = E1.base
    for ob_tuple in itertools.product(range(n2), repeat=n1):
        ob_map = dict(enumerate(ob_tuple))
        # bound the per-ob_map choice space before materializing it
        inner = 1
        feasible = True
        for f in mors1:
            n = E2.under.hom_size(ob_map[f.src], ob_map[f.dst])
            if n == 0:
                feasible = False
                break
            inner *= n
        if not feasible:
            continue
        for x, y in itertools.product(range(n1), repeat=2):
            inner *= max(V.hom_size(E1.hom(x, y), E2.hom(ob_map[x], ob_map[y])), 0)
        if inner == 0:
            continue
        if inner > cap:
            raise EnumerationCapExceeded("functor table space too large", inner)
        mor_choices = [E2.under.hom(ob_map[f.src], ob_map[f.dst]) for f in mors1]
        efun_keys = list(itertools.product(range(n1), repeat=2))
        efun_choices = [
            V.hom(E1.hom(x, y), E2.hom(ob_map[x], ob_map[y])) for (x, y) in efun_keys
        ]
        for mors in itertools.product(*mor_choices):
            mor_map = dict(zip(mors1, mors))
            for efuns in itertools.product(*efun_choices):
                cand = EnrichedFunctor(E1, E2, ob_map, mor_map, dict(zip(efun_keys, efuns)))
                if check_functor_enrichment(cand, limit=1).ok:
                    out.append(cand)
    out.sort(key=EnrichedFunctor.table_key)
    return out


def enumerate_enriched_transformations(
    F: EnrichedFunctor, G: EnrichedFunctor, cap: int = 10_000
) -> list[EnrichedTransformation]:
    """All enriched transformations F => G, in component-table order."""
    from .report import EnumerationCapExceeded

    E1 = F.dom
    E2 = F.cod
    objs = list(E1.objects())
    choices = [E2.under.hom(F.ob(x), G.ob(x)) for x in objs]
    bound = 1
    for c in choices:
        bound *= len(c)
    if bound > cap:
        raise EnumerationCapExceeded("transformation component space too large", bound)
    out = []
    for comps in itertools.product(*choices):
        cand = EnrichedTransformation(F, G, dict(zip(objs, comps)))
        if check_nat_trans_enrichment(cand, limit=1).ok:
            out.append(cand)
    return out
