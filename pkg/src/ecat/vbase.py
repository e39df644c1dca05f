"""Finite monoidal base categories.

Objects are dense integer indices, morphisms are per-pair-indexed references
``MorRef(src, dst, k)``. Composition is diagrammatic throughout: ``compose(f, g)``
means "f then g".

A base is either *table-backed* (:class:`FinMonCat` with explicit dicts, the
form the DSL reads and writes) or *computed* (skeletal finite sets, structure
categories). Computed bases expose a finite quantification window
(``objects()``) that law checkers enumerate, while evaluation — composition,
tensor, closed structure — is total on a larger lazily-evaluated object halo.
Table bases are total and the window is everything.

Law checkers return :class:`~ecat.report.CheckReport`; malformed tables raise
:class:`~ecat.report.StructuralError` instead of being reported as law
failures.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple

from .report import (
    CapabilityError,
    CheckReport,
    Collector,
    StructuralError,
    WindowExceeded,
)

ObjId = int

#: Homs larger than this are not enumerated by law scans; instances needing
#: such an enumeration are skipped deterministically. Table and thin bases
#: never come close.
DEFAULT_HOM_CAP = 20_000


class MorRef(NamedTuple):
    """Reference to a morphism: source, target, index within hom(src, dst)."""

    src: int
    dst: int
    k: int

    def __repr__(self):
        return f"({self.src},{self.dst},{self.k})"


class FinCat:
    """A finite category as explicit tables.

    ``then`` is keyed by composable pairs (f, g) in diagrammatic order and
    must be total over them.
    """

    def __init__(self, n_objects: int, hom_size: dict, identity: dict, then: dict):
        self.n_objects = n_objects
        self.hom_size_t = dict(hom_size)
        self.identity_t = dict(identity)
        self.then_t = dict(then)

    # -- category surface -------------------------------------------------
    def objects(self) -> range:
        return range(self.n_objects)

    def hom_size(self, x: int, y: int) -> int:
        return self.hom_size_t.get((x, y), 0)

    def hom(self, x: int, y: int) -> list[MorRef]:
        return [MorRef(x, y, k) for k in range(self.hom_size(x, y))]

    def mors(self) -> Iterable[MorRef]:
        for x in self.objects():
            for y in self.objects():
                yield from self.hom(x, y)

    def id_of(self, x: int) -> MorRef:
        try:
            return self.identity_t[x]
        except KeyError:
            raise StructuralError(f"missing identity for object {x}") from None

    def compose(self, f: MorRef, g: MorRef) -> MorRef:
        if f.dst != g.src:
            raise StructuralError(f"non-composable pair {f} {g}")
        try:
            return self.then_t[(f, g)]
        except KeyError:
            raise StructuralError(f"missing composition entry {f};{g}") from None

    def contains_obj(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.n_objects

    def validate(self) -> None:
        """Raise StructuralError if any table is malformed or non-total."""
        for (x, y), n in self.hom_size_t.items():
            if not (self.contains_obj(x) and self.contains_obj(y)) or n < 0:
                raise StructuralError(f"bad hom size entry ({x},{y})={n}")
        for x in self.objects():
            i = self.id_of(x)
            require_mor_shape(self, i, x, x)
        for f in self.mors():
            for g in self.mors():
                if f.dst != g.src:
                    if (f, g) in self.then_t:
                        raise StructuralError(f"composition defined on non-composable {f};{g}")
                    continue
                h = self.compose(f, g)
                require_mor_shape(self, h, f.src, g.dst)

    def __eq__(self, other):
        return (
            isinstance(other, FinCat)
            and self.n_objects == other.n_objects
            and self.hom_size_t == other.hom_size_t
            and self.identity_t == other.identity_t
            and self.then_t == other.then_t
        )


def require_mor_shape(cat, m: MorRef, src: int, dst: int) -> None:
    """Structural check: m is a well-indexed morphism src -> dst."""
    if not isinstance(m, MorRef):
        raise StructuralError(f"expected a morphism, got {m!r}")
    if m.src != src or m.dst != dst:
        raise StructuralError(f"morphism {m} does not have shape {src} -> {dst}")
    if not (0 <= m.k < cat.hom_size(src, dst)):
        raise StructuralError(f"morphism index out of range: {m}")


@dataclass
class EqualizerResult:
    """Equalizer object with its inclusion and the universal factorization."""

    obj: int
    include: MorRef
    factor: Callable[[MorRef], MorRef]


@dataclass
class ProductResult:
    """Product object, projections, and pairing.

    ``pair(src, cone)`` takes the cone source explicitly so that nullary
    products (terminal objects) are pairable too.
    """

    obj: int
    projections: tuple[MorRef, ...]
    pair: Callable[[int, list[MorRef]], MorRef]


class MonBase:
    """Shared surface for monoidal bases; subclasses fill in the data access.

    The category operations (objects/hom_size/id_of/compose) plus the monoidal
    components. ``objects()`` is the quantification window for checkers.
    """

    unit: int = 0
    symmetric: bool = False
    closed: bool = False
    has_equalizers: bool = False
    has_products: bool = False

    # category part ------------------------------------------------------
    def objects(self) -> Iterable[int]:
        raise NotImplementedError

    def hom_size(self, x: int, y: int) -> int:
        raise NotImplementedError

    def hom(self, x: int, y: int) -> list[MorRef]:
        return [MorRef(x, y, k) for k in range(self.hom_size(x, y))]

    def mors(self) -> Iterable[MorRef]:
        for x in self.objects():
            for y in self.objects():
                yield from self.hom(x, y)

    def id_of(self, x: int) -> MorRef:
        raise NotImplementedError

    def compose(self, f: MorRef, g: MorRef) -> MorRef:
        raise NotImplementedError

    def compose_all(self, *ms: MorRef) -> MorRef:
        out = ms[0]
        for m in ms[1:]:
            out = self.compose(out, m)
        return out

    # monoidal part --------------------------------------------------------
    def tensor_obj(self, x: int, y: int) -> int:
        raise NotImplementedError

    def tensor_mor(self, f: MorRef, g: MorRef) -> MorRef:
        raise NotImplementedError

    def lunitor(self, x: int) -> MorRef:
        raise NotImplementedError

    def lunitor_inv(self, x: int) -> MorRef:
        raise NotImplementedError

    def runitor(self, x: int) -> MorRef:
        raise NotImplementedError

    def runitor_inv(self, x: int) -> MorRef:
        raise NotImplementedError

    def associator(self, x: int, y: int, z: int) -> MorRef:
        raise NotImplementedError

    def associator_inv(self, x: int, y: int, z: int) -> MorRef:
        raise NotImplementedError

    def symmetry(self, x: int, y: int) -> MorRef:
        raise CapabilityError("base has no symmetry")

    # closed part ----------------------------------------------------------
    def hom_obj(self, y: int, z: int) -> int:
        raise CapabilityError("base has no closed structure")

    def ev(self, y: int, z: int) -> MorRef:
        raise CapabilityError("base has no closed structure")

    def lam(self, x: int, y: int, z: int, f: MorRef) -> MorRef:
        raise CapabilityError("base has no closed structure")

    def unlam(self, x: int, y: int, z: int, g: MorRef) -> MorRef:
        """Inverse of lam: g: x -> [y,z] becomes (g tensor id_y); ev."""
        require_mor_shape(self, g, x, self.hom_obj(y, z))
        return self.compose(self.tensor_mor(g, self.id_of(y)), self.ev(y, z))

    # limits ---------------------------------------------------------------
    def equalizer(self, f: MorRef, g: MorRef) -> EqualizerResult:
        raise CapabilityError("base has no equalizer chooser")

    def product(self, objs: list[int]) -> ProductResult:
        raise CapabilityError("base has no product chooser")


class FinMonCat(MonBase):
    """Table-backed finite monoidal category.

    Optional components are the symmetry table, the closed-structure tables,
    and the limit choosers (supplied by default via brute-force universal
    search, which is adequate at table scale).
    """

    def __init__(
        self,
        cat: FinCat,
        unit: int,
        tensor_obj_t: dict,
        tensor_mor_t: dict,
        lunitor_t: dict,
        lunitor_inv_t: dict,
        runitor_t: dict,
        runitor_inv_t: dict,
        associator_t: dict,
        associator_inv_t: dict,
        symmetry_t: dict | None = None,
        closed_data: "ClosedData | None" = None,
        name: str = "",
    ):
        self.cat = cat
        self.unit = unit
        self.tensor_obj_t = dict(tensor_obj_t)
        self.tensor_mor_t = dict(tensor_mor_t)
        self.lunitor_t = dict(lunitor_t)
        self.lunitor_inv_t = dict(lunitor_inv_t)
        self.runitor_t = dict(runitor_t)
        self.runitor_inv_t = dict(runitor_inv_t)
        self.associator_t = dict(associator_t)
        self.associator_inv_t = dict(associator_inv_t)
        self.symmetry_t = dict(symmetry_t) if symmetry_t is not None else None
        self.closed_data = closed_data
        self.name = name
        self.has_equalizers = True
        self.has_products = True

    # category delegation --------------------------------------------------
    @property
    def n_objects(self):
        return self.cat.n_objects

    def objects(self):
        return self.cat.objects()

    def contains_obj(self, x) -> bool:
        return self.cat.contains_obj(x)

    def hom_size(self, x, y):
        return self.cat.hom_size(x, y)

    def id_of(self, x):
        return self.cat.id_of(x)

    def compose(self, f, g):
        return self.cat.compose(f, g)

    # monoidal tables --------------------------------------------------------
    def _entry(self, table: dict, key, what: str):
        try:
            return table[key]
        except KeyError:
            raise StructuralError(f"missing {what} entry at {key}") from None

    def tensor_obj(self, x, y):
        return self._entry(self.tensor_obj_t, (x, y), "tensor_obj")

    def tensor_mor(self, f, g):
        return self._entry(self.tensor_mor_t, (f, g), "tensor_mor")

    def lunitor(self, x):
        return self._entry(self.lunitor_t, x, "lunitor")

    def lunitor_inv(self, x):
        return self._entry(self.lunitor_inv_t, x, "lunitor_inv")

    def runitor(self, x):
        return self._entry(self.runitor_t, x, "runitor")

    def runitor_inv(self, x):
        return self._entry(self.runitor_inv_t, x, "runitor_inv")

    def associator(self, x, y, z):
        return self._entry(self.associator_t, (x, y, z), "associator")

    def associator_inv(self, x, y, z):
        return self._entry(self.associator_inv_t, (x, y, z), "associator_inv")

    @property
    def symmetric(self):
        return self.symmetry_t is not None

    def symmetry(self, x, y):
        if self.symmetry_t is None:
            raise CapabilityError("base has no symmetry")
        return self._entry(self.symmetry_t, (x, y), "symmetry")

    @property
    def closed(self):
        return self.closed_data is not None

    def hom_obj(self, y, z):
        if self.closed_data is None:
            raise CapabilityError("base has no closed structure")
        return self.closed_data.hom_obj(y, z)

    def ev(self, y, z):
        if self.closed_data is None:
            raise CapabilityError("base has no closed structure")
        return self.closed_data.ev(y, z)

    def lam(self, x, y, z, f):
        if self.closed_data is None:
            raise CapabilityError("base has no closed structure")
        return self.closed_data.lam(x, y, z, f)

    # limits by universal search --------------------------------------------
    def equalizer(self, f, g):
        return search_equalizer(self, f, g)

    def product(self, objs):
        return search_product(self, objs)

    def __eq__(self, other):
        return (
            isinstance(other, FinMonCat)
            and self.cat == other.cat
            and self.unit == other.unit
            and self.tensor_obj_t == other.tensor_obj_t
            and self.tensor_mor_t == other.tensor_mor_t
            and self.lunitor_t == other.lunitor_t
            and self.runitor_t == other.runitor_t
            and self.associator_t == other.associator_t
            and self.symmetry_t == other.symmetry_t
        )


@dataclass
class ClosedData:
    """Closed structure tables: internal hom objects, evaluation, abstraction.

    ``lam_t`` is keyed by (x, y, z, f) because the tensor source of f does not
    determine its factors.
    """

    hom_obj_t: dict
    eval_t: dict
    lam_t: dict

    def hom_obj(self, y, z):
        try:
            return self.hom_obj_t[(y, z)]
        except KeyError:
            raise StructuralError(f"missing hom_obj entry at ({y},{z})") from None

    def ev(self, y, z):
        try:
            return self.eval_t[(y, z)]
        except KeyError:
            raise StructuralError(f"missing eval entry at ({y},{z})") from None

    def lam(self, x, y, z, f):
        try:
            return self.lam_t[(x, y, z, f)]
        except KeyError:
            raise StructuralError(f"missing lam entry at ({x},{y},{z},{f})") from None


# ---------------------------------------------------------------------------
# universal-property searches (choosers for table bases)
# ---------------------------------------------------------------------------

def _equalizing_cones(V, f, g):
    for c in V.objects():
        for h in V.hom(c, f.src):
            if V.compose(h, f) == V.compose(h, g):
                yield h


def search_equalizer(V, f, g) -> EqualizerResult:
    """Lexicographically first (object, inclusion) with the universal property."""
    if f.src != g.src or f.dst != g.dst:
        raise StructuralError(f"equalizer needs a parallel pair, got {f} {g}")
    for e in V.objects():
        for inc in V.hom(e, f.src):
            if V.compose(inc, f) != V.compose(inc, g):
                continue
            table = {}
            good = True
            for h in _equalizing_cones(V, f, g):
                us = [u for u in V.hom(h.src, e) if V.compose(u, inc) == h]
                if len(us) != 1:
                    good = False
                    break
                table[h] = us[0]
            if good:
                def factor(h, _table=table):
                    try:
                        return _table[h]
                    except KeyError:
                        raise StructuralError(f"{h} does not equalize the pair") from None

                return EqualizerResult(e, inc, factor)
    raise CapabilityError(f"no equalizer found for {f}, {g}")


def search_product(V, objs: list[int]) -> ProductResult:
    """Lexicographically first (object, projections) with the universal property."""
    objs = list(objs)
    for p in V.objects():
        for projs in itertools.product(*(V.hom(p, x) for x in objs)):
            table = {}
            good = True
            for c in V.objects():
                for cone in itertools.product(*(V.hom(c, x) for x in objs)):
                    us = [
                        u
                        for u in V.hom(c, p)
                        if all(V.compose(u, pr) == h for pr, h in zip(projs, cone))
                    ]
                    if len(us) != 1:
                        good = False
                        break
                    table[(c, cone)] = us[0]
                if not good:
                    break
            if good:
                def pair(src, cone, _table=table):
                    try:
                        return _table[(src, tuple(cone))]
                    except KeyError:
                        raise StructuralError("bad cone for product pairing") from None

                return ProductResult(p, tuple(projs), pair)
    raise CapabilityError(f"no product found for {objs}")


def window_fincat(V: MonBase) -> FinCat:
    """Materialize the quantification window of a base as explicit tables.

    For table bases this is the stored category; for computed bases the
    window objects with their full homs and composition.
    """
    if isinstance(V, FinMonCat):
        return V.cat
    objs = list(V.objects())
    hom_size = {}
    identity = {}
    then = {}
    for a in objs:
        for b in objs:
            hom_size[(a, b)] = V.hom_size(a, b)
    for a in objs:
        identity[a] = V.id_of(a)
    for a in objs:
        for b in objs:
            for c in objs:
                for f in V.hom(a, b):
                    for g in V.hom(b, c):
                        then[(f, g)] = V.compose(f, g)
    return FinCat(len(objs), hom_size, identity, then)


def equalizer(V: MonBase, f: MorRef, g: MorRef) -> EqualizerResult:
    """Equalizer of a parallel pair via the base's chooser."""
    if f.src != g.src or f.dst != g.dst:
        raise StructuralError(f"equalizer needs a parallel pair, got {f} {g}")
    if not V.has_equalizers:
        raise CapabilityError("base has no equalizer chooser")
    return V.equalizer(f, g)


def finite_product(V: MonBase, objs: list[int]) -> ProductResult:
    """Finite product (empty list gives the terminal object) via the chooser."""
    if not V.has_products:
        raise CapabilityError("base has no product chooser")
    return V.product(list(objs))


# ---------------------------------------------------------------------------
# law checkers
# ---------------------------------------------------------------------------

def _window_homs(C, cap: int):
    """Window homs as MorRef lists; raises nothing, skips nothing (window homs
    are assumed enumerable — computed bases keep their windows small)."""
    objs = list(C.objects())
    homs = {}
    for a in objs:
        for b in objs:
            n = C.hom_size(a, b)
            if n > cap:
                homs[(a, b)] = None  # marked too large to enumerate
            else:
                homs[(a, b)] = [MorRef(a, b, k) for k in range(n)]
    return objs, homs


def check_category(C, limit: int | None = None, hom_cap: int = DEFAULT_HOM_CAP) -> CheckReport:
    """Exhaustive identity and associativity scan over the window.

    Malformed tables (out-of-range indices, non-composable entries) raise
    StructuralError; law violations are reported.
    """
    if isinstance(C, FinCat):
        C.validate()
    objs, homs = _window_homs(C, hom_cap)
    col = Collector(limit)

    # identity laws, plus shape validation of every identity component
    for x in objs:
        i = C.id_of(x)
        require_mor_shape(C, i, x, x)
    for (a, b), fs in homs.items():
        if fs is None:
            continue
        ida, idb = C.id_of(a), C.id_of(b)
        for f in fs:
            lhs = C.compose(ida, f)
            require_mor_shape(C, lhs, a, b)
            if lhs != f:
                col.add("identity-left", (f,), lhs, f)
            rhs = C.compose(f, idb)
            require_mor_shape(C, rhs, a, b)
            if rhs != f:
                col.add("identity-right", (f,), rhs, f)
            if col.full():
                return col.report()

    # memoized composition index tables: comp[(a,b,c)][i][j] = k index in hom(a,c)
    comp: dict = {}
    for a, b, c in itertools.product(objs, repeat=3):
        fs, gs = homs[(a, b)], homs[(b, c)]
        if fs is None or gs is None or not fs or not gs:
            continue
        rows = []
        for f in fs:
            row = []
            for g in gs:
                h = C.compose(f, g)
                require_mor_shape(C, h, a, c)
                row.append(h.k)
            rows.append(row)
        comp[(a, b, c)] = rows

    for a, b, c, d in itertools.product(objs, repeat=4):
        T1 = comp.get((a, b, c))
        U1 = comp.get((b, c, d))
        if T1 is None or U1 is None:
            continue
        T2 = comp.get((a, c, d))
        U2 = comp.get((a, b, d))
        if T2 is None or U2 is None:
            continue
        for i, T1_i in enumerate(T1):
            U2_i = U2[i]
            for j, t in enumerate(T1_i):
                lhs_row = T2[t]
                rhs_row = list(map(U2_i.__getitem__, U1[j]))
                if lhs_row != rhs_row:
                    for k, (l, r) in enumerate(zip(lhs_row, rhs_row)):
                        if l != r:
                            f = MorRef(a, b, i)
                            g = MorRef(b, c, j)
                            h = MorRef(c, d, k)
                            col.add(
                                "associativity",
                                (f, g, h),
                                MorRef(a, d, l),
                                MorRef(a, d, r),
                            )
                            if col.full():
                                return col.report()
    return col.report()


def _check_iso_pair(V, col, law, instance, fwd, inv, src, dst):
    require_mor_shape(V, fwd, src, dst)
    require_mor_shape(V, inv, dst, src)
    if V.compose(fwd, inv) != V.id_of(src):
        col.add(law, instance, V.compose(fwd, inv), V.id_of(src))
    if V.compose(inv, fwd) != V.id_of(dst):
        col.add(law, instance, V.compose(inv, fwd), V.id_of(dst))


def check_monoidal(V: MonBase, limit: int | None = None, hom_cap: int = DEFAULT_HOM_CAP) -> CheckReport:
    """Bifunctoriality of the tensor, unitor/associator invertibility and
    naturality, triangle and pentagon, over every window instance.

    Bifunctoriality is checked through its generating family (identity
    preservation, both whisker decompositions, slotwise functoriality), which
    is equivalent to full interchange and quadratically cheaper.
    """
    objs, homs = _window_homs(V, hom_cap)
    col = Collector(limit)
    I = V.unit

    def windowed(ab):
        fs = homs.get(ab)
        return fs if fs is not None else []

    # tensor-with-identity whiskers recur in every law family; memoize them
    _tr: dict = {}
    _tl: dict = {}

    def t_right(f, y):
        m = _tr.get((f, y))
        if m is None:
            m = _tr[(f, y)] = V.tensor_mor(f, V.id_of(y))
        return m

    def t_left(y, f):
        m = _tl.get((y, f))
        if m is None:
            m = _tl[(y, f)] = V.tensor_mor(V.id_of(y), f)
        return m

    # tensor preserves identities
    for x, y in itertools.product(objs, repeat=2):
        try:
            xy = V.tensor_obj(x, y)
            t = V.tensor_mor(V.id_of(x), V.id_of(y))
            require_mor_shape(V, t, xy, xy)
            if t != V.id_of(xy):
                col.add("tensor-id", (x, y), t, V.id_of(xy))
        except WindowExceeded:
            continue
        if col.full():
            return col.report()

    # whisker decompositions over all window pairs
    for a, b in itertools.product(objs, repeat=2):
        for f in windowed((a, b)):
            for c, d in itertools.product(objs, repeat=2):
                for g in windowed((c, d)):
                    try:
                        fg = V.tensor_mor(f, g)
                        require_mor_shape(V, fg, V.tensor_obj(a, c), V.tensor_obj(b, d))
                        left = V.compose(t_right(f, c), t_left(b, g))
                        if fg != left:
                            col.add("tensor-left-decomp", (f, g), fg, left)
                        right = V.compose(t_left(a, g), t_right(f, d))
                        if fg != right:
                            col.add("tensor-right-decomp", (f, g), fg, right)
                    except WindowExceeded:
                        continue
                    if col.full():
                        return col.report()

    # slotwise functoriality over composable pairs and window objects
    for a, b, c in itertools.product(objs, repeat=3):
        for f in windowed((a, b)):
            for f2 in windowed((b, c)):
                ff2 = V.compose(f, f2)
                for y in objs:
                    try:
                        lhs = t_right(ff2, y)
                        rhs = V.compose(t_right(f, y), t_right(f2, y))
                        if lhs != rhs:
                            col.add("tensor-left-funct", (f, f2, y), lhs, rhs)
                        lhs = t_left(y, ff2)
                        rhs = V.compose(t_left(y, f), t_left(y, f2))
                        if lhs != rhs:
                            col.add("tensor-right-funct", (f, f2, y), lhs, rhs)
                    except WindowExceeded:
                        continue
                if col.full():
                    return col.report()

    # unitor and associator invertibility
    for x in objs:
        try:
            _check_iso_pair(V, col, "lunitor-iso", (x,), V.lunitor(x), V.lunitor_inv(x), V.tensor_obj(I, x), x)
            _check_iso_pair(V, col, "runitor-iso", (x,), V.runitor(x), V.runitor_inv(x), V.tensor_obj(x, I), x)
        except WindowExceeded:
            continue
    for x, y, z in itertools.product(objs, repeat=3):
        try:
            _check_iso_pair(
                V, col, "associator-iso", (x, y, z),
                V.associator(x, y, z), V.associator_inv(x, y, z),
                V.tensor_obj(V.tensor_obj(x, y), z), V.tensor_obj(x, V.tensor_obj(y, z)),
            )
        except WindowExceeded:
            continue
        if col.full():
            return col.report()

    # unitor naturality
    for (a, b), fs in homs.items():
        if fs is None:
            continue
        for f in fs:
            try:
                lhs = V.compose(t_left(I, f), V.lunitor(b))
                rhs = V.compose(V.lunitor(a), f)
                if lhs != rhs:
                    col.add("lunitor-natural", (f,), lhs, rhs)
                lhs = V.compose(t_right(f, I), V.runitor(b))
                rhs = V.compose(V.runitor(a), f)
                if lhs != rhs:
                    col.add("runitor-natural", (f,), lhs, rhs)
            except WindowExceeded:
                continue
            if col.full():
                return col.report()

    # associator naturality, one slot at a time
    for (a, b), fs in homs.items():
        if fs is None:
            continue
        for f in fs:
            for y, z in itertools.product(objs, repeat=2):
                try:
                    yz = V.tensor_obj(y, z)
                    lhs = V.compose(t_right(t_right(f, y), z), V.associator(b, y, z))
                    rhs = V.compose(V.associator(a, y, z), t_right(f, yz))
                    if lhs != rhs:
                        col.add("associator-natural-1", (f, y, z), lhs, rhs)
                    lhs = V.compose(t_right(t_left(y, f), z), V.associator(y, b, z))
                    rhs = V.compose(V.associator(y, a, z), t_left(y, t_right(f, z)))
                    if lhs != rhs:
                        col.add("associator-natural-2", (y, f, z), lhs, rhs)
                    lhs = V.compose(t_left(yz, f), V.associator(y, z, b))
                    rhs = V.compose(V.associator(y, z, a), t_left(y, t_left(z, f)))
                    if lhs != rhs:
                        col.add("associator-natural-3", (y, z, f), lhs, rhs)
                except WindowExceeded:
                    continue
            if col.full():
                return col.report()

    # triangle
    for x, y in itertools.product(objs, repeat=2):
        try:
            lhs = V.compose(V.associator(x, I, y), V.tensor_mor(V.id_of(x), V.lunitor(y)))
            rhs = V.tensor_mor(V.runitor(x), V.id_of(y))
            if lhs != rhs:
                col.add("triangle", (x, y), lhs, rhs)
        except WindowExceeded:
            continue
        if col.full():
            return col.report()

    # pentagon
    for w, x, y, z in itertools.product(objs, repeat=4):
        try:
            lhs = V.compose_all(
                V.tensor_mor(V.associator(w, x, y), V.id_of(z)),
                V.associator(w, V.tensor_obj(x, y), z),
                V.tensor_mor(V.id_of(w), V.associator(x, y, z)),
            )
            rhs = V.compose(
                V.associator(V.tensor_obj(w, x), y, z),
                V.associator(w, x, V.tensor_obj(y, z)),
            )
            if lhs != rhs:
                col.add("pentagon", (w, x, y, z), lhs, rhs)
        except WindowExceeded:
            continue
        if col.full():
            return col.report()

    return col.report()


def check_symmetric(V: MonBase, limit: int | None = None, hom_cap: int = DEFAULT_HOM_CAP) -> CheckReport:
    """Symmetry involution, naturality, and the hexagon, over the window."""
    if not V.symmetric:
        raise CapabilityError("base has no symmetry")
    objs, homs = _window_homs(V, hom_cap)
    col = Collector(limit)

    _sym: dict = {}

    def sym(x, y):
        s = _sym.get((x, y))
        if s is None:
            s = _sym[(x, y)] = V.symmetry(x, y)
        return s

    for x, y in itertools.product(objs, repeat=2):
        try:
            s = sym(x, y)
            s_back = sym(y, x)
            require_mor_shape(V, s, V.tensor_obj(x, y), V.tensor_obj(y, x))
            roundtrip = V.compose(s, s_back)
            if roundtrip != V.id_of(V.tensor_obj(x, y)):
                col.add("symmetry-inverse", (x, y), roundtrip, V.id_of(V.tensor_obj(x, y)))
        except WindowExceeded:
            continue
        if col.full():
            return col.report()

    for (a, b), fs in homs.items():
        if fs is None:
            continue
        for f in fs:
            for (c, d), gs in homs.items():
                if gs is None:
                    continue
                for g in gs:
                    try:
                        lhs = V.compose(V.tensor_mor(f, g), sym(b, d))
                        rhs = V.compose(sym(a, c), V.tensor_mor(g, f))
                        if lhs != rhs:
                            col.add("symmetry-natural", (f, g), lhs, rhs)
                    except WindowExceeded:
                        continue
                    if col.full():
                        return col.report()

    for x, y, z in itertools.product(objs, repeat=3):
        try:
            lhs = V.compose_all(
                V.associator(x, y, z),
                V.symmetry(x, V.tensor_obj(y, z)),
                V.associator(y, z, x),
            )
            rhs = V.compose_all(
                V.tensor_mor(V.symmetry(x, y), V.id_of(z)),
                V.associator(y, x, z),
                V.tensor_mor(V.id_of(y), V.symmetry(x, z)),
            )
            if lhs != rhs:
                col.add("hexagon", (x, y, z), lhs, rhs)
        except WindowExceeded:
            continue
        if col.full():
            return col.report()
    return col.report()


def check_closed(V: MonBase, limit: int | None = None, hom_cap: int = DEFAULT_HOM_CAP) -> CheckReport:
    """lam bijectivity (both round trips) and naturality in the abstraction
    variable, at every window instance whose hom enumeration fits the cap."""
    if not V.closed:
        raise CapabilityError("base has no closed structure")
    objs, _ = _window_homs(V, hom_cap)
    col = Collector(limit)

    for x, y, z in itertools.product(objs, repeat=3):
        try:
            xy = V.tensor_obj(x, y)
            h = V.hom_obj(y, z)
            e = V.ev(y, z)
            require_mor_shape(V, e, V.tensor_obj(h, y), z)
            n_src = V.hom_size(xy, z)
            n_dst = V.hom_size(x, h)
            if n_src != n_dst:
                col.add("lam-bijective", (x, y, z), n_src, n_dst)
                if col.full():
                    return col.report()
                continue
            if n_src > hom_cap:
                continue  # deterministically skipped: enumeration beyond the cap
            for k in range(n_src):
                f = MorRef(xy, z, k)
                lf = V.lam(x, y, z, f)
                require_mor_shape(V, lf, x, h)
                back = V.unlam(x, y, z, lf)
                if back != f:
                    col.add("lam-beta", (x, y, z, f), back, f)
                if col.full():
                    return col.report()
            for k in range(n_dst):
                g = MorRef(x, h, k)
                forth = V.lam(x, y, z, V.unlam(x, y, z, g))
                if forth != g:
                    col.add("lam-eta", (x, y, z, g), forth, g)
                if col.full():
                    return col.report()
        except WindowExceeded:
            continue

    # naturality of the bijection in the abstraction variable; the instance
    # space is the product of two homs, so the cap bounds the product
    for x, x2, y, z in itertools.product(objs, repeat=4):
        try:
            n_h = V.hom_size(x2, x)
            xy = V.tensor_obj(x, y)
            n_f = V.hom_size(xy, z)
            if n_h * n_f > hom_cap:
                continue
            whiskers = [
                V.tensor_mor(MorRef(x2, x, hk), V.id_of(y)) for hk in range(n_h)
            ]
            for fk in range(n_f):
                f = MorRef(xy, z, fk)
                lam_f = V.lam(x, y, z, f)
                for hk in range(n_h):
                    h = MorRef(x2, x, hk)
                    lhs = V.lam(x2, y, z, V.compose(whiskers[hk], f))
                    rhs = V.compose(h, lam_f)
                    if lhs != rhs:
                        col.add("lam-natural", (h, f), lhs, rhs)
                    if col.full():
                        return col.report()
        except WindowExceeded:
            continue
    return col.report()


# ---------------------------------------------------------------------------
# mutation wrapper
# ---------------------------------------------------------------------------

_TABLE_METHODS = {
    "hom_size": 2,
    "id_of": 1,
    "compose": 2,
    "tensor_obj": 2,
    "tensor_mor": 2,
    "lunitor": 1,
    "lunitor_inv": 1,
    "runitor": 1,
    "runitor_inv": 1,
    "associator": 3,
    "associator_inv": 3,
    "symmetry": 2,
    "hom_obj": 2,
    "ev": 2,
}


class Mutated:
    """View of a base with a single table entry replaced.

    Used by the mutation-testing suites; works uniformly for table-backed and
    computed bases. Deliberately not a MonBase subclass: delegation must reach
    the wrapped base for every attribute that is not intercepted.
    """

    def __init__(self, base: MonBase, table: str, key: tuple, value):
        if table not in _TABLE_METHODS and table != "lam":
            raise ValueError(f"unknown table {table!r}")
        self._base = base
        self._table = table
        self._key = key
        self._value = value

    def __getattr__(self, name):
        return getattr(self._base, name)

    def compose_all(self, *ms):
        out = ms[0]
        for m in ms[1:]:
            out = self.compose(out, m)
        return out

    def mors(self):
        for x in self.objects():
            for y in self.objects():
                yield from self.hom(x, y)

    def unlam(self, x, y, z, g):
        require_mor_shape(self, g, x, self.hom_obj(y, z))
        return self.compose(self.tensor_mor(g, self.id_of(y)), self.ev(y, z))

    def _hit(self, table, args):
        return self._table == table and tuple(args) == self._key

    def objects(self):
        return self._base.objects()

    def hom_size(self, x, y):
        return self._value if self._hit("hom_size", (x, y)) else self._base.hom_size(x, y)

    def hom(self, x, y):
        return [MorRef(x, y, k) for k in range(self.hom_size(x, y))]

    def id_of(self, x):
        return self._value if self._hit("id_of", (x,)) else self._base.id_of(x)

    def compose(self, f, g):
        if self._hit("compose", (f, g)):
            return self._value
        if f.dst != g.src:
            raise StructuralError(f"non-composable pair {f} {g}")
        return self._base.compose(f, g)

    def tensor_obj(self, x, y):
        return self._value if self._hit("tensor_obj", (x, y)) else self._base.tensor_obj(x, y)

    def tensor_mor(self, f, g):
        return self._value if self._hit("tensor_mor", (f, g)) else self._base.tensor_mor(f, g)

    def lunitor(self, x):
        return self._value if self._hit("lunitor", (x,)) else self._base.lunitor(x)

    def lunitor_inv(self, x):
        return self._value if self._hit("lunitor_inv", (x,)) else self._base.lunitor_inv(x)

    def runitor(self, x):
        return self._value if self._hit("runitor", (x,)) else self._base.runitor(x)

    def runitor_inv(self, x):
        return self._value if self._hit("runitor_inv", (x,)) else self._base.runitor_inv(x)

    def associator(self, x, y, z):
        return self._value if self._hit("associator", (x, y, z)) else self._base.associator(x, y, z)

    def associator_inv(self, x, y, z):
        return self._value if self._hit("associator_inv", (x, y, z)) else self._base.associator_inv(x, y, z)

    @property
    def symmetric(self):
        return self._base.symmetric

    def symmetry(self, x, y):
        return self._value if self._hit("symmetry", (x, y)) else self._base.symmetry(x, y)

    @property
    def closed(self):
        return self._base.closed

    def hom_obj(self, y, z):
        return self._value if self._hit("hom_obj", (y, z)) else self._base.hom_obj(y, z)

    def ev(self, y, z):
        return self._value if self._hit("ev", (y, z)) else self._base.ev(y, z)

    def lam(self, x, y, z, f):
        if self._table == "lam" and (x, y, z, f) == self._key:
            return self._value
        return self._base.lam(x, y, z, f)


# ---------------------------------------------------------------------------
# builtin bases
# ---------------------------------------------------------------------------

def _thin_monoidal(
    n: int,
    leq: Callable[[int, int], bool],
    unit: int,
    tensor: Callable[[int, int], int],
    hom_obj: Callable[[int, int], int] | None,
    name: str,
) -> FinMonCat:
    """Build a thin symmetric (closed when hom_obj given) monoidal table base."""
    hom_size = {}
    identity = {}
    then = {}
    for a in range(n):
        for b in range(n):
            hom_size[(a, b)] = 1 if leq(a, b) else 0
    for a in range(n):
        identity[a] = MorRef(a, a, 0)
    mors = [MorRef(a, b, 0) for a in range(n) for b in range(n) if leq(a, b)]
    for f in mors:
        for g in mors:
            if f.dst == g.src:
                then[(f, g)] = MorRef(f.src, g.dst, 0)
    cat = FinCat(n, hom_size, identity, then)

    def arrow(a, b):
        if not leq(a, b):
            raise StructuralError(f"no arrow {a} -> {b} in thin base {name}")
        return MorRef(a, b, 0)

    tensor_obj_t = {}
    tensor_mor_t = {}
    for a in range(n):
        for b in range(n):
            tensor_obj_t[(a, b)] = tensor(a, b)
    for f in mors:
        for g in mors:
            tensor_mor_t[(f, g)] = arrow(tensor(f.src, g.src), tensor(f.dst, g.dst))
    lun, lun_i, run, run_i = {}, {}, {}, {}
    for x in range(n):
        lun[x] = arrow(tensor(unit, x), x)
        lun_i[x] = arrow(x, tensor(unit, x))
        run[x] = arrow(tensor(x, unit), x)
        run_i[x] = arrow(x, tensor(x, unit))
    assoc, assoc_i = {}, {}
    for x in range(n):
        for y in range(n):
            for z in range(n):
                a1 = tensor(tensor(x, y), z)
                a2 = tensor(x, tensor(y, z))
                assoc[(x, y, z)] = arrow(a1, a2)
                assoc_i[(x, y, z)] = arrow(a2, a1)
    sym = {}
    for x in range(n):
        for y in range(n):
            sym[(x, y)] = arrow(tensor(x, y), tensor(y, x))
    closed = None
    if hom_obj is not None:
        hom_obj_t, eval_t, lam_t = {}, {}, {}
        for y in range(n):
            for z in range(n):
                h = hom_obj(y, z)
                hom_obj_t[(y, z)] = h
                eval_t[(y, z)] = arrow(tensor(h, y), z)
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if leq(tensor(x, y), z):
                        f = MorRef(tensor(x, y), z, 0)
                        lam_t[(x, y, z, f)] = arrow(x, hom_obj(y, z))
        closed = ClosedData(hom_obj_t, eval_t, lam_t)
    return FinMonCat(
        cat, unit, tensor_obj_t, tensor_mor_t, lun, lun_i, run, run_i,
        assoc, assoc_i, sym, closed, name=name,
    )


def bool_base() -> FinMonCat:
    """Two-object thin base: truth values under conjunction, unit = true."""
    return _thin_monoidal(
        2,
        leq=lambda a, b: a <= b,
        unit=1,
        tensor=min,
        hom_obj=lambda a, b: 1 if a <= b else 0,
        name="bool",
    )


def cost_base(n: int) -> FinMonCat:
    """Truncated-addition base on {0..n, inf}: an arrow a -> b iff a >= b.

    Index n+1 plays infinity; [b, c] is truncated subtraction.
    """
    if n < 0:
        raise ValueError("cost base needs n >= 0")
    inf = n + 1

    def val_ge(a, b):
        # a >= b with index inf greatest
        aa = float("inf") if a == inf else a
        bb = float("inf") if b == inf else b
        return aa >= bb

    def plus(a, b):
        if a == inf or b == inf:
            return inf
        s = a + b
        return s if s <= n else inf

    def minus(c, b):
        # least x with plus(x, b) >= c, under truncation at n
        if b == inf:
            return 0
        if c == inf:
            return inf if n + 1 - b > n else max(n + 1 - b, 0)
        return max(c - b, 0)

    return _thin_monoidal(
        n + 2,
        leq=val_ge,
        unit=0,
        tensor=plus,
        hom_obj=lambda b, c: minus(c, b),
        name=f"cost({n})",
    )


def terminal_base() -> FinMonCat:
    """One object, one morphism; the collapse target for preservation tests."""
    return _thin_monoidal(
        1,
        leq=lambda a, b: True,
        unit=0,
        tensor=lambda a, b: 0,
        hom_obj=lambda a, b: 0,
        name="terminal",
    )


def builtin_base(name: str, **params) -> MonBase:
    """Construct a named builtin base.

    Known names: bool; cost (n); finset (k, the window of skeletal set sizes);
    finposet_struct / finpointedposet_struct (max_size, the carrier cap).
    """
    if name == "bool":
        if params:
            raise ValueError("bool takes no parameters")
        return bool_base()
    if name == "cost":
        n = params.pop("n", None)
        if n is None or params:
            raise ValueError("cost takes exactly n")
        return cost_base(int(n))
    if name == "finset":
        k = params.pop("k", None)
        if k is None or params:
            raise ValueError("finset takes exactly k")
        from .finset import FinSetCat

        return FinSetCat(int(k))
    if name in ("finposet_struct", "finpointedposet_struct"):
        cap = params.pop("max_size", None)
        if cap is None or params:
            raise ValueError(f"{name} takes exactly max_size")
        from .structures import PointedPosetStructure, PosetStructure, StructCat

        struct = PosetStructure() if name == "finposet_struct" else PointedPosetStructure()
        return StructCat(struct, int(cap))
    raise ValueError(f"unknown builtin base {name!r}")
