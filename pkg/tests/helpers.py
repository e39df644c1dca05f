"""Corpus generators and independent oracles shared by the test suites.

Random categories come from free categories on acyclic multigraphs, optionally
quotiented by a random congruence, plus a few hand-built monoid categories;
associativity holds by construction and is still re-verified by a direct
triple-loop oracle where a test calls for one.
"""

from __future__ import annotations

import itertools
import random

from ecat.core import (
    Enrichment,
    EnrichedFunctor,
)
from ecat.vbase import FinCat, MorRef


# ---------------------------------------------------------------------------
# independent law oracles
# ---------------------------------------------------------------------------

def assoc_oracle(C: FinCat) -> list:
    """Direct triple-loop associativity scan; returns violating triples."""
    bad = []
    for f in C.mors():
        for g in C.mors():
            if f.dst != g.src:
                continue
            fg = C.compose(f, g)
            for h in C.mors():
                if g.dst != h.src:
                    continue
                if C.compose(fg, h) != C.compose(f, C.compose(g, h)):
                    bad.append((f, g, h))
    return bad


def identity_oracle(C: FinCat) -> list:
    bad = []
    for f in C.mors():
        if C.compose(C.id_of(f.src), f) != f or C.compose(f, C.id_of(f.dst)) != f:
            bad.append(f)
    return bad


def preorder_oracle(relation: set, n: int) -> bool:
    if any((x, x) not in relation for x in range(n)):
        return False
    return all(
        (x, z) in relation
        for (x, y) in relation
        for (y2, z) in relation
        if y == y2
    )


def cost_value(base, idx: int) -> float:
    """Object index to numeric value for a cost base (last index is inf)."""
    return float("inf") if idx == base.n_objects - 1 else idx


def triangle_oracle(base, d: dict, n: int) -> bool:
    """Triangle inequality in the truncated quantale: sums past the largest
    finite value are infinite."""
    top = base.n_objects - 2
    val = lambda i: cost_value(base, i)

    def plus(a, b):
        s = val(a) + val(b)
        return s if s <= top else float("inf")

    if any(val(d[(x, x)]) != 0 for x in range(n)):
        return False
    return all(
        val(d[(x, z)]) <= plus(d[(x, y)], d[(y, z)])
        for x, y, z in itertools.product(range(n), repeat=3)
    )


def kleisli_oracle(T) -> FinCat:
    """Textbook Kleisli category from the monad's underlying tables."""
    cat = T.carrier.under
    n = cat.n_objects
    hom_size = {}
    identity = {}
    then = {}
    for x, y in itertools.product(range(n), repeat=2):
        hom_size[(x, y)] = cat.hom_size(x, T.t_ob(y))
    for x in range(n):
        identity[x] = MorRef(x, x, T.eta(x).k)
    for x, y, z in itertools.product(range(n), repeat=3):
        for f in cat.hom(x, T.t_ob(y)):
            for g in cat.hom(y, T.t_ob(z)):
                comp = cat.compose(cat.compose(f, T.t_mor(g)), T.mu(z))
                then[(MorRef(x, y, f.k), MorRef(y, z, g.k))] = MorRef(x, z, comp.k)
    return FinCat(n, hom_size, identity, then)


def em_oracle(T) -> tuple[list, dict]:
    """Direct Eilenberg-Moore enumeration: algebra objects and hom lists."""
    cat = T.carrier.under
    algebras = []
    for x in cat.objects():
        for a in cat.hom(T.t_ob(x), x):
            if cat.compose(T.eta(x), a) != cat.id_of(x):
                continue
            if cat.compose(T.mu(x), a) != cat.compose(T.t_mor(a), a):
                continue
            algebras.append((x, a))
    homs = {}
    for i, (x, a) in enumerate(algebras):
        for j, (y, b) in enumerate(algebras):
            homs[(i, j)] = [
                h for h in cat.hom(x, y)
                if cat.compose(T.t_mor(h), b) == cat.compose(a, h)
            ]
    return algebras, homs


def count_monotone_maps(rel1: set, n1: int, rel2: set, n2: int) -> int:
    count = 0
    for graph in itertools.product(range(n2), repeat=n1):
        if all((graph[x], graph[y]) in rel2 for (x, y) in rel1):
            count += 1
    return count


# ---------------------------------------------------------------------------
# random corpus
# ---------------------------------------------------------------------------

def free_dag_category(rng: random.Random, max_objects: int = 4, max_hom: int = 3) -> FinCat:
    """Free category on a random acyclic multigraph, rejecting path explosions."""
    while True:
        n = rng.randint(1, max_objects)
        edges = {}
        for i in range(n):
            for j in range(i + 1, n):
                edges[(i, j)] = rng.randint(0, 2)
        # paths[i][j]: list of edge-label tuples
        paths = {(i, j): [] for i in range(n) for j in range(n)}
        for i in range(n):
            paths[(i, i)].append(())
        order_ok = True
        for i in range(n):
            for j in range(i + 1, n):
                acc = []
                for k in range(i, j):
                    for p in paths[(i, k)]:
                        for e in range(edges.get((k, j), 0)):
                            acc.append(p + ((k, j, e),))
                paths[(i, j)] = acc
                if len(acc) > max_hom:
                    order_ok = False
                    break
            if not order_ok:
                break
        if not order_ok:
            continue
        hom_size = {(i, j): len(paths[(i, j)]) for i in range(n) for j in range(n)}
        identity = {i: MorRef(i, i, 0) for i in range(n)}
        index = {
            (i, j, tuple(p)): k
            for (i, j), ps in paths.items()
            for k, p in enumerate(ps)
        }
        then = {}
        for (i, j), ps in paths.items():
            for (j2, l), qs in paths.items():
                if j != j2:
                    continue
                for k1, p in enumerate(ps):
                    for k2, q in enumerate(qs):
                        then[(MorRef(i, j, k1), MorRef(j, l, k2))] = MorRef(
                            i, l, index[(i, l, tuple(p) + tuple(q))]
                        )
        return FinCat(n, hom_size, identity, then)


def quotient_category(C: FinCat, pairs: list) -> FinCat:
    """Quotient by the congruence closure of the given parallel pairs."""
    cls = {f: f for f in C.mors()}

    def find(f):
        while cls[f] != f:
            cls[f] = cls[cls[f]]
            f = cls[f]
        return f

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            cls[max(ra, rb)] = min(ra, rb)

    for a, b in pairs:
        if a.src == b.src and a.dst == b.dst:
            union(a, b)
    changed = True
    while changed:
        changed = False
        mors = list(C.mors())
        for f in mors:
            for g in mors:
                if f.dst != g.src:
                    continue
                for f2 in C.hom(f.src, f.dst):
                    if find(f2) != find(f):
                        continue
                    for g2 in C.hom(g.src, g.dst):
                        if find(g2) != find(g):
                            continue
                        a = C.compose(f, g)
                        b = C.compose(f2, g2)
                        if find(a) != find(b):
                            union(a, b)
                            changed = True
    reps = {}
    for f in C.mors():
        reps.setdefault((f.src, f.dst), [])
        r = find(f)
        if r not in reps[(f.src, f.dst)]:
            reps[(f.src, f.dst)].append(r)
    for key in reps:
        reps[key].sort()
    new_index = {
        r: MorRef(r.src, r.dst, reps[(r.src, r.dst)].index(r))
        for rs in reps.values()
        for r in rs
    }
    hom_size = {key: len(rs) for key, rs in reps.items()}
    for i in range(C.n_objects):
        for j in range(C.n_objects):
            hom_size.setdefault((i, j), 0)
    identity = {x: new_index[find(C.id_of(x))] for x in C.objects()}
    then = {}
    for f in C.mors():
        for g in C.mors():
            if f.dst != g.src:
                continue
            then[(new_index[find(f)], new_index[find(g)])] = new_index[find(C.compose(f, g))]
    return FinCat(C.n_objects, hom_size, identity, then)


def cyclic_monoid_category(k: int) -> FinCat:
    """One object, morphisms the cyclic group of order k."""
    hom_size = {(0, 0): k}
    identity = {0: MorRef(0, 0, 0)}
    then = {
        (MorRef(0, 0, a), MorRef(0, 0, b)): MorRef(0, 0, (a + b) % k)
        for a in range(k)
        for b in range(k)
    }
    return FinCat(1, hom_size, identity, then)


def idempotent_monoid_category() -> FinCat:
    """One object, morphisms {1, e} with e.e = e."""
    hom_size = {(0, 0): 2}
    identity = {0: MorRef(0, 0, 0)}
    comp = {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1}
    then = {
        (MorRef(0, 0, a), MorRef(0, 0, b)): MorRef(0, 0, comp[(a, b)])
        for a in range(2)
        for b in range(2)
    }
    return FinCat(1, hom_size, identity, then)


def random_category(rng: random.Random, max_objects: int = 4, max_hom: int = 3) -> FinCat:
    roll = rng.random()
    if roll < 0.15:
        return cyclic_monoid_category(rng.choice([2, 3]))
    if roll < 0.25:
        return idempotent_monoid_category()
    C = free_dag_category(rng, max_objects, max_hom)
    if roll < 0.6:
        return C
    mors = list(C.mors())
    pairs = []
    for _ in range(rng.randint(1, 3)):
        f = rng.choice(mors)
        par = [g for g in C.hom(f.src, f.dst)]
        if len(par) > 1:
            pairs.append((f, rng.choice(par)))
    return quotient_category(C, pairs) if pairs else C


def random_relation(rng: random.Random, n: int, density: float = 0.5) -> set:
    rel = {(x, x) for x in range(n)}
    for x in range(n):
        for y in range(n):
            if x != y and rng.random() < density:
                rel.add((x, y))
    return rel


def random_preorder(rng: random.Random, n: int, density: float = 0.4) -> set:
    rel = random_relation(rng, n, density)
    changed = True
    while changed:
        changed = False
        for (a, b) in list(rel):
            for (c, d) in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return rel


def random_poset(rng: random.Random, n: int, density: float = 0.3) -> set:
    """Antisymmetric preorder built over the natural order of indices."""
    rel = {(x, x) for x in range(n)}
    for x in range(n):
        for y in range(x + 1, n):
            if rng.random() < density:
                rel.add((x, y))
    changed = True
    while changed:
        changed = False
        for (a, b) in list(rel):
            for (c, d) in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return rel


def random_metric_table(rng: random.Random, base, n: int) -> dict:
    """A valid distance table over a cost base (triangle-closed truncated)."""
    top = base.n_objects - 2  # largest finite value
    d = {}
    for x in range(n):
        for y in range(n):
            d[(x, y)] = 0 if x == y else rng.randint(0, base.n_objects - 1)
    # close under triangle inequality in value space
    changed = True
    while changed:
        changed = False
        for x, y, z in itertools.product(range(n), repeat=3):
            a = cost_value(base, d[(x, y)])
            b = cost_value(base, d[(y, z)])
            c = cost_value(base, d[(x, z)])
            s = a + b
            if s > top:
                s = float("inf")
            if c > s:
                d[(x, z)] = d[(x, y)] if s == a else (
                    base.n_objects - 1 if s == float("inf") else int(s)
                )
                changed = True
    return d


def random_monotone_ob_map(rng: random.Random, rel1: set, n1: int, rel2: set, n2: int):
    maps = [
        graph for graph in itertools.product(range(n2), repeat=n1)
        if all((graph[x], graph[y]) in rel2 for (x, y) in rel1)
    ]
    if not maps:
        return None
    return rng.choice(maps)


def thin_functor(E1: Enrichment, E2: Enrichment, ob_graph) -> EnrichedFunctor:
    """The enriched functor over a hom-dominating object map between thin
    enrichments (components forced)."""
    base = E1.base
    ob_map = dict(enumerate(ob_graph))
    mor_map = {}
    for f in E1.under.mors():
        mor_map[f] = MorRef(ob_map[f.src], ob_map[f.dst], 0)
    e_fun = {}
    for x, y in itertools.product(E1.objects(), repeat=2):
        src = E1.hom(x, y)
        dst = E2.hom(ob_map[x], ob_map[y])
        if base.hom_size(src, dst) == 0:
            raise ValueError(f"object map is not hom-dominating at ({x},{y})")
        e_fun[(x, y)] = MorRef(src, dst, 0)
    return EnrichedFunctor(E1, E2, ob_map, mor_map, e_fun)


def bool_functor_candidates(E1: Enrichment, E2: Enrichment) -> list[EnrichedFunctor]:
    """All hom-dominating maps between Bool-style thin enrichments."""
    out = []
    n1, n2 = E1.n_objects, E2.n_objects
    for graph in itertools.product(range(n2), repeat=n1):
        try:
            out.append(thin_functor(E1, E2, graph))
        except ValueError:
            continue
    return out
