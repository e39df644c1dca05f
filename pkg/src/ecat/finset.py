"""Skeletal finite sets as a computed symmetric monoidal closed base.

Object n is the set {0..n-1}; a morphism n -> m is a function, referenced by
the rank of its graph tuple in lexicographic order (first coordinate most
significant). Everything — composition, cartesian tensor, exponentials,
equalizers, products — is evaluated on demand, so the object space is
unbounded while the checker window stays at {0..k}.

Under this encoding 1·x = x·1 = x and (xy)z = x(yz) hold on the nose, so the
unitors and associators are identity morphisms; the symmetry is a genuine
transposition permutation.
"""

from __future__ import annotations

from .report import StructuralError
from .vbase import EqualizerResult, MonBase, MorRef, ProductResult


def graph_rank(graph: tuple[int, ...], dst: int) -> int:
    r = 0
    for v in graph:
        r = r * dst + v
    return r


def graph_unrank(k: int, src: int, dst: int) -> tuple[int, ...]:
    if src == 0:
        return ()
    out = [0] * src
    for i in range(src - 1, -1, -1):
        k, out[i] = divmod(k, dst)
    return tuple(out)


class FinSetCat(MonBase):
    """Computed finite-set base; ``k`` bounds the quantification window only."""

    symmetric = True
    closed = True
    has_equalizers = True
    has_products = True

    def __init__(self, k: int):
        if k < 0:
            raise ValueError("finset window needs k >= 0")
        self.k = k
        self.unit = 1
        self.name = f"finset({k})"
        self.n_objects = None  # unbounded halo

    def objects(self):
        return range(self.k + 1)

    def contains_obj(self, x) -> bool:
        return isinstance(x, int) and x >= 0

    # -- category ----------------------------------------------------------
    def hom_size(self, x, y):
        if x == 0:
            return 1
        if y == 0:
            return 0
        return y ** x

    def graph(self, m: MorRef) -> tuple[int, ...]:
        if not (0 <= m.k < self.hom_size(m.src, m.dst)):
            raise StructuralError(f"morphism index out of range: {m}")
        return graph_unrank(m.k, m.src, m.dst)

    def mor(self, src: int, dst: int, graph: tuple[int, ...]) -> MorRef:
        return MorRef(src, dst, graph_rank(graph, dst))

    def id_of(self, x):
        return self.mor(x, x, tuple(range(x)))

    def compose(self, f, g):
        if f.dst != g.src:
            raise StructuralError(f"non-composable pair {f} {g}")
        gf = self.graph(g)
        return self.mor(f.src, g.dst, tuple(gf[v] for v in self.graph(f)))

    # -- monoidal ------------------------------------------------------------
    def tensor_obj(self, x, y):
        return x * y

    def tensor_mor(self, f, g):
        fg_src = f.src * g.src
        gf, gg = self.graph(f), self.graph(g)
        b = g.src
        b2 = g.dst
        out = [0] * fg_src
        for i in range(f.src):
            base = i * b
            fi = gf[i] * b2
            for j in range(b):
                out[base + j] = fi + gg[j]
        return self.mor(fg_src, f.dst * g.dst, tuple(out))

    def lunitor(self, x):
        return self.id_of(x)

    def lunitor_inv(self, x):
        return self.id_of(x)

    def runitor(self, x):
        return self.id_of(x)

    def runitor_inv(self, x):
        return self.id_of(x)

    def associator(self, x, y, z):
        return self.id_of(x * y * z)

    def associator_inv(self, x, y, z):
        return self.id_of(x * y * z)

    def symmetry(self, x, y):
        graph = tuple((idx % y) * x + (idx // y) for idx in range(x * y))
        return self.mor(x * y, y * x, graph)

    # -- closed --------------------------------------------------------------
    def hom_obj(self, y, z):
        return self.hom_size(y, z)

    def ev(self, y, z):
        h = self.hom_obj(y, z)
        graph = []
        for m in range(h):
            gm = graph_unrank(m, y, z)
            graph.extend(gm)
        return self.mor(h * y, z, tuple(graph))

    def lam(self, x, y, z, f):
        if f.src != x * y or f.dst != z:
            raise StructuralError(f"lam argument {f} is not {x}*{y} -> {z}")
        gf = self.graph(f)
        graph = tuple(graph_rank(gf[i * y:(i + 1) * y], z) for i in range(x))
        return self.mor(x, self.hom_obj(y, z), graph)

    # -- limits ----------------------------------------------------------------
    def equalizer(self, f, g):
        gf, gg = self.graph(f), self.graph(g)
        fixed = [i for i in range(f.src) if gf[i] == gg[i]]
        inc = self.mor(len(fixed), f.src, tuple(fixed))
        positions = {v: i for i, v in enumerate(fixed)}

        def factor(h: MorRef) -> MorRef:
            gh = self.graph(h)
            if any(v not in positions for v in gh):
                raise StructuralError(f"{h} does not equalize the pair")
            return self.mor(h.src, len(fixed), tuple(positions[v] for v in gh))

        return EqualizerResult(len(fixed), inc, factor)

    def product(self, objs):
        objs = list(objs)
        total = 1
        for n in objs:
            total *= n
        strides = []
        acc = 1
        for n in reversed(objs):
            strides.append(acc)
            acc *= n
        strides.reverse()
        projections = tuple(
            self.mor(total, n, tuple((idx // strides[i]) % n for idx in range(total)))
            for i, n in enumerate(objs)
        )

        def pair(src: int, cone) -> MorRef:
            cone = list(cone)
            if len(cone) != len(objs):
                raise StructuralError("cone arity mismatch")
            if any(h.src != src for h in cone):
                raise StructuralError("cone legs do not share the stated source")
            graphs = [self.graph(h) for h in cone]
            out = []
            for t in range(src):
                idx = 0
                for g, stride in zip(graphs, strides):
                    idx += g[t] * stride
                out.append(idx)
            return self.mor(src, total, tuple(out))

        return ProductResult(total, projections, pair)
