"""Finite quivers (directed multigraphs), family classification, automorphisms.

Vertex and arrow ids are opaque strings; iteration order everywhere is the
construction ("file") order, so all derived data is deterministic.
"""

from dataclasses import dataclass
from itertools import permutations

from .errors import InputError, UnsupportedQuiverError


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    """Immutable finite quiver."""

    def __init__(self, vertices, arrows, name=""):
        self.name = name
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex ids")
        built = []
        for a in arrows:
            if not isinstance(a, Arrow):
                nm, s, t = a
                a = Arrow(str(nm), str(s), str(t))
            built.append(a)
        self.arrows = tuple(built)
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise InputError("duplicate arrow ids")
        vset = set(self.vertices)
        for a in self.arrows:
            if a.source not in vset or a.target not in vset:
                raise InputError(f"arrow {a.name}: endpoint not in vertex set")
        self._index = {v: i for i, v in enumerate(self.vertices)}
        self._arrow_by_name = {a.name: a for a in self.arrows}
        n = len(self.vertices)
        self._d = [[0] * n for _ in range(n)]
        for a in self.arrows:
            self._d[self._index[a.source]][self._index[a.target]] += 1

    # -- basic accessors -------------------------------------------------

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        return (isinstance(other, Quiver)
                and self.vertices == other.vertices
                and self.arrows == other.arrows)

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self):
        return f"Quiver({self.name or 'Q'}: {len(self.vertices)} vertices, {len(self.arrows)} arrows)"

    def index(self, v):
        try:
            return self._index[v]
        except KeyError:
            raise InputError(f"unknown vertex id {v!r}") from None

    def arrow(self, name):
        try:
            return self._arrow_by_name[name]
        except KeyError:
            raise InputError(f"unknown arrow id {name!r}") from None

    def multiplicity(self, x, y):
        """Number of arrows x -> y."""
        return self._d[self.index(x)][self.index(y)]

    def d_matrix(self):
        return [row[:] for row in self._d]

    def arrows_between(self, x, y):
        self.index(x), self.index(y)
        return tuple(a for a in self.arrows if a.source == x and a.target == y)

    def out_arrows(self, x):
        self.index(x)
        return tuple(a for a in self.arrows if a.source == x)

    def in_arrows(self, x):
        self.index(x)
        return tuple(a for a in self.arrows if a.target == x)

    # -- standard predicates ----------------------------------------------

    def sources(self):
        targets = {a.target for a in self.arrows}
        return tuple(v for v in self.vertices if v not in targets)

    def sinks(self):
        srcs = {a.source for a in self.arrows}
        return tuple(v for v in self.vertices if v not in srcs)

    def has_oriented_cycle(self):
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        queue = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for a in self.out_arrows(v):
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    queue.append(a.target)
        return seen < len(self.vertices)

    def is_connected(self):
        """Connectivity of the underlying (undirected) graph."""
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        nbrs = {v: set() for v in self.vertices}
        for a in self.arrows:
            nbrs[a.source].add(a.target)
            nbrs[a.target].add(a.source)
        while stack:
            v = stack.pop()
            for w in nbrs[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def is_tree(self):
        """True iff the underlying multigraph is connected and acyclic.

        Parallel arrows count as a cycle of the underlying multigraph,
        so e.g. a doubled arrow is not a tree.
        """
        return (self.is_connected()
                and len(self.arrows) == len(self.vertices) - 1)

    def underlying_edges(self):
        """Undirected edges with multiplicity, as (x, y) pairs in file order."""
        return tuple((a.source, a.target) for a in self.arrows)

    def topological_order(self):
        if self.has_oriented_cycle():
            raise UnsupportedQuiverError("quiver has an oriented cycle")
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        order, queue = [], [v for v in self.vertices if indeg[v] == 0]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for a in self.out_arrows(v):
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    queue.append(a.target)
        return tuple(order)

    def diameter(self):
        """Diameter of the underlying graph (max over pairs of BFS distance)."""
        best = 0
        for src in self.vertices:
            dist = {src: 0}
            queue = [src]
            while queue:
                v = queue.pop(0)
                for a in self.arrows:
                    for w in ((a.target,) if a.source == v else ()) + ((a.source,) if a.target == v else ()):
                        if w not in dist:
                            dist[w] = dist[v] + 1
                            queue.append(w)
            best = max(best, max(dist.values(), default=0))
        return best


# -- classification -------------------------------------------------------


@dataclass(frozen=True)
class GraphType:
    """Catalogued underlying-graph family of a quiver.

    tag is one of "Dynkin", "AffineTree", "AffineCycle", "MultiArrow",
    "Other".  family is "A"/"D"/"E" for the tree families, "T" for affine
    cycles (with (p, q) normal-form indices) and "Omega" for the two-vertex
    multiple-arrow quivers.
    """

    tag: str
    family: str = ""
    n: int = 0
    p: int = 0
    q: int = 0

    def __str__(self):
        if self.tag == "Dynkin":
            return f"{self.family}{self.n}"
        if self.tag == "AffineTree":
            return f"{self.family}~{self.n}"
        if self.tag == "AffineCycle":
            return f"A~{self.n} (T({self.p},{self.q}))"
        if self.tag == "MultiArrow":
            return f"Omega{self.n}"
        return "Other"


def _arm_lengths(nbrs, center):
    arms = []
    for start in sorted(nbrs[center]):
        length, prev, cur = 1, center, start
        while True:
            nxt = [w for w in nbrs[cur] if w != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                return None  # branch inside an arm
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return sorted(arms, reverse=True)


def classify(q: Quiver) -> GraphType:
    """Match the underlying graph against the catalogued families.

    Requires a finite connected quiver without oriented cycles; everything
    not in the catalog is reported as Other.
    """
    if not q.vertices:
        raise UnsupportedQuiverError("empty quiver")
    if not q.is_connected():
        raise UnsupportedQuiverError("disconnected quiver")
    if q.has_oriented_cycle():
        raise UnsupportedQuiverError("quiver has an oriented cycle")

    n = len(q.vertices)
    m = len(q.arrows)

    # Omega_k: two vertices, k >= 2 parallel arrows in one direction.
    if n == 2 and m >= 2:
        d01 = q.multiplicity(q.vertices[0], q.vertices[1])
        d10 = q.multiplicity(q.vertices[1], q.vertices[0])
        if {d01, d10} == {m, 0}:
            return GraphType("MultiArrow", "Omega", n=m)
        return GraphType("Other")

    simple = len({frozenset((a.source, a.target)) for a in q.arrows}) == m
    if not simple:
        return GraphType("Other")

    nbrs = {v: set() for v in q.vertices}
    for a in q.arrows:
        nbrs[a.source].add(a.target)
        nbrs[a.target].add(a.source)
    degs = sorted(len(nbrs[v]) for v in q.vertices)

    if m == n - 1:  # tree
        if n == 1 or degs[-1] <= 2:
            return GraphType("Dynkin", "A", n=n)
        branch = [v for v in q.vertices if len(nbrs[v]) >= 3]
        if len(branch) == 1:
            v = branch[0]
            deg = len(nbrs[v])
            arms = _arm_lengths(nbrs, v)
            if arms is None:
                return GraphType("Other")
            if deg == 3:
                if arms[1] == arms[2] == 1:
                    return GraphType("Dynkin", "D", n=n)
                if arms == [2, 2, 1]:
                    return GraphType("Dynkin", "E", n=6)
                if arms == [3, 2, 1]:
                    return GraphType("Dynkin", "E", n=7)
                if arms == [4, 2, 1]:
                    return GraphType("Dynkin", "E", n=8)
                if arms == [2, 2, 2]:
                    return GraphType("AffineTree", "E", n=6)
                if arms == [3, 3, 1]:
                    return GraphType("AffineTree", "E", n=7)
                if arms == [5, 2, 1]:
                    return GraphType("AffineTree", "E", n=8)
            if deg == 4 and arms == [1, 1, 1, 1]:
                return GraphType("AffineTree", "D", n=4)
            return GraphType("Other")
        if len(branch) == 2:
            # two degree-3 forks joined by a chain, two leaves at each fork
            u, v = branch
            if len(nbrs[u]) == 3 and len(nbrs[v]) == 3:
                u_leaves = [w for w in nbrs[u] if len(nbrs[w]) == 1]
                v_leaves = [w for w in nbrs[v] if len(nbrs[w]) == 1]
                if len(u_leaves) == 2 and len(v_leaves) == 2:
                    rest = [w for w in q.vertices
                            if w not in (u, v) and w not in u_leaves + v_leaves]
                    if all(len(nbrs[w]) == 2 for w in rest):
                        return GraphType("AffineTree", "D", n=n - 1)
            return GraphType("Other")
        return GraphType("Other")

    if m == n and all(d == 2 for d in degs):
        # single cycle: count the two orientation classes along it
        start = q.vertices[0]
        walk, prev, cur = [start], None, start
        while True:
            nxt = [w for w in nbrs[cur] if w != prev]
            prev, cur = cur, nxt[0]
            if cur == start:
                break
            walk.append(cur)
        p = sum(1 for i in range(len(walk))
                if q.multiplicity(walk[i], walk[(i + 1) % len(walk)]) > 0)
        qq = n - p
        p, qq = max(p, qq), min(p, qq)
        return GraphType("AffineCycle", "T", n=n - 1, p=p, q=qq)

    return GraphType("Other")


# -- automorphism groups ---------------------------------------------------


@dataclass(frozen=True)
class PermutationGroup:
    """A group of vertex permutations, given by explicit elements.

    Elements are tuples mapping vertex index i to image index; suitable for
    the small quivers in the catalog (search is exponential in general).
    """

    vertices: tuple
    elements: tuple
    generators: tuple

    @property
    def order(self):
        return len(self.elements)

    def as_mapping(self, perm):
        return {self.vertices[i]: self.vertices[perm[i]] for i in range(len(perm))}

    def contains(self, perm):
        return tuple(perm) in set(self.elements)


def _color_refine(d):
    n = len(d)
    colors = [0] * n
    while True:
        sig = []
        for x in range(n):
            out = sorted((colors[y], d[x][y]) for y in range(n) if d[x][y])
            inn = sorted((colors[y], d[y][x]) for y in range(n) if d[y][x])
            sig.append((colors[x], tuple(out), tuple(inn)))
        canon = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [canon[s] for s in sig]
        if new == colors:
            return colors
        colors = new


def _greedy_generators(elements, n):
    ident = tuple(range(n))
    gens, closure = [], {ident}
    for e in elements:
        if e in closure:
            continue
        gens.append(e)
        frontier = list(closure)
        closure = set(closure)
        queue = list(closure)
        while queue:
            g = queue.pop()
            for h in gens:
                prod = tuple(h[g[i]] for i in range(n))
                if prod not in closure:
                    closure.add(prod)
                    queue.append(prod)
        del frontier
    return tuple(gens)


def aut_vertices_d(q: Quiver) -> PermutationGroup:
    """The group of arrow-multiplicity preserving vertex permutations.

    Backtracking over a color refinement of the multiplicity matrix; no
    external graph-isomorphism machinery.
    """
    n = len(q.vertices)
    d = q.d_matrix()
    colors = _color_refine(d)
    elements = []
    image = [-1] * n
    used = [False] * n

    def rec(i):
        if i == n:
            elements.append(tuple(image))
            return
        for j in range(n):
            if used[j] or colors[j] != colors[i]:
                continue
            ok = True
            for k in range(i):
                if d[i][k] != d[j][image[k]] or d[k][i] != d[image[k]][j]:
                    ok = False
                    break
            if ok and d[i][i] == d[j][j]:
                image[i] = j
                used[j] = True
                rec(i + 1)
                used[j] = False
                image[i] = -1

    rec(0)
    elements.sort()
    return PermutationGroup(q.vertices, tuple(elements),
                            _greedy_generators(elements, n))


@dataclass(frozen=True)
class QuiverAutGroup:
    """Full quiver automorphisms: compatible (vertex, arrow) permutation pairs."""

    vertex_group: PermutationGroup
    order: int
    generators: tuple  # (vertex mapping dict, arrow mapping dict) pairs


def aut_quiver(q: Quiver) -> QuiverAutGroup:
    """Generators and order of Aut of the quiver itself.

    On top of each multiplicity-preserving vertex permutation the parallel
    arrows between any fixed pair may be permuted freely, so the projection
    onto aut_vertices_d is split and the order is the product below.
    """
    vg = aut_vertices_d(q)
    order = vg.order
    fact = 1
    for x in q.vertices:
        for y in q.vertices:
            m = q.multiplicity(x, y)
            for k in range(2, m + 1):
                fact *= k
    order *= fact

    gens = []
    for perm in vg.generators:
        vmap = vg.as_mapping(perm)
        amap = {}
        for x in q.vertices:
            for y in q.vertices:
                src = q.arrows_between(x, y)
                dst = q.arrows_between(vmap[x], vmap[y])
                for a, b in zip(src, dst):
                    amap[a.name] = b.name
        gens.append((vmap, amap))
    ident = {v: v for v in q.vertices}
    for x in q.vertices:
        for y in q.vertices:
            par = q.arrows_between(x, y)
            if len(par) >= 2:
                swap = {a.name: a.name for a in q.arrows}
                swap[par[0].name], swap[par[1].name] = par[1].name, par[0].name
                gens.append((dict(ident), swap))
                if len(par) >= 3:
                    cyc = {a.name: a.name for a in q.arrows}
                    for i, a in enumerate(par):
                        cyc[a.name] = par[(i + 1) % len(par)].name
                    gens.append((dict(ident), cyc))
    return QuiverAutGroup(vg, order, tuple(gens))
