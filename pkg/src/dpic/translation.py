"""Windows of the translation quiver of a base quiver, and its symmetries.

The translation quiver on a base Delta has vertex set Z x Delta_0; every
arrow x -> y of Delta contributes a level arrow (n,x) -> (n,y) and a star
arrow (n,y) -> (n+1,x).  tau shifts levels down, the polarization pairs a
star arrow with the level arrow one mesh back, and for infinite
representation type a disjoint union of copies indexed by a component
integer carries the extra shift sigma.

Windows materialize a finite slab of levels; global statements (slice
search, relation checks) work with the closed multiplicity formula instead,
which is total on the infinite quiver.
"""

from dataclasses import dataclass
from functools import total_ordering
from typing import NamedTuple

from .errors import InputError, InsufficientRadiusError
from .quiver import Quiver


class ZV(NamedTuple):
    """Vertex (level, base, component) of the (extended) translation quiver."""

    level: int
    base: str
    comp: int = 0

    def __str__(self):
        if self.comp:
            return f"({self.level},{self.base};{self.comp})"
        return f"({self.level},{self.base})"


def tau(v: ZV) -> ZV:
    return ZV(v.level - 1, v.base, v.comp)


def tau_inv(v: ZV) -> ZV:
    return ZV(v.level + 1, v.base, v.comp)


def tau_power(v: ZV, k: int) -> ZV:
    return ZV(v.level - k, v.base, v.comp)


def sigma_shift(v: ZV, k: int = 1) -> ZV:
    """Component shift of the infinite-type quiver; levels untouched."""
    return ZV(v.level, v.base, v.comp + k)


def multiplicity_z(delta: Quiver, v: ZV, u: ZV) -> int:
    """Arrow count v -> u in the translation quiver (total, window-free)."""
    if v.comp != u.comp:
        return 0
    if u.level == v.level:
        return delta.multiplicity(v.base, u.base)
    if u.level == v.level + 1:
        return delta.multiplicity(u.base, v.base)
    return 0


class ZArrow(NamedTuple):
    """Arrow of a window: level arrow (n, name) or star arrow (n, name*)."""

    level: int
    delta_arrow: str
    starred: bool
    source: ZV
    target: ZV

    @property
    def key(self):
        return (self.level, self.delta_arrow, self.starred)

    def __str__(self):
        star = "*" if self.starred else ""
        return f"({self.level},{self.delta_arrow}{star})"


class ZQuiverWindow:
    """The full subquiver on levels a..b of the translation quiver."""

    def __init__(self, delta: Quiver, lo: int, hi: int):
        if lo > hi:
            raise InputError(f"empty window [{lo}, {hi}]")
        if delta.has_oriented_cycle():
            raise InputError("base quiver must have no oriented cycles")
        self.delta = delta
        self.lo = lo
        self.hi = hi
        self.vertices = tuple(ZV(n, x) for n in range(lo, hi + 1)
                              for x in delta.vertices)
        arrows = []
        for n in range(lo, hi + 1):
            for a in delta.arrows:
                arrows.append(ZArrow(n, a.name, False,
                                     ZV(n, a.source), ZV(n, a.target)))
            if n + 1 <= hi:
                for a in delta.arrows:
                    arrows.append(ZArrow(n, a.name, True,
                                         ZV(n, a.target), ZV(n + 1, a.source)))
        self.arrows = tuple(arrows)
        self._by_key = {ar.key: ar for ar in self.arrows}
        self._out = {}
        self._in = {}
        for ar in self.arrows:
            self._out.setdefault(ar.source, []).append(ar)
            self._in.setdefault(ar.target, []).append(ar)

    def contains(self, v: ZV) -> bool:
        return (v.comp == 0 and self.lo <= v.level <= self.hi
                and v.base in self.delta._index)

    def require(self, v: ZV):
        if not self.contains(v):
            raise InputError(f"vertex {v} outside window [{self.lo}, {self.hi}]")

    def arrows_out(self, v: ZV):
        return tuple(self._out.get(v, ()))

    def arrows_in(self, v: ZV):
        return tuple(self._in.get(v, ()))

    def arrow(self, level, delta_arrow, starred):
        return self._by_key.get((level, delta_arrow, starred))

    def multiplicity(self, v: ZV, u: ZV) -> int:
        return multiplicity_z(self.delta, v, u)

    def __repr__(self):
        return (f"ZQuiverWindow({self.delta.name or 'Delta'}, [{self.lo}, {self.hi}]: "
                f"{len(self.vertices)} vertices)")


def build_window(delta: Quiver, lo: int, hi: int) -> ZQuiverWindow:
    return ZQuiverWindow(delta, lo, hi)


def polarization(window: ZQuiverWindow, arrow: ZArrow) -> ZArrow:
    """mu of an arrow: star (n, a*) -> level (n, a); level (n+1, a) -> star (n, a*)."""
    if arrow.starred:
        image = window.arrow(arrow.level, arrow.delta_arrow, False)
    else:
        image = window.arrow(arrow.level - 1, arrow.delta_arrow, True)
    if image is None:
        raise InputError(f"polarization image of {arrow} falls outside the window")
    return image


@dataclass(frozen=True)
class MeshMiddle:
    vertex: ZV
    alphas: tuple  # arrows start -> vertex
    betas: tuple   # arrows vertex -> end, with mu(beta_j) = alpha_j


@dataclass(frozen=True)
class Mesh:
    end: ZV
    start: ZV
    middles: tuple

    def arrow_pairs(self):
        for mid in self.middles:
            yield from zip(mid.alphas, mid.betas)


def mesh_at(window: ZQuiverWindow, end: ZV):
    """The mesh ending at a vertex, or None if it is not fully contained."""
    start = tau(end)
    if not (window.contains(end) and window.contains(start)):
        return None
    by_mid = {}
    for beta in window.arrows_in(end):
        try:
            alpha = polarization(window, beta)
        except InputError:
            return None
        by_mid.setdefault(beta.source, []).append((alpha, beta))
    middles = []
    for mid in sorted(by_mid, key=lambda v: (v.level, window.delta.index(v.base))):
        pairs = by_mid[mid]
        if len(pairs) != window.multiplicity(mid, end):
            return None  # some arrows of the mesh are cut off by the window
        middles.append(MeshMiddle(mid,
                                  tuple(a for a, _ in pairs),
                                  tuple(b for _, b in pairs)))
    return Mesh(end, start, tuple(middles))


def meshes(window: ZQuiverWindow):
    """All fully contained meshes, ordered by end vertex."""
    out = []
    for v in window.vertices:
        m = mesh_at(window, v)
        if m is not None:
            out.append(m)
    return tuple(out)


# -- tau-commuting symmetries ----------------------------------------------


@total_ordering
@dataclass(frozen=True)
class SliceAutomorphism:
    """A tau-commuting, multiplicity-preserving vertex bijection.

    Determined by the images of the canonical slice (0, x); the value on
    (n, x, m) is the tau^{-n}-translate of the slice image, component
    preserved, so every such map commutes with tau and sigma by
    construction.  d-preservation is a property of the slice image and is
    established by the search below.
    """

    delta: Quiver
    images: tuple  # ZV per vertex, in delta file order

    @classmethod
    def identity(cls, delta):
        return cls(delta, tuple(ZV(0, x) for x in delta.vertices))

    @classmethod
    def tau_element(cls, delta, k=1):
        return cls(delta, tuple(ZV(-k, x) for x in delta.vertices))

    @classmethod
    def from_mapping(cls, delta, mapping):
        """Build from a dict vertex -> ZV (or (level, base) pair)."""
        images = []
        for x in delta.vertices:
            im = mapping[x]
            images.append(im if isinstance(im, ZV) else ZV(im[0], str(im[1])))
        return cls(delta, tuple(images))

    def image_of_slice(self, x):
        return self.images[self.delta.index(x)]

    def __call__(self, v: ZV) -> ZV:
        im = self.images[self.delta.index(v.base)]
        return ZV(v.level + im.level, im.base, v.comp)

    def compose(self, other):
        """self after other."""
        if self.delta is not other.delta and self.delta != other.delta:
            raise InputError("automorphisms over different base quivers")
        return SliceAutomorphism(
            self.delta, tuple(self(im) for im in other.images))

    def inverse(self):
        inv = [None] * len(self.images)
        for x, im in zip(self.delta.vertices, self.images):
            inv[self.delta.index(im.base)] = ZV(-im.level, x)
        return SliceAutomorphism(self.delta, tuple(inv))

    def power(self, k):
        if k < 0:
            return self.inverse().power(-k)
        acc = SliceAutomorphism.identity(self.delta)
        for _ in range(k):
            acc = self.compose(acc)
        return acc

    def is_identity(self):
        return all(im == ZV(0, x) for x, im in zip(self.delta.vertices, self.images))

    def tau_exponent(self):
        """k with self == tau^k, or None."""
        levels = {im.level for im in self.images}
        if len(levels) == 1 and all(im.base == x for x, im in
                                    zip(self.delta.vertices, self.images)):
            return -levels.pop()
        return None

    def normalized(self):
        """tau-shift with min slice level 0, and the shift applied."""
        m = min(im.level for im in self.images)
        if m == 0:
            return self, 0
        shifted = tuple(ZV(im.level - m, im.base) for im in self.images)
        return SliceAutomorphism(self.delta, shifted), m

    def sort_key(self):
        return tuple((im.level, self.delta.index(im.base)) for im in self.images)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def mapping(self):
        return {x: im for x, im in zip(self.delta.vertices, self.images)}

    def preserves_d(self, radius):
        """Re-check multiplicity preservation on an explicit window."""
        w = build_window(self.delta, -radius, radius + 1)
        for v in w.vertices:
            for u in w.vertices:
                if multiplicity_z(self.delta, self(v), self(u)) != w.multiplicity(v, u):
                    return False
        return True

    def __str__(self):
        body = ", ".join(f"{x}->{im}" for x, im in
                         zip(self.delta.vertices, self.images))
        return "{" + body + "}"


def _slice_candidates(delta, radius):
    """Backtracking enumeration of valid slice images within the radius."""
    n = len(delta.vertices)
    d = delta.d_matrix()

    # BFS order over the underlying graph so each vertex is constrained by
    # an already assigned neighbour.
    nbrs = [set() for _ in range(n)]
    for a in delta.arrows:
        i, j = delta.index(a.source), delta.index(a.target)
        nbrs[i].add(j)
        nbrs[j].add(i)
    order, seen = [], set()
    for root in range(n):
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(nbrs[v]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)

    def dz(lv, bv, lu, bu):
        if lu == lv:
            return d[bv][bu]
        if lu == lv + 1:
            return d[bu][bv]
        return 0

    assign = [None] * n
    used = [False] * n
    found = []

    def consistent(i, j):
        lv, bv = assign[i]
        lu, bu = assign[j]
        # only the alignment shifts where either side of the d-preservation
        # condition can be nonzero need checking
        for k in {0, 1, lu - lv, lu - lv + 1, lv - lu, lv - lu + 1}:
            lhs = dz(lv, bv, lu + k, bu)
            rhs = d[i][j] if k == 0 else (d[j][i] if k == 1 else 0)
            if lhs != rhs:
                return False
            lhs2 = dz(lu, bu, lv + k, bv)
            rhs2 = d[j][i] if k == 0 else (d[i][j] if k == 1 else 0)
            if lhs2 != rhs2:
                return False
        return True

    def rec(pos):
        if pos == n:
            found.append(tuple(assign))
            return
        i = order[pos]
        for lev in range(-radius, radius + 1):
            for b in range(n):
                if used[b]:
                    continue
                assign[i] = (lev, b)
                if all(consistent(i, order[k]) for k in range(pos)):
                    used[b] = True
                    rec(pos + 1)
                    used[b] = False
        assign[i] = None

    rec(0)
    autos = []
    seen_keys = set()
    for a in found:
        m = min(lev for lev, _ in a)
        images = tuple(ZV(lev - m, delta.vertices[b]) for lev, b in a)
        if images not in seen_keys:
            seen_keys.add(images)
            autos.append(SliceAutomorphism(delta, images))
    autos.sort()
    return autos


@dataclass(frozen=True)
class CosetInfo:
    """One coset of <tau>: a normalized representative and its torsion data.

    rep^order_mod_tau equals tau^{-tau_defect}; the coset contains an
    element of finite order exactly when order_mod_tau divides tau_defect,
    and otherwise rep is a fractional root of a tau power (e.g. the eta
    with eta^2 = tau on the odd affine D trees).
    """

    rep: SliceAutomorphism
    order_mod_tau: int
    tau_defect: int

    @property
    def is_torsion(self):
        return self.tau_defect % self.order_mod_tau == 0

    def torsion_element(self):
        if not self.is_torsion:
            return None
        shift = self.tau_defect // self.order_mod_tau
        return self.rep.compose(SliceAutomorphism.tau_element(self.rep.delta, shift))

    def fractional_element(self):
        """Adjusted g with g^e = tau, when the defect allows it."""
        e, m = self.order_mod_tau, self.tau_defect
        if self.is_torsion or (m + 1) % e != 0:
            return None
        return self.rep.compose(
            SliceAutomorphism.tau_element(self.rep.delta, (m + 1) // e))


@dataclass
class TauCommutingGroup:
    """The group of tau-commuting symmetries, presented by <tau>-cosets."""

    delta: Quiver
    radius: int
    cosets: tuple  # CosetInfo, identity first, then lexicographic

    @property
    def reps(self):
        return tuple(c.rep for c in self.cosets)

    @property
    def tau(self):
        return SliceAutomorphism.tau_element(self.delta)

    @property
    def index_over_tau(self):
        return len(self.cosets)

    @property
    def torsion_order(self):
        return sum(1 for c in self.cosets if c.is_torsion)

    def torsion_elements(self):
        return tuple(c.torsion_element() for c in self.cosets if c.is_torsion)

    def fractional_generators(self):
        out = []
        for c in self.cosets:
            g = c.fractional_element()
            if g is not None:
                out.append(g)
        return tuple(out)

    def coset_of(self, auto: SliceAutomorphism):
        normed, _ = auto.normalized()
        for c in self.cosets:
            if c.rep == normed:
                return c
        return None

    def contains(self, auto: SliceAutomorphism):
        return self.coset_of(auto) is not None


def aut_commuting_with_tau(delta: Quiver, search_radius=None) -> TauCommutingGroup:
    """Slice search for the tau-commuting symmetry group of the translation quiver.

    A tau-commuting multiplicity-preserving bijection is determined by the
    image of the canonical slice; candidates are enumerated within
    [-search_radius, search_radius] and validated through the closed
    multiplicity formula, which is exact on the whole quiver.  Results are
    returned modulo <tau> in lexicographic slice order.
    """
    if not delta.is_connected():
        raise InputError("base quiver must be connected")
    if delta.has_oriented_cycle():
        raise InputError("base quiver must have no oriented cycles")
    need = delta.diameter() + 1
    if search_radius is None:
        search_radius = delta.diameter() + 2
    if search_radius < need:
        raise InsufficientRadiusError(
            f"search radius {search_radius} < diameter + 1 = {need}")

    autos = _slice_candidates(delta, search_radius)
    ident = SliceAutomorphism.identity(delta)
    cosets = []
    for rep in autos:
        cur = rep
        e = 1
        while True:
            k = cur.tau_exponent()
            if k is not None:
                cosets.append(CosetInfo(rep, e, -k))
                break
            cur = rep.compose(cur)
            e += 1
            if e > 4 * len(autos) + 8:
                raise InsufficientRadiusError(
                    "no closure of coset powers; radius too small")
    cosets.sort(key=lambda c: (not c.rep.is_identity(), c.rep.sort_key()))
    return TauCommutingGroup(delta, search_radius, tuple(cosets))
