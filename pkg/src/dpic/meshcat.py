"""Hom spaces of the mesh category: paths in a window modulo the mesh ideal.

A morphism space between two window vertices is spanned by the directed
paths between them; the mesh ideal contributes one relation for every
splice of a full mesh sum into such a path.  Dimensions are computed by
exact rational elimination.
"""

from dataclasses import dataclass

from . import linalg
from .errors import InsufficientWindowError
from .translation import ZQuiverWindow, ZV, mesh_at


@dataclass(frozen=True)
class PathSpace:
    source: ZV
    target: ZV
    basis: tuple  # paths as tuples of ZArrow keys, DFS order

    @property
    def dimension(self):
        return len(self.basis)


@dataclass(frozen=True)
class HomSpace:
    source: ZV
    target: ZV
    dimension: int
    relation_rank: int
    quotient_basis: tuple  # paths whose residues form a basis of the quotient


def path_space(window: ZQuiverWindow, v: ZV, u: ZV) -> PathSpace:
    """All directed paths v -> u inside the window, depth-first in arrow order."""
    window.require(v)
    window.require(u)
    paths = []
    stack = []

    def dfs(cur):
        if cur == u:
            paths.append(tuple(a.key for a in stack))
            # fall through: the empty extension only exists at u, and any
            # longer path must leave u first, so keep exploring
        for a in window.arrows_out(cur):
            if a.target.level > u.level:
                continue
            stack.append(a)
            dfs(a.target)
            stack.pop()

    if v.level <= u.level:
        dfs(v)
    return PathSpace(v, u, tuple(paths))


def hom_window_bounds(v: ZV, u: ZV):
    """Smallest window [lo, hi] guaranteed adequate for hom computations."""
    return min(v.level, u.level) - 1, max(v.level, u.level) + 1


def _require_adequate(window, v, u):
    lo, hi = hom_window_bounds(v, u)
    if window.lo > lo or window.hi < hi:
        raise InsufficientWindowError(
            f"hom({v}, {u}) needs window [{lo}, {hi}], have [{window.lo}, {window.hi}]")


def _mesh_relations(window, v, u, paths):
    """Relation vectors over the path basis: p . (mesh sum) . q splices."""
    index = {p: i for i, p in enumerate(paths)}
    rel_rows = []
    seen = set()
    for n in range(v.level + 1, u.level + 1):
        for x in window.delta.vertices:
            end = ZV(n, x)
            mesh = mesh_at(window, end)
            if mesh is None:
                # cannot happen on an adequate window; guard for safety
                raise InsufficientWindowError(
                    f"mesh ending at {end} not contained in the window")
            prefixes = path_space(window, v, mesh.start).basis
            suffixes = path_space(window, end, u).basis
            for p in prefixes:
                for q in suffixes:
                    row = [0] * len(paths)
                    for alpha, beta in mesh.arrow_pairs():
                        full = p + (alpha.key, beta.key) + q
                        row[index[full]] += 1
                    key = tuple(row)
                    if key not in seen:
                        seen.add(key)
                        rel_rows.append(row)
    return rel_rows


def hom_space(window: ZQuiverWindow, v: ZV, u: ZV) -> HomSpace:
    """Hom in the mesh category, over the rationals.

    The window must contain one spare level on each side of
    [level(v), level(u)]; a too-narrow window raises rather than silently
    computing in a truncated category.
    """
    window.require(v)
    window.require(u)
    _require_adequate(window, v, u)
    ps = path_space(window, v, u)
    if not ps.basis:
        return HomSpace(v, u, 0, 0, ())
    rels = _mesh_relations(window, v, u, ps.basis)
    _, rk, pivots = linalg.row_echelon(rels)
    # residues of paths at non-pivot columns form a quotient basis
    pivot_set = set(pivots)
    quotient = tuple(p for i, p in enumerate(ps.basis) if i not in pivot_set)
    return HomSpace(v, u, len(ps.basis) - rk, rk, quotient)


def hom_dim(window: ZQuiverWindow, v: ZV, u: ZV) -> int:
    return hom_space(window, v, u).dimension


@dataclass(frozen=True)
class NilpotenceReport:
    checked_meshes: int
    checked_composites: int
    failures: tuple

    @property
    def passed(self):
        return not self.failures


def verify_mesh_nilpotence(window: ZQuiverWindow, reach: int = 1) -> NilpotenceReport:
    """Self-consistency of the elimination: mesh sums vanish in every quotient.

    For each fully contained mesh, the mesh sum must have zero residue in
    Hom(start, end), and its composite with any path out of the end vertex
    (up to `reach` levels further) must have zero residue in the
    corresponding larger Hom space.
    """
    failures = []
    n_meshes = 0
    n_composites = 0
    for end in window.vertices:
        mesh = mesh_at(window, end)
        if mesh is None:
            continue
        lo, hi = hom_window_bounds(mesh.start, end)
        if window.lo > lo or window.hi < hi:
            continue
        n_meshes += 1
        for u in window.vertices:
            if not end.level <= u.level <= end.level + reach:
                continue
            if u.level + 1 > window.hi or window.lo > mesh.start.level - 1:
                continue
            suffixes = path_space(window, end, u).basis
            if not suffixes:
                continue
            paths = path_space(window, mesh.start, u).basis
            index = {p: i for i, p in enumerate(paths)}
            rels = _mesh_relations(window, mesh.start, u, paths)
            for q in suffixes:
                row = [0] * len(paths)
                for alpha, beta in mesh.arrow_pairs():
                    row[index[(alpha.key, beta.key) + q]] += 1
                n_composites += 1
                if not linalg.in_row_span(rels, row):
                    failures.append((mesh.start, end, u, q))
    return NilpotenceReport(n_meshes, n_composites, tuple(failures))
