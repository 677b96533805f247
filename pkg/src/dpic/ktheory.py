"""Integer-matrix shadow on the Grothendieck group: Cartan and Coxeter
matrices, simple reflections, Weyl group closure, source reflections of
orientations, and the reflection-product identity for the Coxeter matrix.

All matrices act on column vectors in the projective basis.  The
composition convention for reflection products (first reflection applied
first, i.e. rightmost factor) and the Coxeter formula -C^{-1} C^t are
pinned by the rank-2 check in the test suite rather than transcribed.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .errors import ConsistencyError, InputError, UnsupportedQuiverError
from .knitting import path_count_matrix
from .quiver import Quiver


def cartan(delta: Quiver) -> np.ndarray:
    """Path-count matrix: entry (x, y) counts directed paths x -> y."""
    if delta.has_oriented_cycle():
        raise UnsupportedQuiverError("path counts diverge on oriented cycles")
    return np.array(path_count_matrix(delta), dtype=np.int64)


def cartan_inverse(delta: Quiver) -> np.ndarray:
    C = cartan(delta)
    inv = linalg.inverse([[int(v) for v in row] for row in C])
    out = np.zeros_like(C)
    for i, row in enumerate(inv):
        for j, v in enumerate(row):
            if Fraction(v).denominator != 1:
                raise ConsistencyError("Cartan inverse is not integral")
            out[i, j] = int(v)
    return out


def coxeter_matrix(delta: Quiver) -> np.ndarray:
    """Action of the translation on the Grothendieck group, projective basis.

    Characterized by sending each projective class to minus the matching
    injective class; in path-count terms this is -C^{-1} C^t.
    """
    C = cartan(delta)
    return -(cartan_inverse(delta) @ C.T)


def reflection(delta: Quiver, x) -> np.ndarray:
    """Simple reflection at a vertex of the underlying graph.

    Sends e_x to -e_x plus the sum of e_y over underlying edges {x, y}
    (with multiplicity), fixing the other basis vectors.
    """
    n = len(delta.vertices)
    i = delta.index(x)
    s = np.eye(n, dtype=np.int64)
    s[i, i] = -1
    for (a, b) in delta.underlying_edges():
        if a == x:
            s[delta.index(b), i] += 1
        elif b == x:
            s[delta.index(a), i] += 1
    return s


@dataclass(frozen=True)
class WeylClosure:
    completed: bool
    order: int        # exact order when completed, elements found otherwise
    element_bound: int
    generator_count: int


def weyl_group(delta: Quiver, element_bound: int = 10 ** 6) -> WeylClosure:
    """Closure of the simple reflections under multiplication.

    Breadth-first over products; returns a partial report instead of an
    error when the bound is exceeded (affine and wild Weyl groups are
    infinite).
    """
    gens = [reflection(delta, x) for x in delta.vertices]
    n = len(delta.vertices)
    ident = np.eye(n, dtype=np.int64)
    seen = {ident.tobytes()}
    frontier = [ident]
    count = 1
    while frontier:
        new = []
        for m in frontier:
            for g in gens:
                p = g @ m
                key = p.tobytes()
                if key not in seen:
                    seen.add(key)
                    new.append(p)
                    count += 1
                    if count > element_bound:
                        return WeylClosure(False, count, element_bound, len(gens))
        frontier = new
    return WeylClosure(True, count, element_bound, len(gens))


def weyl_root_orbit(delta: Quiver, element_bound: int = 10 ** 6):
    """Positive roots as the sign-normalized orbit of the basis vectors.

    Acts on dimension-vector coordinates, i.e. with the transposed
    reflection matrices; basis vectors play the simple roots.
    """
    gens = [reflection(delta, x).T for x in delta.vertices]
    n = len(delta.vertices)
    basis = [tuple(int(v) for v in row) for row in np.eye(n, dtype=np.int64)]
    seen = set(basis)
    frontier = list(basis)
    while frontier:
        new = []
        for vec in frontier:
            arr = np.array(vec, dtype=np.int64)
            for g in gens:
                img = tuple(int(v) for v in (g @ arr))
                if img not in seen:
                    seen.add(img)
                    new.append(img)
                    if len(seen) > element_bound:
                        raise ConsistencyError("root orbit exceeded bound")
        frontier = new
    positives = {v for v in seen if all(c >= 0 for c in v)}
    negatives = {tuple(-c for c in v) for v in seen if all(c <= 0 for c in v)}
    if positives != negatives:
        raise ConsistencyError("root orbit is not symmetric")
    return positives


# -- orientations and source reflections ------------------------------------


def bgp_reflect(delta: Quiver, x) -> Quiver:
    """Reverse all arrows at a source vertex; other arrows untouched."""
    if x not in delta.vertices:
        raise InputError(f"unknown vertex id {x!r}")
    if x not in delta.sources():
        raise InputError(f"vertex {x!r} is not a source")
    arrows = []
    for a in delta.arrows:
        if a.source == x:
            arrows.append((a.name, a.target, a.source))
        else:
            arrows.append((a.name, a.source, a.target))
    return Quiver(delta.vertices, arrows, name=delta.name)


def source_admissible_ordering(delta: Quiver):
    """A vertex ordering along which successive source reflections are valid.

    Greedy in file order; exists for every acyclic orientation.
    """
    if delta.has_oriented_cycle():
        raise UnsupportedQuiverError("no source-admissible ordering on oriented cycles")
    current = delta
    ordering = []
    remaining = set(delta.vertices)
    while remaining:
        src = next(v for v in current.vertices
                   if v in remaining and v in current.sources())
        ordering.append(src)
        remaining.discard(src)
        current = bgp_reflect(current, src)
    return tuple(ordering)


@dataclass(frozen=True)
class GroupoidWalk:
    start: Quiver
    word: tuple
    end: Quiver
    matrix: np.ndarray
    closed: bool
    coxeter_power: int | None  # j with matrix == Phi^j when closed and found

    @property
    def lands_in_coxeter_subgroup(self):
        return self.coxeter_power is not None


def groupoid_walk(delta: Quiver, word, power_bound: int = 64) -> GroupoidWalk:
    """Walk the reflection groupoid along a word of source reflections.

    Each step must reflect a source of the then-current orientation.  The
    accumulated matrix multiplies reflections first-step-rightmost; for a
    closed walk it is tested for membership in the cyclic group of the
    Coxeter matrix up to the power bound (a necessary condition for the
    walk to realize a translation power).
    """
    current = delta
    n = len(delta.vertices)
    acc = np.eye(n, dtype=np.int64)
    for x in word:
        if x not in current.sources():
            raise InputError(f"vertex {x!r} is not a source at this step")
        acc = reflection(current, x) @ acc
        current = bgp_reflect(current, x)
    closed = set(current.underlying_edges()) == set(delta.underlying_edges()) \
        and current == delta
    power = None
    if closed:
        phi = coxeter_matrix(delta)
        probe = np.eye(n, dtype=np.int64)
        for j in range(power_bound + 1):
            if np.array_equal(probe, acc):
                power = j
                break
            probe = phi @ probe
        if power is None:
            inv_phi = np.array(
                [[int(v) for v in row] for row in linalg.inverse(
                    [[int(v) for v in r] for r in phi])], dtype=np.int64)
            probe = inv_phi.copy()
            for j in range(1, power_bound + 1):
                if np.array_equal(probe, acc):
                    power = -j
                    break
                probe = inv_phi @ probe
    return GroupoidWalk(delta, tuple(word), current, acc, closed, power)


@dataclass(frozen=True)
class ReflectionProductReport:
    ordering: tuple
    product: np.ndarray
    coxeter: np.ndarray

    @property
    def passed(self):
        return bool(np.array_equal(self.product, self.coxeter))


def verify_reflection_product(delta: Quiver) -> ReflectionProductReport:
    """Product of reflections along a source-admissible ordering vs Coxeter.

    The full composite of source reflections realizes the translation on
    the Grothendieck group, so the product must equal the Coxeter matrix
    exactly.
    """
    ordering = source_admissible_ordering(delta)
    walk = groupoid_walk(delta, ordering, power_bound=1)
    return ReflectionProductReport(ordering, walk.matrix, coxeter_matrix(delta))
