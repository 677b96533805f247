"""Knitting the module-category AR quiver inside the translation quiver.

For a representation-finite base quiver the indecomposables sit at the
positions knitted from the projectives at level 0: each next position
carries the alternating sum of its mesh middles, and a position whose
formula goes nonpositive was injective and stops its column.  The shift
permutation and its normal form (pure tau power, diagram twist, or the
A-type square-root form) are derived from where the injectives land.
"""

from dataclasses import dataclass

from .errors import ConsistencyError, UnsupportedQuiverError
from .quiver import Quiver, classify
from .translation import SliceAutomorphism, ZV

def positive_root_count(family, n):
    if family == "A":
        return n * (n + 1) // 2
    if family == "D":
        return n * (n - 1)
    if family == "E":
        return {6: 36, 7: 63, 8: 120}[n]
    raise UnsupportedQuiverError(f"not a Dynkin family: {family}")


def path_count_matrix(delta: Quiver):
    """C[x][y] = number of directed paths x -> y (unit triangular in a
    topological order, so exactly invertible over the integers)."""
    n = len(delta.vertices)
    C = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    topo = delta.topological_order()
    for v in reversed(topo):
        i = delta.index(v)
        for a in delta.out_arrows(v):
            t = delta.index(a.target)
            for y in range(n):
                C[i][y] += C[t][y]
    return C


def projective_dimvec(delta, C, x):
    i = delta.index(x)
    return tuple(C[y][i] for y in range(len(delta.vertices)))


def injective_dimvec(delta, C, x):
    i = delta.index(x)
    return tuple(C[i][y] for y in range(len(delta.vertices)))


@dataclass(frozen=True)
class KnittedQuiver:
    """The knitted module-category region inside the translation quiver."""

    delta: Quiver
    positions: tuple            # ZV in (level, file-order) order
    dimvec: dict                # position -> integer vector over delta vertices
    projective_at: dict         # vertex -> ZV (always level 0)
    injective_at: dict          # vertex -> ZV

    @property
    def max_level(self):
        return max(v.level for v in self.positions)

    def simple_at(self):
        """Positions carrying a simple (unit dimension vector)."""
        units = {}
        for i, x in enumerate(self.delta.vertices):
            unit = tuple(1 if j == i else 0 for j in range(len(self.delta.vertices)))
            for pos, dv in self.dimvec.items():
                if dv == unit:
                    units[x] = pos
        return units


def knit(delta: Quiver) -> KnittedQuiver:
    """Knit the AR quiver of the module category for a Dynkin base.

    Terminates with exactly the positive-root count of positions; any
    mismatch (or ambiguous injective identification) raises
    ConsistencyError instead of guessing.
    """
    gt = classify(delta)
    if gt.tag != "Dynkin":
        raise UnsupportedQuiverError(
            f"knitting requires finite representation type, got {gt}")
    n = len(delta.vertices)
    C = path_count_matrix(delta)
    topo = delta.topological_order()

    dim = {ZV(0, x): projective_dimvec(delta, C, x) for x in delta.vertices}
    level = 0
    while True:
        new_any = False
        for x in topo:
            pos = ZV(level, x)
            if pos not in dim:
                continue
            total = [0] * n
            for a in delta.in_arrows(x):
                mid = ZV(level + 1, a.source)
                if mid in dim:
                    total = [s + t for s, t in zip(total, dim[mid])]
            for a in delta.out_arrows(x):
                mid = ZV(level, a.target)
                if mid in dim:
                    total = [s + t for s, t in zip(total, dim[mid])]
            nxt = tuple(t - s for t, s in zip(total, dim[pos]))
            if any(c < 0 for c in nxt) or all(c == 0 for c in nxt):
                continue  # pos was injective
            dim[ZV(level + 1, x)] = nxt
            new_any = True
        if not new_any:
            break
        level += 1
        if level > 32 * n:
            raise ConsistencyError("knitting failed to terminate")

    expected = positive_root_count(gt.family, gt.n)
    if len(dim) != expected:
        raise ConsistencyError(
            f"knitted {len(dim)} positions, expected {expected} for {gt}")

    inj = {}
    for x in delta.vertices:
        target = injective_dimvec(delta, C, x)
        matches = [p for p, v in dim.items() if v == target]
        if len(matches) != 1:
            raise ConsistencyError(
                f"injective at {x} matched {len(matches)} positions")
        inj[x] = matches[0]

    positions = tuple(sorted(dim, key=lambda p: (p.level, delta.index(p.base))))
    proj = {x: ZV(0, x) for x in delta.vertices}
    return KnittedQuiver(delta, positions, dim, proj, inj)


def sigma_permutation(delta: Quiver) -> SliceAutomorphism:
    """The shift permutation: the slice vertex goes one translate past its injective."""
    k = knit(delta)
    mapping = {x: ZV(k.injective_at[x].level + 1, k.injective_at[x].base)
               for x in delta.vertices}
    return SliceAutomorphism.from_mapping(delta, mapping)


@dataclass(frozen=True)
class SigmaNormalForm:
    """Normal form of the shift: twist . tau^{-power}, or a higher root.

    twist is a vertex mapping (identity or the order-2 diagram flip); when
    the shift is not a twisted tau power, eta_power = (b, c) records the
    least b >= 2 with sigma^b = tau^{-c}.
    """

    twist: dict | None
    power: int
    eta_power: tuple | None
    relation: str

    @property
    def is_twisted_tau_power(self):
        return self.twist is not None

    @property
    def twist_is_identity(self):
        return self.twist is not None and all(v == x for x, v in self.twist.items())


def sigma_normal_form(delta: Quiver) -> SigmaNormalForm:
    sigma = sigma_permutation(delta)
    levels = {im.level for im in sigma.images}
    if len(levels) == 1:
        m = levels.pop()
        twist = {x: im.base for x, im in zip(delta.vertices, sigma.images)}
        # the levelwise extension of the twist must itself preserve d
        for x in delta.vertices:
            for y in delta.vertices:
                if delta.multiplicity(twist[x], twist[y]) != delta.multiplicity(x, y):
                    raise ConsistencyError("shift twist does not preserve the quiver")
        if all(v == x for x, v in twist.items()):
            relation = f"tau^{m} = sigma^-1"
        else:
            relation = f"tau^{m} = theta sigma^-1"
        return SigmaNormalForm(twist, m, None, relation)
    cur = sigma
    for b in range(2, 2 * len(delta.vertices) + 4):
        cur = sigma.compose(cur)
        k = cur.tau_exponent()
        if k is not None:
            return SigmaNormalForm(None, 0, (b, -k), f"tau^{-k} = sigma^-{b}")
    raise ConsistencyError("no normal form for the shift within bound")
