"""Builtin quiver catalog, addressable as @-tokens in the DSL and CLI.

Orientations follow the conventions the group tables are stated for:
A_n is the linear source-to-sink chain; D_n has all arrows leaving the
branch vertex 1 and the tail oriented away from it; the affine D trees
carry the alternating chain orientation that maximizes Aut of the quiver.
"""

import re

from .errors import InputError
from .quiver import Quiver


def dynkin_a(n):
    if n < 1:
        raise InputError("A_n requires n >= 1")
    vs = [str(i) for i in range(1, n + 1)]
    arrs = [(f"a{i}", str(i), str(i + 1)) for i in range(1, n)]
    return Quiver(vs, arrs, name=f"A{n}")


def dynkin_d(n):
    if n < 4:
        raise InputError("D_n requires n >= 4")
    vs = [str(i) for i in range(1, n + 1)]
    arrs = [("a1", "1", "2"), ("a2", "1", "3"), ("a3", "1", "4")]
    arrs += [(f"a{i}", str(i), str(i + 1)) for i in range(4, n)]
    return Quiver(vs, arrs, name=f"D{n}")


def dynkin_e(n):
    if n not in (6, 7, 8):
        raise InputError("E_n requires n in {6, 7, 8}")
    vs = [str(i) for i in range(1, n + 1)]
    arrs = [("a1", "1", "2"), ("a2", "2", "3"), ("a3", "4", "3"), ("a4", "5", "3")]
    arrs += [(f"a{i}", str(i + 1), str(i)) for i in range(5, n)]
    return Quiver(vs, arrs, name=f"E{n}")


def affine_d(n):
    """The affine D tree on n+1 vertices.

    For n == 4 this is the four-subspace star.  Otherwise the two forks sit
    at vertices 3 and n-1, with leaves 1,2 and n,n+1; the connecting chain
    is oriented alternately so that both fork vertices are chain sinks,
    which keeps the full graph symmetry inside Aut of the quiver when the
    chain length is even.
    """
    if n < 4:
        raise InputError("affine D_n requires n >= 4")
    if n == 4:
        vs = ["1", "2", "3", "4", "5"]
        arrs = [(f"a{i}", "1", str(i + 1)) for i in range(1, 5)]
        return Quiver(vs, arrs, name="Dt4")
    vs = [str(i) for i in range(1, n + 2)]
    arrs = [("f1", "3", "1"), ("f2", "3", "2"),
            ("f3", str(n - 1), str(n)), ("f4", str(n - 1), str(n + 1))]
    k = 0
    last_source = n - 2 if n % 2 == 0 else n - 3
    for v in range(4, last_source + 1, 2):
        k += 1
        arrs.append((f"c{k}", str(v), str(v - 1)))
        k += 1
        arrs.append((f"c{k}", str(v), str(v + 1)))
    if n % 2 == 1:
        k += 1
        arrs.append((f"c{k}", str(n - 1), str(n - 2)))
    return Quiver(vs, arrs, name=f"Dt{n}")


def affine_e(n):
    if n not in (6, 7, 8):
        raise InputError("affine E_n requires n in {6, 7, 8}")
    if n == 6:
        vs = [str(i) for i in range(1, 8)]
        arrs = [("a1", "3", "2"), ("a2", "2", "1"), ("a3", "3", "4"),
                ("a4", "4", "5"), ("a5", "3", "6"), ("a6", "6", "7")]
        return Quiver(vs, arrs, name="Et6")
    if n == 7:
        vs = [str(i) for i in range(1, 9)]
        arrs = [("a1", "2", "1"), ("a2", "3", "2"), ("a3", "4", "3"),
                ("a4", "4", "5"), ("a5", "5", "6"), ("a6", "6", "7"),
                ("a7", "4", "8")]
        return Quiver(vs, arrs, name="Et7")
    vs = [str(i) for i in range(1, 10)]
    arrs = [(f"a{i}", str(i), str(i + 1)) for i in range(1, 8)]
    arrs += [("a8", "3", "9")]
    return Quiver(vs, arrs, name="Et8")


def omega(n):
    if n < 2:
        raise InputError("Omega_n requires n >= 2")
    return Quiver(["1", "2"], [(f"al{i}", "1", "2") for i in range(1, n + 1)],
                  name=f"O{n}")


def t_cycle(p, q):
    """The oriented cycle with p arrows along one side and q along the other."""
    if not (p >= q >= 1):
        raise InputError("T(p,q) requires p >= q >= 1")
    if p == q == 1:
        return Quiver(["1", "2"], [("al1", "1", "2"), ("be1", "1", "2")],
                      name="T1_1")
    vs = [str(i) for i in range(1, p + q + 1)]
    arrs = [(f"al{i}", str(i), str(i + 1)) for i in range(1, p + 1)]
    arrs.append((f"be{q}", "1", str(p + q)))
    for i in range(q - 1, 0, -1):
        arrs.append((f"be{i}", str(p + i + 1), str(p + i)))
    return Quiver(vs, arrs, name=f"T{p}_{q}")


_PATTERNS = [
    (re.compile(r"^A(\d+)$"), lambda m: dynkin_a(int(m.group(1)))),
    (re.compile(r"^D(\d+)$"), lambda m: dynkin_d(int(m.group(1)))),
    (re.compile(r"^E([678])$"), lambda m: dynkin_e(int(m.group(1)))),
    (re.compile(r"^Dt(\d+)$"), lambda m: affine_d(int(m.group(1)))),
    (re.compile(r"^Et([678])$"), lambda m: affine_e(int(m.group(1)))),
    (re.compile(r"^(?:O|Omega)(\d+)$"), lambda m: omega(int(m.group(1)))),
    (re.compile(r"^T(\d+)_(\d+)$"), lambda m: t_cycle(int(m.group(1)), int(m.group(2)))),
]


def builtin(token):
    """Resolve a catalog token like "A4", "Dt5", "O3" or "T3_2" to a quiver."""
    name = token[1:] if token.startswith("@") else token
    for pat, make in _PATTERNS:
        m = pat.match(name)
        if m:
            return make(m)
    raise InputError(f"unknown builtin quiver {token!r}")


def full_catalog(max_rank=8, max_tpq=4):
    """All catalogued quivers up to the given ranks, in a stable order."""
    out = [dynkin_a(n) for n in range(1, max_rank + 1)]
    out += [dynkin_d(n) for n in range(4, max_rank + 1)]
    out += [dynkin_e(n) for n in (6, 7, 8) if n <= max_rank]
    out += [affine_d(n) for n in range(4, max_rank + 1)]
    out += [affine_e(n) for n in (6, 7, 8) if n <= max_rank]
    out += [omega(n) for n in range(2, max_rank + 1)]
    out += [t_cycle(p, q) for p in range(1, max_tpq + 1)
            for q in range(1, p + 1) if p + q >= 3 or (p, q) == (1, 1)]
    return out
