"""DOT rendering of translation-quiver windows and knitted regions.

Output is plain, stable text meant for golden-file comparison: levels map
to grid columns, base vertices to rows, no layout engine involved.
"""

from .knitting import KnittedQuiver
from .translation import ZQuiverWindow, ZV


def _node_id(v):
    return f"({v.level},{v.base})"


def render_dot(window: ZQuiverWindow, knitted: KnittedQuiver = None,
               name: str = None) -> str:
    """Window as a digraph; mod-A positions annotated P/I/S when known."""
    delta = window.delta
    title = name or f"Z{delta.name or 'Delta'}"
    lines = [f'digraph "{title}" {{', "  rankdir=LR;",
             '  node [shape=box, fontsize=10];']
    flags = {}
    if knitted is not None:
        for x, pos in knitted.projective_at.items():
            flags.setdefault(pos, []).append(f"P{x}")
        for x, pos in knitted.injective_at.items():
            flags.setdefault(pos, []).append(f"I{x}")
        for x, pos in knitted.simple_at().items():
            flags.setdefault(pos, []).append(f"S{x}")
    for v in window.vertices:
        label = _node_id(v)
        marks = flags.get(v)
        if marks:
            label += " " + ",".join(sorted(marks))
        style = ""
        if knitted is not None and v in knitted.dimvec:
            style = ", style=bold"
        pos = f"{2 * v.level},{-delta.index(v.base)}"
        lines.append(f'  "{_node_id(v)}" [label="{label}", pos="{pos}!"{style}];')
    for a in window.arrows:
        lines.append(f'  "{_node_id(a.source)}" -> "{_node_id(a.target)}"'
                     f' [label="{a}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_knitted_dot(knitted: KnittedQuiver, name: str = None) -> str:
    """Just the knitted region, with dimension vectors in the labels."""
    delta = knitted.delta
    title = name or f"Gamma(mod k{delta.name or 'Delta'})"
    lines = [f'digraph "{title}" {{', "  rankdir=LR;",
             '  node [shape=box, fontsize=10];']
    flags = {}
    for x, pos in knitted.projective_at.items():
        flags.setdefault(pos, []).append(f"P{x}")
    for x, pos in knitted.injective_at.items():
        flags.setdefault(pos, []).append(f"I{x}")
    for x, pos in knitted.simple_at().items():
        flags.setdefault(pos, []).append(f"S{x}")
    present = set(knitted.positions)
    for v in knitted.positions:
        dv = "".join(str(c) for c in knitted.dimvec[v])
        label = f"{_node_id(v)} [{dv}]"
        if v in flags:
            label += " " + ",".join(sorted(flags[v]))
        pos = f"{2 * v.level},{-delta.index(v.base)}"
        lines.append(f'  "{_node_id(v)}" [label="{label}", pos="{pos}!"];')
    for v in knitted.positions:
        for a in delta.arrows:
            if a.source == v.base:
                tgt = ZV(v.level, a.target)
                if tgt in present:
                    lines.append(f'  "{_node_id(v)}" -> "{_node_id(tgt)}";')
            if a.target == v.base:
                tgt = ZV(v.level + 1, a.source)
                if tgt in present:
                    lines.append(f'  "{_node_id(v)}" -> "{_node_id(tgt)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
