"""A minimal text format for quivers.

    # comment
    quiver A2
    vertices 1 2
    arrow a: 1 -> 2

Vertex and arrow order is file order.  Builtin catalog quivers are
addressable as @-tokens (e.g. "@D4") wherever a quiver document is
accepted.
"""

from dataclasses import dataclass

from .catalog import builtin
from .errors import DslSyntaxError, InputError
from .quiver import Quiver


@dataclass(frozen=True)
class QuiverDocument:
    name: str
    quiver: Quiver


def parse_quiver(text: str) -> QuiverDocument:
    name = None
    vertices = []
    arrows = []
    seen_vertices = set()
    seen_arrows = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        col = raw.index(stripped[0]) + 1
        parts = stripped.split()
        head = parts[0]
        if head == "quiver":
            if name is not None:
                raise DslSyntaxError("duplicate quiver header", lineno, col)
            if len(parts) != 2:
                raise DslSyntaxError("expected: quiver NAME", lineno, col)
            name = parts[1]
        elif head == "vertices":
            if len(parts) < 2:
                raise DslSyntaxError("expected at least one vertex id", lineno,
                                     col + len("vertices"))
            for v in parts[1:]:
                if v in seen_vertices:
                    raise DslSyntaxError(f"duplicate vertex id {v!r}", lineno, col)
                seen_vertices.add(v)
                vertices.append(v)
        elif head == "arrow":
            rest = stripped[len("arrow"):].strip()
            if ":" not in rest:
                raise DslSyntaxError("expected: arrow NAME: SRC -> TGT", lineno,
                                     col + len("arrow"))
            aname, spec = rest.split(":", 1)
            aname = aname.strip()
            if not aname:
                raise DslSyntaxError("missing arrow id", lineno, col + len("arrow"))
            if aname in seen_arrows:
                raise DslSyntaxError(f"duplicate arrow id {aname!r}", lineno, col)
            if "->" not in spec:
                raise DslSyntaxError("expected '->' between endpoints", lineno,
                                     col + stripped.index(":") + 1)
            src, tgt = spec.split("->", 1)
            src, tgt = src.strip(), tgt.strip()
            if not src:
                raise DslSyntaxError("missing arrow source", lineno,
                                     col + stripped.index(":") + 1)
            if not tgt:
                raise DslSyntaxError("missing arrow target", lineno,
                                     col + stripped.index("->") + 2)
            if src not in seen_vertices:
                raise DslSyntaxError(f"arrow source {src!r} not declared", lineno, col)
            if tgt not in seen_vertices:
                raise DslSyntaxError(f"arrow target {tgt!r} not declared", lineno, col)
            seen_arrows.add(aname)
            arrows.append((aname, src, tgt))
        else:
            raise DslSyntaxError(f"unknown directive {head!r}", lineno, col)
    if name is None:
        raise DslSyntaxError("missing quiver header", 1, 1)
    if not vertices:
        raise DslSyntaxError("missing vertices", 1, 1)
    return QuiverDocument(name, Quiver(vertices, arrows, name=name))


def serialize(doc: QuiverDocument) -> str:
    lines = [f"quiver {doc.name}"]
    lines.append("vertices " + " ".join(doc.quiver.vertices))
    for a in doc.quiver.arrows:
        lines.append(f"arrow {a.name}: {a.source} -> {a.target}")
    return "\n".join(lines) + "\n"


def load_quiver(spec: str) -> Quiver:
    """Resolve a quiver argument: @-token, DSL text, or a file path."""
    spec = spec.strip()
    if spec.startswith("@"):
        return builtin(spec)
    if "\n" in spec or spec.startswith("quiver"):
        return parse_quiver(spec).quiver
    try:
        with open(spec, "r", encoding="utf-8") as fh:
            return parse_quiver(fh.read()).quiver
    except OSError as exc:
        raise InputError(f"cannot read quiver from {spec!r}: {exc}") from exc
