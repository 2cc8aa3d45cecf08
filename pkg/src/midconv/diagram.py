"""Text rendering of the star-shaped diagram attached to a spectral type.

Nodes carry the lattice coefficients of the tuple's vector (centre: the
order; legs: the partition tail sums).  A node is marked with ``*`` (dotted
in DOT output) when the vector is not orthogonal to that simple root.
"""

from __future__ import annotations

from .rootlattice import inner, root_of, simple_root
from .spectype import SpectralType


def _node_data(m: SpectralType):
    a = root_of(m)
    center = (a.a0, inner(a, simple_root(0)) != 0)
    legs = []
    for j in range(m.npart):
        leg = []
        v = 1
        while a.coeff(j, v):
            leg.append((a.coeff(j, v), inner(a, simple_root((j, v))) != 0))
            v += 1
        if leg:
            legs.append(leg)
    legs.sort(key=len, reverse=True)
    return center, legs


def _label(node) -> str:
    value, marked = node
    return "%d*" % value if marked else str(value)


def render_diagram(m: SpectralType) -> str:
    """ASCII star: the two longest legs run right and left of the centre,
    the next two up and down; any further legs are listed underneath.
    ``*`` marks nodes with nonzero pairing against the tuple's vector."""
    center, legs = _node_data(m)
    right = legs[0] if legs else []
    left = legs[1] if len(legs) > 1 else []
    up = legs[2] if len(legs) > 2 else []
    down = legs[3] if len(legs) > 3 else []
    extra = legs[4:]

    spine_tokens = [_label(x) for x in reversed(left)]
    center_at = len(" - ".join(spine_tokens)) + (3 if spine_tokens else 0)
    spine_tokens.append(_label(center))
    spine_tokens.extend(_label(x) for x in right)
    spine = " - ".join(spine_tokens)
    col = center_at + (len(_label(center)) - 1) // 2

    lines = []
    for node in reversed(up):
        lines.append(" " * col + _label(node))
        lines.append(" " * col + "|")
    lines.append(spine)
    for node in down:
        lines.append(" " * col + "|")
        lines.append(" " * col + _label(node))
    for leg in extra:
        lines.append(
            " " * col + "+ leg: " + " - ".join(_label(x) for x in leg)
        )
    if any(mk for _, mk in [center] + [x for leg in legs for x in leg]):
        lines.append("(* = not orthogonal to the tuple's root vector)")
    return "\n".join(lines)


def render_dot(m: SpectralType) -> str:
    """DOT graph; marked nodes are drawn dotted."""
    center, legs = _node_data(m)
    out = ["graph diagram {", "  node [shape=circle];"]

    def node_line(name, node):
        value, marked = node
        style = ", style=dotted" if marked else ""
        out.append('  %s [label="%d"%s];' % (name, value, style))

    node_line("c", center)
    for j, leg in enumerate(legs):
        prev = "c"
        for v, node in enumerate(leg, start=1):
            name = "n%d_%d" % (j, v)
            node_line(name, node)
            out.append("  %s -- %s;" % (prev, name))
            prev = name
    out.append("}")
    return "\n".join(out)
