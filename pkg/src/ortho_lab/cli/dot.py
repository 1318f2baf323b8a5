"""Hasse diagrams in DOT."""
from __future__ import annotations

from .. import lattice as lc


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(L: lc.Ortholattice, title: str = "lattice") -> str:
    """Cover edges only, drawn bottom to top; each node label carries its
    orthocomplement."""
    lines = [f"graph {_q(title)} {{", "  rankdir=BT;", "  node [shape=box];"]
    for i, name in enumerate(L.names):
        lines.append(f"  {_q(name)} [label={_q(name + ' | perp ' + L.names[L.perp[i]])}];")
    for a, b in lc.hasse_edges(L):
        lines.append(f"  {_q(L.names[a])} -- {_q(L.names[b])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_edges(text: str) -> list[tuple[str, str]]:
    out = []
    for line in text.splitlines():
        if " -- " in line:
            a, b = line.strip().rstrip(";").split(" -- ")
            out.append((a.strip('"'), b.strip('"')))
    return out
