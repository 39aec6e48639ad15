"""k-core decomposition by linear-time bucket peeling (Batagelj & Zaversnik).

Degrees are unweighted: the number of distinct neighbours of a node.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptyGraph
from .graph import GraphOfWords


@dataclass(frozen=True)
class CoreDecomposition:
    coreness: dict[str, int]
    max_order: int

    def core(self, order: int) -> set[str]:
        """Nodes of the ``order``-core, i.e. coreness >= order."""
        return {v for v, c in self.coreness.items() if c >= order}

    def shells(self) -> dict[int, set[str]]:
        out: dict[int, set[str]] = {}
        for v, c in self.coreness.items():
            out.setdefault(c, set()).add(v)
        return out


def core_decomposition(g: GraphOfWords) -> CoreDecomposition:
    # nodes sorted so bucket order, and thus the result layout, is deterministic
    nodes = sorted(g.nodes)
    if not nodes:
        return CoreDecomposition({}, 0)
    deg = {v: g.degree(v) for v in nodes}
    max_deg = max(deg.values())

    # bins[d] = start offset of degree-d nodes in vert
    counts = [0] * (max_deg + 1)
    for d in deg.values():
        counts[d] += 1
    bins = [0] * (max_deg + 1)
    start = 0
    for d in range(max_deg + 1):
        bins[d] = start
        start += counts[d]

    vert = [None] * len(nodes)
    pos = {}
    fill = list(bins)
    for v in nodes:
        pos[v] = fill[deg[v]]
        vert[pos[v]] = v
        fill[deg[v]] += 1

    for i in range(len(vert)):
        v = vert[i]
        for u in g.neighbors(v):
            if deg[u] > deg[v]:
                du = deg[u]
                pu = pos[u]
                pw = bins[du]
                w = vert[pw]
                if u != w:
                    vert[pu], vert[pw] = w, u
                    pos[u], pos[w] = pw, pu
                bins[du] += 1
                deg[u] -= 1

    return CoreDecomposition(deg, max(deg.values()))


def main_core(d: CoreDecomposition) -> set[str]:
    if d.max_order == 0:
        raise EmptyGraph("graph has no edges, so no main core of order >= 1")
    return {v for v, c in d.coreness.items() if c == d.max_order}
