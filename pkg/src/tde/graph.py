"""Undirected weighted graph-of-words.

Two distinct tokens are linked when they co-occur within a sliding window of
``n`` tokens inside a single sentence; the edge weight counts those
co-occurrences.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import WindowTooSmall

DEFAULT_WINDOW = 5

Pair = tuple[str, str]


def pair_key(t: str, u: str) -> Pair:
    return (t, u) if t <= u else (u, t)


def window_pairs(tokens: Sequence[str], window: int) -> Iterator[Pair]:
    """Yield the ordered-normalized pair for every in-window position pair.

    Positions ``i < j`` with ``j - i < window`` are visited once each; equal
    tokens are skipped.
    """
    for i, t in enumerate(tokens):
        for u in tokens[i + 1 : i + window]:
            if t != u:
                yield pair_key(t, u)


def _tokens(sentence) -> Sequence[str]:
    return getattr(sentence, "tokens", sentence)


@dataclass(frozen=True)
class GraphOfWords:
    nodes: frozenset[str]
    edges: dict[Pair, int]
    window: int = DEFAULT_WINDOW
    _adj: dict[str, frozenset[str]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        adj = defaultdict(set)
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        object.__setattr__(self, "_adj", {v: frozenset(adj.get(v, ())) for v in self.nodes})

    def neighbors(self, t: str) -> frozenset[str]:
        return self._adj.get(t, frozenset())

    def degree(self, t: str) -> int:
        """Number of distinct neighbours (unweighted)."""
        return len(self.neighbors(t))

    def edge_weight(self, t: str, u: str) -> int:
        return self.edges.get(pair_key(t, u), 0)

    def __len__(self) -> int:
        return len(self.nodes)

    def to_edgelist(self) -> str:
        """Tab-separated ``token1 token2 weight`` lines, lexicographically sorted."""
        return "".join(f"{a}\t{b}\t{w}\n" for (a, b), w in sorted(self.edges.items()))


def build_graph(sentences: Iterable, window: int = DEFAULT_WINDOW) -> GraphOfWords:
    """Build the graph-of-words of a document.

    ``sentences`` holds :class:`~tde.textprep.Sentence` objects or plain token
    sequences. Windows never cross sentence boundaries.
    """
    if window < 2:
        raise WindowTooSmall(f"window must be >= 2, got {window}")
    nodes = set()
    edges = Counter()
    for s in sentences:
        tokens = _tokens(s)
        nodes.update(tokens)
        edges.update(window_pairs(tokens, window))
    return GraphOfWords(frozenset(nodes), dict(edges), window)


def edge_weight(g: GraphOfWords, t: str, u: str) -> int:
    return g.edge_weight(t, u)
