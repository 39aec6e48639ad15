"""Keyphrase extraction from the core decomposition and sentence scoring.

Every graph edge ``(t, t')`` is a keyphrase. Its core is the smaller coreness
of its endpoints, and its score is ``phi = weight(t, t') * core_weight(core, k)``
with ``core_weight(c, k) = 1 / (k - c + 1)``: the main core gets weight 1 and
the outermost core gets ``1/k``.

A sentence's score ``gamma`` sums ``phi`` over the distinct keyphrases
occurring in it. A keyphrase occurs when both terms appear within the graph
window. With ``cumulative=True``, a keyphrase of core ``c`` also counts once in
every enclosing core ``1..c``, so its multiplier is
``sum(1 / (k - i + 1) for i in 1..c)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidCore
from .graph import DEFAULT_WINDOW, GraphOfWords, Pair, _tokens, pair_key, window_pairs
from .kcore import CoreDecomposition


@dataclass(frozen=True)
class Keyphrase:
    terms: Pair
    deg: int
    core: int
    score: float

    def tsv(self) -> str:
        return f"{self.terms[0]}\t{self.terms[1]}\t{self.deg}\t{self.core}\t{self.score!r}"


@dataclass(frozen=True)
class SentenceScore:
    sentence_index: int
    gamma: float


def core_weight(c: int, k: int) -> float:
    if not 1 <= c <= k:
        raise InvalidCore(f"core {c} outside 1..{k}")
    return 1.0 / (k - c + 1)


def cumulative_core_weight(c: int, k: int) -> float:
    """Sum of :func:`core_weight` over the nested cores ``1..c``."""
    if not 1 <= c <= k:
        raise InvalidCore(f"core {c} outside 1..{k}")
    return sum(1.0 / (k - i + 1) for i in range(1, c + 1))


def extract_keyphrases(g: GraphOfWords, d: CoreDecomposition) -> list[Keyphrase]:
    k = d.max_order
    out = []
    for (a, b), w in g.edges.items():
        c = min(d.coreness[a], d.coreness[b])
        out.append(Keyphrase((a, b), w, c, w * core_weight(c, k)))
    out.sort(key=lambda kp: (-kp.score, kp.terms))
    return out


def keyphrase_in_sentence(kp: Keyphrase | Pair, sentence, window: int = DEFAULT_WINDOW) -> bool:
    t, u = kp.terms if isinstance(kp, Keyphrase) else kp
    tokens = _tokens(sentence)
    pos_t = [i for i, x in enumerate(tokens) if x == t]
    pos_u = [i for i, x in enumerate(tokens) if x == u]
    return any(i != j and abs(i - j) < window for i in pos_t for j in pos_u)


def sentence_keyphrases(tokens: Sequence[str], keyphrases: dict[Pair, Keyphrase], window: int) -> set[Pair]:
    """Keys of ``keyphrases`` occurring in ``tokens``; repeats count once."""
    return {p for p in window_pairs(tokens, window) if p in keyphrases}


def score_sentences(
    sentences: Iterable,
    keyphrases: Iterable[Keyphrase],
    window: int = DEFAULT_WINDOW,
    cumulative: bool = False,
    max_order: int | None = None,
) -> list[SentenceScore]:
    """Score each sentence by the keyphrases it contains.

    ``max_order`` defaults to the largest keyphrase core, which equals the
    graph's maximal order whenever the graph has an edge.
    """
    by_pair = {pair_key(*kp.terms): kp for kp in keyphrases}
    k = max_order if max_order is not None else max((kp.core for kp in by_pair.values()), default=0)
    if cumulative:
        mult = {p: kp.deg * cumulative_core_weight(kp.core, k) for p, kp in by_pair.items()}
    else:
        mult = {p: kp.score for p, kp in by_pair.items()}

    scores = []
    for i, s in enumerate(sentences):
        index = getattr(s, "index", i)
        found = sentence_keyphrases(_tokens(s), by_pair, window)
        scores.append(SentenceScore(index, float(sum(mult[p] for p in sorted(found)))))
    return scores


def keyphrases_tsv(keyphrases: Iterable[Keyphrase]) -> str:
    return "".join(kp.tsv() + "\n" for kp in keyphrases)
