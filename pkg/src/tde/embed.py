"""Sentence and document embeddings.

* ``embed_sentence_iw``: tf-idf weighted mean of word vectors (TDE_iw sentences)
* ``embed_sentence_external``: precomputed sentence vectors (TDE_s2v)
* ``embed_document_tde``: score-weighted mean of sentence vectors
* ``embed_document_twa``: tf-idf weighted mean of the document's word vectors
"""

from __future__ import annotations

import math
import os
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (
    AllOOVDocument,
    DimensionMismatch,
    EmptyCorpus,
    MissingSentenceVector,
    NoEmbeddableSentences,
    ParseError,
)


@dataclass(frozen=True)
class WordVectorStore:
    dim: int
    vectors: dict[str, np.ndarray]

    def __contains__(self, word: str) -> bool:
        return word in self.vectors

    def __getitem__(self, word: str) -> np.ndarray:
        return self.vectors[word]

    def __len__(self) -> int:
        return len(self.vectors)

    @classmethod
    def from_dict(cls, vectors: dict[str, Sequence[float]]) -> "WordVectorStore":
        arrs = {w: np.asarray(v, dtype=np.float64) for w, v in vectors.items()}
        dims = {a.shape for a in arrs.values()}
        if len(dims) != 1:
            raise DimensionMismatch(f"word vectors have mixed shapes {sorted(dims)}")
        (shape,) = dims
        return cls(shape[0], arrs)


def _parse_floats(parts: Sequence[str], where: str) -> np.ndarray:
    try:
        arr = np.array([float(p) for p in parts], dtype=np.float64)
    except ValueError as e:
        raise ParseError(f"{where}: {e}") from None
    if not np.all(np.isfinite(arr)):
        raise ParseError(f"{where}: non-finite vector component")
    return arr


def _is_header(parts: list[str]) -> bool:
    return len(parts) == 2 and all(p.isdigit() for p in parts)


def load_word_vectors(path: str | os.PathLike) -> WordVectorStore:
    """Read word2vec text format: optional ``<count> <dim>`` header, then ``word v1 .. v_dim``.

    Words are lowercased; on duplicates the first occurrence wins.
    """
    dim = None
    vectors: dict[str, np.ndarray] = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            parts = line.split()
            if not parts:
                continue
            if lineno == 1 and _is_header(parts):
                dim = int(parts[1])
                continue
            word, comps = parts[0].lower(), parts[1:]
            if dim is None:
                dim = len(comps)
            if len(comps) != dim or dim == 0:
                raise DimensionMismatch(f"{path}:{lineno}: expected {dim} components, got {len(comps)}")
            vec = _parse_floats(comps, f"{path}:{lineno}")
            vectors.setdefault(word, vec)
    if not vectors:
        raise ParseError(f"{path}: no word vectors found")
    return WordVectorStore(dim, vectors)


@dataclass(frozen=True)
class IdfStats:
    n_docs: int
    df: dict[str, int]

    def idf(self, word: str) -> float:
        return math.log((1 + self.n_docs) / (1 + self.df.get(word, 0))) + 1.0

    def save(self, path: str | os.PathLike) -> None:
        lines = [f"#N={self.n_docs}"] + [f"{w}\t{c}" for w, c in sorted(self.df.items())]
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | os.PathLike) -> "IdfStats":
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        if not lines or not lines[0].startswith("#N="):
            raise ParseError(f"{path}: missing '#N=<n_docs>' header")
        try:
            n = int(lines[0][3:])
            df = {}
            for ln in lines[1:]:
                if ln.strip():
                    w, c = ln.split("\t")
                    df[w] = int(c)
        except ValueError as e:
            raise ParseError(f"{path}: {e}") from None
        if n < 1 or any(not 0 <= c <= n for c in df.values()):
            raise ParseError(f"{path}: document frequencies inconsistent with N={n}")
        return cls(n, df)


def build_idf(corpus: Iterable[Iterable[str]]) -> IdfStats:
    """Document frequencies over tokenized documents (each an iterable of tokens)."""
    df = Counter()
    n = 0
    for doc in corpus:
        n += 1
        df.update(set(doc))
    if n == 0:
        raise EmptyCorpus("cannot build idf statistics from an empty corpus")
    return IdfStats(n, dict(df))


class SentenceVector(NamedTuple):
    vector: np.ndarray
    oov: bool = False


def _tfidf_mean(tokens: Iterable[str], store: WordVectorStore, idf: IdfStats) -> np.ndarray | None:
    tf = Counter(t for t in tokens if t in store)
    if not tf:
        return None
    acc = np.zeros(store.dim)
    total = 0.0
    for w in sorted(tf):
        weight = tf[w] * idf.idf(w)
        acc += weight * store[w]
        total += weight
    return acc / total


def embed_sentence_iw(sentence, store: WordVectorStore, idf: IdfStats) -> SentenceVector:
    tokens = getattr(sentence, "tokens", sentence)
    vec = _tfidf_mean(tokens, store, idf)
    if vec is None:
        return SentenceVector(np.zeros(store.dim), oov=True)
    return SentenceVector(vec)


class SentenceVectorFile:
    """Precomputed sentence vectors keyed by ``(doc_id, sentence_index)``.

    On disk: ``doc_id<TAB>sentence_index<TAB>v1 ... v_dim``.
    """

    def __init__(self, vectors: dict[tuple[str, int], np.ndarray]):
        dims = {v.shape for v in vectors.values()}
        if len(dims) > 1:
            raise DimensionMismatch(f"sentence vectors have mixed shapes {sorted(dims)}")
        self.vectors = vectors
        self.dim = next(iter(dims))[0] if dims else 0

    def __len__(self):
        return len(self.vectors)

    def __contains__(self, key):
        return key in self.vectors

    def get(self, doc_id: str, sentence_index: int) -> np.ndarray:
        try:
            return self.vectors[(doc_id, sentence_index)]
        except KeyError:
            raise MissingSentenceVector(f"no sentence vector for ({doc_id!r}, {sentence_index})") from None

    @classmethod
    def load(cls, path: str | os.PathLike) -> "SentenceVectorFile":
        vectors = {}
        dim = None
        with open(path, encoding="utf-8") as f:
            for lineno, line in enumerate(f, 1):
                if not line.strip():
                    continue
                parts = line.rstrip("\n").split("\t", 2)
                if len(parts) != 3:
                    raise ParseError(f"{path}:{lineno}: expected doc_id, sentence_index, vector")
                doc_id, idx, rest = parts
                try:
                    idx = int(idx)
                except ValueError:
                    raise ParseError(f"{path}:{lineno}: bad sentence index {idx!r}") from None
                vec = _parse_floats(rest.split(), f"{path}:{lineno}")
                if dim is None:
                    dim = len(vec)
                if len(vec) != dim or dim == 0:
                    raise DimensionMismatch(f"{path}:{lineno}: expected {dim} components, got {len(vec)}")
                vectors.setdefault((doc_id, idx), vec)
        return cls(vectors)

    def save(self, path: str | os.PathLike) -> None:
        with open(path, "w", encoding="utf-8") as f:
            for (doc_id, idx), v in sorted(self.vectors.items()):
                f.write(f"{doc_id}\t{idx}\t{' '.join(repr(float(x)) for x in v)}\n")


def embed_sentence_external(doc_id: str, sentence_index: int, file: SentenceVectorFile) -> SentenceVector:
    return SentenceVector(file.get(doc_id, sentence_index))


@dataclass(frozen=True)
class DocumentEmbedding:
    vector: np.ndarray
    fallback: bool = False  # all scores were zero, so the unweighted mean was used
    n_sentences: int = 0


def embed_document_tde(
    sentences: Sequence,
    sentence_scores: Sequence,
    sentence_embedder: Callable[[object], SentenceVector | np.ndarray],
) -> DocumentEmbedding:
    """Score-weighted average of sentence embeddings.

    Sentences the embedder flags as OOV are excluded. If the remaining scores
    sum to zero the plain mean is returned with ``fallback=True``.
    """
    if len(sentences) != len(sentence_scores):
        raise ValueError(f"{len(sentences)} sentences but {len(sentence_scores)} scores")
    vecs, weights = [], []
    for s, score in zip(sentences, sentence_scores):
        sv = sentence_embedder(s)
        if not isinstance(sv, SentenceVector):
            sv = SentenceVector(np.asarray(sv, dtype=np.float64))
        if sv.oov:
            continue
        vecs.append(np.asarray(sv.vector, dtype=np.float64))
        weights.append(float(getattr(score, "gamma", score)))
    if not vecs:
        raise NoEmbeddableSentences("no sentence produced an embedding")
    mat = np.vstack(vecs)
    w = np.asarray(weights)
    if np.any(w < 0):
        raise ValueError("sentence scores must be non-negative")
    total = w.sum()
    if total == 0:
        return DocumentEmbedding(mat.mean(axis=0), fallback=True, n_sentences=len(vecs))
    return DocumentEmbedding((w / total) @ mat, n_sentences=len(vecs))


def embed_document_twa(tokens: Iterable[str], store: WordVectorStore, idf: IdfStats) -> np.ndarray:
    vec = _tfidf_mean(tokens, store, idf)
    if vec is None:
        raise AllOOVDocument("no document token has a word vector")
    return vec
