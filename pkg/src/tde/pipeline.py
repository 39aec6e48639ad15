"""Per-document pipeline and corpus I/O shared by the CLI and scripts."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .embed import (
    IdfStats,
    SentenceVectorFile,
    WordVectorStore,
    embed_document_tde,
    embed_document_twa,
    embed_sentence_external,
    embed_sentence_iw,
)
from .errors import DuplicateId, ParseError, TDEError
from .graph import DEFAULT_WINDOW, GraphOfWords, build_graph
from .kcore import CoreDecomposition, core_decomposition
from .scoring import Keyphrase, SentenceScore, extract_keyphrases, score_sentences
from .textprep import RawDocument, Sentence, StopwordList, split_document

EMBEDDERS = ("tde-iw", "tde-s2v", "twa")


@dataclass(frozen=True)
class TokenizedDocument:
    id: str
    sentences: tuple[Sentence, ...]

    @property
    def tokens(self) -> list[str]:
        return [t for s in self.sentences for t in s.tokens]

    def to_json(self) -> str:
        return json.dumps({"id": self.id, "sentences": [list(s.tokens) for s in self.sentences]})

    @classmethod
    def from_json(cls, line: str) -> "TokenizedDocument":
        rec = json.loads(line)
        return cls(rec["id"], tuple(Sentence(i, tuple(toks)) for i, toks in enumerate(rec["sentences"])))


def tokenize_document(doc: RawDocument, stopwords: StopwordList) -> TokenizedDocument:
    return TokenizedDocument(doc.id, tuple(split_document(doc.text, stopwords)))


def read_raw_corpus(path: str | os.PathLike) -> list[RawDocument]:
    """Read ``{"id", "text"}`` JSONL, or a directory of ``<id>.txt`` files."""
    path = Path(path)
    docs = []
    if path.is_dir():
        for f in sorted(path.glob("*.txt")):
            docs.append(RawDocument(f.stem, f.read_text(encoding="utf-8")))
    else:
        with open(path, encoding="utf-8") as f:
            for lineno, line in enumerate(f, 1):
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                    docs.append(RawDocument(str(rec["id"]), rec["text"]))
                except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
                    raise ParseError(f"{path}:{lineno}: {e}") from None
    _check_unique(d.id for d in docs)
    return docs


def read_corpus(path: str | os.PathLike) -> list[TokenizedDocument]:
    """Read the JSONL written by ``tde ingest``."""
    with open(path, encoding="utf-8") as f:
        try:
            docs = [TokenizedDocument.from_json(ln) for ln in f if ln.strip()]
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise ParseError(f"{path}: {e}") from None
    _check_unique(d.id for d in docs)
    return docs


def _check_unique(ids: Iterable[str]) -> None:
    seen = set()
    for i in ids:
        if i in seen:
            raise DuplicateId(f"duplicate document id {i!r}")
        seen.add(i)


@dataclass(frozen=True)
class DocumentAnalysis:
    graph: GraphOfWords
    cores: CoreDecomposition
    keyphrases: list[Keyphrase]
    scores: list[SentenceScore]


def analyze(sentences, window: int = DEFAULT_WINDOW, cumulative: bool = False) -> DocumentAnalysis:
    g = build_graph(sentences, window)
    cores = core_decomposition(g)
    kps = extract_keyphrases(g, cores)
    scores = score_sentences(sentences, kps, window, cumulative, max_order=cores.max_order)
    return DocumentAnalysis(g, cores, kps, scores)


@dataclass
class Embedder:
    """Embeds tokenized documents with one of :data:`EMBEDDERS`."""

    method: str
    store: WordVectorStore | None = None
    idf: IdfStats | None = None
    sentence_vectors: SentenceVectorFile | None = None
    window: int = DEFAULT_WINDOW
    cumulative: bool = False

    def __post_init__(self):
        if self.method not in EMBEDDERS:
            raise ValueError(f"unknown embedder {self.method!r}; expected one of {EMBEDDERS}")
        if self.method in ("tde-iw", "twa") and (self.store is None or self.idf is None):
            raise ValueError(f"{self.method} needs word vectors and idf statistics")
        if self.method == "tde-s2v" and self.sentence_vectors is None:
            raise ValueError("tde-s2v needs a sentence-vector file")

    def __call__(self, doc: TokenizedDocument) -> np.ndarray:
        if self.method == "twa":
            return embed_document_twa(doc.tokens, self.store, self.idf)
        scores = analyze(doc.sentences, self.window, self.cumulative).scores

        def sentence_embedder(s: Sentence):
            if self.method == "tde-iw":
                return embed_sentence_iw(s, self.store, self.idf)
            return embed_sentence_external(doc.id, s.index, self.sentence_vectors)

        return embed_document_tde(doc.sentences, scores, sentence_embedder).vector


def iter_embeddings(docs: Iterable[TokenizedDocument], embedder: Embedder) -> Iterator[tuple[str, np.ndarray | None, str | None]]:
    """Yield ``(id, vector, None)`` or ``(id, None, reason)`` for skipped documents."""
    for doc in docs:
        try:
            yield doc.id, embedder(doc), None
        except TDEError as e:
            yield doc.id, None, f"{type(e).__name__}: {e}"
