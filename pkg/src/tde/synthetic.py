"""Synthetic topical corpora with known ground truth.

Each topic owns a disjoint technical vocabulary whose word vectors cluster
around one orthonormal axis. Generic "boilerplate" words are shared by every
topic and get isotropic random vectors, so they carry no topical signal. Each
document mixes a few dense technical sentences with optional boilerplate
sentences.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .embed import WordVectorStore
from .textprep import RawDocument

TOPICS = ("medical", "agriculture", "energy", "biology")


@dataclass(frozen=True)
class SyntheticCorpus:
    docs: list[RawDocument]
    topic_of: dict[str, str]
    vectors: WordVectorStore

    def write_word_vectors(self, path) -> None:
        with open(path, "w", encoding="utf-8") as f:
            f.write(f"{len(self.vectors)} {self.vectors.dim}\n")
            for w in sorted(self.vectors.vectors):
                f.write(w + " " + " ".join(f"{x:.8f}" for x in self.vectors[w]) + "\n")

    def write_jsonl(self, path) -> None:
        import json

        with open(path, "w", encoding="utf-8") as f:
            for d in self.docs:
                f.write(json.dumps({"id": d.id, "text": d.text}) + "\n")


def _word(prefix: str, j: int) -> str:
    # letters only, so tokenization keeps each word intact
    a, b = divmod(j, 26)
    return f"{prefix}{chr(97 + a)}{chr(97 + b)}"


def _sentence(words) -> str:
    text = " ".join(words)
    return text[0].upper() + text[1:] + "."


def make_corpus(
    docs_per_topic: int = 5,
    topic_vocab: int = 40,
    doc_terms: int = 5,
    tech_sentences: int = 4,
    terms_per_sentence: int = 3,
    boilerplate_sentences: int = 0,
    boilerplate_len: int = 9,
    boilerplate_vocab: int = 300,
    dim: int = 32,
    noise: float = 0.5,
    seed: int = 0,
) -> SyntheticCorpus:
    """Build ``len(TOPICS) * docs_per_topic`` documents plus matching word vectors.

    A document owns ``doc_terms`` two-word technical terms from its topic's
    vocabulary. Each technical sentence strings together ``terms_per_sentence``
    of them, so the same term pairs recur across sentences. Boilerplate
    sentences are generic prose: distinct words drawn from the shared generic
    vocabulary, rarely repeated.
    """
    if dim < len(TOPICS):
        raise ValueError("dim must be at least the number of topics")
    if terms_per_sentence > doc_terms:
        raise ValueError("terms_per_sentence cannot exceed doc_terms")
    rng = np.random.default_rng(seed)
    vectors: dict[str, np.ndarray] = {}
    vocab = {}
    for t, topic in enumerate(TOPICS):
        axis = np.zeros(dim)
        axis[t] = 1.0
        vocab[topic] = [_word(topic[:4], j) for j in range(topic_vocab)]
        for w in vocab[topic]:
            v = axis + noise * rng.standard_normal(dim) / np.sqrt(dim)
            vectors[w] = v / np.linalg.norm(v)
    generic = [_word("gen", j) for j in range(boilerplate_vocab)]
    for w in generic:
        v = rng.standard_normal(dim)
        vectors[w] = v / np.linalg.norm(v)

    docs, topic_of = [], {}
    for topic in TOPICS:
        for i in range(docs_per_topic):
            doc_id = f"{topic}-{i:02d}"
            words = rng.choice(vocab[topic], size=2 * doc_terms, replace=False)
            terms = [tuple(words[2 * j : 2 * j + 2]) for j in range(doc_terms)]
            sentences = []
            for _ in range(tech_sentences):
                picked = rng.choice(doc_terms, size=terms_per_sentence, replace=False)
                sentences.append(_sentence(w for j in picked for w in terms[j]))
            for _ in range(boilerplate_sentences):
                sentences.append(_sentence(rng.choice(generic, size=boilerplate_len, replace=False)))
            order = rng.permutation(len(sentences))
            docs.append(RawDocument(doc_id, " ".join(sentences[j] for j in order)))
            topic_of[doc_id] = topic
    return SyntheticCorpus(docs, topic_of, WordVectorStore(dim, vectors))
