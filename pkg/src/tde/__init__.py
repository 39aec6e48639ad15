"""Terminology-based document embedding.

Sentences are scored by the k-core-weighted keyphrases of the document's
graph-of-words, and a document is embedded as the score-weighted mean of its
sentence embeddings.
"""

__version__ = "0.1.0"

from .embed import (
    IdfStats,
    SentenceVectorFile,
    WordVectorStore,
    build_idf,
    embed_document_tde,
    embed_document_twa,
    embed_sentence_external,
    embed_sentence_iw,
    load_word_vectors,
)
from .evaluation import dcg_at_k, evaluate, ndcg_at_k
from .graph import GraphOfWords, build_graph, edge_weight
from .index import VectorIndex, cosine
from .kcore import CoreDecomposition, core_decomposition, main_core
from .scoring import Keyphrase, SentenceScore, core_weight, extract_keyphrases, keyphrase_in_sentence, score_sentences
from .textprep import Sentence, StopwordList, segment_sentences, split_document, tokenize_normalize
