"""NDCG@1 / NDCG@5 of TDE_iw, TDE_s2v and TWA on synthetic topical corpora.

Relevance is topical: a same-topic document gets grade 5, any other grade 1.
TDE_s2v reads sentence vectors made by averaging word vectors and adding
Gaussian noise, standing in for an external sentence encoder.

    python scripts/synthetic_benchmark.py --boilerplate 0 8 16 --seeds 5 --noise 3
"""

import argparse

import numpy as np

from tde.embed import SentenceVectorFile, build_idf
from tde.evaluation import evaluate_runs
from tde.index import VectorIndex
from tde.pipeline import Embedder, iter_embeddings, tokenize_document
from tde.synthetic import make_corpus
from tde.textprep import load_stopwords

METHODS = ("twa", "tde-iw", "tde-s2v")


def fake_sentence_vectors(docs, store, rng, noise=0.1):
    vecs = {}
    for d in docs:
        for s in d.sentences:
            known = [store[t] for t in s.tokens if t in store]
            base = np.mean(known, axis=0) if known else np.zeros(store.dim)
            vecs[(d.id, s.index)] = base + noise * rng.standard_normal(store.dim)
    return SentenceVectorFile(vecs)


def run_once(boilerplate, seed, window, cumulative, k, noise):
    corpus = make_corpus(boilerplate_sentences=boilerplate, noise=noise, seed=seed)
    docs = [tokenize_document(d, load_stopwords()) for d in corpus.docs]
    idf = build_idf(d.tokens for d in docs)
    svf = fake_sentence_vectors(docs, corpus.vectors, np.random.default_rng(seed))
    judgments = {
        q.id: {d.id: 5 if corpus.topic_of[d.id] == corpus.topic_of[q.id] else 1 for d in docs if d.id != q.id}
        for q in docs
    }
    out = {}
    for method in METHODS:
        emb = Embedder(method, store=corpus.vectors, idf=idf, sentence_vectors=svf, window=window, cumulative=cumulative)
        index = None
        for doc_id, vec, reason in iter_embeddings(docs, emb):
            if vec is None:
                continue
            index = index or VectorIndex(len(vec))
            index.insert(doc_id, vec)
        run = {q: [d for d, _ in index.top_k(index.get(q), k, exclude=q)] for q in index.ids}
        out[method] = evaluate_runs(run, judgments, (1, 5)).macro
    return out


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--boilerplate", type=int, nargs="+", default=[0, 8, 16])
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--window", type=int, default=5)
    p.add_argument("--cumulative-cores", action="store_true")
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--noise", type=float, default=3.0, help="word-vector noise around each topic axis")
    args = p.parse_args()

    print(f"{'boilerplate':>11}  {'method':<8} {'NDCG@1':>7} {'NDCG@5':>7}")
    for bp in args.boilerplate:
        results = [run_once(bp, s, args.window, args.cumulative_cores, args.k, args.noise) for s in range(args.seeds)]
        for method in METHODS:
            n1 = np.mean([r[method]["NDCG@1"] for r in results])
            n5 = np.mean([r[method]["NDCG@5"] for r in results])
            print(f"{bp:>11}  {method:<8} {n1:7.3f} {n5:7.3f}")


if __name__ == "__main__":
    main()
