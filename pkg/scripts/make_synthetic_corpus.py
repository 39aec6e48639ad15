"""Write a synthetic topical corpus and its word vectors for trying the CLI.

    python scripts/make_synthetic_corpus.py demo/
    tde ingest demo/raw.jsonl -o demo/corpus.jsonl
    tde embed-index demo/corpus.jsonl --word-vectors demo/vectors.txt --index demo/tde.idx
    tde query --index demo/tde.idx medical-00
"""

import argparse
from pathlib import Path

from tde.synthetic import make_corpus


def main():
    p = argparse.ArgumentParser(description="write raw.jsonl, vectors.txt and topics.tsv")
    p.add_argument("outdir", type=Path)
    p.add_argument("--docs-per-topic", type=int, default=5)
    p.add_argument("--boilerplate", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    args.outdir.mkdir(parents=True, exist_ok=True)
    corpus = make_corpus(docs_per_topic=args.docs_per_topic, boilerplate_sentences=args.boilerplate, seed=args.seed)
    corpus.write_jsonl(args.outdir / "raw.jsonl")
    corpus.write_word_vectors(args.outdir / "vectors.txt")
    with open(args.outdir / "topics.tsv", "w", encoding="utf-8") as f:
        for doc_id, topic in sorted(corpus.topic_of.items()):
            f.write(f"{doc_id}\t{topic}\n")
    print(f"wrote {len(corpus.docs)} documents to {args.outdir}")


if __name__ == "__main__":
    main()
