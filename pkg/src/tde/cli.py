"""Command-line front end.

    tde ingest CORPUS                         raw JSONL/dir -> tokenized JSONL
    tde keyphrases CORPUS DOC_ID              keyphrase + sentence-score TSV
    tde embed-index CORPUS --index OUT        embed every document and save an index
    tde query --index IDX DOC_ID | --text T   top-k cosine neighbours as run TSV
    tde eval RUN JUDGMENTS                    NDCG report as JSON

Settings come from defaults, then a ``key=value`` file given by ``--config``,
then flags. Only the stopword path can also come from ``$TDE_STOPWORDS``.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .embed import IdfStats, SentenceVectorFile, build_idf, load_word_vectors
from .errors import TDEError, UnknownDoc, ZeroVector
from .evaluation import evaluate
from .graph import DEFAULT_WINDOW
from .index import VectorIndex
from .pipeline import (
    EMBEDDERS,
    Embedder,
    TokenizedDocument,
    analyze,
    iter_embeddings,
    read_corpus,
    read_raw_corpus,
    tokenize_document,
)
from .scoring import keyphrases_tsv
from .textprep import load_stopwords, split_document


class ConfigError(TDEError, ValueError):
    pass


@dataclass
class Config:
    window: int = DEFAULT_WINDOW
    embedder: str = "tde-iw"
    cumulative_cores: bool = False
    gain: str = "exponential"
    stopwords: str | None = None
    word_vectors: str | None = None
    sentence_vectors: str | None = None
    index: str | None = None
    k: int = 5

    def validate(self) -> "Config":
        if self.window < 2:
            raise ConfigError(f"window must be >= 2, got {self.window}")
        if self.embedder not in EMBEDDERS:
            raise ConfigError(f"embedder must be one of {EMBEDDERS}, got {self.embedder!r}")
        if self.gain not in ("exponential", "exp", "linear"):
            raise ConfigError(f"gain must be 'exponential' or 'linear', got {self.gain!r}")
        if self.k < 1:
            raise ConfigError(f"k must be >= 1, got {self.k}")
        for name in ("stopwords", "word_vectors", "sentence_vectors"):
            path = getattr(self, name)
            if path is not None and not Path(path).is_file():
                raise ConfigError(f"{name.replace('_', '-')} file not found: {path}")
        return self

    @classmethod
    def from_file(cls, path: str) -> dict:
        """Parse ``key=value`` lines (``#`` comments allowed) into overrides."""
        types = {f.name: f.type for f in dataclasses.fields(cls)}
        out = {}
        for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = (p.strip() for p in line.partition("="))
            key = key.replace("-", "_")
            if not sep or key not in types:
                raise ConfigError(f"{path}:{lineno}: expected key=value with key in {sorted(types)}")
            if types[key] in (int, "int"):
                out[key] = int(value)
            elif types[key] in (bool, "bool"):
                out[key] = value.lower() in ("1", "true", "yes", "on")
            else:
                out[key] = value
        return out


def resolve_config(args: argparse.Namespace) -> Config:
    values = {}
    if getattr(args, "config", None):
        values.update(Config.from_file(args.config))
    for f in dataclasses.fields(Config):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = v
    return Config(**values).validate()


def _err(msg: str) -> None:
    print(f"tde: {msg}", file=sys.stderr)


def _out(args) -> "object":
    return open(args.output, "w", encoding="utf-8") if getattr(args, "output", None) else sys.stdout


def cmd_ingest(args) -> int:
    cfg = resolve_config(args)
    stopwords = load_stopwords(cfg.stopwords)
    docs = read_raw_corpus(args.corpus)
    out = _out(args)
    try:
        for doc in docs:
            out.write(tokenize_document(doc, stopwords).to_json() + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _find_doc(corpus: str, doc_id: str) -> TokenizedDocument:
    for doc in read_corpus(corpus):
        if doc.id == doc_id:
            return doc
    raise UnknownDoc(f"document {doc_id!r} not in {corpus}")


def cmd_keyphrases(args) -> int:
    cfg = resolve_config(args)
    doc = _find_doc(args.corpus, args.doc_id)
    result = analyze(doc.sentences, cfg.window, cfg.cumulative_cores)
    out = sys.stdout
    out.write("# term1\tterm2\tdeg\tcore\tphi\n")
    out.write(keyphrases_tsv(result.keyphrases))
    out.write("# sentence\tgamma\n")
    for s in result.scores:
        out.write(f"{s.sentence_index}\t{s.gamma!r}\n")
    if args.show_coreness:
        out.write("# token\tcoreness\n")
        for tok, c in sorted(result.cores.coreness.items()):
            out.write(f"{tok}\t{c}\n")
    if not result.keyphrases:
        _err(f"{doc.id}: fewer than 2 co-occurring tokens, no keyphrases; every sentence scores 0")
    return 0


def idf_path(index_path: str) -> Path:
    return Path(str(index_path) + ".idf")


def _load_embedder(cfg: Config, idf: IdfStats | None) -> Embedder:
    if cfg.embedder == "tde-s2v":
        if cfg.sentence_vectors is None:
            raise ConfigError("--embedder tde-s2v requires --sentence-vectors")
        return Embedder(
            "tde-s2v",
            sentence_vectors=SentenceVectorFile.load(cfg.sentence_vectors),
            window=cfg.window,
            cumulative=cfg.cumulative_cores,
        )
    if cfg.word_vectors is None:
        raise ConfigError(f"--embedder {cfg.embedder} requires --word-vectors")
    return Embedder(
        cfg.embedder,
        store=load_word_vectors(cfg.word_vectors),
        idf=idf,
        window=cfg.window,
        cumulative=cfg.cumulative_cores,
    )


def cmd_embed_index(args) -> int:
    cfg = resolve_config(args)
    if cfg.index is None:
        raise ConfigError("embed-index requires --index")
    docs = sorted(read_corpus(args.corpus), key=lambda d: d.id)
    idf = build_idf(d.tokens for d in docs)
    embedder = _load_embedder(cfg, idf)

    index = None
    skipped = 0
    for doc_id, vec, reason in iter_embeddings(docs, embedder):
        if vec is not None:
            if index is None:
                index = VectorIndex(len(vec))
            try:
                index.insert(doc_id, vec)
            except ZeroVector as e:
                reason = f"ZeroVector: {e}"
        if reason is not None:
            skipped += 1
            _err(f"skipped {doc_id}: {reason}")
    if index is None:
        raise TDEError("no document could be embedded; index not written")
    index.save(cfg.index)
    idf.save(idf_path(cfg.index))
    _err(f"indexed {len(index)} documents ({skipped} skipped) -> {cfg.index}")
    return 0


def _write_run(out, query_id: str, hits) -> None:
    for rank, (doc_id, sim) in enumerate(hits, 1):
        out.write(f"{query_id}\t{rank}\t{doc_id}\t{sim:.6f}\n")


def cmd_query(args) -> int:
    cfg = resolve_config(args)
    if cfg.index is None:
        raise ConfigError("query requires --index")
    index = VectorIndex.load(cfg.index)
    out = sys.stdout
    if args.all:
        for doc_id in sorted(index.ids):
            _write_run(out, doc_id, index.top_k(index.get(doc_id), cfg.k, exclude=doc_id))
    elif args.text is not None:
        if cfg.embedder == "tde-s2v":
            raise ConfigError("free-text queries need --embedder tde-iw or twa")
        ipath = idf_path(cfg.index)
        idf = IdfStats.load(ipath) if ipath.exists() else IdfStats(1, {})
        embedder = _load_embedder(cfg, idf)
        sentences = tuple(split_document(args.text, load_stopwords(cfg.stopwords)))
        try:
            vec = embedder(TokenizedDocument(args.query_id, sentences))
        except TDEError as e:
            raise ZeroVector(f"query text has no embeddable content ({e})") from None
        _write_run(out, args.query_id, index.top_k(vec, cfg.k))
    elif args.doc_id is not None:
        if args.doc_id not in index:
            raise UnknownDoc(f"document {args.doc_id!r} not in index {cfg.index}")
        _write_run(out, args.doc_id, index.top_k(index.get(args.doc_id), cfg.k, exclude=args.doc_id))
    else:
        raise ConfigError("query needs a DOC_ID, --text or --all")
    return 0


def cmd_eval(args) -> int:
    cfg = resolve_config(args)
    report = evaluate(args.run, args.judgments, args.at, cfg.gain)
    json.dump(report.to_json(), sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    for qid, reason in report.skipped.items():
        _err(f"query {qid} skipped: {reason}")
    return 1 if report.skipped else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tde", description="Terminology-based document embedding toolkit")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value settings file; flags override it")

    pipeline = argparse.ArgumentParser(add_help=False)
    pipeline.add_argument("--window", type=int, help=f"co-occurrence window (default {DEFAULT_WINDOW})")
    pipeline.add_argument("--cumulative-cores", dest="cumulative_cores", action="store_true", default=None,
                          help="count each keyphrase in every enclosing core")
    pipeline.add_argument("--stopwords", help="stopword file (default: $TDE_STOPWORDS or shipped list)")

    vectors = argparse.ArgumentParser(add_help=False)
    vectors.add_argument("--embedder", choices=EMBEDDERS)
    vectors.add_argument("--word-vectors", dest="word_vectors")
    vectors.add_argument("--sentence-vectors", dest="sentence_vectors")
    vectors.add_argument("--index")

    s = sub.add_parser("ingest", parents=[common, pipeline], help="segment and tokenize a raw corpus")
    s.add_argument("corpus", help="JSONL of {id, text} or a directory of <id>.txt")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_ingest)

    s = sub.add_parser("keyphrases", parents=[common, pipeline], help="keyphrases and sentence scores of one document")
    s.add_argument("corpus", help="tokenized JSONL from 'tde ingest'")
    s.add_argument("doc_id")
    s.add_argument("--show-coreness", action="store_true")
    s.set_defaults(func=cmd_keyphrases)

    s = sub.add_parser("embed-index", parents=[common, pipeline, vectors], help="embed a corpus into an index")
    s.add_argument("corpus", help="tokenized JSONL from 'tde ingest'")
    s.set_defaults(func=cmd_embed_index)

    s = sub.add_parser("query", parents=[common, pipeline, vectors], help="nearest neighbours by cosine")
    s.add_argument("doc_id", nargs="?")
    s.add_argument("--text", help="free-text query instead of a document id")
    s.add_argument("--query-id", default="query", help="query id written for --text queries")
    s.add_argument("--all", action="store_true", help="query every indexed document (a full run file)")
    s.add_argument("--k", type=int)
    s.set_defaults(func=cmd_query)

    s = sub.add_parser("eval", parents=[common], help="NDCG@k of a run against judgments")
    s.add_argument("run")
    s.add_argument("judgments")
    s.add_argument("--gain", choices=("exponential", "linear"))
    s.add_argument("--at", type=int, nargs="+", default=[1, 5], metavar="K", help="cutoffs (default 1 5)")
    s.set_defaults(func=cmd_eval)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TDEError, OSError) as e:
        _err(f"{type(e).__name__}: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
