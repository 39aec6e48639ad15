"""NDCG@k over graded relevance judgments.

Run file:       ``query_id<TAB>rank<TAB>doc_id<TAB>similarity``
Judgments file: ``query_id<TAB>doc_id<TAB>grade`` with grade in 1..5

The ideal DCG is computed over every judged document of the query, and
unjudged retrieved documents get grade 0.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Sequence

from .errors import NoJudgments, ParseError

GRADES = frozenset({1, 2, 3, 4, 5})
GAINS = ("exponential", "linear")


@dataclass(frozen=True)
class Judgment:
    query_id: str
    doc_id: str
    grade: int

    def __post_init__(self):
        if self.grade not in GRADES:
            raise ValueError(f"grade {self.grade} not in {sorted(GRADES)}")


def gain(grade: float, kind: str = "exponential") -> float:
    if kind in ("exponential", "exp"):
        return 2.0**grade - 1.0
    if kind == "linear":
        return float(grade)
    raise ValueError(f"unknown gain {kind!r}; expected one of {GAINS}")


def dcg_at_k(grades: Sequence[float], k: int, gain_kind: str = "exponential") -> float:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return sum(gain(g, gain_kind) / math.log2(i + 2) for i, g in enumerate(grades[:k]))


def ndcg_at_k(ranking: Sequence[str], judgments: dict[str, int], k: int, gain_kind: str = "exponential") -> float:
    """NDCG@k of ``ranking`` against ``judgments`` (doc id -> grade) for one query."""
    ideal = sorted((g for g in judgments.values() if g > 0), reverse=True)
    if not ideal:
        raise NoJudgments("query has no judged documents with positive grade")
    idcg = dcg_at_k(ideal, k, gain_kind)
    dcg = dcg_at_k([judgments.get(d, 0) for d in ranking], k, gain_kind)
    return dcg / idcg


@dataclass
class EvalReport:
    ks: tuple[int, ...]
    per_query: dict[str, dict[str, float]] = field(default_factory=dict)
    macro: dict[str, float] = field(default_factory=dict)
    skipped: dict[str, str] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"per_query": self.per_query, "macro": self.macro, "skipped": self.skipped}


def _rows(path: str | os.PathLike, ncols: int):
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.rstrip("\n").split("\t")
            if len(parts) != ncols:
                raise ParseError(f"{path}:{lineno}: expected {ncols} tab-separated fields, got {len(parts)}")
            yield lineno, parts


def load_run(path: str | os.PathLike) -> dict[str, list[str]]:
    """Ranked doc ids per query, ordered by the rank column."""
    rows: dict[str, list[tuple[int, str]]] = {}
    for lineno, (qid, rank, doc_id, sim) in _rows(path, 4):
        try:
            rank = int(rank)
            float(sim)
        except ValueError:
            raise ParseError(f"{path}:{lineno}: non-numeric rank or similarity") from None
        rows.setdefault(qid, []).append((rank, doc_id))
    return {q: [d for _, d in sorted(r)] for q, r in rows.items()}


def load_judgments(path: str | os.PathLike) -> dict[str, dict[str, int]]:
    out: dict[str, dict[str, int]] = {}
    for lineno, (qid, doc_id, grade) in _rows(path, 3):
        try:
            j = Judgment(qid, doc_id, int(grade))
        except ValueError as e:
            raise ParseError(f"{path}:{lineno}: {e}") from None
        per_q = out.setdefault(qid, {})
        if doc_id in per_q:
            raise ParseError(f"{path}:{lineno}: duplicate judgment for ({qid}, {doc_id})")
        per_q[doc_id] = j.grade
    return out


def evaluate_runs(
    run: dict[str, list[str]],
    judgments: dict[str, dict[str, int]],
    ks: Sequence[int] = (1, 5),
    gain_kind: str = "exponential",
) -> EvalReport:
    """Macro-averaged NDCG@k; queries lacking judgments are skipped and listed."""
    report = EvalReport(tuple(ks))
    for qid in sorted(run):
        try:
            report.per_query[qid] = {
                f"NDCG@{k}": ndcg_at_k(run[qid], judgments.get(qid, {}), k, gain_kind) for k in ks
            }
        except NoJudgments as e:
            report.skipped[qid] = str(e)
    n = len(report.per_query)
    for k in ks:
        key = f"NDCG@{k}"
        report.macro[key] = sum(v[key] for v in report.per_query.values()) / n if n else 0.0
    return report


def evaluate(run_path, judgments_path, ks: Sequence[int] = (1, 5), gain_kind: str = "exponential") -> EvalReport:
    return evaluate_runs(load_run(run_path), load_judgments(judgments_path), ks, gain_kind)
