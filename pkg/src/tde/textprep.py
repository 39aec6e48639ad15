"""Sentence segmentation and token normalization.

Segmentation is rule based: a sentence ends at ``.``, ``!`` or ``?`` (optionally
followed by closing quotes/brackets) when the next non-space character is an
uppercase letter, or at the end of the text. A period that closes a known
abbreviation (``Dr.``, ``e.g.`` ...) never ends a sentence.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

STOPWORDS_ENV = "TDE_STOPWORDS"

ABBREVIATIONS = frozenset(
    {
        "dr", "mr", "mrs", "ms", "prof", "sr", "jr", "st", "mt", "vs", "etc",
        "e.g", "i.e", "inc", "ltd", "co", "corp", "dept", "no", "fig", "approx",
        "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept", "oct",
        "nov", "dec", "u.s", "u.k", "ph.d", "al",
    }
)

_TERMINAL = re.compile(r"[.!?]+[\"')\]]*")
_NEXT_START = re.compile(r"\s+[\"'(\[]*(\S)")
_TOKEN = re.compile(r"[^\W_]+")


@dataclass(frozen=True)
class RawDocument:
    id: str
    text: str

    def __post_init__(self):
        if not self.id:
            raise ValueError("document id must be non-empty")


@dataclass(frozen=True)
class Sentence:
    index: int
    tokens: tuple[str, ...]
    raw: str = ""


@dataclass(frozen=True)
class StopwordList:
    words: frozenset[str] = frozenset()

    def __post_init__(self):
        bad = [w for w in self.words if w != w.lower() or not w]
        if bad:
            raise ValueError(f"stopwords must be non-empty lowercase strings: {sorted(bad)[:5]}")

    def __contains__(self, word: str) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)

    @classmethod
    def of(cls, words: Iterable[str]) -> "StopwordList":
        return cls(frozenset(w.strip().lower() for w in words if w.strip()))

    @classmethod
    def from_file(cls, path: str | os.PathLike) -> "StopwordList":
        return cls.of(_stopword_lines(Path(path).read_text(encoding="utf-8")))

    @classmethod
    def default(cls) -> "StopwordList":
        text = resources.files("tde").joinpath("data/stopwords.txt").read_text(encoding="utf-8")
        return cls.of(_stopword_lines(text))


def _stopword_lines(text: str) -> list[str]:
    return [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def load_stopwords(path: str | os.PathLike | None = None) -> StopwordList:
    """Load stopwords from ``path``, else ``$TDE_STOPWORDS``, else the shipped list."""
    path = path or os.environ.get(STOPWORDS_ENV)
    if path:
        return StopwordList.from_file(path)
    return StopwordList.default()


def _is_abbreviation(text: str, period: int) -> bool:
    start = period
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    word = text[start:period].lstrip("\"'([").lower()
    return word in ABBREVIATIONS


def segment_sentences(text: str) -> list[str]:
    """Split ``text`` into raw sentence strings, in document order."""
    spans = []
    start = 0
    for m in _TERMINAL.finditer(text):
        nxt = _NEXT_START.match(text, m.end())
        at_end = not text[m.end():].strip()
        if not at_end and (nxt is None or not nxt.group(1).isupper()):
            continue
        if m.group().startswith(".") and m.end() - m.start() == 1 and _is_abbreviation(text, m.start()):
            continue
        spans.append(text[start:m.end()])
        start = m.end()
    spans.append(text[start:])
    return [s.strip() for s in spans if s.strip()]


def tokenize_normalize(sentence: str, stopwords: StopwordList | Iterable[str] = StopwordList()) -> list[str]:
    """Lowercase, split on non-alphanumeric characters and drop stopwords."""
    if not isinstance(stopwords, StopwordList):
        stopwords = StopwordList.of(stopwords)
    return [t for t in _TOKEN.findall(sentence.lower()) if t not in stopwords]


def split_document(text: str, stopwords: StopwordList | Iterable[str] = StopwordList()) -> list[Sentence]:
    if not isinstance(stopwords, StopwordList):
        stopwords = StopwordList.of(stopwords)
    return [
        Sentence(i, tuple(tokenize_normalize(raw, stopwords)), raw)
        for i, raw in enumerate(segment_sentences(text))
    ]
