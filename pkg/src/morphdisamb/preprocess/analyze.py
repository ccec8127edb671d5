"""From raw text to a corpus of hierarchical parses."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Optional

from ..corpus import Corpus, Sentence, Token
from .collocations import MONTHS, CollocationDb, RawToken, recognize_collocations
from .convert import LinearParse, linearize, parse_linear, to_hierarchical
from .numeric import analyze_numeric, match_numeric
from .project import dedup
from .tokenize import split_sentences, tokenize
from .unknown import SuffixInventory, guess_unknown

ROMAN = re.compile(r"[ivxlcdm]+\.\Z")
PUNCT = re.compile(r"(?:[^\w\s]|_)+\Z")


class LexiconAnalyzer:
    """A lookup-table stand-in for a real morphological analyzer.

    The lexicon file has one ``surface<TAB>linear parse`` line per
    analysis; a surface listed with an empty parse is known to be
    unanalyzable.  Calls are counted for the statistics report.
    """

    def __init__(self, entries: Optional[dict] = None):
        self.entries = {k: list(v) for k, v in (entries or {}).items()}
        self.calls = 0

    def __call__(self, surface: str) -> list:
        self.calls += 1
        return list(self.entries.get(surface, ()))

    def add(self, surface: str, parse: Optional[LinearParse] = None) -> None:
        lst = self.entries.setdefault(surface, [])
        if parse is not None and parse not in lst:
            lst.append(parse)

    @classmethod
    def parse(cls, text: str) -> "LexiconAnalyzer":
        an = cls()
        for n, line in enumerate(text.splitlines(), 1):
            if not line.strip() or line.startswith("%"):
                continue
            surface, _, parse = line.partition("\t")
            an.add(surface, parse_linear(parse) if parse.strip() else None)
        return an

    @classmethod
    def load(cls, path) -> "LexiconAnalyzer":
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    @classmethod
    def from_corpus(cls, corpus: Iterable[Sentence]) -> "LexiconAnalyzer":
        an = cls()
        for sent in corpus:
            for tok in sent.words():
                for p in tok.parses:
                    an.add(tok.surface, linearize(p))
        return an

    def to_text(self) -> str:
        lines = []
        for surface, parses in self.entries.items():
            lines += [f"{surface}\t{p.to_text()}" for p in parses] or [f"{surface}\t"]
        return "\n".join(lines) + "\n"


def analyze_token(surface: str, analyzer: Callable[[str], list]) -> RawToken:
    parses = analyzer(surface)
    if parses:
        return RawToken(surface, list(parses))
    if PUNCT.match(surface):
        return RawToken(surface, [LinearParse((("cat", "punct"), ("root", surface)))])
    if match_numeric(surface):
        parses, ok = analyze_numeric(surface)
        return RawToken(surface, parses, frozenset() if ok else frozenset({"unknown"}))
    if ROMAN.match(surface):
        return RawToken(surface, [LinearParse((("cat", "adj"), ("root", surface), ("type", "ordinal")))])
    return RawToken(surface, [], frozenset({"unknown"}))


def preprocess_sentence(words: list, analyzer, db: Optional[CollocationDb] = None,
                        inv: Optional[SuffixInventory] = None, months=MONTHS) -> Sentence:
    raw = [analyze_token(w, analyzer) for w in words]
    if db is not None:
        raw = recognize_collocations(raw, db, months)
    tokens = []
    for t in raw:
        parses = t.parses
        if not parses and "unknown" in t.flags:
            parses = guess_unknown(t.surface, inv)
        tokens.append(Token(t.surface, dedup(to_hierarchical(p) for p in parses), frozenset(t.flags)))
    return Sentence.from_words(tokens)


def preprocess_text(raw: str, analyzer, db: Optional[CollocationDb] = None,
                    inv: Optional[SuffixInventory] = None, months=MONTHS) -> Corpus:
    """Tokenize, analyze, pack collocations, guess unknowns and convert."""
    return Corpus(
        preprocess_sentence(words, analyzer, db, inv, months)
        for words in split_sentences(tokenize(raw))
    )


BUCKETS = ("0", "1", "2", "3", "4", ">4")


@dataclass
class CorpusStats:
    sentences: int = 0
    tokens: int = 0
    parses: int = 0
    distribution: dict = field(default_factory=lambda: dict.fromkeys(BUCKETS, 0))
    analyzer_calls: int = 0

    @property
    def ambiguity(self) -> float:
        return self.parses / self.tokens if self.tokens else 0.0

    def percent(self, bucket: str) -> float:
        return 100.0 * self.distribution[bucket] / self.tokens if self.tokens else 0.0

    def format(self, label: str = "corpus") -> str:
        head = "Text\tSentences\tTokens\t" + "\t".join(BUCKETS)
        row = f"{label}\t{self.sentences}\t{self.tokens}\t" + "\t".join(
            f"{self.percent(b):.2f}%" for b in BUCKETS)
        extra = (f"parses: {self.parses}\nambiguity: {self.ambiguity:.3f}\n"
                 f"analyzer_calls: {self.analyzer_calls}")
        return f"{head}\n{row}\n{extra}\n"


def corpus_stats(corpus: Iterable[Sentence], analyzer_calls: int = 0) -> CorpusStats:
    st = CorpusStats(analyzer_calls=analyzer_calls)
    for sent in corpus:
        st.sentences += 1
        for tok in sent.words():
            n = len(tok.parses)
            st.tokens += 1
            st.parses += n
            st.distribution[str(n) if n <= 4 else ">4"] += 1
    return st
