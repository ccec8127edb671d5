"""Tokens, sentences and the corpus file format.

A sentence is one ``.``-terminated record::

    [[@,[[cat:beginning_of_sentence]]],
     [kapI,[[cat:noun,root:kapI,agr:'3SG',poss:'NONE',case:nom]]],
     [#,[[cat:end_of_sentence]]]].

Each token is ``[surface,parses]`` with an optional third list of
origin flags (``unknown`` for words the analyzer did not know,
``collocation`` for packed multi-word units).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .fs import FeatureStructure
from .terms import TermSyntaxError, TList, format_atom, iter_records

BOS = "@"
EOS = "#"
BOS_PARSE = FeatureStructure([("cat", "beginning_of_sentence")])
EOS_PARSE = FeatureStructure([("cat", "end_of_sentence")])
FLAGS = frozenset({"unknown", "collocation"})


class CorpusFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Token:
    surface: str
    parses: tuple = ()
    flags: frozenset = field(default_factory=frozenset)

    @property
    def ambiguous(self) -> bool:
        return len(self.parses) > 1

    @property
    def is_marker(self) -> bool:
        return self.surface in (BOS, EOS) and len(self.parses) == 1 and (
            self.parses[0] in (BOS_PARSE, EOS_PARSE))

    def with_parses(self, parses: Iterable) -> "Token":
        return replace(self, parses=tuple(parses))

    def to_text(self) -> str:
        body = "[" + ",\n   ".join(p.to_text() for p in self.parses) + "]"
        out = f"[{format_atom(self.surface)},{body}"
        if self.flags:
            out += ",[" + ",".join(sorted(self.flags)) + "]"
        return out + "]"


def bos() -> Token:
    return Token(BOS, (BOS_PARSE,))


def eos() -> Token:
    return Token(EOS, (EOS_PARSE,))


class Sentence:
    """A token sequence framed by the two sentence markers."""

    __slots__ = ("tokens",)

    def __init__(self, tokens: Sequence[Token]):
        tokens = list(tokens)
        if len(tokens) < 2 or tokens[0].surface != BOS or tokens[-1].surface != EOS:
            raise CorpusFormatError("sentence must start with @ and end with #")
        if any(t.surface in (BOS, EOS) and t.is_marker for t in tokens[1:-1]):
            raise CorpusFormatError("sentence marker inside sentence")
        self.tokens = tokens

    @classmethod
    def from_words(cls, words: Iterable[Token]) -> "Sentence":
        return cls([bos(), *words, eos()])

    def __len__(self) -> int:
        return len(self.tokens)

    def __getitem__(self, i):
        return self.tokens[i]

    def __iter__(self) -> Iterator[Token]:
        return iter(self.tokens)

    def words(self) -> list[Token]:
        return self.tokens[1:-1]

    def copy(self) -> "Sentence":
        return Sentence(list(self.tokens))

    def __eq__(self, other) -> bool:
        return isinstance(other, Sentence) and self.tokens == other.tokens

    def to_text(self) -> str:
        lines = [t.to_text() for t in self.tokens]
        return "[" + ",\n ".join(lines) + "]."


class Corpus(list):
    """A list of sentences."""

    def copy(self) -> "Corpus":
        return Corpus(s.copy() for s in self)

    def words(self) -> Iterator[Token]:
        for s in self:
            yield from s.words()

    def to_text(self) -> str:
        return "".join(s.to_text() + "\n\n" for s in self).rstrip("\n") + "\n" if self else ""


def _token_from_term(term, where: str) -> Token:
    if not isinstance(term, TList) or len(term.items) not in (2, 3):
        raise CorpusFormatError(f"{where}: token must be [surface,parses(,flags)]")
    surface, parses = term.items[0], term.items[1]
    if not isinstance(surface, str):
        raise CorpusFormatError(f"{where}: surface must be an atom")
    if not isinstance(parses, TList):
        raise CorpusFormatError(f"{where}: parse list expected after {surface!r}")
    try:
        fss = tuple(FeatureStructure.from_term(p) for p in parses.items)
    except TermSyntaxError as e:
        raise CorpusFormatError(f"{where}: {e}") from e
    flags = frozenset()
    if len(term.items) == 3:
        fl = term.items[2]
        if not isinstance(fl, TList) or not all(isinstance(f, str) for f in fl.items):
            raise CorpusFormatError(f"{where}: flags must be a list of atoms")
        flags = frozenset(fl.items)
        bad = flags - FLAGS
        if bad:
            raise CorpusFormatError(f"{where}: unknown flag(s) {sorted(bad)}")
    return Token(surface, fss, flags)


def parse_corpus(text: str) -> Corpus:
    corpus = Corpus()
    try:
        for n, (term, _) in enumerate(iter_records(text), 1):
            if not isinstance(term, TList):
                raise CorpusFormatError(f"sentence {n}: expected a token list")
            tokens = [
                _token_from_term(t, f"sentence {n}, token {i}")
                for i, t in enumerate(term.items)
            ]
            if not tokens or tokens[0].surface != BOS or tokens[0].parses != (BOS_PARSE,):
                raise CorpusFormatError(f"sentence {n}: missing beginning-of-sentence marker")
            if tokens[-1].surface != EOS or tokens[-1].parses != (EOS_PARSE,):
                raise CorpusFormatError(f"sentence {n}: missing end-of-sentence marker")
            corpus.append(Sentence(tokens))
    except TermSyntaxError as e:
        raise CorpusFormatError(str(e)) from e
    return corpus


def serialize_corpus(corpus: Iterable[Sentence]) -> str:
    return Corpus(corpus).to_text()


def read_corpus(path) -> Corpus:
    return parse_corpus(Path(path).read_text(encoding="utf-8"))


def write_corpus(corpus: Iterable[Sentence], path) -> None:
    Path(path).write_text(serialize_corpus(corpus), encoding="utf-8")
