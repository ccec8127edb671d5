"""Recall, precision and ambiguity against a gold standard."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .corpus import Sentence
from .fs import FeatureStructure


class AlignmentError(ValueError):
    pass


def _ratio(a: int, b: int) -> Optional[Fraction]:
    return Fraction(a, b) if b else None


def pct(x: Optional[Fraction]) -> str:
    return "-" if x is None else f"{float(x) * 100:.2f}%"


@dataclass
class EvalReport:
    tokens: int = 0
    intended: int = 0
    received_appropriate: int = 0
    all_received: int = 0

    @property
    def recall(self) -> Optional[Fraction]:
        return _ratio(self.received_appropriate, self.intended)

    @property
    def precision(self) -> Optional[Fraction]:
        return _ratio(self.received_appropriate, self.all_received)

    @property
    def ambiguity(self) -> Optional[Fraction]:
        return _ratio(self.all_received, self.tokens)

    @property
    def accuracy(self) -> Optional[Fraction]:
        return self.recall if self.recall == self.precision else None

    def __add__(self, other: "EvalReport") -> "EvalReport":
        return EvalReport(self.tokens + other.tokens, self.intended + other.intended,
                          self.received_appropriate + other.received_appropriate,
                          self.all_received + other.all_received)

    def row(self, label: str) -> str:
        amb = "-" if self.ambiguity is None else f"{float(self.ambiguity):.3f}"
        return f"{label:<24}{amb:>10}{pct(self.recall):>12}{pct(self.precision):>12}"

    def lines(self) -> str:
        """Machine-readable ``key: value`` form."""
        amb = "-" if self.ambiguity is None else f"{float(self.ambiguity):.3f}"
        out = [f"tokens: {self.tokens}", f"intended: {self.intended}",
               f"received_appropriate: {self.received_appropriate}",
               f"all_received: {self.all_received}", f"recall: {pct(self.recall)}",
               f"precision: {pct(self.precision)}", f"ambiguity: {amb}"]
        if self.accuracy is not None:
            out.append(f"accuracy: {pct(self.accuracy)}")
        return "\n".join(out) + "\n"


TABLE_HEADER = f"{'Disambiguation Stage':<24}{'Ambiguity':>10}{'Recall (%)':>12}{'Pre. (%)':>12}"


def format_table(rows: Sequence[tuple]) -> str:
    """Stage rows ``(label, EvalReport)`` as an aligned table."""
    return "\n".join([TABLE_HEADER] + [r.row(label) for label, r in rows]) + "\n"


def _aligned(system: Sequence[Sentence], gold: Sequence[Sentence]):
    if len(system) != len(gold):
        raise AlignmentError(f"system has {len(system)} sentences, gold has {len(gold)}")
    for si, (s, g) in enumerate(zip(system, gold)):
        sw, gw = s.words(), g.words()
        for ti, (a, b) in enumerate(zip(sw, gw)):
            if a.surface != b.surface:
                raise AlignmentError(
                    f"sentence {si + 1}, token {ti + 1}: system {a.surface!r} vs gold {b.surface!r}")
        if len(sw) != len(gw):
            k = min(len(sw), len(gw))
            extra = (sw if len(sw) > k else gw)[k].surface
            raise AlignmentError(f"sentence {si + 1}, token {k + 1}: unmatched {extra!r}")
        yield si, list(zip(sw, gw))


Key = Callable[[FeatureStructure], FeatureStructure]


def _correct(sys_tok, gold_tok, key: Optional[Key]) -> bool:
    if key is None:
        return bool(set(sys_tok.parses) & set(gold_tok.parses))
    return bool({key(p) for p in sys_tok.parses} & {key(p) for p in gold_tok.parses})


def evaluate(system: Sequence[Sentence], gold: Sequence[Sentence],
             key: Optional[Key] = None) -> EvalReport:
    """Compare token by token; gold tokens without a parse are skipped.

    A token is appropriately received when its parse set shares a parse
    with the gold set.  ``key`` (for instance a projection) maps parses
    before comparison.
    """
    rep = EvalReport()
    for _, pairs in _aligned(system, gold):
        for s, g in pairs:
            if not g.parses:
                continue
            rep.tokens += 1
            rep.intended += 1
            rep.all_received += len(s.parses)
            rep.received_appropriate += _correct(s, g, key)
    return rep


@dataclass
class SentenceReport:
    sentences: int = 0
    unambiguous_correct: int = 0
    ambiguous_correct: int = 0
    wrong: dict = field(default_factory=lambda: {"1": 0, "2": 0, "3": 0, ">3": 0})

    def format(self, label: str = "text") -> str:
        n = self.sentences
        ua, a = _ratio(self.unambiguous_correct, n), _ratio(self.ambiguous_correct, n)
        both = _ratio(self.unambiguous_correct + self.ambiguous_correct, n)
        head = f"{'Text':<12}{'Sentences':>10}{'UA/C':>10}{'A/C':>10}{'UA/C+A/C':>10}"
        row = f"{label:<12}{n:>10}{pct(ua):>10}{pct(a):>10}{pct(both):>10}"
        h2 = f"{'Text':<12}{'Total':>10}" + "".join(f"{k:>10}" for k in self.wrong)
        r2 = f"{label:<12}{n:>10}" + "".join(f"{pct(_ratio(v, n)):>10}" for v in self.wrong.values())
        return "\n".join([head, row, "", h2, r2]) + "\n"


def sentence_report(system, gold, key: Optional[Key] = None) -> SentenceReport:
    rep = SentenceReport()
    for _, pairs in _aligned(system, gold):
        rep.sentences += 1
        pairs = [(s, g) for s, g in pairs if g.parses]
        wrong = sum(not _correct(s, g, key) for s, g in pairs)
        if wrong:
            rep.wrong[str(wrong) if wrong <= 3 else ">3"] += 1
        elif all(len(s.parses) == 1 for s, _ in pairs):
            rep.unambiguous_correct += 1
        else:
            rep.ambiguous_correct += 1
    return rep


@dataclass
class UnknownReport:
    unknown: int = 0
    processed: int = 0
    correct: int = 0

    def format(self, label: str = "text", tokens: int = 0) -> str:
        head = f"{'Text':<12}{'Total':>8}{'U':>6}{'PU':>6}{'CD':>6}{'PU/U':>10}{'CD/U':>10}"
        row = (f"{label:<12}{tokens:>8}{self.unknown:>6}{self.processed:>6}{self.correct:>6}"
               f"{pct(_ratio(self.processed, self.unknown)):>10}"
               f"{pct(_ratio(self.correct, self.unknown)):>10}")
        return head + "\n" + row + "\n"


def unknown_report(system, gold, key: Optional[Key] = None) -> UnknownReport:
    """Trace tokens the analyzer did not know through disambiguation."""
    rep = UnknownReport()
    for _, pairs in _aligned(system, gold):
        for s, g in pairs:
            if "unknown" not in s.flags:
                continue
            rep.unknown += 1
            if s.parses:
                rep.processed += 1
                if g.parses and _correct(s, g, key):
                    rep.correct += 1
    return rep
