"""Pruning parses with statistics gathered from the text itself."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Optional

from .corpus import Sentence
from .fs import FeatureStructure
from .learner import ScoreTables, build_tables, window_keys

CONTEXT_SHAPES = ("S3", "S4L", "S4R")


@dataclass
class ContextStatsConfig:
    weights: tuple = (0.5, 0.25, 0.25)       # lc-rc, lc, rc
    fractions: tuple = (0.05, 0.10, 0.20)    # one per pass

    def __post_init__(self):
        if any(w < 0 for w in self.weights) or abs(sum(self.weights) - 1) > 1e-9:
            raise ValueError("weights must be non-negative and sum to 1")
        if not all(0 < g < 1 for g in self.fractions):
            raise ValueError("discard fractions must lie in (0, 1)")


def _identity(p: FeatureStructure) -> FeatureStructure:
    return p


def parse_context_score(sent: Sentence, i: int, p: FeatureStructure, t: ScoreTables,
                        weights=(0.5, 0.25, 0.25)) -> Optional[float]:
    """Weighted ``incontext/count`` of ``p`` at position ``i``.

    ``p`` must already be in the tables' parse space.  None when
    neither neighbour is unambiguous.
    """
    c = t.cnt(p)

    def s(shape):
        keys = window_keys(sent, i, shape)
        if not keys or not c:
            return 0.0
        return t.inc(keys[0], p) / c

    left = bool(window_keys(sent, i, "S4L"))
    right = bool(window_keys(sent, i, "S4R"))
    if left and right:
        wb, wl, wr = weights
        return wb * s("S3") + wl * s("S4L") + wr * s("S4R")
    if left:
        return s("S4L")
    if right:
        return s("S4R")
    return None


def context_stats_pass(corpus, t: ScoreTables, fraction: float,
                       weights=(0.5, 0.25, 0.25),
                       view: Callable[[FeatureStructure], FeatureStructure] = _identity) -> int:
    """One on-the-fly pass; returns the number of parses removed.

    ``view`` maps a corpus parse to the parse space of ``t`` (for
    instance a projection).  Scores are computed against a projected
    shadow of each sentence, so neighbours reduced earlier in the pass
    are seen in their reduced form.
    """
    removed = 0
    for sent in corpus:
        shadow = Sentence([tok.with_parses(_dedup(view(p) for p in tok.parses)) for tok in sent])
        for i in range(1, len(sent) - 1):
            tok = sent[i]
            if len(tok.parses) < 2:
                continue
            views = [view(p) for p in tok.parses]
            scores = {}
            for v in set(views):
                sc = parse_context_score(shadow, i, v, t, weights)
                if sc is None:
                    break
                scores[v] = sc
            else:
                top = max(scores.values())
                if top <= 0:
                    continue
                keep = [p for p, v in zip(tok.parses, views) if not scores[v] < fraction * top]
                if len(keep) < len(tok.parses):
                    removed += len(tok.parses) - len(keep)
                    sent.tokens[i] = tok.with_parses(keep)
                    shadow.tokens[i] = shadow[i].with_parses(_dedup(view(p) for p in keep))
    return removed


def _dedup(ps) -> tuple:
    out = []
    for p in ps:
        if p not in out:
            out.append(p)
    return tuple(out)


def context_stats(corpus, cfg: Optional[ContextStatsConfig] = None,
                  view: Callable[[FeatureStructure], FeatureStructure] = _identity) -> int:
    """Three passes, rebuilding the tables from the current text before each."""
    cfg = cfg or ContextStatsConfig()
    total = 0
    for g in cfg.fractions:
        projected = [Sentence([tok.with_parses(_dedup(view(p) for p in tok.parses)) for tok in s])
                     for s in corpus]
        t = build_tables(projected, CONTEXT_SHAPES)
        total += context_stats_pass(corpus, t, g, cfg.weights, view)
    return total


# --- root statistics --------------------------------------------------------

def root_key(p: FeatureStructure) -> tuple:
    return (p.innermost_root(), p.cat)


@dataclass
class RootStatsTable:
    counts: Counter = field(default_factory=Counter)
    derived: set = field(default_factory=set)

    def freq(self, p: FeatureStructure) -> int:
        return self.counts.get(root_key(p), 0)

    def to_text(self) -> str:
        lines = []
        for (root, cat), n in sorted(self.counts.items(), key=lambda kv: (-kv[1], kv[0])):
            extra = "\tderived" if (root, cat) in self.derived else ""
            lines.append(f"{root}\t{cat}\t{n}{extra}")
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def parse(cls, text: str) -> "RootStatsTable":
        t = cls()
        for n, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) not in (3, 4) or not cols[2].isdigit():
                raise ValueError(f"line {n}: expected root<TAB>cat<TAB>count")
            t.counts[(cols[0], cols[1])] += int(cols[2])
            if len(cols) == 4 and cols[3] == "derived":
                t.derived.add((cols[0], cols[1]))
        return t

    @classmethod
    def load(cls, path) -> "RootStatsTable":
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    def save(self, path) -> None:
        Path(path).write_text(self.to_text(), encoding="utf-8")

    def merge(self, other: "RootStatsTable") -> "RootStatsTable":
        return RootStatsTable(self.counts + other.counts, self.derived | other.derived)


def build_root_stats(corpus: Iterable[Sentence]) -> RootStatsTable:
    t = RootStatsTable()
    for sent in corpus:
        for tok in sent.words():
            if len(tok.parses) != 1:
                continue
            p = tok.parses[0]
            key = root_key(p)
            if key[0] is None:
                continue
            t.counts[key] += 1
            if p.stem is not None:
                t.derived.add(key)
    return t


def root_stats_prune(corpus, table: RootStatsTable, ratio: float = 0.1) -> int:
    """Drop parses whose root is much rarer than the token's best root."""
    if not 0 < ratio < 1:
        raise ValueError("ratio must lie in (0, 1)")
    removed = 0
    for sent in corpus:
        for i in range(1, len(sent) - 1):
            tok = sent[i]
            if len(tok.parses) < 2 or len({root_key(p) for p in tok.parses}) < 2:
                continue
            freqs = [table.freq(p) for p in tok.parses]
            top = max(freqs)
            if top <= 0:
                continue
            keep = [p for p, f in zip(tok.parses, freqs) if not f < ratio * top]
            if len(keep) < len(tok.parses):
                removed += len(tok.parses) - len(keep)
                sent.tokens[i] = tok.with_parses(keep)
    return removed
