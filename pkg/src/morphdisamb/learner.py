"""Unsupervised learning of choose and delete rules.

Statistics come from unambiguous contexts of a projected corpus.  The
``count`` table records how often each parse occurs unambiguously and
``incontext`` how often it occurs unambiguously inside a given context.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional

from .corpus import Corpus, Sentence
from .fs import Constraint, FeatureStructure, subsumes
from .rules import OFFSETS, ConstraintRule, FireEvent, apply_ruleset

SHAPES = {
    "S1": ("llc", "lc", "rc", "rrc"),
    "S2L": ("llc", "lc"),
    "S2R": ("rc", "rrc"),
    "S3": ("lc", "rc"),
    "S4L": ("lc",),
    "S4R": ("rc",),
}
GROUP = {"S1": 1, "S2L": 2, "S2R": 2, "S3": 3, "S4L": 4, "S4R": 4}
DELETE_SHAPES = ("S2L", "S2R", "S3", "S4L", "S4R")
LEFT = ("llc", "lc")
NOMINAL = frozenset({"noun", "pronoun"})


@dataclass
class LearnerConfig:
    thresholds: dict = field(default_factory=lambda: {1: 7.0, 2: 10.0, 3: 14.0, 4: 20.0})
    damping: float = 0.9
    lower_limit: float = 7.0
    delete_fraction: float = 0.2
    ignore: dict = field(default_factory=lambda: {"left": ("poss",), "right": ("case",)})
    ignore_categories: frozenset = NOMINAL
    max_rules: Optional[int] = None

    def __post_init__(self):
        if not 0 < self.damping < 1:
            raise ValueError("damping must lie strictly between 0 and 1")
        if not 0 < self.delete_fraction < 1:
            raise ValueError("delete fraction must lie strictly between 0 and 1")
        th = [self.thresholds[g] for g in sorted(self.thresholds)]
        if any(a > b for a, b in zip(th, th[1:])):
            raise ValueError("less specific groups need higher thresholds")


class ContextKey(NamedTuple):
    shape: str
    parses: tuple

    def slots(self) -> dict:
        return dict(zip(SHAPES[self.shape], self.parses))


def _strip(fs: FeatureStructure, drop) -> FeatureStructure:
    if not drop:
        return fs
    return FeatureStructure((k, v) for k, v in fs.items() if k not in drop)


def slot_view(fs: FeatureStructure, slot: str, ignore: Optional[dict],
              categories=NOMINAL) -> FeatureStructure:
    """The part of a neighbour's parse that enters a context key."""
    if not ignore or fs.cat not in categories:
        return fs
    return _strip(fs, ignore.get("left" if slot in LEFT else "right", ()))


def window_keys(sent: Sentence, i: int, shape: str, ignore=None,
                categories=NOMINAL) -> list:
    """Context keys of ``shape`` around position ``i``.

    Empty when a slot falls outside the sentence or is ambiguous.  A
    derived right neighbour with nothing beyond it yields a second key
    built from its stem.
    """
    slots = SHAPES[shape]
    parts = []
    for s in slots:
        j = i + OFFSETS[s]
        if j < 0 or j >= len(sent) or len(sent[j].parses) != 1:
            return []
        parts.append(sent[j].parses[0])
    key = tuple(slot_view(p, s, ignore, categories) for p, s in zip(parts, slots))
    keys = [ContextKey(shape, key)]
    if "rc" in slots and "rrc" not in slots:
        k = slots.index("rc")
        stem = parts[k].stem
        if stem is not None:
            alt = key[:k] + (slot_view(stem, "rc", ignore, categories),) + key[k + 1:]
            keys.append(ContextKey(shape, alt))
    return keys


@dataclass
class ScoreTables:
    incontext: Counter = field(default_factory=Counter)
    count: Counter = field(default_factory=Counter)

    def inc(self, key: ContextKey, p: FeatureStructure) -> int:
        return self.incontext.get((key, p), 0)

    def cnt(self, p: FeatureStructure) -> int:
        return self.count.get(p, 0)

    def __eq__(self, other) -> bool:
        return (isinstance(other, ScoreTables)
                and +self.incontext == +other.incontext and +self.count == +other.count)

    def merge(self, other: "ScoreTables") -> "ScoreTables":
        return ScoreTables(self.incontext + other.incontext, self.count + other.count)


def _add_token(t: ScoreTables, p: FeatureStructure) -> None:
    t.count[p] += 1
    if p.stem is not None:
        t.count[p.stem] += 1


def _add_window(t: ScoreTables, sent: Sentence, c: int, shape: str, ignore, cats) -> None:
    tok = sent[c]
    if len(tok.parses) != 1:
        return
    for key in window_keys(sent, c, shape, ignore, cats):
        t.incontext[(key, tok.parses[0])] += 1


def build_tables(corpus: Iterable[Sentence], shapes=tuple(SHAPES), ignore=None,
                 categories=NOMINAL) -> ScoreTables:
    t = ScoreTables()
    for sent in corpus:
        for i in range(1, len(sent) - 1):
            if len(sent[i].parses) != 1:
                continue
            _add_token(t, sent[i].parses[0])
            for shape in shapes:
                _add_window(t, sent, i, shape, ignore, categories)
    return t


def update_tables(t: ScoreTables, corpus, newly: Iterable[tuple], shapes=tuple(SHAPES),
                  ignore=None, categories=NOMINAL) -> None:
    """Add what positions that just became unambiguous contribute.

    ``newly`` holds ``(sentence, position)`` pairs.  Every window that
    contains one of them was incomplete before, so its entry is new.
    """
    windows = set()
    for s, i in newly:
        sent = corpus[s]
        _add_token(t, sent[i].parses[0])
        for shape in shapes:
            offs = [0] + [OFFSETS[x] for x in SHAPES[shape]]
            for o in offs:
                c = i - o
                if 1 <= c < len(sent) - 1:
                    windows.add((s, c, shape))
    for s, c, shape in sorted(windows):
        _add_window(t, corpus[s], c, shape, ignore, categories)


# --- candidates and scoring -------------------------------------------------

class Candidate(NamedTuple):
    key: ContextKey
    target: FeatureStructure
    parses: tuple          # ambiguity class of the token it came from


def _fires(target: FeatureStructure, parses: tuple) -> bool:
    c = Constraint.from_fs(target)
    hits = sum(subsumes(c, p) for p in parses)
    return 0 < hits < len(parses)


def sentence_candidates(sent: Sentence, shapes=tuple(SHAPES), ignore=None,
                        categories=NOMINAL) -> set:
    out = set()
    for i in range(1, len(sent) - 1):
        parses = sent[i].parses
        if len(parses) < 2:
            continue
        for shape in shapes:
            for key in window_keys(sent, i, shape, ignore, categories):
                for p in parses:
                    if _fires(p, parses):
                        out.add(Candidate(key, p, parses))
    return out


def score_choose(cand: Candidate, t: ScoreTables) -> Optional[float]:
    """Incontext of the target minus its strongest count-scaled competitor.

    None when the target never occurs unambiguously.
    """
    ci = t.cnt(cand.target)
    if ci == 0:
        return None
    best = None
    for p in cand.parses:
        if p == cand.target:
            continue
        cj = t.cnt(p)
        if cj == 0:
            continue
        v = ci * t.inc(cand.key, p) / cj   # one rounding, so ties score exactly 0
        if best is None or v > best:
            best = v
    own = t.inc(cand.key, cand.target)
    return float(own) if best is None else own - best


def candidate_rule(cand: Candidate, action: str = "choose", score=None, iteration=None) -> ConstraintRule:
    slots = {s: (Constraint.from_fs(p),) for s, p in cand.key.slots().items()}
    return ConstraintRule(action=action, target=Constraint.from_fs(cand.target),
                          score=score, iteration=iteration, **slots)


def _rule_size(rule: ConstraintRule) -> int:
    return rule.target.size() + sum(c.size() for s in ("llc", "lc", "rc", "rrc") for c in rule.slot(s))


def select_rule(scored: Iterable[tuple], thresholds: dict) -> Optional[tuple]:
    """Pick ``(candidate, score)`` from the most specific qualifying group.

    Within a group the best score wins, then the larger constraint,
    then the smaller serialized rule text.
    """
    groups = defaultdict(list)
    for cand, score in scored:
        groups[GROUP[cand.key.shape]].append((cand, score))
    for g in sorted(groups):
        items = groups[g]
        top = max(s for _, s in items)
        if top < thresholds[g]:
            continue
        tied = [(c, s) for c, s in items if s == top]
        if len(tied) > 1:
            def order(cs):
                r = candidate_rule(cs[0])
                return (-_rule_size(r), r.to_text())
            tied.sort(key=order)
        return tied[0]
    return None


class ChooseLearner:
    """Greedy choose-rule induction, one rule per :meth:`step`."""

    def __init__(self, corpus: Iterable[Sentence], cfg: Optional[LearnerConfig] = None):
        self.cfg = cfg or LearnerConfig()
        self.corpus = Corpus(s.copy() for s in corpus)
        self.thresholds = dict(self.cfg.thresholds)
        self.tables = build_tables(self.corpus, ignore=self.cfg.ignore,
                                   categories=self.cfg.ignore_categories)
        self.cands = {k: sentence_candidates(s, ignore=self.cfg.ignore,
                                             categories=self.cfg.ignore_categories)
                      for k, s in enumerate(self.corpus)}
        self.rules: list = []
        self.iteration = 0
        self.banned: set = set()
        self.done = False

    def scored(self) -> list:
        pool = set().union(*self.cands.values()) if self.cands else set()
        out = []
        for cand in pool:
            if (cand.key, cand.target) in self.banned:
                continue
            s = score_choose(cand, self.tables)
            if s is not None:
                out.append((cand, s))
        return out

    def step(self) -> Optional[ConstraintRule]:
        """Select and apply one rule; damp thresholds when none qualifies.

        Returns the applied rule, or None when thresholds were damped
        or learning has finished.
        """
        if self.done:
            return None
        pick = select_rule(self.scored(), self.thresholds)
        if pick is None:
            self.thresholds = {g: v * self.cfg.damping for g, v in self.thresholds.items()}
            if self.thresholds[1] < self.cfg.lower_limit:
                self.done = True
            return None
        cand, score = pick
        self.iteration += 1
        rule = candidate_rule(cand, score=score, iteration=self.iteration)
        trace: list[FireEvent] = []
        apply_ruleset([rule], self.corpus, "strict", trace=trace)
        changed = {(e.sentence, e.position) for e in trace if e.changed}
        if not changed:
            self.banned.add((cand.key, cand.target))
            return None
        newly = sorted(x for x in changed if len(self.corpus[x[0]][x[1]].parses) == 1)
        update_tables(self.tables, self.corpus, newly, ignore=self.cfg.ignore,
                      categories=self.cfg.ignore_categories)
        for s in {x[0] for x in changed}:
            self.cands[s] = sentence_candidates(self.corpus[s], ignore=self.cfg.ignore,
                                                categories=self.cfg.ignore_categories)
        if all(r.to_text() != rule.to_text() for r in self.rules):
            self.rules.append(rule)
        if self.cfg.max_rules is not None and len(self.rules) >= self.cfg.max_rules:
            self.done = True
        return rule

    def run(self) -> list:
        while not self.done:
            self.step()
        return self.rules


def learn_choose(corpus: Iterable[Sentence], cfg: Optional[LearnerConfig] = None) -> list:
    """Learn choose rules from a projected corpus, in the order selected."""
    return ChooseLearner(corpus, cfg).run()


def delete_scores(sent: Sentence, i: int, key: ContextKey, t: ScoreTables) -> list:
    """``incontext/count`` for each parse of token ``i`` in context ``key``."""
    out = []
    for p in sent[i].parses:
        c = t.cnt(p)
        out.append(t.inc(key, p) / c if c else 0.0)
    return out


def learn_delete(corpus: Iterable[Sentence], cfg: Optional[LearnerConfig] = None,
                 method: str = "ratio") -> list:
    """Delete rules for parses far less likely than their best sibling.

    ``method="ratio"`` deletes a parse whose ``incontext/count`` score
    falls below ``delete_fraction`` of the best parse in the same
    context.  ``method="choose-score"`` instead deletes every parse
    whose choose score is at most minus the loosest threshold; it
    produces far more rules and is kept only for comparison.
    """
    cfg = cfg or LearnerConfig()
    corpus = list(corpus)
    t = build_tables(corpus, DELETE_SHAPES)
    rules, seen = [], set()
    for sent in corpus:
        for i in range(1, len(sent) - 1):
            parses = sent[i].parses
            if len(parses) < 2:
                continue
            for shape in DELETE_SHAPES:
                for key in window_keys(sent, i, shape):
                    if method == "ratio":
                        scores = delete_scores(sent, i, key, t)
                        top = max(scores)
                        if top <= 0:
                            continue
                        picks = [(p, s) for p, s in zip(parses, scores)
                                 if s < cfg.delete_fraction * top]
                    elif method == "choose-score":
                        margin = max(cfg.thresholds.values())
                        picks = []
                        for p in parses:
                            s = score_choose(Candidate(key, p, parses), t)
                            if s is not None and s <= -margin:
                                picks.append((p, s))
                    else:
                        raise ValueError(f"unknown delete method {method!r}")
                    for p, s in picks:
                        if not _fires(p, parses) or (key, p) in seen:
                            continue
                        seen.add((key, p))
                        rules.append(candidate_rule(Candidate(key, p, parses), "delete",
                                                    score=s, iteration=len(rules) + 1))
    return rules
