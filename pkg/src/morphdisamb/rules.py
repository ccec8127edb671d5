"""Constraint rules and the engine that applies them.

A rule file holds one rule per ``.``-terminated record::

    [llc:[],lc:[[cat:adj,type:determiner]],rc:[],rrc:[],choose:[cat:noun]].
    [delete:[poss:'2SG']].

Each context slot is a list of alternative constraints; an empty list
leaves the slot unconstrained.  ``%`` lines before a rule are kept as
its comments and a ``% score=S iter=N`` trailer records how a learned
rule was obtained.

Two matching modes exist.  In ``strict`` mode every constrained
neighbour must already be unambiguous and its single parse must satisfy
the slot; for the right neighbour a derived form also matches when its
stem does.  In ``hand`` mode a slot is satisfied if any parse of the
neighbour satisfies it, and a successful choose narrows those
neighbours to their matching parses at the same time.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .corpus import Sentence
from .fs import Constraint, FeatureStructure, subsumes
from .terms import Pair, TermSyntaxError, TList, format_atom, iter_records

SLOTS = ("llc", "lc", "rc", "rrc")
OFFSETS = {"llc": -2, "lc": -1, "rc": 1, "rrc": 2}
ACTIONS = ("choose", "delete")
MODES = ("strict", "hand")

_TRAILER = re.compile(r"score=(\S+)\s+iter=(\d+)")


class RuleFormatError(ValueError):
    pass


@dataclass(frozen=True)
class ConstraintRule:
    action: str
    target: Constraint
    llc: tuple = ()
    lc: tuple = ()
    rc: tuple = ()
    rrc: tuple = ()
    token: Optional[str] = None
    slotted: bool = True
    comments: tuple = field(default=(), compare=False)
    score: Optional[float] = field(default=None, compare=False)
    iteration: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        if self.action not in ACTIONS:
            raise ValueError(f"unknown action {self.action!r}")
        if not self.slotted and self.action != "delete":
            raise ValueError("only delete rules may omit the context slots")

    def slot(self, name: str) -> tuple:
        return getattr(self, name)

    @property
    def context_free(self) -> bool:
        return not any(self.slot(s) for s in SLOTS)

    def context_key(self) -> tuple:
        return tuple((s, self.slot(s)) for s in SLOTS)

    def specificity(self) -> int:
        n = sum(c.size() for s in SLOTS for c in self.slot(s))
        return n + (1 if self.token else 0)

    def to_text(self) -> str:
        act = f"{self.action}:{self.target.to_text()}"
        if self.slotted:
            parts = [
                f"{s}:[" + ",".join(c.to_text() for c in self.slot(s)) + "]"
                for s in SLOTS
            ]
            parts.append(act)
        else:
            parts = [act]
        if self.token is not None:
            parts.append(f"token:{format_atom(self.token)}")
        line = "[" + ",".join(parts) + "]."
        if self.score is not None:
            line += f" % score={self.score!r} iter={self.iteration or 0}"
        return line


def _slot_from_term(term, name: str) -> tuple:
    if not isinstance(term, TList):
        raise RuleFormatError(f"line {getattr(term, 'line', 0)}: slot {name} must be a list")
    out = []
    for alt in term.items:
        if not isinstance(alt, TList):
            raise RuleFormatError(
                f"line {getattr(alt, 'line', term.line)}: slot {name} must be a list of constraints")
        out.append(Constraint.from_term(alt))
    return tuple(out)


def rule_from_term(term, comments=(), trailer: Optional[str] = None) -> ConstraintRule:
    if not isinstance(term, TList):
        raise RuleFormatError("rule must be a bracketed list")
    fields: dict = {}
    slotted = False
    action = target = None
    for item in term.items:
        if not isinstance(item, Pair):
            raise RuleFormatError(f"line {getattr(item, 'line', term.line)}: expected key:value in rule")
        key = item.key
        if key in fields or (key in ACTIONS and action is not None):
            raise RuleFormatError(f"line {item.line}: duplicate {key!r}")
        if key in SLOTS:
            slotted = True
            fields[key] = _slot_from_term(item.value, key)
        elif key in ACTIONS:
            if not isinstance(item.value, TList):
                raise RuleFormatError(f"line {item.line}: {key} needs a constraint list")
            action, target = key, Constraint.from_term(item.value)
        elif key == "token":
            if not isinstance(item.value, str):
                raise RuleFormatError(f"line {item.line}: token must be an atom")
            fields["token"] = item.value
        else:
            raise RuleFormatError(f"line {item.line}, column {item.col}: unknown rule field {key!r}")
    if action is None:
        raise RuleFormatError(f"line {term.line}: rule has neither choose nor delete")
    if not slotted and action == "choose":
        raise RuleFormatError(f"line {term.line}: a choose rule needs context slots")
    score = iteration = None
    if trailer:
        m = _TRAILER.search(trailer)
        if m:
            score, iteration = float(m.group(1)), int(m.group(2))
    return ConstraintRule(action, target, slotted=slotted, comments=tuple(comments),
                          score=score, iteration=iteration, **fields)


def parse_rules(text: str) -> list[ConstraintRule]:
    rules = []
    try:
        for term, comments in iter_records(text):
            end = _last_line(term)
            before = [c.text for c in comments if c.own_line]
            trailer = next((c.text for c in comments if not c.own_line and c.line >= end), None)
            rules.append(rule_from_term(term, before, trailer))
    except TermSyntaxError as e:
        raise RuleFormatError(str(e)) from e
    return rules


def _last_line(term) -> int:
    line = getattr(term, "line", 0)
    if isinstance(term, TList):
        for t in term.items:
            line = max(line, _last_line(t))
    elif isinstance(term, Pair):
        line = max(line, _last_line(term.value))
    return line


def serialize_rules(rules: Iterable[ConstraintRule]) -> str:
    lines = []
    for i, r in enumerate(rules):
        if r.comments:
            if i:
                lines.append("")
            lines.extend(f"% {c}".rstrip() for c in r.comments)
        lines.append(r.to_text())
    return "\n".join(lines) + "\n" if lines else ""


def read_rules(path) -> list[ConstraintRule]:
    return parse_rules(Path(path).read_text(encoding="utf-8"))


def write_rules(rules: Iterable[ConstraintRule], path) -> None:
    Path(path).write_text(serialize_rules(rules), encoding="utf-8")


# --- matching ---------------------------------------------------------------

def _slot_matches(alts: Sequence[Constraint], parse: FeatureStructure, surface: str) -> bool:
    return any(subsumes(c, parse, surface) for c in alts)


def match_context(rule: ConstraintRule, sent: Sentence, i: int, mode: str = "strict"):
    """Check the context slots of ``rule`` around position ``i``.

    Returns ``None`` when the context does not hold, otherwise a dict
    mapping each constrained neighbour position to the indices of its
    parses that satisfy the slot.
    """
    binding = {}
    n = len(sent)
    for s in SLOTS:
        alts = rule.slot(s)
        if not alts:
            continue
        j = i + OFFSETS[s]
        if j < 0 or j >= n:
            return None
        tok = sent[j]
        if mode == "strict":
            if len(tok.parses) != 1:
                return None
            p = tok.parses[0]
            if _slot_matches(alts, p, tok.surface):
                binding[j] = (0,)
            elif s == "rc" and p.stem is not None and _slot_matches(alts, p.stem, tok.surface):
                binding[j] = (0,)
            else:
                return None
        else:
            hits = tuple(k for k, p in enumerate(tok.parses) if _slot_matches(alts, p, tok.surface))
            if not hits:
                return None
            binding[j] = hits
    return binding


def _target_hits(rule: ConstraintRule, tok) -> list[int]:
    if rule.token is not None and tok.surface != rule.token:
        return []
    return [k for k, p in enumerate(tok.parses) if subsumes(rule.target, p, tok.surface)]


@dataclass(frozen=True)
class FireEvent:
    rule: int
    sentence: int
    position: int
    changed: bool


def apply_at(rule: ConstraintRule, sent: Sentence, i: int, mode: str = "strict",
             binding=None) -> list[int]:
    """Apply one rule at position ``i`` in place; return changed positions."""
    tok = sent[i]
    if len(tok.parses) < 2:
        return []
    hits = _target_hits(rule, tok)
    if not hits or len(hits) == len(tok.parses):
        return []
    if binding is None:
        binding = match_context(rule, sent, i, mode)
        if binding is None:
            return []
    if rule.action == "choose":
        keep = hits
    else:
        hit = set(hits)
        keep = [k for k in range(len(tok.parses)) if k not in hit]
    sent.tokens[i] = tok.with_parses(tok.parses[k] for k in keep)
    changed = [i]
    if mode == "hand" and rule.action == "choose":
        for j, idx in binding.items():
            nb = sent[j]
            if len(idx) < len(nb.parses):
                sent.tokens[j] = nb.with_parses(nb.parses[k] for k in idx)
                changed.append(j)
    return changed


def apply_choose(rule, sent, i, mode="strict") -> list[int]:
    if rule.action != "choose":
        raise ValueError("not a choose rule")
    return apply_at(rule, sent, i, mode)


def apply_delete(rule, sent, i, mode="strict") -> list[int]:
    if rule.action != "delete":
        raise ValueError("not a delete rule")
    return apply_at(rule, sent, i, mode)


def apply_ruleset(rules: Sequence[ConstraintRule], corpus, mode: str = "strict",
                  trace: Optional[list] = None, max_sweeps: int = 1000) -> int:
    """Apply ``rules`` to every sentence until nothing changes.

    Sweeps are rule-major: each rule visits every position before the
    next rule runs.  Returns the number of token updates made.  When
    ``trace`` is a list, a ``FireEvent`` is appended for each position
    where a rule's context and target both matched.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    total = 0
    for _ in range(max_sweeps):
        changed = 0
        for ri, rule in enumerate(rules):
            for si, sent in enumerate(corpus):
                for i in range(1, len(sent) - 1):
                    tok = sent[i]
                    if len(tok.parses) < 2:
                        continue
                    hits = _target_hits(rule, tok)
                    if not hits:
                        continue
                    binding = match_context(rule, sent, i, mode)
                    if binding is None:
                        continue
                    done = apply_at(rule, sent, i, mode, binding)
                    if trace is not None:
                        trace.append(FireEvent(ri, si, i, bool(done)))
                    changed += len(done)
        total += changed
        if not changed:
            return total
    raise RuntimeError("rule application did not reach a fixed point")
