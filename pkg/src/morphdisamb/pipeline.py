"""Stage orchestration: disambiguation runs and the learning driver."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

from .corpus import Corpus, Sentence
from .evaluate import EvalReport, evaluate
from .learner import LearnerConfig, learn_choose, learn_delete
from .preprocess.project import ProjectionTemplate, dedup, load_template, project, project_corpus
from .rules import apply_ruleset, read_rules
from .stats import ContextStatsConfig, RootStatsTable, build_root_stats, context_stats, root_stats_prune

STAGES = ("initial-choose", "initial-delete", "context-stats", "root-stats",
          "learned-choose", "learned-delete")
LABELS = {
    "initial-choose": "Initial Choose",
    "initial-delete": "Initial Delete",
    "context-stats": "Context Statistics",
    "root-stats": "Root Statistics",
    "learned-choose": "Learned Choose",
    "learned-delete": "Learned Delete",
}
RULE_STAGES = {
    "initial-choose": ("hand_choose", "hand"),
    "initial-delete": ("hand_delete", "hand"),
    "learned-choose": ("learned_choose", "strict"),
    "learned-delete": ("learned_delete", "strict"),
}


class ConfigError(ValueError):
    pass


class StageError(RuntimeError):
    """An enabled stage cannot run, e.g. its rule file is missing."""


def packaged_rules(name: str) -> Path:
    return Path(str(resources.files("morphdisamb") / "data" / name))


def _bool(v: str, key: str) -> bool:
    low = v.strip().lower()
    if low in ("yes", "true", "on", "1"):
        return True
    if low in ("no", "false", "off", "0"):
        return False
    raise ConfigError(f"{key}: expected yes or no, got {v!r}")


def _floats(v: str, key: str) -> tuple:
    try:
        return tuple(float(x) for x in v.replace(",", " ").split())
    except ValueError:
        raise ConfigError(f"{key}: expected numbers, got {v!r}") from None


@dataclass
class PipelineConfig:
    """Which stages run, in what order, and with which resources.

    ``stages`` is an ordered list of ``(name, enabled)`` pairs.  Paths
    left as None fall back to the packaged data (hand-crafted rules,
    templates); learned rule files and the root table have no default.
    A root-stats stage without a table builds one from the text it is
    given.
    """

    stages: list = field(default_factory=lambda: [(s, True) for s in STAGES])
    hand_choose: Optional[Path] = None
    hand_delete: Optional[Path] = None
    learned_choose: Optional[Path] = None
    learned_delete: Optional[Path] = None
    collocations: Optional[Path] = None
    suffixes: Optional[Path] = None
    template_stage1: str = "stage1"
    template_stage2: str = "stage2"
    root_stats: Optional[Path] = None
    root_ratio: float = 0.1
    context_view: str = "stage1"       # stage1 | stage2 | full
    dedup: bool = True
    context: ContextStatsConfig = field(default_factory=ContextStatsConfig)
    learner: LearnerConfig = field(default_factory=LearnerConfig)

    def __post_init__(self):
        names = [n for n, _ in self.stages]
        bad = [n for n in names if n not in STAGES]
        if bad:
            raise ConfigError(f"unknown stage {bad[0]!r}")
        if len(set(names)) != len(names):
            raise ConfigError("a stage is listed twice")
        if self.context_view not in ("stage1", "stage2", "full"):
            raise ConfigError(f"unknown context view {self.context_view!r}")
        if not 0 < self.root_ratio < 1:
            raise ConfigError("root ratio must lie in (0, 1)")

    @property
    def enabled(self) -> list:
        return [n for n, on in self.stages if on]

    def with_enabled(self, names: Iterable[str]) -> "PipelineConfig":
        """Same order, enabling exactly ``names``."""
        names = set(names)
        unknown = names - set(STAGES)
        if unknown:
            raise ConfigError(f"unknown stage {sorted(unknown)[0]!r}")
        return replace(self, stages=[(n, n in names) for n, _ in self.stages])

    @classmethod
    def parse(cls, text: str, base: Optional["PipelineConfig"] = None) -> "PipelineConfig":
        """Read ``key: value`` lines; ``%`` and ``#`` start comments.

        Stage order comes from ``stage.N.name`` keys sorted by N, with
        optional ``stage.N.enabled``.
        """
        cfg = base or cls()
        kw: dict = {}
        order: dict = {}
        enabled: dict = {}
        ctx = {"weights": cfg.context.weights, "fractions": cfg.context.fractions}
        lrn = {}
        paths = {"rules.initial-choose": "hand_choose", "rules.initial-delete": "hand_delete",
                 "rules.learned-choose": "learned_choose", "rules.learned-delete": "learned_delete",
                 "collocations": "collocations", "suffixes": "suffixes",
                 "root-stats.table": "root_stats"}
        for n, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line[0] in "%#":
                continue
            key, sep, val = line.partition(":")
            key, val = key.strip(), val.strip()
            if not sep or not key:
                raise ConfigError(f"line {n}: expected key: value")
            parts = key.split(".")
            if parts[0] == "stage" and len(parts) == 3 and parts[1].isdigit():
                if parts[2] == "name":
                    order[int(parts[1])] = val
                elif parts[2] == "enabled":
                    enabled[int(parts[1])] = _bool(val, key)
                else:
                    raise ConfigError(f"line {n}: unknown key {key!r}")
            elif key in paths:
                kw[paths[key]] = Path(val) if val else None
            elif key == "template.stage1":
                kw["template_stage1"] = val
            elif key == "template.stage2":
                kw["template_stage2"] = val
            elif key == "root-stats.ratio":
                kw["root_ratio"] = _floats(val, key)[0]
            elif key == "context-stats.view":
                kw["context_view"] = val
            elif key == "context-stats.weights":
                ctx["weights"] = _floats(val, key)
            elif key == "context-stats.fractions":
                ctx["fractions"] = _floats(val, key)
            elif key == "dedup":
                kw["dedup"] = _bool(val, key)
            elif key == "learner.thresholds":
                vals = _floats(val, key)
                if len(vals) != 4:
                    raise ConfigError(f"line {n}: four thresholds expected")
                lrn["thresholds"] = dict(zip((1, 2, 3, 4), vals))
            elif key in ("learner.damping", "learner.lower-limit", "learner.delete-fraction"):
                lrn[parts[1].replace("-", "_")] = _floats(val, key)[0]
            elif key == "learner.max-rules":
                lrn["max_rules"] = int(val) if val else None
            else:
                raise ConfigError(f"line {n}: unknown key {key!r}")
        if order:
            missing = set(enabled) - set(order)
            if missing:
                raise ConfigError(f"stage.{min(missing)}.enabled without a name")
            kw["stages"] = [(order[k], enabled.get(k, True)) for k in sorted(order)]
        elif enabled:
            raise ConfigError("stage.N.enabled given without stage.N.name")
        try:
            kw["context"] = ContextStatsConfig(tuple(ctx["weights"]), tuple(ctx["fractions"]))
            kw["learner"] = replace(cfg.learner, **lrn)
        except ValueError as e:
            raise ConfigError(str(e)) from None
        return replace(cfg, **kw)

    @classmethod
    def load(cls, path, base: Optional["PipelineConfig"] = None) -> "PipelineConfig":
        return cls.parse(Path(path).read_text(encoding="utf-8"), base)


def ambiguity_report(corpus: Iterable[Sentence]) -> EvalReport:
    """Token and parse counts only; recall and precision stay undefined."""
    rep = EvalReport()
    for sent in corpus:
        for tok in sent.words():
            rep.tokens += 1
            rep.all_received += len(tok.parses)
    return rep


def dedup_corpus(corpus) -> None:
    for sent in corpus:
        for i, tok in enumerate(sent.tokens):
            ps = dedup(tok.parses)
            if len(ps) != len(tok.parses):
                sent.tokens[i] = tok.with_parses(ps)


@dataclass
class StageTrace:
    stage: str
    rules: list
    events: list          # FireEvent


class Pipeline:
    def __init__(self, cfg: Optional[PipelineConfig] = None):
        self.cfg = cfg or PipelineConfig()
        self._rules: dict = {}
        self._templates: dict = {}

    def rules(self, stage: str) -> list:
        if stage not in self._rules:
            attr, _ = RULE_STAGES[stage]
            path = getattr(self.cfg, attr)
            if path is None and attr in ("hand_choose", "hand_delete"):
                path = packaged_rules("handcrafted_choose.rules" if attr == "hand_choose"
                                      else "handcrafted_delete.rules")
            if path is None:
                raise StageError(f"stage {stage} is enabled but no rule file was given")
            try:
                self._rules[stage] = read_rules(path)
            except FileNotFoundError:
                raise StageError(f"stage {stage}: rule file {path} not found") from None
        return self._rules[stage]

    def template(self, which: str) -> ProjectionTemplate:
        if which not in self._templates:
            src = self.cfg.template_stage1 if which == "stage1" else self.cfg.template_stage2
            self._templates[which] = load_template(src)
        return self._templates[which]

    def _view(self):
        if self.cfg.context_view == "full":
            return lambda p: p
        t = self.template(self.cfg.context_view)
        return lambda p: project(p, t)

    def run_stage(self, stage: str, corpus, trace: Optional[list] = None) -> None:
        if stage in RULE_STAGES:
            events: list = []
            rules = self.rules(stage)
            apply_ruleset(rules, corpus, RULE_STAGES[stage][1], trace=events)
            if trace is not None:
                trace.append(StageTrace(stage, rules, events))
        elif stage == "context-stats":
            context_stats(corpus, self.cfg.context, self._view())
        elif stage == "root-stats":
            table = (RootStatsTable.load(self.cfg.root_stats) if self.cfg.root_stats
                     else build_root_stats(corpus))
            root_stats_prune(corpus, table, self.cfg.root_ratio)
        else:
            raise StageError(f"unknown stage {stage!r}")

    def run(self, corpus, gold=None, trace: Optional[list] = None, key=None) -> list:
        """Disambiguate ``corpus`` in place.

        Returns ``(label, EvalReport)`` rows, starting with ``Base``.
        Without ``gold`` only the ambiguity column is filled.
        """
        if self.cfg.dedup:
            dedup_corpus(corpus)

        def report():
            return evaluate(corpus, gold, key) if gold is not None else ambiguity_report(corpus)

        rows = [("Base", report())]
        for stage in self.cfg.enabled:
            self.run_stage(stage, corpus, trace)
            rows.append((LABELS[stage], report()))
        return rows


def disambiguate(corpus, cfg: Optional[PipelineConfig] = None, gold=None, trace=None) -> list:
    return Pipeline(cfg).run(corpus, gold, trace)


@dataclass
class LearnResult:
    choose: list
    delete: list

    def format(self, label: str = "text") -> str:
        return (f"{'Text':<12}{'Choose Rules':>14}{'Delete Rules':>14}\n"
                f"{label:<12}{len(self.choose):>14}{len(self.delete):>14}\n")


def learn(corpus, cfg: Optional[PipelineConfig] = None,
          delete_method: str = "ratio") -> LearnResult:
    """Learn choose rules, apply them, then learn delete rules.

    The text is first reduced with the hand-crafted rules.  Choose
    rules come from its stage-1 projection; after they are applied to
    the full text, delete rules come from the stage-2 projection.
    ``corpus`` itself is left untouched.
    """
    cfg = cfg or PipelineConfig()
    pipe = Pipeline(cfg)
    work = Corpus(s.copy() for s in corpus)
    if cfg.dedup:
        dedup_corpus(work)
    for stage in ("initial-choose", "initial-delete"):
        if stage in cfg.enabled:
            pipe.run_stage(stage, work)
    choose = learn_choose(project_corpus(work, pipe.template("stage1")), cfg.learner)
    if choose:
        apply_ruleset(choose, work, "strict")
    delete = learn_delete(project_corpus(work, pipe.template("stage2")), cfg.learner,
                          method=delete_method)
    return LearnResult(choose, delete)


def fired(trace: Iterable[StageTrace], changed_only: bool = False) -> list:
    """``(stage, rule, sentence, position, changed)`` for every event."""
    out = []
    for st in trace:
        for e in st.events:
            if changed_only and not e.changed:
                continue
            out.append((st.stage, st.rules[e.rule], e.sentence, e.position, e.changed))
    return out
