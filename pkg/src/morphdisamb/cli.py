"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 input or format error, 3 a
stage could not run.  Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
from pathlib import Path

from .corpus import Corpus, read_corpus, write_corpus
from .evaluate import evaluate, format_table, sentence_report, unknown_report
from .pipeline import STAGES, Pipeline, PipelineConfig, StageError, fired, learn
from .preprocess.analyze import LexiconAnalyzer, corpus_stats, preprocess_sentence, preprocess_text
from .preprocess.collocations import load_collocations
from .preprocess.convert import parse_linear
from .preprocess.project import load_template, project
from .preprocess.unknown import load_inventory
from .rules import write_rules
from .stats import build_root_stats

log = logging.getLogger("morphdisamb")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _config(args) -> PipelineConfig:
    cfg = PipelineConfig.load(args.config) if args.config else PipelineConfig()
    over = {}
    if getattr(args, "rules", None):
        if len(args.rules) > 2:
            raise UsageError("--rules takes a choose file and optionally a delete file")
        over["hand_choose"] = Path(args.rules[0])
        if len(args.rules) == 2:
            over["hand_delete"] = Path(args.rules[1])
    for name in ("learned_choose", "learned_delete", "root_stats"):
        v = getattr(args, name, None)
        if v:
            over[name] = Path(v)
    if getattr(args, "template", None):
        over["template_stage1"] = args.template
    if getattr(args, "collocations", None):
        over["collocations"] = Path(args.collocations)
    if getattr(args, "suffixes", None):
        over["suffixes"] = Path(args.suffixes)
    cfg = PipelineConfig(**{**cfg.__dict__, **over})
    if getattr(args, "stages", None) is not None:
        names = [s for s in args.stages.split(",") if s]
        cfg = PipelineConfig(**{**cfg.__dict__, "stages": [(n, True) for n in names]})
    if getattr(args, "disable", None):
        cfg = cfg.with_enabled(n for n in cfg.enabled if n not in args.disable)
    return cfg


def _write(text: str, path) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _read_analyzed(text: str) -> list:
    """Analyzer output: ``surface<TAB>parse<TAB>parse...`` per token, blank line between sentences."""
    sents, cur = [], []
    for n, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            if cur:
                sents.append(cur)
                cur = []
            continue
        surface, *parses = line.split("\t")
        try:
            cur.append((surface, [parse_linear(p) for p in parses if p.strip()]))
        except ValueError as e:
            raise ValueError(f"line {n}: {e}") from None
    if cur:
        sents.append(cur)
    return sents


def cmd_preprocess(args) -> int:
    cfg = _config(args)
    db = load_collocations(cfg.collocations)
    inv = load_inventory(cfg.suffixes)
    text = Path(args.input).read_text(encoding="utf-8")
    if args.analyzed:
        corpus, calls = Corpus(), 0
        for sent in _read_analyzed(text):
            an = LexiconAnalyzer({s: p for s, p in sent})
            corpus.append(preprocess_sentence([s for s, _ in sent], an, db, inv))
            calls += an.calls
    else:
        an = LexiconAnalyzer.load(args.lexicon) if args.lexicon else LexiconAnalyzer()
        corpus = preprocess_text(text, an, db, inv)
        calls = an.calls
    write_corpus(corpus, args.output)
    sys.stdout.write(corpus_stats(corpus, calls).format(Path(args.input).stem))
    return 0


def cmd_disambiguate(args) -> int:
    cfg = _config(args)
    corpus = read_corpus(args.corpus)
    gold = read_corpus(args.gold) if args.gold else None
    key = None
    if args.projected:
        t = load_template(args.projected)
        key = lambda p: project(p, t)  # noqa: E731
    trace = [] if args.trace else None
    rows = Pipeline(cfg).run(corpus, gold, trace, key)
    write_corpus(corpus, args.output)
    sys.stdout.write(format_table(rows))
    if args.trace:
        lines = [f"{stage}\t{si + 1}\t{pos}\t{'changed' if ch else 'matched'}\t{rule.to_text()}"
                 for stage, rule, si, pos, ch in fired(trace)]
        _write("\n".join(lines) + ("\n" if lines else ""), args.trace)
    return 0


def cmd_learn(args) -> int:
    cfg = _config(args)
    if not args.learned_choose or not args.learned_delete:
        raise UsageError("learn needs --learned-choose and --learned-delete output files")
    cfg = PipelineConfig(**{**cfg.__dict__, "learned_choose": None, "learned_delete": None})
    corpus = read_corpus(args.corpus)
    res = learn(corpus, cfg, delete_method=args.delete_method)
    write_rules(res.choose, args.learned_choose)
    write_rules(res.delete, args.learned_delete)
    sys.stdout.write(res.format(Path(args.corpus).stem))
    return 0


def cmd_eval(args) -> int:
    gold_path = args.gold or args.gold_file
    if not gold_path:
        raise UsageError("eval needs a gold file")
    system, gold = read_corpus(args.system), read_corpus(gold_path)
    key = None
    if args.projected:
        t = load_template(args.projected)
        key = lambda p: project(p, t)  # noqa: E731
    rep = evaluate(system, gold, key)
    label = Path(args.system).stem
    if args.format == "table":
        sys.stdout.write(format_table([(label, rep)]))
    else:
        sys.stdout.write(rep.lines())
    if args.sentences:
        sys.stdout.write(sentence_report(system, gold, key).format(label))
    if args.unknown:
        sys.stdout.write(unknown_report(system, gold, key).format(label, rep.tokens))
    return 0


def cmd_stats(args) -> int:
    corpus = read_corpus(args.corpus)
    sys.stdout.write(corpus_stats(corpus).format(Path(args.corpus).stem))
    if args.root_stats:
        build_root_stats(corpus).save(args.root_stats)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="morphdisamb", description="Morphological disambiguation toolkit.")
    p.add_argument("--seed", type=int, default=None,
                   help="seed for randomized test harnesses; the pipeline is deterministic")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--config", help="flat key: value pipeline configuration")
        sp.add_argument("--rules", nargs="+", metavar="FILE",
                        help="hand-crafted choose rules, then optionally delete rules")
        sp.add_argument("--template", help="stage-1 projection template (name or file)")

    sp = sub.add_parser("preprocess", help="raw text to a corpus of hierarchical parses")
    sp.add_argument("input")
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--lexicon", help="surface<TAB>linear-parse lexicon standing in for the analyzer")
    sp.add_argument("--analyzed", action="store_true",
                    help="input is analyzer output rather than raw text")
    sp.add_argument("--collocations")
    sp.add_argument("--suffixes")
    sp.add_argument("--config")
    sp.set_defaults(func=cmd_preprocess)

    sp = sub.add_parser("disambiguate", help="run the disambiguation stages")
    sp.add_argument("corpus")
    sp.add_argument("-o", "--output", required=True)
    common(sp)
    sp.add_argument("--learned-choose")
    sp.add_argument("--learned-delete")
    sp.add_argument("--root-stats", help="pre-built root statistics table")
    sp.add_argument("--gold")
    sp.add_argument("--projected", metavar="TEMPLATE", help="compare parses after projection")
    sp.add_argument("--stages", help=f"comma-separated stage order from: {', '.join(STAGES)}")
    sp.add_argument("--disable", action="append", choices=STAGES, default=[])
    sp.add_argument("--trace", help="write rule firings to this file ('-' for stdout)")
    sp.set_defaults(func=cmd_disambiguate)

    sp = sub.add_parser("learn", help="learn choose and delete rules from a corpus")
    sp.add_argument("corpus")
    common(sp)
    sp.add_argument("--learned-choose", help="output file for choose rules")
    sp.add_argument("--learned-delete", help="output file for delete rules")
    sp.add_argument("--delete-method", choices=("ratio", "choose-score"), default="ratio")
    sp.set_defaults(func=cmd_learn)

    sp = sub.add_parser("eval", help="compare a system corpus with a gold corpus")
    sp.add_argument("system")
    sp.add_argument("gold_file", nargs="?")
    sp.add_argument("--gold")
    sp.add_argument("--projected", metavar="TEMPLATE")
    sp.add_argument("--format", choices=("table", "lines"), default="table")
    sp.add_argument("--sentences", action="store_true", help="add the sentence-level report")
    sp.add_argument("--unknown", action="store_true", help="add the unknown-word report")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("stats", help="corpus statistics")
    sp.add_argument("corpus")
    sp.add_argument("--root-stats", help="also write the root statistics table here")
    sp.set_defaults(func=cmd_stats)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    if args.seed is not None:
        random.seed(args.seed)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"morphdisamb: {e}", file=sys.stderr)
        return 1
    except StageError as e:
        print(f"morphdisamb: stage failed: {e}", file=sys.stderr)
        return 3
    except (OSError, ValueError) as e:
        print(f"morphdisamb: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
