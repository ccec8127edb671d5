"""Projection of parses onto per-category feature subsets."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from ..corpus import Corpus, Sentence
from ..fs import FeatureStructure

CLOSED_EXTRA = ("root", "subcat")


class TemplateError(ValueError):
    pass


@dataclass(frozen=True)
class ProjectionTemplate:
    keep: Mapping[str, frozenset]
    closed: frozenset = frozenset()

    def attributes(self, cat: str) -> frozenset:
        try:
            attrs = self.keep[cat]
        except KeyError:
            raise TemplateError(f"no template for category {cat!r}") from None
        if cat in self.closed:
            attrs = attrs | frozenset(CLOSED_EXTRA)
        return attrs | {"cat"}

    @classmethod
    def parse(cls, text: str) -> "ProjectionTemplate":
        keep, closed = {}, frozenset()
        for n, raw in enumerate(text.splitlines(), 1):
            line = raw.split("%", 1)[0].strip()
            if not line:
                continue
            name, sep, rest = line.partition(":")
            if not sep:
                raise TemplateError(f"line {n}: expected 'category: attributes'")
            name, attrs = name.strip(), rest.split()
            if name == "closed":
                closed = frozenset(attrs)
            else:
                keep[name] = frozenset(attrs)
        return cls(keep, closed)

    def to_text(self) -> str:
        lines = ["closed: " + " ".join(sorted(self.closed))]
        for cat, attrs in self.keep.items():
            order = ["cat"] + sorted(a for a in attrs if a != "cat")
            lines.append(f"{cat}: " + " ".join(order))
        return "\n".join(lines) + "\n"


def load_template(source) -> ProjectionTemplate:
    """Load a template from a path, or one of the shipped names ``stage1``/``stage2``."""
    if source in ("stage1", "stage2"):
        text = resources.files(__package__).joinpath(f"data/{source}.template").read_text("utf-8")
    else:
        text = Path(source).read_text(encoding="utf-8")
    return ProjectionTemplate.parse(text)


def project(p: FeatureStructure, t: ProjectionTemplate) -> FeatureStructure:
    cat = p.cat
    if cat is None:
        raise TemplateError(f"parse without category: {p}")
    keep = t.attributes(cat)
    out = []
    for k, v in p.items():
        if k not in keep:
            continue
        if isinstance(v, FeatureStructure):
            v = project(v, t)
        out.append((k, v))
    return FeatureStructure(out)


def dedup(parses: Iterable[FeatureStructure]) -> tuple:
    seen, out = set(), []
    for p in parses:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return tuple(out)


def project_sentence(sent: Sentence, t: ProjectionTemplate) -> Sentence:
    return Sentence([
        tok.with_parses(dedup(project(p, t) for p in tok.parses)) for tok in sent
    ])


def project_corpus(corpus: Iterable[Sentence], t: ProjectionTemplate) -> Corpus:
    return Corpus(project_sentence(s, t) for s in corpus)
