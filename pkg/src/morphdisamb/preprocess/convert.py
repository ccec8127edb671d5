"""Linear analyzer parses and their conversion to nested structures.

The analyzer prints a parse as a flat sequence of features in which
derivations appear as conversion markers::

    [[CAT=VERB][ROOT=gel][SENSE=POS][CONV=NOUN=YIS][AGR=3SG][POSS=2SG][CASE=LOC][CONV=ADJ=REL]]

Everything before the first marker describes the innermost stem.  Each
marker opens a new level whose category is the marker's target and
whose ``suffix`` is the marker's suffix.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from ..fs import FeatureStructure
from ..terms import Pair, TList, format_atom, parse_term

UPPER_VALUES = frozenset({"agr", "poss"})
VERBATIM_VALUES = frozenset({"root", "word"})
CASES = frozenset({"nom", "acc", "dat", "loc", "abl", "gen", "ins", "equ"})


class LinearParseError(ValueError):
    pass


def normalize_value(attr: str, value: str) -> str:
    if attr in VERBATIM_VALUES:
        return value
    if attr in UPPER_VALUES:
        return value.upper()
    v = value.lower()
    if attr == "case" and v not in CASES:
        # buffer-consonant variants such as ABL_y, ACCy, locy
        base = re.sub(r"_?y$", "", v)
        if base in CASES:
            return base
    return v


@dataclass(frozen=True)
class LinearParse:
    """Flat analyzer output.

    ``pairs`` holds ``(attr, value)`` tuples and conversion markers
    ``("conv", cat, suffix)``.
    """

    pairs: tuple

    @classmethod
    def of(cls, *items: Iterable) -> "LinearParse":
        return cls(tuple(tuple(i) for i in items))

    def get(self, attr: str, default=None):
        for p in self.pairs:
            if p[0] == attr and len(p) == 2:
                return p[1]
        return default

    @property
    def root(self):
        return self.get("root")

    def has(self, item: tuple) -> bool:
        return item in self.pairs

    def replace_root(self, root: str) -> "LinearParse":
        out, done = [], False
        for p in self.pairs:
            if p[0] == "root" and not done:
                out.append(("root", root))
                done = True
            else:
                out.append(p)
        return LinearParse(tuple(out))

    def to_text(self) -> str:
        return "[" + ",".join(
            "[" + ",".join(format_atom(x) for x in p) + "]" for p in self.pairs
        ) + "]"

    def __str__(self) -> str:
        return self.to_text()


_BRACKET_ITEM = re.compile(r"\[([^\[\]]*)\]")


def parse_linear(text: str) -> LinearParse:
    """Read a linear parse in either analyzer notation.

    Accepts ``[[CAT=NOUN][ROOT=ev]...]``, the space separated
    ``[[CAT NOUN] [ROOT ev]]`` and the list form ``[[cat,noun],[root,ev]]``.
    """
    s = text.strip()
    if "," in s and not re.search(r"\[[A-Za-z]+=", s):
        term = parse_term(s)
        if not isinstance(term, TList):
            raise LinearParseError("linear parse must be a list")
        items = []
        for t in term.items:
            if not isinstance(t, TList) or not all(isinstance(x, str) for x in t.items):
                raise LinearParseError(f"bad feature {t!r}")
            items.append(tuple(t.items))
    else:
        inner = s[1:-1] if s.startswith("[[") and s.endswith("]]") else s
        items = []
        for m in _BRACKET_ITEM.finditer(inner):
            body = m.group(1).strip()
            parts = body.split("=") if "=" in body else body.split()
            items.append(tuple(p.strip() for p in parts))
        if not items:
            raise LinearParseError(f"no features in {text!r}")
    out = []
    for it in items:
        if not it or not it[0]:
            raise LinearParseError(f"empty feature in {text!r}")
        attr = it[0].lower()
        if attr == "conv":
            out.append(("conv",) + tuple(x.lower() for x in it[1:]))
        elif len(it) != 2:
            raise LinearParseError(f"feature {it!r} needs exactly one value")
        else:
            out.append((attr, normalize_value(attr, it[1])))
    return LinearParse(tuple(out))


def to_hierarchical(parse: LinearParse) -> FeatureStructure:
    """Nest a linear parse at its conversion markers.

    The result's category is the last conversion's target; earlier
    segments are reached through ``stem``.
    """
    segments: list[list] = [[]]
    convs = []
    for idx, p in enumerate(parse.pairs):
        if p[0] == "conv":
            if len(p) != 3 or not p[1] or not p[2]:
                raise LinearParseError(f"conversion marker at index {idx} must name a category and a suffix")
            convs.append((p[1], p[2]))
            segments.append([])
        else:
            segments[-1].append(p)
    if not any(a == "cat" for a, _ in segments[0]):
        raise LinearParseError("innermost segment has no category")
    fs = FeatureStructure(segments[0])
    for (cat, suffix), seg in zip(convs, segments[1:]):
        fs = FeatureStructure([("cat", cat), ("stem", fs), ("suffix", suffix), *seg])
    return fs


def linearize(fs: FeatureStructure) -> LinearParse:
    """Inverse of :func:`to_hierarchical` for structures it produced."""
    stem = fs.stem
    if stem is None:
        return LinearParse(tuple((k, v) for k, v in fs.items()))
    inner = linearize(stem)
    rest = tuple((k, v) for k, v in fs.items() if k not in ("cat", "stem", "suffix"))
    return LinearParse(inner.pairs + (("conv", fs.cat, fs.get("suffix")),) + rest)
