"""Guessing nominal analyses for words the analyzer does not know.

Any prefix of the word may be the root; the remainder must be a
sequence of nominal suffixes (plural, possessive, case, then an
optional relative -ki that may itself be nominalized again) realized
under vowel harmony and buffer rules.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import product
from pathlib import Path
from typing import Optional

from .convert import LinearParse

VOWELS = "aeIioOuU"
BACK = set("aIou")
ROUND = set("oOuU")
VOICELESS = set("CfhkpsSt")
LETTERS = re.compile(r"[A-Za-z]+\Z")
THIRD_PERSON = {"3SG", "3PL"}
CASES = ("nom", "acc", "dat", "loc", "abl", "gen", "ins")


@dataclass(frozen=True)
class Suffix:
    slot: str
    form: str
    feature: tuple
    pron: bool = False


class SuffixInventory:
    def __init__(self, entries):
        self.entries = tuple(entries)
        for e in self.entries:
            if not e.feature:
                raise ValueError(f"suffix {e.form!r} sets no feature")

    def slot(self, name: str, pron: Optional[bool] = None):
        return [e for e in self.entries if e.slot == name and (pron is None or e.pron == pron)]

    @classmethod
    def parse(cls, text: str) -> "SuffixInventory":
        entries = []
        for n, raw in enumerate(text.splitlines(), 1):
            line = raw.split("%", 1)[0].split()
            if not line:
                continue
            if len(line) < 3 or "=" not in line[2]:
                raise ValueError(f"line {n}: expected 'slot form feature=value'")
            attr, value = line[2].split("=", 1)
            entries.append(Suffix(line[0], line[1], (attr, value), "pron" in line[3:]))
        return cls(entries)


def load_inventory(path=None) -> SuffixInventory:
    if path is None:
        text = resources.files(__package__).joinpath("data/nominal.suffixes").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return SuffixInventory.parse(text)


def last_vowel(s: str) -> Optional[str]:
    for ch in reversed(s):
        if ch in VOWELS:
            return ch
    return None


def realize(form: str, before: str, flip: bool = False) -> Optional[str]:
    """Spell out a suffix form after the string ``before``.

    ``flip`` swaps front and back harmony, for foreign words whose
    spelling does not show their pronunciation.
    """
    out = before
    i = 0
    while i < len(form):
        ch = form[i]
        optional = ch == "("
        if optional:
            ch = form[i + 1]
            i += 3
        else:
            i += 1
        v = last_vowel(out)
        if v is None:
            return None
        back = (v in BACK) != flip
        if ch == "A":
            ch = "a" if back else "e"
        elif ch == "H":
            ch = ("u" if back else "U") if v in ROUND else ("I" if back else "i")
        elif ch == "D":
            ch = "t" if out[-1] in VOICELESS else "d"
        if optional:
            ends_vowel = out[-1] in VOWELS
            if (ch in VOWELS) == ends_vowel:
                continue
        out += ch
    return out[len(before):]


def _sequences(inv: SuffixInventory):
    """Yield (forms, features) for every morphotactically valid chain."""
    agrs = [None] + inv.slot("agr")
    posses = [None] + inv.slot("poss")
    rels = inv.slot("rel")
    for agr, poss in product(agrs, posses):
        pron = poss is not None and poss.feature[1] in THIRD_PERSON
        for case in _case_options(inv, pron):
            head = [x for x in (agr, poss, case) if x is not None]
            feats = {"agr": agr.feature[1] if agr else "3SG",
                     "poss": poss.feature[1] if poss else "NONE",
                     "case": case.feature[1] if case else "nom"}
            yield head, [feats]
            if case is not None and case.feature[1] in ("loc", "gen"):
                for rel in rels:
                    yield head + [rel], [feats, "rel"]
                    for agr2 in [None] + inv.slot("agr"):
                        for case2 in _case_options(inv, agr2 is None):
                            tail = [x for x in (agr2, case2) if x is not None]
                            f2 = {"agr": agr2.feature[1] if agr2 else "3SG", "poss": "NONE",
                                  "case": case2.feature[1] if case2 else "nom"}
                            yield head + [rel] + tail, [feats, "rel", f2]


def _case_options(inv: SuffixInventory, pron: bool):
    opts = [None]
    pron_cases = {e.feature[1] for e in inv.slot("case", pron=True)}
    for e in inv.slot("case"):
        if pron and e.feature[1] in pron_cases:
            if e.pron:
                opts.append(e)
        elif not e.pron:
            opts.append(e)
    return opts


@lru_cache(maxsize=4096)
def _endings(inv: SuffixInventory, tail: str, flip: bool) -> tuple:
    """All (surface, feature chain) pairs after a root ending in ``tail``."""
    out = []
    for forms, feats in _sequences(inv):
        s, ok = tail, True
        for f in forms:
            r = realize(f.form, s, flip)
            if r is None:
                ok = False
                break
            s += r
        if ok:
            out.append((s[len(tail):], tuple(
                tuple(sorted(f.items())) if isinstance(f, dict) else f for f in feats)))
    return tuple(out)


def _tail(root: str) -> str:
    """The part of a root that conditions suffixation: last vowel onwards."""
    for i in range(len(root) - 1, -1, -1):
        if root[i] in VOWELS:
            return root[i:]
    return root


def suffix_analyses(stem: str, suffix: str, inv: SuffixInventory, flip: bool = False) -> list:
    """Feature chains whose realization after ``stem`` spells ``suffix``."""
    if last_vowel(stem) is None:
        found = []
        for fl in (False, True):
            found += [f for s, f in _endings(inv, "a" if fl else "e", False) if s == suffix]
        return _unique(found)
    return _unique(f for s, f in _endings(inv, _tail(stem), flip) if s == suffix)


def _unique(xs):
    seen, out = set(), []
    for x in xs:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def chain_to_pairs(chain) -> list:
    """Linear feature pairs for a feature chain, after the root's own pairs."""
    pairs = []
    for step in chain:
        if step == "rel":
            pairs.append(("conv", "adj", "rel"))
            continue
        f = dict(step)
        if pairs:
            pairs.append(("conv", "noun", "none"))
        pairs += [("agr", f["agr"]), ("poss", f["poss"]), ("case", f["case"])]
    return pairs


def _noun(root: str, chain, proper: bool) -> LinearParse:
    pairs = [("cat", "noun"), ("root", root)]
    rest = chain_to_pairs(chain)
    head, tail = rest[:3], rest[3:]
    pairs += head[:2]
    if proper:
        pairs.append(("type", "proper"))
    pairs += head[2:] + tail
    return LinearParse(tuple(pairs))


BARE = ((("agr", "3SG"), ("case", "nom"), ("poss", "NONE")),)


def guess_unknown(surface: str, inv: Optional[SuffixInventory] = None) -> list:
    """Hypothesize nominal parses for ``surface``.

    Returns an empty list when the word has no letters to work with.
    """
    inv = inv or load_inventory()
    word = surface.replace("'", "")
    if not word or not LETTERS.match(word):
        return []
    if "'" in surface:
        root, _, suffix = surface.partition("'")
        if not root or not LETTERS.match(root) or "'" in suffix:
            return [_noun(surface, BARE, True)]
        splits = [(root, suffix)]
        proper = True
    else:
        splits = [(surface[:k], surface[k:]) for k in range(len(surface), 0, -1)]
        proper = False

    def run(flip: bool) -> list:
        found = []
        for root, suffix in splits:
            if not suffix:
                continue
            for chain in suffix_analyses(root, suffix, inv, flip):
                found.append(_noun(root, chain, proper))
        return found

    bare = _noun(splits[0][0] if proper else surface, BARE, proper)
    found = run(False) or run(True)
    return _unique([bare] + found)
