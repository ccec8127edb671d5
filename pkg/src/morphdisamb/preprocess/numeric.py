"""Analysis of numeric tokens such as ``32.542.432'nin`` or ``%7'sinin``.

Suffixes on numbers follow the pronunciation of the number, so the
suffix is parsed against the last spoken number word.
"""

from __future__ import annotations

import re
from typing import Optional

from .convert import LinearParse
from .unknown import SuffixInventory, chain_to_pairs, load_inventory, realize, suffix_analyses

UNITS = ["sIfIr", "bir", "iki", "UC", "dOrt", "beS", "altI", "yedi", "sekiz", "dokuz"]
TENS = ["", "on", "yirmi", "otuz", "kIrk", "elli", "altmIS", "yetmiS", "seksen", "doksan"]
GROUPS = ["", "bin", "milyon", "milyar", "trilyon"]

_INT = r"\d{1,3}(?:\.\d{3})+|\d+"
PATTERNS = [
    ("percentage", re.compile(rf"%(?P<num>\d+(?:[.,]\d+)?)")),
        ("time", re.compile(r"(?P<num>(?:[01]?\d|2[0-3]):[0-5]\d)(?![\d:/])")),
    ("ratio", re.compile(r"(?P<num>\d+[:/]\d+)")),
    ("ordinal", re.compile(rf"(?P<num>(?:{_INT})\.)")),
    ("real", re.compile(r"(?P<num>\d+,\d+|\d+\.(?!\d{3}(?:\D|$))\d+)")),
    ("cardinal", re.compile(rf"(?P<num>{_INT})")),
]
SUFFIX = re.compile(r"'?(?P<suffix>[A-Za-z]*)\Z")


def last_word(digits: str) -> str:
    """The last word of the Turkish reading of an integer."""
    digits = digits.lstrip("0") or "0"
    if digits == "0":
        return UNITS[0]
    groups = []
    while digits:
        groups.insert(0, int(digits[-3:]))
        digits = digits[:-3]
    last = max(i for i, g in enumerate(groups) if g)
    g = groups[last]
    if last != len(groups) - 1:
        return GROUPS[len(groups) - 1 - last]
    if g % 10:
        return UNITS[g % 10]
    if g % 100:
        return TENS[(g % 100) // 10]
    return "yUz"


def _ints(text: str) -> list:
    return re.findall(r"\d+", text.replace(".", "") if re.fullmatch(_INT, text) else text)


def readings(kind: str, num: str) -> list:
    """Last spoken words for a numeric body; ratios have two readings."""
    if kind == "cardinal":
        return [last_word(num.replace(".", ""))]
    if kind == "ordinal":
        w = last_word(num.rstrip(".").replace(".", ""))
        return [w + realize("(H)ncH", w)]
    if kind == "ratio":
        a, b = re.split(r"[:/]", num)
        return [last_word(b), last_word(a)]
    return [last_word(_ints(num)[-1])]


def match_numeric(token: str) -> Optional[tuple]:
    """Return ``(kind, number, suffix, apostrophe)`` when ``token`` is numeric."""
    for kind, pat in PATTERNS:
        m = pat.match(token)
        if not m:
            continue
        rest = token[m.end():]
        sm = SUFFIX.match(rest)
        if sm is None:
            continue
        num = m.group("num")
        if kind == "real" and re.fullmatch(_INT, num):
            continue
        return kind, num, sm.group("suffix"), rest.startswith("'")
    return None


def analyze_numeric(token: str, inv: Optional[SuffixInventory] = None) -> tuple:
    """Parses for a numeric token and whether its suffix was understood.

    Returns ``(parses, ok)``; ``ok`` is false when a suffix was present
    but could not be parsed, in which case only the bare reading is given.
    """
    m = match_numeric(token)
    if m is None:
        return [], False
    inv = inv or load_inventory()
    kind, num, suffix, apos = m
    root = num + ("'" if apos else "")
    head = [("cat", "adj"), ("type", kind), ("root", root)]
    if not suffix:
        return _bare(kind, head), True
    chains = []
    for word in readings(kind, num):
        for c in suffix_analyses(word, suffix, inv):
            if c not in chains:
                chains.append(c)
    if not chains:
        return _bare(kind, head), False
    return [LinearParse(tuple(head + [("conv", "noun", "none")] + chain_to_pairs(c))) for c in chains], True


def _bare(kind: str, head: list) -> list:
    noun = [("conv", "noun", "none"), ("agr", "3SG")]
    if kind != "cardinal":
        noun += [("poss", "NONE"), ("case", "nom")]
    return [LinearParse(tuple(head)), LinearParse(tuple(head + noun))]
