"""Splitting raw text into tokens and sentences."""

from __future__ import annotations

import re

_L = r"[^\W\d_]"            # any letter, so UTF-8 Turkish text tokenizes too
_UP = r"[A-ZÇĞİÖŞÜ]"
_LO = r"[a-zçğıöşü]"
_NUMBER = rf"%?\d+(?:[.,:/]\d+)*(?:\.(?:'?{_L}+)?|'{_L}+)?"
# a capitalized word of any length followed by a period is far more often
# a sentence end than a title, so titles are capped at four letters
_ABBREV = rf"(?:(?:{_L}\.){{2,}}|{_UP}{_LO}{{1,3}}\.|{_LO}{{1,2}}\.)(?:'{_L}+)?"
_WORD = rf"{_L}+(?:'{_L}+)?"

TOKEN = re.compile(
    rf"(?P<num>{_NUMBER})(?![^\W_])"
    rf"|(?P<abbr>{_ABBREV})(?!{_L}|\.)"
    rf"|(?P<word>{_WORD})"
    r"|(?P<punct>\.\.\.|[^\w\s]|_)"
)
_GLUED = re.compile(r"[^\W_]+")
SENTENCE_END = frozenset({".", "?", "!", "..."})


def tokenize(raw: str) -> list[str]:
    """Split ``raw`` into surface tokens.

    Numbers keep an apostrophe suffix, abbreviations keep their
    periods and every other punctuation mark is a token of its own.
    """
    out = []
    for chunk in raw.split():
        pos = 0
        while pos < len(chunk):
            m = TOKEN.match(chunk, pos)
            if m is None:  # a digit run glued to letters, e.g. "3x"
                m = _GLUED.match(chunk, pos)
            out.append(m.group())
            pos = m.end()
    return out


def split_sentences(tokens: list[str]) -> list[list[str]]:
    sents, cur = [], []
    for t in tokens:
        cur.append(t)
        if t in SENTENCE_END:
            sents.append(cur)
            cur = []
    if cur:
        sents.append(cur)
    return sents
