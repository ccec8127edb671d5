"""Packing multi-word groups into single tokens.

The database has three parts.  Non-lexicalized entries are patterns
over the analyses of consecutive tokens, with ``_R`` standing for a
shared root and ``_W`` for a shared surface word.  Fixed lexicalized
entries are word sequences that take no suffixes.  Inflectable entries
are word sequences whose last word carries the inflection of the
whole group.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from .convert import LinearParse, normalize_value, parse_linear
from .numeric import analyze_numeric, match_numeric

VARIABLES = ("_R", "_W")
SECTIONS = ("non-lexicalized", "fixed", "inflectable")
MONTHS = ("ocak", "Subat", "mart", "nisan", "mayIs", "haziran", "temmuz",
          "aGustos", "eylUl", "ekim", "kasIm", "aralIk")
PERCENT_WORD = "yUzde"

_FEATURE = re.compile(r"\[([^\[\]]*)\]")


class CollocationFormatError(ValueError):
    pass


@dataclass
class RawToken:
    """A token between analysis and format conversion."""

    surface: str
    parses: list = field(default_factory=list)
    flags: frozenset = frozenset()


@dataclass(frozen=True)
class Pattern:
    tokens: tuple      # each a tuple of (ATTR, VALUE) as written
    output: str

    def pattern_text(self) -> str:
        return " ".join("[" + "=".join(f) + "]" for tok in self.tokens for f in tok)


@dataclass
class CollocationDb:
    non_lexicalized: list = field(default_factory=list)
    fixed: list = field(default_factory=list)          # (words, output template)
    inflectable: list = field(default_factory=list)    # word tuples

    def __post_init__(self):
        self._index()

    def _index(self):
        self._fixed = {}
        for words, out in self.fixed:
            self._fixed.setdefault(words, out)
        self._infl = set(self.inflectable)
        lens = [len(w) for w, _ in self.fixed] + [len(w) for w in self.inflectable]
        lens += [len(p.tokens) for p in self.non_lexicalized]
        self.max_len = max(lens, default=1)

    @classmethod
    def parse(cls, text: str) -> "CollocationDb":
        db = cls()
        section = None
        lines = [(n, l.rstrip("\n")) for n, l in enumerate(text.splitlines(), 1)]
        pending = None
        for n, line in lines:
            if not line.strip() or line.startswith("%"):
                continue
            head = line.strip()
            if head.startswith("[") and head.endswith("]") and head[1:-1] in SECTIONS:
                section = head[1:-1]
                continue
            if section is None:
                raise CollocationFormatError(f"line {n}: entry outside a section")
            if section == "non-lexicalized":
                if pending is None:
                    pending = (n, _parse_pattern(head, n))
                else:
                    _check_template(head, n)
                    db.non_lexicalized.append(Pattern(pending[1], head))
                    pending = None
            elif section == "fixed":
                words, sep, out = line.partition("\t")
                if not sep:
                    raise CollocationFormatError(f"line {n}: expected words<TAB>template")
                _check_template(out.strip(), n)
                db.fixed.append((tuple(words.split()), out.strip()))
            else:
                db.inflectable.append(tuple(head.split()))
        if pending is not None:
            raise CollocationFormatError(f"line {pending[0]}: pattern without output line")
        db._index()
        return db

    def to_text(self) -> str:
        out = ["[non-lexicalized]"]
        for p in self.non_lexicalized:
            out += [p.pattern_text(), p.output]
        out += ["", "[fixed]"]
        out += [" ".join(w) + "\t" + t for w, t in self.fixed]
        out += ["", "[inflectable]"]
        out += [" ".join(w) for w in self.inflectable]
        return "\n".join(out) + "\n"


def _parse_pattern(line: str, n: int) -> tuple:
    tokens, cur = [], []
    for m in _FEATURE.finditer(line):
        parts = tuple(x.strip() for x in m.group(1).split("="))
        if len(parts) < 2:
            raise CollocationFormatError(f"line {n}: bad feature [{m.group(1)}]")
        if parts[0] in ("ROOT", "WORD") and cur:
            tokens.append(tuple(cur))
            cur = []
        cur.append(parts)
    if cur:
        tokens.append(tuple(cur))
    if not tokens:
        raise CollocationFormatError(f"line {n}: empty pattern")
    return tuple(tokens)


def _check_template(text: str, n: int) -> None:
    if "%s" not in text:
        raise CollocationFormatError(f"line {n}: output template lacks %s")


def load_collocations(path=None) -> CollocationDb:
    if path is None:
        text = resources.files(__package__).joinpath("data/collocations.txt").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return CollocationDb.parse(text)


# --- matching ---------------------------------------------------------------

def _feature_holds(feat: tuple, parse: LinearParse, surface: str, env: dict) -> Optional[dict]:
    attr, value = feat[0].lower(), feat[1:]
    if attr == "conv":
        marker = ("conv",) + tuple(v.lower() for v in value)
        return env if parse.has(marker) else None
    value = value[0]
    if attr == "word":
        have = [surface]
    else:
        have = [p[1] for p in parse.pairs if p[0] == attr and len(p) == 2]
    if value in VARIABLES:
        if value in env:
            return env if env[value] in have else None
        if not have:
            return None
        return {**env, value: have[0]}
    want = normalize_value(attr, value)
    return env if want in have else None


def _match_nonlex(pat: Pattern, toks: Sequence[RawToken], env: dict) -> bool:
    if not pat.tokens:
        return True
    feats, tok = pat.tokens[0], toks[0]
    for parse in tok.parses:
        e = env
        for f in feats:
            e = _feature_holds(f, parse, tok.surface, e)
            if e is None:
                break
        if e is not None and _match_nonlex(Pattern(pat.tokens[1:], pat.output), toks[1:], e):
            return True
    return False


def _render(template: str, surface: str) -> LinearParse:
    return parse_linear(template.replace("%s", surface))


def _strip_apos(root: str) -> str:
    return root[:-1] if root.endswith("'") else root


def _inflected(words: tuple, toks: Sequence[RawToken]) -> Optional[RawToken]:
    last, head = words[-1], " ".join(words[:-1])
    keep = [p for p in toks[-1].parses if p.root is not None and _strip_apos(p.root) == last]
    if not keep:
        return None
    parses = [p.replace_root(f"{head} {p.root}") for p in keep]
    return RawToken(" ".join(t.surface for t in toks), parses, frozenset({"collocation"}))


def _numeric_span(toks: Sequence[RawToken], months: Sequence[str]) -> Optional[tuple]:
    """Dates, percentages after the percent word, and numeric ranges."""
    s = [t.surface for t in toks]
    # day month year, day month, month year
    for shape in (("d", "m", "y"), ("d", "m"), ("m", "y")):
        if len(s) < len(shape):
            continue
        if all(_date_part(kind, s[k], months, k == len(shape) - 1) for k, kind in enumerate(shape)):
            return len(shape), _date_token(toks[: len(shape)])
    if len(s) >= 2 and s[0] == PERCENT_WORD:
        m = match_numeric(s[1])
        if m and m[0] in ("cardinal", "real"):
            return 2, _percent_token(toks[:2])
    if len(s) >= 3 and s[1] == "-":
        a, b = match_numeric(s[0]), match_numeric(s[2])
        if a and b and not a[2] and not b[2] and a[0] == b[0] and a[0] in ("cardinal", "real"):
            root = f"{a[1]}-{b[1]}"
            lp = LinearParse((("cat", "adj"), ("type", "range"), ("root", root)))
            return 3, RawToken(" ".join(s[:3]), [lp], frozenset({"collocation"}))
    return None


def _date_part(kind: str, word: str, months, last: bool) -> bool:
    if kind == "m":
        return word in months
    m = re.fullmatch(r"(\d+)('[A-Za-z]+)?", word)
    if not m or (m.group(2) and not last):
        return False
    v = int(m.group(1))
    return 1 <= v <= 31 if kind == "d" else len(m.group(1)) in (3, 4)


def _date_token(toks) -> RawToken:
    surface = " ".join(t.surface for t in toks)
    last = toks[-1].surface
    body, _, suffix = surface.partition("'")
    root = body + ("'" if suffix else "")
    cases = [("3SG", "NONE", "nom")]
    if suffix:
        parses, ok = analyze_numeric(last)
        found = []
        for p in parses:
            if p.has(("conv", "noun", "none")) and p.get("case"):
                found.append((p.pairs[-3][1], p.pairs[-2][1], p.pairs[-1][1]))
        cases = found or cases
    out = [LinearParse((("cat", "date"), ("root", root), ("type", "temp1"),
                        ("agr", a), ("poss", po), ("case", c))) for a, po, c in cases]
    return RawToken(surface, out, frozenset({"collocation"}))


def _percent_token(toks) -> RawToken:
    surface = f"{toks[0].surface} {toks[1].surface}"
    parses, _ = analyze_numeric(toks[1].surface)
    suffixed = bool(match_numeric(toks[1].surface)[2])
    out = []
    for p in parses:
        pairs = [("cat", "adj"), ("root", f"{toks[0].surface} {p.root}"), ("type", "percentage")]
        tail = list(p.pairs[3:])
        if tail and not suffixed:
            continue
        pairs += tail
        if LinearParse(tuple(pairs)) not in out:
            out.append(LinearParse(tuple(pairs)))
    return RawToken(surface, out, frozenset({"collocation"}))


def match_at(toks: Sequence[RawToken], i: int, db: CollocationDb,
             months: Sequence[str] = MONTHS) -> Optional[tuple]:
    """Longest group starting at ``i``: ``(length, packed token)`` or None.

    On equal length a lexicalized entry beats a pattern.
    """
    best = None
    for k in range(min(db.max_len, len(toks) - i), 1, -1):
        span = toks[i:i + k]
        words = tuple(t.surface for t in span)
        if words in db._fixed:
            surface = " ".join(words)
            best = (k, RawToken(surface, [_render(db._fixed[words], surface)], frozenset({"collocation"})))
            break
        if words[:-1] in {w[:-1] for w in db._infl if len(w) == k}:
            for w in db._infl:
                if len(w) == k and w[:-1] == words[:-1]:
                    packed = _inflected(w, span)
                    if packed is not None:
                        best = (k, packed)
                        break
            if best:
                break
        for pat in db.non_lexicalized:
            if len(pat.tokens) == k and _match_nonlex(pat, span, {}):
                surface = " ".join(words)
                best = (k, RawToken(surface, [_render(pat.output, surface)], frozenset({"collocation"})))
                break
        if best:
            break
    num = _numeric_span(toks[i:], months)
    if num and (best is None or num[0] > best[0]):
        best = num
    return best


def recognize_collocations(toks: Sequence[RawToken], db: CollocationDb,
                           months: Sequence[str] = MONTHS) -> list:
    """Replace groups left to right, always taking the longest match."""
    out, i = [], 0
    while i < len(toks):
        m = match_at(toks, i, db, months)
        if m is None:
            out.append(toks[i])
            i += 1
        else:
            out.append(m[1])
            i += m[0]
    return out
