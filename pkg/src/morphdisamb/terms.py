"""Reader and writer for the bracketed term syntax used by corpus and rule files.

The syntax is a small Prolog-like subset::

    term   := atom | list | pair
    list   := '[' [term (',' term)*] ']'
    pair   := atom ':' term
    record := term '.'

Atoms are either bare (letters, digits, ``_``, ``@``, ``#``, ``-`` and
non-ASCII letters) or single-quoted.  Inside quotes ``\\'`` and ``''``
both denote a literal quote and ``\\\\`` a backslash.  ``%`` starts a
comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union


class TermSyntaxError(ValueError):
    """Raised for malformed input; carries a line and column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Pair:
    key: str
    value: "Term"
    line: int = 0
    col: int = 0


@dataclass(frozen=True)
class TList:
    items: tuple
    line: int = 0
    col: int = 0


Term = Union[str, Pair, TList]

_BARE = re.compile(r"[^\s\[\],:.'%\"()]+")
_CANONICAL_BARE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


@dataclass
class Comment:
    text: str
    line: int
    own_line: bool


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.line_start = 0
        self.comments: list[Comment] = []
        self._last_token_line = 0

    @property
    def col(self) -> int:
        return self.pos - self.line_start + 1

    def error(self, msg: str) -> TermSyntaxError:
        return TermSyntaxError(msg, self.line, self.col)

    def skip(self) -> None:
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            if ch == "\n":
                self.pos += 1
                self.line += 1
                self.line_start = self.pos
            elif ch.isspace():
                self.pos += 1
            elif ch == "%":
                end = text.find("\n", self.pos)
                if end < 0:
                    end = len(text)
                body = text[self.pos + 1:end].strip()
                own = self._last_token_line != self.line
                self.comments.append(Comment(body, self.line, own))
                self.pos = end
            else:
                break

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip()
        if self.pos >= len(self.text):
            return ""
        return self.text[self.pos]

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            raise self.error(f"expected {ch!r}, found {found!r}")
        self.pos += 1
        self._last_token_line = self.line

    def atom(self) -> str:
        self.skip()
        text = self.text
        if self.pos >= len(text):
            raise self.error("unexpected end of input")
        if text[self.pos] == "'":
            start_line, start_col = self.line, self.col
            self.pos += 1
            out = []
            while True:
                if self.pos >= len(text):
                    raise TermSyntaxError("unterminated quoted atom", start_line, start_col)
                ch = text[self.pos]
                if ch == "\\" and self.pos + 1 < len(text):
                    out.append(text[self.pos + 1])
                    self.pos += 2
                elif ch == "'":
                    if text.startswith("''", self.pos):
                        out.append("'")
                        self.pos += 2
                    else:
                        self.pos += 1
                        break
                elif ch == "\n":
                    raise TermSyntaxError("newline inside quoted atom", start_line, start_col)
                else:
                    out.append(ch)
                    self.pos += 1
            self._last_token_line = self.line
            return "".join(out)
        m = _BARE.match(text, self.pos)
        if not m:
            raise self.error(f"unexpected character {text[self.pos]!r}")
        self.pos = m.end()
        self._last_token_line = self.line
        return m.group()


def _term(lx: _Lexer) -> Term:
    ch = lx.peek()
    line, col = lx.line, lx.col
    if ch == "[":
        lx.expect("[")
        items = []
        if lx.peek() == "]":
            lx.expect("]")
            return TList((), line, col)
        while True:
            items.append(_term(lx))
            nxt = lx.peek()
            if nxt == ",":
                lx.expect(",")
                continue
            lx.expect("]")
            return TList(tuple(items), line, col)
    name = lx.atom()
    if lx.peek() == ":":
        lx.expect(":")
        return Pair(name, _term(lx), line, col)
    return name


def iter_records(text: str) -> Iterator[tuple[Term, list[Comment]]]:
    """Yield ``(term, comments)`` for every ``.``-terminated record.

    ``comments`` holds the comments seen since the previous record,
    including a trailing comment on the record's final line.
    """
    lx = _Lexer(text)
    while True:
        if lx.at_end():
            return
        term = _term(lx)
        lx.expect(".")
        end_line = lx.line
        # pull in a trailing comment that sits on the same line
        lx.skip()
        pending = lx.comments
        lx.comments = []
        keep = []
        for c in pending:
            if c.line > end_line and c.own_line:
                lx.comments.append(c)
            else:
                keep.append(c)
        yield term, keep


def parse_term(text: str) -> Term:
    """Parse a single term with no terminating period."""
    lx = _Lexer(text)
    term = _term(lx)
    if not lx.at_end():
        raise lx.error("trailing input after term")
    return term


def format_atom(atom: str) -> str:
    if atom in ("@", "#") or _CANONICAL_BARE.match(atom):
        return atom
    return "'" + atom.replace("\\", "\\\\").replace("'", "\\'") + "'"


def format_term(term: Term) -> str:
    if isinstance(term, str):
        return format_atom(term)
    if isinstance(term, Pair):
        return f"{format_atom(term.key)}:{format_term(term.value)}"
    return "[" + ",".join(format_term(t) for t in term.items) + "]"
