"""Feature structures, subsumption constraints and their text form."""

from __future__ import annotations

from typing import Iterable, Iterator, Optional, Union

from .terms import Pair, TermSyntaxError, TList, Term, format_atom, parse_term

Value = Union[str, "FeatureStructure"]


class FeatureStructure:
    """An immutable, ordered attribute-value structure.

    Values are atoms or nested structures.  Attribute order is kept for
    printing but ignored by equality and hashing.  Repeated attribute
    names are tolerated because some transcribed analyzer output has
    them; lookups return the first occurrence.
    """

    __slots__ = ("_pairs", "_key")

    def __init__(self, pairs: Iterable[tuple[str, Value]] = ()):
        pairs = tuple((str(k), v) for k, v in pairs)
        for k, v in pairs:
            if not isinstance(v, (str, FeatureStructure)):
                raise TypeError(f"bad value for {k!r}: {v!r}")
        self._pairs = pairs
        self._key = None

    @classmethod
    def of(cls, **attrs: Value) -> "FeatureStructure":
        return cls(attrs.items())

    def items(self) -> tuple[tuple[str, Value], ...]:
        return self._pairs

    def get(self, name: str, default=None):
        for k, v in self._pairs:
            if k == name:
                return v
        return default

    def getall(self, name: str) -> list[Value]:
        return [v for k, v in self._pairs if k == name]

    def __contains__(self, name: str) -> bool:
        return any(k == name for k, _ in self._pairs)

    def __iter__(self) -> Iterator[str]:
        return (k for k, _ in self._pairs)

    def __len__(self) -> int:
        return len(self._pairs)

    @property
    def cat(self) -> Optional[str]:
        return self.get("cat")

    @property
    def stem(self) -> Optional["FeatureStructure"]:
        s = self.get("stem")
        return s if isinstance(s, FeatureStructure) else None

    def innermost_root(self) -> Optional[str]:
        fs = self
        while fs.stem is not None:
            fs = fs.stem
        root = fs.get("root")
        return root if isinstance(root, str) else None

    def replace(self, name: str, value: Value) -> "FeatureStructure":
        out, done = [], False
        for k, v in self._pairs:
            if k == name and not done:
                out.append((k, value))
                done = True
            else:
                out.append((k, v))
        if not done:
            out.append((name, value))
        return FeatureStructure(out)

    def key(self) -> tuple:
        if self._key is None:
            self._key = tuple(sorted(
                (k, 1, v.key()) if isinstance(v, FeatureStructure) else (k, 0, v)
                for k, v in self._pairs
            ))
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, FeatureStructure) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __lt__(self, other: "FeatureStructure") -> bool:
        return self.key() < other.key()

    def to_text(self) -> str:
        parts = []
        for k, v in self._pairs:
            val = v.to_text() if isinstance(v, FeatureStructure) else format_atom(v)
            parts.append(f"{format_atom(k)}:{val}")
        return "[" + ",".join(parts) + "]"

    __str__ = to_text

    def __repr__(self) -> str:
        return f"FeatureStructure({self.to_text()})"

    @classmethod
    def from_term(cls, term: Term) -> "FeatureStructure":
        if not isinstance(term, TList):
            raise TermSyntaxError("feature structure must be a list", *_pos(term))
        pairs = []
        for item in term.items:
            if not isinstance(item, Pair):
                raise TermSyntaxError(f"expected attribute:value, got {item!r}", *_pos(item, term))
            v = item.value
            if isinstance(v, TList):
                v = cls.from_term(v)
            elif isinstance(v, Pair):
                raise TermSyntaxError("nested pair is not a value", item.line, item.col)
            pairs.append((item.key, v))
        return cls(pairs)

    @classmethod
    def parse(cls, text: str) -> "FeatureStructure":
        return cls.from_term(parse_term(text))


def _pos(term, fallback=None) -> tuple[int, int]:
    for t in (term, fallback):
        if isinstance(t, (Pair, TList)):
            return t.line, t.col
    return 0, 0


class _Marker:
    def __init__(self, name: str):
        self.name = name

    def __repr__(self) -> str:
        return self.name


# bare attribute inside a constraint, e.g. [stem]: attribute must be present
PRESENT = _Marker("PRESENT")

CValue = Union[str, "Constraint", _Marker]


class Constraint:
    """A partial structure matched against parses by subsumption.

    Besides ordinary ``attr:value`` items a constraint may contain
    ``stem:no`` (the parse must not be derived), a bare attribute name
    (the attribute must be present) and ``token:X`` (the surface of the
    token must be ``X``).
    """

    __slots__ = ("_items",)

    def __init__(self, items: Iterable[tuple[str, CValue]] = ()):
        self._items = tuple(items)

    def items(self) -> tuple[tuple[str, CValue], ...]:
        return self._items

    @property
    def token(self) -> Optional[str]:
        for k, v in self._items:
            if k == "token" and isinstance(v, str):
                return v
        return None

    def size(self) -> int:
        """Number of atomic conditions, used to rank specificity."""
        n = 0
        for _, v in self._items:
            n += v.size() if isinstance(v, Constraint) else 1
        return n

    @classmethod
    def from_fs(cls, fs: FeatureStructure) -> "Constraint":
        return cls(
            (k, cls.from_fs(v) if isinstance(v, FeatureStructure) else v)
            for k, v in fs.items()
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Constraint) and self._items == other._items

    def __hash__(self) -> int:
        return hash(self._items)

    def to_text(self) -> str:
        parts = []
        for k, v in self._items:
            if v is PRESENT:
                parts.append(format_atom(k))
            elif isinstance(v, Constraint):
                parts.append(f"{format_atom(k)}:{v.to_text()}")
            else:
                parts.append(f"{format_atom(k)}:{format_atom(v)}")
        return "[" + ",".join(parts) + "]"

    __str__ = to_text

    def __repr__(self) -> str:
        return f"Constraint({self.to_text()})"

    @classmethod
    def from_term(cls, term: Term) -> "Constraint":
        if not isinstance(term, TList):
            raise TermSyntaxError("constraint must be a list", *_pos(term))
        items = []
        for item in term.items:
            if isinstance(item, str):
                items.append((item, PRESENT))
            elif isinstance(item, Pair):
                v = item.value
                if isinstance(v, TList):
                    v = cls.from_term(v)
                elif isinstance(v, Pair):
                    raise TermSyntaxError("nested pair is not a value", item.line, item.col)
                items.append((item.key, v))
            else:
                raise TermSyntaxError("unexpected list in constraint", *_pos(item, term))
        return cls(items)

    @classmethod
    def parse(cls, text: str) -> "Constraint":
        return cls.from_term(parse_term(text))


def subsumes(c: Constraint, p: FeatureStructure, surface: Optional[str] = None) -> bool:
    """True when every condition of ``c`` holds in ``p``.

    ``token`` conditions need ``surface``; without one they fail.
    """
    for name, want in c.items():
        if name == "token":
            if surface is None or surface != want:
                return False
            continue
        if want is PRESENT:
            if name not in p:
                return False
            continue
        if name == "stem" and want == "no":
            if "stem" in p:
                return False
            continue
        have = p.getall(name)
        if not have:
            return False
        if isinstance(want, Constraint):
            if not any(isinstance(h, FeatureStructure) and subsumes(want, h) for h in have):
                return False
        elif not any(h == want for h in have):
            return False
    return True
