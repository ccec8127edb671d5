from pathlib import Path

import pytest
from hypothesis import strategies as st

from morphdisamb.corpus import Sentence, Token
from morphdisamb.fs import FeatureStructure

FIXTURES = Path(__file__).parent / "fixtures"


def fs(text: str) -> FeatureStructure:
    return FeatureStructure.parse(text)


def sent(*words) -> Sentence:
    """``sent(("w", ["[cat:noun]", ...]), ...)`` with markers added."""
    return Sentence.from_words(Token(w, tuple(fs(p) for p in ps)) for w, ps in words)


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


# a small parse space so random corpora share contexts often
ATOMS = ["noun", "verb", "adj", "pronoun"]
CASES = ["nom", "acc", "gen"]


@st.composite
def parses(draw):
    cat = draw(st.sampled_from(ATOMS))
    pairs = [("cat", cat)]
    if cat in ("noun", "pronoun"):
        pairs.append(("case", draw(st.sampled_from(CASES))))
        if draw(st.booleans()):
            pairs.append(("poss", draw(st.sampled_from(["NONE", "3SG"]))))
    if cat == "verb" and draw(st.integers(0, 3)) == 0:
        pairs.insert(1, ("stem", FeatureStructure([("cat", "noun"), ("case", "nom")])))
        pairs.insert(2, ("suffix", "none"))
    return FeatureStructure(pairs)


@st.composite
def tokens(draw, max_parses=3):
    ps = draw(st.lists(parses(), min_size=1, max_size=max_parses, unique=True))
    return Token(draw(st.sampled_from(["a", "b", "c"])), tuple(ps))


@st.composite
def sentences(draw, max_len=8, max_parses=3):
    return Sentence.from_words(draw(st.lists(tokens(max_parses), min_size=1, max_size=max_len)))


@st.composite
def corpora(draw, max_sents=5, max_len=8, max_parses=3):
    return draw(st.lists(sentences(max_len, max_parses), min_size=1, max_size=max_sents))
