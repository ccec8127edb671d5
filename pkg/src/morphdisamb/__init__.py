"""Morphological disambiguation with constraint rules, rule learning and corpus statistics."""

from .corpus import Corpus, CorpusFormatError, Sentence, Token, parse_corpus, read_corpus, serialize_corpus, write_corpus
from .fs import Constraint, FeatureStructure, subsumes
from .rules import ConstraintRule, RuleFormatError, apply_ruleset, match_context, parse_rules, read_rules, serialize_rules

__version__ = "0.1.0"

__all__ = [
    "Corpus", "CorpusFormatError", "Sentence", "Token", "parse_corpus", "read_corpus",
    "serialize_corpus", "write_corpus", "Constraint", "FeatureStructure", "subsumes",
    "ConstraintRule", "RuleFormatError", "apply_ruleset", "match_context", "parse_rules",
    "read_rules", "serialize_rules",
]
