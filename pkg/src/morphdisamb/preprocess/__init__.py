"""Preprocessing: tokenization, collocations, unknown words, conversion and projection."""

from .convert import LinearParse, LinearParseError, linearize, parse_linear, to_hierarchical
from .project import ProjectionTemplate, TemplateError, load_template, project, project_corpus

__all__ = [
    "LinearParse", "LinearParseError", "linearize", "parse_linear", "to_hierarchical",
    "ProjectionTemplate", "TemplateError", "load_template", "project", "project_corpus",
]
