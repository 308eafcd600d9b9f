"""Sentences about graphs: vertex and set quantification, text grammar,
brute-force model checking, and the named sentence constructions."""

from .syntax import (
    Adj,
    And,
    Eq,
    Exists,
    Forall,
    Implies,
    Member,
    Not,
    Or,
    Sentence,
    and_all,
    free_variables,
    is_first_order,
    is_set_var,
    or_all,
    quantifier_rank,
    serialize,
)
from .parser import parse, load_sentence, SentenceSyntaxError, UnboundVariableError
from .semantics import check, CheckLimits
from . import formulas

__all__ = [
    "Adj",
    "And",
    "Eq",
    "Exists",
    "Forall",
    "Implies",
    "Member",
    "Not",
    "Or",
    "Sentence",
    "and_all",
    "or_all",
    "free_variables",
    "is_first_order",
    "is_set_var",
    "quantifier_rank",
    "serialize",
    "parse",
    "load_sentence",
    "SentenceSyntaxError",
    "UnboundVariableError",
    "check",
    "CheckLimits",
    "formulas",
]
