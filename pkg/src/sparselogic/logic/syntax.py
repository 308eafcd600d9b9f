"""Abstract syntax for graph sentences.

Variables are plain strings.  The first character decides the namespace:
lowercase names range over vertices, uppercase names over vertex sets.
Atoms are equality x = y and adjacency x ~ y between vertex variables, and
membership x in S.  Connectives: ! & | ->.  Quantifiers bind either kind
of variable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

Sentence = Union["Eq", "Adj", "Member", "Not", "And", "Or", "Implies", "Forall", "Exists"]


def is_set_var(name: str) -> bool:
    return name[0].isupper()


def _require_vertex(name: str) -> None:
    if is_set_var(name):
        raise ValueError(f"{name!r} is a set variable where a vertex variable is required")


def _require_set(name: str) -> None:
    if not is_set_var(name):
        raise ValueError(f"{name!r} is a vertex variable where a set variable is required")


@dataclass(frozen=True)
class Eq:
    left: str
    right: str

    def __post_init__(self):
        _require_vertex(self.left)
        _require_vertex(self.right)


@dataclass(frozen=True)
class Adj:
    left: str
    right: str

    def __post_init__(self):
        _require_vertex(self.left)
        _require_vertex(self.right)


@dataclass(frozen=True)
class Member:
    element: str
    set_var: str

    def __post_init__(self):
        _require_vertex(self.element)
        _require_set(self.set_var)


@dataclass(frozen=True)
class Not:
    body: Sentence


@dataclass(frozen=True)
class And:
    left: Sentence
    right: Sentence


@dataclass(frozen=True)
class Or:
    left: Sentence
    right: Sentence


@dataclass(frozen=True)
class Implies:
    left: Sentence
    right: Sentence


@dataclass(frozen=True)
class Forall:
    var: str
    body: Sentence


@dataclass(frozen=True)
class Exists:
    var: str
    body: Sentence


def and_all(parts: Iterable[Sentence]) -> Sentence:
    """Left-folded conjunction; evaluation short-circuits left to right."""
    parts = list(parts)
    if not parts:
        raise ValueError("empty conjunction")
    node = parts[0]
    for p in parts[1:]:
        node = And(node, p)
    return node


def or_all(parts: Iterable[Sentence]) -> Sentence:
    parts = list(parts)
    if not parts:
        raise ValueError("empty disjunction")
    node = parts[0]
    for p in parts[1:]:
        node = Or(node, p)
    return node


def iff(a: Sentence, b: Sentence) -> Sentence:
    return And(Implies(a, b), Implies(b, a))


def free_variables(s: Sentence) -> frozenset[str]:
    if isinstance(s, (Eq, Adj)):
        return frozenset((s.left, s.right))
    if isinstance(s, Member):
        return frozenset((s.element, s.set_var))
    if isinstance(s, Not):
        return free_variables(s.body)
    if isinstance(s, (And, Or, Implies)):
        return free_variables(s.left) | free_variables(s.right)
    if isinstance(s, (Forall, Exists)):
        return free_variables(s.body) - {s.var}
    raise TypeError(f"not a sentence node: {s!r}")


def is_closed(s: Sentence) -> bool:
    return not free_variables(s)


def is_first_order(s: Sentence) -> bool:
    """True when the sentence never mentions a set variable."""
    if isinstance(s, (Eq, Adj)):
        return True
    if isinstance(s, Member):
        return False
    if isinstance(s, Not):
        return is_first_order(s.body)
    if isinstance(s, (And, Or, Implies)):
        return is_first_order(s.left) and is_first_order(s.right)
    if isinstance(s, (Forall, Exists)):
        return not is_set_var(s.var) and is_first_order(s.body)
    raise TypeError(f"not a sentence node: {s!r}")


def quantifier_rank(s: Sentence) -> int:
    """Maximum quantifier nesting depth; vertex and set quantifiers count alike."""
    if isinstance(s, (Eq, Adj, Member)):
        return 0
    if isinstance(s, Not):
        return quantifier_rank(s.body)
    if isinstance(s, (And, Or, Implies)):
        return max(quantifier_rank(s.left), quantifier_rank(s.right))
    if isinstance(s, (Forall, Exists)):
        return 1 + quantifier_rank(s.body)
    raise TypeError(f"not a sentence node: {s!r}")


# -- canonical text form ------------------------------------------------------
#
# Precedence, loosest to tightest: quantifier bodies (maximal scope),
# ->, |, &, !, atoms.  Serialization parenthesizes a child exactly when its
# level is looser than its context demands, so parse(serialize(s)) == s.

_LEVEL_QUANT = 0
_LEVEL_IMPLIES = 1
_LEVEL_OR = 2
_LEVEL_AND = 3
_LEVEL_NOT = 4
_LEVEL_ATOM = 5


def _level(s: Sentence) -> int:
    if isinstance(s, (Forall, Exists)):
        return _LEVEL_QUANT
    if isinstance(s, Implies):
        return _LEVEL_IMPLIES
    if isinstance(s, Or):
        return _LEVEL_OR
    if isinstance(s, And):
        return _LEVEL_AND
    if isinstance(s, Not):
        return _LEVEL_NOT
    return _LEVEL_ATOM


def serialize(s: Sentence) -> str:
    if isinstance(s, Eq):
        return f"{s.left} = {s.right}"
    if isinstance(s, Adj):
        return f"{s.left} ~ {s.right}"
    if isinstance(s, Member):
        return f"{s.element} in {s.set_var}"
    if isinstance(s, Not):
        return "!" + _wrap(s.body, _LEVEL_NOT)
    if isinstance(s, And):
        return f"{_wrap(s.left, _LEVEL_AND)} & {_wrap(s.right, _LEVEL_AND + 1)}"
    if isinstance(s, Or):
        return f"{_wrap(s.left, _LEVEL_OR)} | {_wrap(s.right, _LEVEL_OR + 1)}"
    if isinstance(s, Implies):
        return f"{_wrap(s.left, _LEVEL_IMPLIES + 1)} -> {_wrap(s.right, _LEVEL_IMPLIES)}"
    if isinstance(s, Forall):
        return f"forall {s.var}. {serialize(s.body)}"
    if isinstance(s, Exists):
        return f"exists {s.var}. {serialize(s.body)}"
    raise TypeError(f"not a sentence node: {s!r}")


def _wrap(s: Sentence, need: int) -> str:
    text = serialize(s)
    return f"({text})" if _level(s) < need else text
