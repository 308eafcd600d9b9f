"""Brute-force model checking by quantifier expansion.

Vertex quantifiers iterate vertices; set quantifiers iterate all subsets of
the vertex set as bitmasks, in Gray-code order.  Set quantification costs
2^n per quantifier, so sentences with set variables are gated behind a hard
vertex cap (default 18) with a clear error.  Pure first-order sentences are
allowed on much larger graphs.

The evaluator prunes existential vertex quantifiers using atoms that are
necessary for the body to hold: an adjacency atom with one side already
bound restricts candidates to that vertex's neighbors, a membership atom to
the bits of the bound set, an equality to a single vertex.  Universal
quantifiers whose body is an implication are pruned the same way through
the antecedent, skipping vertices where it must fail.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import CapabilityError
from ..graphs import Graph
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
    free_variables,
    is_first_order,
    is_set_var,
)

Env = dict[str, int]  # vertex vars map to vertices, set vars to bitmasks


@dataclass(frozen=True)
class CheckLimits:
    mso_max_vertices: int = 18
    fo_max_vertices: int = 100_000


DEFAULT_LIMITS = CheckLimits()


def check(
    g: Graph,
    s: Sentence,
    env: Env | None = None,
    limits: CheckLimits = DEFAULT_LIMITS,
) -> bool:
    """Truth of `s` in `g` under `env` (which must bind every free variable)."""
    env = dict(env) if env else {}
    missing = free_variables(s) - set(env)
    if missing:
        raise ValueError(f"unbound variable(s): {', '.join(sorted(missing))}")
    if is_first_order(s) and not any(is_set_var(v) for v in env):
        if g.n > limits.fo_max_vertices:
            raise CapabilityError(
                f"first-order checking capped at {limits.fo_max_vertices} vertices"
            )
    elif g.n > limits.mso_max_vertices:
        raise CapabilityError(
            f"set quantification costs 2^n; capped at {limits.mso_max_vertices} vertices"
        )
    return _eval(g, s, env)


def _eval(g: Graph, s: Sentence, env: Env) -> bool:
    if isinstance(s, Eq):
        return env[s.left] == env[s.right]
    if isinstance(s, Adj):
        return (g.adj_masks[env[s.left]] >> env[s.right]) & 1 == 1
    if isinstance(s, Member):
        return (env[s.set_var] >> env[s.element]) & 1 == 1
    if isinstance(s, Not):
        return not _eval(g, s.body, env)
    if isinstance(s, And):
        return _eval(g, s.left, env) and _eval(g, s.right, env)
    if isinstance(s, Or):
        return _eval(g, s.left, env) or _eval(g, s.right, env)
    if isinstance(s, Implies):
        return (not _eval(g, s.left, env)) or _eval(g, s.right, env)
    if isinstance(s, Exists):
        if is_set_var(s.var):
            return any(_eval(g, s.body, env | {s.var: m}) for m in _gray_masks(g.n))
        for v in _candidates(g, s.var, s.body, env):
            if _eval(g, s.body, env | {s.var: v}):
                return True
        return False
    if isinstance(s, Forall):
        if is_set_var(s.var):
            return all(_eval(g, s.body, env | {s.var: m}) for m in _gray_masks(g.n))
        if isinstance(s.body, Implies):
            # vertices failing a necessary atom of the antecedent satisfy
            # the implication vacuously
            for v in _candidates(g, s.var, s.body.left, env):
                if not _eval(g, s.body, env | {s.var: v}):
                    return False
            return True
        return all(_eval(g, s.body, env | {s.var: v}) for v in range(g.n))
    raise TypeError(f"not a sentence node: {s!r}")


def _gray_masks(n: int):
    for i in range(1 << n):
        yield i ^ (i >> 1)


def _candidates(g: Graph, var: str, body: Sentence, env: Env):
    """Vertices that can possibly satisfy every necessary atom of `body`."""
    mask = None
    for atom in _necessary_atoms(body, var):
        if isinstance(atom, Adj):
            if var not in (atom.left, atom.right):
                continue
            other = atom.right if atom.left == var else atom.left
            if other != var and other in env:
                m = g.adj_masks[env[other]]
                mask = m if mask is None else mask & m
        elif isinstance(atom, Member):
            if atom.element == var and atom.set_var in env:
                m = env[atom.set_var]
                mask = m if mask is None else mask & m
        elif isinstance(atom, Eq):
            if var not in (atom.left, atom.right):
                continue
            other = atom.right if atom.left == var else atom.left
            if other != var and other in env:
                m = 1 << env[other]
                mask = m if mask is None else mask & m
    if mask is None:
        return range(g.n)
    return _bits(mask)


def _necessary_atoms(s: Sentence, var: str):
    """Atoms that must hold whenever `s` holds, as far as `var`'s binding
    is not shadowed on the way down."""
    if isinstance(s, (Eq, Adj, Member)):
        yield s
    elif isinstance(s, And):
        yield from _necessary_atoms(s.left, var)
        yield from _necessary_atoms(s.right, var)
    elif isinstance(s, Exists):
        if s.var != var:
            yield from _necessary_atoms(s.body, var)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
