"""Independent reference evaluator for sentences, used as a test oracle.

Deliberately separate from the package implementation: plain recursion over
frozensets, no bitmasks, no candidate pruning, no Gray-code iteration.
"""

from itertools import chain, combinations

from sparselogic.graphs import Graph
from sparselogic.logic.syntax import (
    Adj,
    And,
    Eq,
    Exists,
    Forall,
    Implies,
    Member,
    Not,
    Or,
    is_set_var,
)


def _subsets(universe):
    return chain.from_iterable(combinations(universe, r) for r in range(len(universe) + 1))


def naive_check(g: Graph, s, env=None) -> bool:
    env = dict(env) if env else {}
    edges = {frozenset(e) for e in g.edges}

    def ev(node, env):
        if isinstance(node, Eq):
            return env[node.left] == env[node.right]
        if isinstance(node, Adj):
            return frozenset((env[node.left], env[node.right])) in edges
        if isinstance(node, Member):
            return env[node.element] in env[node.set_var]
        if isinstance(node, Not):
            return not ev(node.body, env)
        if isinstance(node, And):
            return ev(node.left, env) and ev(node.right, env)
        if isinstance(node, Or):
            return ev(node.left, env) or ev(node.right, env)
        if isinstance(node, Implies):
            return (not ev(node.left, env)) or ev(node.right, env)
        if isinstance(node, Forall):
            if is_set_var(node.var):
                return all(
                    ev(node.body, {**env, node.var: frozenset(sub)})
                    for sub in _subsets(range(g.n))
                )
            return all(ev(node.body, {**env, node.var: v}) for v in range(g.n))
        if isinstance(node, Exists):
            if is_set_var(node.var):
                return any(
                    ev(node.body, {**env, node.var: frozenset(sub)})
                    for sub in _subsets(range(g.n))
                )
            return any(ev(node.body, {**env, node.var: v}) for v in range(g.n))
        raise TypeError(node)

    return ev(s, env)
