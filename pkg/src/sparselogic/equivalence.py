"""Threshold-counting equivalence on rooted trees, cycle neighborhoods, and
whole graphs, plus a transfer-law test harness.

Two counts are R-same when they are equal or both at least R.  Rooted trees
of equal depth are R-equivalent when every class of child subtree appears an
R-same number of times, recursively.  Cycle neighborhoods compare by cycle
length and the best rotation/reflection of their vertex-tree classes; whole
graphs by the multiset of cycle-neighborhood classes with counts capped at
R.  Signatures are canonical: equal signature iff R-equivalent.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .errors import HypothesisViolationError, ParameterError
from .graphs import Ball, Graph, ball, cycle_census, disjoint_union
from .logic import check, parse
from .rng import generator


def r_same(a: int, b: int, R: int) -> bool:
    if a < 0 or b < 0:
        raise ParameterError("counts must be non-negative")
    return a == b or (a >= R and b >= R)


@dataclass(frozen=True)
class RootedTree:
    children: tuple["RootedTree", ...] = ()

    @property
    def size(self) -> int:
        return 1 + sum(c.size for c in self.children)

    @property
    def depth(self) -> int:
        return 1 + max((c.depth for c in self.children), default=-1) if self.children else 0


def rooted_tree_from_ball(b: Ball) -> RootedTree:
    """Read a tree-shaped ball as a tree rooted at its center vertex."""
    if len(b.center) != 1:
        raise ParameterError("expected a single-vertex ball")
    g = b.subgraph
    if g.m != g.n - 1:
        raise HypothesisViolationError(f"ball around vertex {b.center[0]} is not a tree")
    root = b.labels.index(b.center[0])

    def build(v: int, parent: int) -> RootedTree:
        return RootedTree(tuple(build(u, v) for u in sorted(g.adj[v]) if u != parent))

    return build(root, -1)


@dataclass(frozen=True)
class EquivSignature:
    """Canonical form under R-equivalence.

    kind is 'tree', 'cycle', or 'graph'; data is a nested tuple in which
    every multiplicity is stored as min(count, R), so equality of data is
    exactly R-equivalence.
    """

    kind: str
    R: int
    depth: int
    data: tuple

    def key(self) -> str:
        return f"{self.kind}/R{self.R}/d{self.depth}/{self.data!r}"


def _tree_canon(t: RootedTree, depth: int, R: int) -> tuple:
    if depth == 0:
        return ()
    counts = Counter(_tree_canon(c, depth - 1, R) for c in t.children)
    return tuple(sorted((sig, min(cnt, R)) for sig, cnt in counts.items()))


def tree_signature(t: RootedTree, depth: int, R: int) -> EquivSignature:
    """Signature of a rooted tree viewed at the given depth.

    Depth-0 trees form a single class; at depth d+1 the class is the capped
    multiset of depth-d child classes.
    """
    if t.depth > depth:
        raise ParameterError(f"tree depth {t.depth} exceeds viewing depth {depth}")
    if R < 1:
        raise ParameterError("R must be positive")
    return EquivSignature("tree", R, depth, _tree_canon(t, depth, R))


def _cycle_canon(cycle_length: int, trees: Sequence[RootedTree], depth: int, R: int) -> tuple:
    sigs = [_tree_canon(t, depth, R) for t in trees]
    best = None
    k = len(sigs)
    for order in (sigs, sigs[::-1]):
        for shift in range(k):
            cand = tuple(order[(shift + i) % k] for i in range(k))
            if best is None or cand < best:
                best = cand
    return (cycle_length, best)


def h_signature(h, R: int) -> EquivSignature:
    """Signature of a cycle neighborhood (cycle length, trees on its vertices).

    Accepts any object with `cycle_length`, `trees`, and `R` attributes; the
    tree classes are compared at the neighborhood's own depth bound.
    """
    return EquivSignature("cycle", R, h.R, _cycle_canon(h.cycle_length, h.trees, h.R, R))


def _unique_cycle(sub: Graph) -> list[int]:
    """The cycle of a connected unicyclic graph, by leaf peeling."""
    deg = [len(sub.adj[v]) for v in range(sub.n)]
    alive = [True] * sub.n
    stack = [v for v in range(sub.n) if deg[v] <= 1]
    while stack:
        v = stack.pop()
        if not alive[v] or deg[v] > 1:
            continue
        alive[v] = False
        for u in sub.adj[v]:
            if alive[u]:
                deg[u] -= 1
                if deg[u] == 1:
                    stack.append(u)
    cyc = [v for v in range(sub.n) if alive[v]]
    # order around the cycle
    ordered = [cyc[0]]
    prev = -1
    while len(ordered) < len(cyc):
        cur = ordered[-1]
        nxt = [u for u in sub.adj[cur] if alive[u] and u != prev]
        prev = cur
        ordered.append(nxt[0])
    return ordered


def cycle_trees(g: Graph, cycle: Sequence[int], R: int) -> tuple[int, tuple[RootedTree, ...]]:
    """Decompose B(cycle, R) into the cycle plus one rooted tree per vertex.

    Fails when the ball is not unicyclic (a second cycle within distance R).
    """
    b = ball(g, tuple(cycle), R)
    sub = b.subgraph
    if sub.m != sub.n:
        raise HypothesisViolationError(
            f"neighborhood of cycle {tuple(cycle)} is not unicyclic"
        )
    idx = {v: i for i, v in enumerate(b.labels)}
    cyc_local = {idx[v] for v in cycle}

    def build(v: int, parent: int) -> RootedTree:
        kids = [u for u in sorted(sub.adj[v]) if u != parent and u not in cyc_local]
        return RootedTree(tuple(build(u, v) for u in kids))

    trees = tuple(build(idx[v], -1) for v in cycle)
    return len(cycle), trees


@dataclass(frozen=True)
class _Neighborhood:
    cycle_length: int
    trees: tuple[RootedTree, ...]
    R: int


def graph_signature(g: Graph, R: int) -> EquivSignature:
    """Capped multiset of cycle-neighborhood classes of the whole graph.

    Requires every R-ball to be a tree or unicyclic; violations name the
    offending vertex.
    """
    for v in range(g.n):
        b = ball(g, v, R)
        if b.subgraph.m > b.subgraph.n:
            raise HypothesisViolationError(
                f"ball of radius {R} around vertex {v} is neither a tree nor unicyclic"
            )
    census = cycle_census(g, R) if g.n and R >= 3 else {}
    counts: Counter = Counter()
    for length, (cnt, balls) in census.items():
        for b in balls:
            # recover the cycle as the ball's center set
            n_len, trees = cycle_trees(g, b.center, R)
            counts[_cycle_canon(n_len, trees, R, R)] += 1
    data = tuple(sorted((sig, min(cnt, R)) for sig, cnt in counts.items()))
    return EquivSignature("graph", R, R, data)


# -- transfer harness ---------------------------------------------------------

RANK2_BATTERY: tuple[tuple[str, str], ...] = (
    ("some_edge", "exists x. exists y. x ~ y"),
    ("no_isolated_vertex", "forall x. exists y. x ~ y"),
    ("isolated_vertex", "exists x. forall y. !x ~ y"),
    ("nonadjacent_pair", "exists x. exists y. !x = y & !x ~ y"),
    ("complete", "forall x. forall y. x = y | x ~ y"),
    ("dominating_vertex", "exists x. forall y. y = x | x ~ y"),
)

RANK3_BATTERY: tuple[tuple[str, str], ...] = RANK2_BATTERY + (
    ("triangle", "exists x. exists y. exists z. x~y & y~z & x~z"),
    ("path_center", "exists y. exists x. exists z. !x = z & x~y & y~z"),
    ("two_steps_everywhere", "forall x. exists y. exists z. x~y & y~z & !z = x"),
    ("pendant_edge", "exists x. exists y. x ~ y & forall z. z ~ x -> z = y"),
)


def battery_for(R: int) -> tuple[tuple[str, str], ...]:
    """Conservative sentence battery: rank 2 below R = 5, rank 3 from there."""
    return RANK3_BATTERY if R >= 5 else RANK2_BATTERY


def _tree_ball_classes(g: Graph, R: int) -> Counter:
    out: Counter = Counter()
    for v in range(g.n):
        b = ball(g, v, R)
        if b.subgraph.m == b.subgraph.n - 1:
            out[tree_signature(rooted_tree_from_ball(b), R, R).data] += 1
    return out


def validate_pair(g1: Graph, g2: Graph, R: int) -> str | None:
    """None when the pair satisfies the transfer hypotheses, else the reason.

    Gate 1: equal graph signatures (cycle classes R-same) with all balls
    tree or unicyclic.  Gate 2: richness, every tree-ball class present in
    either graph occurs at least R times in both.
    """
    try:
        s1 = graph_signature(g1, R)
        s2 = graph_signature(g2, R)
    except HypothesisViolationError as e:
        return f"ball hypothesis violated: {e}"
    if s1 != s2:
        return "graph signatures differ"
    c1 = _tree_ball_classes(g1, R)
    c2 = _tree_ball_classes(g2, R)
    for cls in set(c1) | set(c2):
        if c1[cls] < R or c2[cls] < R:
            return f"tree class occurs {c1[cls]} and {c2[cls]} times; both must be >= {R}"
    return None


@dataclass
class TransferReport:
    R: int
    battery: tuple[str, ...]
    pairs_tested: int
    pairs_refused: int
    violations: list[dict]

    @property
    def passed(self) -> bool:
        return not self.violations


_TREE_PARTS: tuple[Graph, ...] = (
    Graph(1, []),
    Graph(2, [(0, 1)]),
    Graph(3, [(0, 1), (1, 2)]),
    Graph(4, [(0, 1), (1, 2), (2, 3)]),
    Graph(4, [(0, 1), (0, 2), (0, 3)]),
)

_UNICYCLIC_PARTS: tuple[Graph, ...] = (
    Graph(3, [(0, 1), (1, 2), (0, 2)]),
    Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)]),
    Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)]),
)


def _random_pair(rng, R: int) -> tuple[Graph, Graph]:
    """A pair meeting the hypotheses: tree-part counts vary freely above R,
    unicyclic counts vary R-samely."""
    parts1: list[Graph] = []
    parts2: list[Graph] = []
    for t in _TREE_PARTS:
        a = R + int(rng.integers(0, 4))
        b = R + int(rng.integers(0, 4))
        parts1.extend([t] * a)
        parts2.extend([t] * b)
    for u in _UNICYCLIC_PARTS:
        if rng.random() < 0.5:
            continue
        if rng.random() < 0.5:
            k = int(rng.integers(1, 3))
            ka = kb = k
        else:
            ka = R + int(rng.integers(0, 3))
            kb = R + int(rng.integers(0, 3))
        parts1.extend([u] * ka)
        parts2.extend([u] * kb)
    return disjoint_union(*parts1), disjoint_union(*parts2)


def transfer_harness(R: int, trials: int, seed: int) -> TransferReport:
    """Generate hypothesis-satisfying pairs and battery-check agreement.

    Any disagreement is recorded as a counterexample; the suite treats one
    as a build-failing bug.
    """
    battery = [(name, parse(text)) for name, text in battery_for(R)]
    tested = refused = 0
    violations: list[dict] = []
    for i in range(trials):
        rng = generator(seed, i)
        g1, g2 = _random_pair(rng, R)
        reason = validate_pair(g1, g2, R)
        if reason is not None:
            refused += 1
            continue
        tested += 1
        for name, sentence in battery:
            v1 = check(g1, sentence)
            v2 = check(g2, sentence)
            if v1 != v2:
                violations.append(
                    {
                        "trial": i,
                        "sentence": name,
                        "g1_n": g1.n,
                        "g2_n": g2.n,
                        "g1": v1,
                        "g2": v2,
                    }
                )
    return TransferReport(R, tuple(n for n, _ in battery), tested, refused, violations)
