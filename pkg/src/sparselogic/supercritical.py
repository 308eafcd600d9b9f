"""Arithmetized hub graphs, iterated-exponential arithmetic, the semantic
nonconvergence evaluator, clean topological cliques, and theta extremes.

The hub graph H(k1, K, n): two hub vertices joined by three disjoint paths
of length w (w = the nearest multiple of K to k1 log n), every K-th internal
vertex marked and labeled 1..w1 path-major, and for each arithmetic relation
(doubling, powers of two, towers, iterated towers) a fresh length-w path
joining the marked pair (i, f(i)) whenever f(i) <= w1.  Desk-scale builds
fix w1 directly instead of going through n.

Truth of the nonconvergence sentence on such a graph reduces to: choose a
valid marker set, read off the forced arithmetic relations, and check they
are realizable by vertex-disjoint connector paths lying outside the three
hub paths; the conclusion then holds iff the largest index with an in-range
iterated tower is even.  `eval_nonconvergence_semantic` implements exactly
that search, with an exhaustive alternative-marker sweep at desk scale.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

from .errors import CapabilityError, ConstructionError, ParameterError
from .graphs import Graph, components, ComponentKind

MATERIALIZE_EXP_BITS = 1 << 20
PAIR_MEMBERSHIP_CAP = 8
RELATIONS = ("double", "exp", "tower", "wow")


class Huge:
    """Symbolic stand-in for an integer too large to materialize.

    Compares greater than every int; two Huge values are not ordered.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "HUGE"

    def __gt__(self, other):
        if isinstance(other, int):
            return True
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, int):
            return True
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, int):
            return False
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, int):
            return False
        return NotImplemented


HUGE = Huge()


def tower(i: int):
    """tower(1) = 2, tower(i+1) = 2^tower(i); HUGE once past the bit bound."""
    if i < 1:
        raise ParameterError("tower defined for i >= 1")
    t: int | Huge = 2
    for _ in range(i - 1):
        if isinstance(t, Huge) or t > MATERIALIZE_EXP_BITS:
            return HUGE
        t = 1 << t
    return t


def wow(i: int):
    """wow(1) = 2, wow(i+1) = tower(wow(i))."""
    if i < 1:
        raise ParameterError("wow defined for i >= 1")
    w: int | Huge = 2
    for _ in range(i - 1):
        if isinstance(w, Huge):
            return HUGE
        w = _tower_of(w)
    return w


def _tower_of(arg: int):
    t: int | Huge = 2
    for _ in range(arg - 1):
        if isinstance(t, Huge) or t > MATERIALIZE_EXP_BITS:
            return HUGE
        t = 1 << t
    return t


def wow_inv(m: int) -> int:
    """Largest x with wow(x) <= m; forward iteration, nothing materialized
    beyond the comparison cut-off."""
    if m < 2:
        raise ParameterError("wow_inv defined for m >= 2")
    x = 1
    while True:
        nxt = wow(x + 1)
        if isinstance(nxt, Huge) or nxt > m:
            return x
        x += 1


def relation_value(rel: str, i: int):
    if rel == "double":
        return 2 * i
    if rel == "exp":
        return HUGE if i > MATERIALIZE_EXP_BITS else 1 << i
    if rel == "tower":
        return tower(i)
    if rel == "wow":
        return wow(i)
    raise ParameterError(f"unknown relation {rel!r}")


def arithmetic_relation(rel: str, m: int) -> set[tuple[int, int]]:
    """{(i, f(i)) : f(i) <= m} for the given relation on labels 1..m."""
    out = set()
    i = 1
    while True:
        val = relation_value(rel, i)
        if isinstance(val, Huge) or val > m:
            break
        out.add((i, val))
        i += 1
    return out


# -- the hub graph -------------------------------------------------------------


@dataclass(frozen=True)
class PairPath:
    i: int
    j: int
    relation: str
    vertices: tuple[int, ...]  # includes both marked endpoints


@dataclass(frozen=True)
class ArithGraph:
    graph: Graph
    s0: int
    s1: int
    paths: tuple[tuple[int, ...], ...]  # three hub paths, endpoints included
    ar: tuple[int, ...]  # marked vertices in label order (label = index + 1)
    pair_paths: tuple[PairPath, ...]
    K: int
    w: int
    w1: int
    k1: float | None = None
    n_param: int | None = None

    @property
    def l(self) -> int:
        return len(self.pair_paths)

    def to_json_dict(self) -> dict:
        return {
            "n": self.graph.n,
            "edges": [list(e) for e in self.graph.edges],
            "s0": self.s0,
            "s1": self.s1,
            "paths": [list(p) for p in self.paths],
            "ar": list(self.ar),
            "pair_paths": [
                {"i": pp.i, "j": pp.j, "relation": pp.relation, "path": list(pp.vertices)}
                for pp in self.pair_paths
            ],
            "params": {
                "K": self.K,
                "w": self.w,
                "w1": self.w1,
                "l": self.l,
                "k1": self.k1,
                "n": self.n_param,
            },
        }

    def metadata_dict(self) -> dict:
        d = self.to_json_dict()
        del d["edges"]
        return d

    @staticmethod
    def from_json_dict(d: dict) -> "ArithGraph":
        g = Graph(d["n"], [tuple(e) for e in d["edges"]])
        return ArithGraph(
            g,
            d["s0"],
            d["s1"],
            tuple(tuple(p) for p in d["paths"]),
            tuple(d["ar"]),
            tuple(
                PairPath(pp["i"], pp["j"], pp["relation"], tuple(pp["path"]))
                for pp in d["pair_paths"]
            ),
            d["params"]["K"],
            d["params"]["w"],
            d["params"]["w1"],
            d["params"]["k1"],
            d["params"]["n"],
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict())

    @staticmethod
    def loads(text: str) -> "ArithGraph":
        return ArithGraph.from_json_dict(json.loads(text))


def _build(K: int, w: int, k1: float | None, n_param: int | None) -> ArithGraph:
    if K < 2:
        raise ParameterError("K must be at least 2")
    if w % K != 0:
        raise ParameterError("w must be divisible by K")
    t = w // K - 1
    if t < 1:
        raise ParameterError(f"w = {w} leaves no marked vertices (need w >= 2K)")
    w1 = 3 * t
    edges: list[tuple[int, int]] = []
    s0, s1 = 0, 1
    next_id = 2
    paths: list[tuple[int, ...]] = []
    for _ in range(3):
        internals = list(range(next_id, next_id + w - 1))
        next_id += w - 1
        verts = [s0] + internals + [s1]
        edges.extend((verts[a], verts[a + 1]) for a in range(w))
        paths.append(tuple(verts))
    ar: list[int] = []
    for p in paths:
        ar.extend(p[K * j] for j in range(1, t + 1))
    pair_paths: list[PairPath] = []
    for rel in RELATIONS:
        for (i, j) in sorted(arithmetic_relation(rel, w1)):
            internals = list(range(next_id, next_id + w - 1))
            next_id += w - 1
            verts = [ar[i - 1]] + internals + [ar[j - 1]]
            edges.extend((verts[a], verts[a + 1]) for a in range(w))
            pair_paths.append(PairPath(i, j, rel, tuple(verts)))
    g = Graph(next_id, edges)
    membership: dict[int, int] = {}
    for pp in pair_paths:
        membership[pp.i] = membership.get(pp.i, 0) + 1
        membership[pp.j] = membership.get(pp.j, 0) + 1
    for idx, cnt in membership.items():
        if cnt > PAIR_MEMBERSHIP_CAP:
            raise ConstructionError(
                f"marked vertex {idx} lies in {cnt} relation pairs (> {PAIR_MEMBERSHIP_CAP})"
            )
    h = ArithGraph(g, s0, s1, tuple(paths), tuple(ar), tuple(pair_paths), K, w, w1, k1, n_param)
    v, e = g.n, g.m
    if e - v != h.l + 1:
        raise ConstructionError(f"edge excess {e - v} != l + 1 = {h.l + 1}")
    return h


def build_arith_graph(k1: float, K: int, n: int, log_base: float = math.e) -> ArithGraph:
    """Build from the asymptotic parameterization: w is the nearest multiple
    of K to k1 * log(n).  The logarithm is natural by default; `log_base`
    switches it for experiments."""
    if n < 2:
        raise ParameterError("n must be at least 2")
    target = k1 * math.log(n) / math.log(log_base)
    w = K * round(target / K)
    if w < 2 * K:
        raise ParameterError(
            f"k1 log n = {target:.2f} rounds to w = {w} < 2K; no room for marked vertices"
        )
    return _build(K, w, k1, n)


def build_arith_graph_by_w1(K: int, w1: int) -> ArithGraph:
    """Desk-scale build: fix the marked-vertex count directly (w1 = 3t)."""
    if w1 < 3 or w1 % 3 != 0:
        raise ParameterError("w1 must be a positive multiple of 3")
    t = w1 // 3
    return _build(K, K * (t + 1), None, None)


def build_triple_paths(w: int) -> Graph:
    """The bare skeleton: two hubs joined by three disjoint length-w paths."""
    if w < 2:
        raise ParameterError("w must be at least 2")
    edges = []
    next_id = 2
    for _ in range(3):
        verts = [0] + list(range(next_id, next_id + w - 1)) + [1]
        next_id += w - 1
        edges.extend((verts[a], verts[a + 1]) for a in range(w))
    return Graph(next_id, edges)


# -- verification --------------------------------------------------------------


@dataclass
class ArithReport:
    failures: list[str]
    evens: list[int]
    invwow_index: int | None
    relations: dict[str, list[tuple[int, int]]]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "failures": self.failures,
            "evens": self.evens,
            "invwow_index": self.invwow_index,
            "relations": {r: sorted(ps) for r, ps in self.relations.items()},
        }


def verify_arithmetization(h: ArithGraph) -> ArithReport:
    """Recompute the relations from the pair paths and check them against
    the number-theoretic ground truth plus the axioms the sentence imposes.

    All problems are reported, none raised; a clean build passes everything.
    """
    fails: list[str] = []
    g = h.graph

    def check(cond: bool, msg: str) -> None:
        if not cond:
            fails.append(msg)

    # hub path structure
    seen_internal: set[int] = set()
    for pi, p in enumerate(h.paths):
        check(len(p) == h.w + 1, f"hub path {pi} has length {len(p) - 1}, expected {h.w}")
        check(p[0] == h.s0 and p[-1] == h.s1, f"hub path {pi} endpoints wrong")
        for a in range(len(p) - 1):
            check(g.has_edge(p[a], p[a + 1]), f"hub path {pi} missing edge at offset {a}")
        inner = set(p[1:-1])
        check(not (inner & seen_internal), f"hub path {pi} shares internal vertices")
        seen_internal |= inner
    # marked vertices at multiples of K, labels path-major
    t = h.w // h.K - 1
    expect_ar = []
    for p in h.paths:
        expect_ar.extend(p[h.K * j] for j in range(1, t + 1))
    check(list(h.ar) == expect_ar, "marked vertices are not every K-th internal vertex")
    check(len(h.ar) == h.w1, f"marked count {len(h.ar)} != w1 = {h.w1}")
    # pair paths: fresh degree-2 internals, right endpoints, length w
    rels: dict[str, set[tuple[int, int]]] = {r: set() for r in RELATIONS}
    for pp in h.pair_paths:
        rels.setdefault(pp.relation, set()).add((pp.i, pp.j))
        check(len(pp.vertices) == h.w + 1, f"pair path {pp.i},{pp.j} wrong length")
        ok_ends = pp.vertices[0] == h.ar[pp.i - 1] and pp.vertices[-1] == h.ar[pp.j - 1]
        check(ok_ends, f"pair path ({pp.i},{pp.j},{pp.relation}) endpoints mismatch labels")
        for a in range(len(pp.vertices) - 1):
            check(
                g.has_edge(pp.vertices[a], pp.vertices[a + 1]),
                f"pair path ({pp.i},{pp.j},{pp.relation}) missing edge at offset {a}",
            )
        for v in pp.vertices[1:-1]:
            check(
                len(g.adj[v]) == 2,
                f"pair path ({pp.i},{pp.j},{pp.relation}) internal {v} has extra adjacencies",
            )
    # relations match ground truth
    for rel in RELATIONS:
        expected = arithmetic_relation(rel, h.w1)
        if rels[rel] != expected:
            fails.append(
                f"{rel} pairs {sorted(rels[rel])} != expected {sorted(expected)}"
            )
    # the axioms, on the recomputed relations
    for rel, prev in zip(RELATIONS, (None,) + RELATIONS[:-1]):
        pairs = rels[rel]
        if h.w1 >= 2:
            check((1, 2) in pairs, f"{rel}: base pair (1,2) missing")
        firsts = [i for i, _ in pairs]
        check(len(firsts) == len(set(firsts)), f"{rel}: not functional")
        for (i, j) in sorted(pairs):
            if prev is None:
                nxt = j + 2 if j + 2 <= h.w1 else None
            else:
                nxt_img = dict(rels[prev]).get(j)
                nxt = nxt_img
            if i + 1 <= h.w1:
                has_next = any(a == i + 1 for a, _ in pairs)
                if nxt is not None:
                    check(
                        (i + 1, nxt) in pairs,
                        f"{rel}: successor rule broken at ({i},{j})",
                    )
                else:
                    check(not has_next, f"{rel}: boundary rule broken after ({i},{j})")
        if pairs:
            top = max(i for i, _ in pairs)
            present = {i for i, _ in pairs}
            check(
                present == set(range(1, top + 1)),
                f"{rel}: downward closure broken ({sorted(present)})",
            )
    evens = sorted({j for (_, j) in rels["double"]})
    check(
        evens == list(range(2, h.w1 + 1, 2)),
        f"even set {evens} != even labels up to {h.w1}",
    )
    inv = max((i for i, _ in rels["wow"]), default=None)
    if h.w1 >= 2:
        check(inv == wow_inv(h.w1), f"largest wow index {inv} != wow_inv({h.w1})")
    return ArithReport(fails, evens, inv, {r: sorted(ps) for r, ps in rels.items()})


# -- semantic evaluation of the nonconvergence sentence -------------------------


def _window_valid(positions: set[int], length: int, K: int) -> bool:
    """Exactly one marked position in every run of K consecutive internal
    positions (1..length-1) of a path with `length` edges."""
    for start in range(1, length - K + 1):
        if sum(1 for q in range(start, start + K) if q in positions) != 1:
            return False
    return True


def _path_marker_choices(length: int, K: int) -> list[tuple[int, ...]]:
    """All valid marked-position sets for one path of `length` edges."""
    internal = list(range(1, length))
    if len(internal) < K:
        # no complete window: anything goes
        out = []
        for mask in range(1 << len(internal)):
            out.append(tuple(internal[b] for b in range(len(internal)) if mask >> b & 1))
        return out
    out = []
    for r in range(1, K + 1):
        cand = set(range(r, length, K))
        if _window_valid(cand, length, K):
            out.append(tuple(sorted(cand)))
    return out


def _connected_through(g: Graph, a: int, b: int, allowed: set[int]) -> bool:
    """Is there an a-b path whose internal vertices all lie in `allowed`?"""
    if g.has_edge(a, b):
        return True
    seen = set()
    stack = [v for v in g.adj[a] if v in allowed]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        if g.has_edge(v, b):
            return True
        stack.extend(u for u in g.adj[v] if u in allowed and u not in seen)
    return False


def _induced_relation(g: Graph, ar: Sequence[int], chosen: set[int]) -> set[tuple[int, int]]:
    rel = set()
    for xi in range(len(ar)):
        for yi in range(xi + 1, len(ar)):
            if _connected_through(g, ar[xi], ar[yi], chosen):
                rel.add((xi + 1, yi + 1))
    return rel


class _Budget:
    def __init__(self, n: int):
        self.left = n

    def spend(self, k: int = 1) -> None:
        self.left -= k
        if self.left < 0:
            raise CapabilityError("nonconvergence evaluation budget exhausted")


def _channels(g: Graph, a: int, b: int, universe: set[int], budget: _Budget, cap: int = 64) -> list[frozenset[int]]:
    """Internal-vertex sets of simple a-b paths with internals in `universe`."""
    out: list[frozenset[int]] = []
    if g.has_edge(a, b):
        out.append(frozenset())

    def extend(v: int, used: set[int]) -> None:
        budget.spend()
        if len(out) >= cap:
            return
        for u in g.adj[v]:
            if u == b:
                out.append(frozenset(used))
                if len(out) >= cap:
                    return
            elif u in universe and u not in used:
                used.add(u)
                extend(u, used)
                used.remove(u)

    extend(a, set())
    return out


def _relation_realizable(
    g: Graph,
    ar: Sequence[int],
    required: set[tuple[int, int]],
    universe: set[int],
    budget: _Budget,
) -> bool:
    """Can disjoint connector sets realize exactly `required`?

    Picks one candidate channel per pair, backtracking on vertex overlap,
    and accepts only if the relation induced by the union is exactly the
    required one (no spurious connections).
    """
    base = _induced_relation(g, ar, set())
    if not base <= required:
        return False  # direct edges force pairs outside the relation
    pairs = sorted(required)
    cand: list[list[frozenset[int]]] = []
    for (x, y) in pairs:
        chans = _channels(g, ar[x - 1], ar[y - 1], universe, budget)
        if not chans:
            return False
        cand.append(chans)

    def backtrack(idx: int, used: set[int]) -> bool:
        if idx == len(pairs):
            chosen = set(used)
            return _induced_relation(g, ar, chosen) == required
        for ch in cand[idx]:
            if ch & used:
                continue
            budget.spend()
            if backtrack(idx + 1, used | ch):
                return True
        return False

    return backtrack(0, set())


def _induced_paths_between(
    g: Graph, a: int, b: int, budget: _Budget, cap: int = 512
) -> list[tuple[int, ...]]:
    """Induced a-b paths (as vertex tuples), up to `cap`."""
    out: list[tuple[int, ...]] = []

    def extend(path: list[int], members: set[int]) -> None:
        budget.spend()
        if len(out) >= cap:
            return
        tail = path[-1]
        for u in sorted(g.adj[tail]):
            if u in members:
                continue
            # inducedness: u may touch only the tail among path vertices
            link = g.adj[u] & members
            if u == b:
                if link == {tail}:
                    out.append(tuple(path + [u]))
                    if len(out) >= cap:
                        return
            elif link == {tail}:
                path.append(u)
                members.add(u)
                extend(path, members)
                members.remove(u)
                path.pop()

    extend([a], {a})
    return out


def _systems_generic(g: Graph, budget: _Budget):
    degs = [len(g.adj[v]) for v in range(g.n)]
    hubs = [v for v in range(g.n) if degs[v] >= 3]
    for a in hubs:
        for b in hubs:
            if a == b:
                continue
            paths = _induced_paths_between(g, a, b, budget)
            if len(paths) < 3:
                continue
            for trio in combinations(paths, 3):
                inner = [set(p[1:-1]) for p in trio]
                if inner[0] & inner[1] or inner[0] & inner[2] or inner[1] & inner[2]:
                    continue
                cross = False
                for i, j in combinations(range(3), 2):
                    if any(g.adj[u] & inner[j] for u in inner[i]):
                        cross = True
                        break
                if cross:
                    continue
                for order in permutations(trio):
                    yield a, b, order


def _marker_sets(system_paths: Sequence[tuple[int, ...]], K: int, budget: _Budget):
    per_path = []
    for p in system_paths:
        choices = _path_marker_choices(len(p) - 1, K)
        if not choices:
            return
        per_path.append(choices)
    for combo in product(*per_path):
        budget.spend()
        ar: list[int] = []
        for p, positions in zip(system_paths, combo):
            ar.extend(p[q] for q in positions)
        yield ar


def eval_nonconvergence_semantic(
    h: "ArithGraph | Graph",
    K: int,
    max_generic_vertices: int = 26,
    budget: int = 2_000_000,
) -> bool:
    """Procedural truth of the nonconvergence sentence.

    Searches hub pairs, disjoint clean path triples, valid marker sets, and
    disjoint connector realizations of the forced arithmetic relations; true
    iff some witness reaches an even largest iterated-tower index.  Hub
    graphs use their stored structure (still sweeping marker alternatives
    and path orderings); plain graphs get a full search, gated by size.
    """
    bud = _Budget(budget)
    if isinstance(h, ArithGraph):
        g = h.graph
        base = (h.s0, h.s1, h.paths)
        systems = []
        for a, b in ((base[0], base[1]), (base[1], base[0])):
            trio = base[2] if a == base[0] else tuple(tuple(reversed(p)) for p in base[2])
            for order in permutations(trio):
                systems.append((a, b, order))
        systems = iter(systems)
    else:
        g = h
        if g.n > max_generic_vertices:
            raise CapabilityError(
                f"generic evaluation capped at {max_generic_vertices} vertices"
            )
        systems = _systems_generic(g, bud)

    for a, b, paths in systems:
        union = set()
        for p in paths:
            union |= set(p)
        universe = set(range(g.n)) - union
        for ar in _marker_sets(paths, K, bud):
            m = len(ar)
            if m < 2:
                continue
            if wow_inv(m) % 2 != 0:
                continue
            ok = True
            for rel in RELATIONS:
                required = arithmetic_relation(rel, m)
                if not _relation_realizable(g, ar, required, universe, bud):
                    ok = False
                    break
            if ok:
                return True
    return False


# -- clean topological cliques ---------------------------------------------------


def build_topological_clique(k: int, w: int) -> Graph:
    """k branch vertices, a fresh length-w path between every pair."""
    if k < 2:
        raise ParameterError("k must be at least 2")
    if w < 1:
        raise ParameterError("w must be at least 1")
    edges: list[tuple[int, int]] = []
    next_id = k
    for i, j in combinations(range(k), 2):
        verts = [i] + list(range(next_id, next_id + w - 1)) + [j]
        next_id += w - 1
        edges.extend((verts[a], verts[a + 1]) for a in range(w))
    return Graph(next_id, edges)


class DetectStatus(enum.Enum):
    FOUND = "found"
    ABSENT = "absent"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class CtkWitness:
    branches: tuple[int, ...]
    paths: dict  # (i, j) branch-index pair -> vertex tuple

    def vertices(self) -> set[int]:
        out = set(self.branches)
        for p in self.paths.values():
            out |= set(p)
        return out


@dataclass(frozen=True)
class DetectResult:
    status: DetectStatus
    witness: CtkWitness | None = None


def validate_topological_clique(g: Graph, wit: CtkWitness) -> bool:
    """Exact check: paths join the branches pairwise, internally disjoint,
    and the witness vertex set induces nothing beyond the path edges."""
    k = len(wit.branches)
    if len(set(wit.branches)) != k:
        return False
    claimed: set[tuple[int, int]] = set()
    internal_seen: set[int] = set()
    for (i, j), p in wit.paths.items():
        if p[0] != wit.branches[i] or p[-1] != wit.branches[j]:
            return False
        inner = set(p[1:-1])
        if inner & internal_seen or inner & set(wit.branches):
            return False
        internal_seen |= inner
        for a in range(len(p) - 1):
            u, v = p[a], p[a + 1]
            if not g.has_edge(u, v):
                return False
            claimed.add((min(u, v), max(u, v)))
    if set(wit.paths.keys()) != set(combinations(range(k), 2)):
        return False
    verts = sorted(wit.vertices())
    for a_i, u in enumerate(verts):
        for v in verts[a_i + 1 :]:
            if g.has_edge(u, v) and (u, v) not in claimed:
                return False
    return True


def _find_chordless_cycle(g: Graph) -> list[int] | None:
    for comp in components(g):
        if comp.kind is ComponentKind.TREE:
            continue
        start = min(comp.vertices)
        parent = {start: -1}
        order = [start]
        stack = [start]
        cyc = None
        while stack and cyc is None:
            v = stack.pop()
            for u in g.adj[v]:
                if u not in parent:
                    parent[u] = v
                    stack.append(u)
                elif parent[v] != u:
                    # back edge: walk both tails up to their meeting point
                    pa, pb = v, u
                    seen_a = []
                    x = v
                    while x != -1:
                        seen_a.append(x)
                        x = parent[x]
                    seen_set = {x: i for i, x in enumerate(seen_a)}
                    x = u
                    tail = []
                    while x not in seen_set:
                        tail.append(x)
                        x = parent[x]
                    cyc = seen_a[: seen_set[x] + 1][::-1] + tail[::-1]
                    break
        if cyc is None or len(cyc) < 3:
            continue
        # shrink along chords until chordless
        changed = True
        while changed:
            changed = False
            L = len(cyc)
            for ia in range(L):
                for ib in range(ia + 2, L):
                    if ia == 0 and ib == L - 1:
                        continue
                    if g.has_edge(cyc[ia], cyc[ib]):
                        side1 = cyc[ia : ib + 1]
                        side2 = cyc[ib:] + cyc[: ia + 1]
                        cyc = side1 if len(side1) <= len(side2) else side2
                        changed = True
                        break
                if changed:
                    break
        if len(cyc) >= 3:
            return cyc
    return None


def detect_topological_clique(g: Graph, k: int, budget: int = 500_000) -> DetectResult:
    """Backtracking search for an induced clean topological k-clique.

    Exhausting the budget returns UNKNOWN, which is distinct from ABSENT.
    """
    if k < 2:
        raise ParameterError("k must be at least 2")
    if k == 2:
        if g.m >= 1:
            u, v = g.edges[0]
            wit = CtkWitness((u, v), {(0, 1): (u, v)})
            return DetectResult(DetectStatus.FOUND, wit)
        return DetectResult(DetectStatus.ABSENT)
    if k == 3:
        cyc = _find_chordless_cycle(g)
        if cyc is None:
            return DetectResult(DetectStatus.ABSENT)
        b = (cyc[0], cyc[1], cyc[2])
        paths = {
            (0, 1): tuple(cyc[0:2]),
            (1, 2): tuple(cyc[1:3]),
            (0, 2): tuple([cyc[0]] + cyc[3:][::-1] + [cyc[2]]),
        }
        wit = CtkWitness(b, paths)
        if not validate_topological_clique(g, wit):
            return DetectResult(DetectStatus.UNKNOWN)
        return DetectResult(DetectStatus.FOUND, wit)
    return _detect_backtracking(g, k, budget)


def _detect_backtracking(g: Graph, k: int, budget: int) -> DetectResult:
    bud = _Budget(budget)
    degs = [len(g.adj[v]) for v in range(g.n)]
    candidates = [v for v in range(g.n) if degs[v] >= k - 1]
    pair_order = list(combinations(range(k), 2))

    try:
        for branches in combinations(candidates, k):
            wit_paths: dict = {}
            placed: set[int] = set(branches)

            def route(pi: int) -> bool:
                bud.spend()
                if pi == len(pair_order):
                    wit = CtkWitness(tuple(branches), dict(wit_paths))
                    return validate_topological_clique(g, wit)
                i, j = pair_order[pi]
                a, b = branches[i], branches[j]

                found = [False]

                def extend(path: list[int], members: set[int]) -> bool:
                    bud.spend()
                    tail = path[-1]
                    for u in sorted(g.adj[tail]):
                        if u == b:
                            cand = path + [u]
                            key = (i, j)
                            wit_paths[key] = tuple(cand)
                            inner = set(cand[1:-1])
                            placed.update(inner)
                            if route(pi + 1):
                                return True
                            placed.difference_update(inner)
                            del wit_paths[key]
                        elif u not in placed and u not in members:
                            link = g.adj[u] & placed
                            if link <= {tail, a, b}:
                                path.append(u)
                                members.add(u)
                                if extend(path, members):
                                    return True
                                members.remove(u)
                                path.pop()
                    return False

                return extend([a], {a})

            if route(0):
                wit = CtkWitness(tuple(branches), dict(wit_paths))
                if validate_topological_clique(g, wit):
                    return DetectResult(DetectStatus.FOUND, wit)
    except CapabilityError:
        return DetectResult(DetectStatus.UNKNOWN)
    return DetectResult(DetectStatus.ABSENT)


# -- minimum theta configurations -------------------------------------------------

THETA_SEARCH_CAP = 400


def min_theta_size(g: Graph) -> int | None:
    """Minimum vertex count of a theta subgraph (two branch vertices joined
    by three internally disjoint paths), or None when every component is a
    tree or unicyclic.

    Exact, via unit-capacity min-cost flow per candidate branch pair, with
    distance-based pruning; capped at 400 vertices.
    """
    if g.n > THETA_SEARCH_CAP:
        raise CapabilityError(f"exact theta search capped at {THETA_SEARCH_CAP} vertices")
    comps = [c for c in components(g) if c.kind is ComponentKind.COMPLEX]
    if not comps:
        return None
    best: int | None = None
    for comp in comps:
        verts = sorted(comp.vertices)
        cand = [v for v in verts if len(g.adj[v] & comp.vertices) >= 3]
        dist: dict[int, dict[int, int]] = {}
        for u in cand:
            dist[u] = _bfs_dist(g, u, comp.vertices)
        pairs = []
        for ai, u in enumerate(cand):
            for v in cand[ai + 1 :]:
                d = dist[u].get(v)
                if d is not None:
                    pairs.append((d, u, v))
        pairs.sort()
        for d, u, v in pairs:
            lower = 2 + 3 * (d - 1)
            if best is not None and lower >= best:
                break
            size = _theta_via_flow(g, u, v, comp.vertices)
            if size is not None and (best is None or size < best):
                best = size
    return best


def _bfs_dist(g: Graph, src: int, allowed: frozenset[int]) -> dict[int, int]:
    dist = {src: 0}
    frontier = [src]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for v in frontier:
            for u in g.adj[v]:
                if u in allowed and u not in dist:
                    dist[u] = d
                    nxt.append(u)
        frontier = nxt
    return dist


def _theta_via_flow(g: Graph, s: int, t: int, allowed: frozenset[int]) -> int | None:
    """Vertices of a minimum theta with branch vertices s, t, or None.

    Min-cost flow of 3 units from s to t, vertex capacities 1 (cost 1 per
    internal vertex); theta size = internal cost + 2.
    """
    verts = sorted(allowed)
    index = {v: i for i, v in enumerate(verts)}
    N = 2 * len(verts)
    # node 2i = in, 2i+1 = out
    graph_arcs: list[list[int]] = [[] for _ in range(N)]
    arcs: list[list[int]] = []  # [to, cap, cost, flow]

    def add_arc(a: int, b: int, cap: int, cost: int) -> None:
        graph_arcs[a].append(len(arcs))
        arcs.append([b, cap, cost, 0])
        graph_arcs[b].append(len(arcs))
        arcs.append([a, 0, -cost, 0])

    for v in verts:
        i = index[v]
        cap = 3 if v in (s, t) else 1
        cost = 0 if v in (s, t) else 1
        add_arc(2 * i, 2 * i + 1, cap, cost)
    for (u, v) in g.edges:
        if u in index and v in index:
            add_arc(2 * index[u] + 1, 2 * index[v], 1, 0)
            add_arc(2 * index[v] + 1, 2 * index[u], 1, 0)
    src = 2 * index[s] + 1
    dst = 2 * index[t]
    total_cost = 0
    for _ in range(3):
        # Bellman-Ford shortest augmenting path (costs are 0/1, residuals -1)
        INF = float("inf")
        dist = [INF] * N
        prev_arc = [-1] * N
        dist[src] = 0
        changed = True
        while changed:
            changed = False
            for a in range(N):
                if dist[a] == INF:
                    continue
                for ai in graph_arcs[a]:
                    to, cap, cost, flow = arcs[ai]
                    if cap - flow > 0 and dist[a] + cost < dist[to]:
                        dist[to] = dist[a] + cost
                        prev_arc[to] = ai
                        changed = True
        if dist[dst] == INF:
            return None
        total_cost += dist[dst]
        node = dst
        while node != src:
            ai = prev_arc[node]
            arcs[ai][3] += 1
            arcs[ai ^ 1][3] -= 1
            node = arcs[ai ^ 1][0]
    return total_cost + 2


# -- the nonconvergence demonstration ----------------------------------------------


@dataclass
class DemoRow:
    n: int
    w: int
    w1: int | None
    wow_inv_w1: int | None
    parity: str | None
    predicted: bool | None
    evaluated: bool | None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "w": self.w,
            "w1": self.w1,
            "wow_inv_w1": self.wow_inv_w1,
            "parity": self.parity,
            "predicted": self.predicted,
            "evaluated": self.evaluated,
            "agree": None if self.evaluated is None else self.predicted == self.evaluated,
        }


@dataclass
class DemoReport:
    c: float
    K: int
    k1: float
    rows: list[DemoRow]

    @property
    def subsequence_true(self) -> list[int]:
        return [r.n for r in self.rows if r.predicted is True]

    @property
    def subsequence_false(self) -> list[int]:
        return [r.n for r in self.rows if r.predicted is False]

    @property
    def all_agree(self) -> bool:
        return all(r.predicted == r.evaluated for r in self.rows if r.evaluated is not None)

    def to_dict(self) -> dict:
        return {
            "c": self.c,
            "K": self.K,
            "k1": self.k1,
            "rows": [r.to_dict() for r in self.rows],
            "subsequence_true": self.subsequence_true,
            "subsequence_false": self.subsequence_false,
            "all_agree": self.all_agree,
        }


def nonconvergence_demo(
    c: float,
    K: int,
    k1: float | None = None,
    n_values: Sequence[int] | None = None,
    eval_w1_cap: int = 12,
) -> DemoReport:
    """Tabulate w(n), w1(n), and the parity of wow_inv(w1) over a range of n,
    evaluating the sentence on the built graph where desk scale allows.

    Even parity rows are the limsup witnesses (sentence true on the planted
    graph), odd parity rows the liminf witnesses.  k1 defaults to 2/log(c),
    comfortably satisfying k1 log c > 1.
    """
    if c <= 1:
        raise ParameterError("nonconvergence lives at c > 1")
    if k1 is None:
        k1 = 2.0 / math.log(c)
    if n_values is None:
        n_values = []
        seen_w = set()
        n = 3
        while True:
            w = K * round(k1 * math.log(n) / K)
            if w // K - 1 >= 1 and (w1 := 3 * (w // K - 1)) > eval_w1_cap + 3:
                break
            if w >= 2 * K and w not in seen_w:
                seen_w.add(w)
                n_values.append(n)
            n += max(1, n // 8)
            if n > 10 ** 9:
                break
    rows: list[DemoRow] = []
    for n in n_values:
        w = K * round(k1 * math.log(n) / K)
        if w < 2 * K:
            rows.append(DemoRow(n, w, None, None, None, None, None))
            continue
        w1 = 3 * (w // K - 1)
        wi = wow_inv(w1)
        parity = "even" if wi % 2 == 0 else "odd"
        predicted = wi % 2 == 0
        evaluated = None
        if w1 <= eval_w1_cap:
            h = build_arith_graph_by_w1(K, w1)
            evaluated = eval_nonconvergence_semantic(h, K)
        rows.append(DemoRow(n, w, w1, wi, parity, predicted, evaluated))
    return DemoReport(c, K, k1, rows)
