"""Undirected simple graphs, G(n, c/n) sampling, and small-graph oracles.

Vertices are dense integers 0..n-1.  Graphs are immutable after construction
and safe to share across threads.  Sampling is a pure function of its seed:
the PCG64 stream for a sample is derived as documented in `rng`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, TextIO

import numpy as np

from .errors import CapabilityError, ParameterError
from .rng import generator

MAX_AUTOMORPHISM_VERTICES = 16
MAX_CENSUS_RADIUS = 12
MAX_CENSUS_CYCLES = 100_000


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertex set {0..n-1}.

    `edges` is a sorted tuple of (u, v) pairs with u < v; no self-loops,
    no duplicates.  Construction validates all three invariants.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ParameterError("vertex count must be non-negative")
        canon = []
        for u, v in edges:
            if u == v:
                raise ParameterError(f"self-loop at vertex {u}")
            if u > v:
                u, v = v, u
            if not (0 <= u and v < n):
                raise ParameterError(f"edge ({u}, {v}) has endpoint outside 0..{n - 1}")
            canon.append((u, v))
        canon.sort()
        for i in range(1, len(canon)):
            if canon[i] == canon[i - 1]:
                raise ParameterError(f"duplicate edge {canon[i]}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(canon))

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        """Neighbor bitmasks; convenient for brute-force logic evaluation."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return v in self.adj[u]

    def induced(self, vertices: Sequence[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph on `vertices`, relabeled 0..k-1.

        Returns (subgraph, labels) where labels[i] is the original vertex
        carried by new vertex i.
        """
        labels = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(labels)}
        sub_edges = [
            (index[u], index[v])
            for u, v in self.edges
            if u in index and v in index
        ]
        return Graph(len(labels), sub_edges), labels

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image of the graph under vertex map v -> perm[v]."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])


@dataclass(frozen=True)
class GnpParams:
    """Parameters of one G(n, c/n) draw; (n, c, seed) determine the graph."""

    n: int
    c: float
    seed: int

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError("n must be at least 1")
        if self.c < 0:
            raise ParameterError("c must be non-negative")
        if self.n > 1 and self.c / self.n > 1:
            raise ParameterError(f"edge probability c/n = {self.c / self.n} exceeds 1")


def _pair_count(n: int) -> int:
    return n * (n - 1) // 2


def _pairs_from_indices(n: int, idx: np.ndarray) -> list[tuple[int, int]]:
    """Invert the lexicographic pair index k -> (u, v), u < v.

    offset(u) = u*n - u*(u+1)/2 is the index of pair (u, u+1).
    """
    if len(idx) == 0:
        return []
    k = idx.astype(np.float64)
    u = np.floor(((2 * n - 1) - np.sqrt((2 * n - 1) ** 2 - 8 * k)) / 2).astype(np.int64)
    # float error can land one row off in either direction
    for _ in range(2):
        off = u * n - u * (u + 1) // 2
        u = np.where(idx < off, u - 1, u)
        off = u * n - u * (u + 1) // 2
        over = idx >= off + (n - 1 - u)
        u = np.where(over, u + 1, u)
    off = u * n - u * (u + 1) // 2
    v = idx - off + u + 1
    return list(zip(u.tolist(), v.tolist()))


def sample_gnp(params: GnpParams, stream_index: int = 0) -> Graph:
    """Draw G(n, p) with p = c/n; each vertex pair is an edge independently.

    Deterministic in (params.seed, stream_index).  Uses geometric skipping
    over the lexicographic pair ordering, so the cost is O(edges) rather
    than O(n^2).
    """
    n, c = params.n, params.c
    p = c / n
    total = _pair_count(n)
    if p <= 0 or total == 0:
        return Graph(n, [])
    if p >= 1:
        return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])
    rng = generator(params.seed, stream_index)
    hits: list[np.ndarray] = []
    pos = -1
    expect = int(total * p)
    while pos < total:
        batch = max(64, int(1.2 * (expect + 4 * math.sqrt(expect + 1))))
        skips = rng.geometric(p, size=batch)
        steps = np.cumsum(skips) + pos
        inside = steps[steps < total]
        hits.append(inside)
        if len(inside) < batch:
            break
        pos = int(steps[-1])
        expect = int((total - pos) * p)
    idx = np.concatenate(hits) if hits else np.empty(0, dtype=np.int64)
    return Graph(n, _pairs_from_indices(n, idx))


class ComponentKind(enum.Enum):
    TREE = "tree"
    UNICYCLIC = "unicyclic"
    COMPLEX = "complex"


@dataclass(frozen=True)
class Component:
    vertices: frozenset[int]
    kind: ComponentKind
    edge_count: int


def components(g: Graph) -> list[Component]:
    """Connected components, classified by edge count minus vertex count.

    tree: e = v - 1; unicyclic: e = v; complex: e > v.
    """
    seen = [False] * g.n
    out: list[Component] = []
    for start in range(g.n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        verts = []
        while stack:
            x = stack.pop()
            verts.append(x)
            for y in g.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        vset = frozenset(verts)
        e = sum(len(g.adj[x] & vset) for x in verts) // 2
        if e == len(verts) - 1:
            kind = ComponentKind.TREE
        elif e == len(verts):
            kind = ComponentKind.UNICYCLIC
        else:
            kind = ComponentKind.COMPLEX
        out.append(Component(vset, kind, e))
    out.sort(key=lambda comp: min(comp.vertices))
    return out


@dataclass(frozen=True)
class Ball:
    """Induced subgraph on all vertices within distance `radius` of `center`.

    `center` is a tuple of one or more seed vertices (a cycle is passed as
    the tuple of its vertices).  `labels[i]` is the ambient vertex carried
    by subgraph vertex i; `dist[i]` its distance from the center set.
    """

    center: tuple[int, ...]
    radius: int
    subgraph: Graph
    labels: tuple[int, ...]
    dist: tuple[int, ...]


def ball(g: Graph, x: int | Iterable[int], radius: int) -> Ball:
    """BFS ball of the given radius around a vertex or a vertex set."""
    center = (x,) if isinstance(x, int) else tuple(sorted(set(x)))
    if radius < 0:
        raise ParameterError("radius must be non-negative")
    for v in center:
        if not (0 <= v < g.n):
            raise ParameterError(f"center vertex {v} outside graph")
    dist = {v: 0 for v in center}
    frontier = list(center)
    d = 0
    while frontier and d < radius:
        d += 1
        nxt = []
        for u in frontier:
            for w in g.adj[u]:
                if w not in dist:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    sub, labels = g.induced(list(dist))
    return Ball(center, radius, sub, labels, tuple(dist[v] for v in labels))


def _component_cycles(g: Graph, verts: list[int], max_len: int, cap: int) -> list[tuple[int, ...]]:
    """All simple cycles of length 3..max_len with vertices in one component.

    Each cycle appears once: rooted at its minimum vertex, with the smaller
    neighbor direction first.
    """
    cycles: list[tuple[int, ...]] = []
    vset = set(verts)
    for root in sorted(verts):
        # paths root, x1, ..., xk with all xi > root; close when adjacent to root
        stack: list[tuple[tuple[int, ...], set[int]]] = [((root,), {root})]
        while stack:
            path, used = stack.pop()
            last = path[-1]
            for y in sorted(g.adj[last] & vset):
                if y == root and len(path) >= 3:
                    if path[1] < path[-1]:
                        cycles.append(path)
                        if len(cycles) > cap:
                            raise CapabilityError(
                                f"cycle census exceeded cap of {cap} cycles"
                            )
                elif y > root and y not in used and len(path) < max_len:
                    stack.append((path + (y,), used | {y}))
    return cycles


def cycle_census(g: Graph, radius: int) -> dict[int, tuple[int, list[Ball]]]:
    """All simple cycles of length 3..radius, each with its neighborhood ball.

    Returns {cycle_length: (count, [ball around each cycle])}.  Bounded by
    MAX_CENSUS_RADIUS and MAX_CENSUS_CYCLES; sparse-regime graphs stay far
    below both.
    """
    if radius < 3:
        raise ParameterError("census radius must be at least 3")
    if radius > MAX_CENSUS_RADIUS:
        raise CapabilityError(f"census radius capped at {MAX_CENSUS_RADIUS}")
    out: dict[int, tuple[int, list[Ball]]] = {}
    total = 0
    for comp in components(g):
        if comp.kind is ComponentKind.TREE:
            continue
        cyc = _component_cycles(g, sorted(comp.vertices), radius, MAX_CENSUS_CYCLES - total)
        total += len(cyc)
        for cycle in cyc:
            count, balls = out.get(len(cycle), (0, []))
            balls.append(ball(g, cycle, radius))
            out[len(cycle)] = (count + 1, balls)
    return out


def count_cycles(g: Graph, radius: int) -> dict[int, int]:
    """Cycle counts by length without materializing neighborhood balls."""
    if radius < 3:
        raise ParameterError("census radius must be at least 3")
    out: dict[int, int] = {}
    total = 0
    for comp in components(g):
        if comp.kind is ComponentKind.TREE:
            continue
        cyc = _component_cycles(g, sorted(comp.vertices), radius, MAX_CENSUS_CYCLES - total)
        total += len(cyc)
        for cycle in cyc:
            out[len(cycle)] = out.get(len(cycle), 0) + 1
    return out


def automorphism_count(h: Graph) -> int:
    """Order of the automorphism group, by pruned backtracking.

    Vertices are first partitioned by (degree, sorted neighbor degrees); the
    search assigns images in a fixed vertex order and prunes on adjacency
    consistency with already-assigned vertices.
    """
    n = h.n
    if n > MAX_AUTOMORPHISM_VERTICES:
        raise CapabilityError(
            f"automorphism counting capped at {MAX_AUTOMORPHISM_VERTICES} vertices"
        )
    if n <= 1:
        return 1
    deg = [len(h.adj[v]) for v in range(n)]
    sig = [(deg[v], tuple(sorted(deg[u] for u in h.adj[v]))) for v in range(n)]
    order = sorted(range(n), key=lambda v: (sig[v], v))
    image = [-1] * n
    used = [False] * n
    count = 0

    def extend(i: int) -> None:
        nonlocal count
        if i == n:
            count += 1
            return
        v = order[i]
        for w in range(n):
            if used[w] or sig[w] != sig[v]:
                continue
            ok = True
            for u in h.adj[v]:
                iu = image[u]
                if iu >= 0 and iu not in h.adj[w]:
                    ok = False
                    break
            if ok:
                for u in range(n):
                    iu = image[u]
                    if iu >= 0 and u not in h.adj[v] and iu in h.adj[w]:
                        ok = False
                        break
            if ok:
                image[v] = w
                used[w] = True
                extend(i + 1)
                image[v] = -1
                used[w] = False

    extend(0)
    return count


def count_simple_paths_from(h: Graph, v: int, k: int) -> int:
    """Exact number of simple paths with k edges starting at v."""
    if k < 0:
        raise ParameterError("path length must be non-negative")
    return count_simple_paths_upto(h, v, k)[k]


def count_simple_paths_upto(h: Graph, v: int, kmax: int) -> list[int]:
    """counts[k] = number of simple paths with k edges starting at v, k <= kmax."""
    counts = [0] * (kmax + 1)
    counts[0] = 1
    on_path = [False] * h.n
    on_path[v] = True

    def walk(u: int, depth: int) -> None:
        for w in h.adj[u]:
            if not on_path[w]:
                counts[depth + 1] += 1
                if depth + 1 < kmax:
                    on_path[w] = True
                    walk(w, depth + 1)
                    on_path[w] = False

    if kmax >= 1:
        walk(v, 0)
    return counts


# -- small-pattern oracles used by the Monte Carlo experiments ---------------


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    """All triangles (u < v < w)."""
    out = []
    for u, v in g.edges:
        for w in g.adj[u] & g.adj[v]:
            if w > v:
                out.append((u, v, w))
    return out


def has_triangle(g: Graph) -> bool:
    for u, v in g.edges:
        if g.adj[u] & g.adj[v]:
            return True
    return False


def has_isolated_triangle(g: Graph) -> bool:
    """A triangle none of whose vertices has any neighbor outside it."""
    for u, v, w in triangles(g):
        if len(g.adj[u]) == 2 and len(g.adj[v]) == 2 and len(g.adj[w]) == 2:
            return True
    return False


def _is_spiked(g: Graph, tri: tuple[int, int, int]) -> bool:
    for x in tri:
        for w in g.adj[x]:
            if len(g.adj[w]) == 1:
                return True
    return False


def has_unspiked_triangle(g: Graph) -> bool:
    """A triangle with no degree-1 pendant vertex attached to any corner."""
    return any(not _is_spiked(g, tri) for tri in triangles(g))


def has_cycle(g: Graph) -> bool:
    return any(c.kind is not ComponentKind.TREE for c in components(g))


# -- flat file format --------------------------------------------------------


def write_edge_list(g: Graph, fh: TextIO) -> None:
    """First line `n <vertex count>`, then one `u v` line per edge."""
    fh.write(f"n {g.n}\n")
    for u, v in g.edges:
        fh.write(f"{u} {v}\n")


def read_edge_list(fh: TextIO) -> Graph:
    """Parse the edge-list format, reporting offending line numbers."""
    header = fh.readline()
    parts = header.split()
    if len(parts) != 2 or parts[0] != "n":
        raise ParameterError("line 1: expected header 'n <vertex count>'")
    try:
        n = int(parts[1])
    except ValueError:
        raise ParameterError(f"line 1: vertex count {parts[1]!r} is not an integer")
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, line in enumerate(fh, start=2):
        if not line.strip():
            continue
        toks = line.split()
        if len(toks) != 2:
            raise ParameterError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise ParameterError(f"line {lineno}: non-integer endpoint")
        if u == v:
            raise ParameterError(f"line {lineno}: self-loop at {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ParameterError(f"line {lineno}: endpoint outside 0..{n - 1}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParameterError(f"line {lineno}: duplicate edge {key}")
        seen.add(key)
        edges.append(key)
    return Graph(n, edges)


# -- small constructors (test scaffolding and experiments) -------------------


def path_graph(k: int) -> Graph:
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise ParameterError("cycle needs at least 3 vertices")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def complete_graph(k: int) -> Graph:
    return Graph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def disjoint_union(*graphs: Graph) -> Graph:
    n = 0
    edges: list[tuple[int, int]] = []
    for g in graphs:
        edges.extend((u + n, v + n) for u, v in g.edges)
        n += g.n
    return Graph(n, edges)
