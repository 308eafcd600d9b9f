"""Named sentence constructions.

Builders produce plain ASTs; bound helper variables come from a per-sentence
fresh-name counter so nested reuse can never capture.  Conjuncts are ordered
cheap-to-expensive because the evaluator short-circuits left to right.

Conventions fixed here (and relied on by the semantic evaluators elsewhere):

* an induced path needs distinct endpoints, so `path(x, y, S)` is false
  when x = y; `conn(x, y, R)` treats x = y as connected;
* a circuit is nonempty (without this, two empty "circuits" would satisfy
  the two-disjoint-circuits sentence on any connected graph);
* in the nonconvergence sentence, the window condition over K consecutive
  path vertices ranges over internal vertices (hub endpoints excluded), and
  the four arithmetic witness sets are required to be disjoint from the
  three hub paths.  Both choices make the finite, desk-scale structure
  behave like its intended infinite-family reading.
"""

from __future__ import annotations

from itertools import combinations

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
    iff,
    is_first_order,
    is_set_var,
    or_all,
)


class _Fresh:
    """Deterministic supply of bound-variable names."""

    def __init__(self):
        self.i = 0

    def vertex(self) -> str:
        self.i += 1
        return f"v{self.i}"

    def set(self) -> str:
        self.i += 1
        return f"Q{self.i}"


def subset(small: str, big: str, fresh: _Fresh) -> Sentence:
    z = fresh.vertex()
    return Forall(z, Implies(Member(z, small), Member(z, big)))


def disjoint(a: str, b: str, fresh: _Fresh) -> Sentence:
    z = fresh.vertex()
    return Forall(z, Implies(Member(z, a), Not(Member(z, b))))


def set_equal(a: str, b: str, fresh: _Fresh) -> Sentence:
    z = fresh.vertex()
    return Forall(z, iff(Member(z, a), Member(z, b)))


def _exactly_one_neighbor(x: str, s: str, fresh: _Fresh) -> Sentence:
    w, u = fresh.vertex(), fresh.vertex()
    return Exists(
        w,
        and_all(
            [
                Member(w, s),
                Adj(x, w),
                Forall(u, Implies(And(Member(u, s), Adj(x, u)), Eq(u, w))),
            ]
        ),
    )


def _exactly_two_neighbors(x: str, s: str, fresh: _Fresh) -> Sentence:
    w1, w2, u = fresh.vertex(), fresh.vertex(), fresh.vertex()
    return Exists(
        w1,
        And(
            And(Member(w1, s), Adj(x, w1)),
            Exists(
                w2,
                and_all(
                    [
                        Member(w2, s),
                        Adj(x, w2),
                        Not(Eq(w1, w2)),
                        Forall(
                            u,
                            Implies(
                                And(Member(u, s), Adj(x, u)),
                                Or(Eq(u, w1), Eq(u, w2)),
                            ),
                        ),
                    ]
                ),
            ),
        ),
    )


def path_formula(x: str, y: str, s: str, fresh: _Fresh | None = None) -> Sentence:
    """S is exactly an induced path from x to y.

    Every member of S other than x, y has precisely two neighbors in S; x
    and y have precisely one each.  Single-edge paths S = {x, y} qualify.
    """
    fresh = fresh or _Fresh()
    z = fresh.vertex()
    return and_all(
        [
            Member(x, s),
            Member(y, s),
            Not(Eq(x, y)),
            _exactly_one_neighbor(x, s, fresh),
            _exactly_one_neighbor(y, s, fresh),
            Forall(
                z,
                Implies(
                    and_all([Member(z, s), Not(Eq(z, x)), Not(Eq(z, y))]),
                    _exactly_two_neighbors(z, s, fresh),
                ),
            ),
        ]
    )


def conn_formula(x: str, y: str, r: str, fresh: _Fresh | None = None) -> Sentence:
    """x and y lie in the same component of the subgraph induced on R."""
    fresh = fresh or _Fresh()
    q = fresh.set()
    return Or(
        Eq(x, y),
        Exists(q, And(subset(q, r, fresh), path_formula(x, y, q, fresh))),
    )


def circ_formula(s: str, fresh: _Fresh | None = None) -> Sentence:
    """S is exactly one circuit: nonempty, 2-regular within S, connected."""
    fresh = fresh or _Fresh()
    v, a, b = fresh.vertex(), fresh.vertex(), fresh.vertex()
    return and_all(
        [
            Exists(v, Member(v, s)),
            Forall(v, Implies(Member(v, s), _exactly_two_neighbors(v, s, fresh))),
            Forall(
                a,
                Implies(
                    Member(a, s),
                    Forall(b, Implies(Member(b, s), conn_formula(a, b, s, fresh))),
                ),
            ),
        ]
    )


def build_path_conn_circ() -> dict[str, Sentence]:
    """The reusable open formulas path(x,y,S), conn(x,y,R), circ(S)."""
    return {
        "path": path_formula("x", "y", "S"),
        "conn": conn_formula("x", "y", "R"),
        "circ": circ_formula("S"),
    }


def two_disjoint_circuits_sentence() -> Sentence:
    """Some component contains two vertex-disjoint circuits."""
    fresh = _Fresh()
    x, y = fresh.vertex(), fresh.vertex()
    return Exists(
        "S",
        And(
            circ_formula("S", fresh),
            Exists(
                "T",
                and_all(
                    [
                        circ_formula("T", fresh),
                        disjoint("S", "T", fresh),
                        Exists(
                            "R",
                            and_all(
                                [
                                    subset("S", "R", fresh),
                                    subset("T", "R", fresh),
                                    Forall(
                                        x,
                                        Implies(
                                            Member(x, "R"),
                                            Forall(
                                                y,
                                                Implies(
                                                    Member(y, "R"),
                                                    conn_formula(x, y, "R", fresh),
                                                ),
                                            ),
                                        ),
                                    ),
                                ]
                            ),
                        ),
                    ]
                ),
            ),
        ),
    )


def cycle_exists_sentence() -> Sentence:
    """Some set of vertices forms a circuit."""
    return Exists("S", circ_formula("S"))


# -- first-order worked examples ----------------------------------------------


def triangle_sentence() -> Sentence:
    return Exists(
        "x",
        Exists(
            "y",
            And(
                Adj("x", "y"),
                Exists("z", And(Adj("y", "z"), Adj("x", "z"))),
            ),
        ),
    )


def isolated_triangle_sentence() -> Sentence:
    """A triangle whose three vertices have no neighbors outside it."""
    w = "w"
    corners = ("x", "y", "z")
    sealed = [
        Forall(
            w,
            Implies(
                Adj(w, v),
                or_all([Eq(w, o) for o in corners if o != v]),
            ),
        )
        for v in corners
    ]
    return Exists(
        "x",
        Exists(
            "y",
            Exists(
                "z",
                and_all([Adj("x", "y"), Adj("y", "z"), Adj("x", "z")] + sealed),
            ),
        ),
    )


def no_unspiked_triangle_sentence() -> Sentence:
    """Every triangle carries a pendant spike.

    A spike of the triangle x,y,z is a vertex w outside it whose single
    neighbor lies among x,y,z.
    """
    spike = Exists(
        "w",
        and_all(
            [
                Not(Eq("w", "x")),
                Not(Eq("w", "y")),
                Not(Eq("w", "z")),
                Exists(
                    "v",
                    and_all(
                        [
                            or_all([Eq("v", "x"), Eq("v", "y"), Eq("v", "z")]),
                            Adj("w", "v"),
                            Forall("u", Implies(Adj("u", "w"), Eq("u", "v"))),
                        ]
                    ),
                ),
            ]
        ),
    )
    return Not(
        Exists(
            "x",
            Exists(
                "y",
                Exists(
                    "z",
                    and_all([Adj("x", "y"), Adj("y", "z"), Adj("x", "z"), Not(spike)]),
                ),
            ),
        )
    )


def diameter_three_sentence() -> Sentence:
    """All vertex pairs joined by a walk of length three."""
    return Forall(
        "x",
        Forall(
            "y",
            Exists("z", Exists("w", and_all([Adj("x", "z"), Adj("z", "w"), Adj("w", "y")]))),
        ),
    )


# -- encoding a first-order sentence on a clean topological clique -------------


def _clean_path_cond(x: str, y: str, p: str, fresh: _Fresh) -> Sentence:
    """P is an induced x-y path inside T meeting S only at its endpoints."""
    z = fresh.vertex()
    return and_all(
        [
            subset(p, "T", fresh),
            path_formula(x, y, p, fresh),
            Forall(
                z,
                Implies(And(Member(z, p), Member(z, "S")), Or(Eq(z, x), Eq(z, y))),
            ),
        ]
    )


def _clean_formula(fresh: _Fresh) -> Sentence:
    x, y = fresh.vertex(), fresh.vertex()
    p, p2 = fresh.set(), fresh.set()
    unique_paths = Forall(
        x,
        Implies(
            Member(x, "S"),
            Forall(
                y,
                Implies(
                    And(Member(y, "S"), Not(Eq(x, y))),
                    And(
                        Exists(p, _clean_path_cond(x, y, p, fresh)),
                        Forall(
                            p,
                            Implies(
                                _clean_path_cond(x, y, p, fresh),
                                Forall(
                                    p2,
                                    Implies(
                                        _clean_path_cond(x, y, p2, fresh),
                                        set_equal(p, p2, fresh),
                                    ),
                                ),
                            ),
                        ),
                    ),
                ),
            ),
        ),
    )
    xp, yp = fresh.vertex(), fresh.vertex()
    q, q2 = fresh.set(), fresh.set()
    u, v = fresh.vertex(), fresh.vertex()
    distinct_pairs = Not(
        Or(
            And(Eq(x, xp), Eq(y, yp)),
            And(Eq(x, yp), Eq(y, xp)),
        )
    )
    edge_ok = or_all(
        [Eq(u, x), Eq(u, y), Eq(u, xp), Eq(u, yp), Eq(v, x), Eq(v, y), Eq(v, xp), Eq(v, yp)]
    )
    no_cross_edges = Forall(
        x,
        Implies(
            Member(x, "S"),
            Forall(
                y,
                Implies(
                    And(Member(y, "S"), Not(Eq(x, y))),
                    Forall(
                        xp,
                        Implies(
                            Member(xp, "S"),
                            Forall(
                                yp,
                                Implies(
                                    and_all([Member(yp, "S"), Not(Eq(xp, yp)), distinct_pairs]),
                                    Forall(
                                        q,
                                        Implies(
                                            _clean_path_cond(x, y, q, fresh),
                                            Forall(
                                                q2,
                                                Implies(
                                                    _clean_path_cond(xp, yp, q2, fresh),
                                                    Forall(
                                                        u,
                                                        Implies(
                                                            Member(u, q),
                                                            Forall(
                                                                v,
                                                                Implies(
                                                                    And(Member(v, q2), Adj(u, v)),
                                                                    edge_ok,
                                                                ),
                                                            ),
                                                        ),
                                                    ),
                                                ),
                                            ),
                                        ),
                                    ),
                                ),
                            ),
                        ),
                    ),
                ),
            ),
        ),
    )
    return And(subset("S", "T", fresh), And(unique_paths, no_cross_edges))


def _relativize(s: Sentence, fresh: _Fresh) -> Sentence:
    """Quantify vertex variables over S; replace adjacency by marked paths."""
    if isinstance(s, Eq):
        return s
    if isinstance(s, Adj):
        p = fresh.set()
        z = fresh.vertex()
        return Exists(
            p,
            And(
                _clean_path_cond(s.left, s.right, p, fresh),
                Exists(z, And(Member(z, p), Member(z, "U"))),
            ),
        )
    if isinstance(s, Not):
        return Not(_relativize(s.body, fresh))
    if isinstance(s, And):
        return And(_relativize(s.left, fresh), _relativize(s.right, fresh))
    if isinstance(s, Or):
        return Or(_relativize(s.left, fresh), _relativize(s.right, fresh))
    if isinstance(s, Implies):
        return Implies(_relativize(s.left, fresh), _relativize(s.right, fresh))
    if isinstance(s, Forall):
        return Forall(s.var, Implies(Member(s.var, "S"), _relativize(s.body, fresh)))
    if isinstance(s, Exists):
        return Exists(s.var, And(Member(s.var, "S"), _relativize(s.body, fresh)))
    raise TypeError(f"not a sentence node: {s!r}")


def _vertex_variables(s: Sentence) -> set[str]:
    if isinstance(s, (Eq, Adj)):
        return {s.left, s.right}
    if isinstance(s, Member):
        return {s.element}
    if isinstance(s, Not):
        return _vertex_variables(s.body)
    if isinstance(s, (And, Or, Implies)):
        return _vertex_variables(s.left) | _vertex_variables(s.right)
    if isinstance(s, (Forall, Exists)):
        out = _vertex_variables(s.body)
        if not is_set_var(s.var):
            out = out | {s.var}
        return out
    raise TypeError(f"not a sentence node: {s!r}")


def encode_on_clean_clique(a: Sentence, k: int) -> Sentence:
    """Lift a first-order sentence to one about clean topological cliques.

    The result asserts the existence of branch vertices S inside a host set
    T forming a clean topological clique, plus a marker set U, such that `a`
    holds on the branch graph whose adjacency is "the connecting path meets
    U".  Input must be pure first-order with at most k vertex variables.
    """
    if not is_first_order(a):
        raise TypeError("input sentence must be pure first-order (no set variables)")
    if free_variables(a):
        raise ValueError("input sentence must be closed")
    nvars = len(_vertex_variables(a))
    if nvars > k:
        raise ValueError(f"sentence uses {nvars} vertex variables, more than k = {k}")
    if {"S", "T", "U"} & _set_variables(a):
        raise ValueError("input sentence may not use the reserved set names S, T, U")
    fresh = _Fresh()
    # keep generated names clear of the input's vertex variables
    taken = _vertex_variables(a)
    while any(f"v{i}" in taken for i in range(1, 400)):
        fresh.i += 400
        break
    body = And(_relativize(a, fresh), _clean_formula(fresh))
    return Exists("S", Exists("T", Exists("U", body)))


def _set_variables(s: Sentence) -> set[str]:
    return {v for v in _all_variables(s) if is_set_var(v)}


def _all_variables(s: Sentence) -> set[str]:
    if isinstance(s, (Eq, Adj)):
        return {s.left, s.right}
    if isinstance(s, Member):
        return {s.element, s.set_var}
    if isinstance(s, Not):
        return _all_variables(s.body)
    if isinstance(s, (And, Or, Implies)):
        return _all_variables(s.left) | _all_variables(s.right)
    if isinstance(s, (Forall, Exists)):
        return _all_variables(s.body) | {s.var}
    raise TypeError(f"not a sentence node: {s!r}")


# -- the nonconvergence sentence ------------------------------------------------

_PATHS = ("P1", "P2", "P3")
_RELSETS = ("DOUBLE", "EXPO", "TOWER", "WOW")


def _less(x: str, y: str, fresh: _Fresh) -> Sentence:
    """Order on marked vertices: path-major, then distance from the s0 hub."""
    cases = []
    for pi in _PATHS:
        q = fresh.set()
        cases.append(
            and_all(
                [
                    Member(x, pi),
                    Member(y, pi),
                    Exists(
                        q,
                        and_all(
                            [
                                subset(q, pi, fresh),
                                path_formula("s0", x, q, fresh),
                                Not(Member(y, q)),
                            ]
                        ),
                    ),
                ]
            )
        )
    for i, j in combinations(range(3), 2):
        cases.append(And(Member(x, _PATHS[i]), Member(y, _PATHS[j])))
    return or_all(cases)


def _next(x: str, y: str, fresh: _Fresh) -> Sentence:
    k = fresh.vertex()
    return And(
        _less(x, y, fresh),
        Not(Exists(k, and_all([Member(k, "AR"), _less(x, k, fresh), _less(k, y, fresh)]))),
    )


def _is_one(x: str, fresh: _Fresh) -> Sentence:
    j = fresh.vertex()
    return And(
        Member(x, "AR"),
        Not(Exists(j, And(Member(j, "AR"), _less(j, x, fresh)))),
    )


def _is_two(x: str, fresh: _Fresh) -> Sentence:
    j = fresh.vertex()
    return And(
        Member(x, "AR"),
        Forall(j, Implies(Member(j, "AR"), iff(_less(j, x, fresh), _is_one(j, fresh)))),
    )


def _rel(relset: str, x: str, y: str, fresh: _Fresh) -> Sentence:
    """x precedes y and some induced x-y path has all internals in `relset`."""
    q = fresh.set()
    z = fresh.vertex()
    return And(
        _less(x, y, fresh),
        Exists(
            q,
            And(
                path_formula(x, y, q, fresh),
                Forall(
                    z,
                    Implies(
                        and_all([Member(z, q), Not(Eq(z, x)), Not(Eq(z, y))]),
                        Member(z, relset),
                    ),
                ),
            ),
        ),
    )


def _forall_ar(names: list[str], body: Sentence) -> Sentence:
    node = body
    for name in reversed(names):
        node = Forall(name, Implies(Member(name, "AR"), node))
    return node


def _relation_axioms(relset: str, prev: str | None, fresh: _Fresh) -> list[Sentence]:
    """Base pair, functionality, successor step, boundary, downward closure.

    The successor rule advances the argument by one and the value by one
    step of `prev` (two order-successors for the base relation itself).
    """
    o, t = fresh.vertex(), fresh.vertex()
    base = Exists(
        o,
        And(
            _is_one(o, fresh),
            Exists(t, And(_is_two(t, fresh), _rel(relset, o, t, fresh))),
        ),
    )
    x, y, z = fresh.vertex(), fresh.vertex(), fresh.vertex()
    functional = _forall_ar(
        [x, y, z],
        Implies(And(_rel(relset, x, y, fresh), _rel(relset, x, z, fresh)), Eq(y, z)),
    )
    if prev is None:
        x1, y1, y2 = fresh.vertex(), fresh.vertex(), fresh.vertex()
        step = _forall_ar(
            [x, y, x1, y1, y2],
            Implies(
                and_all(
                    [
                        _rel(relset, x, y, fresh),
                        _next(x, x1, fresh),
                        _next(y, y1, fresh),
                        _next(y1, y2, fresh),
                    ]
                ),
                _rel(relset, x1, y2, fresh),
            ),
        )
        ny1, ny2 = fresh.vertex(), fresh.vertex()
        value_step_exists = Exists(
            ny1,
            and_all(
                [
                    Member(ny1, "AR"),
                    _next(y, ny1, fresh),
                    Exists(ny2, and_all([Member(ny2, "AR"), _next(ny1, ny2, fresh)])),
                ]
            ),
        )
    else:
        x1, y1 = fresh.vertex(), fresh.vertex()
        step = _forall_ar(
            [x, y, x1, y1],
            Implies(
                and_all(
                    [
                        _rel(relset, x, y, fresh),
                        _next(x, x1, fresh),
                        _rel(prev, y, y1, fresh),
                    ]
                ),
                _rel(relset, x1, y1, fresh),
            ),
        )
        ny1 = fresh.vertex()
        value_step_exists = Exists(
            ny1, And(Member(ny1, "AR"), _rel(prev, y, ny1, fresh))
        )
    x1b, zb = fresh.vertex(), fresh.vertex()
    boundary = _forall_ar(
        [x, y, x1b],
        Implies(
            and_all(
                [
                    _rel(relset, x, y, fresh),
                    _next(x, x1b, fresh),
                    Not(value_step_exists),
                ]
            ),
            Not(Exists(zb, And(Member(zb, "AR"), _rel(relset, x1b, zb, fresh)))),
        ),
    )
    xp, yp = fresh.vertex(), fresh.vertex()
    downward = _forall_ar(
        [x, y, xp],
        Implies(
            And(_rel(relset, x, y, fresh), _less(xp, x, fresh)),
            Exists(yp, And(Member(yp, "AR"), _rel(relset, xp, yp, fresh))),
        ),
    )
    return [base, functional, step, boundary, downward]


def _window_condition(K: int, pi: str, fresh: _Fresh) -> Sentence:
    """Every run of K consecutive internal vertices of `pi` meets AR once."""
    xs = [fresh.vertex() for _ in range(K)]
    hit_once = or_all(
        [
            and_all(
                [Member(xs[j], "AR")]
                + [Not(Member(xs[jj], "AR")) for jj in range(K) if jj != j]
            )
            for j in range(K)
        ]
    )
    node = hit_once
    for j in reversed(range(K)):
        guards = [Member(xs[j], pi), Not(Eq(xs[j], "s0")), Not(Eq(xs[j], "s1"))]
        if j > 0:
            guards.append(Adj(xs[j - 1], xs[j]))
        for jj in range(j - 1):
            guards.append(Not(Eq(xs[jj], xs[j])))
        node = Forall(xs[j], Implies(and_all(guards), node))
    return node


def nonconvergence_sentence(K: int) -> Sentence:
    """Hub pair, three clean paths, a K-spaced marker set, and arithmetic
    relation sets whose axioms force the markers to count; concludes that
    the largest iterated-exponential index reached is even.

    Truth of this sentence on the arithmetized hub graphs flips with the
    parity of the slow inverse, which is what makes its limit probability
    oscillate.
    """
    if K < 2:
        raise ValueError("K must be at least 2")
    fresh = _Fresh()

    def overlap_only_hubs(pi: str, pj: str) -> Sentence:
        z = fresh.vertex()
        return Forall(
            z,
            Implies(And(Member(z, pi), Member(z, pj)), Or(Eq(z, "s0"), Eq(z, "s1"))),
        )

    def no_cross_edges(pi: str, pj: str) -> Sentence:
        u, v = fresh.vertex(), fresh.vertex()
        return Forall(
            u,
            Implies(
                and_all([Member(u, pi), Not(Eq(u, "s0")), Not(Eq(u, "s1"))]),
                Forall(
                    v,
                    Implies(
                        and_all([Member(v, pj), Not(Eq(v, "s0")), Not(Eq(v, "s1"))]),
                        Not(Adj(u, v)),
                    ),
                ),
            ),
        )

    z = fresh.vertex()
    ar_subset = Forall(
        z,
        Implies(
            Member(z, "AR"),
            and_all(
                [
                    or_all([Member(z, pi) for pi in _PATHS]),
                    Not(Eq(z, "s0")),
                    Not(Eq(z, "s1")),
                ]
            ),
        ),
    )
    windows = and_all([_window_condition(K, pi, fresh) for pi in _PATHS])

    o, o2, t, t2 = fresh.vertex(), fresh.vertex(), fresh.vertex(), fresh.vertex()
    unique_one_two = And(
        Exists(
            o,
            And(
                _is_one(o, fresh),
                Forall(o2, Implies(And(Member(o2, "AR"), _is_one(o2, fresh)), Eq(o2, o))),
            ),
        ),
        Exists(
            t,
            And(
                _is_two(t, fresh),
                Forall(t2, Implies(And(Member(t2, "AR"), _is_two(t2, fresh)), Eq(t2, t))),
            ),
        ),
    )

    def off_paths(relset: str) -> Sentence:
        zz = fresh.vertex()
        return Forall(
            zz,
            Implies(
                Member(zz, relset),
                and_all([Not(Member(zz, pi)) for pi in _PATHS]),
            ),
        )

    cx, cy = fresh.vertex(), fresh.vertex()
    even_cx = Exists(cy, And(Member(cy, "AR"), _rel("DOUBLE", cy, cx, fresh)))
    wy, wxp, wyp = fresh.vertex(), fresh.vertex(), fresh.vertex()
    invwow_cx = And(
        Exists(wy, And(Member(wy, "AR"), _rel("WOW", cx, wy, fresh))),
        Forall(
            wxp,
            Implies(
                And(Member(wxp, "AR"), _less(cx, wxp, fresh)),
                Not(Exists(wyp, And(Member(wyp, "AR"), _rel("WOW", wxp, wyp, fresh)))),
            ),
        ),
    )
    conclusion = Exists(cx, and_all([Member(cx, "AR"), even_cx, invwow_cx]))

    # each relation set carries its own axioms inside its quantifier, so a
    # bad witness fails before the deeper set quantifiers are entered
    inner = conclusion
    for relset, prev in zip(
        reversed(_RELSETS), reversed((None,) + _RELSETS[:-1])
    ):
        inner = Exists(
            relset,
            and_all([off_paths(relset)] + _relation_axioms(relset, prev, fresh) + [inner]),
        )
    inner = Exists("AR", and_all([ar_subset, windows, unique_one_two, inner]))
    inner = Exists(
        "P3",
        and_all(
            [
                path_formula("s0", "s1", "P3", fresh),
                overlap_only_hubs("P1", "P3"),
                overlap_only_hubs("P2", "P3"),
                no_cross_edges("P1", "P3"),
                no_cross_edges("P2", "P3"),
                inner,
            ]
        ),
    )
    inner = Exists(
        "P2",
        and_all(
            [
                path_formula("s0", "s1", "P2", fresh),
                overlap_only_hubs("P1", "P2"),
                no_cross_edges("P1", "P2"),
                inner,
            ]
        ),
    )
    inner = Exists("P1", And(path_formula("s0", "s1", "P1", fresh), inner))
    return Exists("s0", Exists("s1", And(Not(Eq("s0", "s1")), inner)))
