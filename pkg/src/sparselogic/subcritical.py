"""The subcritical decision procedure: an eps-wide interval for the limiting
probability of any sentence at c < 1.

In the limit, a subcritical graph is "all trees" plus an independent Poisson
family of unicyclic components, one count per isomorphism type, with mean
c^v e^{-vc} / |Aut|.  The procedure truncates to types of size at most K and
fewer than L unicyclic components in total, enumerates component profiles by
probability, evaluates the sentence on a finite representative model per
profile (the profile's components plus m_rep copies of every tree on at most
s_max vertices), and adds all unaccounted probability mass to the upper end
of the interval.

Truncation tails are computed from the cycle-plus-branching decomposition:
a type of cycle length i dresses the cycle with i independent Borel(c)
trees, so the size of the component follows a Borel-Tanner law.  The same
decomposition double-checks the enumerated per-type means (the two sums
agree exactly; see tests).

Sentence truth on the tree background is an approximation knob.  Every
profile is evaluated at the requested knobs and one step smaller; a profile
whose truth changes is reported by raising UnstableSentenceError rather
than silently answered.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement

from fractions import Fraction

from .closed_form import C, ClosedForm, Exp, Product, RationalScale, evaluate
from .errors import CapabilityError, ParameterError
from .graphs import Graph, automorphism_count, disjoint_union
from .logic import CheckLimits, Sentence, check
from .logic.syntax import is_first_order

MAX_ENUM_SIZE = 10

KNOB_LADDER = ((3, 5), (2, 4), (2, 3), (1, 3), (1, 2), (1, 1))


class UnstableSentenceError(RuntimeError):
    """Sentence truth changed between consecutive background knob settings."""

    def __init__(self, pairs: list):
        super().__init__(
            "sentence is unstable under the tree-background approximation: "
            f"{len(pairs)} profile(s) changed truth between knob settings"
        )
        self.pairs = pairs


def total_unicyclic_mean(c: float) -> float:
    """Limiting mean number of unicyclic components: sum_{i>=3} c^i / 2i."""
    if not 0 < c < 1:
        raise ParameterError("subcritical regime needs 0 < c < 1")
    return 0.5 * (-math.log(1.0 - c) - c - c * c / 2.0)


def borel_tanner_pmf(i: int, c: float, s: int) -> float:
    """P[total size of i independent Borel(c) trees equals s], s >= i."""
    if s < i:
        return 0.0
    return math.exp(
        math.log(i) - math.log(s) - c * s + (s - i) * math.log(c * s) - math.lgamma(s - i + 1)
    )


def unicyclic_mass_above(c: float, K: int) -> float:
    """Limiting mean number of unicyclic components of size > K."""
    total = total_unicyclic_mean(c)
    kept = 0.0
    for i in range(3, K + 1):
        mu_i = c ** i / (2 * i)
        kept += mu_i * sum(borel_tanner_pmf(i, c, s) for s in range(i, K + 1))
    return total - kept


def poisson_tail(mean: float, k: int) -> float:
    """P[Poisson(mean) >= k]."""
    if k <= 0:
        return 1.0
    term = math.exp(-mean)
    cdf = term
    for j in range(1, k):
        term *= mean / j
        cdf += term
    return max(0.0, 1.0 - cdf)


@dataclass(frozen=True)
class TruncationChoice:
    K: int
    L: int
    size_tail_mass: float
    count_tail_mass: float
    rebalanced: bool


def choose_truncation(c: float, eps: float) -> TruncationChoice:
    """Smallest (K, L) with both truncation tails at most eps/4.

    K is capped at the enumeration bound; when the cap binds, the honest
    (larger) size tail is carried into the interval bookkeeping instead, so
    the final interval width still comes out at most eps or the decision
    fails loudly.
    """
    if not 0 < c < 1:
        raise ParameterError("subcritical regime needs 0 < c < 1")
    if not 0 < eps < 1:
        raise ParameterError("eps must be in (0, 1)")
    budget = eps / 4.0
    K = None
    for cand in range(3, MAX_ENUM_SIZE + 1):
        if unicyclic_mass_above(c, cand) <= budget:
            K = cand
            break
    rebalanced = K is None
    if K is None:
        K = MAX_ENUM_SIZE
    total = total_unicyclic_mean(c)
    L = 1
    while poisson_tail(total, L) > budget:
        L += 1
    return TruncationChoice(K, L, unicyclic_mass_above(c, K), poisson_tail(total, L), rebalanced)


# -- isomorph-free enumeration ---------------------------------------------------


@lru_cache(maxsize=None)
def rooted_trees(size: int) -> tuple[tuple, ...]:
    """Canonical rooted trees on `size` vertices as sorted nested tuples."""
    if size < 1:
        return ()
    if size == 1:
        return ((),)
    out: set[tuple] = set()

    def parts(remaining: int, max_part: int, acc: list[int]):
        if remaining == 0:
            yield tuple(acc)
            return
        for part in range(min(remaining, max_part), 0, -1):
            acc.append(part)
            yield from parts(remaining - part, part, acc)
            acc.pop()

    for sizes in parts(size - 1, size - 1, []):
        groups: dict[int, int] = {}
        for s in sizes:
            groups[s] = groups.get(s, 0) + 1
        pools = [(s, rooted_trees(s), cnt) for s, cnt in groups.items()]

        def assemble(gi: int, acc: tuple):
            if gi == len(pools):
                out.add(tuple(sorted(acc)))
                return
            s, pool, cnt = pools[gi]
            for combo in combinations_with_replacement(pool, cnt):
                assemble(gi + 1, acc + combo)

        assemble(0, ())
    return tuple(sorted(out))


def rooted_tuple_to_graph(t: tuple) -> Graph:
    edges: list[tuple[int, int]] = []
    counter = [0]

    def attach(node: tuple, parent: int) -> None:
        my = counter[0]
        counter[0] += 1
        if parent >= 0:
            edges.append((parent, my))
        for child in node:
            attach(child, my)

    attach(t, -1)
    return Graph(counter[0], edges)


def _tree_size(t: tuple) -> int:
    return 1 + sum(_tree_size(c) for c in t)


@lru_cache(maxsize=None)
def free_trees(size: int) -> tuple[Graph, ...]:
    """Unrooted trees on `size` vertices, one per isomorphism class.

    Deduplicates rooted trees through their center-rooted canonical form.
    """

    def center_canon(g: Graph) -> tuple:
        deg = [len(g.adj[v]) for v in range(g.n)]
        alive = set(range(g.n))
        layer = [v for v in alive if deg[v] <= 1]
        while len(alive) > 2:
            nxt = []
            for v in layer:
                alive.discard(v)
                for u in g.adj[v]:
                    if u in alive:
                        deg[u] -= 1
                        if deg[u] == 1:
                            nxt.append(u)
            layer = nxt

        def rooted_at(root: int, parent: int) -> tuple:
            return tuple(sorted(rooted_at(u, root) for u in g.adj[root] if u != parent))

        return min(rooted_at(r, -1) for r in alive)

    seen: dict[tuple, Graph] = {}
    for t in rooted_trees(size):
        g = rooted_tuple_to_graph(t)
        key = center_canon(g)
        seen.setdefault(key, g)
    return tuple(seen[k] for k in sorted(seen))


@dataclass(frozen=True)
class UnicyclicType:
    graph: Graph
    size: int
    cycle_length: int
    aut: int
    mu_form: ClosedForm

    def mu(self, c: float) -> float:
        return evaluate(self.mu_form, c)


def _mu_closed_form(v: int, aut: int) -> ClosedForm:
    node: ClosedForm = C()
    for _ in range(v - 1):
        node = Product(node, C())
    return RationalScale(Fraction(1, aut), Product(node, Exp(RationalScale(Fraction(-v), C()))))


def enumerate_unicyclic_types(K: int) -> list[UnicyclicType]:
    """All connected unicyclic graphs on at most K vertices, one per class,
    with automorphism count and limiting-mean closed form."""
    if K > MAX_ENUM_SIZE:
        raise CapabilityError(f"unicyclic enumeration capped at {MAX_ENUM_SIZE} vertices")
    if K < 3:
        raise ParameterError("unicyclic graphs need at least 3 vertices")
    out: list[UnicyclicType] = []
    for v in range(3, K + 1):
        for cyc_len in range(3, v + 1):
            extra = v - cyc_len
            by_size: dict[int, tuple] = {}
            seen: set[tuple] = set()

            def necklaces(slots: int, budget: int):
                """Tuples of rooted trees (sizes sum to budget + slots)."""
                def go(idx: int, left: int, acc: list[tuple]):
                    if idx == slots:
                        if left == 0:
                            yield tuple(acc)
                        return
                    for sz in range(1, left - (slots - idx - 1) + 1):
                        for t in rooted_trees(sz):
                            acc.append(t)
                            yield from go(idx + 1, left - sz, acc)
                            acc.pop()

                yield from go(0, budget + slots, [])

            for seq in necklaces(cyc_len, extra):
                best = None
                for order in (seq, seq[::-1]):
                    for shift in range(cyc_len):
                        cand = tuple(order[(shift + a) % cyc_len] for a in range(cyc_len))
                        if best is None or cand < best:
                            best = cand
                if best in seen:
                    continue
                seen.add(best)
                edges = [(a, (a + 1) % cyc_len) for a in range(cyc_len)]
                counter = [cyc_len]

                def attach(node: tuple, parent: int) -> None:
                    for child in node:
                        my = counter[0]
                        counter[0] += 1
                        edges.append((parent, my))
                        attach(child, my)

                for root_idx, t in enumerate(best):
                    attach(t, root_idx)
                g = Graph(v, edges)
                aut = automorphism_count(g)
                out.append(UnicyclicType(g, v, cyc_len, aut, _mu_closed_form(v, aut)))
    return out


# -- profiles and the decision -----------------------------------------------------


@dataclass(frozen=True)
class UnicyclicProfile:
    """Counts per enumerated type (sparse; indexes into the type list)."""

    counts: tuple[tuple[int, int], ...]  # (type index, count), count >= 1
    prob: float

    def total(self) -> int:
        return sum(cnt for _, cnt in self.counts)


def _profiles_best_first(mus: list[float], mu_total: float, L: int, pop_cap: int = 500_000):
    """Profiles with total count < L, yielded in decreasing probability.

    A profile asserts exact counts on the enumerated types and zero
    components of every other (larger) type, so the vacuum factor uses the
    full mean, not just the enumerated part.  Adding any component
    multiplies the probability by mu/(count+1) < 1, so best-first expansion
    from the empty profile visits profiles in exact probability order.
    """
    import heapq

    base = math.exp(-mu_total)
    start: tuple[int, ...] = ()
    heap: list[tuple[float, tuple[int, ...]]] = [(-base, start)]
    seen = {start}
    pops = 0
    while heap:
        neg, multi = heapq.heappop(heap)
        pops += 1
        if pops > pop_cap:
            raise CapabilityError("profile enumeration budget exhausted")
        prob = -neg
        counts: dict[int, int] = {}
        for idx in multi:
            counts[idx] = counts.get(idx, 0) + 1
        yield UnicyclicProfile(tuple(sorted(counts.items())), prob)
        if len(multi) + 1 >= L:
            continue
        last = multi[-1] if multi else 0
        for j in range(last, len(mus)):
            child = multi + (j,)
            if child in seen:
                continue
            seen.add(child)
            k = counts.get(j, 0)
            heapq.heappush(heap, (-(prob * mus[j] / (k + 1)), child))


@dataclass
class ProfileRecord:
    description: str
    prob: float
    truth: bool
    model_vertices: int

    def to_dict(self) -> dict:
        return {
            "profile": self.description,
            "prob": self.prob,
            "truth": self.truth,
            "model_vertices": self.model_vertices,
        }


@dataclass
class DecisionResult:
    lo: float
    hi: float
    eps: float
    c: float
    K: int
    L: int
    mass_accounted: float
    knobs: tuple[int, int]
    stability_knobs: tuple[int, int]
    profiles: list[ProfileRecord]

    def to_dict(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "eps": self.eps,
            "c": self.c,
            "K": self.K,
            "L": self.L,
            "mass_accounted": self.mass_accounted,
            "knobs": {"m_rep": self.knobs[0], "s_max": self.knobs[1]},
            "stability_knobs": {
                "m_rep": self.stability_knobs[0],
                "s_max": self.stability_knobs[1],
            },
            "profiles": [p.to_dict() for p in self.profiles],
        }


def _background(m_rep: int, s_max: int) -> list[Graph]:
    trees: list[Graph] = []
    for size in range(1, s_max + 1):
        for t in free_trees(size):
            trees.extend([t] * m_rep)
    return trees


def _model_for(profile: UnicyclicProfile, types: list[UnicyclicType], bg: list[Graph]) -> Graph:
    parts: list[Graph] = []
    for idx, cnt in profile.counts:
        parts.extend([types[idx].graph] * cnt)
    parts.extend(bg)  # profile components first: earlier witnesses for the checker
    return disjoint_union(*parts) if parts else Graph(0, [])


def _knob_schedule(requested: tuple[int, int]) -> list[tuple[int, int]]:
    ladder = [requested] + [k for k in KNOB_LADDER if k != requested]
    seen = []
    for k in ladder:
        if k not in seen:
            seen.append(k)
    return seen


def decide(
    a: Sentence,
    c: float,
    eps: float,
    m_rep: int = 3,
    s_max: int = 5,
    limits: CheckLimits = CheckLimits(),
) -> DecisionResult:
    """Interval of width at most eps around the limiting probability of `a`.

    Set-quantifier sentences force the representative models under the
    brute-force cap, which may mean smaller background knobs than requested;
    the knobs actually used are reported, and instability across consecutive
    knob settings raises instead of answering.
    """
    trunc = choose_truncation(c, eps)
    types = enumerate_unicyclic_types(trunc.K)
    mus = [t.mu(c) for t in types]

    # stop enumerating once the eps/2 budget for unaccounted mass is met;
    # truncation tails already spent up to eps/2 of it
    target = 1.0 - eps / 2.0
    kept: list[UnicyclicProfile] = []
    acc = 0.0
    for pr in _profiles_best_first(mus, total_unicyclic_mean(c), trunc.L):
        kept.append(pr)
        acc += pr.prob
        if acc >= target:
            break

    fo = is_first_order(a)
    schedule = _knob_schedule((m_rep, s_max))

    def model_fits(knobs: tuple[int, int]) -> bool:
        bg = _background(*knobs)
        bg_n = sum(t.n for t in bg)
        biggest = max((pr.total() for pr in kept), default=0) * trunc.K + bg_n
        cap = limits.fo_max_vertices if fo else limits.mso_max_vertices
        return biggest <= cap

    primary = None
    for knobs in schedule:
        if model_fits(knobs):
            primary = knobs
            break
    if primary is None:
        raise CapabilityError(
            "no background setting fits the checking cap; the sentence is out of desk scale"
        )
    rest = schedule[schedule.index(primary) + 1 :]
    partner = next((k for k in rest if model_fits(k)), None)

    def eval_profiles(knobs: tuple[int, int]) -> list[bool]:
        bg = _background(*knobs)
        out = []
        for pr in kept:
            model = _model_for(pr, types, bg)
            out.append(check(model, a, limits=limits))
        return out

    truths = eval_profiles(primary)
    if partner is not None:
        alt = eval_profiles(partner)
        unstable = [
            (_describe(pr, types), t1, t2)
            for pr, t1, t2 in zip(kept, truths, alt)
            if t1 != t2
        ]
        if unstable:
            raise UnstableSentenceError(unstable)
    else:
        partner = primary

    records = []
    lo = 0.0
    mass = 0.0
    bg_n = sum(t.n for t in _background(*primary))
    for pr, truth in zip(kept, truths):
        mass += pr.prob
        if truth:
            lo += pr.prob
        actual = sum(types[idx].size * cnt for idx, cnt in pr.counts) + bg_n
        records.append(ProfileRecord(_describe(pr, types), pr.prob, truth, actual))
    hi = lo + (1.0 - mass)
    if hi - lo > eps:
        raise CapabilityError(
            f"achievable interval width {hi - lo:.4f} exceeds eps = {eps}; "
            "the truncation caps cannot meet this tolerance"
        )
    return DecisionResult(lo, hi, eps, c, trunc.K, trunc.L, mass, primary, partner, records)


def _describe(pr: UnicyclicProfile, types: list[UnicyclicType]) -> str:
    if not pr.counts:
        return "all-trees"
    bits = []
    for idx, cnt in pr.counts:
        t = types[idx]
        bits.append(f"{cnt}x(v={t.size},cycle={t.cycle_length},aut={t.aut},id={idx})")
    return " + ".join(bits)
