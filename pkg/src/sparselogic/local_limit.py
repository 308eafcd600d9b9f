"""Local limit laws for sparse random graphs.

Cycle neighborhoods (a short cycle with bounded-depth trees on its vertices)
occur as asymptotically independent Poisson counts.  This module computes
the limiting means, samples the matching generative model (Poisson cycle
counts plus Poisson(c) branching trees), and compares both against graph
censuses.

Two mean conventions are implemented.  The displayed closed form divides the
labeled-embedding count by an extra v!; a brute-force component census
adjudicates between them, and the labeled-embedding convention wins (see
tests/test_local_limit.py and the acceptance suite).  It is the default.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .equivalence import EquivSignature, RootedTree, cycle_trees, h_signature
from .errors import CapabilityError, HypothesisViolationError, ParameterError
from .graphs import (
    Graph,
    GnpParams,
    automorphism_count,
    count_cycles,
    cycle_census,
    sample_gnp,
)
from .rng import generator


class LambdaConvention(enum.Enum):
    PAPER_EXACT = "paper_exact"  # c^v e^{-wc} / (v! |Aut|), as displayed
    LABELED_EMBEDDING = "labeled_embedding"  # c^v e^{-wc} / |Aut|


#: Adjudicated by the component-census experiment (acceptance criterion 4):
#: the labeled-embedding convention reproduces empirical component counts;
#: the displayed v! variant is off by exactly that factor.
DEFAULT_LAMBDA_CONVENTION = LambdaConvention.LABELED_EMBEDDING


@dataclass(frozen=True)
class CycleNeighborhood:
    """A cycle of length >= 3 carrying one rooted tree per cycle vertex.

    The tree at index i is rooted at cycle vertex i; tree depth is bounded
    by R.  `v` counts all vertices, `w` those at depth strictly below R
    (the vertices whose neighborhoods the ambient graph must not extend).
    """

    cycle_length: int
    trees: tuple[RootedTree, ...]
    R: int

    def __post_init__(self):
        if self.cycle_length < 3:
            raise ParameterError("cycle length must be at least 3")
        if len(self.trees) != self.cycle_length:
            raise ParameterError("need exactly one rooted tree per cycle vertex")
        if any(t.depth > self.R for t in self.trees):
            raise ParameterError(f"tree depth exceeds bound R = {self.R}")

    @property
    def v(self) -> int:
        return sum(t.size for t in self.trees)

    @property
    def w(self) -> int:
        def shallow(t: RootedTree, d: int) -> int:
            if d >= self.R:
                return 0
            return 1 + sum(shallow(c, d + 1) for c in t.children)

        return sum(shallow(t, 0) for t in self.trees)

    def to_graph(self) -> Graph:
        edges = [(i, (i + 1) % self.cycle_length) for i in range(self.cycle_length)]
        next_id = self.cycle_length

        def attach(t: RootedTree, root: int) -> None:
            nonlocal next_id
            for child in t.children:
                cid = next_id
                next_id += 1
                edges.append((root, cid))
                attach(child, cid)

        for i, t in enumerate(self.trees):
            attach(t, i)
        return Graph(self.cycle_length + sum(t.size - 1 for t in self.trees), edges)

    def signature(self, R: int | None = None) -> EquivSignature:
        return h_signature(self, R if R is not None else self.R)

    @staticmethod
    def from_cycle(g: Graph, cycle: Sequence[int], R: int) -> "CycleNeighborhood":
        length, trees = cycle_trees(g, cycle, R)
        return CycleNeighborhood(length, trees, R)


def lambda_H(h: CycleNeighborhood, c: float, convention: LambdaConvention = DEFAULT_LAMBDA_CONVENTION) -> float:
    """Limiting mean of the count of cycles whose R-neighborhood matches h."""
    if c <= 0:
        raise ParameterError("c must be positive")
    aut = automorphism_count(h.to_graph())
    base = c ** h.v * math.exp(-h.w * c) / aut
    if convention is LambdaConvention.PAPER_EXACT:
        return base / math.factorial(h.v)
    return base


def poisson_inverse_sample(lam: float, u: float) -> int:
    """Poisson draw by cdf inversion; exact and deterministic for lam < 30."""
    if lam < 0:
        raise ParameterError("lambda must be non-negative")
    if lam >= 30:
        raise ParameterError("inversion sampler reserved for lambda < 30")
    k = 0
    p = math.exp(-lam)
    cdf = p
    while u > cdf:
        k += 1
        p *= lam / k
        cdf += p
        if k > 10_000:  # numerically unreachable for lam < 30
            break
    return k


def _gw_tree(c: float, depth_left: int, rng) -> RootedTree:
    if depth_left == 0:
        return RootedTree()
    births = poisson_inverse_sample(c, rng.random())
    return RootedTree(tuple(_gw_tree(c, depth_left - 1, rng) for _ in range(births)))


def sample_local_structure(c: float, R: int, seed: int, stream_index: int = 0) -> list[CycleNeighborhood]:
    """Draw the limiting local picture directly.

    Cycle counts per length i in 3..R are Poisson(c^i / 2i); every cycle
    vertex then grows an independent branching tree with Poisson(c) births,
    truncated at depth R.
    """
    if c <= 0:
        raise ParameterError("c must be positive")
    if R < 3:
        raise ParameterError("R must be at least 3")
    rng = generator(seed, stream_index)
    out: list[CycleNeighborhood] = []
    for i in range(3, R + 1):
        count = poisson_inverse_sample(c ** i / (2 * i), rng.random())
        for _ in range(count):
            trees = tuple(_gw_tree(c, R, rng) for _ in range(i))
            out.append(CycleNeighborhood(i, trees, R))
    return out


@dataclass
class CensusRow:
    class_id: str
    cycle_length: int
    lambda_predicted: float | None
    mean_empirical: float
    stderr: float
    trials: int
    passes: bool | None

    def to_dict(self) -> dict:
        return {
            "class_id": self.class_id,
            "cycle_length": self.cycle_length,
            "lambda_predicted": self.lambda_predicted,
            "mean_empirical": self.mean_empirical,
            "stderr": self.stderr,
            "trials": self.trials,
            "pass": self.passes,
        }


@dataclass
class CovarianceCheck:
    pair: tuple[str, str]
    covariance: float
    stderr: float
    passes: bool


@dataclass
class PoissonCensusReport:
    c: float
    R: int
    n: int
    trials: int
    seed: int
    convention: LambdaConvention
    rows: list[CensusRow]
    covariances: list[CovarianceCheck]
    warn_insufficient: bool

    @property
    def passed(self) -> bool:
        row_ok = all(r.passes for r in self.rows if r.passes is not None)
        return row_ok and all(cv.passes for cv in self.covariances)

    def to_dict(self) -> dict:
        return {
            "c": self.c,
            "R": self.R,
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "convention": self.convention.value,
            "rows": [r.to_dict() for r in self.rows],
            "covariances": [
                {
                    "pair": list(cv.pair),
                    "covariance": cv.covariance,
                    "stderr": cv.stderr,
                    "pass": cv.passes,
                }
                for cv in self.covariances
            ],
            "warn_insufficient": self.warn_insufficient,
            "pass": self.passed,
        }


def _signature_is_capped(sig: EquivSignature) -> bool:
    def walk(node) -> bool:
        if isinstance(node, tuple):
            if len(node) == 2 and isinstance(node[1], int):
                inner, cnt = node
                if isinstance(inner, tuple):
                    return cnt >= sig.R or walk(inner)
            return any(walk(x) for x in node)
        return False

    return walk(sig.data)


def census_vs_poisson(
    c: float,
    R: int,
    n: int,
    trials: int,
    seed: int,
    convention: LambdaConvention = DEFAULT_LAMBDA_CONVENTION,
    sigma_multiplier: float = 3.0,
) -> PoissonCensusReport:
    """Sample G(n, c/n) repeatedly and census cycle neighborhoods.

    Per cycle length, the total count is compared against c^i/2i.  Per
    R-equivalence class, the count is compared against the class mean under
    `convention` when the class pins down a single isomorphism type (no
    threshold cap engaged); capped classes are reported without prediction.
    Pairwise covariances between cycle-length totals are checked against 0.
    """
    if n < 3:
        raise ParameterError("n too small for a cycle census")
    lengths = list(range(3, R + 1))
    len_sums = {i: 0.0 for i in lengths}
    len_sq = {i: 0.0 for i in lengths}
    cross = {(a, b): 0.0 for ai, a in enumerate(lengths) for b in lengths[ai + 1 :]}
    class_sums: dict[str, float] = {}
    class_sq: dict[str, float] = {}
    class_rep: dict[str, CycleNeighborhood] = {}
    class_len: dict[str, int] = {}

    for t in range(trials):
        g = sample_gnp(GnpParams(n, c, seed), stream_index=t)
        census = cycle_census(g, R)
        per_len = {i: 0 for i in lengths}
        per_class: dict[str, int] = {}
        for length, (cnt, balls) in census.items():
            per_len[length] = cnt
            for b in balls:
                try:
                    nb = CycleNeighborhood.from_cycle(g, b.center, R)
                except HypothesisViolationError:
                    # another cycle within distance R; possible at finite n,
                    # vanishing in the limit; counted but not classified
                    key = f"non_unicyclic_neighborhood_len_{length}"
                    per_class[key] = per_class.get(key, 0) + 1
                    class_len.setdefault(key, length)
                    continue
                key = nb.signature(R).key()
                per_class[key] = per_class.get(key, 0) + 1
                if key not in class_rep:
                    class_rep[key] = nb
                    class_len[key] = length
        for i in lengths:
            len_sums[i] += per_len[i]
            len_sq[i] += per_len[i] ** 2
        for (a, b) in cross:
            cross[(a, b)] += per_len[a] * per_len[b]
        for key, cnt in per_class.items():
            class_sums[key] = class_sums.get(key, 0.0) + cnt
            class_sq[key] = class_sq.get(key, 0.0) + cnt ** 2

    rows: list[CensusRow] = []
    for i in lengths:
        mean = len_sums[i] / trials
        var = max(len_sq[i] / trials - mean ** 2, 0.0)
        se = math.sqrt(var / trials)
        pred = c ** i / (2 * i)
        ok = abs(mean - pred) <= sigma_multiplier * se if se > 0 else mean == pred
        rows.append(CensusRow(f"cycles_len_{i}", i, pred, mean, se, trials, ok))
    for key in sorted(class_sums):
        mean = class_sums[key] / trials
        var = max(class_sq[key] / trials - mean ** 2, 0.0)
        se = math.sqrt(var / trials)
        rep = class_rep.get(key)
        if rep is None or _signature_is_capped(rep.signature(R)):
            pred = None
            ok = None
        else:
            try:
                pred = lambda_H(rep, c, convention)
                ok = abs(mean - pred) <= sigma_multiplier * se if se > 0 else None
            except CapabilityError:
                # class is a single isomorphism type but too large for the
                # exact automorphism count; reported without prediction
                pred = None
                ok = None
        rows.append(CensusRow(key, class_len[key], pred, mean, se, trials, ok))

    covs: list[CovarianceCheck] = []
    means = {i: len_sums[i] / trials for i in lengths}
    for (a, b), sp in cross.items():
        cov = sp / trials - means[a] * means[b]
        var_a = max(len_sq[a] / trials - means[a] ** 2, 0.0)
        var_b = max(len_sq[b] / trials - means[b] ** 2, 0.0)
        se = math.sqrt(max(var_a * var_b, 1e-300) / trials)
        covs.append(
            CovarianceCheck(
                (f"cycles_len_{a}", f"cycles_len_{b}"),
                cov,
                se,
                abs(cov) <= sigma_multiplier * se,
            )
        )

    expected_hits = trials * sum(c ** i / (2 * i) for i in lengths)
    warn = trials < 100 or expected_hits < 10
    return PoissonCensusReport(c, R, n, trials, seed, convention, rows, covs, warn)


def generative_vs_census(
    c: float, R: int, n: int, trials: int, seed: int, sigma_multiplier: float = 3.0
) -> dict:
    """Two-sample check: cycle-length counts from sampled graphs against the
    direct generative model.  Means must agree within the combined error."""
    lengths = list(range(3, R + 1))
    g_sum = {i: 0.0 for i in lengths}
    g_sq = {i: 0.0 for i in lengths}
    m_sum = {i: 0.0 for i in lengths}
    m_sq = {i: 0.0 for i in lengths}
    for t in range(trials):
        g = sample_gnp(GnpParams(n, c, seed), stream_index=t)
        census = {i: 0 for i in lengths}
        for length, cnt in count_cycles(g, R).items():
            census[length] = cnt
        for i in lengths:
            g_sum[i] += census[i]
            g_sq[i] += census[i] ** 2
        local = sample_local_structure(c, R, seed + 1, stream_index=t)
        mine = {i: 0 for i in lengths}
        for nb in local:
            mine[nb.cycle_length] += 1
        for i in lengths:
            m_sum[i] += mine[i]
            m_sq[i] += mine[i] ** 2
    out = {"c": c, "R": R, "n": n, "trials": trials, "rows": [], "pass": True}
    for i in lengths:
        mg, mm = g_sum[i] / trials, m_sum[i] / trials
        vg = max(g_sq[i] / trials - mg ** 2, 0.0)
        vm = max(m_sq[i] / trials - mm ** 2, 0.0)
        se = math.sqrt((vg + vm) / trials)
        ok = abs(mg - mm) <= sigma_multiplier * se if se > 0 else mg == mm
        out["rows"].append(
            {"length": i, "graph_mean": mg, "model_mean": mm, "stderr": se, "pass": ok}
        )
        out["pass"] = out["pass"] and ok
    return out
