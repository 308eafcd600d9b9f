"""Second-moment apparatus: path-expectation recurrences, absolute constants,
copy-count expectations, and exact small-model oracles.

The setting: a supercritical G(n, p), p = c/n with c > 1, conditioned on a
planted copy of a graph on vertex set V = {0..m-1}.  P_s(a, b) is the
expected number of s-edge paths between a and b in the conditioned model.
The recurrences x_s, x_s^- (endpoints leaving V) and y_s (both endpoints in
V) dominate P_s; the closed bounds X_s, X_s^- dominate the recurrences once
n is large enough for the 1% margins built into the constants to absorb the
L*m*s/n correction terms.  Exact expectations for tiny n serve as an
independent oracle below the recurrences.

Large quantities (copy-count expectations at realistic sizes) are handled in
log space; the recurrences themselves stay within float range on every
documented grid and are computed directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations

from .errors import CapabilityError, ParameterError
from .graphs import Graph

PATHS_PER_START_FACTOR = 50  # crude O(k) cap on within-copy path starts

EXACT_ORACLE_MAX_N = 12
EXACT_ORACLE_MAX_S = 6


def constants_LM(c: float) -> tuple[float, float, float]:
    """(L, M1, M) with 1% safety margins over the strict inequalities.

    The driving series sum_{k>=1} 50 k c^{-k} has closed form 50c/(c-1)^2.
    """
    if c <= 1:
        raise ParameterError("series sum_k 50 k c^-k diverges for c <= 1")
    series = PATHS_PER_START_FACTOR * c / (c - 1) ** 2
    L = 1.01 * (1.0 + series)
    M1 = L * (1.0 + series)
    M = 1.01 * M1
    return L, M1, M


@dataclass
class RecurrenceTable:
    """Arrays indexed 1..s_max (entry [s] at list index s-1)."""

    n: int
    m: int
    p: float
    s_max: int
    L: float
    M1: float
    M: float
    x: list[float]
    x_minus: list[float]
    y: list[float]
    bound_x: list[float]
    bound_x_minus: list[float]
    bound_y: list[float]

    @property
    def c(self) -> float:
        return self.p * self.n

    def chain_holds(self) -> dict[str, bool]:
        return {
            "x_le_bound": all(a <= b for a, b in zip(self.x, self.bound_x)),
            "x_minus_le_bound": all(a <= b for a, b in zip(self.x_minus, self.bound_x_minus)),
            "y_le_bound": all(a <= b for a, b in zip(self.y, self.bound_y)),
        }

    def rows(self) -> list[dict]:
        out = []
        for i in range(self.s_max):
            out.append(
                {
                    "s": i + 1,
                    "x": self.x[i],
                    "X": self.bound_x[i],
                    "x_minus": self.x_minus[i],
                    "X_minus": self.bound_x_minus[i],
                    "y": self.y[i],
                    "y_bound": self.bound_y[i],
                }
            )
        return out


def compute_recurrences(n: int, m: int, p: float, s_max: int) -> RecurrenceTable:
    """Evaluate the three recurrences and their closed bounds.

        x_1 = x_1^- = p,  y_1 = 1
        x_s^- = p n x_{s-1}^- + p m x_{s-1}
        x_s   = x_s^- + sum_{k=1}^{s-1} 50 k x_{s-k}^-
        y_s   = 3 + p n x_{s-1} + p m y_{s-1} + 50 s p
                  + sum_{k=1}^{s-2} 50 k (p n x_{s-k-1} + p m y_{s-k-1})

    Bounds: X_s = L p^s n^{s-1}, X_s^- = p^s n^{s-1} (1 + L m s / n),
    and 4 + M p^s n^{s-1} for y_s.
    """
    c = p * n
    if c <= 1:
        raise ParameterError("recurrences need c = p n > 1")
    if s_max < 1:
        raise ParameterError("s_max must be at least 1")
    L, M1, M = constants_LM(c)
    F = PATHS_PER_START_FACTOR
    x = [p]
    xm = [p]
    y = [1.0]
    for s in range(2, s_max + 1):
        xm_s = p * n * xm[s - 2] + p * m * x[s - 2]
        x_s = xm_s + sum(F * k * xm[s - k - 1] for k in range(1, s))
        y_s = (
            3.0
            + p * n * x[s - 2]
            + p * m * y[s - 2]
            + F * s * p
            + sum(F * k * (p * n * x[s - k - 2] + p * m * y[s - k - 2]) for k in range(1, s - 1))
        )
        for val in (xm_s, x_s, y_s):
            if not math.isfinite(val):
                raise CapabilityError(f"recurrence overflow at s = {s}; use log-space sizes")
        xm.append(xm_s)
        x.append(x_s)
        y.append(y_s)
    bx, bxm, by = [], [], []
    for s in range(1, s_max + 1):
        # p^s n^(s-1) = c^s / n; via logs to dodge intermediate under/overflow
        pn = math.exp(s * math.log(p) + (s - 1) * math.log(n))
        bx.append(L * pn)
        bxm.append(pn * (1.0 + L * m * s / n))
        by.append(4.0 + M * pn)
    return RecurrenceTable(n, m, p, s_max, L, M1, M, x, xm, y, bx, bxm, by)


@dataclass(frozen=True)
class HSpec:
    """Size profile of a planted structure.

    Hub graphs: v = 3w - 1 + l(w - 1), e = 3w + lw, so e - v = l + 1.
    Topological cliques: v = k + C(k,2)(w - 1), e = v + C(k,2) - k.
    `l` may be fractional for abstract parameter studies.
    """

    v: int
    e: int
    w: int
    l: float
    k1: float | None = None
    K: int | None = None
    kind: str = "generic"

    @staticmethod
    def from_hub_graph(w: int, l: int, k1: float | None = None, K: int | None = None) -> "HSpec":
        v = 3 * w - 1 + l * (w - 1)
        e = 3 * w + l * w
        return HSpec(v, e, w, l, k1, K, kind="hub")

    @staticmethod
    def from_topological_clique(k: int, w: int, k1: float | None = None) -> "HSpec":
        pairs = k * (k - 1) // 2
        v = k + pairs * (w - 1)
        e = v + pairs - k
        return HSpec(v, e, w, pairs, k1, None, kind="ctk")

    def epsilon_eff(self, n: int) -> float:
        return self.l / math.log(n)


@dataclass
class ExpectationReport:
    log_value: float
    log_value_asymptotic: float
    exponent_in_log_n_units: float
    k1_log_c: float | None
    constraint_ok: bool | None

    def to_dict(self) -> dict:
        return {
            "log_value": self.log_value,
            "log_value_asymptotic": self.log_value_asymptotic,
            "exponent_in_log_n_units": self.exponent_in_log_n_units,
            "k1_log_c": self.k1_log_c,
            "constraint_k1_log_c_gt_1": self.constraint_ok,
        }


def expectation_EX(spec: HSpec, n: int, c: float) -> ExpectationReport:
    """log of E[X] = (n)_v p^e, the expected ordered-copy count in G(n, c/n).

    Also reports the asymptotic form e log c - (e - v) log n and, when k1 is
    known, whether k1 log c > 1 (a violated constraint is a warning, not an
    error; experiments may probe the failing side).
    """
    if spec.v > n:
        raise ParameterError("planted structure larger than the ambient graph")
    p = c / n
    log_fall = sum(math.log(n - i) for i in range(spec.v))
    log_value = log_fall + spec.e * math.log(p)
    log_asym = spec.e * math.log(c) - (spec.e - spec.v) * math.log(n)
    exponent = log_asym / math.log(n)
    k1_log_c = spec.k1 * math.log(c) if spec.k1 is not None else None
    ok = (k1_log_c > 1) if k1_log_c is not None else None
    return ExpectationReport(log_value, log_asym, exponent, k1_log_c, ok)


def ctk_exponent(k: int, k1: float, c: float) -> float:
    """Exponent of n in the clique-copy expectation: k1 C(k,2) log c - t."""
    pairs = k * (k - 1) // 2
    t = pairs - k
    return k1 * pairs * math.log(c) - t


def plus_one_edge_expectation(spec: HSpec, n: int, c: float) -> dict:
    """Expected copies of the structure with one extra edge, relative to E[X].

    There are C(v,2) - e placements for the extra edge and each costs one
    more factor p, so the ratio is (C(v,2) - e) * p.  The ratio must drop
    below 1/2 for the clean-copy argument to close.
    """
    p = c / n
    positions = spec.v * (spec.v - 1) // 2 - spec.e
    ratio = positions * p
    return {
        "positions": positions,
        "ratio": ratio,
        "below_half": ratio < 0.5,
        "vanishes": ratio < 1.0,
    }


@dataclass(frozen=True)
class PlantedModel:
    """G(n, p) conditioned to contain a fixed copy of `planted` on 0..m-1."""

    n: int
    planted: Graph

    def __post_init__(self):
        if self.planted.n > self.n:
            raise ParameterError("planted graph larger than ambient vertex set")


def exact_path_expectation(
    model: PlantedModel, a: int, b: int, s: int, p: float, exclude_planted_first_step: bool = False
) -> float:
    """Exact E[number of s-edge paths a -> b] in the conditioned model.

    Sums p^(number of non-planted edges) over all tuples of distinct
    vertices.  Exhaustive: capped at n <= 12, s <= 6.  With
    `exclude_planted_first_step`, paths whose first edge is planted are
    dropped (the x^- variant).
    """
    n, planted = model.n, model.planted
    if n > EXACT_ORACLE_MAX_N or s > EXACT_ORACLE_MAX_S:
        raise CapabilityError(
            f"exact oracle capped at n <= {EXACT_ORACLE_MAX_N}, s <= {EXACT_ORACLE_MAX_S}"
        )
    if not (0 <= a < n and 0 <= b < n) or a == b and s > 0:
        if a == b:
            raise ParameterError("endpoints must differ")
        raise ParameterError("endpoints outside vertex range")
    m = planted.n

    def is_planted(u: int, v: int) -> bool:
        return u < m and v < m and planted.has_edge(u, v)

    others = [v for v in range(n) if v not in (a, b)]
    total = 0.0
    for mids in permutations(others, s - 1):
        seq = (a,) + mids + (b,)
        if exclude_planted_first_step and is_planted(seq[0], seq[1]):
            continue
        alpha = sum(1 for i in range(s) if not is_planted(seq[i], seq[i + 1]))
        total += p ** alpha
    return total


def overlap_contribution_bound(spec: HSpec, n: int, c: float) -> dict:
    """The overlap side of the variance calculation, as powers of n.

    Copies meeting the planted set contribute at most n^(-1) M^l times the
    main term; this is a genuinely negative power of n exactly when
    eps_eff * log M < 1, where eps_eff = l / log n.  Also evaluates the
    non-overlap main-term correction factor (1 + (log n)^3 / n)^l, which
    must be near 1 for the main term to carry the expectation.
    """
    L, M1, M = constants_LM(c)
    eps_eff = spec.epsilon_eff(n)
    log_M = math.log(M)
    product = eps_eff * log_M
    n_power = -1.0 + product
    factor = (1.0 + math.log(n) ** 3 / n) ** spec.l
    return {
        "L": L,
        "M": M,
        "l": spec.l,
        "eps_eff": eps_eff,
        "log_M": log_M,
        "eps_log_M": product,
        "condition_ok": product < 1.0,
        "n_power": n_power,
        "strictly_negative_power": n_power < 0.0,
        "nonoverlap_factor": factor,
        "nonoverlap_factor_dev": abs(factor - 1.0),
    }


def conditioned_extension_probability(c: float, l: float) -> float:
    """Upper bound (1 - e^-c)^(l/8) on the chance any extension survives.

    Diagnostic only: a large expected extension count does not by itself
    make extensions likely, and this bound quantifies how fast the chance
    decays.  Not used by any other bound.
    """
    if c <= 0:
        raise ParameterError("c must be positive")
    return (1.0 - math.exp(-c)) ** (l / 8.0)
