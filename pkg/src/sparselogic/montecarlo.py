"""Seeded Monte Carlo driver.

Trial i of a run draws its graph from the stream (seed, i) as documented in
`rng`, so results are independent of execution order: serial runs and the
process-pool path produce identical numbers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .graphs import Graph, GnpParams, sample_gnp


@dataclass(frozen=True)
class MonteCarloResult:
    n: int
    c: float
    trials: int
    successes: int
    seed: int

    @property
    def estimate(self) -> float:
        return self.successes / self.trials

    @property
    def stderr(self) -> float:
        p = self.estimate
        return math.sqrt(max(p * (1.0 - p), 0.0) / self.trials)

    @property
    def ci95(self) -> tuple[float, float]:
        half = 1.96 * self.stderr
        return (max(0.0, self.estimate - half), min(1.0, self.estimate + half))

    def to_dict(self) -> dict:
        lo, hi = self.ci95
        return {
            "n": self.n,
            "c": self.c,
            "trials": self.trials,
            "successes": self.successes,
            "estimate": self.estimate,
            "stderr": self.stderr,
            "ci95": [lo, hi],
            "seed": self.seed,
        }


def _count_chunk(args) -> int:
    predicate, n, c, seed, start, stop = args
    hits = 0
    for i in range(start, stop):
        g = sample_gnp(GnpParams(n, c, seed), stream_index=i)
        if predicate(g):
            hits += 1
    return hits


def estimate_probability(
    predicate: Callable[[Graph], bool],
    n: int,
    c: float,
    trials: int,
    seed: int,
    threads: int = 1,
) -> MonteCarloResult:
    """Fraction of G(n, c/n) samples satisfying `predicate`.

    `threads` > 1 splits trials across processes; the per-trial seed
    schedule makes the answer identical either way (the predicate must be
    picklable for the parallel path).
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    if threads <= 1:
        hits = _count_chunk((predicate, n, c, seed, 0, trials))
    else:
        bounds = [(trials * k // threads, trials * (k + 1) // threads) for k in range(threads)]
        jobs = [(predicate, n, c, seed, a, b) for a, b in bounds if b > a]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            hits = sum(pool.map(_count_chunk, jobs))
    return MonteCarloResult(n, c, trials, hits, seed)


def estimate_many(
    predicates: dict[str, Callable[[Graph], bool]],
    n: int,
    c: float,
    trials: int,
    seed: int,
) -> dict[str, MonteCarloResult]:
    """Evaluate several predicates on the same sample stream in one pass."""
    hits = {name: 0 for name in predicates}
    for i in range(trials):
        g = sample_gnp(GnpParams(n, c, seed), stream_index=i)
        for name, pred in predicates.items():
            if pred(g):
                hits[name] += 1
    return {
        name: MonteCarloResult(n, c, trials, hits[name], seed) for name in predicates
    }
