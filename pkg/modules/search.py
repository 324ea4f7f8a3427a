"""
Random search for intervals that break the spectral recursion.

Trial k draws its interval from the generator seeded by (seed, k), so a
finding replays from (n, seed, trial) alone.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from engine.intervals import Interval, interval_as_dict, random_complex, random_interval
from engine.spectrum import RecursionVerdict, recursion_residual
from utils.logger import logger


@dataclass(frozen=True)
class SearchResult:
    n: int
    seed: int
    trials: int
    trial: Optional[int] = None
    vertex: Optional[int] = None
    interval: Optional[Interval] = None
    verdict: Optional[RecursionVerdict] = None

    @property
    def found(self) -> bool:
        return self.interval is not None

    def to_dict(self):
        if not self.found:
            return {"found": False, "n": self.n, "seed": self.seed, "trials": self.trials}
        return {
            "found": True,
            "n": self.n,
            "seed": self.seed,
            "trials": self.trials,
            "trial": self.trial,
            "vertex": self.vertex,
            "interval": interval_as_dict(self.interval),
            "verdict": self.verdict.to_dict(),
        }


def search_instance(n: int, seed: int, trial: int) -> Interval:
    """The interval examined by ``trial``; complexes and relative pairs alternate at random."""
    rng = np.random.default_rng([seed, trial])
    max_facets = int(rng.integers(2, 6))
    if rng.random() < 0.3:
        return random_complex(n, rng, max_facets=max_facets)
    return random_interval(n, rng, max_facets=max_facets)


def search_counterexample(
    n: int = 5,
    trials: int = 2000,
    seed: int = 0,
    exact_only: bool = True,
    **tolerances,
) -> SearchResult:
    """First interval (in trial order) whose recursion residual is nonzero at some vertex.

    With ``exact_only`` a finding must come with integral spectra on all four
    sides, so the nonzero residual is exact; otherwise numeric failures count.
    """
    logger.info(f"Searching {trials} random intervals on {n} vertices (seed {seed})")
    for trial in range(trials):
        phi = search_instance(n, seed, trial)
        for e in range(1, n + 1):
            verdict = recursion_residual(phi, e, **tolerances)
            if verdict.holds or (exact_only and not verdict.rigorous):
                continue
            logger.info(f"Trial {trial}: recursion fails at vertex {e} ({verdict.mode})")
            return SearchResult(n, seed, trials, trial, e, phi, verdict)
    logger.info("No counterexample found")
    return SearchResult(n, seed, trials)


def replay(result: SearchResult) -> Interval:
    return search_instance(result.n, result.seed, result.trial)
