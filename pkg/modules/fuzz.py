"""
Strong-map fuzz harness.

Each trial draws a random matroid M on n + |A| elements and a random set A,
builds the interval (IN(M - A), IN(M / A)) on the n remaining elements and
records whether its Laplacian spectra are integral and whether it satisfies
the spectral recursion at every vertex. Trial k uses the generator seeded by
(seed, k), so any single trial replays on its own.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from engine.intervals import interval_as_dict
from engine.laplacian import spectrum
from engine.matroid import random_matroid, strong_map_interval
from engine.spectrum import check_recursion_all_vertices
from modules.serialization import FuzzConfig
from utils.logger import logger


@dataclass(frozen=True)
class TrialResult:
    trial: int
    seed: Tuple[int, int]
    backend: str
    n: int
    gap: int
    matroid: dict
    removed: Tuple[int, ...]
    interval: dict
    integral: bool
    holds: bool
    failing_vertices: Tuple[int, ...] = ()
    rigorous: bool = True

    @property
    def is_counterexample(self) -> bool:
        return not (self.integral and self.holds)

    def to_dict(self, full: bool = False):
        out = {
            "trial": self.trial,
            "seed": list(self.seed),
            "backend": self.backend,
            "n": self.n,
            "gap": self.gap,
            "removed": list(self.removed),
            "integral": self.integral,
            "holds": self.holds,
            "rigorous": self.rigorous,
            "failing_vertices": list(self.failing_vertices),
        }
        if full:
            out["matroid"] = self.matroid
            out["interval"] = self.interval
        return out


@dataclass
class GapTally:
    trials: int = 0
    integral: int = 0
    recursion_holds: int = 0
    both: int = 0

    def add(self, result: TrialResult):
        self.trials += 1
        self.integral += result.integral
        self.recursion_holds += result.holds
        self.both += result.integral and result.holds

    @property
    def pass_rate(self) -> float:
        return self.both / self.trials if self.trials else 1.0

    def to_dict(self):
        return {
            "trials": self.trials,
            "integral": self.integral,
            "recursion_holds": self.recursion_holds,
            "both": self.both,
        }


@dataclass
class FuzzReport:
    config: FuzzConfig
    results: List[TrialResult] = field(default_factory=list)

    @property
    def tallies(self) -> Dict[int, GapTally]:
        tallies: Dict[int, GapTally] = {}
        for result in self.results:
            tallies.setdefault(result.gap, GapTally()).add(result)
        return dict(sorted(tallies.items()))

    @property
    def counterexamples(self) -> List[TrialResult]:
        return [r for r in self.results if r.is_counterexample]

    def to_dict(self):
        return {
            "config": self.config.model_dump(),
            "tallies": {str(gap): tally.to_dict() for gap, tally in self.tallies.items()},
            "trials": [r.to_dict() for r in self.results],
            "counterexamples": [r.to_dict(full=True) for r in self.counterexamples],
        }


def run_trial(config: FuzzConfig, trial: int, **tolerances) -> TrialResult:
    """One strong-map trial; deterministic in (config.seed, trial).

    ``tolerances`` go to the recursion check; all but the residual tolerance
    also go to the spectra.
    """
    rng = np.random.default_rng([config.seed, trial])
    n = int(rng.integers(config.n_min, config.n_max + 1))
    gap = int(rng.choice(config.rank_gaps))
    backend = str(rng.choice(config.backends))
    total = n + gap
    matroid = random_matroid(backend, total, rng)
    removed = tuple(sorted(int(v) + 1 for v in rng.choice(total, size=gap, replace=False)))

    phi = strong_map_interval(matroid, removed)
    spectrum_tolerances = {k: v for k, v in tolerances.items() if k != "tolerance"}
    integral = spectrum(phi, **spectrum_tolerances).integral
    verdicts = check_recursion_all_vertices(phi, **tolerances)
    failing = tuple(e for e, v in verdicts.items() if not v.holds)
    rigorous = all(v.rigorous for v in verdicts.values())
    return TrialResult(
        trial=trial,
        seed=(config.seed, trial),
        backend=backend,
        n=n,
        gap=gap,
        matroid=matroid.to_dict(),
        removed=removed,
        interval=interval_as_dict(phi),
        integral=integral,
        holds=not failing,
        failing_vertices=failing,
        rigorous=rigorous,
    )


def _run_trial_payload(payload) -> TrialResult:
    config_data, trial, tolerances = payload
    return run_trial(FuzzConfig.model_validate(config_data), trial, **tolerances)


def fuzz_conjecture(config: FuzzConfig, jobs: Optional[int] = None, **tolerances) -> FuzzReport:
    """Run ``config.trials`` trials, in parallel processes when jobs > 1."""
    jobs = config.jobs if jobs is None else jobs
    report = FuzzReport(config)
    if config.trials == 0:
        return report

    logger.info(
        f"Fuzzing {config.trials} strong-map pairs (n {config.n_min}..{config.n_max}, "
        f"gaps {config.rank_gaps}, backends {config.backends}, seed {config.seed}, jobs {jobs})"
    )
    if jobs > 1:
        payloads = [(config.model_dump(), t, tolerances) for t in range(config.trials)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_trial_payload, payloads))
    else:
        results = [run_trial(config, t, **tolerances) for t in range(config.trials)]

    report.results = sorted(results, key=lambda r: r.trial)
    for result in report.counterexamples:
        logger.info(
            f"Trial {result.trial} ({result.backend}, n={result.n}, |A|={result.gap}): "
            f"integral={result.integral}, recursion fails at {list(result.failing_vertices)}"
        )
    for gap, tally in report.tallies.items():
        logger.info(f"|A|={gap}: {tally.both}/{tally.trials} integral and recursive")
    return report
