"""Monte-Carlo check of analytic error probabilities.

Each trial draws a label ``i`` from the priors and an outcome ``j`` from
``P(.|i)`` by inverse-CDF sampling. Uniforms come from a counter-based
splitmix64 stream: trial ``t`` uses counters ``2t`` and ``2t + 1``, so any
split of the trial range over workers reproduces the single-stream counts
exactly.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _backend
from .ensembles import Ensemble
from .errors import OutOfRange
from .measurement import POM, CondTable, cond_table

RNG_NAME = "splitmix64-counter"
_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class TrialRecord:
    trials: int
    errors: int
    empirical_p_err: float
    std_err: float
    seed: int
    rng: str = RNG_NAME

    @classmethod
    def from_counts(cls, trials: int, errors: int, seed: int) -> "TrialRecord":
        p = errors / trials
        return cls(trials, errors, p, math.sqrt(p * (1.0 - p) / trials), seed)

    def agrees_with(self, p_err: float, n_sigma: float = 5.0) -> bool:
        """``|empirical - p_err| <= n_sigma * std_err``.

        When the estimate has zero variance (no errors, or all errors) it must
        match ``p_err`` to 1e-12.
        """
        tol = max(n_sigma * self.std_err, 1e-12)
        return abs(self.empirical_p_err - p_err) <= tol


def _cdfs(t: CondTable) -> tuple[np.ndarray, np.ndarray]:
    prior_cdf = np.cumsum(t.priors / t.priors.sum())
    prior_cdf[-1] = 1.0
    rows = t.p_given / t.p_given.sum(axis=1, keepdims=True)
    row_cdf = np.cumsum(rows, axis=1)
    row_cdf[:, -1] = 1.0
    return prior_cdf, row_cdf


def simulate_table(
    t: CondTable,
    trials: int,
    seed: int,
    workers: int = 1,
    backend: str | None = None,
) -> TrialRecord:
    """Sample ``trials`` (label, outcome) pairs from a conditional table and count errors."""
    if trials < 1:
        raise OutOfRange("trials must be >= 1")
    if t.n_states != t.n_outcomes:
        raise OutOfRange("error counting needs one outcome per state")
    seed = int(seed) & _U64
    prior_cdf, row_cdf = _cdfs(t)
    k = _backend.kernels(backend)
    if workers <= 1:
        errors = k.count_errors(prior_cdf, row_cdf, seed, 0, trials)
    else:
        bounds = np.linspace(0, trials, workers + 1).astype(np.int64)
        spans = [(int(a), int(b - a)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            errors = sum(
                pool.map(lambda s: k.count_errors(prior_cdf, row_cdf, seed, s[0], s[1]), spans)
            )
    return TrialRecord.from_counts(trials, int(errors), seed)


def simulate(
    e: Ensemble,
    m: POM,
    trials: int,
    seed: int,
    workers: int = 1,
    backend: str | None = None,
) -> TrialRecord:
    """Prepare states from ``e``, measure with ``m`` and count misidentifications."""
    return simulate_table(cond_table(e, m), trials, seed, workers, backend)
