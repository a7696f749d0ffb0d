"""Entropies in bits: Shannon, binary, conditional, mutual information, von Neumann, Holevo."""
import math

import numpy as np

from .ensembles import DEFAULT_TAIL_EPS, Ensemble, average_density, fock_cutoff, poisson_logpmf
from .errors import NotDensityOperator, NotHermitian, OutOfRange
from .measurement import CondTable
from .numerics import herm_eig

# probabilities below this are exact zeros inside entropy sums
ZERO_PROB = 1e-15


def _plogp(p: np.ndarray) -> float:
    p = np.asarray(p, dtype=float)
    p = p[p > ZERO_PROB]
    return float(-np.sum(p * np.log2(p))) + 0.0


def shannon_entropy(p) -> float:
    """``-sum p log2 p`` with ``0 log 0 = 0``."""
    p = np.asarray(p, dtype=float)
    if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-12:
        raise OutOfRange("not a probability vector")
    return _plogp(p)


def binary_entropy(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"p={p!r} outside [0, 1]")
    return _plogp(np.array([p, 1.0 - p]))


def conditional_entropy(t: CondTable) -> float:
    """``H(i|j) = -sum_ij p_i P(j|i) log2[P(j|i) p_i / q_j]``."""
    joint = t.priors[:, None] * t.p_given
    q = np.broadcast_to(t.outcome_marginals, joint.shape)
    mask = joint > ZERO_PROB
    h = -np.sum(joint[mask] * np.log2(joint[mask] / q[mask]))
    return float(h) if h > 0.0 else 0.0


def mutual_information(t: CondTable) -> float:
    """``I(i:j) = H(i) - H(i|j)``."""
    return shannon_entropy(t.priors) - conditional_entropy(t)


def von_neumann_entropy(rho) -> float:
    """``-Tr rho log2 rho`` from the eigenvalues of a density operator."""
    try:
        w = herm_eig(rho).eigenvalues
    except NotHermitian as exc:
        raise NotDensityOperator(str(exc)) from exc
    if w[0] < -1e-10:
        raise NotDensityOperator(f"negative eigenvalue {w[0]:.3e}")
    if abs(w.sum() - 1.0) > 1e-9:
        raise NotDensityOperator(f"trace {w.sum():.12g} differs from 1")
    return _plogp(np.clip(w, 0.0, None))


def holevo_chi(e: Ensemble) -> float:
    """Holevo information of a pure-state ensemble, i.e. ``S(rho)`` of the average state."""
    return von_neumann_entropy(average_density(e))


def poisson_entropy(mu: float, tail_eps: float = DEFAULT_TAIL_EPS) -> float:
    """Entropy of Poisson(mu), summed until the cumulative mass reaches ``1 - tail_eps``.

    The cutoff here is not capped: large ``mu`` just sums more terms.
    """
    if not mu > 0:
        raise OutOfRange(f"mu must be positive, got {mu!r}")
    n_max = fock_cutoff(mu, tail_eps, cap=max(512, int(mu + 40 * math.sqrt(mu) + 100)))
    return _plogp(np.exp(poisson_logpmf(mu, np.arange(n_max + 1))))


def gaussian_poisson_entropy(mu: float) -> float:
    """Large-mean approximation ``log2 sqrt(2 pi e mu)``."""
    return 0.5 * math.log2(2.0 * math.pi * math.e * mu)
