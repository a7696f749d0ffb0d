"""Minimum-error probabilities and the error bounds implied by Fano's inequality."""
import math
from dataclasses import asdict, dataclass

import numpy as np

from .ensembles import (
    DEFAULT_TAIL_EPS,
    Ensemble,
    diagonal_regime,
    symmetric_coherent,
    symmetric_qubits,
    two_qubit_pair,
)
from .errors import NoConvergence, OutOfRange, ShapeMismatch
from .infotheory import binary_entropy, conditional_entropy, holevo_chi, shannon_entropy
from .measurement import (
    POM,
    CondTable,
    cond_table,
    helstrom_projective,
    square_root_measurement,
)

SCENARIOS = ("two-qubit", "sym-qubit", "sym-coherent")
ORDER_TOL = 1e-9
RHS_ROUNDOFF = 1e-9


@dataclass(frozen=True)
class FanoSolution:
    """Roots of ``H_bin(p) + p log2(n-1) = rhs``.

    ``lower_root`` is the error bound. ``upper_root`` is ``None`` when the
    inequality holds all the way up to ``p = 1``. Infeasible right-hand sides
    (above ``log2 n``) leave both roots as NaN/None.
    """

    lower_root: float
    upper_root: float | None
    rhs: float
    n: int
    feasible: bool = True


def fano_lhs(p: float, n: int) -> float:
    """``H_bin(p) + p log2(n - 1)``; concave with maximum ``log2 n`` at ``p = (n-1)/n``."""
    extra = p * math.log2(n - 1) if n > 2 else 0.0
    return binary_entropy(p) + extra


def _bisect(g, lo: float, hi: float, xtol: float, max_iter: int) -> float:
    # g(lo) < 0 <= g(hi)
    for _ in range(max_iter):
        if hi - lo <= xtol:
            return 0.5 * (lo + hi)
        mid = 0.5 * (lo + hi)
        if g(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    raise NoConvergence(f"bisection did not reach width {xtol} in {max_iter} steps")


def fano_lower_root(rhs: float, n: int, xtol: float = 1e-12, max_iter: int = 200) -> FanoSolution:
    """Smallest ``p`` with ``H_bin(p) + p log2(n-1) >= rhs``, found by bisection.

    Bisection rather than Newton because the derivative diverges at ``p = 0``.
    """
    if n < 2:
        raise OutOfRange(f"n must be >= 2, got {n}")
    if not math.isfinite(rhs):
        raise OutOfRange("rhs must be finite")
    peak = (n - 1) / n
    top = math.log2(n)
    if rhs > top + 1e-12:
        return FanoSolution(math.nan, None, rhs, n, feasible=False)
    if rhs <= 0.0:
        return FanoSolution(0.0, None, rhs, n)
    if rhs >= top:
        return FanoSolution(peak, peak, rhs, n)
    lower = _bisect(lambda p: fano_lhs(p, n) - rhs, 0.0, peak, xtol, max_iter)
    upper = None
    if rhs > fano_lhs(1.0, n):
        upper = _bisect(lambda p: rhs - fano_lhs(p, n), peak, 1.0, xtol, max_iter)
    return FanoSolution(lower, upper, rhs, n)


def helstrom_bound(p0: float, overlap: complex) -> float:
    """Minimum error probability for two pure states with priors ``(p0, 1-p0)``."""
    if not 0.0 < p0 < 1.0:
        raise OutOfRange(f"p0={p0!r} outside (0, 1)")
    lam2 = abs(overlap) ** 2
    if lam2 > 1.0 + 1e-12:
        raise OutOfRange(f"|overlap|={abs(overlap)!r} exceeds 1")
    return 0.5 * (1.0 - math.sqrt(max(0.0, 1.0 - 4.0 * p0 * (1.0 - p0) * lam2)))


def error_probability(t: CondTable) -> float:
    """``1 - sum_i p_i P(i|i)``, with outcome ``j`` read as a guess of label ``j``."""
    if t.n_states != t.n_outcomes:
        raise ShapeMismatch(f"{t.n_states} states vs {t.n_outcomes} outcomes")
    p_cor = float(np.dot(t.priors, np.diag(t.p_given)))
    return min(max(1.0 - p_cor, 0.0), 1.0)


def fano_bound_from_measurement(e: Ensemble, m: POM) -> FanoSolution:
    return fano_lower_root(conditional_entropy(cond_table(e, m)), e.n)


def fano_holevo_bound(e: Ensemble) -> FanoSolution:
    """Measurement-independent bound with right-hand side ``H(i) - chi``."""
    rhs = shannon_entropy(e.priors) - holevo_chi(e)
    if -RHS_ROUNDOFF < rhs < 0.0:
        rhs = 0.0
    return fano_lower_root(rhs, e.n)


def weak_fano_bounds(rhs1: float, rhs2: float, n: int) -> tuple[float, float]:
    """``(rhs - 1) / log2(n - 1)`` for both right-hand sides, floored at 0.

    Uses ``H_bin <= 1``; only defined for ``n >= 3``.
    """
    if n <= 2:
        raise OutOfRange("weak Fano bounds need n >= 3")
    scale = math.log2(n - 1)
    return max((rhs1 - 1.0) / scale, 0.0), max((rhs2 - 1.0) / scale, 0.0)


def relative_difference(p_bound: float, p_min: float) -> float:
    """``|p_bound - p_min| / p_min``; ``inf`` when ``p_min`` is 0."""
    if p_min == 0.0:
        return math.inf
    return abs(p_bound - p_min) / p_min


def minimum_error_measurement(e: Ensemble) -> POM:
    if e.family == "two-qubit":
        return helstrom_projective(e)
    return square_root_measurement(e)


@dataclass(frozen=True)
class BoundReport:
    scenario: str
    n: int
    theta: float | None
    mu: float | None
    p_err_min: float
    p_fano1: float
    p_fano2: float
    p_weak1: float | None
    p_weak2: float | None
    chi: float
    h_cond: float
    d1: float
    d2: float
    n_max: int | None = None
    diag_regime: bool | None = None

    def as_dict(self) -> dict:
        return asdict(self)


def ensemble_for(scenario: str, *, theta=None, n=None, mu=None, tail_eps=DEFAULT_TAIL_EPS):
    if scenario == "two-qubit":
        return two_qubit_pair(theta, 0.5)
    if scenario == "sym-qubit":
        return symmetric_qubits(n)
    if scenario == "sym-coherent":
        return symmetric_coherent(n, mu, tail_eps)
    raise ValueError(f"unknown scenario {scenario!r}; expected one of {SCENARIOS}")


def build_report(scenario: str, *, theta=None, n=None, mu=None, tail_eps=DEFAULT_TAIL_EPS) -> BoundReport:
    """All bounds and entropies for one parameter point, using the minimum-error measurement."""
    e = ensemble_for(scenario, theta=theta, n=n, mu=mu, tail_eps=tail_eps)
    table = cond_table(e, minimum_error_measurement(e))
    p_min = error_probability(table)
    h_cond = conditional_entropy(table)
    chi = holevo_chi(e)
    fano1 = fano_lower_root(h_cond, e.n)
    fano2 = fano_holevo_bound(e)
    weak1 = weak2 = None
    if e.n > 2:
        weak1, weak2 = weak_fano_bounds(h_cond, fano2.rhs, e.n)
    coherent = scenario == "sym-coherent"
    return BoundReport(
        scenario=scenario,
        n=e.n,
        theta=theta if scenario == "two-qubit" else None,
        mu=mu if coherent else None,
        p_err_min=p_min,
        p_fano1=fano1.lower_root,
        p_fano2=fano2.lower_root,
        p_weak1=weak1,
        p_weak2=weak2,
        chi=chi,
        h_cond=h_cond,
        d1=relative_difference(fano1.lower_root, p_min),
        d2=relative_difference(fano2.lower_root, p_min),
        n_max=e.params["n_max"] if coherent else None,
        diag_regime=diagonal_regime(e.n, mu, tail_eps) if coherent else None,
    )


def ordering_violations(r: BoundReport, tol: float = ORDER_TOL) -> list[str]:
    """Names of the bound-ordering invariants that ``r`` breaks (empty when sound)."""
    bad = []
    if r.p_fano1 > r.p_err_min + tol:
        bad.append("p_fano1 <= p_err_min")
    if r.p_fano2 > r.p_err_min + tol:
        bad.append("p_fano2 <= p_err_min")
    if r.p_fano2 > r.p_fano1 + tol:
        bad.append("p_fano2 <= p_fano1")
    if r.p_weak1 is not None and r.p_weak1 > r.p_fano1 + tol:
        bad.append("p_weak1 <= p_fano1")
    if r.p_weak2 is not None and r.p_weak2 > r.p_fano2 + tol:
        bad.append("p_weak2 <= p_fano2")
    if math.isfinite(r.d1) and r.d2 < r.d1 - tol:
        bad.append("d2 >= d1")
    return bad
