"""The three pure-state families: a qubit pair, symmetric qubits, symmetric coherent states."""
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimMismatch, OutOfRange, TruncationOverflow
from .numerics import projector

NORM_TOL = 1e-9
PRIOR_TOL = 1e-12
# |<psi_i'|psi_i>| >= 1 - DISTINCT_TOL counts as identical states
DISTINCT_TOL = 1e-14
DEFAULT_TAIL_EPS = 1e-12
DEFAULT_FOCK_CAP = 512


@dataclass(frozen=True)
class PureState:
    amplitudes: np.ndarray
    basis: str = "qubit"  # "qubit" or "fock"
    n_max: int | None = None  # highest retained Fock level

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=np.complex128)
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)
        if a.ndim != 1 or a.size == 0:
            raise DimMismatch("amplitudes must be a non-empty vector")
        if self.basis not in ("qubit", "fock"):
            raise ValueError(f"unknown basis {self.basis!r}")
        if self.basis == "qubit" and a.size != 2:
            raise DimMismatch("qubit states have two amplitudes")
        if self.basis == "fock" and self.n_max != a.size - 1:
            raise DimMismatch("fock states need n_max == len(amplitudes) - 1")
        norm = float(np.vdot(a, a).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {norm!r} differs from 1")

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def density(self) -> np.ndarray:
        return projector(self.amplitudes)


@dataclass(frozen=True)
class Ensemble:
    """Pure states with prior probabilities.

    ``family`` and ``params`` record how the ensemble was built, for reporting.
    """

    states: tuple
    priors: np.ndarray
    family: str = "custom"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        states = tuple(self.states)
        object.__setattr__(self, "states", states)
        p = np.array(self.priors, dtype=float)
        p.setflags(write=False)
        object.__setattr__(self, "priors", p)
        if len(states) < 2:
            raise OutOfRange("an ensemble needs at least two states")
        if p.shape != (len(states),):
            raise DimMismatch("one prior per state is required")
        if np.any(p < 0) or abs(p.sum() - 1.0) > PRIOR_TOL:
            raise OutOfRange("priors must be nonnegative and sum to 1")
        first = states[0]
        for s in states[1:]:
            if s.basis != first.basis or s.dim != first.dim:
                raise DimMismatch("all states must share one basis and dimension")
        overlaps = np.abs(self.gram())
        np.fill_diagonal(overlaps, 0.0)
        if np.max(overlaps) >= 1.0 - DISTINCT_TOL:
            i, k = np.unravel_index(np.argmax(overlaps), overlaps.shape)
            raise OutOfRange(f"states {i} and {k} are indistinguishable (|overlap| = 1)")

    @property
    def n(self) -> int:
        return len(self.states)

    @property
    def dim(self) -> int:
        return self.states[0].dim

    @property
    def basis(self) -> str:
        return self.states[0].basis

    def amplitude_matrix(self) -> np.ndarray:
        """Row ``i`` holds the amplitudes of state ``i``."""
        return np.array([s.amplitudes for s in self.states])

    def gram(self) -> np.ndarray:
        """``G[i, k] = <psi_i|psi_k>``."""
        a = self.amplitude_matrix()
        return a.conj() @ a.T

    def is_equiprobable(self, tol: float = PRIOR_TOL) -> bool:
        return bool(np.all(np.abs(self.priors - 1.0 / self.n) <= tol))


def two_qubit_pair(theta: float, p0: float = 0.5) -> Ensemble:
    """``cos(t)|0> + sin(t)|1>`` and ``sin(t)|0> + cos(t)|1>`` with priors ``(p0, 1-p0)``."""
    if not 0.0 <= theta <= math.pi / 4:
        raise OutOfRange(f"theta={theta!r} outside [0, pi/4]")
    if not 0.0 < p0 < 1.0:
        raise OutOfRange(f"p0={p0!r} outside (0, 1)")
    c, s = math.cos(theta), math.sin(theta)
    states = (PureState([c, s]), PureState([s, c]))
    return Ensemble(states, [p0, 1.0 - p0], "two-qubit", {"theta": theta, "p0": p0})


def symmetric_qubits(n: int) -> Ensemble:
    """``n`` equiprobable real qubit states at angles ``i*pi/n``."""
    if n < 2:
        raise OutOfRange(f"need n >= 2, got {n}")
    states = tuple(
        PureState([math.cos(i * math.pi / n), math.sin(i * math.pi / n)]) for i in range(n)
    )
    return Ensemble(states, np.full(n, 1.0 / n), "sym-qubit", {"n": n})


def qubit_rotation(n: int) -> np.ndarray:
    """``exp(-i theta Y / 2)`` with ``theta = 2 pi / n``; steps symmetric qubit state i to i+1."""
    half = math.pi / n
    c, s = math.cos(half), math.sin(half)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def poisson_logpmf(mu: float, levels: np.ndarray) -> np.ndarray:
    levels = np.asarray(levels)
    lg = np.array([math.lgamma(k + 1.0) for k in levels.ravel()]).reshape(levels.shape)
    return -mu + levels * math.log(mu) - lg


def fock_cutoff(mu: float, tail_eps: float = DEFAULT_TAIL_EPS, cap: int = DEFAULT_FOCK_CAP) -> int:
    """Smallest ``n_max`` whose Poisson(mu) cumulative mass reaches ``1 - tail_eps``."""
    if not mu > 0:
        raise OutOfRange(f"mu must be positive, got {mu!r}")
    cum = 0.0
    for n in range(cap + 1):
        cum += math.exp(poisson_logpmf(mu, n))
        if cum >= 1.0 - tail_eps:
            return n
    raise TruncationOverflow(f"mu={mu} needs more than {cap} Fock levels at tail_eps={tail_eps}")


def poisson_window(mu: float, tail_eps: float = DEFAULT_TAIL_EPS, cap: int = DEFAULT_FOCK_CAP):
    """``(n_lo, n_hi)``: Fock levels outside this range carry at most ``tail_eps`` each side."""
    n_hi = fock_cutoff(mu, tail_eps, cap)
    cum = 0.0
    n_lo = 0
    for n in range(n_hi + 1):
        cum += math.exp(poisson_logpmf(mu, n))
        if cum > tail_eps:
            n_lo = n
            break
    return n_lo, n_hi


def diagonal_regime(n: int, mu: float, tail_eps: float = DEFAULT_TAIL_EPS) -> bool:
    """True when no two non-negligible Fock levels differ by a multiple of ``n``.

    In that case the average density operator of ``symmetric_coherent(n, mu)``
    is diagonal in the Fock basis.
    """
    n_lo, n_hi = poisson_window(mu, tail_eps)
    return n > n_hi - n_lo


def symmetric_coherent(
    n: int, mu: float, tail_eps: float = DEFAULT_TAIL_EPS, cap: int = DEFAULT_FOCK_CAP
) -> Ensemble:
    """``n`` equiprobable coherent states ``|sqrt(mu) exp(2 pi i k / n)>`` in a truncated Fock basis.

    All states share the cutoff ``n_max = fock_cutoff(mu, tail_eps)`` and are
    renormalized after truncation.
    """
    if n < 2:
        raise OutOfRange(f"need n >= 2, got {n}")
    if not mu > 0:
        raise OutOfRange(f"mu must be positive, got {mu!r}")
    if not 0.0 < tail_eps <= 1e-6:
        raise OutOfRange(f"tail_eps={tail_eps!r} outside (0, 1e-6]")
    n_max = fock_cutoff(mu, tail_eps, cap)
    levels = np.arange(n_max + 1)
    modulus = np.exp(0.5 * poisson_logpmf(mu, levels))
    modulus /= np.linalg.norm(modulus)
    states = []
    for k in range(n):
        # reduce k*m mod n first so the phases are exact multiples of 2 pi / n
        phase = np.exp(2j * np.pi * ((k * levels) % n) / n)
        states.append(PureState(modulus * phase, "fock", n_max))
    return Ensemble(
        tuple(states),
        np.full(n, 1.0 / n),
        "sym-coherent",
        {"n": n, "mu": mu, "tail_eps": tail_eps, "n_max": n_max},
    )


def phase_shift(n: int, n_max: int) -> np.ndarray:
    """``exp(2 pi i a^dagger a / n)`` on Fock levels ``0..n_max``."""
    levels = np.arange(n_max + 1)
    return np.diag(np.exp(2j * np.pi * (levels % n) / n))


def average_density(e: Ensemble) -> np.ndarray:
    """``sum_i p_i |psi_i><psi_i|``."""
    a = e.amplitude_matrix()
    rho = (a.T * e.priors) @ a.conj()
    return 0.5 * (rho + rho.conj().T)
