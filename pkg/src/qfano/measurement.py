"""Probability operator measures and the conditional-probability tables they induce."""
from dataclasses import dataclass

import numpy as np

from .ensembles import Ensemble, average_density
from .errors import DimMismatch, UnsupportedEnsemble
from .numerics import as_cmatrix, herm_eig, matrix_function, projector

POSITIVITY_TOL = 1e-10
COMPLETENESS_TOL = 1e-9
ROW_TOL = 1e-9
ENTRY_TOL = 1e-12


@dataclass(frozen=True)
class POM:
    """Measurement elements ``Pi_j`` plus the projector they resolve.

    ``support`` is the identity for a measurement on the full space, or the
    projector onto the span of the ensemble when the average state is
    rank-deficient (truncated Fock spaces).
    """

    elements: tuple
    support: np.ndarray

    def __post_init__(self):
        elems = tuple(as_cmatrix(el) for el in self.elements)
        support = as_cmatrix(self.support)
        if any(el.shape != support.shape for el in elems):
            raise DimMismatch("POM elements and support differ in dimension")
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "support", support)
        min_eig, gap = pom_diagnostics(self)
        if min_eig < -POSITIVITY_TOL:
            raise ValueError(f"POM element has eigenvalue {min_eig:.3e} < 0")
        if gap > COMPLETENESS_TOL:
            raise ValueError(f"POM elements miss the support projector by {gap:.3e}")

    @property
    def n_outcomes(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return self.support.shape[0]


def pom_diagnostics(m: POM) -> tuple[float, float]:
    """Smallest eigenvalue over all elements and ``max |sum_j Pi_j - support|``."""
    min_eig = min(float(np.linalg.eigvalsh(el)[0]) for el in m.elements)
    gap = float(np.max(np.abs(sum(m.elements) - m.support)))
    return min_eig, gap


@dataclass(frozen=True)
class CondTable:
    """``p_given[i, j] = P(j|i)`` together with the priors ``p_i`` and marginals ``q_j``."""

    p_given: np.ndarray
    priors: np.ndarray
    outcome_marginals: np.ndarray | None = None

    def __post_init__(self):
        p = np.array(self.p_given, dtype=float)
        priors = np.array(self.priors, dtype=float)
        if p.ndim != 2 or priors.shape != (p.shape[0],):
            raise DimMismatch("p_given must be n_states x n_outcomes with one prior per row")
        if np.any(p < -ENTRY_TOL) or np.any(p > 1.0 + ENTRY_TOL):
            raise ValueError("conditional probabilities outside [0, 1]")
        p = np.clip(p, 0.0, 1.0)
        rows = p.sum(axis=1)
        if np.max(np.abs(rows - 1.0)) > ROW_TOL:
            raise ValueError(f"rows of P(j|i) sum to {rows}, not 1")
        q = priors @ p
        if self.outcome_marginals is not None:
            given = np.asarray(self.outcome_marginals, dtype=float)
            if given.shape != q.shape or np.max(np.abs(given - q)) > 1e-12:
                raise ValueError("outcome marginals disagree with sum_i p_i P(j|i)")
        for arr in (p, priors, q):
            arr.setflags(write=False)
        object.__setattr__(self, "p_given", p)
        object.__setattr__(self, "priors", priors)
        object.__setattr__(self, "outcome_marginals", q)

    @property
    def n_states(self) -> int:
        return self.p_given.shape[0]

    @property
    def n_outcomes(self) -> int:
        return self.p_given.shape[1]


def helstrom_projective(e: Ensemble) -> POM:
    """Optimal von Neumann measurement for two equiprobable qubit states.

    Projects onto the positive and negative eigenspaces of ``rho_0 - rho_1``;
    for ``two_qubit_pair`` this is the computational basis.
    """
    if e.n != 2 or e.basis != "qubit" or not e.is_equiprobable():
        raise UnsupportedEnsemble("needs exactly two equiprobable qubit states")
    gamma = e.states[0].density() - e.states[1].density()
    w, v = herm_eig(gamma)
    plus = projector(v[:, 1])
    minus = projector(v[:, 0])
    return POM((plus, minus), np.eye(2, dtype=np.complex128))


def square_root_measurement(e: Ensemble, rank_cutoff: float | None = None) -> POM:
    """``Pi_j = (1/N) rho^-1/2 |psi_j><psi_j| rho^-1/2`` for an equiprobable ensemble.

    ``rho^-1/2`` is the pseudo-inverse square root on the support of the
    average state, so the elements resolve that support rather than the whole
    (possibly truncated) space. Each element is built as an outer product and
    is therefore positive semidefinite to rounding.
    """
    if not e.is_equiprobable():
        raise UnsupportedEnsemble("square-root measurement needs equal priors")
    rho = average_density(e)
    eig = herm_eig(rho)
    inv_sqrt = matrix_function(rho, lambda x: 1.0 / np.sqrt(x), rank_cutoff, eig=eig)
    support = matrix_function(rho, np.ones_like, rank_cutoff, eig=eig)
    scale = 1.0 / np.sqrt(e.n)
    elements = tuple(projector(scale * (inv_sqrt @ s.amplitudes)) for s in e.states)
    return POM(elements, support)


def cond_table(e: Ensemble, m: POM) -> CondTable:
    """``P(j|i) = <psi_i|Pi_j|psi_i>`` for every state and outcome."""
    if m.dim != e.dim:
        raise DimMismatch(f"POM acts on dimension {m.dim}, states live in {e.dim}")
    a = e.amplitude_matrix()
    p = np.empty((e.n, m.n_outcomes))
    for j, el in enumerate(m.elements):
        p[:, j] = np.einsum("ia,ab,ib->i", a.conj(), el, a).real
    return CondTable(p, e.priors)


def table_from_probabilities(p_given, priors) -> CondTable:
    return CondTable(np.asarray(p_given, dtype=float), np.asarray(priors, dtype=float))
