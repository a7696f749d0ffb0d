"""Dense complex linear algebra for density operators and POM elements.

Matrices are plain ``numpy`` complex128 arrays; the functions here validate
shape and finiteness on the way in and never mutate their arguments.
"""
from typing import Callable, NamedTuple

import numpy as np

from . import _backend
from .errors import DimMismatch, DomainError, NoConvergence, NotHermitian

HERMITIAN_TOL = 1e-10
RELATIVE_CUTOFF = 1e-12
MAX_SWEEPS = 64


class HermEigen(NamedTuple):
    eigenvalues: np.ndarray  # ascending, real
    eigenvectors: np.ndarray  # orthonormal columns


def as_cmatrix(m) -> np.ndarray:
    """Coerce ``m`` to a square, finite complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DimMismatch(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has NaN or infinite entries")
    return a


def hermitian_part(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return ``(m + m^dagger)/2`` after checking the asymmetry is below ``tol``."""
    a = as_cmatrix(m)
    asym = np.max(np.abs(a - a.conj().T))
    if asym > tol * max(1.0, np.max(np.abs(a))):
        raise NotHermitian(f"max |m - m^dagger| = {asym:.3e} exceeds {tol:.1e}")
    return 0.5 * (a + a.conj().T)


def herm_eig(m, tol: float = HERMITIAN_TOL, backend: str | None = None) -> HermEigen:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Eigenvalues come back in ascending order with matching eigenvector columns.
    Raises :class:`NotHermitian` or :class:`NoConvergence`.
    """
    a = hermitian_part(m, tol)
    w, v, sweeps = _backend.kernels(backend).jacobi_eigh(a, MAX_SWEEPS)
    if sweeps < 0:
        raise NoConvergence(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
    order = np.argsort(w, kind="stable")
    return HermEigen(w[order], v[:, order])


def default_cutoff(eigenvalues: np.ndarray) -> float:
    return RELATIVE_CUTOFF * max(float(np.max(eigenvalues)), 0.0)


def matrix_function(
    m,
    f: Callable[[np.ndarray], np.ndarray],
    rank_cutoff: float | None = None,
    eig: HermEigen | None = None,
) -> np.ndarray:
    """Apply ``f`` to the eigenvalues of ``m`` that exceed ``rank_cutoff``.

    Eigenvalues at or below the cutoff are mapped to 0, so for ``f = x**-0.5``
    this is the pseudo-inverse square root on the support of ``m``. The default
    cutoff is ``1e-12`` times the largest eigenvalue. A precomputed
    decomposition can be passed as ``eig``.
    """
    if eig is None:
        eig = herm_eig(m)
    w, v = eig
    cutoff = default_cutoff(w) if rank_cutoff is None else rank_cutoff
    keep = w > cutoff
    fw = np.zeros_like(w)
    with np.errstate(all="ignore"):
        vals = np.asarray(f(w[keep]), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise DomainError("f is not finite on a retained eigenvalue")
    fw[keep] = vals
    out = (v * fw) @ v.conj().T
    return 0.5 * (out + out.conj().T)


def pseudo_inv_sqrt(m, rank_cutoff: float | None = None) -> np.ndarray:
    return matrix_function(m, lambda x: 1.0 / np.sqrt(x), rank_cutoff)


def support_projector(m, rank_cutoff: float | None = None) -> np.ndarray:
    """Orthogonal projector onto the eigenvectors of ``m`` above the cutoff."""
    return matrix_function(m, np.ones_like, rank_cutoff)


def trace_product(a, b) -> complex:
    """``Tr(a @ b)`` without forming the product."""
    a = as_cmatrix(a)
    b = as_cmatrix(b)
    if a.shape != b.shape:
        raise DimMismatch(f"{a.shape} vs {b.shape}")
    return complex(np.sum(a * b.T))


def trace_product_real(a, b) -> float:
    """Real part of ``Tr(a @ b)``, for pairs of positive semidefinite operators."""
    return trace_product(a, b).real


def projector(psi) -> np.ndarray:
    """``|psi><psi|`` for an amplitude vector."""
    psi = np.asarray(psi, dtype=np.complex128)
    return np.outer(psi, psi.conj())
