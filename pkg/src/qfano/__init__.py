"""Minimum-error state discrimination compared with Fano-inequality error bounds."""
from ._backend import BACKEND
from .bounds import (
    BoundReport,
    FanoSolution,
    build_report,
    error_probability,
    fano_bound_from_measurement,
    fano_holevo_bound,
    fano_lower_root,
    helstrom_bound,
    weak_fano_bounds,
)
from .ensembles import (
    Ensemble,
    PureState,
    average_density,
    symmetric_coherent,
    symmetric_qubits,
    two_qubit_pair,
)
from .infotheory import (
    binary_entropy,
    conditional_entropy,
    holevo_chi,
    mutual_information,
    poisson_entropy,
    shannon_entropy,
    von_neumann_entropy,
)
from .measurement import POM, CondTable, cond_table, helstrom_projective, square_root_measurement
from .montecarlo import TrialRecord, simulate
from .numerics import HermEigen, herm_eig, matrix_function, trace_product

__version__ = "0.1.0"
