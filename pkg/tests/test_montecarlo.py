import math

import numpy as np
import pytest

from qfano.bounds import error_probability, minimum_error_measurement
from qfano.ensembles import symmetric_coherent, symmetric_qubits, two_qubit_pair
from qfano.errors import OutOfRange
from qfano.measurement import cond_table, helstrom_projective, table_from_probabilities
from qfano.montecarlo import RNG_NAME, TrialRecord, simulate, simulate_table


def test_orthogonal_pair_never_errs(backend):
    e = two_qubit_pair(0.0, 0.5)
    for trials in (1, 17, 100_000):
        rec = simulate(e, helstrom_projective(e), trials, seed=3, backend=backend)
        assert rec.errors == 0 and rec.empirical_p_err == 0 and rec.std_err == 0
        assert rec.agrees_with(0.0)


@pytest.mark.parametrize(
    "e,expected",
    [(symmetric_qubits(5), 0.6), (two_qubit_pair(math.pi / 6, 0.5), 0.25)],
    ids=["sym-qubit-5", "two-qubit-pi/6"],
)
def test_million_trials_match_closed_form(e, expected):
    rec = simulate(e, minimum_error_measurement(e), 10**6, seed=11)
    assert abs(rec.empirical_p_err - expected) <= 5 * rec.std_err


@pytest.mark.parametrize(
    "e",
    [symmetric_qubits(3), symmetric_coherent(2, 0.5), symmetric_coherent(4, 0.3), symmetric_coherent(9, 1.0)],
    ids=lambda e: f"{e.family}-{e.n}",
)
def test_matches_analytic_error_probability(e):
    t = cond_table(e, minimum_error_measurement(e))
    rec = simulate_table(t, 10**6, seed=5)
    assert rec.agrees_with(error_probability(t))


def test_same_seed_is_bitwise_reproducible(backend):
    e = symmetric_coherent(4, 0.3)
    m = minimum_error_measurement(e)
    a = simulate(e, m, 200_000, seed=99, backend=backend)
    b = simulate(e, m, 200_000, seed=99, backend=backend)
    assert a == b
    assert a != simulate(e, m, 200_000, seed=100, backend=backend)


def test_worker_split_is_order_independent(backend):
    e = symmetric_qubits(7)
    m = minimum_error_measurement(e)
    single = simulate(e, m, 300_001, seed=8, backend=backend)
    for workers in (2, 3, 8):
        assert simulate(e, m, 300_001, seed=8, workers=workers, backend=backend) == single


def test_backends_agree_bitwise():
    from qfano import _backend

    if "compiled" not in _backend.available():
        pytest.skip("extension not built")
    e = symmetric_coherent(5, 0.7)
    m = minimum_error_measurement(e)
    assert simulate(e, m, 250_000, 4, backend="compiled") == simulate(e, m, 250_000, 4, backend="python")


def test_record_fields():
    rec = TrialRecord.from_counts(1000, 250, seed=1)
    assert rec.empirical_p_err == 0.25
    assert rec.std_err == pytest.approx(math.sqrt(0.25 * 0.75 / 1000))
    assert rec.rng == RNG_NAME


def test_sampler_frequencies():
    # label/outcome frequencies follow priors and rows (chi-square-free check at 6 sigma)
    t = table_from_probabilities([[0.7, 0.2, 0.1], [0.0, 1.0, 0.0], [0.3, 0.3, 0.4]], [0.5, 0.3, 0.2])
    trials = 400_000
    rec = simulate_table(t, trials, seed=1)
    p = error_probability(t)
    assert abs(rec.empirical_p_err - p) <= 6 * math.sqrt(p * (1 - p) / trials)


def test_rejects_bad_arguments():
    t = table_from_probabilities(np.eye(2), [0.5, 0.5])
    with pytest.raises(OutOfRange):
        simulate_table(t, 0, 1)
    with pytest.raises(OutOfRange):
        simulate_table(table_from_probabilities([[0.5, 0.25, 0.25]], [1.0]), 10, 1)
