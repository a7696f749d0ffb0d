import csv
import io
import json
import math

import numpy as np
import pytest

from qfano import cli
from qfano.bounds import ordering_violations
from qfano.cli import RunConfig, main, run_montecarlo_check, run_sym_coherent, run_sym_qubit, run_two_qubit
from qfano.errors import ConfigError
from qfano.measurement import table_from_probabilities


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_two_qubit_zero_theta():
    rows = run_two_qubit(RunConfig("two-qubit", theta_min=0.0, theta_max=0.0, theta_steps=1))
    assert len(rows) == 1
    assert rows[0]["p_err_min"] == rows[0]["p_fano1"] == rows[0]["p_fano2"] == 0


def test_two_qubit_pi_over_six():
    t = math.pi / 6
    (row,) = run_two_qubit(RunConfig("two-qubit", theta_min=t, theta_max=t, theta_steps=1))
    assert row["p_err_min"] == pytest.approx(0.25, abs=1e-12)
    assert row["p_fano1"] == pytest.approx(0.25, abs=1e-9)


def test_two_qubit_near_identical():
    t = math.pi / 4 - 1e-6
    (row,) = run_two_qubit(RunConfig("two-qubit", theta_min=t, theta_max=t, theta_steps=1))
    assert row["p_err_min"] == pytest.approx(0.5, abs=1e-5)


def test_sym_qubit_rows():
    rows = {r["n"]: r for r in run_sym_qubit(RunConfig("sym-qubit", n_min=3, n_max=7))}
    assert rows[3]["p_err_min"] == pytest.approx(1 / 3) and rows[3]["d1"] == pytest.approx(0, abs=1e-8)
    assert rows[4]["p_err_min"] == pytest.approx(0.5) and rows[4]["p_fano1"] < 0.5
    assert rows[7]["p_fano2"] <= rows[7]["p_fano1"] <= rows[7]["p_err_min"] == pytest.approx(5 / 7)


def test_sym_coherent_rows():
    rows = run_sym_coherent(RunConfig("sym-coherent", n_min=2, n_max=4, mus=[0.05, 0.2, 0.5]))
    by_key = {(r["n"], r["mu"]): r for r in rows}
    assert by_key[(2, 0.5)]["p_err_min"] == pytest.approx((1 - math.sqrt(1 - math.exp(-2))) / 2, abs=1e-9)
    assert by_key[(4, 0.05)]["d1"] <= by_key[(4, 0.2)]["d1"]
    assert all(r["n_max"] > 0 for r in rows)
    # emission order: mu-major, then n
    assert [(r["mu"], r["n"]) for r in rows] == [(mu, n) for mu in (0.05, 0.2, 0.5) for n in (2, 3, 4)]


def test_boundary_rows_become_error_records(capsys):
    code, out, _ = run(capsys, "two-qubit", "--theta-min", "0.7", "--theta-max", str(math.pi / 4), "--theta-steps", "3")
    rows = parse_csv(out)
    assert code == 2
    assert rows[0]["error"] == "" and "indistinguishable" in rows[-1]["error"]
    code, out, _ = run(capsys, "sym-coherent", "--n-min", "2", "--n-max", "2", "--mu", "0", "--mu", "0.3")
    rows = parse_csv(out)
    assert code == 2
    assert "OutOfRange" in rows[0]["error"] and rows[1]["error"] == ""


@pytest.mark.parametrize(
    "argv",
    [
        ["sym-qubit", "--n-min", "2"],
        ["sym-coherent", "--n-min", "1"],
        ["two-qubit", "--theta-steps", "0"],
        ["two-qubit", "--format", "xml"],
        ["sym-qubit", "--n-min", "8", "--n-max", "4"],
        ["nope"],
        ["mc-check", "--scenario", "sym-qubit", "--trials", "0"],
    ],
)
def test_config_errors_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and out == "" and "configuration error" in err


def test_csv_header_and_precision(capsys):
    code, out, _ = run(capsys, "sym-qubit", "--n-min", "3", "--n-max", "5")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == ",".join(cli.COLUMNS["sym-qubit"])
    row = parse_csv(out)[0]
    digits = row["p_err_min"].replace("0.", "", 1).lstrip("0")
    assert len(digits) <= 12 and float(row["p_err_min"]) == pytest.approx(1 / 3, abs=1e-12)


@pytest.mark.parametrize(
    "argv",
    [
        ["two-qubit", "--theta-steps", "7"],
        ["sym-qubit", "--n-max", "9"],
        ["sym-coherent", "--n-max", "5", "--mu", "0.1", "--mu", "1.5"],
        ["mc-check", "--scenario", "sym-qubit", "--n-min", "3", "--n-max", "4", "--trials", "20000", "--seed", "3"],
    ],
)
def test_csv_json_agree(capsys, argv):
    _, csv_out, _ = run(capsys, *argv)
    _, json_out, _ = run(capsys, *argv, "--format", "json")
    csv_rows = parse_csv(csv_out)
    json_rows = json.loads(json_out)
    assert len(csv_rows) == len(json_rows)
    for c, j in zip(csv_rows, json_rows):
        assert list(c) == list(j)
        for key, jv in j.items():
            cv = c[key]
            if jv is None:
                assert cv == ""
            elif isinstance(jv, bool):
                assert cv == str(jv).lower()
            elif isinstance(jv, (int, float)):
                assert float(cv) == float(format(jv, ".12g"))
            else:
                assert cv == jv


def test_output_deterministic(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert main(["mc-check", "--scenario", "sym-coherent", "--n-min", "4", "--n-max", "4",
                     "--mu", "0.3", "--trials", "50000", "--seed", "12", "--format", "json",
                     "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    (row,) = json.loads(paths[0].read_text())
    assert row["pass"] is True and row["rng"] == "splitmix64-counter"


def test_parallel_sweep_matches_serial():
    serial = run_sym_coherent(RunConfig("sym-coherent", n_min=2, n_max=6, mus=[0.2]))
    parallel = run_sym_coherent(RunConfig("sym-coherent", n_min=2, n_max=6, mus=[0.2], jobs=3))
    assert serial == parallel


def test_d_null_when_no_error(capsys):
    _, out, _ = run(capsys, "two-qubit", "--theta-max", "0", "--theta-steps", "1", "--format", "json")
    (row,) = json.loads(out)
    assert row["d1"] is None and row["d2"] is None


def test_emitted_rows_are_ordered():
    rows = run_sym_qubit(RunConfig("sym-qubit", n_min=3, n_max=20))
    rows += run_sym_coherent(RunConfig("sym-coherent", n_min=2, n_max=10, mus=[0.05, 1.0]))
    for r in rows:
        assert not r.get("error")
        assert r["p_fano2"] <= r["p_fano1"] + 1e-9 <= r["p_err_min"] + 2e-9
        assert r["d2"] >= r["d1"] - 1e-9


def test_mc_check_orthogonal():
    (row,) = run_montecarlo_check(RunConfig("two-qubit", theta_min=0, theta_max=0, theta_steps=1, trials=1000))
    assert row["p_err_empirical"] == 0 and row["pass"]


def test_mc_check_sym_qubit_five():
    (row,) = run_montecarlo_check(RunConfig("sym-qubit", n_min=5, n_max=5, trials=10**6, seed=2026))
    assert row["pass"] and row["p_err_analytic"] == pytest.approx(0.6)


def test_mc_check_flags_corrupted_table(capsys):
    def swap_outcomes(t):
        return table_from_probabilities(t.p_given[:, ::-1], t.priors)

    (row,) = run_montecarlo_check(
        RunConfig("sym-qubit", n_min=5, n_max=5, trials=10**5, seed=1), corrupt=swap_outcomes
    )
    assert row["pass"] is False
    assert cli.row_failed(row)


def test_mc_check_requires_trials():
    with pytest.raises(ConfigError):
        run_montecarlo_check(RunConfig("sym-qubit", n_min=3, n_max=3))


def test_mc_check_cli_exit_zero(capsys):
    code, out, _ = run(capsys, "mc-check", "--scenario", "two-qubit", "--theta-steps", "4", "--trials", "100000")
    rows = parse_csv(out)
    assert code == 0 and len(rows) == 4 and all(r["pass"] == "true" for r in rows)
