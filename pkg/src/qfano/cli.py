"""Parameter sweeps that emit figure-ready CSV or JSON.

Subcommands ``two-qubit``, ``sym-qubit`` and ``sym-coherent`` produce one row per
grid point; ``mc-check`` compares analytic error probabilities against
Monte-Carlo estimates. Exit status: 0 on success, 2 when any row carries an
error (or a failed Monte-Carlo check), 1 on a bad configuration.
"""
import argparse
import csv
import io
import json
import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bounds import (
    SCENARIOS,
    build_report,
    ensemble_for,
    error_probability,
    minimum_error_measurement,
    ordering_violations,
)
from .ensembles import DEFAULT_TAIL_EPS
from .errors import ConfigError, QFanoError
from .measurement import CondTable, cond_table
from .montecarlo import simulate_table

log = logging.getLogger("qfano")

SIG_DIGITS = 12
DEFAULT_MUS = (0.05, 0.1, 0.2)
DIAG_TOL = 1e-4

COLUMNS = {
    "two-qubit": ["theta", "p_err_min", "p_fano1", "p_fano2", "chi", "h_cond", "d1", "d2", "error"],
    "sym-qubit": [
        "n", "p_err_min", "p_fano1", "p_fano2", "p_weak1", "p_weak2",
        "chi", "h_cond", "d1", "d2", "error",
    ],
    "sym-coherent": [
        "n", "mu", "n_max", "p_err_min", "p_fano1", "p_fano2", "p_weak1", "p_weak2",
        "chi", "h_cond", "d1", "d2", "diag_regime", "error",
    ],
    "mc-check": [
        "scenario", "n", "theta", "mu", "p_err_analytic", "p_err_empirical", "std_err",
        "trials", "errors", "seed", "rng", "pass", "error",
    ],
}


@dataclass
class RunConfig:
    scenario: str
    theta_min: float = 0.0
    theta_max: float = 0.785
    theta_steps: int = 50
    n_min: int | None = None
    n_max: int = 16
    mus: list = field(default_factory=lambda: list(DEFAULT_MUS))
    tail_eps: float = DEFAULT_TAIL_EPS
    trials: int | None = None
    seed: int = 0
    fmt: str = "csv"
    out: str | None = None
    jobs: int = 1

    def validate(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"scenario must be one of {SCENARIOS}")
        if self.fmt not in ("csv", "json"):
            raise ConfigError("format must be csv or json")
        if self.jobs < 1:
            raise ConfigError("--jobs must be >= 1")
        if not 0.0 < self.tail_eps <= 1e-6:
            raise ConfigError("--tail-eps must lie in (0, 1e-6]")
        if self.trials is not None and self.trials < 1:
            raise ConfigError("--trials must be >= 1")
        if self.seed < 0:
            raise ConfigError("--seed must be nonnegative")
        if self.scenario == "two-qubit":
            if self.theta_steps < 1:
                raise ConfigError("--theta-steps must be >= 1")
            if self.theta_min > self.theta_max:
                raise ConfigError("--theta-min exceeds --theta-max")
            return
        floor = 3 if self.scenario == "sym-qubit" else 2
        if self.n_min is None:
            self.n_min = floor
        if self.n_min < floor:
            raise ConfigError(f"{self.scenario} needs --n-min >= {floor}")
        if self.n_max < self.n_min:
            raise ConfigError("--n-max is below --n-min")
        if self.scenario == "sym-coherent" and not self.mus:
            raise ConfigError("at least one --mu is required")

    def points(self) -> list[dict]:
        """Grid points in emission order."""
        if self.scenario == "two-qubit":
            grid = np.linspace(self.theta_min, self.theta_max, self.theta_steps)
            return [{"theta": float(t)} for t in grid]
        ns = range(self.n_min, self.n_max + 1)
        if self.scenario == "sym-qubit":
            return [{"n": n} for n in ns]
        return [{"n": n, "mu": float(mu)} for mu in self.mus for n in ns]


def _report_row(scenario: str, point: dict, tail_eps: float) -> dict:
    row = dict(point)
    try:
        report = build_report(scenario, tail_eps=tail_eps, **point)
    except QFanoError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row
    row.update(report.as_dict())
    bad = ordering_violations(report)
    if bad:
        row["error"] = "ordering violated: " + ", ".join(bad)
    if report.diag_regime and abs(report.p_err_min - (1.0 - 1.0 / report.n)) > DIAG_TOL:
        log.warning(
            "n=%d mu=%g: diagonal regime but p_err_min=%.6f differs from 1-1/N=%.6f",
            report.n, report.mu, report.p_err_min, 1.0 - 1.0 / report.n,
        )
    return row


def _parallel_map(fn, args_list, jobs):
    if jobs <= 1 or len(args_list) <= 1:
        return [fn(*a) for a in args_list]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, *zip(*args_list)))


def run_sweep(cfg: RunConfig) -> list[dict]:
    cfg.validate()
    args = [(cfg.scenario, p, cfg.tail_eps) for p in cfg.points()]
    return _parallel_map(_report_row, args, cfg.jobs)


def run_two_qubit(cfg: RunConfig) -> list[dict]:
    cfg.scenario = "two-qubit"
    return run_sweep(cfg)


def run_sym_qubit(cfg: RunConfig) -> list[dict]:
    cfg.scenario = "sym-qubit"
    return run_sweep(cfg)


def run_sym_coherent(cfg: RunConfig) -> list[dict]:
    cfg.scenario = "sym-coherent"
    return run_sweep(cfg)


def run_montecarlo_check(cfg: RunConfig, corrupt=None) -> list[dict]:
    """Analytic vs sampled error probability at every grid point.

    ``corrupt`` maps the analytic :class:`CondTable` to the table that is
    actually sampled; it exists so tests can check that a wrong table is caught.
    """
    cfg.validate()
    if cfg.trials is None:
        raise ConfigError("mc-check needs --trials")
    rows = []
    for point in cfg.points():
        row = {"scenario": cfg.scenario, "theta": None, "mu": None, **point}
        try:
            e = ensemble_for(cfg.scenario, tail_eps=cfg.tail_eps, **point)
            table = cond_table(e, minimum_error_measurement(e))
            sampled = corrupt(table) if corrupt is not None else table
            rec = simulate_table(sampled, cfg.trials, cfg.seed, workers=cfg.jobs)
        except QFanoError as exc:
            row["error"] = f"{type(exc).__name__}: {exc}"
            rows.append(row)
            continue
        analytic = error_probability(table)
        row.update(
            n=e.n,
            p_err_analytic=analytic,
            p_err_empirical=rec.empirical_p_err,
            std_err=rec.std_err,
            trials=rec.trials,
            errors=rec.errors,
            seed=rec.seed,
            rng=rec.rng,
            **{"pass": rec.agrees_with(analytic)},
        )
        rows.append(row)
    return rows


def _fmt_value(v):
    """JSON-ready value: floats rounded to 12 significant digits, non-finite as None."""
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        if not math.isfinite(v):
            return None
        return float(format(float(v), f".{SIG_DIGITS}g"))
    return v


def normalize_rows(rows: list[dict], columns: list[str]) -> list[dict]:
    return [{c: _fmt_value(row.get(c)) for c in columns} for row in rows]


def to_csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in normalize_rows(rows, columns):
        cells = []
        for c in columns:
            v = row[c]
            if v is None:
                cells.append("")
            elif isinstance(v, bool):
                cells.append("true" if v else "false")
            elif isinstance(v, float):
                cells.append(format(v, f".{SIG_DIGITS}g"))
            else:
                cells.append(str(v))
        writer.writerow(cells)
    return buf.getvalue()


def to_json(rows: list[dict], columns: list[str]) -> str:
    return json.dumps(normalize_rows(rows, columns), indent=1) + "\n"


def row_failed(row: dict) -> bool:
    return bool(row.get("error")) or row.get("pass") is False


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=["csv", "json"], default="csv")
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument("--tail-eps", type=float, default=DEFAULT_TAIL_EPS)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=None)
    common.add_argument("--jobs", type=int, default=1, help="worker processes/threads")
    common.add_argument("--log-level", default="WARNING")

    theta = argparse.ArgumentParser(add_help=False)
    theta.add_argument("--theta-min", type=float, default=0.0)
    theta.add_argument("--theta-max", type=float, default=0.785)
    theta.add_argument("--theta-steps", type=int, default=50)

    nrange = argparse.ArgumentParser(add_help=False)
    nrange.add_argument("--n-min", type=int, default=None)
    nrange.add_argument("--n-max", type=int, default=16)

    mu = argparse.ArgumentParser(add_help=False)
    mu.add_argument("--mu", type=float, action="append", default=None,
                    help="mean photon number (repeatable; default 0.05 0.1 0.2)")

    parser = _Parser(prog="qfano", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("two-qubit", parents=[common, theta], help="two equiprobable qubit states")
    sub.add_parser("sym-qubit", parents=[common, nrange], help="N symmetric qubit states")
    sub.add_parser("sym-coherent", parents=[common, nrange, mu], help="N symmetric coherent states")
    mc = sub.add_parser("mc-check", parents=[common, theta, nrange, mu],
                        help="Monte-Carlo check of the analytic error probability")
    mc.add_argument("--scenario", choices=SCENARIOS, required=True)
    return parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    scenario = ns.scenario if ns.command == "mc-check" else ns.command
    cfg = RunConfig(
        scenario=scenario,
        tail_eps=ns.tail_eps,
        trials=ns.trials,
        seed=ns.seed,
        fmt=ns.fmt,
        out=ns.out,
        jobs=ns.jobs,
    )
    for name in ("theta_min", "theta_max", "theta_steps", "n_min", "n_max"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    if getattr(ns, "mu", None):
        cfg.mus = list(ns.mu)
    if ns.command == "mc-check" and cfg.trials is None:
        cfg.trials = 10**6
    return cfg


def main(argv=None) -> int:
    try:
        ns = _build_parser().parse_args(argv)
        logging.basicConfig(level=ns.log_level.upper(), format="%(levelname)s %(message)s")
        cfg = config_from_args(ns)
        if ns.command == "mc-check":
            rows = run_montecarlo_check(cfg)
            columns = COLUMNS["mc-check"]
        else:
            rows = run_sweep(cfg)
            columns = COLUMNS[cfg.scenario]
    except ConfigError as exc:
        print(f"qfano: configuration error: {exc}", file=sys.stderr)
        return 1
    text = to_csv(rows, columns) if cfg.fmt == "csv" else to_json(rows, columns)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 2 if any(row_failed(r) for r in rows) else 0


if __name__ == "__main__":
    sys.exit(main())
