"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Times the Jacobi eigensolver on random Hermitian matrices and the Monte-Carlo
error counter, checks that both backends agree, and prints a table.
"""
import argparse
import time

import numpy as np

from qfano import _backend
from qfano.bounds import minimum_error_measurement
from qfano.ensembles import symmetric_coherent
from qfano.measurement import cond_table
from qfano.montecarlo import _cdfs


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def random_hermitian(dim, rng):
    x = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (x + x.conj().T) / 2


def bench_jacobi(dims, repeat):
    rng = np.random.default_rng(0)
    rows = []
    for dim in dims:
        a = random_hermitian(dim, rng)
        res = {}
        for name in _backend.available():
            k = _backend.kernels(name)
            res[name] = best_of(lambda: k.jacobi_eigh(a, 64), repeat)
        rows.append((f"jacobi dim={dim}", res))
    return rows


def bench_count_errors(trials_list, repeat):
    e = symmetric_coherent(8, 0.3)
    prior_cdf, row_cdf = _cdfs(cond_table(e, minimum_error_measurement(e)))
    rows = []
    for trials in trials_list:
        res = {}
        for name in _backend.available():
            k = _backend.kernels(name)
            res[name] = best_of(lambda: k.count_errors(prior_cdf, row_cdf, 7, 0, trials), repeat)
        rows.append((f"count_errors trials={trials:.0e}", res))
    return rows


def agree(res):
    outs = [out for _, out in res.values()]
    if len(outs) < 2:
        return "-"
    a, b = outs
    if isinstance(a, tuple):
        return "yes" if np.allclose(a[0], b[0], atol=1e-10) else "NO"
    return "yes" if a == b else "NO"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    rows = bench_jacobi((4, 16, 32, 64), args.repeat)
    rows += bench_count_errors((10**4, 10**5, 10**6), args.repeat)
    print(f"active backend: {_backend.BACKEND}")
    print(f"{'kernel':<28}{'compiled [s]':>14}{'python [s]':>14}{'speedup':>10}{'agree':>7}")
    for label, res in rows:
        c = res.get("compiled", (float("nan"), None))[0]
        p = res["python"][0]
        print(f"{label:<28}{c:>14.5f}{p:>14.5f}{p / c:>10.1f}{agree(res):>7}")


if __name__ == "__main__":
    main()
