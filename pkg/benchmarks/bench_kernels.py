"""Time the numba kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Also runs an end-to-end bootstrap of the bundled quote fixture in a
subprocess per backend, since MULTICURVE_DISABLE_NUMBA is read at import.
"""

import argparse
import os
import subprocess
import sys
from pathlib import Path
from timeit import repeat

import numpy as np

from multicurve import _kernels as k

ROOT = Path(__file__).resolve().parents[1]
BOOTSTRAP_SNIPPET = """
import time, datetime as dt
from multicurve import io, bootstrap, _kernels
qs = io.parse_quotes({path!r})
bootstrap.bootstrap_curves(dt.date(2011, 6, 30), qs)  # warm-up / jit compile
t = time.perf_counter()
for _ in range(5):
    bootstrap.bootstrap_curves(dt.date(2011, 6, 30), qs)
print(_kernels.BACKEND, (time.perf_counter() - t) / 5)
"""


def best(fn, n):
    return min(repeat(fn, number=1, repeat=n))


def kernel_cases(rng):
    knots = np.concatenate([[0.0], np.cumsum(rng.uniform(0.1, 2.0, 40))])
    dfs = np.exp(-0.02 * knots)
    slopes = k.segment_slopes(knots, dfs)
    x = np.sort(rng.uniform(0.0, knots[-1], 200_000))
    a = np.cumsum(rng.standard_normal(5_000))
    b = 0.5 * a + np.cumsum(rng.standard_normal(5_000))
    n = 10_000
    pay = np.exp(-0.02 * np.linspace(0, 30, n))
    taus = np.full(n, 1 / 360)
    return {
        "loglinear_df (200k points)": (
            (k.loglinear_df_numpy, k.loglinear_df_numba), (x, knots, dfs, slopes)),
        "rolling_pearson (5k obs, window 252)": (
            (k.rolling_pearson_numpy, k.rolling_pearson_numba), (a, b, 252)),
        "discounted_float_sum (10k coupons)": (
            (k.discounted_float_sum_numpy, k.discounted_float_sum_numba), (pay, pay * 1.0001, pay, taus, taus)),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    print(f"backend at import: {k.BACKEND}")
    if not k.HAVE_NUMBA:
        print("numba unavailable: only the numpy path can be timed")
    rng = np.random.default_rng(7)
    print(f"{'kernel':40s} {'numpy [ms]':>12s} {'numba [ms]':>12s} {'speed-up':>9s}")
    for name, ((np_fn, nb_fn), call_args) in kernel_cases(rng).items():
        t_np = best(lambda: np_fn(*call_args), args.repeat)
        if nb_fn is None:
            print(f"{name:40s} {t_np * 1e3:12.3f} {'-':>12s} {'-':>9s}")
            continue
        nb_fn(*call_args)  # compile outside the timed region
        t_nb = best(lambda: nb_fn(*call_args), args.repeat)
        print(f"{name:40s} {t_np * 1e3:12.3f} {t_nb * 1e3:12.3f} {t_np / t_nb:8.1f}x")

    quotes = ROOT / "fixtures" / "quotes_eur_2011-06-30.csv"
    print("\nend-to-end bootstrap of the quote fixture:")
    for flag in ("0", "1"):
        env = dict(os.environ, MULTICURVE_DISABLE_NUMBA=flag)
        out = subprocess.run([sys.executable, "-c", BOOTSTRAP_SNIPPET.format(path=str(quotes))],
                             env=env, capture_output=True, text=True, check=True).stdout.split()
        print(f"  {out[0]:6s} {float(out[1]) * 1e3:9.1f} ms")


if __name__ == "__main__":
    main()
