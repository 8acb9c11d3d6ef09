"""Numeric inner loops, compiled with numba when available.

Each kernel has a vectorized numpy twin. Set ``MULTICURVE_DISABLE_NUMBA=1``
to force the numpy path (numba is also skipped when it cannot be imported).
The selected implementations are exported without a suffix.
"""

import os

import numpy as np

_DISABLED = os.environ.get("MULTICURVE_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError("disabled by MULTICURVE_DISABLE_NUMBA")
    import numba
except ImportError:
    numba = None

HAVE_NUMBA = numba is not None
BACKEND = "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# log-linear discount factor interpolation
# ---------------------------------------------------------------------------


def segment_slopes(knots, dfs):
    """Per-pillar log-df slope used from that pillar onwards.

    Slopes come from the log of neighbouring ratios rather than a difference
    of logs, so rescaling every factor by a power of two leaves them bitwise
    unchanged. The last entry repeats the last segment's slope so that
    extrapolation beyond the final pillar keeps the instantaneous forward flat.
    """
    n = knots.shape[0]
    slopes = np.zeros(n)
    if n > 1:
        slopes[:-1] = np.log(dfs[1:] / dfs[:-1]) / np.diff(knots)
        slopes[-1] = slopes[-2]
    return slopes


def loglinear_df_numpy(x, knots, dfs, slopes):
    idx = np.searchsorted(knots, x, side="right") - 1
    np.clip(idx, 0, knots.shape[0] - 1, out=idx)
    return dfs[idx] * np.exp(slopes[idx] * (x - knots[idx]))


def rolling_pearson_numpy(a, b, window):
    n = a.shape[0]
    if n < window:
        return np.empty(0)
    wa = np.lib.stride_tricks.sliding_window_view(a, window)
    wb = np.lib.stride_tricks.sliding_window_view(b, window)
    da = wa - wa.mean(axis=1, keepdims=True)
    db = wb - wb.mean(axis=1, keepdims=True)
    sab = (da * db).sum(axis=1)
    saa = (da * da).sum(axis=1)
    sbb = (db * db).sum(axis=1)
    denom = np.sqrt(saa * sbb)
    out = np.full(sab.shape[0], np.nan)
    ok = (saa > 0.0) & (sbb > 0.0)
    out[ok] = sab[ok] / denom[ok]
    return out


def discounted_float_sum_numpy(pay_dfs, start_pdfs, end_pdfs, taus, accruals):
    fwd = (start_pdfs / end_pdfs - 1.0) / taus
    return float(np.sum(pay_dfs * fwd * accruals))


if HAVE_NUMBA:

    @numba.njit(cache=True, nogil=True)
    def loglinear_df_numba(x, knots, dfs, slopes):
        n = knots.shape[0]
        out = np.empty(x.shape[0])
        for k in range(x.shape[0]):
            xk = x[k]
            lo, hi = 0, n
            while hi - lo > 1:
                mid = (lo + hi) // 2
                if knots[mid] <= xk:
                    lo = mid
                else:
                    hi = mid
            out[k] = dfs[lo] * np.exp(slopes[lo] * (xk - knots[lo]))
        return out

    @numba.njit(cache=True, nogil=True)
    def rolling_pearson_numba(a, b, window):
        n = a.shape[0]
        if n < window:
            return np.empty(0)
        m = n - window + 1
        out = np.empty(m)
        for s in range(m):
            ma = 0.0
            mb = 0.0
            for i in range(s, s + window):
                ma += a[i]
                mb += b[i]
            ma /= window
            mb /= window
            sab = 0.0
            saa = 0.0
            sbb = 0.0
            for i in range(s, s + window):
                da = a[i] - ma
                db = b[i] - mb
                sab += da * db
                saa += da * da
                sbb += db * db
            if saa > 0.0 and sbb > 0.0:
                out[s] = sab / np.sqrt(saa * sbb)
            else:
                out[s] = np.nan
        return out

    @numba.njit(cache=True, nogil=True)
    def discounted_float_sum_numba(pay_dfs, start_pdfs, end_pdfs, taus, accruals):
        total = 0.0
        for j in range(pay_dfs.shape[0]):
            total += pay_dfs[j] * ((start_pdfs[j] / end_pdfs[j] - 1.0) / taus[j]) * accruals[j]
        return total

    loglinear_df = loglinear_df_numba
    rolling_pearson = rolling_pearson_numba
    discounted_float_sum = discounted_float_sum_numba
else:
    loglinear_df_numba = rolling_pearson_numba = discounted_float_sum_numba = None
    loglinear_df = loglinear_df_numpy
    rolling_pearson = rolling_pearson_numpy
    discounted_float_sum = discounted_float_sum_numpy
