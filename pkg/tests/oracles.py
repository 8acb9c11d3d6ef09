"""Independent reference computations used to freeze expected values.

Nothing here imports the package: each oracle is a direct, scalar
transcription of the closed-form result it stands for.
"""

import math
from fractions import Fraction


def pearson(xs, ys):
    """Textbook sample correlation in exact rational arithmetic, then one sqrt."""
    xs = [Fraction(x) for x in xs]
    ys = [Fraction(y) for y in ys]
    n = len(xs)
    mx, my = sum(xs) / n, sum(ys) / n
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    return float(sxy) / math.sqrt(float(sxx) * float(syy))


def lande(l, s, j, g_s=2.0023192):
    num = j * (j + 1) - l * (l + 1) + s * (s + 1)
    return 1 + (g_s - 1) * num / (2 * j * (j + 1))


def hand_basis_12m_vs_6m():
    """Two-curve 1Y trade: discount 0.99 at 6M and 0.98 at 1Y.

    6M forwards are 2% on both half-year periods, the 12M forward is 2.4%
    and the single fixed period has accrual 1.
    """
    annuity = 0.98 * 1.0
    r12 = 0.98 * 0.024 * 1.0 / annuity
    r6 = (0.99 * 0.02 * 0.5 + 0.98 * 0.02 * 0.5) / annuity
    return r12 - r6


def telescoped_leg(df_start, df_end, nominal=1.0):
    return nominal * (df_start - df_end)
