"""Tenor-basis diagnostics on top of the curves and pricers.

* ``spectroscopy_report``: equal-maturity floating legs across tenors and
  their gaps to the overnight leg.
* ``basis_term_structure``: basis spreads by maturity and tenor pair, in bp.
* ``delta_ladder``: bump-and-rebootstrap sensitivities per market quote.
* ``rolling_correlation``: trailing Pearson correlation of two fixing series.
* ``simulate_fra_martingale``: exact lognormal terminal draws of a FRA rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from . import _kernels
from . import instruments as ins
from .bootstrap import (BootstrapConfig, DEFAULT_CONFIG, MarketQuote, QuoteKind, bootstrap_curves,
                        group_quotes, reprice_residuals)
from .curves import SUPPORTED_TENORS, CurveSet, DiscountCurve, ForwardCurve
from .errors import ConfigurationError, DomainError
from .temporal import (Date, DayCount, Tenor, add_tenor, adjust, spot_date, year_fraction)

OVERNIGHT = Tenor(1, "D")
FIG_TENORS = SUPPORTED_TENORS
DEFAULT_PAIRS = tuple((Tenor.parse(x), Tenor.parse(y)) for x, y in (
    ("1D", "1M"), ("1D", "3M"), ("1D", "6M"), ("1D", "12M"),
    ("1M", "3M"), ("1M", "6M"), ("1M", "12M"),
    ("3M", "6M"), ("3M", "12M"),
    ("6M", "12M"),
))
DEFAULT_MATURITIES = tuple(Tenor(n, "Y") for n in (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 20, 25, 30))


def _leg_dates(curves: CurveSet, maturity, spot_lag: int, conv: ins.LegConventions):
    start = spot_date(curves.anchor, spot_lag, conv.calendar)
    if isinstance(maturity, Date):
        return start, maturity
    maturity = Tenor.parse(maturity)
    return start, adjust(add_tenor(start, maturity), conv.bdc, conv.calendar)


# ---------------------------------------------------------------------------
# Spectroscopy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectroscopyRow:
    tenor: Tenor
    coupons: int
    pv: float
    gap_pv: float
    gap_rate: float


@dataclass(frozen=True)
class SpectroscopyReport:
    start: Date
    maturity: Date
    nominal: float
    annuity: float
    telescoped: float
    rows: tuple

    def row(self, tenor) -> SpectroscopyRow:
        tenor = Tenor.parse(tenor)
        for r in self.rows:
            if r.tenor == tenor:
                return r
        raise KeyError(str(tenor))

    @property
    def max_gap(self) -> float:
        return max(abs(r.gap_pv) for r in self.rows)


def spectroscopy_report(curves: CurveSet, maturity, tenors: Sequence = FIG_TENORS,
                        nominal: float = 1.0, spot_lag: int = 2,
                        conv: ins.LegConventions = ins.DEFAULT_CONVENTIONS) -> SpectroscopyReport:
    """Floating legs of every tenor from spot to ``maturity``, compared with the 1D leg.

    ``gap_pv`` is the leg value minus the overnight leg value; ``gap_rate``
    expresses it as a running spread over the annual fixed annuity.
    """
    tenors = [Tenor.parse(t) for t in tenors]
    if len(set(tenors)) != len(tenors):
        raise DomainError("duplicate tenors in spectroscopy request")
    for t in tenors:
        if t not in SUPPORTED_TENORS:
            raise DomainError(f"unsupported tenor {t}")
        if not curves.has(t):
            raise ConfigurationError(f"no forward curve for tenor {t}")
    if isinstance(maturity, (str, Tenor)):
        mat = Tenor.parse(maturity)
        for t in tenors:
            if t.months is not None and (mat.months is None or mat.months % t.months):
                raise DomainError(f"maturity {mat} is not a multiple of tenor {t}")
    start, end = _leg_dates(curves, maturity, spot_lag, conv)
    disc = curves.discount
    a = ins.annuity(ins.fixed_schedule(start, end, conv), disc)

    def leg_value(t):
        leg = ins.float_leg(start, end, t, nominal, conv)
        return len(leg.schedule), ins.price_float_leg(leg, disc, curves.forward(t))

    _, ref = leg_value(OVERNIGHT)
    rows = []
    for t in tenors:
        n, pv = leg_value(t)
        gap = pv - ref
        rows.append(SpectroscopyRow(t, n, pv, gap, gap / (nominal * a)))
    return SpectroscopyReport(start, end, nominal, a,
                              ins.single_curve_float_leg(ins.fixed_schedule(start, end, conv), disc, nominal),
                              tuple(rows))


# ---------------------------------------------------------------------------
# Basis term structure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BasisSurface:
    """Spreads ``R_x - R_y`` in basis points; rows are maturities, columns pairs."""

    maturities: tuple
    pairs: tuple
    values: np.ndarray = field(compare=False)

    def __post_init__(self):
        if self.values.shape != (len(self.maturities), len(self.pairs)):
            raise DomainError("basis surface dimensions do not match its axes")

    def column(self, x, y) -> np.ndarray:
        key = (Tenor.parse(x), Tenor.parse(y))
        return self.values[:, self.pairs.index(key)]

    @property
    def pair_labels(self) -> list:
        return [f"{x}/{y}" for x, y in self.pairs]


def basis_term_structure(curves: CurveSet, pairs: Sequence = DEFAULT_PAIRS,
                         maturities: Sequence = DEFAULT_MATURITIES, spot_lag: int = 2,
                         conv: ins.LegConventions = ins.DEFAULT_CONVENTIONS) -> BasisSurface:
    pairs = tuple((Tenor.parse(x), Tenor.parse(y)) for x, y in pairs)
    mats = tuple(Tenor.parse(m) for m in maturities)
    if not pairs or not mats:
        raise DomainError("basis surface needs at least one pair and one maturity")
    for a, b in zip(mats[:-1], mats[1:]):
        if not a < b:
            raise DomainError("maturities must be increasing")
    values = np.empty((len(mats), len(pairs)))
    for i, m in enumerate(mats):
        start, end = _leg_dates(curves, m, spot_lag, conv)
        # one swap rate per tenor and maturity; R_x - R_y then matches basis_spread bit for bit
        legs = {t: ins.float_leg(start, end, t, conv=conv) for t in dict.fromkeys(t for p in pairs for t in p)}
        first = next(iter(legs.values())).schedule
        sched = ins.fixed_schedule(first.start, first.end, conv)
        rates = {t: ins.swap_rate(leg.schedule, sched, curves, t) for t, leg in legs.items()}
        for j, (x, y) in enumerate(pairs):
            values[i, j] = (rates[x] - rates[y]) * 1e4
    values.flags.writeable = False
    return BasisSurface(mats, pairs, values)


# ---------------------------------------------------------------------------
# Delta ladder
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DeltaLadder:
    bump: float
    base_pv: float
    entries: tuple          # (MarketQuote, PV change) per calibration quote
    by_curve: dict          # curve id -> PV change for a parallel bump of that curve's quotes
    all_quotes: float       # PV change with every calibration quote bumped at once

    @property
    def deltas(self) -> np.ndarray:
        return np.array([d for _, d in self.entries])

    @property
    def sum_of_deltas(self) -> float:
        return float(self.deltas.sum())


def delta_ladder(trade, curves: CurveSet, quotes: Sequence[MarketQuote], bump: float = 1e-4,
                 cfg: BootstrapConfig = DEFAULT_CONFIG, check_tolerance: float = 1e-8) -> DeltaLadder:
    """Rebootstrap with each quote bumped by ``bump`` and reprice ``trade``.

    ``curves`` must be the calibration of ``quotes``; the base value comes
    from a fresh bootstrap so that a zero bump gives an exactly zero ladder.
    Basis-swap quotes are not calibration inputs and get no ladder entry.
    """
    calib = [q for q in quotes if q.kind is not QuoteKind.BASIS_SWAP]
    if not calib:
        raise ConfigurationError("no calibration quotes to bump")
    worst = max(abs(r) for r in reprice_residuals(curves, calib, cfg))
    if worst > check_tolerance:
        raise ConfigurationError(
            f"curves do not reprice the quotes (max residual {worst:.3e}); not their calibration set")
    anchor = curves.anchor
    base_curves = bootstrap_curves(anchor, calib, cfg)
    base = ins.price_trade(trade, base_curves)

    def shifted(bumped_ids):
        qs = [q.bumped(bump) if i in bumped_ids else q for i, q in enumerate(calib)]
        return ins.price_trade(trade, bootstrap_curves(anchor, qs, cfg)) - base

    entries = tuple((q, shifted({i})) for i, q in enumerate(calib))
    by_curve = {}
    for cid in dict.fromkeys(q.curve_id for q in calib):
        by_curve[cid] = shifted({i for i, q in enumerate(calib) if q.curve_id == cid})
    total = shifted(set(range(len(calib))))
    return DeltaLadder(bump, base, entries, by_curve, total)


def discount_curve_id(quotes: Sequence[MarketQuote]) -> str:
    return group_quotes(quotes).curve_ids["discount"]


# ---------------------------------------------------------------------------
# Fixings and rolling correlation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FixingSeries:
    dates: tuple
    values: np.ndarray = field(compare=False)

    def __post_init__(self):
        dates = tuple(self.dates)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "dates", dates)
        object.__setattr__(self, "values", values)
        if len(dates) != values.shape[0]:
            raise DomainError("fixing series needs one value per date")
        for a, b in zip(dates[:-1], dates[1:]):
            if not a < b:
                raise DomainError(f"fixing dates must be strictly increasing (at {b})")

    def __len__(self):
        return len(self.dates)


def join(a: FixingSeries, b: FixingSeries) -> tuple:
    """Inner join on dates: (dates, a values, b values)."""
    pos_b = {d: i for i, d in enumerate(b.dates)}
    ia, ib = [], []
    for i, d in enumerate(a.dates):
        j = pos_b.get(d)
        if j is not None:
            ia.append(i)
            ib.append(j)
    dates = tuple(a.dates[i] for i in ia)
    return dates, a.values[ia], b.values[ib]


def rolling_correlation(a: FixingSeries, b: FixingSeries, window: int = 252,
                        diff: bool = False) -> FixingSeries:
    """Trailing-window Pearson correlation dated at each window's last observation.

    ``diff=True`` correlates day-on-day changes instead of levels. Windows
    where either input is constant yield NaN.
    """
    if window < 2:
        raise DomainError(f"window must be >= 2, got {window}")
    dates, x, y = join(a, b)
    if diff:
        dates, x, y = dates[1:], np.diff(x), np.diff(y)
    if len(dates) < window:
        raise DomainError(f"need at least {window} joined observations, have {len(dates)}")
    corr = _kernels.rolling_pearson(np.ascontiguousarray(x, dtype=float),
                                    np.ascontiguousarray(y, dtype=float), int(window))
    return FixingSeries(dates[window - 1:], corr)


# ---------------------------------------------------------------------------
# FRA martingale check
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FraDynamicsConfig:
    f0: float
    sigma: float
    horizon: float
    paths: int = 100_000
    seed: int = 20111031

    def __post_init__(self):
        if self.sigma < 0:
            raise DomainError("volatility must be non-negative")
        if not self.horizon > 0:
            raise DomainError("horizon must be positive")
        if self.paths < 1:
            raise DomainError("need at least one path")


class MartingaleResult(NamedTuple):
    mean: float
    stderr: float


_CHUNK = 1 << 16


def simulate_fra_martingale(cfg: FraDynamicsConfig) -> MartingaleResult:
    """Sample mean and standard error of ``F(T) = F0 exp(-s^2 T/2 + s sqrt(T) Z)``.

    Paths are drawn in fixed-size chunks, each from its own child of the
    master seed, so results do not depend on how the chunks are scheduled.
    """
    n_chunks = -(-cfg.paths // _CHUNK)
    children = np.random.SeedSequence(cfg.seed).spawn(n_chunks)
    draws = []
    for k, child in enumerate(children):
        size = min(_CHUNK, cfg.paths - k * _CHUNK)
        draws.append(np.random.default_rng(child).standard_normal(size))
    z = np.concatenate(draws)
    vol = cfg.sigma * math.sqrt(cfg.horizon)
    growth = np.exp(-0.5 * vol * vol + vol * z)
    mean = cfg.f0 * float(growth.mean())
    if cfg.paths == 1:
        return MartingaleResult(mean, math.nan)
    stderr = abs(cfg.f0) * float(growth.std(ddof=1)) / math.sqrt(cfg.paths)
    return MartingaleResult(mean, stderr)


# ---------------------------------------------------------------------------
# Synthetic markets
# ---------------------------------------------------------------------------


def _tenor_step(t: Tenor) -> int:
    return SUPPORTED_TENORS.index(t)


def synthetic_curveset(anchor: Date, zero: float = 0.02, slope: float = 0.0,
                       spread_per_step: float = 0.001, tenors: Sequence = FIG_TENORS,
                       horizon_years: int = 40) -> CurveSet:
    """OIS curve plus tenor curves whose instantaneous forwards sit ``k * spread_per_step``
    above OIS, ``k`` being the tenor's position in 1D, 1M, 3M, 6M, 12M.

    The OIS zero rate is ``zero + slope * (1 - exp(-t / 5))`` on annual pillars.
    """
    dates = [anchor] + [add_tenor(anchor, Tenor(n, "Y")) for n in range(1, horizon_years + 1)]
    times = np.array([year_fraction(anchor, d, DayCount.ACT_365F) for d in dates])
    zeros = zero + slope * (1.0 - np.exp(-times / 5.0))
    log_disc = -zeros * times
    disc = DiscountCurve(anchor, tuple(zip(dates, [1.0] + list(np.exp(log_disc[1:])))))
    forwards = {}
    for t in (Tenor.parse(t) for t in tenors):
        k = _tenor_step(t)
        if k == 0:
            continue
        pseudo = np.exp(log_disc[1:] - k * spread_per_step * times[1:])
        forwards[t] = ForwardCurve(anchor, tuple(zip(dates, [1.0] + list(pseudo))), tenor=t)
    return CurveSet(disc, forwards)


def degenerate_curveset(discount: DiscountCurve, tenors: Sequence = FIG_TENORS) -> CurveSet:
    """Every forward curve equal to the discount curve (the single-curve limit)."""
    return CurveSet(discount, {Tenor.parse(t): ForwardCurve(discount.anchor, discount.pillars,
                                                            discount.interpolation, Tenor.parse(t))
                               for t in tenors})
