"""Sequential bootstrap of the OIS discount curve and the tenor forward curves.

Every quote adds one pillar at its maturity. The newest pillar's factor is
solved with a bracketed root finder while earlier pillars stay fixed;
forward curves are calibrated against an already-built discount curve.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

from scipy.optimize import brentq

from . import instruments as ins
from .curves import INTERPOLATION, CurveSet, DiscountCurve, ForwardCurve
from .errors import BootstrapError, ConfigurationError, DomainError, MulticurveError
from .temporal import Date, Tenor, add_tenor, adjust, spot_date

DF_BRACKET = (1e-8, 10.0)
SPOT = "SPOT"


class QuoteKind(enum.Enum):
    DEPOSIT = "Deposit"
    FRA = "FRA"
    SWAP = "Swap"
    OIS = "OIS"
    BASIS_SWAP = "BasisSwap"

    @classmethod
    def parse(cls, label) -> "QuoteKind":
        if isinstance(label, QuoteKind):
            return label
        key = str(label).strip().lower()
        for member in cls:
            if member.value.lower() == key:
                return member
        raise DomainError(f"unknown quote kind {label!r}")

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class MarketQuote:
    """One calibration quote.

    ``start`` is ``"SPOT"`` or a date; ``maturity`` a date or a tenor counted
    from the start. Basis-swap quotes carry the second tenor in ``tenor_y``
    and quote ``R_x - R_y``.
    """

    curve_id: str
    kind: QuoteKind
    tenor: Tenor
    start: object
    maturity: object
    quote: float
    tenor_y: Tenor | None = None
    line: int | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", QuoteKind.parse(self.kind))
        object.__setattr__(self, "tenor", Tenor.parse(self.tenor))
        if self.tenor_y is not None:
            object.__setattr__(self, "tenor_y", Tenor.parse(self.tenor_y))
        if isinstance(self.start, str):
            if self.start.strip().upper() != SPOT:
                raise DomainError(f"start must be a date or SPOT, got {self.start!r}")
            object.__setattr__(self, "start", SPOT)
        if isinstance(self.maturity, str):
            object.__setattr__(self, "maturity", Tenor.parse(self.maturity))
        object.__setattr__(self, "quote", float(self.quote))
        if not math.isfinite(self.quote):
            raise DomainError(f"quote must be finite, got {self.quote}")
        if (self.kind is QuoteKind.BASIS_SWAP) != (self.tenor_y is not None):
            raise DomainError("basis-swap quotes need two tenors (x/y); other kinds exactly one")
        if self.kind is QuoteKind.OIS and self.tenor != Tenor(1, "D"):
            raise DomainError(f"OIS quotes reference the 1D overnight rate, got tenor {self.tenor}")
        if self.kind in (QuoteKind.FRA, QuoteKind.SWAP) and self.tenor.is_daily:
            raise DomainError(f"{self.kind} quotes on a daily tenor are not supported; use OIS")
        if isinstance(self.start, Date) and isinstance(self.maturity, Date) and \
                not self.maturity > self.start:
            raise DomainError(f"maturity {self.maturity} must follow start {self.start}")

    @property
    def tenor_label(self) -> str:
        return f"{self.tenor}/{self.tenor_y}" if self.tenor_y is not None else str(self.tenor)

    def describe(self) -> str:
        where = f" (line {self.line})" if self.line is not None else ""
        start = self.start if self.start == SPOT else self.start.isoformat()
        mat = self.maturity.isoformat() if isinstance(self.maturity, Date) else str(self.maturity)
        return f"{self.curve_id} {self.kind} {self.tenor_label} {start}->{mat} @ {self.quote!r}{where}"

    def bumped(self, bump: float) -> "MarketQuote":
        return replace(self, quote=self.quote + bump)

    @property
    def is_discount(self) -> bool:
        return self.kind is QuoteKind.OIS or (self.kind is QuoteKind.DEPOSIT and self.tenor.is_daily)


@dataclass(frozen=True)
class BootstrapConfig:
    solver_df_tolerance: float = 1e-12
    max_iterations: int = 100
    interpolation: str = INTERPOLATION
    spot_lag: int = 2
    conventions: ins.LegConventions = ins.DEFAULT_CONVENTIONS

    def __post_init__(self):
        if not self.solver_df_tolerance > 0:
            raise DomainError("solver tolerance must be positive")
        if self.max_iterations < 1:
            raise DomainError("max_iterations must be >= 1")
        if self.spot_lag < 0:
            raise DomainError("spot lag must be non-negative")
        if self.interpolation != INTERPOLATION:
            raise DomainError(f"unsupported interpolation {self.interpolation!r}")


DEFAULT_CONFIG = BootstrapConfig()


# ---------------------------------------------------------------------------
# Quotes -> priceable instruments
# ---------------------------------------------------------------------------


def quote_dates(q: MarketQuote, anchor: Date, cfg: BootstrapConfig = DEFAULT_CONFIG) -> tuple:
    """Resolved (start, maturity) dates of a quote."""
    cal = cfg.conventions.calendar
    start = spot_date(anchor, cfg.spot_lag, cal) if q.start == SPOT else q.start
    if isinstance(q.maturity, Date):
        end = q.maturity
    elif q.maturity.is_daily:
        end = cal.advance(start, q.maturity.count)
    else:
        end = adjust(add_tenor(start, q.maturity), cfg.conventions.bdc, cal)
    if start < anchor:
        raise DomainError(f"quote starts {start}, before the valuation date {anchor}: {q.describe()}")
    if not end > start:
        raise DomainError(f"quote matures on or before its start: {q.describe()}")
    return start, end


@dataclass(frozen=True)
class CalibrationInstrument:
    quote: MarketQuote
    pillar: Date
    model_rate: Callable[[CurveSet], float] = field(repr=False, compare=False)

    def residual(self, curves: CurveSet) -> float:
        return self.model_rate(curves) - self.quote.quote


def calibration_instrument(q: MarketQuote, anchor: Date,
                           cfg: BootstrapConfig = DEFAULT_CONFIG) -> CalibrationInstrument:
    start, end = quote_dates(q, anchor, cfg)
    conv = cfg.conventions
    kind = q.kind
    if kind is QuoteKind.DEPOSIT:
        tenor, dcc = q.tenor, conv.float_day_count

        def rate(curves):
            return curves.forward(tenor).forward_rate(start, end, dcc)
    elif kind is QuoteKind.FRA:
        trade = ins.make_fra(start, end, q.tenor, q.quote, conv=conv)

        def rate(curves):
            return ins.par_rate(trade, curves)
    elif kind is QuoteKind.SWAP:
        trade = ins.make_swap(start, end, q.tenor, q.quote, conv=conv)

        def rate(curves):
            return ins.par_rate(trade, curves)
    elif kind is QuoteKind.OIS:
        sched = ins.fixed_schedule(start, end, conv)

        def rate(curves):
            return ins.ois_rate(sched, curves.discount)
    else:
        trade = ins.make_basis_swap(start, end, q.tenor, q.tenor_y, conv=conv)

        def rate(curves):
            return ins.basis_spread(trade, curves)
    return CalibrationInstrument(q, end, rate)


# ---------------------------------------------------------------------------
# Solver
# ---------------------------------------------------------------------------


def _solve_pillar(instr: CalibrationInstrument, make_curves: Callable[[float], CurveSet],
                  cfg: BootstrapConfig) -> float:
    q = instr.quote

    def f(x):
        return instr.residual(make_curves(x))

    lo, hi = DF_BRACKET
    try:
        f_lo, f_hi = f(lo), f(hi)
    except (MulticurveError, FloatingPointError, ZeroDivisionError) as exc:
        raise BootstrapError(f"cannot evaluate {q.describe()}: {exc}", q) from exc
    if not (math.isfinite(f_lo) and math.isfinite(f_hi)) or f_lo * f_hi > 0.0:
        raise BootstrapError(f"no discount factor in {DF_BRACKET} reprices {q.describe()}", q)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    root, res = brentq(f, lo, hi, xtol=cfg.solver_df_tolerance, maxiter=cfg.max_iterations,
                       full_output=True, disp=False)
    if not res.converged:
        raise BootstrapError(
            f"solver did not converge after {cfg.max_iterations} iterations for {q.describe()}", q)
    return root


def _instruments(quotes: Sequence[MarketQuote], anchor: Date, cfg: BootstrapConfig) -> list:
    out = [calibration_instrument(q, anchor, cfg) for q in quotes]
    last = anchor
    for instr in out:
        if not instr.pillar > last:
            raise BootstrapError(
                f"quote maturity {instr.pillar} does not follow the last solved pillar {last}: "
                f"{instr.quote.describe()}", instr.quote)
        last = instr.pillar
    return out


def bootstrap_discount_curve(anchor: Date, quotes: Sequence[MarketQuote],
                             cfg: BootstrapConfig = DEFAULT_CONFIG) -> DiscountCurve:
    """OIS discount curve from overnight deposits and OIS quotes sorted by maturity."""
    if not quotes:
        raise BootstrapError("no quotes for the discount curve")
    for q in quotes:
        if not q.is_discount:
            raise BootstrapError(f"not a discount-curve quote: {q.describe()}", q)
    pillars = [(anchor, 1.0)]
    for instr in _instruments(quotes, anchor, cfg):
        def trial(x, d=instr.pillar):
            return CurveSet(DiscountCurve(anchor, tuple(pillars) + ((d, x),), cfg.interpolation))

        pillars.append((instr.pillar, _solve_pillar(instr, trial, cfg)))
    return DiscountCurve(anchor, tuple(pillars), cfg.interpolation)


def bootstrap_forward_curve(tenor: Tenor | str, quotes: Sequence[MarketQuote], discount: DiscountCurve,
                            cfg: BootstrapConfig = DEFAULT_CONFIG) -> ForwardCurve:
    """Tenor forward curve from same-tenor deposits, FRAs and swaps, discounted on ``discount``."""
    tenor = Tenor.parse(tenor)
    if not quotes:
        raise BootstrapError(f"no quotes for the {tenor} forward curve")
    for q in quotes:
        if q.kind not in (QuoteKind.DEPOSIT, QuoteKind.FRA, QuoteKind.SWAP) or q.tenor != tenor:
            raise BootstrapError(f"not a {tenor} forward-curve quote: {q.describe()}", q)
    anchor = discount.anchor
    pillars = [(anchor, 1.0)]
    for instr in _instruments(quotes, anchor, cfg):
        def trial(x, d=instr.pillar):
            fwd = ForwardCurve(anchor, tuple(pillars) + ((d, x),), cfg.interpolation, tenor)
            return CurveSet(discount, {tenor: fwd})

        pillars.append((instr.pillar, _solve_pillar(instr, trial, cfg)))
    return ForwardCurve(anchor, tuple(pillars), cfg.interpolation, tenor)


# ---------------------------------------------------------------------------
# Whole market
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuoteGroups:
    discount: tuple
    forwards: dict
    checks: tuple
    curve_ids: dict


def group_quotes(quotes: Iterable[MarketQuote]) -> QuoteGroups:
    """Split quotes into the discount set, per-tenor forward sets and basis-swap checks.

    Each curve id must map to exactly one role: the discount curve or a single tenor.
    """
    roles: dict = {}
    discount, forwards, checks = [], {}, []
    for q in quotes:
        if q.kind is QuoteKind.BASIS_SWAP:
            checks.append(q)
            continue
        role = "discount" if q.is_discount else q.tenor
        seen = roles.setdefault(q.curve_id, role)
        if seen != role:
            raise ConfigurationError(
                f"curve {q.curve_id!r} mixes {seen} and {role} quotes: {q.describe()}")
        if role == "discount":
            discount.append(q)
        else:
            forwards.setdefault(role, []).append(q)
    ids_by_role: dict = {}
    for cid, role in roles.items():
        if role in ids_by_role:
            raise ConfigurationError(f"curves {ids_by_role[role]!r} and {cid!r} both define {role}")
        ids_by_role[role] = cid
    return QuoteGroups(tuple(discount), {k: tuple(v) for k, v in forwards.items()}, tuple(checks),
                       ids_by_role)


def sort_by_maturity(quotes: Sequence[MarketQuote], anchor: Date,
                     cfg: BootstrapConfig = DEFAULT_CONFIG) -> list:
    return sorted(quotes, key=lambda q: quote_dates(q, anchor, cfg)[1])


def bootstrap_curves(anchor: Date, quotes: Iterable[MarketQuote],
                     cfg: BootstrapConfig = DEFAULT_CONFIG) -> CurveSet:
    """Discount curve first, then each tenor curve on top of it."""
    groups = group_quotes(quotes)
    disc = bootstrap_discount_curve(anchor, sort_by_maturity(groups.discount, anchor, cfg), cfg)
    forwards = {tenor: bootstrap_forward_curve(tenor, sort_by_maturity(qs, anchor, cfg), disc, cfg)
                for tenor, qs in sorted(groups.forwards.items(), key=lambda kv: kv[0])}
    return CurveSet(disc, forwards)


def reprice_residuals(curves: CurveSet, quotes: Sequence[MarketQuote],
                      cfg: BootstrapConfig = DEFAULT_CONFIG) -> list:
    """Model rate minus quoted rate for every quote, in rate units."""
    out = []
    for q in quotes:
        try:
            instr = calibration_instrument(q, curves.anchor, cfg)
            out.append(instr.residual(curves))
        except (ConfigurationError, DomainError) as exc:
            raise ConfigurationError(f"cannot price {q.describe()}: {exc}") from exc
    return out


def implied_quotes(curves: CurveSet, quotes: Sequence[MarketQuote],
                   cfg: BootstrapConfig = DEFAULT_CONFIG) -> list:
    """Copies of ``quotes`` whose quoted rates are the model rates on ``curves``."""
    return [replace(q, quote=calibration_instrument(q, curves.anchor, cfg).model_rate(curves))
            for q in quotes]
