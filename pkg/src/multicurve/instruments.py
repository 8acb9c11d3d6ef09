"""Linear rate instruments priced off a discount curve and tenor forward curves.

All valuation happens at the curve anchor. Sides follow the receiver/payer of
fixed convention: ``side=+1`` pays fixed (receives floating), ``side=-1``
receives fixed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .curves import CurveSet, DiscountCurve, ForwardCurve
from .errors import ConfigurationError, DomainError, ScheduleError
from .temporal import (BusinessDayConvention, Calendar, Date, DayCount, Schedule, Tenor,
                       WEEKENDS, add_tenor, generate_schedule, year_fraction)

PAYER = 1
RECEIVER = -1


def parse_side(side) -> int:
    if side in (PAYER, RECEIVER):
        return int(side)
    key = str(side).strip().lower()
    if key == "payer":
        return PAYER
    if key == "receiver":
        return RECEIVER
    raise DomainError(f"side must be payer/receiver or +1/-1, got {side!r}")


@dataclass(frozen=True)
class Deposit:
    nominal: float
    start: Date
    maturity: Date
    rate: float
    day_count: DayCount = DayCount.ACT_360

    def __post_init__(self):
        if not self.maturity > self.start:
            raise DomainError(f"deposit maturity {self.maturity} must follow start {self.start}")
        if not self.nominal > 0:
            raise DomainError("deposit nominal must be positive")

    @property
    def accrual(self) -> float:
        return year_fraction(self.start, self.maturity, self.day_count)


@dataclass(frozen=True)
class FixedLeg:
    nominal: float
    schedule: Schedule
    rate: float


@dataclass(frozen=True)
class FloatLeg:
    """Floating leg paying tenor-``x`` forwards; coupon frequency equals the tenor."""

    nominal: float
    schedule: Schedule
    tenor: Tenor

    def __post_init__(self):
        tenor = Tenor.parse(self.tenor)
        object.__setattr__(self, "tenor", tenor)
        raw = self.schedule.unadjusted
        if tenor.is_daily or len(raw) <= 2:
            return
        for k in range(1, len(raw)):
            if raw[k] != add_tenor(raw[0], tenor * k):
                raise ScheduleError(f"float leg period {k} is not a full {tenor} period (stubs unsupported)")


@dataclass(frozen=True)
class VanillaSwap:
    fixed: FixedLeg
    float: FloatLeg
    side: int = PAYER

    def __post_init__(self):
        object.__setattr__(self, "side", parse_side(self.side))
        if self.fixed.schedule.start != self.float.schedule.start or \
                self.fixed.schedule.end != self.float.schedule.end:
            raise ScheduleError("fixed and floating schedules must share start and end dates")


@dataclass(frozen=True)
class BasisSwap:
    leg_x: FloatLeg
    leg_y: FloatLeg
    fixed_schedule: Schedule

    def __post_init__(self):
        s = self.fixed_schedule
        for leg in (self.leg_x, self.leg_y):
            if leg.schedule.start != s.start or leg.schedule.end != s.end:
                raise ScheduleError(
                    f"basis swap legs must share start and end with the fixed schedule "
                    f"({leg.tenor} leg runs {leg.schedule.start}..{leg.schedule.end}, "
                    f"fixed runs {s.start}..{s.end})")


@dataclass(frozen=True)
class OIS:
    fixed: FixedLeg
    side: int = PAYER

    def __post_init__(self):
        object.__setattr__(self, "side", parse_side(self.side))

    @property
    def start(self) -> Date:
        return self.fixed.schedule.start

    @property
    def end(self) -> Date:
        return self.fixed.schedule.end


# ---------------------------------------------------------------------------
# Pricers
# ---------------------------------------------------------------------------


def price_deposit(dep: Deposit, disc: DiscountCurve) -> float:
    """``N * P(T_i) * (1 + L * tau)`` for a deposit whose fixing is known."""
    if disc.anchor >= dep.maturity:
        raise DomainError(f"deposit matured on {dep.maturity} (valuation {disc.anchor})")
    return dep.nominal * disc.df(dep.maturity) * (1.0 + dep.rate * dep.accrual)


def annuity(schedule: Schedule, disc: DiscountCurve) -> float:
    """Discounted sum of fixed accruals: ``sum P(S_i) * tau_K(S_{i-1}, S_i)``."""
    if not len(schedule):
        raise ScheduleError("empty schedule")
    return float(np.dot(disc.df_ordinals(schedule.pay_ordinals), schedule.accruals))


def _float_leg_value(schedule: Schedule, disc: DiscountCurve, fwd: ForwardCurve) -> float:
    pay = disc.df_ordinals(schedule.pay_ordinals)
    p_start = fwd.df_ordinals(schedule.start_ordinals)
    p_end = fwd.df_ordinals(schedule.end_ordinals)
    tau = schedule.accruals
    return _kernels.discounted_float_sum(pay, p_start, p_end, tau, tau)


def price_float_leg(leg: FloatLeg, disc: DiscountCurve, fwd: ForwardCurve) -> float:
    """``N * sum P_d(T_j) * F_x(T_{j-1}, T_j) * tau_x``."""
    if fwd.tenor != leg.tenor:
        raise ConfigurationError(f"forward curve tenor {fwd.tenor} does not match leg tenor {leg.tenor}")
    return leg.nominal * _float_leg_value(leg.schedule, disc, fwd)


def single_curve_float_leg(schedule: Schedule, curve: DiscountCurve, nominal: float = 1.0) -> float:
    """Telescoped single-curve floating leg ``N * (P(T_0) - P(T_m))``."""
    if not len(schedule):
        raise ScheduleError("empty schedule")
    return nominal * (curve.df(schedule.start) - curve.df(schedule.end))


def swap_rate(float_schedule: Schedule, fixed_schedule: Schedule, curves: CurveSet,
              tenor: Tenor | str) -> float:
    """Par rate: floating-leg value per unit nominal over the fixed annuity."""
    fwd = curves.forward(tenor)
    a = annuity(fixed_schedule, curves.discount)
    if a == 0.0:
        raise ScheduleError("zero annuity")
    return _float_leg_value(float_schedule, curves.discount, fwd) / a


def price_swap(sw: VanillaSwap, curves: CurveSet) -> float:
    """``omega * (float PV - K * N * annuity)``."""
    fwd = curves.forward(sw.float.tenor)
    if fwd.tenor != sw.float.tenor:
        raise ConfigurationError(f"forward curve tenor {fwd.tenor} does not match leg tenor {sw.float.tenor}")
    floating = _float_leg_value(sw.float.schedule, curves.discount, fwd)
    fixed = sw.fixed.rate * annuity(sw.fixed.schedule, curves.discount)
    if sw.fixed.nominal == sw.float.nominal:
        # one multiplication by the nominal keeps the value exactly linear in it
        return sw.side * sw.float.nominal * (floating - fixed)
    return sw.side * (sw.float.nominal * floating - sw.fixed.nominal * fixed)


def par_rate(sw: VanillaSwap, curves: CurveSet) -> float:
    return swap_rate(sw.float.schedule, sw.fixed.schedule, curves, sw.float.tenor)


def basis_spread(bs: BasisSwap, curves: CurveSet) -> float:
    """Difference of the two legs' swap rates against the common fixed schedule.

    ``R_x - R_y`` with ``R = (sum P_d(T_j) F(T_{j-1}, T_j) tau_j) / annuity``.
    Worked 1Y case: discount 0.99 at 6M and 0.98 at 1Y, 6M forwards 2% on
    both halves, 12M forward 2.4%, one fixed period of accrual 1::

        annuity = 0.98
        R_12M   = 0.98 * 0.024 / 0.98                  = 0.024
        R_6M    = (0.99 * 0.01 + 0.98 * 0.01) / 0.98   = 0.0201020...
        spread  = 0.0038980
    """
    a = annuity(bs.fixed_schedule, curves.discount)
    if a == 0.0:
        raise ScheduleError("zero annuity")
    vx = _float_leg_value(bs.leg_x.schedule, curves.discount, curves.forward(bs.leg_x.tenor))
    vy = _float_leg_value(bs.leg_y.schedule, curves.discount, curves.forward(bs.leg_y.tenor))
    return vx / a - vy / a


def price_ois(fixed: FixedLeg, start: Date, end: Date, disc: DiscountCurve, side=PAYER) -> float:
    """OIS value with the compounded overnight leg telescoped to ``P(start) - P(end)``."""
    side = parse_side(side)
    if not end > start:
        raise DomainError(f"OIS end {end} must follow start {start}")
    if start < disc.anchor:
        raise DomainError(f"OIS start {start} precedes valuation date {disc.anchor}")
    overnight = disc.df(start) - disc.df(end)
    return side * fixed.nominal * (overnight - fixed.rate * annuity(fixed.schedule, disc))


def ois_rate(fixed_schedule: Schedule, disc: DiscountCurve) -> float:
    return (disc.df(fixed_schedule.start) - disc.df(fixed_schedule.end)) / annuity(fixed_schedule, disc)


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LegConventions:
    """Market conventions for building trades from start/end dates."""

    fixed_frequency: Tenor = Tenor(1, "Y")
    fixed_day_count: DayCount = DayCount.THIRTY_E_360
    float_day_count: DayCount = DayCount.ACT_360
    bdc: BusinessDayConvention = BusinessDayConvention.MODIFIED_FOLLOWING
    calendar: Calendar = WEEKENDS


DEFAULT_CONVENTIONS = LegConventions()


def fixed_schedule(start: Date, end: Date, conv: LegConventions = DEFAULT_CONVENTIONS) -> Schedule:
    return generate_schedule(start, end, conv.fixed_frequency, conv.fixed_day_count, conv.bdc, conv.calendar)


def float_leg(start: Date, end: Date, tenor: Tenor | str, nominal: float = 1.0,
              conv: LegConventions = DEFAULT_CONVENTIONS) -> FloatLeg:
    tenor = Tenor.parse(tenor)
    sched = generate_schedule(start, end, tenor, conv.float_day_count, conv.bdc, conv.calendar)
    return FloatLeg(nominal, sched, tenor)


def make_swap(start: Date, end: Date, tenor: Tenor | str, rate: float, nominal: float = 1.0,
              side=PAYER, conv: LegConventions = DEFAULT_CONVENTIONS) -> VanillaSwap:
    fl = float_leg(start, end, tenor, nominal, conv)
    fx = FixedLeg(nominal, fixed_schedule(fl.schedule.start, end, conv), rate)
    return VanillaSwap(fx, fl, side)


def make_fra(start: Date, end: Date, tenor: Tenor | str, rate: float, nominal: float = 1.0,
             side=PAYER, conv: LegConventions = DEFAULT_CONVENTIONS) -> VanillaSwap:
    """One-period swap; the fixed period accrues on the floating day count."""
    tenor = Tenor.parse(tenor)
    fl_sched = Schedule.from_dates([start, end], conv.float_day_count)
    fx_sched = Schedule.from_dates([start, end], conv.float_day_count)
    return VanillaSwap(FixedLeg(nominal, fx_sched, rate), FloatLeg(nominal, fl_sched, tenor), side)


def make_basis_swap(start: Date, end: Date, tenor_x: Tenor | str, tenor_y: Tenor | str,
                    nominal: float = 1.0, conv: LegConventions = DEFAULT_CONVENTIONS) -> BasisSwap:
    lx = float_leg(start, end, tenor_x, nominal, conv)
    ly = float_leg(start, end, tenor_y, nominal, conv)
    return BasisSwap(lx, ly, fixed_schedule(lx.schedule.start, lx.schedule.end, conv))


def make_ois(start: Date, end: Date, rate: float, nominal: float = 1.0, side=PAYER,
             conv: LegConventions = DEFAULT_CONVENTIONS) -> OIS:
    return OIS(FixedLeg(nominal, fixed_schedule(start, end, conv), rate), side)


def price_trade(trade, curves: CurveSet) -> float:
    """Dispatch to the pricer for any supported trade type."""
    if isinstance(trade, VanillaSwap):
        return price_swap(trade, curves)
    if isinstance(trade, OIS):
        return price_ois(trade.fixed, trade.start, trade.end, curves.discount, trade.side)
    if isinstance(trade, Deposit):
        return price_deposit(trade, curves.discount)
    if isinstance(trade, BasisSwap):
        # value of receiving leg x and paying leg y
        x, y = trade.leg_x, trade.leg_y
        vx = _float_leg_value(x.schedule, curves.discount, curves.forward(x.tenor))
        vy = _float_leg_value(y.schedule, curves.discount, curves.forward(y.tenor))
        if x.nominal == y.nominal:
            return x.nominal * (vx - vy)
        return x.nominal * vx - y.nominal * vy
    raise ConfigurationError(f"cannot price trade of type {type(trade).__name__}")
