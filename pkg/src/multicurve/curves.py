"""Pillar curves: OIS discounting and per-tenor forward curves.

Both curve kinds hold discount factors on pillar dates interpolated
log-linearly (piecewise-flat instantaneous forwards). A forward curve's
factors are pseudo-discounts: only their ratios mean anything, and the
tenor forward over ``[T1, T2]`` is read off with the classical formula
``(P(T1) / P(T2) - 1) / tau``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _kernels
from .errors import ConfigurationError, CurveValidationError, DomainError
from .temporal import Date, DayCount, Tenor, add_tenor, year_fraction

INTERPOLATION = "loglinear_df"
SUPPORTED_TENORS = tuple(Tenor.parse(t) for t in ("1D", "1M", "3M", "6M", "12M"))


@dataclass(frozen=True)
class DiscountCurve:
    anchor: Date
    pillars: tuple
    interpolation: str = INTERPOLATION

    kind = "discount"

    def __post_init__(self):
        pillars = tuple((d, float(v)) for d, v in self.pillars)
        object.__setattr__(self, "pillars", pillars)
        if self.interpolation != INTERPOLATION:
            raise CurveValidationError(f"unsupported interpolation {self.interpolation!r}")
        if not pillars:
            raise CurveValidationError("curve needs at least the anchor pillar")
        first_date, first_df = pillars[0]
        if first_date != self.anchor or first_df != 1.0:
            raise CurveValidationError(
                f"first pillar must be ({self.anchor}, 1.0), got ({first_date}, {first_df})")
        for (d0, _), (d1, _) in zip(pillars[:-1], pillars[1:]):
            if not d0 < d1:
                raise CurveValidationError(f"pillar dates not strictly increasing at {d1}")
        for d, v in pillars:
            if not (math.isfinite(v) and v > 0.0):
                raise CurveValidationError(f"discount factor at {d} must be positive and finite, got {v}")

        base = self.anchor.toordinal()
        knots = np.array([d.toordinal() - base for d, _ in pillars], dtype=float)
        dfs = np.array([v for _, v in pillars], dtype=float)
        slopes = _kernels.segment_slopes(knots, dfs)
        for arr in (knots, dfs, slopes):
            arr.flags.writeable = False
        object.__setattr__(self, "_base", base)
        object.__setattr__(self, "_knots", knots)
        object.__setattr__(self, "_dfs", dfs)
        object.__setattr__(self, "_slopes", slopes)

    @property
    def dates(self) -> tuple:
        return tuple(d for d, _ in self.pillars)

    @property
    def values(self) -> np.ndarray:
        return self._dfs

    def df_ordinals(self, ordinals) -> np.ndarray:
        """Vectorized discount factors for proleptic ordinals (``date.toordinal()``)."""
        x = np.asarray(ordinals, dtype=float) - self._base
        if x.size and x.min() < 0.0:
            raise DomainError(f"date before curve anchor {self.anchor}")
        return _kernels.loglinear_df(np.ascontiguousarray(x.ravel()), self._knots, self._dfs,
                                     self._slopes).reshape(x.shape)

    def df(self, d: Date) -> float:
        if d < self.anchor:
            raise DomainError(f"{d} precedes curve anchor {self.anchor}")
        return float(self.df_ordinals(np.array([d.toordinal()]))[0])

    def dfs(self, dates: Iterable[Date]) -> np.ndarray:
        return self.df_ordinals(np.fromiter((d.toordinal() for d in dates), dtype=np.int64))

    def forward_rate(self, t1: Date, t2: Date, dcc: DayCount | str = DayCount.ACT_360) -> float:
        if not t2 > t1:
            raise DomainError(f"forward period needs T2 > T1, got {t1} >= {t2}")
        p1, p2 = self.dfs((t1, t2))
        return float((p1 / p2 - 1.0) / year_fraction(t1, t2, dcc))

    def zero_rate(self, d: Date) -> float:
        """Continuously compounded ACT/365F zero rate to ``d``."""
        if not d > self.anchor:
            raise DomainError(f"zero rate needs a date after the anchor {self.anchor}")
        return -math.log(self.df(d)) / year_fraction(self.anchor, d, DayCount.ACT_365F)

    def scaled(self, k: float):
        """Same pillar dates with every factor after the anchor multiplied by ``k``."""
        pillars = (self.pillars[0],) + tuple((d, v * k) for d, v in self.pillars[1:])
        return _rebuild(self, pillars)


@dataclass(frozen=True)
class ForwardCurve(DiscountCurve):
    tenor: Tenor = field(default=Tenor(3, "M"))

    kind = "forward"

    def __post_init__(self):
        object.__setattr__(self, "tenor", Tenor.parse(self.tenor))
        if self.tenor not in SUPPORTED_TENORS:
            raise CurveValidationError(f"unsupported forward tenor {self.tenor}")
        super().__post_init__()


def _rebuild(curve, pillars):
    if isinstance(curve, ForwardCurve):
        return ForwardCurve(curve.anchor, pillars, curve.interpolation, curve.tenor)
    return DiscountCurve(curve.anchor, pillars, curve.interpolation)


def as_forward(curve: DiscountCurve, tenor: Tenor | str) -> ForwardCurve:
    """View a curve's factors as a forward curve of ``tenor`` (the single-curve limit)."""
    return ForwardCurve(curve.anchor, curve.pillars, curve.interpolation, Tenor.parse(tenor))


@dataclass(frozen=True)
class CurveSet:
    """An OIS discount curve plus one forward curve per tenor.

    With no explicit ``1D`` forward curve, the overnight forwards are read
    from the discount curve itself.
    """

    discount: DiscountCurve
    forwards: Mapping = field(default_factory=dict)

    def __post_init__(self):
        forwards = {Tenor.parse(k): v for k, v in dict(self.forwards).items()}
        for tenor, curve in forwards.items():
            if not isinstance(curve, ForwardCurve):
                raise CurveValidationError(f"curve for {tenor} is not a forward curve")
            if curve.tenor != tenor:
                raise CurveValidationError(f"curve keyed {tenor} carries tenor {curve.tenor}")
            if curve.anchor != self.discount.anchor:
                raise CurveValidationError(
                    f"forward curve {tenor} anchored at {curve.anchor}, discount at {self.discount.anchor}")
        object.__setattr__(self, "forwards", forwards)

    def __hash__(self):
        return hash((self.discount, tuple(sorted(self.forwards.items(), key=lambda kv: kv[0]))))

    @property
    def anchor(self) -> Date:
        return self.discount.anchor

    @property
    def tenors(self) -> list:
        out = set(self.forwards)
        out.add(Tenor(1, "D"))
        return sorted(out)

    def forward(self, tenor: Tenor | str) -> ForwardCurve:
        tenor = Tenor.parse(tenor)
        if tenor in self.forwards:
            return self.forwards[tenor]
        if tenor == Tenor(1, "D"):
            return as_forward(self.discount, tenor)
        raise ConfigurationError(f"no forward curve for tenor {tenor}")

    def has(self, tenor: Tenor | str) -> bool:
        tenor = Tenor.parse(tenor)
        return tenor in self.forwards or tenor == Tenor(1, "D")

    def replace(self, discount=None, **forwards) -> "CurveSet":
        fw = dict(self.forwards)
        fw.update({Tenor.parse(k): v for k, v in forwards.items()})
        return CurveSet(discount or self.discount, fw)


# ---------------------------------------------------------------------------
# Functional surface
# ---------------------------------------------------------------------------


def discount_factor(curve: DiscountCurve, d: Date) -> float:
    return curve.df(d)


def forward_rate(curve: DiscountCurve, t1: Date, t2: Date,
                 dcc: DayCount | str = DayCount.ACT_360) -> float:
    return curve.forward_rate(t1, t2, dcc)


def zero_rate(curve: DiscountCurve, d: Date) -> float:
    return curve.zero_rate(d)


def curve_from_pillars(anchor: Date, pillars: Sequence, interpolation: str = INTERPOLATION,
                       tenor: Tenor | str | None = None):
    """Validated curve; a forward curve when ``tenor`` is given."""
    if tenor is None:
        return DiscountCurve(anchor, tuple(pillars), interpolation)
    return ForwardCurve(anchor, tuple(pillars), interpolation, Tenor.parse(tenor))


def flat_curve(anchor: Date, zero: float, horizon: Tenor | str = "50Y",
               tenor: Tenor | str | None = None):
    """Curve with a constant continuously compounded ACT/365F zero rate."""
    end = add_tenor(anchor, horizon)
    df = math.exp(-zero * year_fraction(anchor, end, DayCount.ACT_365F))
    return curve_from_pillars(anchor, [(anchor, 1.0), (end, df)], tenor=tenor)
