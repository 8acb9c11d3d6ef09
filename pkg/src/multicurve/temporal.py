"""Dates, tenors, day counts, business-day rolling and payment schedules.

Dates are plain :class:`datetime.date` values. Everything here is immutable
and pure.
"""

from __future__ import annotations

import calendar as _calendar
import datetime as dt
import enum
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ParseError, ScheduleError

Date = dt.date


def parse_date(text: str) -> Date:
    """Parse an ISO-8601 ``YYYY-MM-DD`` string."""
    try:
        return dt.date.fromisoformat(text.strip())
    except (ValueError, AttributeError) as exc:
        raise DomainError(f"invalid ISO date {text!r}") from exc


# ---------------------------------------------------------------------------
# Tenors
# ---------------------------------------------------------------------------

_TENOR_RE = re.compile(r"^\s*(\d+)\s*([DWMYdwmy])\s*$")
_APPROX_DAYS = {"D": 1.0, "W": 7.0, "M": 365.25 / 12.0, "Y": 365.25}


@dataclass(frozen=True, eq=False)
class Tenor:
    """A period length such as ``3M`` or ``1Y``.

    ``12M`` and ``1Y`` compare equal (and hash alike) but each prints the
    label it was built from.
    """

    count: int
    unit: str

    def __post_init__(self):
        unit = str(self.unit).upper()
        if unit not in _APPROX_DAYS:
            raise DomainError(f"unknown tenor unit {self.unit!r}")
        if int(self.count) != self.count or self.count < 1:
            raise DomainError(f"tenor count must be an integer >= 1, got {self.count!r}")
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "count", int(self.count))

    @classmethod
    def parse(cls, label: str | "Tenor") -> "Tenor":
        if isinstance(label, Tenor):
            return label
        m = _TENOR_RE.match(str(label))
        if not m:
            raise DomainError(f"invalid tenor label {label!r}")
        return cls(int(m.group(1)), m.group(2))

    @property
    def _key(self) -> tuple[str, int]:
        if self.unit == "D":
            return ("D", self.count)
        if self.unit == "W":
            return ("D", 7 * self.count)
        if self.unit == "M":
            return ("M", self.count)
        return ("M", 12 * self.count)

    @property
    def months(self) -> int | None:
        """Length in months for month/year tenors, ``None`` for day/week tenors."""
        kind, n = self._key
        return n if kind == "M" else None

    @property
    def is_daily(self) -> bool:
        return self.unit == "D"

    @property
    def approx_days(self) -> float:
        return self.count * _APPROX_DAYS[self.unit]

    def __mul__(self, k: int) -> "Tenor":
        return Tenor(self.count * int(k), self.unit)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, str):
            try:
                other = Tenor.parse(other)
            except DomainError:
                return NotImplemented
        if not isinstance(other, Tenor):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __lt__(self, other: "Tenor") -> bool:
        return self.approx_days < Tenor.parse(other).approx_days

    def __str__(self):
        return f"{self.count}{self.unit}"

    def __repr__(self):
        return f"Tenor('{self}')"


def add_tenor(d: Date, t: Tenor | str) -> Date:
    """Calendar addition with month-end clamping (Jan 31 + 1M -> Feb 28/29)."""
    t = Tenor.parse(t)
    if t.unit == "D":
        return d + dt.timedelta(days=t.count)
    if t.unit == "W":
        return d + dt.timedelta(weeks=t.count)
    months = t.months
    y, m0 = divmod(d.month - 1 + months, 12)
    year, month = d.year + y, m0 + 1
    day = min(d.day, _calendar.monthrange(year, month)[1])
    return dt.date(year, month, day)


# ---------------------------------------------------------------------------
# Day counts
# ---------------------------------------------------------------------------


class DayCount(enum.Enum):
    ACT_360 = "ACT/360"
    ACT_365F = "ACT/365F"
    THIRTY_E_360 = "30E/360"

    @classmethod
    def parse(cls, label: "str | DayCount") -> "DayCount":
        if isinstance(label, DayCount):
            return label
        for member in cls:
            if member.value.upper() == str(label).strip().upper():
                return member
        raise DomainError(f"unknown day count {label!r}")

    def year_fraction(self, d1: Date, d2: Date) -> float:
        return year_fraction(d1, d2, self)

    def __str__(self):
        return self.value


def year_fraction(d1: Date, d2: Date, dcc: DayCount | str) -> float:
    """Accrual fraction between ``d1`` and ``d2`` under ``dcc``.

    >>> year_fraction(dt.date(2011, 6, 30), dt.date(2011, 9, 28), DayCount.ACT_360)
    0.25
    """
    dcc = DayCount.parse(dcc)
    if d2 < d1:
        raise DomainError(f"year_fraction needs d2 >= d1, got {d1} > {d2}")
    if dcc is DayCount.ACT_360:
        return (d2 - d1).days / 360.0
    if dcc is DayCount.ACT_365F:
        return (d2 - d1).days / 365.0
    day1, day2 = min(d1.day, 30), min(d2.day, 30)
    return (360 * (d2.year - d1.year) + 30 * (d2.month - d1.month) + (day2 - day1)) / 360.0


def year_fractions(starts: Sequence[Date], ends: Sequence[Date], dcc: DayCount) -> np.ndarray:
    return np.array([year_fraction(a, b, dcc) for a, b in zip(starts, ends)], dtype=float)


# ---------------------------------------------------------------------------
# Calendars and business-day conventions
# ---------------------------------------------------------------------------


class BusinessDayConvention(enum.Enum):
    FOLLOWING = "Following"
    MODIFIED_FOLLOWING = "ModifiedFollowing"
    NONE = "None"

    @classmethod
    def parse(cls, label) -> "BusinessDayConvention":
        if isinstance(label, BusinessDayConvention):
            return label
        key = str(label).replace(" ", "").replace("_", "").lower()
        key = {"f": "following", "mf": "modifiedfollowing"}.get(key, key)
        for member in cls:
            if member.value.lower() == key:
                return member
        raise DomainError(f"unknown business-day convention {label!r}")


@dataclass(frozen=True)
class Calendar:
    """Weekend days plus an optional list of holidays."""

    name: str = "weekends"
    holidays: frozenset = field(default_factory=frozenset)
    weekend: tuple = (5, 6)

    @classmethod
    def from_file(cls, path: str | Path, name: str | None = None) -> "Calendar":
        """Read a holiday list: one ISO date per line, ``#`` starts a comment."""
        path = Path(path)
        days = set()
        for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
            text = raw.split("#", 1)[0].strip()
            if not text:
                continue
            try:
                days.add(parse_date(text))
            except DomainError as exc:
                raise ParseError(str(exc), line=lineno, source=path) from None
        return cls(name=name or path.stem, holidays=frozenset(days))

    def is_business_day(self, d: Date) -> bool:
        return d.weekday() not in self.weekend and d not in self.holidays

    def following(self, d: Date) -> Date:
        while not self.is_business_day(d):
            d += dt.timedelta(days=1)
        return d

    def preceding(self, d: Date) -> Date:
        while not self.is_business_day(d):
            d -= dt.timedelta(days=1)
        return d

    def advance(self, d: Date, business_days: int) -> Date:
        """Move forward by ``business_days`` good days (0 rolls to the next good day)."""
        d = self.following(d)
        for _ in range(business_days):
            d = self.following(d + dt.timedelta(days=1))
        return d

    def business_days_between(self, start: Date, end: Date) -> int:
        """Good days in ``(start, end]``."""
        n, d = 0, start
        while d < end:
            d += dt.timedelta(days=1)
            n += self.is_business_day(d)
        return n


WEEKENDS = Calendar()
_NAMED_CALENDARS = {"weekends": WEEKENDS, "none": WEEKENDS}


def get_calendar(name_or_path: str | Calendar | None) -> Calendar:
    """Resolve a calendar by name (``weekends``) or by holiday-file path."""
    if name_or_path is None:
        return WEEKENDS
    if isinstance(name_or_path, Calendar):
        return name_or_path
    key = str(name_or_path)
    if key.lower() in _NAMED_CALENDARS:
        return _NAMED_CALENDARS[key.lower()]
    return Calendar.from_file(key)


def adjust(d: Date, bdc: BusinessDayConvention | str = BusinessDayConvention.FOLLOWING,
           cal: Calendar = WEEKENDS) -> Date:
    """Roll ``d`` onto a business day; ModifiedFollowing rolls back across month end."""
    bdc = BusinessDayConvention.parse(bdc)
    if bdc is BusinessDayConvention.NONE:
        return d
    rolled = cal.following(d)
    if bdc is BusinessDayConvention.MODIFIED_FOLLOWING and rolled.month != d.month:
        rolled = cal.preceding(d)
    return rolled


def spot_date(anchor: Date, spot_lag: int = 2, cal: Calendar = WEEKENDS) -> Date:
    return cal.advance(anchor, spot_lag)


# ---------------------------------------------------------------------------
# Schedules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Period:
    accrual_start: Date
    accrual_end: Date
    pay_date: Date


@dataclass(frozen=True)
class Schedule:
    """Contiguous accrual periods on adjusted dates.

    ``unadjusted`` keeps the raw generated boundary dates; accrual and
    payment use the adjusted ones, with payment on the accrual end date.
    """

    periods: tuple
    day_count: DayCount
    unadjusted: tuple = ()

    def __post_init__(self):
        periods = tuple(self.periods)
        object.__setattr__(self, "periods", periods)
        object.__setattr__(self, "day_count", DayCount.parse(self.day_count))
        if not periods:
            raise ScheduleError("schedule has no periods")
        for i, p in enumerate(periods):
            if not p.accrual_start < p.accrual_end:
                raise ScheduleError(f"period {i} is not strictly increasing: {p}")
            if p.pay_date < p.accrual_end:
                raise ScheduleError(f"period {i} pays before accrual end: {p}")
            if i and periods[i - 1].accrual_end != p.accrual_start:
                raise ScheduleError(f"periods {i - 1} and {i} are not contiguous")
        if not self.unadjusted:
            object.__setattr__(self, "unadjusted", self.dates)

    @classmethod
    def from_dates(cls, dates: Iterable[Date], day_count: DayCount | str,
                   unadjusted: Sequence[Date] = ()) -> "Schedule":
        dates = list(dates)
        periods = tuple(Period(a, b, b) for a, b in zip(dates[:-1], dates[1:]))
        return cls(periods, DayCount.parse(day_count), tuple(unadjusted))

    def __len__(self):
        return len(self.periods)

    @property
    def dates(self) -> tuple:
        return (self.periods[0].accrual_start,) + tuple(p.accrual_end for p in self.periods)

    @property
    def start(self) -> Date:
        return self.periods[0].accrual_start

    @property
    def end(self) -> Date:
        return self.periods[-1].accrual_end

    @cached_property
    def accruals(self) -> np.ndarray:
        out = year_fractions([p.accrual_start for p in self.periods],
                             [p.accrual_end for p in self.periods], self.day_count)
        out.flags.writeable = False
        return out

    @cached_property
    def start_ordinals(self) -> np.ndarray:
        return _ordinals(p.accrual_start for p in self.periods)

    @cached_property
    def end_ordinals(self) -> np.ndarray:
        return _ordinals(p.accrual_end for p in self.periods)

    @cached_property
    def pay_ordinals(self) -> np.ndarray:
        return _ordinals(p.pay_date for p in self.periods)


def _ordinals(dates: Iterable[Date]) -> np.ndarray:
    out = np.fromiter((d.toordinal() for d in dates), dtype=np.int64)
    out.flags.writeable = False
    return out


def generate_schedule(start: Date, end: Date, freq: Tenor | str,
                      dcc: DayCount | str = DayCount.ACT_360,
                      bdc: BusinessDayConvention | str = BusinessDayConvention.MODIFIED_FOLLOWING,
                      cal: Calendar = WEEKENDS) -> Schedule:
    """Forward-generated schedule from ``start`` to ``end`` with a short final stub.

    Day-unit frequencies step in business days, so a ``1D`` schedule has one
    period per good day. Other units step ``start + k*freq`` on the raw
    calendar and are then rolled with ``bdc``.
    """
    freq = Tenor.parse(freq)
    bdc = BusinessDayConvention.parse(bdc)
    if end <= start:
        raise DomainError(f"schedule end {end} must be after start {start}")

    if freq.is_daily:
        final = adjust(end, bdc if bdc is not BusinessDayConvention.NONE
                       else BusinessDayConvention.FOLLOWING, cal)
        d = cal.following(start)
        dates = [d]
        while d < final:
            d = min(cal.advance(d, freq.count), final)
            dates.append(d)
        if len(dates) < 2:
            raise ScheduleError(f"no business day between {start} and {end}")
        return Schedule.from_dates(dates, dcc, unadjusted=dates)

    # End dates may arrive already rolled; a regular date rolling onto the
    # rolled end closes the schedule without a stub.
    end_adj = adjust(end, bdc, cal)
    raw = [start]
    k = 1
    while True:
        nxt = add_tenor(start, freq * k)
        nxt_adj = adjust(nxt, bdc, cal)
        if nxt_adj >= end_adj:
            raw.append(nxt if nxt_adj == end_adj else end)
            break
        raw.append(nxt)
        k += 1
    adjusted = [adjust(d, bdc, cal) for d in raw]
    for a, b in zip(adjusted[:-1], adjusted[1:]):
        if not a < b:
            raise ScheduleError(f"schedule dates collapse after adjustment near {a}")
    return Schedule.from_dates(adjusted, dcc, unadjusted=raw)
