import datetime as dt

import pytest
from hypothesis import given, settings, strategies as st

from multicurve.errors import DomainError, ParseError, ScheduleError
from multicurve.temporal import (WEEKENDS, BusinessDayConvention, Calendar, DayCount, Schedule, Tenor,
                                 add_tenor, adjust, generate_schedule, get_calendar, parse_date,
                                 spot_date, year_fraction)

dates = st.dates(min_value=dt.date(1990, 1, 1), max_value=dt.date(2080, 12, 31))
ACT = [DayCount.ACT_360, DayCount.ACT_365F]


class TestTenor:
    @pytest.mark.parametrize("label", ["1D", "1M", "3M", "6M", "12M", "1Y", "2Y", "10Y", "30Y", "2W"])
    def test_label_round_trip(self, label):
        assert str(Tenor.parse(label)) == label

    def test_twelve_months_is_one_year(self):
        assert Tenor.parse("12M") == Tenor.parse("1Y")
        assert hash(Tenor.parse("12M")) == hash(Tenor.parse("1Y"))
        assert str(Tenor.parse("12M")) == "12M"

    def test_lowercase_and_whitespace(self):
        assert Tenor.parse(" 6m ") == Tenor(6, "M")

    @pytest.mark.parametrize("bad", ["", "0M", "-1Y", "3Q", "M3", "1.5Y"])
    def test_rejects(self, bad):
        with pytest.raises(DomainError):
            Tenor.parse(bad)

    def test_ordering(self):
        labels = ["1Y", "1D", "6M", "1M", "3M"]
        assert [str(t) for t in sorted(Tenor.parse(x) for x in labels)] == ["1D", "1M", "3M", "6M", "1Y"]

    def test_multiply(self):
        assert Tenor.parse("3M") * 4 == Tenor.parse("1Y")


def test_parse_date():
    assert parse_date("2011-06-30") == dt.date(2011, 6, 30)
    with pytest.raises(DomainError):
        parse_date("30/06/2011")


@pytest.mark.parametrize("d, t, expected", [
    (dt.date(2011, 1, 31), "1M", dt.date(2011, 2, 28)),
    (dt.date(2012, 1, 31), "1M", dt.date(2012, 2, 29)),
    (dt.date(2011, 8, 31), "6M", dt.date(2012, 2, 29)),
    (dt.date(2011, 6, 30), "1Y", dt.date(2012, 6, 30)),
    (dt.date(2011, 6, 30), "2W", dt.date(2011, 7, 14)),
])
def test_add_tenor_clamps_month_end(d, t, expected):
    assert add_tenor(d, t) == expected


class TestDayCount:
    def test_act360(self):
        assert year_fraction(dt.date(2011, 1, 1), dt.date(2011, 4, 1), "ACT/360") == 90 / 360

    def test_act365f(self):
        assert year_fraction(dt.date(2012, 1, 1), dt.date(2013, 1, 1), DayCount.ACT_365F) == 366 / 365

    def test_30e360_caps_day_31(self):
        assert year_fraction(dt.date(2011, 1, 31), dt.date(2011, 3, 31), "30E/360") == 60 / 360
        # both 30 and 31 map to day 30, so this interval has length zero
        assert year_fraction(dt.date(2011, 3, 30), dt.date(2011, 3, 31), "30E/360") == 0.0

    def test_reversed_interval(self):
        with pytest.raises(DomainError):
            year_fraction(dt.date(2011, 2, 1), dt.date(2011, 1, 1), "ACT/360")

    @given(dates, st.sampled_from(list(DayCount)))
    def test_zero_length(self, d, dcc):
        assert year_fraction(d, d, dcc) == 0.0

    @given(dates, st.integers(1, 20000), st.sampled_from(ACT))
    def test_positive_for_act(self, d, n, dcc):
        assert year_fraction(d, d + dt.timedelta(days=n), dcc) > 0.0

    @given(dates, st.integers(0, 5000), st.integers(0, 5000), st.sampled_from(ACT))
    def test_act_additive(self, a, m, n, dcc):
        b = a + dt.timedelta(days=m)
        c = b + dt.timedelta(days=n)
        # exact in whole days; the two float quotients may differ by one rounding
        assert year_fraction(a, b, dcc) + year_fraction(b, c, dcc) == pytest.approx(
            year_fraction(a, c, dcc), rel=1e-15, abs=1e-15)


class TestCalendar:
    def test_weekends(self):
        assert not WEEKENDS.is_business_day(dt.date(2011, 7, 2))
        assert WEEKENDS.following(dt.date(2011, 7, 2)) == dt.date(2011, 7, 4)
        assert WEEKENDS.preceding(dt.date(2011, 7, 2)) == dt.date(2011, 7, 1)

    def test_spot_lag(self):
        assert spot_date(dt.date(2011, 6, 30)) == dt.date(2011, 7, 4)
        assert spot_date(dt.date(2011, 6, 30), 0) == dt.date(2011, 6, 30)

    def test_holiday_file(self, tmp_path):
        f = tmp_path / "target.txt"
        f.write_text("# closures\n2011-12-26\n2012-01-02 # new year observed\n")
        cal = get_calendar(str(f))
        assert isinstance(cal, Calendar) and cal.name == "target"
        assert adjust(dt.date(2011, 12, 24), "Following", cal) == dt.date(2011, 12, 27)

    def test_holiday_file_error_has_line(self, tmp_path):
        f = tmp_path / "bad.txt"
        f.write_text("2011-12-26\nchristmas\n")
        with pytest.raises(ParseError, match="line 2"):
            Calendar.from_file(f)

    def test_modified_following_stays_in_month(self):
        sat = dt.date(2011, 4, 30)
        assert adjust(sat, "Following") == dt.date(2011, 5, 2)
        assert adjust(sat, "ModifiedFollowing") == dt.date(2011, 4, 29)
        assert adjust(sat, "MF") == dt.date(2011, 4, 29)
        assert adjust(sat, BusinessDayConvention.NONE) == sat

    @given(dates, st.sampled_from(list(BusinessDayConvention)))
    def test_adjust_idempotent(self, d, bdc):
        once = adjust(d, bdc)
        assert adjust(once, bdc) == once


class TestSchedule:
    def test_quarterly_year(self):
        s = generate_schedule(dt.date(2011, 7, 4), dt.date(2012, 7, 4), "3M")
        assert [p.accrual_end for p in s.periods] == [
            dt.date(2011, 10, 4), dt.date(2012, 1, 4), dt.date(2012, 4, 4), dt.date(2012, 7, 4)]

    def test_short_final_stub(self):
        s = generate_schedule(dt.date(2011, 7, 4), dt.date(2012, 2, 6), "3M", bdc="None")
        assert len(s) == 3
        assert s.periods[-1].accrual_start == dt.date(2012, 1, 4)
        assert s.end == dt.date(2012, 2, 6)

    def test_daily_counts_business_days(self):
        s = generate_schedule(dt.date(2011, 7, 4), dt.date(2011, 7, 18), "1D")
        assert len(s) == 10
        assert all(WEEKENDS.is_business_day(d) for d in s.dates)

    def test_end_before_start(self):
        with pytest.raises(DomainError):
            generate_schedule(dt.date(2011, 7, 4), dt.date(2011, 7, 4), "3M")

    def test_from_dates_validates(self):
        with pytest.raises(ScheduleError):
            Schedule.from_dates([dt.date(2011, 1, 1), dt.date(2011, 1, 1)], "ACT/360")
        with pytest.raises(ScheduleError):
            Schedule.from_dates([dt.date(2011, 1, 1)], "ACT/360")

    @settings(max_examples=60, deadline=None)
    @given(dates, st.sampled_from(["1M", "3M", "6M", "12M", "1Y"]), st.integers(1, 40),
           st.sampled_from(list(BusinessDayConvention)))
    def test_exact_multiples_have_n_periods(self, start, freq, n, bdc):
        start = adjust(start, "Following")
        end = add_tenor(start, Tenor.parse(freq) * n)
        s = generate_schedule(start, end, freq, bdc=bdc)
        assert len(s) == n

    @settings(max_examples=60, deadline=None)
    @given(dates, st.integers(1, 4000), st.sampled_from(["1D", "1M", "3M", "6M", "1Y"]),
           st.sampled_from(list(DayCount)), st.sampled_from(list(BusinessDayConvention)))
    def test_schedule_invariants(self, start, days, freq, dcc, bdc):
        start = adjust(start, "Following")
        end = start + dt.timedelta(days=days)
        daily_none = freq == "1D" and bdc is BusinessDayConvention.NONE
        rolled_end = adjust(end, "Following" if daily_none else bdc)
        try:
            s = generate_schedule(start, end, freq, dcc, bdc)
        except ScheduleError:
            assert rolled_end <= start
            return
        ps = s.periods
        assert all(a.accrual_end == b.accrual_start for a, b in zip(ps, ps[1:]))
        assert all(p.accrual_start < p.accrual_end for p in ps)
        assert all(p.pay_date == p.accrual_end for p in ps)
        assert s.start == start and s.unadjusted[0] == start
        assert s.end == rolled_end
        if dcc in ACT:
            total = sum(year_fraction(p.accrual_start, p.accrual_end, dcc) for p in ps)
            assert total == pytest.approx(year_fraction(s.start, s.end, dcc), rel=1e-13)
