import datetime as dt
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import ANCHOR
from oracles import pearson
from multicurve import instruments as ins
from multicurve.analytics import (DEFAULT_MATURITIES, DEFAULT_PAIRS, FixingSeries, FraDynamicsConfig,
                                  basis_term_structure, degenerate_curveset, delta_ladder, join,
                                  rolling_correlation, simulate_fra_martingale, spectroscopy_report,
                                  synthetic_curveset)
from multicurve.bootstrap import MarketQuote, bootstrap_curves, implied_quotes
from multicurve.errors import ConfigurationError, DomainError
from multicurve.temporal import add_tenor, adjust, spot_date


class TestSpectroscopy:
    def test_rows_and_coupons(self, synthetic):
        rep = spectroscopy_report(synthetic, "1Y", nominal=100.0)
        assert [str(r.tenor) for r in rep.rows] == ["1D", "1M", "3M", "6M", "12M"]
        assert [r.coupons for r in rep.rows][1:] == [12, 4, 2, 1]
        # one coupon per business day of the year on the weekend calendar
        assert 255 <= rep.rows[0].coupons <= 262
        assert rep.row("1D").gap_pv == 0.0

    def test_strictly_increasing_in_tenor(self, synthetic):
        for mat in ("1Y", "2Y", "5Y", "10Y"):
            pvs = [r.pv for r in spectroscopy_report(synthetic, mat).rows]
            assert all(a < b for a, b in zip(pvs, pvs[1:]))

    def test_gap_rate_is_running_spread(self, synthetic):
        rep = spectroscopy_report(synthetic, "5Y", nominal=1e6)
        for r in rep.rows:
            assert r.gap_rate * rep.annuity * rep.nominal == pytest.approx(r.gap_pv, rel=1e-14, abs=1e-12)

    @pytest.mark.parametrize("mat", ["1Y", "3Y", "10Y", "30Y"])
    def test_degenerate_gap_vanishes(self, synthetic, mat):
        n = 1e6
        rep = spectroscopy_report(degenerate_curveset(synthetic.discount), mat, nominal=n)
        assert rep.max_gap <= 1e-12 * n
        for r in rep.rows:
            assert abs(r.pv - rep.telescoped) <= 1e-12 * n

    def test_missing_curve(self, market_curves):
        with pytest.raises(ConfigurationError, match="1M"):
            spectroscopy_report(market_curves, "1Y")

    def test_non_multiple_maturity(self, synthetic):
        with pytest.raises(DomainError, match="multiple"):
            spectroscopy_report(synthetic, "18M")
        assert len(spectroscopy_report(synthetic, "18M", tenors=["1D", "1M", "3M", "6M"]).rows) == 4


class TestBasisSurface:
    def test_shape_and_axes(self, synthetic):
        s = basis_term_structure(synthetic)
        assert s.values.shape == (len(DEFAULT_MATURITIES), len(DEFAULT_PAIRS))
        assert s.pair_labels[0] == "1D/1M" and s.pair_labels[-1] == "6M/12M"

    def test_antisymmetry_and_diagonal(self, synthetic):
        pairs = list(DEFAULT_PAIRS)
        flipped = [(y, x) for x, y in pairs]
        mats = ["1Y", "5Y", "20Y"]
        a = basis_term_structure(synthetic, pairs, mats)
        b = basis_term_structure(synthetic, flipped, mats)
        assert np.array_equal(a.values, -b.values)
        diag = basis_term_structure(synthetic, [(t, t) for t in ("1D", "3M", "12M")], mats)
        assert np.all(diag.values == 0.0)

    def test_ten_bp_steps(self, synthetic):
        # forwards 10bp apart per tenor step give spreads close to 10bp per step
        s = basis_term_structure(synthetic, [("3M", "1M"), ("6M", "1M"), ("12M", "1M")], ["5Y"])
        assert s.values[0] == pytest.approx([10.0, 20.0, 30.0], abs=1.5)

    def test_unsorted_maturities(self, synthetic):
        with pytest.raises(DomainError):
            basis_term_structure(synthetic, DEFAULT_PAIRS, ["5Y", "1Y"])
        with pytest.raises(DomainError):
            basis_term_structure(synthetic, [], ["5Y"])


@pytest.fixture(scope="module")
def small_market():
    truth = synthetic_curveset(ANCHOR, zero=0.012, slope=0.015, tenors=["1D", "3M"])
    templates = [MarketQuote("EONIA", "Deposit", "1D", ANCHOR, "1D", 0.0)]
    templates += [MarketQuote("EONIA", "OIS", "1D", "SPOT", m, 0.0) for m in ("1Y", "3Y", "7Y")]
    templates += [MarketQuote("EUR3M", "Deposit", "3M", "SPOT", "3M", 0.0)]
    templates += [MarketQuote("EUR3M", "Swap", "3M", "SPOT", m, 0.0) for m in ("2Y", "5Y", "7Y")]
    quotes = implied_quotes(truth, templates)
    return quotes, bootstrap_curves(ANCHOR, quotes)


def _swap_5y(curves, rate=None):
    start = spot_date(ANCHOR)
    end = adjust(add_tenor(start, "5Y"), "MF")
    if rate is None:
        rate = ins.par_rate(ins.make_swap(start, end, "3M", 0.0), curves)
    return ins.make_swap(start, end, "3M", rate, 1e6)


class TestDeltaLadder:
    def test_sum_close_to_parallel(self, small_market):
        quotes, curves = small_market
        ladder = delta_ladder(_swap_5y(curves), curves, quotes)
        assert len(ladder.entries) == len(quotes)
        assert ladder.sum_of_deltas == pytest.approx(ladder.all_quotes, rel=0.02)
        assert abs(ladder.base_pv) < 1e-6
        assert abs(ladder.by_curve["EONIA"]) < 0.05 * abs(ladder.by_curve["EUR3M"])

    def test_zero_bump(self, small_market):
        quotes, curves = small_market
        ladder = delta_ladder(_swap_5y(curves, 0.025), curves, quotes, bump=0.0)
        assert np.all(ladder.deltas == 0.0) and ladder.all_quotes == 0.0

    def test_rejects_foreign_curves(self, small_market):
        quotes, curves = small_market
        other = synthetic_curveset(ANCHOR, zero=0.03, tenors=["1D", "3M"])
        with pytest.raises(ConfigurationError, match="reprice"):
            delta_ladder(_swap_5y(curves), other, quotes)


def _series(values, start=dt.date(2020, 1, 1), step=1):
    return FixingSeries(tuple(start + dt.timedelta(days=step * i) for i in range(len(values))), values)


class TestCorrelation:
    def test_three_point_oracle(self):
        r = rolling_correlation(_series([1.0, 2.0, 3.0]), _series([1.0, 2.0, 4.0]), window=3)
        assert r.values[0] == pytest.approx(3 / math.sqrt(28 / 3), abs=1e-15)
        assert r.dates == (dt.date(2020, 1, 3),)

    def test_window_dates_align(self):
        a = _series(np.arange(10.0))
        r = rolling_correlation(a, a, window=4)
        assert len(r) == 7 and r.dates[0] == a.dates[3] and r.dates[-1] == a.dates[-1]

    def test_constant_window_is_nan(self):
        r = rolling_correlation(_series([1.0, 1.0, 1.0, 2.0]), _series([1.0, 2.0, 3.0, 4.0]), window=3)
        assert math.isnan(r.values[0]) and not math.isnan(r.values[1])

    def test_join_is_inner(self):
        a = _series([1.0, 2.0, 3.0, 4.0, 5.0])
        b = _series([10.0, 30.0, 50.0], step=2)
        dates, x, y = join(a, b)
        assert dates == b.dates and list(x) == [1.0, 3.0, 5.0] and list(y) == [10.0, 30.0, 50.0]

    def test_diff_mode(self):
        x = np.cumsum(np.arange(1.0, 12.0))
        y = x + np.arange(11.0) ** 2
        r = rolling_correlation(_series(x), _series(y), window=5, diff=True)
        assert len(r) == 10 - 4
        assert r.values[0] == pytest.approx(pearson(np.diff(x)[:5], np.diff(y)[:5]), abs=1e-12)

    def test_errors(self):
        a = _series([1.0, 2.0, 3.0])
        with pytest.raises(DomainError):
            rolling_correlation(a, a, window=1)
        with pytest.raises(DomainError):
            rolling_correlation(a, a, window=5)
        with pytest.raises(DomainError):
            FixingSeries((dt.date(2020, 1, 2), dt.date(2020, 1, 1)), [1.0, 2.0])

    @settings(max_examples=50)
    @given(st.lists(st.tuples(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3)), min_size=5, max_size=60),
           st.integers(2, 5))
    def test_bounded_and_matches_oracle(self, pairs, window):
        x = np.array([p[0] for p in pairs])
        y = np.array([p[1] for p in pairs])
        r = rolling_correlation(_series(x), _series(y), window=window).values
        finite = r[~np.isnan(r)]
        assert np.all(np.abs(finite) <= 1 + 1e-12)
        for k, v in enumerate(r):
            xs, ys = x[k:k + window], y[k:k + window]
            if np.ptp(xs) > 1e-6 and np.ptp(ys) > 1e-6:
                assert v == pytest.approx(pearson(xs, ys), abs=1e-9)


class TestMartingale:
    @settings(max_examples=8)
    @given(st.floats(0.0, 0.5), st.floats(0.05, 5.0), st.integers(0, 2**32))
    def test_mean_within_three_stderr(self, sigma, horizon, seed):
        res = simulate_fra_martingale(FraDynamicsConfig(0.03, sigma, horizon, 100_000, seed))
        assert abs(res.mean - 0.03) <= 3 * res.stderr or (sigma == 0.0 and res.mean == 0.03)

    def test_reproducible_and_seed_sensitive(self):
        a = simulate_fra_martingale(FraDynamicsConfig(0.03, 0.3, 2.0, 70_000, 11))
        b = simulate_fra_martingale(FraDynamicsConfig(0.03, 0.3, 2.0, 70_000, 11))
        c = simulate_fra_martingale(FraDynamicsConfig(0.03, 0.3, 2.0, 70_000, 12))
        assert a == b and a != c

    def test_single_path(self):
        res = simulate_fra_martingale(FraDynamicsConfig(0.03, 0.2, 1.0, 1, 3))
        assert res.mean > 0 and math.isnan(res.stderr)

    @pytest.mark.parametrize("kwargs", [dict(sigma=-0.1), dict(horizon=0.0), dict(paths=0)])
    def test_config_errors(self, kwargs):
        base = dict(f0=0.03, sigma=0.2, horizon=1.0, paths=10, seed=1)
        base.update(kwargs)
        with pytest.raises(DomainError):
            FraDynamicsConfig(**base)


def test_surface_matches_single_basis_swaps(synthetic):
    mats = ["2Y", "7Y"]
    surf = basis_term_structure(synthetic, DEFAULT_PAIRS, mats)
    start = spot_date(ANCHOR)
    for i, m in enumerate(mats):
        end = adjust(add_tenor(start, m), "MF")
        for j, (x, y) in enumerate(surf.pairs):
            assert surf.values[i, j] == ins.basis_spread(ins.make_basis_swap(start, end, x, y), synthetic) * 1e4
