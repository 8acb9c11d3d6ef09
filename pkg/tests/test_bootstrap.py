import datetime as dt
import random

import pytest

from conftest import ANCHOR
from multicurve.analytics import synthetic_curveset
from multicurve.bootstrap import (BootstrapConfig, MarketQuote, bootstrap_curves, bootstrap_discount_curve,
                                  bootstrap_forward_curve, group_quotes, implied_quotes, reprice_residuals)
from multicurve.curves import flat_curve
from multicurve.errors import BootstrapError, ConfigurationError, DomainError

MON = dt.date(2011, 1, 3)


def test_single_ois_pillar():
    q = MarketQuote("EONIA", "OIS", "1D", MON, dt.date(2012, 1, 3), 0.02)
    curve = bootstrap_discount_curve(MON, [q])
    assert curve.df(dt.date(2012, 1, 3)) == pytest.approx(1 / 1.02, abs=1e-12)
    assert round(curve.df(dt.date(2012, 1, 3)), 7) == 0.9803922


def test_single_deposit_pseudo_df():
    start = dt.date(2011, 1, 4)
    end = start + dt.timedelta(days=90)
    disc = flat_curve(start, 0.01)
    q = MarketQuote("EUR3M", "Deposit", "3M", start, end, 0.01)
    fwd = bootstrap_forward_curve("3M", [q], disc)
    assert fwd.df(end) == pytest.approx(1 / (1 + 0.01 * 0.25), abs=1e-12)
    assert round(fwd.df(end), 7) == 0.9975062


def test_residuals_tiny(market_curves, market_quotes):
    assert max(abs(r) for r in reprice_residuals(market_curves, market_quotes)) < 1e-10


def test_bumped_quotes_show_the_bump(market_curves, market_quotes):
    bumped = [q.bumped(1e-4) for q in market_quotes]
    for r in reprice_residuals(market_curves, bumped):
        assert r == pytest.approx(-1e-4, abs=1e-10)


def test_pillars_are_maturities(market_curves, market_quotes):
    groups = group_quotes(market_quotes)
    assert len(market_curves.discount.pillars) == len(groups.discount) + 1
    for tenor, qs in groups.forwards.items():
        dates = market_curves.forward(tenor).dates
        assert len(dates) == len(qs) + 1
        assert all(a < b for a, b in zip(dates, dates[1:]))


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_permutation_gives_identical_curves(market_quotes, market_curves, seed):
    shuffled = list(market_quotes)
    random.Random(seed).shuffle(shuffled)
    rebuilt = bootstrap_curves(ANCHOR, shuffled)
    assert rebuilt.discount.values.tobytes() == market_curves.discount.values.tobytes()
    for t in market_curves.forwards:
        assert rebuilt.forward(t).values.tobytes() == market_curves.forward(t).values.tobytes()


def test_deterministic(market_quotes):
    a = bootstrap_curves(ANCHOR, market_quotes)
    b = bootstrap_curves(ANCHOR, market_quotes)
    assert a == b
    assert a.discount.values.tobytes() == b.discount.values.tobytes()


def test_negative_rates_calibrate():
    curves = synthetic_curveset(ANCHOR, zero=-0.004, slope=0.0, spread_per_step=0.0005, tenors=["1D", "6M"])
    templates = [MarketQuote("EONIA", "OIS", "1D", "SPOT", m, 0.0) for m in ("1Y", "5Y", "10Y")]
    templates += [MarketQuote("EUR6M", "Swap", "6M", "SPOT", m, 0.0) for m in ("2Y", "5Y", "10Y")]
    quotes = implied_quotes(curves, templates)
    rebuilt = bootstrap_curves(ANCHOR, quotes)
    assert max(abs(r) for r in reprice_residuals(rebuilt, quotes)) < 1e-10
    assert rebuilt.discount.values[-1] > 1.0


def test_basis_quotes_are_checks(market_curves, market_quotes):
    check = implied_quotes(market_curves, [MarketQuote("EUR6M3M", "BasisSwap", "6M", "SPOT", "5Y", 0.0,
                                                       tenor_y="3M")])[0]
    rebuilt = bootstrap_curves(ANCHOR, list(market_quotes) + [check])
    assert rebuilt == market_curves
    assert abs(reprice_residuals(rebuilt, [check])[0]) < 1e-15


class TestErrors:
    def test_empty(self):
        with pytest.raises(BootstrapError):
            bootstrap_discount_curve(ANCHOR, [])
        with pytest.raises(BootstrapError):
            bootstrap_curves(ANCHOR, [])

    def test_bracketing_failure_names_quote(self):
        q = MarketQuote("EONIA", "OIS", "1D", "SPOT", "1Y", -5.0, line=7)
        with pytest.raises(BootstrapError, match="line 7") as info:
            bootstrap_discount_curve(ANCHOR, [q])
        assert info.value.quote == q

    def test_iteration_cap(self, market_quotes):
        with pytest.raises(BootstrapError, match="did not converge"):
            bootstrap_curves(ANCHOR, market_quotes, BootstrapConfig(max_iterations=1))

    def test_ordering(self):
        q1 = MarketQuote("EONIA", "OIS", "1D", "SPOT", "2Y", 0.01)
        q2 = MarketQuote("EONIA", "OIS", "1D", "SPOT", "1Y", 0.01)
        with pytest.raises(BootstrapError, match="does not follow"):
            bootstrap_discount_curve(ANCHOR, [q1, q2])

    def test_mixed_roles(self):
        qs = [MarketQuote("X", "OIS", "1D", "SPOT", "1Y", 0.01),
              MarketQuote("X", "Swap", "3M", "SPOT", "2Y", 0.01)]
        with pytest.raises(ConfigurationError):
            group_quotes(qs)

    def test_forward_curve_needs_discount(self):
        with pytest.raises(BootstrapError, match="discount"):
            bootstrap_curves(ANCHOR, [MarketQuote("EUR3M", "Swap", "3M", "SPOT", "2Y", 0.01)])

    @pytest.mark.parametrize("kwargs", [dict(solver_df_tolerance=0.0), dict(max_iterations=0),
                                        dict(spot_lag=-1)])
    def test_config_validation(self, kwargs):
        with pytest.raises(DomainError):
            BootstrapConfig(**kwargs)

    @pytest.mark.parametrize("args", [
        ("EONIA", "OIS", "3M", "SPOT", "1Y", 0.01),
        ("EUR3M", "Swap", "1D", "SPOT", "1Y", 0.01),
        ("EUR3M", "Swap", "3M", "TODAY", "1Y", 0.01),
        ("EUR3M", "Swap", "3M", "SPOT", "1Y", float("nan")),
        ("EUR3M", "Swap", "3M", dt.date(2012, 1, 1), dt.date(2011, 1, 1), 0.01),
        ("EUR3M", "Cap", "3M", "SPOT", "1Y", 0.01),
    ])
    def test_quote_validation(self, args):
        with pytest.raises(DomainError):
            MarketQuote(*args)
