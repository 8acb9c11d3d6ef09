"""Regenerate the synthetic fixture files in this directory.

    python fixtures/make_fixtures.py

Quotes come from a synthetic OIS curve with tenor curves sitting 10bp per
tenor step above it, rounded to 0.01bp. Fixings are a seeded random walk
with a widening 3M-overnight basis from August 2007.
"""

import datetime as dt
import json
from pathlib import Path

import numpy as np

from multicurve import analytics as an
from multicurve import io as mio
from multicurve.bootstrap import MarketQuote, implied_quotes

HERE = Path(__file__).parent
ANCHOR = dt.date(2011, 6, 30)


def quote_templates():
    q = MarketQuote
    out = [q("EONIA", "Deposit", "1D", ANCHOR, "1D", 0.0)]
    out += [q("EONIA", "OIS", "1D", "SPOT", m, 0.0) for m in ("1Y", "2Y", "3Y", "5Y", "10Y", "30Y")]
    out += [q("EUR3M", "Deposit", "3M", "SPOT", "3M", 0.0)]
    out += [q("EUR3M", "Swap", "3M", "SPOT", m, 0.0) for m in ("1Y", "2Y", "5Y", "10Y", "20Y", "30Y")]
    out += [q("EUR6M", "Deposit", "6M", "SPOT", "6M", 0.0)]
    out += [q("EUR6M", "Swap", "6M", "SPOT", m, 0.0) for m in ("2Y", "5Y", "10Y", "20Y", "30Y")]
    return out


def full_templates():
    """The base set plus 1M and 12M curves, enough for a five-tenor report."""
    q = MarketQuote
    out = quote_templates()
    out += [q("EUR6M", "Swap", "6M", "SPOT", "1Y", 0.0)]
    out += [q("EUR1M", "Deposit", "1M", "SPOT", "1M", 0.0)]
    out += [q("EUR1M", "Swap", "1M", "SPOT", m, 0.0) for m in ("1Y", "2Y", "5Y", "10Y")]
    out += [q("EUR12M", "Deposit", "12M", "SPOT", "12M", 0.0)]
    out += [q("EUR12M", "Swap", "12M", "SPOT", m, 0.0) for m in ("2Y", "5Y", "10Y", "20Y", "30Y")]
    return out


def market_quotes(templates=None):
    curves = an.synthetic_curveset(ANCHOR, zero=0.012, slope=0.018, spread_per_step=0.001)
    quotes = implied_quotes(curves, templates or quote_templates())
    return [MarketQuote(q.curve_id, q.kind, q.tenor, q.start, q.maturity, float(round(q.quote, 6))) for q in quotes]


def fixings(seed=7):
    rng = np.random.default_rng(seed)
    days = np.arange(np.datetime64("2005-01-03"), np.datetime64("2012-07-01"))
    days = days[np.is_busday(days)]
    eonia = 0.02 + np.cumsum(rng.normal(0, 4e-4, days.size))
    crisis = days >= np.datetime64("2007-08-09")
    basis = np.where(crisis, 0.006 + np.abs(np.cumsum(rng.normal(0, 2e-4, days.size))), 0.0006)
    euribor = eonia + basis + rng.normal(0, 5e-5, days.size)
    return [str(d) for d in days], np.round(eonia, 6), np.round(euribor, 6)


def main():
    (HERE / "quotes_eur_2011-06-30.csv").write_text(mio.format_quotes(market_quotes()))
    (HERE / "quotes_eur_full_2011-06-30.csv").write_text(mio.format_quotes(market_quotes(full_templates())))
    dates, eonia, euribor = fixings()
    for name, series in (("eonia", eonia), ("euribor3m", euribor)):
        rows = ["date,rate"] + [f"{d},{v!r}" for d, v in zip(dates, series.tolist())]
        (HERE / f"fixings_{name}.csv").write_text("\n".join(rows) + "\n")
    trades = {
        "trade_swap_10y_6m.json": {"type": "swap", "nominal": 1e6, "start": "SPOT", "maturity": "10Y",
                                   "float_tenor": "6M", "side": "payer"},
        "trade_basis_5y.json": {"type": "basis_swap", "nominal": 1e6, "maturity": "5Y",
                                "tenor_x": "6M", "tenor_y": "3M"},
        "trade_ois_2y.json": {"type": "ois", "nominal": 1e6, "maturity": "2Y", "fixed_rate": 0.015,
                              "side": "receiver"},
    }
    for name, doc in trades.items():
        (HERE / name).write_text(json.dumps(doc, indent=2) + "\n")


if __name__ == "__main__":
    main()
