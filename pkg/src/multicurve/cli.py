"""Command-line entry point: ``multicurve <subcommand> ...``.

Exit status is 0 on success, 1 on a domain or input error and 2 on a usage
error. Every failure prints exactly one ``error:`` line on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import analytics as an
from . import instruments as ins
from . import io as mio
from . import zeeman as zm
from .bootstrap import BootstrapConfig, QuoteKind, bootstrap_curves, reprice_residuals
from .curves import SUPPORTED_TENORS
from .errors import MulticurveError
from .temporal import Tenor, get_calendar, parse_date


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    anchor: object = None
    quotes: Path | None = None
    curves: Path | None = None
    trade: Path | None = None
    out: Path | None = None
    fmt: str = "csv"
    bootstrap: BootstrapConfig = field(default_factory=BootstrapConfig)
    tenors: tuple = SUPPORTED_TENORS

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        conv = ins.LegConventions(calendar=get_calendar(getattr(args, "calendar", None)))
        boot = BootstrapConfig(
            solver_df_tolerance=getattr(args, "tolerance", 1e-12),
            max_iterations=getattr(args, "max_iter", 100),
            spot_lag=getattr(args, "spot_lag", 2),
            conventions=conv,
        )
        anchor = getattr(args, "anchor", None)
        tenors = getattr(args, "tenors", None)
        return cls(
            anchor=parse_date(anchor) if anchor else None,
            quotes=getattr(args, "quotes", None),
            curves=getattr(args, "curves", None),
            trade=getattr(args, "trade", None),
            out=getattr(args, "out", None),
            fmt=getattr(args, "format", "csv"),
            bootstrap=boot,
            tenors=tuple(Tenor.parse(t) for t in tenors.split(",")) if tenors else SUPPORTED_TENORS,
        )


def _num(x: float) -> str:
    return "nan" if isinstance(x, float) and math.isnan(x) else repr(float(x))


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _emit(text: str, cfg: RunConfig):
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_bootstrap(args, cfg: RunConfig) -> int:
    quotes = mio.parse_quotes(cfg.quotes)
    calib = [q for q in quotes if q.kind is not QuoteKind.BASIS_SWAP]
    curves = bootstrap_curves(cfg.anchor, calib, cfg.bootstrap)
    if args.residuals:
        res = reprice_residuals(curves, quotes, cfg.bootstrap)
        worst = max((abs(r) for r in res), default=0.0)
        sys.stderr.write(f"max |residual| = {worst:.3e} over {len(res)} quotes\n")
    _emit(mio.dumps_curves(curves), cfg)
    return 0


def cmd_price(args, cfg: RunConfig) -> int:
    curves = mio.load_curves(cfg.curves)
    trade = mio.load_trade(cfg.trade, curves, cfg.bootstrap)
    pv = ins.price_trade(trade, curves)
    if isinstance(trade, ins.VanillaSwap):
        rate = ins.par_rate(trade, curves)
    elif isinstance(trade, ins.OIS):
        rate = ins.ois_rate(trade.fixed.schedule, curves.discount)
    elif isinstance(trade, ins.BasisSwap):
        rate = ins.basis_spread(trade, curves)
    else:
        rate = trade.rate
    kind = type(trade).__name__
    if cfg.fmt == "json":
        _emit(json.dumps({"type": kind, "pv": pv, "par_rate": rate}) + "\n", cfg)
    else:
        _emit(_csv([["type", "pv", "par_rate"], [kind, _num(pv), _num(rate)]]), cfg)
    return 0


def _pairs(text):
    if not text:
        return an.DEFAULT_PAIRS
    out = []
    for item in text.split(","):
        x, _, y = item.partition("/")
        out.append((Tenor.parse(x), Tenor.parse(y)))
    return tuple(out)


def cmd_basis(args, cfg: RunConfig) -> int:
    curves = mio.load_curves(cfg.curves)
    mats = tuple(Tenor.parse(m) for m in args.maturities.split(",")) if args.maturities \
        else an.DEFAULT_MATURITIES
    surf = an.basis_term_structure(curves, _pairs(args.pairs), mats, cfg.bootstrap.spot_lag,
                                   cfg.bootstrap.conventions)
    rows = [["maturity"] + [f"{p} [bp]" for p in surf.pair_labels]]
    rows += [[str(m)] + [_num(v) for v in surf.values[i]] for i, m in enumerate(surf.maturities)]
    _emit(_csv(rows), cfg)
    return 0


def cmd_spectroscopy(args, cfg: RunConfig) -> int:
    curves = mio.load_curves(cfg.curves)
    maturity = parse_date(args.maturity) if "-" in args.maturity else Tenor.parse(args.maturity)
    rep = an.spectroscopy_report(curves, maturity, cfg.tenors, args.nominal, cfg.bootstrap.spot_lag,
                                 cfg.bootstrap.conventions)
    rows = [["tenor", "coupons", "pv", "gap_pv", "gap_rate"]]
    rows += [[str(r.tenor), r.coupons, _num(r.pv), _num(r.gap_pv), _num(r.gap_rate)] for r in rep.rows]
    _emit(_csv(rows), cfg)
    return 0


def cmd_delta(args, cfg: RunConfig) -> int:
    quotes = mio.parse_quotes(cfg.quotes)
    calib = [q for q in quotes if q.kind is not QuoteKind.BASIS_SWAP]
    curves = bootstrap_curves(cfg.anchor, calib, cfg.bootstrap)
    trade = mio.load_trade(cfg.trade, curves, cfg.bootstrap)
    lad = an.delta_ladder(trade, curves, calib, args.bump, cfg.bootstrap)
    rows = [["scope", "curve", "kind", "tenor", "maturity", "delta"]]
    for q, d in lad.entries:
        mat = q.maturity.isoformat() if hasattr(q.maturity, "isoformat") else str(q.maturity)
        rows.append(["quote", q.curve_id, str(q.kind), q.tenor_label, mat, _num(d)])
    for cid, d in lad.by_curve.items():
        rows.append(["curve", cid, "", "", "", _num(d)])
    rows.append(["all", "", "", "", "", _num(lad.all_quotes)])
    _emit(_csv(rows), cfg)
    return 0


def cmd_corr(args, cfg: RunConfig) -> int:
    a = mio.parse_fixings(args.a)
    b = mio.parse_fixings(args.b)
    out = an.rolling_correlation(a, b, args.window, diff=args.diff)
    _emit(mio.format_series(out, "correlation"), cfg)
    return 0


def cmd_mc(args, cfg: RunConfig) -> int:
    res = an.simulate_fra_martingale(an.FraDynamicsConfig(args.f0, args.sigma, args.horizon,
                                                          args.paths, args.seed))
    _emit(_csv([["f0", "sigma", "horizon", "paths", "seed", "mean", "stderr"],
                [_num(args.f0), _num(args.sigma), _num(args.horizon), args.paths, args.seed,
                 _num(res.mean), _num(res.stderr)]]), cfg)
    return 0


def cmd_zeeman(args, cfg: RunConfig) -> int:
    element = args.element.upper()
    if element not in zm.ELEMENTS:
        raise UsageError(f"unsupported element {args.element!r} (available: Na)")
    d1, d2 = zm.ELEMENTS[element](args.field, physical=args.physical)
    rows = [["transition", "mj_lower", "mj_upper", "delta_mj", "observable",
             "wavenumber_shift_per_m", "wavelength_nm"]]
    for name, lines in (("D1", d1), ("D2", d2)):
        for ln in lines:
            rows.append([name, _num(ln.lower.m_j), _num(ln.upper.m_j), _num(ln.delta_mj),
                         str(ln.observable).lower(), _num(ln.wavenumber_shift), _num(ln.wavelength * 1e9)])
    _emit(_csv(rows), cfg)
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_common(p, bootstrap=False, curves=False):
    p.add_argument("--out", type=Path, help="write output here instead of stdout")
    if bootstrap:
        p.add_argument("--spot-lag", type=int, default=2, help="business days from anchor to spot (default 2)")
        p.add_argument("--tolerance", type=float, default=1e-12, help="solver tolerance on pillar factors")
        p.add_argument("--max-iter", type=int, default=100, help="solver iteration cap")
        p.add_argument("--calendar", default="weekends", help="'weekends' or a holiday file (one ISO date per line)")
    if curves:
        p.add_argument("--curves", type=Path, required=True, help="curve-set JSON written by 'bootstrap'")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="multicurve", description="Multi-curve bootstrapping and tenor-basis analytics.")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("bootstrap", help="calibrate curves from a quote CSV",
                       description="Quote CSV header: curve,kind,tenor,start,maturity,quote. "
                                   "Writes curve-set JSON.")
    p.add_argument("--anchor", required=True, help="valuation date YYYY-MM-DD")
    p.add_argument("--quotes", type=Path, required=True)
    p.add_argument("--residuals", action="store_true", help="report max repricing residual on stderr")
    _add_common(p, bootstrap=True)
    p.set_defaults(func=cmd_bootstrap)

    p = sub.add_parser("price", help="price a trade JSON on curves",
                       description='Trade JSON: {"type": swap|deposit|basis_swap|ois, "nominal", "start", '
                                   '"maturity", "fixed_rate", "float_tenor", "tenor_x", "tenor_y", "side"}.')
    p.add_argument("--trade", type=Path, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_common(p, bootstrap=True, curves=True)
    p.set_defaults(func=cmd_price)

    p = sub.add_parser("basis", help="basis-spread term structure (bp)",
                       description="CSV matrix of R_x - R_y in basis points; rows maturities, columns x/y pairs.")
    p.add_argument("--pairs", help="comma list like 1D/3M,3M/6M (default: all 10 pairs)")
    p.add_argument("--maturities", help="comma list of tenors (default 1Y..30Y)")
    _add_common(p, bootstrap=True, curves=True)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("spectroscopy", help="equal-maturity floating legs across tenors",
                       description="CSV columns: tenor,coupons,pv,gap_pv,gap_rate (gaps vs the 1D leg).")
    p.add_argument("--maturity", required=True, help="tenor (1Y) or date")
    p.add_argument("--nominal", type=float, default=1.0)
    p.add_argument("--tenors", help="comma list (default 1D,1M,3M,6M,12M)")
    _add_common(p, bootstrap=True, curves=True)
    p.set_defaults(func=cmd_spectroscopy)

    p = sub.add_parser("delta", help="bump-and-rebootstrap delta ladder",
                       description="CSV columns: scope,curve,kind,tenor,maturity,delta.")
    p.add_argument("--anchor", required=True)
    p.add_argument("--quotes", type=Path, required=True)
    p.add_argument("--trade", type=Path, required=True)
    p.add_argument("--bump", type=float, default=1e-4)
    _add_common(p, bootstrap=True)
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("corr", help="rolling Pearson correlation of two fixing CSVs",
                       description="Inputs have header date,rate; output date,correlation (nan marks flat windows).")
    p.add_argument("--a", type=Path, required=True)
    p.add_argument("--b", type=Path, required=True)
    p.add_argument("--window", type=int, default=252)
    p.add_argument("--diff", action="store_true", help="correlate daily changes instead of levels")
    _add_common(p)
    p.set_defaults(func=cmd_corr)

    p = sub.add_parser("mc-martingale", help="Monte Carlo check that a lognormal FRA rate is a martingale")
    p.add_argument("--f0", type=float, default=0.03)
    p.add_argument("--sigma", type=float, default=0.2)
    p.add_argument("--horizon", type=float, default=1.0)
    p.add_argument("--paths", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=20111031)
    _add_common(p)
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("zeeman", help="sodium D1/D2 Zeeman multiplets",
                       description="CSV columns: transition,mj_lower,mj_upper,delta_mj,observable,"
                                   "wavenumber_shift_per_m,wavelength_nm.")
    p.add_argument("--field", type=float, required=True, help="magnetic field in tesla")
    p.add_argument("--element", default="Na")
    p.add_argument("--physical", action="store_true", help="use h instead of hbar in the wavenumber shift")
    _add_common(p)
    p.set_defaults(func=cmd_zeeman)
    return parser


def _one_line(msg) -> str:
    return " ".join(str(msg).split())


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = RunConfig.from_args(args)
        return args.func(args, cfg)
    except UsageError as exc:
        sys.stderr.write(f"error: {_one_line(exc)}\n")
        return 2
    except (MulticurveError, OSError) as exc:
        sys.stderr.write(f"error: {_one_line(exc)}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
