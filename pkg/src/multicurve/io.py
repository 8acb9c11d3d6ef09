"""File formats: quote CSV, fixing CSV, curve / curve-set JSON, trade JSON."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import IO, Iterable, Sequence

from . import instruments as ins
from .analytics import FixingSeries
from .bootstrap import SPOT, BootstrapConfig, DEFAULT_CONFIG, MarketQuote, QuoteKind
from .curves import CurveSet, DiscountCurve, ForwardCurve, curve_from_pillars
from .errors import DomainError, MulticurveError, ParseError
from .temporal import Date, Tenor, add_tenor, adjust, parse_date, spot_date

QUOTE_HEADER = ("curve", "kind", "tenor", "start", "maturity", "quote")
FIXING_HEADER = ("date", "rate")


def _read_text(source) -> tuple:
    if isinstance(source, (str, Path)):
        return Path(source).read_text(), str(source)
    return source.read(), getattr(source, "name", None)


def parse_float(text: str, what: str = "value") -> float:
    try:
        value = float(text)
    except ValueError:
        raise DomainError(f"{what} {text!r} is not a decimal number") from None
    if not math.isfinite(value):
        raise DomainError(f"{what} {text!r} is not finite")
    return value


# ---------------------------------------------------------------------------
# Quotes
# ---------------------------------------------------------------------------


def _parse_quote_row(row: dict, lineno: int, source) -> MarketQuote:
    def field(name, fn):
        try:
            return fn(row[name].strip())
        except (DomainError, ValueError) as exc:
            raise ParseError(str(exc), line=lineno, column=name, source=source) from None

    curve = field("curve", lambda s: s if s else _raise("empty curve id"))
    kind = field("kind", QuoteKind.parse)

    def tenors(text):
        if kind is QuoteKind.BASIS_SWAP:
            parts = text.split("/")
            if len(parts) != 2:
                raise DomainError(f"basis-swap tenor must look like 6M/3M, got {text!r}")
            return Tenor.parse(parts[0]), Tenor.parse(parts[1])
        return Tenor.parse(text), None

    tenor, tenor_y = field("tenor", tenors)
    start = field("start", lambda s: SPOT if s.upper() == SPOT else parse_date(s))
    maturity = field("maturity", lambda s: parse_date(s) if "-" in s else Tenor.parse(s))
    quote = field("quote", lambda s: parse_float(s, "quote"))
    try:
        return MarketQuote(curve, kind, tenor, start, maturity, quote, tenor_y, line=lineno)
    except DomainError as exc:
        raise ParseError(str(exc), line=lineno, source=source) from None


def _raise(msg):
    raise DomainError(msg)


def _maturity_key(q: MarketQuote):
    if isinstance(q.maturity, Date):
        return q.maturity
    if q.start == SPOT:
        return (SPOT, q.maturity)
    return add_tenor(q.start, q.maturity)


def parse_quotes(source) -> list:
    """Read a quote CSV (path or text stream).

    Errors carry the 1-based line number and the offending column.
    """
    text, name = _read_text(source)
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("missing header", line=1, source=name) from None
    if tuple(h.strip() for h in header) != QUOTE_HEADER:
        raise ParseError(f"header must be exactly {','.join(QUOTE_HEADER)}", line=1, source=name)
    quotes, seen = [], {}
    for row in reader:
        lineno = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(QUOTE_HEADER):
            raise ParseError(f"expected {len(QUOTE_HEADER)} columns, got {len(row)}", line=lineno, source=name)
        q = _parse_quote_row(dict(zip(QUOTE_HEADER, row)), lineno, name)
        key = (q.curve_id, q.tenor_label, _maturity_key(q))
        if key in seen:
            raise ParseError(f"duplicate maturity for curve {q.curve_id!r} (first on line {seen[key]})",
                             line=lineno, column="maturity", source=name)
        seen[key] = lineno
        quotes.append(q)
    return quotes


def quotes_by_curve(quotes: Iterable[MarketQuote]) -> dict:
    out: dict = {}
    for q in quotes:
        out.setdefault(q.curve_id, []).append(q)
    return out


def format_quotes(quotes: Sequence[MarketQuote]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(QUOTE_HEADER)
    for q in quotes:
        start = SPOT if q.start == SPOT else q.start.isoformat()
        mat = q.maturity.isoformat() if isinstance(q.maturity, Date) else str(q.maturity)
        w.writerow([q.curve_id, str(q.kind), q.tenor_label, start, mat, repr(float(q.quote))])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Fixings
# ---------------------------------------------------------------------------


def parse_fixings(source) -> FixingSeries:
    text, name = _read_text(source)
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("missing header", line=1, source=name) from None
    if tuple(h.strip() for h in header) != FIXING_HEADER:
        raise ParseError("header must be exactly date,rate", line=1, source=name)
    dates, values = [], []
    for row in reader:
        lineno = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 2:
            raise ParseError(f"expected 2 columns, got {len(row)}", line=lineno, source=name)
        try:
            d = parse_date(row[0])
        except DomainError as exc:
            raise ParseError(str(exc), line=lineno, column="date", source=name) from None
        try:
            v = parse_float(row[1].strip(), "rate")
        except DomainError as exc:
            raise ParseError(str(exc), line=lineno, column="rate", source=name) from None
        if dates and not d > dates[-1]:
            raise ParseError(f"dates must be strictly increasing ({d} after {dates[-1]})",
                             line=lineno, column="date", source=name)
        dates.append(d)
        values.append(v)
    return FixingSeries(tuple(dates), values)


def format_series(series: FixingSeries, value_name: str = "rate") -> str:
    lines = [f"date,{value_name}"]
    lines += [f"{d.isoformat()},{'nan' if math.isnan(v) else repr(float(v))}"
              for d, v in zip(series.dates, series.values)]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Curves
# ---------------------------------------------------------------------------


def curve_to_dict(curve: DiscountCurve) -> dict:
    doc = {"anchor": curve.anchor.isoformat(), "kind": curve.kind}
    if isinstance(curve, ForwardCurve):
        doc["tenor"] = str(curve.tenor)
    doc["interpolation"] = curve.interpolation
    doc["pillars"] = [[d.isoformat(), float(v)] for d, v in curve.pillars]
    return doc


def curve_from_dict(doc: dict) -> DiscountCurve:
    try:
        anchor = parse_date(doc["anchor"])
        kind = doc.get("kind", "discount")
        pillars = [(parse_date(d), float(v)) for d, v in doc["pillars"]]
        interpolation = doc.get("interpolation", "loglinear_df")
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed curve document: {exc!r}") from None
    if kind == "discount":
        return curve_from_pillars(anchor, pillars, interpolation)
    if kind == "forward":
        if "tenor" not in doc:
            raise ParseError("forward curve document needs a tenor")
        return curve_from_pillars(anchor, pillars, interpolation, Tenor.parse(doc["tenor"]))
    raise ParseError(f"unknown curve kind {kind!r}")


def curveset_to_dict(curves: CurveSet) -> dict:
    docs = [curve_to_dict(curves.discount)]
    docs += [curve_to_dict(curves.forwards[t]) for t in sorted(curves.forwards)]
    return {"anchor": curves.anchor.isoformat(), "curves": docs}


def curveset_from_dict(doc: dict) -> CurveSet:
    if "curves" not in doc:
        curve = curve_from_dict(doc)
        if isinstance(curve, ForwardCurve):
            raise ParseError("a curve set needs a discount curve")
        return CurveSet(curve)
    curves = [curve_from_dict(d) for d in doc["curves"]]
    discounts = [c for c in curves if not isinstance(c, ForwardCurve)]
    if len(discounts) != 1:
        raise ParseError(f"a curve set needs exactly one discount curve, got {len(discounts)}")
    return CurveSet(discounts[0], {c.tenor: c for c in curves if isinstance(c, ForwardCurve)})


def dumps_curves(curves) -> str:
    doc = curveset_to_dict(curves) if isinstance(curves, CurveSet) else curve_to_dict(curves)
    return json.dumps(doc, indent=2) + "\n"


def load_curves(source) -> CurveSet:
    text, name = _read_text(source)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, source=name) from None
    try:
        return curveset_from_dict(doc)
    except ParseError as exc:
        raise ParseError(str(exc), source=name) from None


# ---------------------------------------------------------------------------
# Trades
# ---------------------------------------------------------------------------

TRADE_TYPES = ("swap", "deposit", "basis_swap", "ois")


def trade_from_dict(doc: dict, curves: CurveSet, cfg: BootstrapConfig = DEFAULT_CONFIG):
    """Build a trade valued at ``curves.anchor``.

    ``start`` defaults to SPOT; ``maturity`` is a date or a tenor from start.
    A swap or OIS without ``fixed_rate`` is struck at par on ``curves``.
    """
    kind = str(doc.get("type", "")).lower()
    if kind not in TRADE_TYPES:
        raise ParseError(f"trade type must be one of {', '.join(TRADE_TYPES)}, got {doc.get('type')!r}")
    conv = cfg.conventions
    anchor = curves.anchor
    try:
        nominal = float(doc.get("nominal", 1.0))
        start_raw = doc.get("start", SPOT)
        start = spot_date(anchor, cfg.spot_lag, conv.calendar) if str(start_raw).upper() == SPOT \
            else parse_date(start_raw)
        mat_raw = str(doc["maturity"])
        if "-" in mat_raw:
            end = parse_date(mat_raw)
        else:
            end = adjust(add_tenor(start, Tenor.parse(mat_raw)), conv.bdc, conv.calendar)
        side = ins.parse_side(doc.get("side", "payer"))
        rate = doc.get("fixed_rate")
        if kind == "deposit":
            if rate is None:
                raise DomainError("deposit needs fixed_rate (the known fixing)")
            return ins.Deposit(nominal, start, end, float(rate), conv.float_day_count)
        if kind == "swap":
            tenor = Tenor.parse(doc["float_tenor"])
            if rate is None:
                rate = ins.par_rate(ins.make_swap(start, end, tenor, 0.0, conv=conv), curves)
            return ins.make_swap(start, end, tenor, float(rate), nominal, side, conv)
        if kind == "ois":
            if rate is None:
                rate = ins.ois_rate(ins.fixed_schedule(start, end, conv), curves.discount)
            return ins.make_ois(start, end, float(rate), nominal, side, conv)
        return ins.make_basis_swap(start, end, doc["tenor_x"], doc["tenor_y"], nominal, conv)
    except KeyError as exc:
        raise ParseError(f"trade is missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, MulticurveError):
            raise
        raise ParseError(f"malformed trade: {exc}") from None


def load_trade(source, curves: CurveSet, cfg: BootstrapConfig = DEFAULT_CONFIG):
    text, name = _read_text(source)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, source=name) from None
    if not isinstance(doc, dict):
        raise ParseError("trade document must be a JSON object", source=name)
    try:
        return trade_from_dict(doc, curves, cfg)
    except ParseError as exc:
        raise ParseError(str(exc), source=name) from None
