"""Multi-curve rate toolkit: OIS discounting, tenor forward curves, basis analytics."""

from ._kernels import BACKEND
from .analytics import (BasisSurface, DeltaLadder, FixingSeries, FraDynamicsConfig, SpectroscopyReport,
                        basis_term_structure, delta_ladder, rolling_correlation, simulate_fra_martingale,
                        spectroscopy_report, synthetic_curveset)
from .bootstrap import (BootstrapConfig, MarketQuote, QuoteKind, bootstrap_curves, bootstrap_discount_curve,
                        bootstrap_forward_curve, reprice_residuals)
from .curves import (CurveSet, DiscountCurve, ForwardCurve, curve_from_pillars, discount_factor,
                     forward_rate, zero_rate)
from .errors import MulticurveError
from .temporal import DayCount, Tenor, add_tenor, adjust, generate_schedule, year_fraction

__version__ = "0.1.0"
