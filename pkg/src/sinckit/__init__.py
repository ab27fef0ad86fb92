"""Closed-form evaluation of sinc transforms of even entire functions."""

__version__ = "0.1.0"

from .errors import (
    BelowThreshold,
    InvalidParam,
    MissingFinitePart,
    NotConverged,
    OrderTooHigh,
    OutOfRange,
    OutOfRegime,
    SincKitError,
    ToleranceNotMet,
    Unsupported,
)
from .functions import EvenEntireFunction, Kind, derivative_at_zero, eval_at, exponential_type, make_builtin, validate_even
from .special import BesselSeriesConfig, Rational, bessel_j, exact_factorial_ratio
from .expansion import (
    Parity,
    TerminatingExpansion,
    build_expansion,
    coefficient_C,
    coefficient_D,
    evaluate_expansion,
    inner_sum_even,
    inner_sum_odd,
    sin_power_identity_residual,
    threshold,
)
from .finite_part import FinitePartResult, Method, finite_part_integral, finite_part_paper_example_closed_form
from .quadrature import QuadratureResult, sinc_transform_oracle, tail_bound
