"""Hadamard finite part of ``int_0^inf f(x)/x^(2m) dx`` for even ``f``.

Taylor subtraction around the origin::

    FP = sum_{j even, j <= 2m-2} c_j a^(j-2m+1)/(j-2m+1)
         + int_0^a [f(x) - T_{2m-1}(x)] / x^(2m) dx
         + int_a^inf f(x) / x^(2m) dx

with ``c_j = f^(j)(0)/j!`` and ``T_{2m-1}`` the Taylor polynomial of degree
``2m-1``. The value does not depend on the split point ``a``.
"""

from dataclasses import dataclass, field
import enum
import math

import numpy as np

from .errors import InvalidParam, OrderTooHigh, ToleranceNotMet
from .expansion import PI
from .quadrature import _GW, _GX, power_tail_integral
from .special import bessel_j

DEFAULT_SPLIT = 1.0
DEFAULT_TOL = 1e-10


class Method(enum.Enum):
    TAYLOR_SUBTRACTION = "TaylorSubtraction"
    CLOSED_FORM_MELLIN = "ClosedFormMellin"


@dataclass(frozen=True)
class FinitePartResult:
    value: float
    m: int
    method: Method
    split_point: float
    tail_error_estimate: float
    core_error_estimate: float = 0.0
    divergent_coefficients: list = field(default_factory=list)

    def to_json(self):
        return {
            "value": self.value,
            "m": self.m,
            "method": self.method.value,
            "split_point": self.split_point,
            "tail_error_estimate": self.tail_error_estimate,
            "divergent_coefficients": self.divergent_coefficients,
        }


def taylor_coefficients(f, order):
    """``[f^(j)(0)/j! for j in 0..order]``."""
    if order > f.series_order:
        raise OrderTooHigh(f"needs Taylor coefficients up to order {order}, series_order is {f.series_order}")
    return [f.derivative_at_zero(j) / math.factorial(j) for j in range(order + 1)]


def log_coefficient(f, m):
    """Taylor coefficient of ``x^(2m-1)``: the one that would produce ``ln(eps)``."""
    return f.derivative_at_zero(2 * m - 1) / math.factorial(2 * m - 1)


def divergent_terms(f, m):
    """Terms of ``int_eps^inf f/x^(2m)`` that blow up as ``eps -> 0``.

    Each entry ``{"power": p, "coefficient": c}`` stands for ``c * eps^p``
    with ``p < 0``; these are exactly what the finite part discards.
    """
    c = taylor_coefficients(f, 2 * m - 1)
    out = []
    for j in range(0, 2 * m - 1, 2):
        out.append({"derivative_order": j, "power": j - 2 * m + 1, "coefficient": c[j] / (2 * m - 1 - j)})
    return out


def _core_integrand(f, m, a):
    """``[f(x) - T_{2m-1}(x)] / x^(2m)`` on ``[0, a]`` as a vectorized callable.

    Near the origin the difference is summed from the Taylor series of the
    remainder, which avoids cancelling ``f`` against its Taylor polynomial.
    """
    order = f.series_order
    coeffs = taylor_coefficients(f, order)
    remainder = np.array(coeffs[2 * m :])
    low = np.array(coeffs[: 2 * m])
    tau = f.tau
    x_switch = a if tau == 0 else min(a, 2.0 / tau)

    def series(x):
        out = np.zeros_like(x)
        for c in remainder[::-1]:
            out = out * x + c
        return out

    def direct(x):
        t = np.zeros_like(x)
        for c in low[::-1]:
            t = t * x + c
        return (f(x) - t) / x ** (2 * m)

    def g(x):
        x = np.asarray(x, dtype=float)
        use_series = x <= x_switch
        safe = np.where(use_series, 1.0, x)
        return np.where(use_series, series(x), direct(safe))

    return g


def _gauss(g, a, b):
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return half * float(g(mid + half * _GX) @ _GW)


def adaptive_gauss(g, a, b, tol, max_depth=40):
    """Adaptive bisection with 16-point Gauss-Legendre on every panel.

    Returns ``(value, error_estimate)``.
    """
    total = 0.0
    err = 0.0
    stack = [(a, b, _gauss(g, a, b), tol, 0)]
    while stack:
        lo, hi, whole, ptol, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _gauss(g, lo, mid)
        right = _gauss(g, mid, hi)
        diff = abs(left + right - whole)
        if diff <= ptol or depth >= max_depth:
            total += left + right
            err += diff
        else:
            stack.append((lo, mid, left, ptol / 2, depth + 1))
            stack.append((mid, hi, right, ptol / 2, depth + 1))
    return total, err


def finite_part_integral(f, m, a=DEFAULT_SPLIT, tol=DEFAULT_TOL, max_segments=None):
    """Finite part of ``int_0^inf f(x)/x^(2m) dx`` by Taylor subtraction at ``a``.

    The core and the tail are each resolved to ``tol/2``; a tail that cannot
    be brought under ``tol/2`` raises :class:`ToleranceNotMet`.
    """
    if not isinstance(m, int) or m < 1:
        raise InvalidParam(f"m must be an integer >= 1, got {m!r}")
    if not a > 0:
        raise InvalidParam(f"split point must be > 0, got {a}")
    if not tol > 0:
        raise InvalidParam(f"tol must be > 0, got {tol}")
    if 2 * m > f.series_order:
        raise OrderTooHigh(f"m={m} needs Taylor coefficients beyond series_order {f.series_order}")

    c = taylor_coefficients(f, 2 * m - 1)
    # f is even, so the x^(2m-1) coefficient (the log-producing one) is exactly zero
    assert log_coefficient(f, m) == 0.0
    monomials = math.fsum(c[j] * a ** (j - 2 * m + 1) / (j - 2 * m + 1) for j in range(0, 2 * m - 1, 2))

    core, core_err = adaptive_gauss(_core_integrand(f, m, a), 0.0, a, tol / 2)
    tail = power_tail_integral(f, 2 * m, a, tol / 2, max_segments)
    result = FinitePartResult(
        value=monomials + core + tail.value,
        m=m,
        method=Method.TAYLOR_SUBTRACTION,
        split_point=float(a),
        tail_error_estimate=tail.error_estimate,
        core_error_estimate=core_err,
        divergent_coefficients=divergent_terms(f, m),
    )
    if tail.error_estimate > tol / 2:
        raise ToleranceNotMet(f"tail error estimate {tail.error_estimate:.3g} exceeds {tol / 2:.3g}", result)
    return result


def finite_part_paper_example_closed_form(tau, sigma):
    """``FP int_0^inf sinc(sqrt(tau^2 x^2 + sigma^2)) / x^4 dx = pi tau^3 J_2(sigma) / (6 sigma^2)``.

    Only valid for ``m = 2`` and the builtin ``paper-example`` function.
    """
    if not tau > 0 or not sigma > 0:
        raise InvalidParam(f"tau and sigma must be > 0, got tau={tau}, sigma={sigma}")
    value = PI * tau**3 * bessel_j(2, sigma) / (6.0 * sigma**2)
    return FinitePartResult(value, 2, Method.CLOSED_FORM_MELLIN, math.nan, 0.0)
