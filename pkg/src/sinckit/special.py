"""Integer-order Bessel functions and exact factorial ratios.

Only the ascending series is implemented; it is accurate for the O(1)
arguments that appear in the finite-part closed form.
"""

from dataclasses import dataclass
from fractions import Fraction
import math

from .errors import InvalidParam, NotConverged, OutOfRange, OutOfRegime

# Exact rationals throughout the package are stdlib fractions: always reduced,
# positive denominator, arbitrary-precision numerator and denominator.
Rational = Fraction

BESSEL_MAX_ARG = 50.0
BESSEL_MAX_ORDER = 20
FACTORIAL_MAX = 200


@dataclass(frozen=True)
class BesselSeriesConfig:
    max_terms: int = 60
    rel_tol: float = 1e-16

    def __post_init__(self):
        if self.max_terms < 10:
            raise InvalidParam("max_terms must be at least 10")


def bessel_j(nu, x, cfg=BesselSeriesConfig()):
    """Bessel function of the first kind J_nu(x) for integer ``nu >= 0``.

    Sums ``sum_p (-1)^p (x/2)^(2p+nu) / (p! (p+nu)!)`` until a term drops
    below ``cfg.rel_tol`` relative to the running sum, once the terms have
    started to shrink. Raises :class:`NotConverged` (carrying the partial sum)
    if ``cfg.max_terms`` terms are not enough, which happens for ``|x|``
    beyond roughly 35 at the default budget.
    """
    if not isinstance(nu, int) or nu < 0 or nu > BESSEL_MAX_ORDER:
        raise OutOfRange(f"order must be an integer in [0, {BESSEL_MAX_ORDER}], got {nu!r}")
    x = float(x)
    if abs(x) > BESSEL_MAX_ARG:
        raise OutOfRegime(f"|x| = {abs(x)} exceeds the series regime {BESSEL_MAX_ARG}")
    if x == 0.0:
        return 1.0 if nu == 0 else 0.0

    # exact rational accumulation: the alternating terms cancel heavily once |x| grows
    half = Fraction(x) / 2
    q = -half * half
    term = half**nu / math.factorial(nu)
    total = term
    for p in range(1, cfg.max_terms):
        prev = abs(term)
        term *= q / (p * (p + nu))
        total += term
        if abs(term) <= prev and abs(term) <= cfg.rel_tol * abs(total):
            return float(total)
    raise NotConverged(f"J_{nu}({x}) series not converged after {cfg.max_terms} terms; raise max_terms", float(total))


def exact_factorial_ratio(p, q):
    """Return ``p!/q!`` as a reduced :class:`Rational`."""
    for v in (p, q):
        if not isinstance(v, int) or v < 0 or v > FACTORIAL_MAX:
            raise OutOfRange(f"factorial arguments must lie in [0, {FACTORIAL_MAX}], got {v!r}")
    return Fraction(math.factorial(p), math.factorial(q))
