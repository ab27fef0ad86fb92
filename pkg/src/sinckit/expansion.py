"""Terminating closed forms of the sinc transform.

For an even entire function ``f`` of exponential type ``tau``::

    n = 2m:    I(lam) = w_m * FP int_0^inf f/x^(2m) dx
                        - pi (-1)^m (2m)!/2^(2m) * sum_{l<m} C_{l,m} lam^(2l+1),  lam > tau/2
    n = 2m+1:  I(lam) = (-1)^m pi (2m+1)!/2^(2m+1) * sum_{l<=m} D_{l,m} lam^(2l),  lam > tau

with ``w_m = (2m)!/(2^(2m) (m!)^2)``. Every combinatorial factor is exact;
floats enter only through ``f^(j)(0)`` and pi.
"""

from dataclasses import dataclass
import cmath
import enum
from fractions import Fraction
import math

from .errors import BelowThreshold, InvalidParam, MissingFinitePart, OrderTooHigh, OutOfRange

PI = float("3.14159265358979323846264338328")
MAX_N = 40


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"


def split_n(n):
    """Return ``(m, parity)`` with ``n = 2m`` or ``n = 2m + 1``."""
    if not isinstance(n, int) or n < 1:
        raise OutOfRange(f"sinc power must be a positive integer, got {n!r}")
    return (n // 2, Parity.EVEN) if n % 2 == 0 else ((n - 1) // 2, Parity.ODD)


def _check_n(n):
    if not isinstance(n, int) or not 1 <= n <= MAX_N:
        raise OutOfRange(f"sinc power must be an integer in [1, {MAX_N}], got {n!r}")


def inner_sum_even(l, m, reverse=False):
    """sum_{k=0}^{m-1} (-1)^k (m-k)^(2l+1) / (k! (2m-k)!), exactly."""
    if m < 1 or not 0 <= l <= m - 1:
        raise OutOfRange(f"need m >= 1 and 0 <= l <= m-1, got l={l}, m={m}")
    ks = range(m - 1, -1, -1) if reverse else range(m)
    total = Fraction(0)
    for k in ks:
        total += Fraction((-1) ** k * (m - k) ** (2 * l + 1), math.factorial(k) * math.factorial(2 * m - k))
    return total


def inner_sum_odd(l, m, reverse=False):
    """sum_{k=0}^{m} (-1)^k (2m-2k+1)^(2l) / (k! (2m+1-k)!), exactly."""
    if m < 0 or not 0 <= l <= m:
        raise OutOfRange(f"need m >= 0 and 0 <= l <= m, got l={l}, m={m}")
    ks = range(m, -1, -1) if reverse else range(m + 1)
    total = Fraction(0)
    for k in ks:
        total += Fraction((-1) ** k * (2 * m - 2 * k + 1) ** (2 * l), math.factorial(k) * math.factorial(2 * m + 1 - k))
    return total


def prefactor_C(l, m):
    """Exact rational part of C_{l,m}, i.e. C_{l,m} / f^(2m-2l-2)(0)."""
    lead = Fraction((-1) ** l * 2 ** (2 * l + 1), math.factorial(2 * l + 1) * math.factorial(2 * m - 2 * l - 2))
    return lead * inner_sum_even(l, m)


def prefactor_D(l, m):
    """Exact rational part of D_{l,m}, i.e. D_{l,m} / f^(2m-2l)(0)."""
    lead = Fraction((-1) ** l, math.factorial(2 * l) * math.factorial(2 * m - 2 * l))
    return lead * inner_sum_odd(l, m)


def _check_order(f, j):
    if j > f.series_order:
        raise OrderTooHigh(f"needs f^({j})(0) but series_order is {f.series_order}")


def coefficient_C(l, m, f):
    pre = prefactor_C(l, m)
    j = 2 * m - 2 * l - 2
    _check_order(f, j)
    return float(pre) * f.derivative_at_zero(j)


def coefficient_D(l, m, f):
    pre = prefactor_D(l, m)
    j = 2 * m - 2 * l
    _check_order(f, j)
    return float(pre) * f.derivative_at_zero(j)


def outer_factor(n):
    """Exact rational multiplying pi in front of the polynomial sum.

    For even n this already includes the leading minus sign, so that the
    coefficient of ``lam^p`` is ``pi * outer_factor(n) * C`` (or ``D``).
    """
    m, parity = split_n(n)
    if parity is Parity.EVEN:
        return Fraction(-((-1) ** m) * math.factorial(2 * m), 2 ** (2 * m))
    return Fraction((-1) ** m * math.factorial(2 * m + 1), 2 ** (2 * m + 1))


def finite_part_weight(n):
    m, parity = split_n(n)
    if parity is Parity.ODD:
        return Fraction(0)
    return Fraction(math.factorial(2 * m), 2 ** (2 * m) * math.factorial(m) ** 2)


def threshold(n, tau):
    """Lower bound on lambda above which the closed form is exact."""
    if tau < 0:
        raise InvalidParam(f"tau must be >= 0, got {tau}")
    _, parity = split_n(n)
    return tau / 2 if parity is Parity.EVEN else float(tau)


@dataclass(frozen=True)
class Term:
    power: int
    rational: Fraction  # exact part of the coefficient (excluding pi and the derivative)
    derivative_order: int
    coefficient: float


@dataclass(frozen=True)
class TerminatingExpansion:
    n: int
    m: int
    parity: Parity
    fp_weight: Fraction
    fp_value: float
    terms: tuple
    lambda_min: float

    @property
    def poly(self):
        return [(t.power, t.coefficient) for t in self.terms]

    def polynomial(self, lam):
        return sum(t.coefficient * lam**t.power for t in self.terms)

    def to_json(self):
        return {
            "n": self.n,
            "m": self.m,
            "parity": self.parity.value,
            "fp_weight": f"{self.fp_weight.numerator}/{self.fp_weight.denominator}",
            "fp_value": self.fp_value,
            "lambda_min": self.lambda_min,
            "terms": [{"power": t.power, "coefficient": t.coefficient} for t in self.terms],
        }


def coefficient_table(n):
    """Per-term exact structure of the expansion, independent of ``f``.

    Returns a list of ``(power, derivative_order, rational)`` where the
    polynomial coefficient of ``lam^power`` equals
    ``pi * rational * f^(derivative_order)(0)``.
    """
    _check_n(n)
    m, parity = split_n(n)
    outer = outer_factor(n)
    if parity is Parity.EVEN:
        return [(2 * l + 1, 2 * m - 2 * l - 2, outer * prefactor_C(l, m)) for l in range(m)]
    return [(2 * l, 2 * m - 2 * l, outer * prefactor_D(l, m)) for l in range(m + 1)]


def build_expansion(f, n, fp=None):
    """Assemble the terminating expansion of ``int_0^inf f sin^n(lam x)/x^n dx``.

    For even ``n`` the finite-part integral ``FP int_0^inf f/x^n dx`` is taken
    from ``fp`` (a :class:`~sinckit.finite_part.FinitePartResult` or a plain
    float). Pass ``fp="auto"`` to have it computed by Taylor subtraction.
    """
    _check_n(n)
    if n > f.series_order + 1:
        raise OrderTooHigh(f"n={n} needs derivatives beyond series_order {f.series_order}")
    m, parity = split_n(n)
    terms = []
    for power, j, rational in coefficient_table(n):
        terms.append(Term(power, rational, j, PI * float(rational) * f.derivative_at_zero(j)))

    fp_value = 0.0
    if parity is Parity.EVEN:
        if fp is None:
            raise MissingFinitePart(f"n={n} is even: the finite-part integral of f/x^{n} is required")
        if isinstance(fp, str) and fp == "auto":
            from .finite_part import finite_part_integral

            fp = finite_part_integral(f, m)
        fp_value = float(getattr(fp, "value", fp))
        if getattr(fp, "m", m) != m:
            raise InvalidParam(f"finite part was computed for m={fp.m}, expansion needs m={m}")
    return TerminatingExpansion(
        n=n,
        m=m,
        parity=parity,
        fp_weight=finite_part_weight(n),
        fp_value=fp_value,
        terms=tuple(terms),
        lambda_min=threshold(n, f.tau),
    )


def evaluate_expansion(e, lam, enforce=False):
    """Evaluate the closed form at ``lam``.

    With ``enforce`` set, lambda values at or below the threshold raise
    :class:`BelowThreshold`; the boundary itself counts as below.
    """
    if not lam > 0:
        raise InvalidParam(f"lambda must be > 0, got {lam}")
    if enforce and lam <= e.lambda_min:
        raise BelowThreshold(lam, e.lambda_min)
    return float(e.fp_weight) * e.fp_value + e.polynomial(lam)


def sin_power_identity_residual(m, parity, theta):
    """|sin^n(theta) - exponential binomial form| for n = 2m or 2m+1.

    Even:  sin^(2m) t   = (-1)^m (2m)!/2^(2m) sum_k (-1)^k/(k!(2m-k)!) e^(2i t (m-k))
    Odd:   sin^(2m+1) t = -i (-1)^m (2m+1)!/2^(2m+1) sum_k (-1)^k/(k!(2m+1-k)!) e^(i t (2m+1-2k))

    The odd prefactor is ``(1/(2i))^(2m+1) = -i (-1)^m / 2^(2m+1)``; with ``+i``
    the right-hand side would be ``-sin^(2m+1) t``.
    """
    if isinstance(parity, str):
        parity = Parity(parity.lower())
    if not 0 <= m <= 12:
        raise OutOfRange(f"m must lie in [0, 12], got {m}")
    if parity is Parity.EVEN:
        n = 2 * m
        pre = (-1) ** m * math.factorial(n) / 2**n
        s = sum((-1) ** k / (math.factorial(k) * math.factorial(n - k)) * cmath.exp(2j * theta * (m - k)) for k in range(n + 1))
        rhs = pre * s
    else:
        n = 2 * m + 1
        pre = -1j * (-1) ** m * math.factorial(n) / 2**n
        s = sum((-1) ** k / (math.factorial(k) * math.factorial(n - k)) * cmath.exp(1j * theta * (n - 2 * k)) for k in range(n + 1))
        rhs = pre * s
    return abs(math.sin(theta) ** n - rhs)
