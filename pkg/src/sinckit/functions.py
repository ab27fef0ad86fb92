"""Even entire functions of exponential type.

Every builtin carries closed-form Taylor coefficients at the origin, so the
high-order derivatives that feed the expansion coefficients never come from
numerical differentiation.
"""

from dataclasses import dataclass, field
import enum
from fractions import Fraction
import math

import numpy as np

from .errors import InvalidParam, OrderTooHigh

DEFAULT_SERIES_ORDER = 64
# below this |argument| the sinc kinds switch to their power series
SINC_SWITCH_RADIUS = 1e-2


class Kind(enum.Enum):
    PAPER_EXAMPLE = "paper-example"
    CONSTANT = "constant"
    COSINE = "cos"
    SINC = "sinc"
    SINC_SQUARED = "sinc2"


REGISTRY = {k.value: k for k in Kind}


def _sinc_series(u):
    # sin(u)/u = sum_k (-1)^k u^(2k)/(2k+1)!, six terms
    u2 = u * u
    total = np.zeros_like(u2)
    for k in reversed(range(6)):
        total = total * u2 + (-1) ** k / math.factorial(2 * k + 1)
    return total


def _sinc(u):
    """sin(u)/u with the removable singularity filled in."""
    u = np.asarray(u, dtype=float)
    small = np.abs(u) < SINC_SWITCH_RADIUS
    safe = np.where(small, 1.0, u)
    return np.where(small, _sinc_series(u), np.sin(safe) / safe)


def _paper_example_g_derivatives(sigma, qmax):
    """Exact-ish derivatives g^(q)(0), q = 0..qmax, of g(u) = sinc(sqrt(sigma^2 + u)).

    g(u) = sum_p (-1)^p (sigma^2 + u)^p / (2p+1)!, hence
    g^(q)(0) = sum_{p>=q} (-1)^p p!/(p-q)! sigma^(2(p-q)) / (2p+1)!.
    Sums run in exact rationals and stop once a shrinking term is below
    1e-18 of the partial sum.
    """
    s2 = Fraction(sigma) ** 2
    out = []
    for q in range(qmax + 1):
        total = Fraction(0)
        prev = None
        p = q
        while True:
            term = Fraction((-1) ** p * math.factorial(p), math.factorial(p - q) * math.factorial(2 * p + 1))
            term *= s2 ** (p - q)
            total += term
            if prev is not None and abs(term) < abs(prev) and abs(term) <= Fraction(1, 10**18) * abs(total):
                break
            prev = term
            p += 1
        out.append(total)
    return out


@dataclass(frozen=True)
class EvenEntireFunction:
    """An even entire function of exponential type ``tau``.

    Instances are immutable and callable on scalars or numpy arrays.
    """

    kind: Kind
    tau: float = 0.0
    sigma: float = 1.0
    c: float = 1.0
    series_order: int = DEFAULT_SERIES_ORDER
    _derivs: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_derivs", tuple(self._even_derivatives()))

    def _even_derivatives(self):
        """f^(2k)(0) for 2k <= series_order, as floats."""
        kmax = self.series_order // 2
        tau = self.tau
        if self.kind is Kind.CONSTANT:
            return [self.c] + [0.0] * kmax
        if self.kind is Kind.COSINE:
            return [(-1) ** k * tau ** (2 * k) for k in range(kmax + 1)]
        if self.kind is Kind.SINC:
            return [(-1) ** k * tau ** (2 * k) / (2 * k + 1) for k in range(kmax + 1)]
        if self.kind is Kind.SINC_SQUARED:
            return [(-1) ** k * 2.0 * tau ** (2 * k) / ((2 * k + 1) * (2 * k + 2)) for k in range(kmax + 1)]
        # f(x) = g(tau^2 x^2): f^(2q)(0) = g^(q)(0) tau^(2q) (2q)!/q!
        g = _paper_example_g_derivatives(self.sigma, kmax)
        return [float(g[q] * Fraction(math.factorial(2 * q), math.factorial(q))) * tau ** (2 * q) for q in range(kmax + 1)]

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        tau = self.tau
        if self.kind is Kind.CONSTANT:
            out = np.full_like(x, self.c)
        elif self.kind is Kind.COSINE:
            out = np.cos(tau * x)
        elif self.kind is Kind.SINC:
            out = _sinc(tau * x)
        elif self.kind is Kind.SINC_SQUARED:
            out = _sinc(0.5 * tau * x) ** 2
        else:
            r = np.sqrt((tau * x) ** 2 + self.sigma**2)
            out = np.sin(r) / r
        return out[()] if out.ndim == 0 else out

    def derivative_at_zero(self, j):
        if j < 0:
            raise InvalidParam(f"derivative order must be >= 0, got {j}")
        if j > self.series_order:
            raise OrderTooHigh(f"derivative order {j} exceeds series_order {self.series_order}")
        if j % 2:
            return 0.0
        return self._derivs[j // 2]

    @property
    def name(self):
        return self.kind.value

    def describe(self):
        params = {"function": self.name, "tau": self.tau}
        if self.kind is Kind.PAPER_EXAMPLE:
            params["sigma"] = self.sigma
        if self.kind is Kind.CONSTANT:
            params["c"] = self.c
        return params


def make_builtin(kind, tau=0.0, sigma=None, c=1.0, series_order=DEFAULT_SERIES_ORDER):
    """Construct a builtin even entire function.

    ``kind`` is a :class:`Kind` or one of the registry names
    ``"paper-example"``, ``"constant"``, ``"cos"``, ``"sinc"``, ``"sinc2"``.
    The constant kind always has ``tau = 0``.
    """
    if isinstance(kind, str):
        try:
            kind = REGISTRY[kind]
        except KeyError:
            raise InvalidParam(f"unknown function kind {kind!r}; choose from {sorted(REGISTRY)}") from None
    if not isinstance(kind, Kind):
        raise InvalidParam(f"unknown function kind {kind!r}")
    if not isinstance(series_order, int) or series_order < 2 or series_order % 2:
        raise InvalidParam(f"series_order must be an even integer >= 2, got {series_order!r}")
    tau = float(tau)
    if not math.isfinite(tau) or tau < 0:
        raise InvalidParam(f"tau must be finite and >= 0, got {tau}")
    if kind is Kind.CONSTANT:
        return EvenEntireFunction(kind, tau=0.0, c=float(c), series_order=series_order)
    if kind is Kind.PAPER_EXAMPLE:
        if sigma is None:
            sigma = 1.0
        sigma = float(sigma)
        if not math.isfinite(sigma) or sigma <= 0:
            raise InvalidParam(f"sigma must be > 0, got {sigma}")
        return EvenEntireFunction(kind, tau=tau, sigma=sigma, series_order=series_order)
    return EvenEntireFunction(kind, tau=tau, series_order=series_order)


def eval_at(f, x):
    return f(x)


def derivative_at_zero(f, j):
    return f.derivative_at_zero(j)


def exponential_type(f):
    return f.tau


def sup_abs(f):
    """A bound on sup |f| over the real line, valid for every builtin."""
    if f.kind is Kind.CONSTANT:
        return abs(f.c)
    if f.kind is Kind.PAPER_EXAMPLE:
        # |sin r / r| <= 1 and decreasing envelope; r >= sigma
        return min(1.0, 1.0 / f.sigma)
    return 1.0


@dataclass(frozen=True)
class EvennessViolation:
    x: float
    detail: str


def validate_even(f, samples=100, seed=0):
    """Check evenness of ``f`` on pseudo-random points in [-10, 10].

    ``f`` may be any callable; if it exposes ``derivative_at_zero`` the odd
    derivatives are checked for exact zeros as well. Returns ``None`` when no
    violation is found, else the first :class:`EvennessViolation`.
    """
    if samples < 1:
        raise InvalidParam("samples must be >= 1")
    rng = np.random.default_rng(seed)
    for x in rng.uniform(-10.0, 10.0, size=samples):
        fx = float(f(x))
        fm = float(f(-x))
        if not abs(fx - fm) <= 1e-12 * (1.0 + abs(fx)):
            return EvennessViolation(float(x), f"f(x)={fx!r} but f(-x)={fm!r}")
    deriv = getattr(f, "derivative_at_zero", None)
    if deriv is not None:
        order = getattr(f, "series_order", DEFAULT_SERIES_ORDER)
        for j in range(1, order + 1, 2):
            d = deriv(j)
            if d != 0:
                return EvennessViolation(0.0, f"derivative of odd order {j} at 0 is {d!r}")
    return None
