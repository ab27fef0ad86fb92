"""Brute-force quadrature of the sinc transform and of related tails.

The integrand ``f(x) sin^n(lam x) / x^n`` is integrated segment by segment
between consecutive zeros ``k pi/lam`` of the kernel, with fixed 16-point
Gauss-Legendre panels on every segment. How the infinite tail is handled
depends on what is affordable:

* ``truncate``: for ``n >= 2`` stop at the first segment edge ``X`` where
  :func:`tail_bound` drops below ``tol/2``.
* ``averaging``: for ``n = 1`` the segment partial sums alternate; repeated
  averaging of neighbouring partial sums accelerates them.
* ``windowed``: fallback for everything the first two cannot reach within
  budget. The integrand is multiplied by a smooth log-scale cutoff
  ``w(x/X) = erfc(ln(x/X)/s)/2``. Oscillating tail components are then
  suppressed faster than any power of ``omega*X``, and the surviving
  non-oscillating part is a power series in ``1/X`` which Richardson
  extrapolation over ``X, 2X, 4X, 8X`` removes.
"""

from dataclasses import dataclass
import math
import os

import numpy as np
from scipy.special import erfc

from .errors import InvalidParam, NotConverged, Unsupported
from .functions import sup_abs

GAUSS_ORDER = 16
_GX, _GW = np.polynomial.legendre.leggauss(GAUSS_ORDER)

DEFAULT_MAX_SEGMENTS = 2_000_000
AVERAGING_ROUNDS = 24
# cheapest strategies are tried up to these segment counts before falling back
DIRECT_SEGMENT_CAP = 200_000
AVERAGING_SEGMENT_CAP = 1 << 16

WINDOW_WIDTH = 0.3
WINDOW_SPAN = math.exp(6.5 * WINDOW_WIDTH)  # w(t) = 1 - O(1e-20) below 1/span, O(1e-20) above span
WINDOW_CYCLES = 100.0  # slowest oscillation gets omega*X >= this
WINDOW_LEVELS = 4
_CHUNK = 1 << 15


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    segments_used: int
    converged: bool
    method: str = ""


def max_segments_default():
    env = os.environ.get("SINCKIT_MAX_SEGMENTS")
    if env:
        try:
            v = int(env)
        except ValueError:
            raise InvalidParam(f"SINCKIT_MAX_SEGMENTS must be an integer, got {env!r}") from None
        if v < 1:
            raise InvalidParam("SINCKIT_MAX_SEGMENTS must be positive")
        return v
    return DEFAULT_MAX_SEGMENTS


def _sinc_series(u):
    u2 = u * u
    total = np.zeros_like(u2)
    for k in reversed(range(6)):
        total = total * u2 + (-1) ** k / math.factorial(2 * k + 1)
    return total


def sinc_kernel(n, lam, x):
    """``sin^n(lam x) / x^n`` evaluated as ``lam^n sinc(lam x)^n``.

    Below ``x = 0.1 pi/lam`` the sinc factor comes from its power series.
    """
    x = np.asarray(x, dtype=float)
    u = lam * x
    small = np.abs(u) < 0.1 * math.pi
    safe = np.where(small, 1.0, u)
    s = np.where(small, _sinc_series(u), np.sin(safe) / safe)
    return lam**n * s**n


def panel_integrals(g, edges):
    """Gauss-Legendre integral of ``g`` over each panel ``[edges[i], edges[i+1]]``."""
    edges = np.asarray(edges, dtype=float)
    out = np.empty(len(edges) - 1)
    for start in range(0, len(edges) - 1, _CHUNK):
        a = edges[start : start + _CHUNK]
        b = edges[start + 1 : start + _CHUNK + 1]
        a = a[: len(b)]
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        x = mid[:, None] + half[:, None] * _GX[None, :]
        out[start : start + len(b)] = half * (g(x) @ _GW)
    return out


def tail_bound(f, n, X):
    """Bound on ``|int_X^inf f sin^n(lam x)/x^n dx|`` using ``|sin| <= 1``.

    ``sup_{x>=X} |f|`` is estimated as 1.5 times the maximum over a coarse grid
    on ``[X, 4X]``, never exceeding the global bound of the builtin (which is
    exact for the constant function).
    """
    if n < 2:
        raise Unsupported("the |sin^n| <= 1 tail bound diverges for n = 1")
    if not X > 0:
        raise InvalidParam(f"X must be > 0, got {X}")
    grid = np.linspace(X, 4 * X, 257)
    sup = min(1.5 * float(np.max(np.abs(f(grid)))), sup_abs(f))
    return sup * X ** (1 - n) / (n - 1)


def iterated_average(partial_sums, rounds=AVERAGING_ROUNDS):
    """Average neighbouring entries ``rounds`` times; returns the last value."""
    s = np.asarray(partial_sums[-(rounds + 1) :], dtype=float)
    for _ in range(min(rounds, len(s) - 1)):
        s = 0.5 * (s[1:] + s[:-1])
    return float(s[-1])


def _log_window(x, X):
    with np.errstate(divide="ignore"):
        return 0.5 * erfc(np.log(x / X) / WINDOW_WIDTH)


def windowed_richardson(g, edges_for, X0, decay, levels=WINDOW_LEVELS):
    """Integrate ``g`` over ``[a, inf)`` with a smooth cutoff and extrapolate.

    ``edges_for(b)`` returns panel edges covering ``[a, b]``. ``decay`` is the
    power ``p`` with the non-oscillating part of ``g`` behaving like
    ``x^-p``; the cutoff error then expands in ``X^(1-p), X^(-p), ...``.
    Returns ``(value, error_estimate, panels)``.
    """
    Xs = [X0 * 2.0**i for i in range(levels)]
    edges = edges_for(Xs[-1] * WINDOW_SPAN)
    sums = np.zeros(levels)
    for start in range(0, len(edges) - 1, _CHUNK):
        a = edges[start : start + _CHUNK]
        b = edges[start + 1 : start + _CHUNK + 1]
        a = a[: len(b)]
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        x = mid[:, None] + half[:, None] * _GX[None, :]
        gw = g(x) * (half[:, None] * _GW[None, :])
        for i, Xi in enumerate(Xs):
            sums[i] += np.sum(gw * _log_window(x, Xi))

    p0 = max(decay - 1, 1)
    table = [[v] for v in sums]
    for i in range(1, levels):
        for j in range(1, i + 1):
            r = 2.0 ** (p0 + j - 1)
            table[i].append((r * table[i][j - 1] - table[i - 1][j - 1]) / (r - 1))
    best = table[-1][-1]
    err = abs(best - table[-2][-1])
    # rounding floor from the magnitude of what was summed
    err += 64 * np.finfo(float).eps * max(abs(v) for v in sums)
    return float(best), float(err), len(edges) - 1


def _panels_per_segment(n, lam, tau):
    # sin^n sharpens with n; f turns through tau*pi/lam radians per segment
    return int(math.ceil(n / 16)) + int(math.ceil(tau / lam))


def _kernel_frequencies(n, lam, tau):
    """Asymptotic frequencies of ``f sin^n(lam x)`` for f with spectrum at 0 and +-tau."""
    out = set()
    for j in range(n % 2, n + 1, 2):
        for s in (-1.0, 0.0, 1.0):
            out.add(abs(j * lam + s * tau))
    scale = n * lam + tau
    return sorted(w for w in out if w > 1e-9 * scale)


def sinc_transform_integrand(f, n, lam):
    return lambda x: f(x) * sinc_kernel(n, lam, x)


def sinc_transform_oracle(f, n, lam, tol=1e-8, max_segments=None):
    """Numerically evaluate ``int_0^inf f(x) sin^n(lam x)/x^n dx``.

    Raises :class:`NotConverged` (carrying the best result) when the error
    estimate still exceeds ``tol`` after the segment budget is spent.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidParam(f"n must be a positive integer, got {n!r}")
    if not lam > 0:
        raise InvalidParam(f"lambda must be > 0, got {lam}")
    if not tol > 0:
        raise InvalidParam(f"tol must be > 0, got {tol}")
    if max_segments is None:
        max_segments = max_segments_default()

    period = math.pi / lam
    p = _panels_per_segment(n, lam, f.tau)
    g = sinc_transform_integrand(f, n, lam)

    def edges_for(b):
        k = int(math.ceil(b / period))
        return np.linspace(0.0, k * period, k * p + 1)

    def segment_sums(k):
        vals = panel_integrals(g, edges_for(k * period))
        return vals.reshape(k, p).sum(axis=1)

    if n >= 2:
        X = 64 * period
        cap = min(max_segments, DIRECT_SEGMENT_CAP)
        while tail_bound(f, n, X) >= tol / 2 and X / period <= cap:
            X *= 2
        if X / period <= cap:
            k = int(math.ceil(X / period))
            segs = segment_sums(k)
            value = float(np.sum(segs))
            err = tail_bound(f, n, k * period) + 64 * np.finfo(float).eps * float(np.sum(np.abs(segs)))
            return QuadratureResult(value, err, k, bool(err <= tol), "truncate")
    else:
        result = _averaging(segment_sums, tol, min(max_segments, AVERAGING_SEGMENT_CAP))
        if result is not None:
            return result

    freqs = _kernel_frequencies(n, lam, f.tau)
    X0 = 64 * period
    if freqs:
        X0 = max(X0, WINDOW_CYCLES / freqs[0])
    # keep the farthest edge inside the segment budget
    X_cap = max_segments * period / (WINDOW_SPAN * 2 ** (WINDOW_LEVELS - 1))
    X0 = min(X0, X_cap)
    value, err, panels = windowed_richardson(g, edges_for, X0, n)
    result = QuadratureResult(value, err, panels // p, bool(err <= tol), "windowed")
    if not result.converged:
        raise NotConverged(f"sinc transform oracle reached error estimate {err:.3g} > tol {tol:.3g}", result)
    return result


def _averaging(segment_sums, tol, cap):
    k = 256
    while k <= cap:
        partial = np.cumsum(segment_sums(k))
        acc = [iterated_average(partial[: k - j]) for j in range(5)]
        coarse = iterated_average(partial[: k // 4])
        err = max(max(acc) - min(acc), abs(acc[0] - coarse))
        if err < tol / 2:
            return QuadratureResult(acc[0], float(err), k, True, "averaging")
        k *= 4
    return None


def symmetric_sinc_transform(f, n, lam, tol=1e-8, max_segments=None):
    """Half of the integral over the whole real line, both halves integrated separately.

    The negative half-line is sampled at mirrored nodes using ``f(-x)`` and
    ``sin^n(-lam x)/(-x)^n`` directly, so agreement with
    :func:`sinc_transform_oracle` checks the evenness halving identity.
    """
    right = sinc_transform_oracle(f, n, lam, tol, max_segments)
    period = math.pi / lam
    p = _panels_per_segment(n, lam, f.tau)

    def g(x):
        # a node x >= 0 stands for the point -x on the negative half-line
        xm = -np.asarray(x, dtype=float)
        u = lam * xm
        small = np.abs(u) < 0.1 * math.pi
        safe_u = np.where(small, 1.0, u)
        safe_x = np.where(small, 1.0, xm)
        kern = np.where(small, lam**n * _sinc_series(u) ** n, np.sin(safe_u) ** n / safe_x**n)
        return f(xm) * kern

    def edges_for(b):
        k = int(math.ceil(b / period))
        return np.linspace(0.0, k * period, k * p + 1)

    freqs = _kernel_frequencies(n, lam, f.tau)
    X0 = max(64 * period, WINDOW_CYCLES / freqs[0]) if freqs else 64 * period
    left, left_err, _ = windowed_richardson(g, edges_for, X0, n)
    return QuadratureResult(0.5 * (right.value + left), 0.5 * (right.error_estimate + left_err), 0, True, "symmetric")


def power_tail_integral(f, power, a, tol=1e-10, max_segments=None):
    """``int_a^inf f(x) / x^power dx`` for ``power >= 2``.

    Truncates at the first ``X`` where ``sup|f| X^(1-power)/(power-1)`` is
    below ``tol/2``; otherwise uses the windowed extrapolation.
    """
    if power < 2:
        raise Unsupported("power must be >= 2 for an absolutely convergent tail")
    if not a > 0:
        raise InvalidParam(f"a must be > 0, got {a}")
    if max_segments is None:
        max_segments = max_segments_default()

    tau = f.tau
    hosc = math.pi / (2 * tau) if tau > 0 else math.inf

    def g(x):
        return f(x) / x**power

    def edges_for(b):
        # geometric grading while the x^-power factor dominates, then uniform
        edges = [a]
        x = a
        while x < b and 0.25 * x < hosc:
            x = min(1.25 * x, b)
            edges.append(x)
        if x < b:
            k = int(math.ceil((b - x) / hosc))
            edges.extend(np.linspace(x, x + k * hosc, k + 1)[1:])
        return np.asarray(edges)

    def bound(X):
        grid = np.linspace(X, 4 * X, 257)
        sup = min(1.5 * float(np.max(np.abs(f(grid)))), sup_abs(f))
        return sup * X ** (1 - power) / (power - 1)

    X = 8 * a
    cap = min(max_segments, DIRECT_SEGMENT_CAP)
    # beyond 2^16 a the truncation error is still tol-sized; extrapolation does better
    for _ in range(16):
        if bound(X) < tol / 2 or len(edges_for(X)) > cap:
            break
        X *= 2
    edges = edges_for(X)
    if bound(X) < tol / 2 and len(edges) <= cap:
        vals = panel_integrals(g, edges)
        err = bound(edges[-1]) + 64 * np.finfo(float).eps * float(np.sum(np.abs(vals)))
        return QuadratureResult(float(np.sum(vals)), err, len(vals), bool(err <= tol), "truncate")

    X0 = a * WINDOW_SPAN
    if tau > 0:
        X0 = max(X0, WINDOW_CYCLES / tau)
    value, err, panels = windowed_richardson(g, edges_for, X0, power)
    return QuadratureResult(value, err, panels, bool(err <= tol), "windowed")
