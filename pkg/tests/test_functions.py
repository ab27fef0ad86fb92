import math

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from sinckit import (
    InvalidParam,
    Kind,
    OrderTooHigh,
    derivative_at_zero,
    eval_at,
    exponential_type,
    make_builtin,
    validate_even,
)
from sinckit.functions import EvenEntireFunction

from conftest import builtins


def test_make_builtin_examples():
    f = make_builtin(Kind.PAPER_EXAMPLE, tau=1, sigma=1)
    assert f(0) == pytest.approx(math.sin(1.0), abs=1e-16)
    c = make_builtin(Kind.CONSTANT, c=1.0)
    assert c.tau == 0 and c(5) == 1.0
    assert make_builtin(Kind.SINC, tau=2)(0) == 1.0


@pytest.mark.parametrize(
    "kwargs",
    [
        {"kind": "paper-example", "tau": 1, "sigma": 0},
        {"kind": "paper-example", "tau": 1, "sigma": -1},
        {"kind": "cos", "tau": -1},
        {"kind": "nope"},
        {"kind": "cos", "tau": 1, "series_order": 63},
        {"kind": "cos", "tau": 1, "series_order": 0},
    ],
)
def test_make_builtin_rejects(kwargs):
    with pytest.raises(InvalidParam):
        make_builtin(**kwargs)


def test_eval_at_examples():
    assert eval_at(make_builtin("constant"), 3.7) == 1.0
    assert eval_at(make_builtin("paper-example", tau=1, sigma=1), 0) == pytest.approx(0.8414709848078965, rel=1e-15)
    assert abs(eval_at(make_builtin("sinc", tau=1), math.pi)) < 1e-16


def test_eval_vectorized_matches_scalar():
    f = make_builtin("sinc2", tau=3)
    xs = np.linspace(-4, 4, 41)
    assert np.array_equal(f(xs), np.array([f(x) for x in xs]))


def test_sinc_series_branch_is_continuous():
    f = make_builtin("sinc", tau=1)
    r = 1e-2
    inside = f(r * (1 - 1e-12))
    outside = f(r * (1 + 1e-12))
    assert abs(inside - outside) < 1e-14
    g = make_builtin("sinc2", tau=2)
    assert g(0.0) == 1.0
    assert g(1e-5) == pytest.approx((math.sin(1e-5) / 1e-5) ** 2, rel=1e-15)


def test_derivative_examples():
    f = make_builtin("paper-example", tau=1.7, sigma=0.8)
    assert derivative_at_zero(f, 3) == 0
    s = 0.8
    assert derivative_at_zero(f, 2) == pytest.approx(1.7**2 * (s * math.cos(s) - math.sin(s)) / s**3, rel=1e-14)
    assert derivative_at_zero(make_builtin("cos", tau=2), 2) == -4


def test_derivative_order_limit():
    f = make_builtin("cos", tau=1, series_order=8)
    f.derivative_at_zero(8)
    with pytest.raises(OrderTooHigh):
        f.derivative_at_zero(9)


@pytest.mark.parametrize(
    "name,kw,order,expected",
    [
        ("sinc", {"tau": 2.0}, 4, 2.0**4 / 5),
        ("sinc2", {"tau": 2.0}, 2, -2.0 * 4 / 12),
        ("cos", {"tau": 3.0}, 6, -(3.0**6)),
    ],
)
def test_closed_form_derivatives(name, kw, order, expected):
    assert make_builtin(name, **kw).derivative_at_zero(order) == pytest.approx(expected, rel=1e-15)


def test_paper_example_derivatives_against_finite_differences():
    # low orders only; finite differences are the independent check here
    f = make_builtin("paper-example", tau=1.3, sigma=2.0)
    h = 1e-3
    d2 = (f(h) - 2 * f(0.0) + f(-h)) / h**2
    d4 = (f(2 * h) - 4 * f(h) + 6 * f(0.0) - 4 * f(-h) + f(-2 * h)) / h**4
    assert f.derivative_at_zero(2) == pytest.approx(d2, rel=1e-6)
    assert f.derivative_at_zero(4) == pytest.approx(d4, rel=1e-3)


def test_exponential_type():
    assert exponential_type(make_builtin("constant")) == 0
    assert exponential_type(make_builtin("paper-example", tau=3, sigma=1)) == 3
    assert exponential_type(make_builtin("sinc2", tau=2)) == 2


@pytest.mark.parametrize("f", builtins(), ids=lambda f: f.name)
def test_odd_derivatives_exactly_zero(f):
    assert all(f.derivative_at_zero(j) == 0 for j in range(1, f.series_order + 1, 2))


@pytest.mark.parametrize("f", builtins(), ids=lambda f: f.name)
def test_taylor_consistency(f):
    xs = np.linspace(-1, 1, 21)
    series = sum(f.derivative_at_zero(j) * xs**j / math.factorial(j) for j in range(f.series_order + 1))
    assert np.max(np.abs(series - f(xs))) <= 1e-10


@pytest.mark.parametrize("f", builtins(), ids=lambda f: f.name)
def test_evenness_random(f):
    rng = np.random.default_rng(1234)
    xs = rng.uniform(-50, 50, 1000)
    a, b = f(xs), f(-xs)
    assert np.all(np.abs(a - b) <= 1e-13 * np.maximum(np.abs(a), 1e-300) + 1e-300)


@given(
    kind=st.sampled_from(["cos", "sinc", "sinc2", "paper-example"]),
    tau=st.floats(0.1, 5.0),
    sigma=st.floats(0.1, 4.0),
    x=st.floats(-100, 100),
)
@settings(max_examples=200, deadline=None)
def test_evenness_property(kind, tau, sigma, x):
    f = make_builtin(kind, tau=tau, sigma=sigma)
    assert f(x) == f(-x)
    assert abs(f(x)) <= 1.0 + 1e-15


@pytest.mark.parametrize("f", builtins(), ids=lambda f: f.name)
def test_validate_even_accepts_builtins(f):
    assert validate_even(f, 100) is None


def test_validate_even_flags_odd_function():
    violation = validate_even(lambda x: math.sin(2.0 * x), 100)
    assert violation is not None
    assert "f(-x)" in violation.detail


def test_validate_even_flags_odd_derivative():
    class Lopsided:
        series_order = 4

        def __call__(self, x):
            return math.cos(x)

        def derivative_at_zero(self, j):
            return 1.0 if j == 3 else 0.0

    violation = validate_even(Lopsided(), 10)
    assert violation is not None and "odd order 3" in violation.detail


def test_validate_even_requires_samples():
    with pytest.raises(InvalidParam):
        validate_even(make_builtin("cos", tau=1), 0)


def test_functions_are_immutable():
    f = make_builtin("cos", tau=1)
    with pytest.raises(AttributeError):
        f.tau = 2.0
    assert isinstance(f, EvenEntireFunction)
