"""Acceptance criteria, one test each.

Every test prints a single ``[acceptance] <id> PASS|FAIL: <detail>`` line to
the terminal (visible without ``-s``) and then asserts the same condition.
"""

import math
import random
import time

import pytest

from sinckit import (
    BesselSeriesConfig,
    Parity,
    bessel_j,
    build_expansion,
    evaluate_expansion,
    finite_part_integral,
    finite_part_paper_example_closed_form,
    inner_sum_even,
    inner_sum_odd,
    make_builtin,
    sin_power_identity_residual,
    sinc_transform_oracle,
)
from sinckit.cli import read_scan_csv, run

from conftest import builtins
from test_expansion import simplified_even_coeffs, simplified_odd_coeffs

# residual |closed form - oracle| at lambda = 1.5 for tau=4, sigma=1, n=3 measured
# once with the oracle at tol 1e-10: 0.71588...; frozen slightly below
THRESHOLD_FLOOR = 0.7


@pytest.fixture
def report(capsys):
    def emit(criterion, ok, detail):
        with capsys.disabled():
            print(f"\n[acceptance] {criterion} {'PASS' if ok else 'FAIL'}: {detail}")
        return ok

    return emit


def _expansion(f, n):
    fp = finite_part_integral(f, n // 2) if n % 2 == 0 else None
    return build_expansion(f, n, fp=fp)


def test_1_classical_constants(report):
    f = make_builtin("constant")
    expected = {1: math.pi / 2, 2: math.pi / 2, 3: 3 * math.pi / 8, 4: math.pi / 3}
    worst_err, worst_time = 0.0, 0.0
    for n, target in expected.items():
        t0 = time.perf_counter()
        closed = evaluate_expansion(_expansion(f, n), 1.0, enforce=True)
        t1 = time.perf_counter()
        oracle = sinc_transform_oracle(f, n, 1.0, tol=1e-9).value
        t2 = time.perf_counter()
        worst_err = max(worst_err, abs(closed - target), abs(oracle - target))
        worst_time = max(worst_time, t1 - t0, t2 - t1)
    ok = worst_err <= 1e-8 and worst_time < 1.0
    report("1", ok, f"max error {worst_err:.2e} (<= 1e-8), slowest call {worst_time:.3f}s (< 1s)")
    assert ok


def test_2_even_example(report):
    tau, sigma = 1.0, 1.0
    t0 = time.perf_counter()
    f = make_builtin("paper-example", tau=tau, sigma=sigma)
    e = _expansion(f, 4)
    oracle_diff, rel_diff = 0.0, 0.0
    mellin = finite_part_paper_example_closed_form(tau, sigma).value
    c = simplified_even_coeffs(tau, sigma)
    for lam in (2.0, 3.0, 4.0):
        generic = evaluate_expansion(e, lam, enforce=True)
        oracle = sinc_transform_oracle(f, 4, lam, tol=1e-9).value
        simplified = 3 / 8 * mellin + c[1] * lam + c[3] * lam**3
        oracle_diff = max(oracle_diff, abs(generic - oracle))
        rel_diff = max(rel_diff, abs(generic - simplified) / abs(simplified))
    for p, coef in e.poly:
        rel_diff = max(rel_diff, abs(coef - c[p]) / abs(c[p]))
    elapsed = time.perf_counter() - t0
    ok = oracle_diff <= 1e-6 and rel_diff <= 1e-12 and elapsed < 5.0
    report("2", ok, f"|pipeline-oracle| {oracle_diff:.2e} (<= 1e-6), vs simplified form rel {rel_diff:.2e} (<= 1e-12), {elapsed:.2f}s (< 5s)")
    assert ok


def test_3_odd_example(report):
    f = make_builtin("paper-example", tau=1.0, sigma=1.0)
    e = _expansion(f, 3)
    c = simplified_odd_coeffs(1.0, 1.0)
    worst, rel = 0.0, 0.0
    for lam in (2.0, 3.0, 4.0):
        closed = evaluate_expansion(e, lam, enforce=True)
        worst = max(worst, abs(closed - sinc_transform_oracle(f, 3, lam, tol=1e-9).value))
        rel = max(rel, abs(closed - (c[0] + c[2] * lam**2)) / abs(closed))
    ok = worst <= 1e-6
    report("3", ok, f"|closed form-oracle| {worst:.2e} (<= 1e-6); simplified form rel {rel:.1e}")
    assert ok


def test_4_threshold_phenomenon(report):
    import io

    out = io.StringIO()
    code = run(
        ["scan", "--function", "paper-example", "--tau", "4", "--sigma", "1", "--n", "3",
         "--lambda-min", "1", "--lambda-max", "8", "--points", "15", "--tol", "1e-9", "--format", "csv"],
        out=out,
    )
    rows = {r["lambda"]: r["abs_diff"] for r in read_scan_csv(out.getvalue())}
    above = max(d for lam, d in rows.items() if lam >= 4.5)
    at_15 = rows[1.5]
    ok = code == 0 and above <= 1e-6 and at_15 >= THRESHOLD_FLOOR
    report("4", ok, f"max residual for lambda >= 4.5: {above:.2e} (<= 1e-6); residual at 1.5: {at_15:.4f} (>= {THRESHOLD_FLOOR})")
    assert ok


def test_5_finite_part_cross_validation(report):
    mellin_diff = 0.0
    for tau, sigma in [(1, 1), (1, 2), (2, 1)]:
        f = make_builtin("paper-example", tau=tau, sigma=sigma)
        ts = finite_part_integral(f, 2).value
        mellin_diff = max(mellin_diff, abs(ts - finite_part_paper_example_closed_form(tau, sigma).value))
    split_spread = 0.0
    for f in builtins():
        for m in (1, 2, 3):
            vals = [finite_part_integral(f, m, a).value for a in (0.5, 1.0, 2.0)]
            split_spread = max(split_spread, max(vals) - min(vals))
    const = abs(finite_part_integral(make_builtin("constant"), 1).value)
    ok = mellin_diff <= 1e-7 and split_spread <= 1e-8 and const <= 1e-12
    report("5", ok, f"Mellin diff {mellin_diff:.2e} (<= 1e-7), split spread {split_spread:.2e} (<= 1e-8), constant m=1 {const:.1e} (<= 1e-12)")
    assert ok


def test_6_sin_power_identity(report):
    rng = random.Random(20240601)
    worst = 0.0
    for _ in range(100):
        theta = rng.uniform(-10, 10)
        for m in range(7):
            for parity in Parity:
                worst = max(worst, sin_power_identity_residual(m, parity, theta))
    ok = worst <= 1e-10
    report("6", ok, f"max residual over 100 thetas, m <= 6, both parities: {worst:.2e} (<= 1e-10)")
    assert ok


def test_7_property_suite(report):
    failures = []
    for f in builtins():
        if any(f.derivative_at_zero(j) != 0.0 for j in range(1, f.series_order + 1, 2)):
            failures.append(f"odd derivative of {f.name}")
    probe = make_builtin("cos", tau=1.0)
    for n in range(1, 21):
        powers = [p for p, _ in build_expansion(probe, n, fp=0.0).poly]
        expected = list(range(1, n, 2)) if n % 2 == 0 else list(range(0, n, 2))
        if powers != expected:
            failures.append(f"structure n={n}: {powers}")
    base = 0.0
    for f in builtins():
        e = build_expansion(f, 1)
        for lam in (f.tau * 1.01 + 0.01, 2 * f.tau + 1, 10 * f.tau + 7):
            base = max(base, abs(evaluate_expansion(e, lam) - math.pi * f(0.0) / 2))
    if base > 1e-13:
        failures.append(f"n=1 base case deviates by {base:.2e}")
    for m in range(1, 16):
        for l in range(m):
            if inner_sum_even(l, m) != inner_sum_even(l, m, reverse=True):
                failures.append(f"even inner sum ({l},{m})")
        for l in range(m + 1):
            a, b = inner_sum_odd(l, m), inner_sum_odd(l, m, reverse=True)
            if a != b or float(a).hex() != float(b).hex():
                failures.append(f"odd inner sum ({l},{m})")
    ok = not failures
    report("7", ok, "odd derivatives, parity/degree n <= 20, n=1 base case, summation-order reversal" + ("" if ok else f"; {failures[:3]}"))
    assert ok


def test_8_bessel_oracle(report):
    base = bessel_j(2, 1.0, BesselSeriesConfig(max_terms=60))
    doubled = bessel_j(2, 1.0, BesselSeriesConfig(max_terms=120))
    stability = abs(base - doubled)
    recurrence = max(abs(bessel_j(1, x) + bessel_j(3, x) - 4 / x * bessel_j(2, x)) for x in (0.5, 1.0, 5.0))
    ok = stability <= 1e-15 and recurrence <= 1e-12
    report("8", ok, f"J2(1) doubling change {stability:.1e} (<= 1e-15), recurrence residual {recurrence:.1e} (<= 1e-12)")
    assert ok
