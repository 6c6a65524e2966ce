import math

import numpy as np
import pytest

from circrobust.errors import BesselOverflow, MaxIterExceeded, NoSignChange, OutOfRange
from circrobust.special import (
    QuadratureSpec,
    RootSpec,
    bessel_i,
    bessel_i_scaled,
    bessel_ratio,
    bessel_ratio_derivative,
    bessel_ratio_inv,
    derivative,
    erf,
    find_root,
    integrate,
)


def series_i(nu, x, terms=40):
    """Power series Σ (x/2)^(2k+ν) / (k! (k+ν)!)."""
    return sum((x / 2) ** (2 * k + nu) / (math.factorial(k) * math.factorial(k + nu)) for k in range(terms))


def perron_ratio(x, depth=200):
    """I₁/I₀ by the continued fraction x / (2 + x² / (4 + x² / (6 + …)))."""
    tail = 0.0
    for k in range(depth, 0, -1):
        tail = x * x / (2 * (k + 1) + tail)
    return x / (2 + tail)


def bisect(f, lo, hi, iters=200):
    flo = f(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if (f(mid) > 0) == (flo > 0):
            lo, flo = mid, f(mid)
        else:
            hi = mid
    return 0.5 * (lo + hi)


class TestBessel:
    def test_i0_series(self):
        assert bessel_i(0, 2.0) == pytest.approx(series_i(0, 2.0), rel=1e-14)

    @pytest.mark.parametrize("nu,x", [(1, 0.3), (1, 5.0), (2, 7.5)])
    def test_series_other_orders(self, nu, x):
        assert bessel_i(nu, x) == pytest.approx(series_i(nu, x, 80), rel=1e-13)

    def test_recurrence(self):
        x = 3.7
        assert bessel_i(2, x) == pytest.approx(bessel_i(0, x) - (2 / x) * bessel_i(1, x), rel=1e-13)

    def test_overflow_is_reported(self):
        with pytest.raises(BesselOverflow):
            bessel_i(0, 1000.0)
        assert math.isfinite(bessel_i_scaled(0, 1000.0))

    def test_negative_argument(self):
        with pytest.raises(OutOfRange):
            bessel_i(0, -1.0)

    def test_ratio_against_continued_fraction(self):
        assert bessel_ratio(2.0) == pytest.approx(perron_ratio(2.0), abs=1e-10)

    def test_ratio_large_argument(self):
        a = bessel_ratio(1000.0)
        assert 0.999 < a < 1.0

    def test_ratio_monotone(self):
        k = np.linspace(0.0, 500.0, 10_000)
        assert np.all(np.diff(bessel_ratio(k)) > 0)

    def test_ratio_derivative(self):
        for k in (0.0, 1e-9, 0.4, 3.0, 40.0):
            assert bessel_ratio_derivative(k) == pytest.approx(
                derivative(bessel_ratio, max(k, 0.05)) if k < 0.05 else derivative(bessel_ratio, k),
                rel=2e-3 if k < 0.05 else 1e-7)

    def test_inverse_round_trip(self):
        assert bessel_ratio_inv(bessel_ratio(5.0)) == pytest.approx(5.0, rel=1e-10)

    def test_inverse_against_bisection(self):
        ref = bisect(lambda k: perron_ratio(k) - 0.5, 1e-6, 10.0)
        assert bessel_ratio_inv(0.5) == pytest.approx(ref, rel=1e-10)

    def test_inverse_domain(self):
        assert bessel_ratio_inv(0.0) == 0.0
        with pytest.raises(OutOfRange):
            bessel_ratio_inv(1.0)


def test_erf_taylor():
    ref = 2 / math.sqrt(math.pi) * sum((-1) ** k / (math.factorial(k) * (2 * k + 1)) for k in range(30))
    assert erf(1.0) == pytest.approx(ref, abs=1e-15)


class TestIntegrate:
    def test_sine(self):
        assert integrate(math.sin, 0, math.pi) == pytest.approx(2.0, abs=1e-12)

    def test_polynomial(self):
        assert integrate(lambda x: x * x, 0, 1) == pytest.approx(1 / 3, abs=1e-14)

    def test_von_mises_normalization(self):
        k = 2.5
        val = integrate(lambda t: math.exp(k * math.cos(t)) / (2 * math.pi * bessel_i(0, k)), -math.pi, math.pi)
        assert val == pytest.approx(1.0, abs=1e-10)

    def test_additivity(self):
        f = lambda x: math.exp(-x) * math.cos(3 * x)  # noqa: E731
        whole = integrate(f, 0, 2)
        assert whole == pytest.approx(integrate(f, 0, 0.7) + integrate(f, 0.7, 2), abs=1e-13)

    def test_custom_spec(self):
        spec = QuadratureSpec(rel_tol=1e-6, abs_tol=1e-8, limit=50)
        assert integrate(math.cos, 0, math.pi / 2, spec) == pytest.approx(1.0, abs=1e-6)


class TestFindRoot:
    def test_cosine(self):
        assert find_root(math.cos, 0, 3) == pytest.approx(math.pi / 2, abs=1e-12)

    def test_linear(self):
        assert find_root(lambda x: x - 1, 0, 5) == pytest.approx(1.0, abs=1e-12)

    def test_ratio_level(self):
        k = find_root(lambda x: bessel_ratio(x) - 0.9, 0.1, 50)
        assert bessel_ratio(k) == pytest.approx(0.9, abs=1e-12)

    def test_no_sign_change(self):
        with pytest.raises(NoSignChange):
            find_root(lambda x: x * x + 1, -1, 1)

    def test_iteration_cap(self):
        with pytest.raises(MaxIterExceeded):
            find_root(lambda x: x ** 3 - 2, 0, 10, RootSpec(tol=1e-15, max_iter=2))


def test_derivative_richardson():
    assert derivative(math.exp, 1.0) == pytest.approx(math.e, rel=1e-10)
    assert derivative(math.sin, 0.3) == pytest.approx(math.cos(0.3), rel=1e-10)
