import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from cutflow import elliptic
from cutflow.elliptic import ellip_e, ellip_k, ellip_pi, pi_over_k, pi_over_k_asymptotic, theta_ratio
from cutflow.errors import DomainError

HALF_PI = math.pi / 2


def quad_k(s):
    return integrate.quad(lambda p: 1 / math.sqrt(1 - s * math.sin(p) ** 2), 0, HALF_PI, epsabs=0, epsrel=1e-13)[0]


def quad_e(s):
    return integrate.quad(lambda p: math.sqrt(1 - s * math.sin(p) ** 2), 0, HALF_PI, epsabs=0, epsrel=1e-13)[0]


def quad_pi(r, s):
    f = lambda p: 1 / ((1 - r * math.sin(p) ** 2) * math.sqrt(1 - s * math.sin(p) ** 2))
    return integrate.quad(f, 0, HALF_PI, epsabs=0, epsrel=1e-13)[0]


class TestExactValues:
    def test_origin(self):
        assert ellip_k(0.0) == pytest.approx(HALF_PI, abs=1e-14)
        assert ellip_e(0.0) == pytest.approx(HALF_PI, abs=1e-14)
        assert ellip_pi(0.0, 0.0) == pytest.approx(HALF_PI, abs=1e-14)
        assert pi_over_k(0.0, 0.0) == 1.0

    def test_e_at_one(self):
        assert ellip_e(1.0) == pytest.approx(1.0, abs=1e-15)

    @pytest.mark.parametrize("s", [0.0, 0.3, 0.7, 0.999])
    def test_pi_zero_char_is_k(self, s):
        assert ellip_pi(0.0, s) == pytest.approx(ellip_k(s), rel=1e-15)


class TestDomain:
    @pytest.mark.parametrize("s", [-0.1, 1.0, 1.5, math.nan])
    def test_k_rejects(self, s):
        with pytest.raises(DomainError):
            ellip_k(s)

    def test_e_rejects(self):
        with pytest.raises(DomainError):
            ellip_e(1.01)

    def test_pi_rejects(self):
        with pytest.raises(DomainError):
            ellip_pi(1.0, 0.5)
        with pytest.raises(DomainError):
            pi_over_k(0.6, 0.5)

    def test_theta_rejects(self):
        with pytest.raises(DomainError):
            theta_ratio(0.5, 0.5)


class TestOracles:
    @pytest.mark.parametrize("s", [0.3, 0.5, 0.9])
    def test_k_e_quadrature(self, s):
        assert ellip_k(s) == pytest.approx(quad_k(s), rel=1e-10)
        assert ellip_e(s) == pytest.approx(quad_e(s), rel=1e-10)

    @given(st.floats(0.0, 0.95), st.floats(0.0, 0.95))
    @settings(max_examples=100)
    def test_random_points(self, a, b):
        r, s = min(a, b), max(a, b)
        assert ellip_k(s) == pytest.approx(quad_k(s), rel=1e-9)
        assert ellip_e(s) == pytest.approx(quad_e(s), rel=1e-9)
        assert ellip_pi(r, s) == pytest.approx(quad_pi(r, s), rel=1e-9)

    @pytest.mark.parametrize("s", [1 - 1e-3, 1 - 1e-8, 1 - 1e-13])
    def test_near_one_against_mpmath(self, s):
        mpmath.mp.dps = 40
        sc = 1 - s
        m = mpmath.mpf(1) - mpmath.mpf(sc)
        assert elliptic._ellip_k(sc) == pytest.approx(float(mpmath.ellipk(m)), rel=1e-13)
        assert elliptic._ellip_e(sc) == pytest.approx(float(mpmath.ellipe(m)), rel=1e-13)

    def test_k_log_asymptote(self):
        s = 1 - 1e-6
        assert ellip_k(s) == pytest.approx(-0.5 * math.log(1e-6) + math.log(4), rel=1e-4)

    @pytest.mark.parametrize("r,s", [(0.2, 0.6), (0.6, 0.9), (0.95, 0.99), (0.999, 0.9999)])
    def test_transformed_ratio_against_mpmath(self, r, s):
        mpmath.mp.dps = 40
        ref = mpmath.ellippi(r, s) / mpmath.ellipk(s)
        assert pi_over_k(r, s) == pytest.approx(float(ref), rel=1e-12)


class TestMonotonicity:
    def test_k_increasing_e_decreasing(self):
        s = np.linspace(0, 0.999, 400)
        k = [ellip_k(x) for x in s]
        e = [ellip_e(x) for x in s]
        assert np.all(np.diff(k) > 0)
        assert np.all(np.diff(e) < 0)


class TestSeries:
    @staticmethod
    def order(f, points):
        a, b = points
        return math.log(abs(f(a)) / abs(f(b))) / math.log(a / b)

    def test_k_series_third_order(self):
        f = lambda s: ellip_k(s) - HALF_PI * (1 + s / 4 + 9 * s * s / 64)
        assert self.order(f, (1e-2, 1e-3)) == pytest.approx(3.0, abs=0.05)

    def test_pi_series_third_order(self):
        def f(t):
            r, s = t, 1.5 * t
            ser = 1 + r / 2 + s / 4 + 3 * r * r / 8 + 9 * s * s / 64 + 3 * r * s / 16
            return ellip_pi(r, s) - HALF_PI * ser

        assert self.order(f, (1e-2, 1e-3)) == pytest.approx(3.0, abs=0.05)
        r, s = 0.01, 0.01
        ser = 1 + r / 2 + s / 4 + 3 * r * r / 8 + 9 * s * s / 64 + 3 * r * s / 16
        assert ellip_pi(r, s) == pytest.approx(HALF_PI * ser, rel=1e-6)

    def test_ratio_series_third_order(self):
        f = lambda t: pi_over_k(t, 1.5 * t) - (1 + t / 2 + 3 * t * t / 8 + 1.5 * t * t / 16)
        assert self.order(f, (1e-2, 1e-3)) == pytest.approx(3.0, abs=0.05)

    def test_ratio_series_example(self):
        # truncation error is third order, about 4e-6 at this point
        r, s = 0.02, 0.03
        approx = 1 + r / 2 + 3 * r * r / 8 + r * s / 16
        assert abs(pi_over_k(r, s) - approx) < 1e-5
        mpmath.mp.dps = 30
        assert pi_over_k(r, s) == pytest.approx(float(mpmath.ellippi(r, s) / mpmath.ellipk(s)), rel=1e-14)


class TestAsymptotics:
    @pytest.mark.parametrize("delta", [1e-6, 1e-8])
    def test_degenerate_two_cut_ratio(self, delta):
        b1, b2, b3, b4 = -2.0, 0.6, 1.4, 1.4 + delta
        d31, d42 = b3 - b1, b4 - b2
        rc, sc = (b4 - b3) / d42, (b2 - b1) * (b4 - b3) / (d31 * d42)
        r, s = 1 - rc, 1 - sc
        exact = pi_over_k(r, s, rc=rc, sc=sc)
        assert pi_over_k_asymptotic(rc, sc) == pytest.approx(exact, rel=0.05)

    @pytest.mark.parametrize("sc", [0.999e-12, 1.001e-12, 1e-15])
    def test_both_sides_of_switch(self, sc):
        mpmath.mp.dps = 60
        rc = 1e-7
        r, s = 1 - mpmath.mpf(rc), 1 - mpmath.mpf(sc)
        ref = float(mpmath.ellippi(r, s) / mpmath.ellipk(s))
        assert elliptic._pi_over_k(float(r), float(s), rc, sc) == pytest.approx(ref, rel=1e-7)


class TestTheta:
    def test_known_value(self):
        assert theta_ratio(0.25, 0.81) == pytest.approx(math.atanh(math.sqrt(0.8)), rel=1e-15)

    def test_vanishes_at_diagonal(self):
        assert theta_ratio(0.5, 0.5 + 1e-14) < 1e-6

    @given(st.floats(1e-4, 0.99), st.floats(1e-4, 0.99))
    @settings(max_examples=100)
    def test_inequality_bound(self, a, b):
        r, s = min(a, b), max(a, b)
        if s - r < 1e-6:
            return
        sr, ss = math.sqrt(r), math.sqrt(s)
        th = theta_ratio(r, s)
        lead = math.sqrt(2) * th / (math.sqrt(1 + ss) * (1 + sr) * math.sqrt(1 - sr) * math.sqrt(ss - sr))
        bound = 8 * math.pi / (r**0.25 * math.sqrt(ss - sr))
        assert abs(ellip_pi(r, s) - lead) <= bound
