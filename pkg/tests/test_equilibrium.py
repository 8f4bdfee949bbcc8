import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from cutflow import models, thermo
from cutflow.equilibrium import (
    admissibility,
    density_at,
    density_norm,
    density_profile,
    exterior_margin,
    exterior_saturation,
    gap_margin,
    hodograph_residual,
)
from cutflow.errors import DomainError
from cutflow.flow import polish, seed_one_cut
from cutflow.geometry import EndpointConfig
from cutflow.polyops import h_polynomial

QE = models.quartic_even()
BE = models.bleher_eynard(0.5)
BE_19 = polish(BE, 1.9, EndpointConfig([-1.989, 0.646, 1.431, 1.870]))


def effective_potential(pot, T, cfg, x):
    v1 = thermo.lagrange_multiplier(pot, T, cfg)
    return pot(x) - 2 * T * thermo.log_potential(pot, T, cfg, x) - v1


class TestDensity:
    def test_semicircle_times_x2(self):
        cfg = EndpointConfig([-2.0, 2.0])
        assert density_at(QE, 1.0, cfg, 1.0) == pytest.approx(math.sqrt(3) / (2 * math.pi), rel=1e-14)
        assert density_at(QE, 1.0, cfg, 0.0) == 0.0

    def test_be_critical_zero(self):
        assert abs(density_at(BE, 2.0, EndpointConfig([-2.0, 2.0]), 1.0)) < 1e-15

    def test_outside_support(self):
        with pytest.raises(DomainError):
            density_at(QE, 1.0, EndpointConfig([-2.0, 2.0]), 2.5)
        with pytest.raises(DomainError):
            density_at(QE, 1.0, EndpointConfig([-2.0, -1.0, 1.0, 2.0]), 0.0)

    def test_two_cut_closed_form_density(self):
        # quartic two-cut: rho = |x| sqrt((a^2 - x^2)(x^2 - b^2)) / (2 pi T)
        T = 0.25
        cfg = models.quartic_even_two_cut(T)
        a, b = cfg.beta[3], cfg.beta[2]
        for x in (-1.5, -1.2, 1.1, 1.6):
            ref = abs(x) * math.sqrt((a * a - x * x) * (x * x - b * b)) / (2 * math.pi * T)
            assert density_at(QE, T, cfg, x) == pytest.approx(ref, rel=1e-12)

    def test_norm_one_cut(self):
        assert density_norm(QE, 1.0, EndpointConfig([-2.0, 2.0])) == pytest.approx(1.0, abs=1e-10)

    def test_norm_two_cut(self):
        cfg = EndpointConfig([-math.sqrt(3), -1.0, 1.0, math.sqrt(3)])
        assert density_norm(QE, 0.25, cfg) == pytest.approx(1.0, abs=1e-8)

    def test_norm_be_two_cut(self):
        assert density_norm(BE, 1.9, BE_19) == pytest.approx(1.0, abs=1e-10)

    def test_norm_against_plain_quadrature(self):
        cfg = BE_19
        ref = sum(integrate.quad(lambda x: density_at(BE, 1.9, cfg, x), a, b, epsabs=1e-12)[0] for a, b in cfg.cuts())
        assert density_norm(BE, 1.9, cfg) == pytest.approx(ref, abs=1e-9)

    def test_norm_computed_for_bad_config(self):
        # a non-solution still gets a number; flagging is admissibility's job
        val = density_norm(QE, 0.5, EndpointConfig([-1.0, 1.0]))
        assert math.isfinite(val)

    @given(st.floats(0.05, 0.95), st.floats(0.05, 0.95))
    @settings(max_examples=30, deadline=None)
    def test_parity(self, T, u):
        cfg = models.quartic_even_two_cut(T)
        a, b = cfg.beta[3], cfg.beta[2]
        x = b + u * (a - b)
        assert density_at(QE, T, cfg, x) == pytest.approx(density_at(QE, T, cfg, -x), rel=1e-12)

    def test_profile(self):
        prof = density_profile(BE, 1.9, BE_19, n=51)
        assert len(prof.samples) == 2
        assert all(s.shape == (51, 2) for s in prof.samples)
        assert prof.norm == pytest.approx(1.0, abs=1e-10)
        assert all(np.all(s[:, 1] >= 0) for s in prof.samples)


class TestHodograph:
    def test_quartic_one_cut(self):
        assert np.abs(hodograph_residual(QE, 2.0, models.quartic_even_one_cut(2.0))).max() < 1e-9

    def test_quartic_two_cut(self):
        assert np.abs(hodograph_residual(QE, 0.25, models.quartic_even_two_cut(0.25))).max() < 1e-9

    def test_be_critical(self):
        assert np.abs(hodograph_residual(BE, 2.0, EndpointConfig([-2.0, 2.0]))).max() < 1e-12

    def test_wrong_temperature_is_detected(self):
        assert np.abs(hodograph_residual(QE, 2.5, models.quartic_even_one_cut(2.0))).max() > 1e-3

    def test_be_figure_endpoints(self):
        # polishing the rounded endpoints moves them by less than the rounding
        assert np.abs(BE_19.array - np.array([-1.989, 0.646, 1.431, 1.870])).max() < 1e-3


class TestMargins:
    @pytest.mark.parametrize("side", ["left", "right"])
    def test_exterior_equals_effective_potential(self, side):
        h = h_polynomial(BE, BE_19.beta)
        m = exterior_margin(h, BE_19, side)
        for i in (60, 250, 450):
            assert m.values[i] == pytest.approx(effective_potential(BE, 1.9, BE_19, m.x[i]), rel=1e-9)

    def test_gap_equals_effective_potential(self):
        h = h_polynomial(BE, BE_19.beta)
        m = gap_margin(h, BE_19, 0)
        for i in (100, 256, 400):
            assert m.values[i] == pytest.approx(effective_potential(BE, 1.9, BE_19, m.x[i]), abs=1e-11)

    def test_saturation_value_is_effective_potential(self):
        # one-cut BE below the birth: the right exterior has a local minimum
        T = 1.8
        one = seed_one_cut(BE, T).config
        sat = exterior_saturation(h_polynomial(BE, one.beta), one)
        assert len(sat) == 1
        side, x, val = sat[0]
        assert side == "right" and x > one.beta[1]
        assert val == pytest.approx(effective_potential(BE, T, one, x), abs=1e-10)


class TestAdmissibility:
    def test_quartic_high_temperature_regular(self):
        assert admissibility(QE, 3.0, models.quartic_even_one_cut(3.0)).verdict == "regular"

    def test_quartic_low_temperature_one_cut_fails(self):
        b = 2 / math.sqrt(3) * math.sqrt(1 + math.sqrt(1 + 1.5))
        rep = admissibility(QE, 0.5, EndpointConfig([-b, b]))
        assert rep.verdict in ("singular", "inadmissible")
        assert not rep.density_positive

    def test_be_two_cut_regular(self):
        rep = admissibility(BE, 1.9, BE_19)
        assert rep.verdict == "regular"
        assert set(rep.exterior_inequalities) == {"exterior_left", "exterior_right", "gap_1"}

    def test_residual_gate(self):
        rep = admissibility(QE, 3.0, models.quartic_even_one_cut(2.0))
        assert rep.verdict == "inadmissible" and rep.residual > 1e-6

    def test_critical_point_is_singular(self):
        assert admissibility(BE, 2.0, EndpointConfig([-2.0, 2.0])).verdict == "singular"

    def test_margin_shrinks_toward_birth(self):
        # one-cut solutions approaching the birth temperature from below
        vals = []
        guess = seed_one_cut(BE, 1.7).config
        for T in (1.7, 1.78, 1.83):
            guess = polish(BE, T, guess)
            vals.append(min(v for _, _, v in exterior_saturation(h_polynomial(BE, guess.beta), guess)))
        assert vals[0] > vals[1] > vals[2] > 0
