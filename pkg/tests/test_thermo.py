import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from cutflow import models
from cutflow.equilibrium import density_at
from cutflow.errors import DomainError
from cutflow.flow import be_merge_event, be_minimum, seed_from_guess
from cutflow.geometry import EndpointConfig
from cutflow.phases import quartic_even_trace
from cutflow.thermo import (
    central_derivative,
    continuity_check,
    free_energy,
    lagrange_multiplier,
    one_sided_derivative,
    one_sided_extrapolation,
    second_derivative,
    specific_heat_one_cut,
    stencil_step,
    third_derivative_jump,
    thermo_curve,
)

QE = models.quartic_even()


def quartic_config(T):
    return models.quartic_even_one_cut(T) if T >= 1 else models.quartic_even_two_cut(T)


def quartic_F(T):
    return free_energy(QE, T, quartic_config(T))


class TestLagrangeMultiplier:
    def test_quartic_critical_oracle(self):
        # v1 = V(0) - 2 int rho log|y| dy, brute force with the singular point flagged
        rho = lambda y: y * y * math.sqrt(4 - y * y) / (2 * math.pi)
        ref = -2 * integrate.quad(lambda y: rho(y) * math.log(abs(y)), -2, 2, points=[0.0], limit=200)[0]
        v1 = lagrange_multiplier(QE, 1.0, EndpointConfig([-2.0, 2.0]), x=0.0)
        assert v1 == pytest.approx(ref, abs=1e-9)
        assert v1 == pytest.approx(-0.5, abs=1e-12)

    @pytest.mark.parametrize("T,xs", [(2.0, [-2.0, -1.1, 0.0, 0.7, 2.1]), (0.25, [-1.6, -1.2, 1.05, 1.4, 1.7])])
    def test_constant_on_support(self, T, xs):
        cfg = quartic_config(T)
        vals = [lagrange_multiplier(QE, T, cfg, x=x) for x in xs]
        assert max(vals) - min(vals) < 1e-7

    def test_off_support(self):
        with pytest.raises(DomainError):
            lagrange_multiplier(QE, 0.25, quartic_config(0.25), x=0.0)

    @pytest.mark.parametrize("T", [0.3, 0.7, 1.5, 2.5])
    def test_entropy_identity(self, T):
        dF = central_derivative(quartic_F, T, 1e-3)
        assert dF == pytest.approx(-lagrange_multiplier(QE, T, quartic_config(T)), abs=1e-5)


class TestFreeEnergy:
    def test_double_integral_form(self):
        # F = -T int V rho + T**2 int int rho rho log|x - y|
        T = 2.0
        cfg = quartic_config(T)
        a, b = cfg.beta
        rho = lambda x: (x * x + b * b / 2 - 2) * math.sqrt(max(b * b - x * x, 0.0)) / (2 * math.pi * T)
        assert rho(0.3) == pytest.approx(density_at(QE, T, cfg, 0.3), rel=1e-13)

        def inner(x):
            return integrate.quad(lambda y: rho(y) * math.log(abs(x - y)), a, b, points=[x], limit=200)[0]

        dbl = integrate.quad(lambda x: rho(x) * inner(x), a, b, limit=200, epsabs=1e-10)[0]
        vbar = integrate.quad(lambda x: rho(x) * QE(x), a, b, epsabs=1e-12)[0]
        ref = -T * vbar + T * T * dbl
        assert free_energy(QE, T, cfg) == pytest.approx(ref, abs=1e-6)

    def test_low_temperature_limit(self):
        c = 0.5
        pot = models.bleher_eynard(c)
        bmin = be_minimum(c)
        errs = []
        for T in (1e-3, 1e-4):
            w = 2 * math.sqrt(T)
            cfg = seed_from_guess(pot, T, [bmin - w, bmin + w]).config
            errs.append(abs(free_energy(pot, T, cfg) / T + pot(bmin)))
        assert errs[1] < errs[0] < 0.1


class TestSecondDerivative:
    def test_width_four(self):
        assert specific_heat_one_cut(EndpointConfig([-2.0, 2.0])) == 0.0

    def test_quartic_t3(self):
        b = models.quartic_even_one_cut(3.0).beta[1]
        assert specific_heat_one_cut(models.quartic_even_one_cut(3.0)) == pytest.approx(2 * math.log(b / 2), rel=1e-14)
        assert specific_heat_one_cut(models.quartic_even_one_cut(3.0)) == pytest.approx(0.327, abs=1e-3)

    def test_wrong_phase(self):
        with pytest.raises(DomainError):
            specific_heat_one_cut(models.quartic_even_two_cut(0.5))

    @pytest.mark.parametrize("T", [0.2, 0.6, 1.3, 2.5])
    def test_against_finite_differences(self, T):
        h = 1e-2
        f = [quartic_F(T + k * h) for k in (-2, -1, 0, 1, 2)]
        fd = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h)
        assert second_derivative(quartic_config(T)) == pytest.approx(fd, abs=1e-4)

    def test_quartic_two_cut_closed_form(self):
        # symmetric two-cut quartic: d2F/dT2 = log(T)/2, frozen from finite differences of F
        for T in (0.1, 0.5, 0.9):
            assert second_derivative(quartic_config(T)) == pytest.approx(0.5 * math.log(T), abs=1e-9)

    def test_merge_point_from_one_cut_side(self):
        assert second_derivative(quartic_config(1.0)) == pytest.approx(0.0, abs=1e-14)


class TestStencils:
    @given(st.lists(st.floats(-3, 3), min_size=5, max_size=5), st.floats(-1, 1), st.floats(1e-3, 1e-1))
    @settings(max_examples=50)
    def test_central_exact_for_quartics(self, c, x, h):
        p = np.polynomial.Polynomial(c)
        assert central_derivative(p, x, h) == pytest.approx(p.deriv()(x), abs=1e-8)

    @given(st.lists(st.floats(-3, 3), min_size=4, max_size=4), st.floats(-1, 1), st.floats(1e-2, 1e-1),
           st.sampled_from([-1.0, 1.0]))
    @settings(max_examples=50)
    def test_one_sided_exact_for_cubics(self, c, x, h, sign):
        p = np.polynomial.Polynomial(c)
        h = sign * h
        assert one_sided_derivative([p(x + k * h) for k in range(4)], h) == pytest.approx(p.deriv()(x), abs=1e-8)
        assert one_sided_extrapolation([p(x + k * h) for k in range(1, 5)]) == pytest.approx(p(x), abs=1e-9)

    def test_step(self):
        assert stencil_step(0.5) == 1e-3
        assert stencil_step(3.0) == pytest.approx(3e-3)


class TestTransitions:
    @pytest.mark.parametrize("c,ref", [(0.0, 0.25), (0.5, 4 / 9)])
    def test_merge_jump(self, c, ref):
        rep = third_derivative_jump(be_merge_event(c))
        assert rep.closed_form == pytest.approx(ref, rel=1e-14)
        assert rep.numeric == pytest.approx(ref, rel=0.05)

    def test_continuity_at_merge(self):
        rep = continuity_check(be_merge_event(0.5))
        assert rep.max < 1e-7

    def test_jump_rejects_birth(self):
        from cutflow.phases import bleher_eynard_trace

        birth = bleher_eynard_trace(0.5, 1.8, 2.1, crosscheck_births=False).events[0]
        assert birth.kind == "birth"
        with pytest.raises(DomainError):
            third_derivative_jump(birth)

    def test_divergence_rejects_merge(self):
        from cutflow.thermo import birth_divergence_check

        with pytest.raises(DomainError):
            birth_divergence_check(be_merge_event(0.5))


def test_thermo_curve_quartic():
    tr = quartic_even_trace(0.5, 1.5)
    temps = np.array([0.6, 0.8, 0.995, 1.0, 1.005, 1.2, 1.4])
    cur = thermo_curve(tr, temps)
    assert np.all(np.isfinite(cur.F))
    for T, d2 in zip(cur.T, cur.d2F):
        ref = 0.5 * math.log(T) if T < 1 else 2 * math.log(quartic_config(T).beta[1] / 2)
        assert d2 == pytest.approx(ref, abs=1e-8)
    # one-sided third derivatives either side of the merge show the 1/4 jump
    below = cur.d3F[cur.T == 0.995][0]
    above = cur.d3F[cur.T == 1.005][0]
    assert below - above == pytest.approx(0.25, rel=0.05)
