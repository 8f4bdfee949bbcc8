import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from cutflow.elliptic import ellip_e, ellip_k, ellip_pi
from cutflow.errors import DomainError
from cutflow.geometry import (
    EndpointConfig,
    c_center,
    c_k0_two_cut,
    gap_moments,
    gap_moments_chebyshev,
    p_k,
    p_k_one_cut,
    p_k_two_cut,
    reduce_config,
)
from cutflow.polyops import Polynomial


@st.composite
def two_cut(draw, min_gap=0.05):
    b1 = draw(st.floats(-3.0, 0.0))
    gaps = draw(st.lists(st.floats(min_gap, 2.0), min_size=3, max_size=3))
    return EndpointConfig(b1 + np.cumsum([0.0, *gaps]))


def gap_integral(poly, config):
    b1, b2, b3, b4 = config.beta
    # weight (x-b2)^(-1/2) (b3-x)^(-1/2) is absorbed by quad
    f = lambda x: poly(x) / math.sqrt((x - b1) * (b4 - x))
    return integrate.quad(f, b2, b3, weight="alg", wvar=(-0.5, -0.5), epsabs=1e-11, epsrel=1e-11)[0]


def moduli(config):
    b1, b2, b3, b4 = config.beta
    r = (b3 - b2) / (b4 - b2)
    s = (b4 - b1) * (b3 - b2) / ((b3 - b1) * (b4 - b2))
    return r, s


class TestEndpointConfig:
    def test_rejects_unsorted(self):
        with pytest.raises(DomainError):
            EndpointConfig([1.0, 0.0])

    def test_rejects_three_cuts(self):
        with pytest.raises(DomainError):
            EndpointConfig(np.arange(6.0))

    def test_cut_bound(self):
        from cutflow.polyops import Potential

        with pytest.raises(DomainError):
            EndpointConfig([-2, -1, 1, 2]).check_potential(Potential([0.0, 1.0]))

    def test_coalesced_pair(self):
        assert EndpointConfig([-2, 1, 1, 2], allow_coincident=True).coalesced_pair() == 2
        assert EndpointConfig([-2, 1, 2, 3]).coalesced_pair() is None


class TestOneCut:
    def test_first_polynomials(self):
        b1, b2 = -1.3, 2.1
        cfg = EndpointConfig([b1, b2])
        assert p_k_one_cut(0, cfg).allclose(Polynomial([1.0]))
        assert p_k_one_cut(1, cfg).allclose(Polynomial([-(b1 + b2) / 4, 0.5]), atol=1e-14)
        p2 = Polynomial([-((b1 - b2) ** 2) / 8, -(b1 + b2) / 2, 1.0])
        assert p_k_one_cut(2, cfg).allclose(p2, atol=1e-14)

    def test_wrong_phase(self):
        with pytest.raises(DomainError):
            p_k_one_cut(0, EndpointConfig([-2, -1, 1, 2]))
        with pytest.raises(DomainError):
            p_k_two_cut(0, EndpointConfig([-2, 2]))


class TestTwoCut:
    CFG = EndpointConfig([-2.0, 0.6, 1.4, 1.9])

    def test_p0_closed_form(self):
        b1, b2, b3, b4 = self.CFG.beta
        r, s = moduli(self.CFG)
        c = b4 - (b4 - b3) * ellip_pi(r, s) / ellip_k(s)
        assert p_k_two_cut(0, self.CFG).allclose(Polynomial([-c, 1.0]), atol=1e-13)
        assert c_center(self.CFG) == pytest.approx(c, abs=1e-13)
        assert abs(gap_integral(p_k_two_cut(0, self.CFG), self.CFG)) < 1e-9

    def test_c10_closed_form(self):
        b1, b2, b3, b4 = self.CFG.beta
        r, s = moduli(self.CFG)
        base = p_k_two_cut(1, self.CFG) - c_k0_two_cut(1, self.CFG)
        # closed form in E/K; the constant of the base part is folded in
        closed = (b1 * b4 + b2 * b3) / 4 + (b4 - b2) * (b3 - b1) * ellip_e(s) / (4 * ellip_k(s))
        assert base.coef(0) + c_k0_two_cut(1, self.CFG) == pytest.approx(closed, abs=1e-12)
        assert abs(gap_integral(p_k_two_cut(1, self.CFG), self.CFG)) < 1e-9

    def test_symmetric_even_constants_vanish(self):
        cfg = EndpointConfig([-2.0, -0.5, 0.5, 2.0])
        assert abs(c_k0_two_cut(0, cfg)) < 1e-14
        assert abs(c_k0_two_cut(2, cfg)) < 1e-13

    @pytest.mark.parametrize("cfg", [[-2.0, 1.0, 1.0, 2.0], [-2.0, -1.0, 0.5, 0.5], [-2.0, -0.3, -0.3, 2.0]])
    def test_degenerate_p0(self, cfg):
        cfg = EndpointConfig(cfg, allow_coincident=True)
        beta = cfg.beta[cfg.coalesced_pair() - 1]
        assert p_k_two_cut(0, cfg).allclose(Polynomial([-beta, 1.0]), atol=1e-13)

    def test_center_degenerate(self):
        assert c_center(EndpointConfig([-2, 1, 1, 2], allow_coincident=True)) == 1.0

    @pytest.mark.parametrize("d", [1e-2, 1e-3, 1e-4])
    def test_center_near_merge(self, d):
        cfg = EndpointConfig([-2.0, 1.0 - d / 2, 1.0 + d / 2, 2.0])
        assert abs(c_center(cfg) - (cfg.beta[1] + d / 2)) <= 2 * d * d

    def test_center_near_birth(self):
        # C approaches the coalescing exterior pair logarithmically
        prev = None
        for d in (1e-4, 1e-8, 1e-12):
            cfg = EndpointConfig([-2.0, 0.6, 1.4, 1.4 + d])
            dist = cfg.beta[3] - c_center(cfg)
            assert 0 < dist
            if prev is not None:
                assert dist < prev
            prev = dist

    @given(two_cut())
    @settings(max_examples=60, deadline=None)
    def test_normalization_and_degree(self, cfg):
        for k in range(5):
            p = p_k_two_cut(k, cfg)
            assert p.degree == (1 if k == 0 else k + 1)
            assert p.coef(p.degree) == pytest.approx(1.0 if k == 0 else k / 2)
            scale = max(1.0, np.abs(cfg.array).max()) ** (k + 1)
            assert abs(gap_integral(p, cfg)) < 1e-8 * scale

    @given(two_cut())
    @settings(max_examples=60, deadline=None)
    def test_center_in_gap(self, cfg):
        c = c_center(cfg)
        assert cfg.beta[1] < c < cfg.beta[2]

    @given(two_cut(min_gap=0.3))
    @settings(max_examples=40, deadline=None)
    def test_moments_against_chebyshev(self, cfg):
        mu = gap_moments(cfg, 6)
        ref = gap_moments_chebyshev(cfg, 6, nodes=256)
        scale = max(1.0, np.abs(cfg.array).max()) ** np.arange(7)
        assert np.abs(mu - ref).max() <= 1e-9 * scale.max()


class TestReduction:
    def test_interior(self):
        cfg = EndpointConfig([-2.0, 0.3, 0.3, 2.0], allow_coincident=True)
        assert reduce_config(cfg, 2).beta == (-2.0, 2.0)

    def test_trailing(self):
        cfg = EndpointConfig([-2.0, 0.3, 1.1, 1.1], allow_coincident=True)
        assert reduce_config(cfg, 3).beta == (-2.0, 0.3)

    def test_not_coalesced(self):
        with pytest.raises(DomainError):
            reduce_config(EndpointConfig([-2.0, 0.3, 0.4, 2.0]), 2)

    @given(st.floats(-3.0, 0.0), st.floats(0.1, 2.0), st.floats(0.1, 2.0), st.integers(1, 3))
    @settings(max_examples=60, deadline=None)
    def test_degeneration_identity(self, b1, g1, g2, l):
        one = [b1, b1 + g1 + g2]
        beta = {1: b1 - g1, 2: b1 + g1, 3: one[1] + g1}[l]
        two = sorted([*one, beta, beta])
        cfg2 = EndpointConfig(two, allow_coincident=True)
        cfg1 = EndpointConfig(one)
        z = np.linspace(-4, 4, 20)
        lin = Polynomial([-beta, 1.0])
        for k in range(3):
            lhs = p_k(k, cfg2)(z)
            rhs = (lin * p_k(k, cfg1))(z)
            assert np.abs(lhs - rhs).max() < 1e-9 * max(1.0, np.abs(rhs).max())
