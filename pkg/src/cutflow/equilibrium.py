"""Eigenvalue density, normalization, hodograph residuals and admissibility.

On a cut the boundary value of ``w1`` from above is ``i (-1)**j |w(x)|``,
where ``j`` counts the cuts to the right of ``x``.  Off the support ``w1`` is
real and equals ``(-1)**m |w(x)|`` with ``2m`` endpoints to the right.  Both
rules follow from continuing ``w1 ~ z**s`` in from infinity through the
upper half plane, picking up a phase ``pi/2`` at each endpoint passed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .errors import DomainError, NumericError
from .geometry import EndpointConfig, p_k
from .polyops import Polynomial, Potential, h_polynomial

RESIDUAL_TOL = 1e-6
EXTERIOR_SPAN = 10.0
N_SAMPLES = 512
MARGIN_TOL = 1e-8

_GL_X, _GL_W = np.polynomial.legendre.leggauss(8)


def abs_w(x, beta) -> np.ndarray:
    """``|w(x)| = sqrt(|prod(x - beta_i)|)``."""
    x = np.asarray(x, dtype=float)
    out = np.ones_like(x)
    for b in beta:
        out = out * np.abs(x - b)
    return np.sqrt(out)


def _sqrt_rest(x, beta, skip: tuple[int, int]) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = np.ones_like(x)
    for i, b in enumerate(beta):
        if i not in skip:
            out = out * np.abs(x - b)
    return np.sqrt(out)


def locate_cut(config: EndpointConfig, x: float) -> int | None:
    """0-based index of the cut containing ``x`` (counted from the left)."""
    for j, (a, b) in enumerate(config.cuts()):
        if a < x < b:
            return j
    return None


def cut_sign(config: EndpointConfig, j: int) -> float:
    """``(-1)**(cuts to the right)`` for cut ``j`` counted from the left."""
    return -1.0 if (config.s - 1 - j) % 2 else 1.0


def w1_real(x, beta) -> np.ndarray:
    """Real value of ``w1`` off the support."""
    x = np.asarray(x, dtype=float)
    right = np.zeros_like(x)
    for b in beta:
        right = right + (x < b)
    sign = np.where((right // 2) % 2 == 1, -1.0, 1.0)
    return sign * abs_w(x, beta)


def density_at(pot: Potential, T: float, config: EndpointConfig, x: float, h: Polynomial | None = None) -> float:
    """Equilibrium density ``rho(x) = h(x) w1_+(x) / (2 pi i T)`` inside a cut."""
    if not T > 0:
        raise DomainError(f"temperature must be positive, got {T}")
    j = locate_cut(config, x)
    if j is None:
        raise DomainError(f"x={x} lies outside the support {config.beta}")
    if h is None:
        h = h_polynomial(pot, config.beta)
    return float(cut_sign(config, j) * h(x) * abs_w(x, config.beta) / (2.0 * math.pi * T))


def _cut_integral(f, config: EndpointConfig, j: int) -> float:
    """``int_cut f(x) sqrt((x-a)(b-x)) dx`` with the square root absorbed."""
    a, b = config.cuts()[j]
    val, err = integrate.quad(f, a, b, weight="alg", wvar=(0.5, 0.5), epsabs=1e-14, epsrel=1e-12, limit=200)
    if not np.isfinite(val):
        raise NumericError(f"density quadrature failed on cut {j}")
    return val


def density_norm(pot: Potential, T: float, config: EndpointConfig) -> float:
    """Total mass ``int_J rho dx`` by endpoint-absorbing quadrature on each cut."""
    h = h_polynomial(pot, config.beta)
    total = 0.0
    for j in range(config.s):
        skip = (2 * j, 2 * j + 1)
        sign = cut_sign(config, j)
        total += sign * _cut_integral(lambda x: h(x) * _sqrt_rest(x, config.beta, skip), config, j)
    return total / (2.0 * math.pi * T)


def integrate_against_density(pot: Potential, T: float, config: EndpointConfig, g) -> float:
    """``int_J g(x) rho(x) dx`` for a smooth ``g``."""
    h = h_polynomial(pot, config.beta)
    total = 0.0
    for j in range(config.s):
        skip = (2 * j, 2 * j + 1)
        sign = cut_sign(config, j)
        total += sign * _cut_integral(lambda x: g(x) * h(x) * _sqrt_rest(x, config.beta, skip), config, j)
    return total / (2.0 * math.pi * T)


def hodograph_residual(pot: Potential, T: float, config: EndpointConfig) -> np.ndarray:
    """Residuals ``sum_k t_k P_k(beta_i)`` with ``t_0 = -T``, one per endpoint."""
    if not T > 0:
        raise DomainError(f"temperature must be positive, got {T}")
    config.check_potential(pot)
    total = Polynomial.zero()
    for k in range(pot.degree + 1):
        tk = pot.coupling(k, T)
        if tk != 0.0:
            total = total + tk * p_k(k, config)
    return np.asarray(total(config.array), dtype=float)


@dataclass
class DensityProfile:
    config: EndpointConfig
    T: float
    samples: list[np.ndarray]  # one (n, 2) array of (x, rho) per cut
    norm: float


def density_profile(pot: Potential, T: float, config: EndpointConfig, n: int = 201) -> DensityProfile:
    """Sample ``rho`` on each cut, endpoints included, plus the total mass."""
    h = h_polynomial(pot, config.beta)
    samples = []
    for j, (a, b) in enumerate(config.cuts()):
        x = 0.5 * (a + b) - 0.5 * (b - a) * np.cos(np.linspace(0.0, math.pi, n))
        x[0], x[-1] = a, b
        rho = cut_sign(config, j) * h(x) * abs_w(x, config.beta) / (2.0 * math.pi * T)
        samples.append(np.column_stack([x, rho]))
    return DensityProfile(config, T, samples, density_norm(pot, T, config))


# -- exterior and gap inequalities ------------------------------------------


@dataclass
class RegionMargin:
    """Cumulative integral ``G(x)`` of ``h w1`` from a support edge.

    ``values`` is signed so that admissibility requires ``values >= 0``.
    ``normalized`` divides by the ``|x - edge|**1.5`` onset so that the
    edge itself does not read as saturation.
    """

    name: str
    x: np.ndarray
    values: np.ndarray
    normalized: np.ndarray

    @property
    def margin(self) -> float:
        return float(np.min(self.normalized))

    @property
    def argmin(self) -> float:
        return float(self.x[int(np.argmin(self.normalized))])

    @property
    def satisfied(self) -> bool:
        return self.margin > MARGIN_TOL


def _cumulative(integrand, u: np.ndarray) -> np.ndarray:
    """Cumulative integral of ``integrand(u)`` over the grid ``u`` (Gauss panels)."""
    a, b = u[:-1], u[1:]
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    nodes = mid[:, None] + half[:, None] * _GL_X[None, :]
    panel = (integrand(nodes) * _GL_W[None, :]).sum(axis=1) * half
    return np.concatenate([[0.0], np.cumsum(panel)])


def exterior_margin(h: Polynomial, config: EndpointConfig, side: str, span: float = EXTERIOR_SPAN,
                    n: int = N_SAMPLES) -> RegionMargin:
    """Inequality margin to the left (``side='left'``) or right of the support.

    Uses ``x = edge +- u**2`` so that the square-root zero of ``w1`` at the
    edge becomes a smooth factor ``u``.
    """
    beta = config.beta
    if side == "right":
        edge, direction, skip, w1_sign = beta[-1], 1.0, (len(beta) - 1,), 1.0
    elif side == "left":
        edge, direction, skip, w1_sign = beta[0], -1.0, (0,), (-1.0) ** config.s
    else:
        raise DomainError(f"side must be 'left' or 'right', got {side!r}")
    umax = math.sqrt(span)
    u = 0.5 * umax * (1.0 - np.cos(np.linspace(0.0, math.pi, n)))

    def f(uu):
        xx = edge + direction * uu * uu
        return 2.0 * uu * uu * w1_sign * h(xx) * _sqrt_rest(xx, beta, skip)

    G = _cumulative(f, u)
    x = edge + direction * u * u
    # right: int_{edge}^x h w1 >= 0.  left: int_x^{edge} h w1 <= 0, and that
    # integral equals G in the u variable.
    values = G if side == "right" else -G
    normalized = np.empty_like(values)
    normalized[1:] = values[1:] / np.abs(x[1:] - edge) ** 1.5
    normalized[0] = normalized[1]
    return RegionMargin("exterior_" + side, x, values, normalized)


def gap_margin(h: Polynomial, config: EndpointConfig, j: int = 0, n: int = N_SAMPLES) -> RegionMargin:
    """Margin of ``int_{beta_2j}^x h w1 >= 0`` across gap ``j`` (0-based)."""
    beta = config.beta
    if not 0 <= j < config.s - 1:
        raise DomainError(f"gap index {j} out of range for s={config.s}")
    a, b = beta[2 * j + 1], beta[2 * j + 2]
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    skip = (2 * j + 1, 2 * j + 2)
    right = len(beta) - (2 * j + 2)
    w1_sign = -1.0 if (right // 2) % 2 else 1.0
    phi = np.linspace(0.0, math.pi, n)

    def f(pp):
        xx = mid - half * np.cos(pp)
        return w1_sign * half * half * np.sin(pp) ** 2 * h(xx) * _sqrt_rest(xx, beta, skip)

    G = _cumulative(f, phi)
    x = mid - half * np.cos(phi)
    scale = np.abs((x - a) * (b - x)) / (b - a)
    normalized = np.empty_like(G)
    normalized[1:-1] = G[1:-1] / scale[1:-1] ** 1.5
    normalized[0], normalized[-1] = normalized[1], normalized[-2]
    return RegionMargin(f"gap_{j + 1}", x, G, normalized)


_SAT_X, _SAT_W = np.polynomial.legendre.leggauss(48)


def exterior_saturation(h: Polynomial, config: EndpointConfig) -> list[tuple[str, float, float]]:
    """Interior minima of the exterior inequalities.

    The exterior margin is stationary where ``h`` vanishes; the minima are
    the zeros of ``h`` where the margin turns from falling to rising.  A new
    cut is born when one of these values reaches zero.

    Returns
    -------
    list of (side, x, value)
        ``value < 0`` means the inequality is violated at ``x``.
    """
    beta = config.beta
    dh = h.deriv()
    out = []
    for r in h.roots():
        if abs(r.imag) > 1e-9 * max(1.0, abs(r.real)):
            continue
        x = float(r.real)
        if x > beta[-1] and dh(x) > 0:
            side, edge, direction, skip, sign = "right", beta[-1], 1.0, (len(beta) - 1,), 1.0
        elif x < beta[0] and dh(x) < 0:
            side, edge, direction, skip, sign = "left", beta[0], -1.0, (0,), -((-1.0) ** config.s)
        else:
            continue
        # x = edge +- u**2 absorbs the square-root zero at the edge
        umax = math.sqrt(abs(x - edge))
        u = 0.5 * umax * (1.0 + _SAT_X)
        xx = edge + direction * u * u
        f = 2.0 * u * u * h(xx) * _sqrt_rest(xx, beta, skip)
        out.append((side, x, sign * 0.5 * umax * float(np.dot(_SAT_W, f))))
    return out


@dataclass
class AdmissibilityReport:
    residual: float
    density_positive: bool
    h_nonvanishing_on_support: bool
    min_h_on_support: float
    exterior_inequalities: dict = field(default_factory=dict)  # name -> (satisfied, margin)
    verdict: str = "inadmissible"

    @property
    def regular(self) -> bool:
        return self.verdict == "regular"


def admissibility(pot: Potential, T: float, config: EndpointConfig, n: int = N_SAMPLES) -> AdmissibilityReport:
    """Classify a candidate configuration as regular, singular or inadmissible.

    Regular needs the hodograph residual below ``1e-6``, a strictly positive
    density, ``h`` free of zeros on the closed support, and strict exterior
    and gap inequalities.  A violated condition makes the configuration
    inadmissible; a condition met only with equality makes it singular.
    """
    res = float(np.max(np.abs(hodograph_residual(pot, T, config))))
    if not res <= RESIDUAL_TOL:
        return AdmissibilityReport(res, False, False, float("nan"), {}, "inadmissible")
    h = h_polynomial(pot, config.beta)
    signed_h = []
    for j, (a, b) in enumerate(config.cuts()):
        x = 0.5 * (a + b) - 0.5 * (b - a) * np.cos(np.linspace(0.0, math.pi, n))
        signed_h.append(cut_sign(config, j) * h(x))
    # rho is signed_h times |w| / (2 pi T), and |w| > 0 strictly inside a cut
    density_positive = all(bool(np.all(v[1:-1] > 0)) for v in signed_h)
    signed_h = np.concatenate(signed_h)
    hscale = max(1.0, float(np.max(np.abs(signed_h))))
    min_h = float(np.min(signed_h))
    # a double zero of h between sample points would otherwise go unseen
    for r in h.roots():
        if abs(r.imag) <= 1e-9 * max(1.0, abs(r.real)) and any(a <= r.real <= b for a, b in config.cuts()):
            min_h = min(min_h, 0.0)
    h_ok = min_h > 1e-10 * hscale

    regions = [exterior_margin(h, config, "left", n=n), exterior_margin(h, config, "right", n=n)]
    regions += [gap_margin(h, config, j, n=n) for j in range(config.s - 1)]
    ineq = {r.name: (r.satisfied, r.margin) for r in regions}

    if min_h < -1e-10 * hscale or any(m < -MARGIN_TOL for _, m in ineq.values()):
        verdict = "inadmissible"
    elif h_ok and density_positive and all(ok for ok, _ in ineq.values()):
        verdict = "regular"
    else:
        verdict = "singular"
    return AdmissibilityReport(res, density_positive, h_ok, min_h, ineq, verdict)
