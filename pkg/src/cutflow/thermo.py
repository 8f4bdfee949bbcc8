"""Free energy, the Lagrange multiplier and temperature derivatives of F.

With ``v1 = V(x) - 2T int rho(y) log|x - y| dy`` (constant for ``x`` on the
support) the planar free energy is

    F = -T int V rho + T**2 int int log|x - y| rho(x) rho(y)
      = -(T/2) (int V rho + v1),

and ``dF/dT = -v1``.  Differentiating ``v1`` once more gives

    d2F/dT2 = -2 int_{beta_2s}^inf (P_0(x)/w1(x) - 1/(x - beta_2s + 1)) dx,

which reduces to ``2 log((beta_2 - beta_1)/4)`` for one cut.  Third
derivatives come from finite differences of this second derivative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, stats

from .equilibrium import _sqrt_rest, cut_sign, density_at, integrate_against_density
from .errors import DomainError, NumericError
from .flow import FlowState, IntegrateOptions, TransitionEvent, critical_launch, integrate as integrate_flow, polish
from .geometry import EndpointConfig, c_center
from .polyops import Potential, h_polynomial

STENCIL_REL = 1e-3
_QUAD = {"epsabs": 1e-13, "epsrel": 1e-12, "limit": 200}


def _quad(f, a, b, **kw):
    with np.errstate(all="ignore"):
        val, err = integrate.quad(f, a, b, **_QUAD, **kw)
    if not math.isfinite(val):
        raise NumericError(f"quadrature failed on [{a}, {b}]")
    return val


# -- v1 and F ---------------------------------------------------------------


def _widest_cut_midpoint(config: EndpointConfig) -> float:
    a, b = max(config.cuts(), key=lambda c: c[1] - c[0])
    return 0.5 * (a + b)


def log_potential(pot: Potential, T: float, config: EndpointConfig, x: float) -> float:
    """``int rho(y) log|x - y| dy`` for ``x`` on the support.

    Every cut is integrated against the square-root endpoint weight; the cut
    holding ``x`` is split there and the logarithm absorbed into the weight.
    """
    beta = config.beta
    h = h_polynomial(pot, beta)
    total = 0.0
    for j, (a, b) in enumerate(config.cuts()):
        skip = (2 * j, 2 * j + 1)
        c = cut_sign(config, j) / (2.0 * math.pi * T)

        def smooth(y, c=c, skip=skip):
            return c * h(y) * _sqrt_rest(y, beta, skip)

        if a < x < b:
            # [a, x]: (y-a)^1/2 log(x-y) ; [x, b]: (b-y)^1/2 log(y-x)
            total += _quad(lambda y: smooth(y) * math.sqrt(b - y), a, x, weight="alg-logb", wvar=(0.5, 0.0))
            total += _quad(lambda y: smooth(y) * math.sqrt(y - a), x, b, weight="alg-loga", wvar=(0.0, 0.5))
        else:
            total += _quad(lambda y: smooth(y) * math.log(abs(x - y)), a, b, weight="alg", wvar=(0.5, 0.5))
    return total


def lagrange_multiplier(pot: Potential, T: float, config: EndpointConfig, x: float | None = None) -> float:
    """``v1 = V(x) - 2T int rho(y) log|x - y| dy``, by default at the middle of the widest cut."""
    if x is None:
        x = _widest_cut_midpoint(config)
    elif not any(a <= x <= b for a, b in config.cuts()):
        raise DomainError(f"x={x} is not on the support")
    return float(pot.V(x)) - 2.0 * T * log_potential(pot, T, config, x)


def free_energy(pot: Potential, T: float, config: EndpointConfig) -> float:
    """``F = -(T/2) (int V rho + v1)``."""
    vbar = integrate_against_density(pot, T, config, pot.V)
    return -0.5 * T * (vbar + lagrange_multiplier(pot, T, config))


# -- second derivative ------------------------------------------------------


def specific_heat_one_cut(config: EndpointConfig) -> float:
    """``d2F/dT2 = 2 log((beta_2 - beta_1)/4)`` in the one-cut phase."""
    if config.s != 1:
        raise DomainError(f"one-cut formula needs s=1, got s={config.s}")
    b1, b2 = config.beta
    return 2.0 * math.log((b2 - b1) / 4.0)


def second_derivative(config: EndpointConfig) -> float:
    """``d2F/dT2`` from the endpoints alone, for one or two cuts."""
    if config.s == 1:
        return specific_heat_one_cut(config)
    beta = config.beta
    edge = beta[-1]
    skip = (len(beta) - 1,)
    C = c_center(config)
    length = max(1.0, edge - beta[0])

    def near(x):
        return (x - C) / _sqrt_rest(x, beta, skip)

    def far(x):
        return (x - C) / math.sqrt(np.prod([x - b for b in beta])) - 1.0 / (x - edge + 1.0)

    # (x - edge)^(-1/2) near the edge, then a decaying tail
    head = _quad(near, edge, edge + length, weight="alg", wvar=(-0.5, 0.0))
    tail = _quad(far, edge + length, math.inf)
    return -2.0 * (head - math.log(length + 1.0) + tail)


# -- finite differences -----------------------------------------------------


def central_derivative(f, x: float, h: float) -> float:
    """Five-point central first derivative."""
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12.0 * h)


def one_sided_derivative(values, h: float) -> float:
    """First derivative at ``x_0`` from ``f(x_0 + k h)``, ``k = 0..3``.

    ``h`` may be negative for a stencil running to the left.
    """
    f0, f1, f2, f3 = values
    return (-11.0 * f0 + 18.0 * f1 - 9.0 * f2 + 2.0 * f3) / (6.0 * h)


def one_sided_extrapolation(values) -> float:
    """Value at ``x_0`` from ``f(x_0 + k h)``, ``k = 1..4`` (cubic extrapolation)."""
    f1, f2, f3, f4 = values
    return 4.0 * f1 - 6.0 * f2 + 4.0 * f3 - f4


def stencil_step(T: float) -> float:
    return STENCIL_REL * max(1.0, T)


# -- curves over a trace ----------------------------------------------------


@dataclass
class ThermoCurve:
    """``F``, ``v1`` and derivatives sampled along a trace.

    ``d2F`` is the closed expression in the endpoints; ``d3F`` is its
    finite-difference derivative with step ``step`` (one-sided within
    ``10 step`` of a transition).
    """

    T: np.ndarray
    F: np.ndarray
    v1: np.ndarray
    d2F: np.ndarray
    d3F: np.ndarray
    step: np.ndarray


def thermo_curve(trace, temperatures) -> ThermoCurve:
    """Evaluate the free energy and its derivatives at ``temperatures`` along ``trace``."""
    T_c = [ev.T_c for ev in trace.events]
    rows = []
    for T in temperatures:
        T = float(T)
        config = trace.config_at(T)
        h = stencil_step(T)
        F = free_energy(trace.pot, T, config)
        v1 = lagrange_multiplier(trace.pot, T, config)
        d2 = second_derivative(config)
        near = [tc for tc in T_c if abs(T - tc) < 10 * h]

        def d2_at(TT):
            return second_derivative(trace.config_at(TT))

        if near:
            direction = 1.0 if T >= near[0] else -1.0
            d3 = one_sided_derivative([d2_at(T + direction * k * h) for k in range(4)], direction * h)
        else:
            lo, hi = T - 2 * h, T + 2 * h
            if lo <= trace.T_min or hi >= trace.T_max:
                direction = 1.0 if lo <= trace.T_min else -1.0
                d3 = one_sided_derivative([d2_at(T + direction * k * h) for k in range(4)], direction * h)
            else:
                d3 = central_derivative(d2_at, T, h)
        rows.append((T, F, v1, d2, d3, h))
    arr = np.array(rows)
    return ThermoCurve(*(arr[:, i] for i in range(6)))


# -- transitions ------------------------------------------------------------


def _side_configs(event: TransitionEvent, side: str, temperatures) -> list[EndpointConfig]:
    """Hodograph solutions at ``temperatures`` on one side of ``event``."""
    pot = event.pot
    start = critical_launch(event, side)
    sign = 1.0 if side == "above" else -1.0
    far = max(temperatures, key=lambda T: sign * T)
    if sign * (far - start.T) <= 0:
        return [polish(pot, T, start.config) for T in temperatures]
    opts = IntegrateOptions(merge_monitor=False, birth_monitor=False)
    traj, _ = integrate_flow(pot, FlowState(start.T, start.config), far, opts)
    out = []
    for T in temperatures:
        guess = traj.config_at(T) if sign * (T - start.T) >= 0 else start.config
        out.append(polish(pot, T, guess))
    return out


def _is_be_normalized(event: TransitionEvent) -> bool:
    b1, b2 = event.one_cut.beta
    return abs(b1 + 2.0) < 1e-8 and abs(b2 - 2.0) < 1e-8


@dataclass
class JumpReport:
    """Jump of ``d3F/dT3`` across a merge (two-cut side minus one-cut side)."""

    T_c: float
    beta: float
    closed_form: float | None
    numeric: float
    d3F_two_cut: float
    d3F_one_cut: float
    step: float


def third_derivative_jump(event: TransitionEvent, step: float | None = None) -> JumpReport:
    """Closed-form and finite-difference jump of ``d3F/dT3`` at a merge.

    The closed form ``4/(4 - beta**2)**2`` applies when the critical one-cut
    support is ``(-2, 2)``; otherwise only the numeric jump is returned.
    """
    if event.kind != "merge":
        raise DomainError("third-derivative jumps are finite only at merges; use birth_divergence_check")
    T_c = event.T_c
    h = stencil_step(T_c) if step is None else step
    d2_c = second_derivative(event.one_cut)
    d3 = {}
    for side, sign in (("above", 1.0), ("below", -1.0)):
        temps = [T_c + sign * k * h for k in (1, 2, 3)]
        d2 = [d2_c] + [second_derivative(c) for c in _side_configs(event, side, temps)]
        d3[side] = one_sided_derivative(d2, sign * h)
    two, one = ("below", "above") if event.two_cut_side == "below" else ("above", "below")
    closed = 4.0 / (4.0 - event.beta**2) ** 2 if _is_be_normalized(event) else None
    return JumpReport(T_c, event.beta, closed, d3[two] - d3[one], d3[two], d3[one], h)


@dataclass
class ContinuityReport:
    """Mismatch of ``F``, ``dF/dT`` and ``d2F/dT2`` across a transition."""

    T_c: float
    kind: str
    dF: float
    dF1: float
    dF2: float

    @property
    def max(self) -> float:
        return max(abs(self.dF), abs(self.dF1), abs(self.dF2))


def continuity_check(event: TransitionEvent, offsets=(1.0, 2.0, 3.0, 4.0)) -> ContinuityReport:
    """Extrapolate ``F``, ``-v1`` and ``d2F`` to ``T_c`` from each side and compare.

    Each side uses the launch configurations at ``t = k t_0`` (``t_0`` the
    default launch offset) and cubic one-sided extrapolation.
    """
    pot = event.pot
    t0 = 1e-6 * event.T_c
    values = {}
    for side, sign in (("above", 1.0), ("below", -1.0)):
        rows = []
        for k in offsets:
            st = critical_launch(event, side, k * t0)
            rows.append((free_energy(pot, st.T, st.config),
                         -lagrange_multiplier(pot, st.T, st.config),
                         second_derivative(st.config)))
        rows = np.array(rows)
        values[side] = [one_sided_extrapolation(rows[:, i]) for i in range(3)]
    d = np.subtract(values["above"], values["below"])
    return ContinuityReport(event.T_c, event.kind, float(d[0]), float(d[1]), float(d[2]))


@dataclass
class DivergenceReport:
    """Fit of ``d3F ~ A t**p / log(t)**2`` on the two-cut side of a birth."""

    t: np.ndarray
    d3F: np.ndarray
    exponent: float
    amplitude: float
    amplitude_refined: float
    r_squared: float
    conclusive: bool


def birth_divergence_check(event: TransitionEvent, t_values=None) -> DivergenceReport:
    """Confirm that ``d3F/dT3`` diverges at a birth as ``t**-1 (log t)**-2``.

    ``d3F`` is differenced from the second derivative with step ``t/10``,
    then again with ``t/20``.  The fit is conclusive when the regression is
    tight and the two resolutions give amplitudes within 10%.
    """
    if event.kind != "birth":
        raise DomainError("divergence check applies to birth events only")
    t_values = np.geomspace(1e-3, 1e-5, 7) if t_values is None else np.asarray(t_values, dtype=float)
    sign = 1.0 if event.two_cut_side == "above" else -1.0
    pot = event.pot

    def d3_at(t, frac):
        eta = frac * t
        temps = [event.T_c + sign * (t + k * eta) for k in (-2, -1, 1, 2)]
        cfgs = _side_configs(event, event.two_cut_side, temps)
        f = [second_derivative(c) for c in cfgs]
        return sign * (f[0] - 8 * f[1] + 8 * f[2] - f[3]) / (12.0 * eta)

    def fit(d3):
        y = np.log(np.abs(d3) * np.log(t_values) ** 2)
        res = stats.linregress(np.log(t_values), y)
        return res.slope, math.exp(res.intercept), res.rvalue**2

    d3 = np.array([d3_at(t, 0.1) for t in t_values])
    d3_fine = np.array([d3_at(t, 0.05) for t in t_values])
    p, A, r2 = fit(d3)
    _, A_fine, _ = fit(d3_fine)
    conclusive = bool(r2 > 0.99 and abs(A_fine / A - 1.0) < 0.1 and np.all(d3 > 0) == np.all(d3_fine > 0))
    return DivergenceReport(t_values, d3, float(p), float(A), float(A_fine), float(r2), conclusive)
