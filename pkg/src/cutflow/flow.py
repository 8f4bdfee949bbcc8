"""Temperature flow of the endpoints and the transitions that end it.

Away from critical points the endpoints obey

    d beta_i / dT = 4 P_0(beta_i) / (h(beta_i) prod_{j != i} (beta_i - beta_j))

with ``P_0 = 1`` for one cut and ``P_0 = z - C`` for two cuts.  The
integrator steps this system with guards on the quantities that vanish at
a transition: the smallest endpoint spacing, ``|h|`` at the endpoints and,
for one cut, the minimum of ``h`` over the cut (a double zero of ``h``
inside the cut is where two cuts merge).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize
from scipy.integrate import DOP853, OdeSolution

from . import models
from .equilibrium import RESIDUAL_TOL, admissibility, exterior_saturation, hodograph_residual
from .errors import DomainError, IntegrationError, NumericError, SingularDensityError, SingularityError
from .geometry import EndpointConfig, c_center, p_k
from .polyops import Polynomial, Potential, h_polynomial

MIN_GAP = 1e-6
# Closing interior gaps are stopped this far (relative to max(1, T)) from the
# predicted merge; closer in the hodograph residual no longer pins the state.
APPROACH_T = 1e-5
MIN_H = 1e-8
LAUNCH_OFFSET = 1e-6


@dataclass(frozen=True)
class FlowState:
    T: float
    config: EndpointConfig
    velocity: np.ndarray | None = None

    def with_velocity(self, pot: Potential) -> "FlowState":
        return FlowState(self.T, self.config, endpoint_velocity(pot, self.config))


# -- velocities -------------------------------------------------------------


def _pair_factor(l: int) -> str:
    """Name of the factor for the 1-based adjacent pair ``l``."""
    return "width" if l % 2 == 1 else "gap"


def _denominators(pot: Potential, config: EndpointConfig):
    beta = config.array
    gaps = np.diff(beta)
    if np.any(gaps <= 0):
        l = int(np.argmin(gaps)) + 1
        raise SingularityError(f"beta_{l} and beta_{l + 1} coincide", factor=_pair_factor(l), index=l)
    h = h_polynomial(pot, beta)
    hb = np.asarray(h(beta), dtype=float)
    # zero up to the rounding of evaluating h at the endpoints
    scale = np.abs(h.coeffs) @ (max(1.0, float(np.abs(beta).max())) ** np.arange(len(h.coeffs)))
    if np.any(np.abs(hb) <= 64 * np.finfo(float).eps * scale):
        i = int(np.argmin(np.abs(hb)))
        raise SingularityError(f"h vanishes at beta_{i + 1}", factor="h", index=i + 1)
    diff = beta[:, None] - beta[None, :]
    np.fill_diagonal(diff, 1.0)
    return h, hb, diff.prod(axis=1)


def p0_at_endpoints(config: EndpointConfig) -> np.ndarray:
    if config.s == 1:
        return np.ones(2)
    return config.array - c_center(config)


def endpoint_velocity(pot: Potential, config: EndpointConfig) -> np.ndarray:
    """``d beta / dT`` for a regular configuration.

    Raises
    ------
    SingularityError
        If two endpoints coincide or ``h`` vanishes at an endpoint; the
        ``factor`` attribute names which.
    """
    _, hb, prod = _denominators(pot, config)
    return 4.0 * p0_at_endpoints(config) / (hb * prod)


def whitham_velocity(n: int, pot: Potential, config: EndpointConfig) -> np.ndarray:
    """``d beta / d t_n = -4 P_n(beta_i) / (h(beta_i) prod_{j!=i}(beta_i - beta_j))``."""
    if not 0 <= n <= pot.degree:
        raise DomainError(f"n must lie in [0, {pot.degree}], got {n}")
    _, hb, prod = _denominators(pot, config)
    pn = p_k(n, config)
    return -4.0 * np.asarray(pn(config.array), dtype=float) / (hb * prod)


def min_h_on_cut(h: Polynomial, a: float, b: float) -> tuple[float, float]:
    """Minimum of ``h`` over ``[a, b]`` and where it is attained."""
    cand = [a, b]
    for r in h.deriv().roots():
        if abs(r.imag) < 1e-9 * max(1.0, abs(r.real)) and a < r.real < b:
            cand.append(float(r.real))
    vals = [float(h(x)) for x in cand]
    i = int(np.argmin(vals))
    return vals[i], cand[i]


# -- polishing --------------------------------------------------------------


def polish(pot: Potential, T: float, config: EndpointConfig, tol: float = 1e-11) -> EndpointConfig:
    """Newton-type correction of ``config`` onto the hodograph solution at ``T``."""
    n = len(config.beta)

    def fun(b):
        try:
            return hodograph_residual(pot, T, EndpointConfig(b))
        except (DomainError, SingularityError):
            return np.full(n, 1e6)

    sol = optimize.root(fun, config.array, method="hybr", options={"xtol": 1e-15})
    out = EndpointConfig(sol.x)
    res = float(np.max(np.abs(hodograph_residual(pot, T, out))))
    if not res <= tol:
        raise NumericError(f"hodograph polish stalled at residual {res:.3e} (T={T})")
    return out


# -- integration ------------------------------------------------------------


@dataclass
class IntegrateOptions:
    rtol: float = 1e-10
    atol: float = 1e-10
    max_step_fraction: float = 0.01
    min_gap: float = MIN_GAP
    min_h: float = MIN_H
    approach_t: float = APPROACH_T
    merge_monitor: bool = True
    birth_monitor: bool = True
    residual_tol: float = RESIDUAL_TOL
    check_residual: bool = True


@dataclass
class Trajectory:
    """Accepted integrator steps for one phase, in integration order."""

    s: int
    T: np.ndarray
    beta: np.ndarray
    velocity: np.ndarray
    cause: str  # "range_end" | "event" | "collapse"
    guard: str | None
    dense: _EndpointDense | None
    max_residual: float
    crossing: tuple[float, float] | None = None  # step bracketing a guard crossing

    @property
    def T_start(self) -> float:
        return float(self.T[0])

    @property
    def T_end(self) -> float:
        return float(self.T[-1])

    def config_at(self, T: float) -> EndpointConfig:
        lo, hi = sorted((self.T_start, self.T_end))
        if not lo - 1e-12 <= T <= hi + 1e-12:
            raise DomainError(f"T={T} outside the trajectory range [{lo}, {hi}]")
        return EndpointConfig(self.dense(T))

    def state(self, i: int = -1) -> FlowState:
        return FlowState(float(self.T[i]), EndpointConfig(self.beta[i]), self.velocity[i])


def _guards(pot: Potential, beta: np.ndarray, opts: IntegrateOptions, velocity: np.ndarray | None = None,
            direction: float = 1.0, T: float = 1.0) -> dict[str, float]:
    h = h_polynomial(pot, beta)
    g = {
        "gap": float(np.min(np.diff(beta))) - opts.min_gap,
        "h": float(np.min(np.abs(h(beta)))) - opts.min_h,
    }
    if len(beta) == 4 and velocity is not None:
        # time left before the interior gap closes, from gap ~ sqrt(T_c - T)
        rate = direction * (velocity[2] - velocity[1])
        gap = beta[2] - beta[1]
        left = gap / (2.0 * -rate) if rate < 0 else math.inf
        g["approach"] = left - opts.approach_t * max(1.0, T)
    if opts.merge_monitor and len(beta) == 2:
        g["merge"] = min_h_on_cut(h, beta[0], beta[1])[0]
    if opts.birth_monitor and len(beta) == 2:
        sat = exterior_saturation(h, EndpointConfig(beta))
        g["birth"] = min((v for _, _, v in sat), default=math.inf)
    return g


class _BadStage(Exception):
    pass


# The integrator works with the first endpoint and the logarithms of the
# spacings.  Error control is then relative on every gap and width, which
# matters when a cut shrinks to a point or a gap closes.


def _to_internal(beta: np.ndarray) -> np.ndarray:
    return np.concatenate([[beta[0]], np.log(np.diff(beta))])


def _from_internal(y: np.ndarray) -> np.ndarray:
    return np.concatenate([[y[0]], y[0] + np.cumsum(np.exp(y[1:]))])


class _EndpointDense:
    """Dense output in endpoint coordinates."""

    def __init__(self, sol: OdeSolution):
        self.sol = sol

    def __call__(self, T: float) -> np.ndarray:
        return _from_internal(self.sol(T))


def integrate(pot: Potential, seed: FlowState, T_target: float, opts: IntegrateOptions | None = None):
    """Integrate the endpoint flow from ``seed`` toward ``T_target``.

    Returns
    -------
    trajectory : Trajectory
    event : TransitionEvent or None
        Set when a guard fired and the singularity was classified.

    Raises
    ------
    IntegrationError
        If the step size underflows before a guard fires.
    SingularDensityError
        If ``h`` vanishes at an endpoint with no endpoint collision.
    """
    opts = opts or IntegrateOptions()
    seed.config.check_potential(pot)
    res0 = float(np.max(np.abs(hodograph_residual(pot, seed.T, seed.config))))
    if not res0 <= max(1e-8, 10 * opts.atol):
        raise DomainError(f"seed does not satisfy the hodograph equations (residual {res0:.2e})")
    s = seed.config.s
    span = abs(T_target - seed.T)
    if span == 0:
        raise DomainError("empty integration range")
    max_step = opts.max_step_fraction * span

    def velocity(beta):
        try:
            return endpoint_velocity(pot, EndpointConfig(beta))
        except (DomainError, SingularityError) as exc:
            raise _BadStage(str(exc)) from exc

    def rhs(T, y):
        if not np.all(np.isfinite(y)):
            raise _BadStage("non-finite stage")
        beta = _from_internal(y)
        v = velocity(beta)
        return np.concatenate([[v[0]], np.diff(v) / np.diff(beta)])

    b0 = seed.config.array
    y0 = _to_internal(b0)
    Ts, Ys, Vs, interps = [seed.T], [b0.copy()], [velocity(b0)], []
    direction = 1.0 if T_target > seed.T else -1.0
    g_prev = _guards(pot, b0, opts, Vs[0], direction, seed.T)
    max_res = res0
    first_step = None
    solver = DOP853(rhs, seed.T, y0, T_target, rtol=opts.rtol, atol=opts.atol, max_step=max_step)
    cause, guard, crossing = "range_end", None, None
    min_dt = 1e-15 * max(1.0, abs(seed.T))

    while solver.status == "running":
        t_old, y_old = solver.t, solver.y.copy()
        try:
            msg = solver.step()
        except _BadStage:
            step = abs(solver.h_abs if first_step is None else first_step) / 4.0
            if step < min_dt:
                raise IntegrationError("step size underflow inside a singular region",
                                       state=FlowState(t_old, EndpointConfig(_from_internal(y_old))))
            first_step = step
            solver = DOP853(rhs, t_old, y_old, T_target, rtol=opts.rtol, atol=opts.atol,
                            max_step=max_step, first_step=step)
            continue
        first_step = None
        if solver.status == "failed":
            raise IntegrationError(f"integrator failed: {msg}",
                                   state=FlowState(t_old, EndpointConfig(_from_internal(y_old))))
        y = _from_internal(solver.y)
        if np.any(np.diff(y) <= 0):
            raise IntegrationError("endpoint ordering lost",
                                   state=FlowState(t_old, EndpointConfig(_from_internal(y_old))))
        interps.append(solver.dense_output())
        Ts.append(solver.t)
        Ys.append(y)
        Vs.append(velocity(y))
        if opts.check_residual:
            r = float(np.max(np.abs(hodograph_residual(pot, solver.t, EndpointConfig(y)))))
            max_res = max(max_res, r)
        g = _guards(pot, y, opts, Vs[-1], direction, solver.t)
        fired = [k for k in g if g[k] <= 0 < g_prev[k]]
        if fired:
            cause, guard, crossing = "event", fired[0], (t_old, solver.t)
            break
        g_prev = g

    dense = _EndpointDense(OdeSolution(np.array(Ts), interps)) if interps else None
    traj = Trajectory(s, np.array(Ts), np.array(Ys), np.array(Vs), cause, guard, dense, max_res, crossing)
    if cause == "event" and guard == "gap" and s == 1:
        traj.cause = "collapse"
    if opts.check_residual and max_res > opts.residual_tol:
        raise IntegrationError(f"hodograph residual drifted to {max_res:.2e}", state=traj.state())
    event = detect_transition(traj, pot) if traj.cause == "event" else None
    if event is not None and s == 1:
        # the one-cut guards fire one step past T_c; end the phase at the event
        traj.T[-1] = event.T_c
        traj.beta[-1] = event.one_cut.array
        traj.velocity[-1] = endpoint_velocity(pot, event.one_cut)
    return traj, event


# -- transitions ------------------------------------------------------------


@dataclass
class TransitionEvent:
    """A merge of two cuts or the birth of a cut.

    ``one_cut`` is the surviving one-cut configuration at ``T_c`` and
    ``two_cut`` the degenerate two-cut configuration with the coalesced
    pair at ``beta``.  ``two_cut_side`` says on which side of ``T_c`` the
    two-cut phase lives.
    """

    kind: str
    T_c: float
    beta: float
    one_cut: EndpointConfig
    two_cut: EndpointConfig
    two_cut_side: str
    pot: Potential = field(repr=False)
    launch: dict = field(default_factory=dict)

    @property
    def pair(self) -> int:
        """1-based index ``l`` of the coalesced pair in the two-cut config."""
        return 2 if self.kind == "merge" else (3 if self.two_cut.beta[2] == self.beta else 1)


def _degenerate_two_cut(one: EndpointConfig, beta: float) -> EndpointConfig:
    return EndpointConfig(sorted([*one.beta, beta, beta]), allow_coincident=True)


def merge_coefficients(pot: Potential, one: EndpointConfig, beta: float) -> dict:
    """Launch data for a merge at ``beta`` inside the one-cut support ``one``.

    ``A`` is the amplitude in ``beta_{2,3} = beta -+ A sqrt(T_c - T)``;
    ``outer_velocity`` the one-cut velocities, which the outer two-cut
    endpoints share at ``T_c``.
    """
    h1 = h_polynomial(pot, one.beta)
    q = 0.5 * float(h1.deriv().deriv()(beta))
    b1, b4 = one.beta
    if q <= 0:
        raise SingularDensityError("merge point is not a simple double zero of h", factor="h")
    amp = 2.0 / math.sqrt(q * (beta - b1) * (b4 - beta))
    return {"A": amp, "q": q, "outer_velocity": endpoint_velocity(pot, one)}


def birth_coefficients(pot: Potential, one: EndpointConfig, beta: float) -> dict:
    """Launch data for the birth of a cut at ``beta`` outside ``one``.

    ``gamma`` drives ``(beta_4 - beta_3) log(beta_4 - beta_3) d beta_3/dT ~ gamma``.
    """
    b1, b2 = one.beta
    deg = _degenerate_two_cut(one, beta)
    h2 = h_polynomial(pot, deg.beta, allow_coincident=True)
    R2 = (beta - b1) * (beta - b2)
    if R2 <= 0:
        raise DomainError("birth point must lie outside the one-cut support")
    R = math.sqrt(R2)
    # atanh of sqrt of the ratio of distances to the near and far endpoints
    near, far = (b2, b1) if beta > b2 else (b1, b2)
    theta = math.atanh(math.sqrt((beta - near) / (beta - far)))
    h_tilde = float(h2(beta))
    gamma = 8.0 * theta / (h_tilde * R)
    kappa = abs(b2 - b1) / R2
    return {"gamma": gamma, "kappa": kappa, "theta": theta, "h": h_tilde,
            "outer_velocity": endpoint_velocity(pot, one)}


def birth_width(gamma: float, kappa: float, t: float) -> float:
    """Width ``delta`` of a newborn cut at distance ``t`` from ``T_c``.

    Solves ``delta**2 (log(16 / (kappa delta)) + 1/2) = 4 |gamma| t``.
    """
    rhs = 4.0 * abs(gamma) * t
    delta = math.sqrt(rhs / max(1.0, 0.5 * math.log(1.0 / t)))
    for _ in range(100):
        new = math.sqrt(rhs / (math.log(16.0 / (kappa * delta)) + 0.5))
        if abs(new - delta) <= 1e-15 * new:
            break
        delta = new
    return delta


def _merge_from_one_cut(traj: Trajectory, pot: Potential) -> TransitionEvent:
    t_a, t_b = traj.crossing

    def g(T):
        one = polish(pot, T, traj.config_at(T))
        return min_h_on_cut(h_polynomial(pot, one.beta), *one.beta)[0]

    T_c = optimize.brentq(g, min(t_a, t_b), max(t_a, t_b), xtol=1e-13, rtol=1e-15)
    one = polish(pot, T_c, traj.config_at(T_c))
    _, beta = min_h_on_cut(h_polynomial(pot, one.beta), *one.beta)
    side = "below" if traj.T_end < traj.T_start else "above"
    ev = TransitionEvent("merge", T_c, beta, one, _degenerate_two_cut(one, beta), side, pot)
    ev.launch = merge_coefficients(pot, one, beta)
    return ev


def _birth_from_one_cut(traj: Trajectory, pot: Potential) -> TransitionEvent:
    t_a, t_b = traj.crossing

    def saturation(T):
        one = polish(pot, T, traj.config_at(T))
        sat = exterior_saturation(h_polynomial(pot, one.beta), one)
        return min(sat, key=lambda item: item[2])

    T_c = optimize.brentq(lambda T: saturation(T)[2], min(t_a, t_b), max(t_a, t_b), xtol=1e-13, rtol=1e-15)
    one = polish(pot, T_c, traj.config_at(T_c))
    beta = saturation(T_c)[1]
    side = "below" if traj.T_end < traj.T_start else "above"
    ev = TransitionEvent("birth", T_c, beta, one, _degenerate_two_cut(one, beta), side, pot)
    ev.launch = birth_coefficients(pot, one, beta)
    return ev


def _collapse_from_two_cut(traj: Trajectory, pot: Potential) -> TransitionEvent:
    T_last = traj.T_end
    beta = traj.beta[-1]
    gaps = np.diff(beta)
    l = 2 if traj.guard == "approach" else int(np.argmin(gaps)) + 1
    kept = [b for i, b in enumerate(beta) if i not in (l - 1, l)]
    point = 0.5 * (beta[l - 1] + beta[l])
    one_guess = EndpointConfig(kept)
    direction = np.sign(traj.T_end - traj.T_start)
    if l == 2:
        coeff = merge_coefficients(pot, polish(pot, T_last, one_guess, tol=1e-6), point)
        # gap = 2 A sqrt(|T - T_c|)
        t = (gaps[1] / (2.0 * coeff["A"])) ** 2
        kind = "merge"
    else:
        coeff = birth_coefficients(pot, polish(pot, T_last, one_guess, tol=1e-6), point)
        d = gaps[l - 1]
        t = d * d * (math.log(16.0 / (coeff["kappa"] * d)) + 0.5) / (4.0 * abs(coeff["gamma"]))
        kind = "birth"
    T_c = T_last + direction * t
    one = polish(pot, T_c, one_guess)
    if kind == "merge":
        # the midpoint of the closing gap is off by O(t); the double zero of h is not
        point = min_h_on_cut(h_polynomial(pot, one.beta), *one.beta)[1]
    side = "above" if direction < 0 else "below"
    ev = TransitionEvent(kind, T_c, float(point), one, _degenerate_two_cut(one, float(point)), side, pot)
    ev.launch = merge_coefficients(pot, one, point) if kind == "merge" else birth_coefficients(pot, one, point)
    return ev


def detect_transition(traj: Trajectory, pot: Potential) -> TransitionEvent:
    """Classify and refine the singularity that stopped ``traj``.

    Raises
    ------
    SingularDensityError
        If ``h`` vanished at an endpoint without an endpoint collision.
    """
    if traj.guard == "merge":
        return _merge_from_one_cut(traj, pot)
    if traj.guard == "birth":
        return _birth_from_one_cut(traj, pot)
    if traj.guard in ("gap", "approach") and traj.s == 2:
        return _collapse_from_two_cut(traj, pot)
    if traj.guard == "h":
        raise SingularDensityError(f"h vanished at an endpoint near T={traj.T_end}", factor="h")
    raise DomainError(f"trajectory did not stop on a classifiable guard (guard={traj.guard})")


def critical_launch(event: TransitionEvent, side: str, t: float | None = None, polish_state: bool = True) -> FlowState:
    """Asymptotic configuration at ``T_c -+ t`` on the requested side.

    ``side`` is ``'above'`` or ``'below'``.  The two-cut side uses the
    square-root law (merge) or the logarithmic law (birth) for the
    coalescing pair and the one-cut velocities for the others; the one-cut
    side steps along the one-cut velocity.  The result is polished onto the
    hodograph solution unless ``polish_state`` is false.
    """
    t_max = 1e-4 * max(1.0, event.T_c)
    if t is None:
        t = LAUNCH_OFFSET * event.T_c
    if not 0 < t <= t_max:
        raise DomainError(f"launch offset must lie in (0, {t_max:g}], got {t}")
    if side not in ("above", "below"):
        raise DomainError(f"side must be 'above' or 'below', got {side!r}")
    sign = 1.0 if side == "above" else -1.0
    T = event.T_c + sign * t
    pot = event.pot
    v_out = event.launch["outer_velocity"]
    outer = np.array(event.one_cut.beta) + sign * t * v_out
    if side != event.two_cut_side:
        config = EndpointConfig(outer)
    else:
        if event.kind == "merge":
            half = event.launch["A"] * math.sqrt(t)
        else:
            half = 0.5 * birth_width(event.launch["gamma"], event.launch["kappa"], t)
        pair = [event.beta - half, event.beta + half]
        config = EndpointConfig(sorted([*outer, *pair]))
    if polish_state:
        config = polish(pot, T, config)
    return FlowState(T, config, endpoint_velocity(pot, config))


# -- seeds ------------------------------------------------------------------


def seed_closed_form(model: str, *, T: float | None = None, c: float | None = None) -> FlowState:
    """Exact seed states for the test models.

    ``model='quartic_even'`` takes ``T``: one cut for ``T >= 1`` and two cuts
    for ``0 < T < 1``.  ``model='be_critical'`` takes ``c`` and returns the
    one-cut configuration ``(-2, 2)`` at ``T_c = 1 + 4 c**2``.
    """
    if model == "quartic_even":
        if T is None:
            raise DomainError("quartic_even seed needs T")
        config = models.quartic_even_one_cut(T) if T >= 1.0 else models.quartic_even_two_cut(T)
        pot = models.quartic_even()
    elif model == "be_critical":
        if c is None:
            raise DomainError("be_critical seed needs c")
        pot = models.bleher_eynard(c)
        T = models.be_critical_temperature(c)
        config = EndpointConfig((-2.0, 2.0))
    else:
        raise DomainError(f"unknown model {model!r}")
    vel = None if model == "be_critical" else endpoint_velocity(pot, config)
    return FlowState(float(T), config, vel)


def merge_event(pot: Potential, T_c: float, one: EndpointConfig, beta: float) -> TransitionEvent:
    """Merge event at a known critical point, with the two-cut side below."""
    ev = TransitionEvent("merge", float(T_c), float(beta), one, _degenerate_two_cut(one, beta), "below", pot)
    ev.launch = merge_coefficients(pot, one, beta)
    return ev


def be_merge_event(c: float) -> TransitionEvent:
    """The Bleher-Eynard merge at ``T_c = 1 + 4c**2``, ``beta = 2c``."""
    pot = models.bleher_eynard(c)
    return merge_event(pot, models.be_critical_temperature(c), EndpointConfig((-2.0, 2.0)), 2.0 * c)


def seed_from_guess(pot: Potential, T: float, guess) -> FlowState:
    """Solve the hodograph equations at ``T`` starting from ``guess``.

    Raises
    ------
    NumericError
        If the solver does not converge to an ordered configuration.
    """
    if not T > 0:
        raise DomainError(f"T must be positive, got {T}")
    try:
        config = polish(pot, T, EndpointConfig(guess), tol=1e-10)
    except (DomainError, SingularityError) as exc:
        raise NumericError(f"seeding from {list(guess)} failed: {exc}") from exc
    config.check_potential(pot)
    return FlowState(float(T), config, endpoint_velocity(pot, config))


def seed_one_cut(pot: Potential, T: float, guess=None) -> FlowState:
    """One-cut seed at ``T`` from ``guess`` or, failing that, symmetric scans.

    At high temperature the support is a single wide interval, so scanning
    ``(-R, R)`` over a geometric range of ``R`` finds it.
    """
    guesses = [guess] if guess is not None else []
    center = 0.0
    guesses += [(center - R, center + R) for R in np.geomspace(0.5, 50.0, 25)]
    last = None
    for g in guesses:
        try:
            st = seed_from_guess(pot, T, g)
        except NumericError as exc:
            last = exc
            continue
        if st.config.s == 1 and admissibility(pot, T, st.config).regular:
            return st
    raise NumericError(f"no admissible one-cut seed found at T={T}" + (f" ({last})" if last else ""))


def be_minimum(c: float) -> float:
    """Collapse point of the one-cut support as ``T -> 0``; see :func:`models.be_minimum`."""
    return models.be_minimum(c)
