"""Phase-by-phase tracing of the endpoints over a temperature range.

A trace integrates the flow away from a seed in both directions.  Each time
the integrator stops on a transition, the event is refined, the state is
launched on the far side with the critical asymptotics, and integration
resumes in the new phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from . import models
from .equilibrium import exterior_saturation
from .errors import DomainError
from .flow import (
    FlowState,
    IntegrateOptions,
    Trajectory,
    TransitionEvent,
    be_merge_event,
    critical_launch,
    integrate,
    polish,
    seed_closed_form,
)
from .geometry import EndpointConfig
from .polyops import Potential, h_polynomial

BIRTH_AGREEMENT = 1e-3


@dataclass
class Trace:
    """Trajectories of all phases met between ``T_min`` and ``T_max``.

    ``segments`` and ``events`` are sorted by temperature.
    """

    pot: Potential
    T_min: float
    T_max: float
    segments: list[Trajectory]
    events: list[TransitionEvent]
    checks: list[dict] = field(default_factory=list)

    def segment_at(self, T: float) -> Trajectory | None:
        for seg in self.segments:
            lo, hi = sorted((seg.T_start, seg.T_end))
            if lo <= T <= hi:
                return seg
        return None

    def config_at(self, T: float) -> EndpointConfig:
        """Polished configuration at ``T``.

        Inside the short launch window next to an event the nearest
        segment end is used as the starting guess.
        """
        seg = self.segment_at(T)
        if seg is not None:
            guess = seg.config_at(T)
        else:
            seg = min(self.segments, key=lambda g: min(abs(T - g.T_start), abs(T - g.T_end)))
            guess = EndpointConfig(seg.beta[0] if abs(T - seg.T_start) < abs(T - seg.T_end) else seg.beta[-1])
        return polish(self.pot, T, guess)

    def phase_at(self, T: float) -> int:
        seg = self.segment_at(T)
        if seg is None:
            seg = min(self.segments, key=lambda g: min(abs(T - g.T_start), abs(T - g.T_end)))
        return seg.s

    def samples(self) -> list[tuple[float, int, np.ndarray]]:
        """All accepted steps as ``(T, s, beta)`` in increasing ``T``."""
        rows = []
        for seg in self.segments:
            rows.extend((float(T), seg.s, b) for T, b in zip(seg.T, seg.beta))
        rows.sort(key=lambda r: r[0])
        return rows


def _march(pot: Potential, state: FlowState, target: float, opts: IntegrateOptions,
           launch_offset: float | None, segments: list, events: list) -> None:
    direction = 1.0 if target > state.T else -1.0
    while (target - state.T) * direction > 0:
        traj, ev = integrate(pot, state, target, opts)
        segments.append(traj)
        if ev is None:
            return
        events.append(ev)
        side = "above" if direction > 0 else "below"
        t = None if launch_offset is None else launch_offset * ev.T_c
        state = critical_launch(ev, side, t)


def _launch_both_sides(event: TransitionEvent, T_min: float, T_max: float, opts, launch_offset, segments, events):
    events.append(event)
    t = None if launch_offset is None else launch_offset * event.T_c
    if T_max > event.T_c:
        _march(event.pot, critical_launch(event, "above", t), T_max, opts, launch_offset, segments, events)
    if T_min < event.T_c:
        _march(event.pot, critical_launch(event, "below", t), T_min, opts, launch_offset, segments, events)


def trace(pot: Potential, start: FlowState | TransitionEvent, T_min: float, T_max: float,
          opts: IntegrateOptions | None = None, launch_offset: float | None = None,
          crosscheck_births: bool = True) -> Trace:
    """Trace the endpoints over ``[T_min, T_max]`` from a seed state or a known event.

    Parameters
    ----------
    start : FlowState or TransitionEvent
        A regular seed anywhere in the range, or a critical point from which
        both neighbouring phases are launched.
    launch_offset : float, optional
        Relative distance ``t / T_c`` of the launch from each event.
    crosscheck_births : bool
        Locate every birth a second time from the one-cut side; see
        :func:`birth_crosscheck`.
    """
    if not 0 < T_min < T_max:
        raise DomainError(f"need 0 < T_min < T_max, got ({T_min}, {T_max})")
    opts = opts or IntegrateOptions()
    segments: list[Trajectory] = []
    events: list[TransitionEvent] = []
    if isinstance(start, TransitionEvent):
        if not T_min <= start.T_c <= T_max:
            raise DomainError(f"critical point T_c={start.T_c} outside [{T_min}, {T_max}]")
        _launch_both_sides(start, T_min, T_max, opts, launch_offset, segments, events)
    else:
        if not T_min <= start.T <= T_max:
            raise DomainError(f"seed T={start.T} outside [{T_min}, {T_max}]")
        seed = FlowState(start.T, start.config)
        if T_max > seed.T:
            _march(pot, seed, T_max, opts, launch_offset, segments, events)
        if T_min < seed.T:
            _march(pot, seed, T_min, opts, launch_offset, segments, events)
    segments.sort(key=lambda g: min(g.T_start, g.T_end))
    events.sort(key=lambda e: e.T_c)
    out = Trace(pot, T_min, T_max, segments, events)
    if crosscheck_births:
        out.checks = [birth_crosscheck(ev) for ev in events if ev.kind == "birth"]
    return out


def _saturation(pot: Potential, config: EndpointConfig) -> float:
    sat = exterior_saturation(h_polynomial(pot, config.beta), config)
    return min((v for _, _, v in sat), default=math.inf)


def birth_crosscheck(event: TransitionEvent, span: float = 0.02) -> dict:
    """Locate a birth from the one-cut side alone.

    The one-cut solution is continued through ``T_c`` and the exterior
    inequality is followed to its zero crossing.  The two estimates must
    agree within ``BIRTH_AGREEMENT``; the returned ``ok`` flags the run.
    """
    if event.kind != "birth":
        raise DomainError("cross-check applies to birth events only")
    pot = event.pot
    opts = IntegrateOptions(merge_monitor=False, birth_monitor=False)
    seed = FlowState(event.T_c, event.one_cut)
    up, _ = integrate(pot, seed, event.T_c + span, opts)
    down, _ = integrate(pot, seed, max(event.T_c - span, 0.5 * event.T_c), opts)

    def g(T):
        traj = up if T >= event.T_c else down
        return _saturation(pot, polish(pot, T, traj.config_at(T)))

    lo, hi = down.T_end, up.T_end
    g_lo, g_hi = g(lo), g(hi)
    if g_lo * g_hi > 0:
        return {"T_two_cut": event.T_c, "T_one_cut": math.nan, "difference": math.inf, "ok": False}
    T_one = optimize.brentq(g, lo, hi, xtol=1e-13, rtol=1e-15)
    diff = abs(T_one - event.T_c)
    return {"T_two_cut": event.T_c, "T_one_cut": T_one, "difference": diff, "ok": diff <= BIRTH_AGREEMENT}


# -- presets ----------------------------------------------------------------


def bleher_eynard_trace(c: float, T_min: float, T_max: float, **kwargs) -> Trace:
    """Trace the Bleher-Eynard model from its known merge point."""
    return trace(models.bleher_eynard(c), be_merge_event(c), T_min, T_max, **kwargs)


def quartic_even_trace(T_min: float, T_max: float, **kwargs) -> Trace:
    """Trace ``x**4/4 - x**2`` from its closed-form seed at ``T_max``."""
    return trace(models.quartic_even(), seed_closed_form("quartic_even", T=T_max), T_min, T_max, **kwargs)
