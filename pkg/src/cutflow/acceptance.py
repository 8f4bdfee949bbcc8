"""Acceptance suite shared by ``cutflow selftest`` and the test-suite.

Each check measures its quantities, compares them against a fixed tolerance
and returns a :class:`CheckResult`.  ``fault`` names a check whose
tolerances are shrunk by ``FAULT_FACTOR`` to exercise the failure path.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import integrate

from . import elliptic, models
from .equilibrium import density_norm
from .flow import (
    IntegrateOptions,
    be_merge_event,
    birth_width,
    critical_launch,
    integrate as integrate_flow,
    seed_one_cut,
)
from .geometry import EndpointConfig, p_k, p_k_one_cut, reduce_config
from .phases import bleher_eynard_trace, quartic_even_trace
from .thermo import (
    birth_divergence_check,
    central_derivative,
    continuity_check,
    free_energy,
    lagrange_multiplier,
    third_derivative_jump,
)

FAULT_FACTOR = 1e-12
BE_C = 0.5
BE_BIRTH = 1.845097
BE_MINIMUM = -1.26953
BE_T_FINAL = 1e-8


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    measured: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        vals = ", ".join(f"{k}={_fmt(v)}" for k, v in self.measured.items())
        return f"[{status}] {self.number:2d} {self.title}: {vals}"


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.6g}"
    if isinstance(v, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


class Context:
    """Lazily computed traces shared between checks."""

    @cached_property
    def quartic(self):
        return quartic_even_trace(0.05, 3.0)

    @cached_property
    def be(self):
        # Normalization is conditioned like 1/T as the support shrinks, so
        # the leg toward T -> 0 needs a tighter integrator tolerance.
        opts = IntegrateOptions(rtol=1e-13, atol=1e-13)
        return bleher_eynard_trace(BE_C, BE_T_FINAL, 3.0, opts=opts)

    def be_event(self, kind: str):
        return next(ev for ev in self.be.events if ev.kind == kind)


# -- individual checks ------------------------------------------------------


def check_quartic_closed_forms(ctx: Context, tol: float = 1e-6) -> CheckResult:
    tr = ctx.quartic
    err_one = err_two = 0.0
    for T in np.linspace(1.05, 3.0, 80):
        b = tr.segment_at(T).config_at(T).array
        err_one = max(err_one, float(np.max(np.abs(b - models.quartic_even_one_cut(T).array))))
    for T in np.linspace(0.05, 0.95, 80):
        b = tr.segment_at(T).config_at(T).array
        err_two = max(err_two, float(np.max(np.abs(b - models.quartic_even_two_cut(T).array))))
    for T, s, b in tr.samples():
        if 1.05 <= T <= 3.0 and s == 1:
            err_one = max(err_one, float(np.max(np.abs(b - models.quartic_even_one_cut(T).array))))
        elif 0.05 <= T <= 0.95 and s == 2:
            err_two = max(err_two, float(np.max(np.abs(b - models.quartic_even_two_cut(T).array))))
    ok = err_one <= tol and err_two <= tol
    return CheckResult(1, "quartic-even endpoints vs closed forms", ok,
                       {"max_err_one_cut": err_one, "max_err_two_cut": err_two, "tol": tol})


def _taylor(traj, lo: float, hi: float, n: int = 60) -> np.ndarray:
    T = np.linspace(lo, hi, n)
    u = T - 1.0
    b1 = np.array([traj.config_at(x).beta[0] for x in T])
    return np.polynomial.polynomial.polyfit(u, b1, 4)


def check_quartic_merge(ctx: Context, tol_T: float = 1e-6, rel: float = 0.02) -> CheckResult:
    tr = ctx.quartic
    ev = next(e for e in tr.events if e.kind == "merge")
    one = tr.segment_at(1.02)
    two = tr.segment_at(0.98)
    c_one = _taylor(one, 1.0 + 1e-9, 1.05)
    c_two = _taylor(two, 0.95, two.T_start)
    targets_one, targets_two = (-0.25, 1.0 / 16.0), (-0.25, 5.0 / 64.0)
    dev = [abs(c_one[1] / targets_one[0] - 1), abs(c_one[2] / targets_one[1] - 1),
           abs(c_two[1] / targets_two[0] - 1), abs(c_two[2] / targets_two[1] - 1)]
    ok = abs(ev.T_c - 1.0) <= tol_T and abs(ev.beta) <= tol_T and max(dev) <= rel
    return CheckResult(2, "quartic-even merge and Taylor coefficients", ok,
                       {"T_c": ev.T_c, "beta": ev.beta, "one_cut": c_one[1:3], "two_cut": c_two[1:3],
                        "max_rel_dev": max(dev), "tol": rel})


def check_be_merge(ctx: Context, tol: float = 1e-6) -> CheckResult:
    # found by integrating down from a generic high-temperature seed
    pot = models.bleher_eynard(BE_C)
    seed = seed_one_cut(pot, 3.0)
    _, ev = integrate_flow(pot, seed, 1.5)
    ref = np.array([-2.0, 1.0, 1.0, 2.0])
    err = float(np.max(np.abs(ev.two_cut.array - ref))) if ev is not None else math.inf
    ok = ev is not None and ev.kind == "merge" and abs(ev.T_c - 2.0) <= tol and err <= tol
    return CheckResult(3, "Bleher-Eynard c=1/2 merge", ok,
                       {"kind": ev.kind if ev else None, "T_c": ev.T_c if ev else math.nan,
                        "config_err": err, "tol": tol})


def check_be_birth(ctx: Context, tol_T: float = 2e-4, tol_beta: float = 1e-4) -> CheckResult:
    tr = ctx.be
    ev = ctx.be_event("birth")
    low = tr.segments[0]
    final = low.beta[-1]
    err_beta = float(np.max(np.abs(final - BE_MINIMUM)))
    cross = tr.checks[0] if tr.checks else {"ok": False, "difference": math.inf}
    ok = abs(ev.T_c - BE_BIRTH) <= tol_T and err_beta <= tol_beta and low.s == 1 and bool(cross["ok"])
    return CheckResult(4, "Bleher-Eynard c=1/2 birth and T->0 collapse", ok,
                       {"T_birth": ev.T_c, "T_one_cut_check": cross.get("T_one_cut", math.nan),
                        "T_final": low.T_end, "final_config": final, "max_dist_beta_min": err_beta,
                        "beta_min_root": models.be_minimum(BE_C)})


MERGE_T = np.geomspace(1e-8, 1e-4, 9)


def check_merge_scaling(ctx: Context, tol_exp: float = 0.01, rel_amp: float = 0.02,
                        tol_slope: float = 1e-3) -> CheckResult:
    ev = ctx.be_event("merge")
    beta = ev.beta
    gaps = []
    for t in MERGE_T:
        b = critical_launch(ev, ev.two_cut_side, t).config.beta
        gaps.append(b[2] - b[1])
    slope, intercept = np.polyfit(np.log(MERGE_T), np.log(gaps), 1)
    amp, amp_ref = math.exp(intercept), 4.0 / math.sqrt(4.0 - beta * beta)
    ref = np.array([-1.0 / (beta + 2.0) ** 2, 1.0 / (beta - 2.0) ** 2])
    t = 1e-6
    c = ev.one_cut.array
    above = (critical_launch(ev, "above", t).config.array - c) / t
    below = critical_launch(ev, "below", t).config.array[[0, 3]]
    below = (below - c) / (-t)
    slope_err = float(max(np.max(np.abs(above - ref)), np.max(np.abs(below - ref))))
    ok = abs(slope - 0.5) <= tol_exp and abs(amp / amp_ref - 1) <= rel_amp and slope_err <= tol_slope
    return CheckResult(5, "merge scaling law", ok,
                       {"exponent": slope, "amplitude": amp, "amplitude_ref": amp_ref,
                        "outer_slope_err": slope_err})


def check_birth_scaling(ctx: Context, rel: float = 0.05) -> CheckResult:
    ev = ctx.be_event("birth")
    gamma, kappa = ev.launch["gamma"], ev.launch["kappa"]
    deltas = []
    for t in MERGE_T:
        b = critical_launch(ev, ev.two_cut_side, t).config.beta
        deltas.append(b[3] - b[2])
    deltas = np.array(deltas)
    y = deltas**2 * np.abs(np.log(deltas))
    slope = np.polyfit(MERGE_T, y, 1)[0]
    law = np.array([birth_width(gamma, kappa, t) for t in MERGE_T])
    ok = abs(slope / (2.0 * gamma) - 1.0) <= rel
    return CheckResult(6, "birth scaling law (slope 2*gamma)", ok,
                       {"gamma": gamma, "slope": slope, "slope_over_gamma": slope / gamma,
                        "local_ratio_range": [float(np.min(y / MERGE_T)) / gamma, float(np.max(y / MERGE_T)) / gamma],
                        "refined_law_max_rel_err": float(np.max(np.abs(deltas / law - 1)))})


def check_third_derivative_jump(ctx: Context, rel: float = 0.05) -> CheckResult:
    meas = {}
    ok = True
    for c in (0.0, 0.25, 0.5):
        rep = third_derivative_jump(be_merge_event(c))
        dev = abs(rep.numeric / rep.closed_form - 1.0)
        ok = ok and dev <= rel
        meas[f"c={c:g}"] = [rep.numeric, rep.closed_form]
    return CheckResult(7, "third-derivative jump at merges", ok, meas)


def check_continuity(ctx: Context, tol: float = 1e-4, tol_exp: float = 0.1) -> CheckResult:
    reps = {ev.kind: continuity_check(ev) for ev in ctx.be.events}
    div = birth_divergence_check(ctx.be_event("birth"))
    ok = all(r.max <= tol for r in reps.values()) and abs(div.exponent + 1.0) <= tol_exp and div.conclusive
    meas = {f"{k}_dF_dF1_dF2": [r.dF, r.dF1, r.dF2] for k, r in reps.items()}
    meas.update({"divergence_exponent": div.exponent, "conclusive": div.conclusive})
    return CheckResult(8, "thermodynamic continuity and birth divergence", ok, meas)


def _k_oracle(s):
    return integrate.quad(lambda p: 1.0 / math.sqrt(1.0 - s * math.sin(p) ** 2), 0, math.pi / 2,
                          epsabs=0, epsrel=1e-13)[0]


def _e_oracle(s):
    return integrate.quad(lambda p: math.sqrt(1.0 - s * math.sin(p) ** 2), 0, math.pi / 2,
                          epsabs=0, epsrel=1e-13)[0]


def _pi_oracle(r, s):
    return integrate.quad(lambda p: 1.0 / ((1.0 - r * math.sin(p) ** 2) * math.sqrt(1.0 - s * math.sin(p) ** 2)),
                          0, math.pi / 2, epsabs=0, epsrel=1e-13)[0]


def eep_holds(r: float, s: float) -> bool:
    """The bound on ``Pi(r, s)`` minus its logarithmic model, for ``0 < r < s < 1``."""
    th = elliptic.theta_ratio(r, s)
    sr, ss = math.sqrt(r), math.sqrt(s)
    model = math.sqrt(2.0) * th / (math.sqrt(1 + ss) * (1 + sr) * math.sqrt(1 - sr) * math.sqrt(ss - sr))
    bound = 8.0 * math.pi / (r**0.25 * math.sqrt(ss - sr))
    return abs(elliptic.ellip_pi(r, s) - model) <= bound


def _series_order(f, points) -> float:
    """Observed order of a remainder ``f`` from two points a factor 10 apart."""
    a, b = points
    return math.log(abs(f(a)) / abs(f(b))) / math.log(a / b)


def check_elliptic(ctx: Context, tol: float = 1e-9, tol_exact: float = 1e-14) -> CheckResult:
    rng = np.random.default_rng(20240611)
    pts = rng.uniform(0.0, 0.95, size=(200, 2))
    err = 0.0
    eep_ok = True
    for r, s in pts:
        err = max(err, abs(elliptic.ellip_k(s) / _k_oracle(s) - 1), abs(elliptic.ellip_e(s) / _e_oracle(s) - 1),
                  abs(elliptic.ellip_pi(r, s) / _pi_oracle(r, s) - 1))
        lo, hi = sorted((r, s))
        if 0 < lo < hi:
            eep_ok = eep_ok and eep_holds(lo, hi)
    half = math.pi / 2
    exact = max(abs(elliptic.ellip_k(0) - half), abs(elliptic.ellip_e(0) - half), abs(elliptic.ellip_pi(0, 0) - half))
    emc = _series_order(lambda s: elliptic.ellip_k(s) - half * (1 + s / 4 + 9 * s * s / 64), (1e-2, 1e-3))
    emc1 = _series_order(lambda e: elliptic.ellip_pi(e, e) - half * (1 + e / 2 + e / 4 + 3 * e * e / 8
                                                                  + 9 * e * e / 64 + 3 * e * e / 16), (1e-2, 1e-3))
    pik = _series_order(lambda e: elliptic.pi_over_k(e, 1.5 * e) - (1 + e / 2 + 3 * e * e / 8 + 1.5 * e * e / 16),
                        (1e-2, 1e-3))
    orders = [emc, emc1, pik]
    ok = err <= tol and exact <= tol_exact and eep_ok and all(abs(o - 3.0) <= 0.1 for o in orders)
    return CheckResult(9, "elliptic kernel", ok,
                       {"max_rel_err": err, "exact_err": exact, "eep_holds": eep_ok, "series_orders": orders})


def _iw_error(rng) -> float:
    err = 0.0
    for _ in range(10):
        b = np.sort(rng.uniform(-3.0, 3.0, 3))
        if np.min(np.diff(b)) < 0.3:
            continue
        for l in (1, 2, 3):
            beta = sorted([*b, b[l - 1]])
            deg = EndpointConfig(beta, allow_coincident=True)
            point = beta[l - 1]
            one = reduce_config(deg, l)
            z = np.linspace(-4.0, 4.0, 20)
            for k in (0, 1, 2):
                lhs = p_k(k, deg)(z)
                rhs = (z - point) * p_k_one_cut(k, one)(z)
                err = max(err, float(np.max(np.abs(lhs - rhs))))
    return err


def _normalization_error(rng) -> float:
    err = 0.0
    for _ in range(10):
        b = np.sort(rng.uniform(-3.0, 3.0, 4))
        if np.min(np.diff(b)) < 0.1:
            continue
        cfg = EndpointConfig(b)
        rest = lambda x: 1.0 / math.sqrt((x - b[0]) * (b[3] - x))
        for k in range(5):
            P = p_k(k, cfg)
            val = integrate.quad(lambda x: P(x) * rest(x), b[1], b[2], weight="alg", wvar=(-0.5, -0.5),
                                 epsabs=1e-11, epsrel=1e-11)[0]
            err = max(err, abs(val))
    return err


def check_structural(ctx: Context, tol_iw: float = 1e-9, tol_norm: float = 1e-8, tol_density: float = 1e-6,
                     tol_res: float = 1e-6, tol_dF: float = 1e-5) -> CheckResult:
    rng = np.random.default_rng(7)
    iw = _iw_error(rng)
    nc = _normalization_error(rng)
    dens = 0.0
    res = 0.0
    for tr in (ctx.quartic, ctx.be):
        for seg in tr.segments:
            res = max(res, seg.max_residual)
            for T, b in zip(seg.T, seg.beta):
                dens = max(dens, abs(density_norm(tr.pot, T, EndpointConfig(b)) - 1.0))
    # dF/dT = -v1 at 20 temperatures across the phases of both models
    dF = 0.0
    temps = [(ctx.quartic, T) for T in np.linspace(0.1, 2.9, 10)]
    temps += [(ctx.be, T) for T in np.linspace(0.3, 2.9, 10)]
    for tr, T in temps:
        h = 1e-3 * max(1.0, T)
        F = lambda TT: free_energy(tr.pot, TT, tr.config_at(TT))
        dF = max(dF, abs(central_derivative(F, T, h) + lagrange_multiplier(tr.pot, T, tr.config_at(T))))
    ok = iw <= tol_iw and nc <= tol_norm and dens <= tol_density and res <= tol_res and dF <= tol_dF
    return CheckResult(10, "structural identities", ok,
                       {"iw_err": iw, "normalization_err": nc, "density_norm_err": dens,
                        "max_residual": res, "dF_plus_v1": dF})


CHECKS = {
    1: check_quartic_closed_forms,
    2: check_quartic_merge,
    3: check_be_merge,
    4: check_be_birth,
    5: check_merge_scaling,
    6: check_birth_scaling,
    7: check_third_derivative_jump,
    8: check_continuity,
    9: check_elliptic,
    10: check_structural,
}


def _with_fault(fn):
    """Call ``fn`` with every tolerance-like default shrunk by ``FAULT_FACTOR``."""
    import inspect

    params = inspect.signature(fn).parameters
    kw = {name: p.default * FAULT_FACTOR for name, p in params.items()
          if name != "ctx" and isinstance(p.default, float)}
    return lambda ctx: fn(ctx, **kw)


def run_checks(numbers=None, fault: int | None = None, ctx: Context | None = None) -> list[CheckResult]:
    ctx = ctx or Context()
    out = []
    for n in numbers or sorted(CHECKS):
        fn = CHECKS[n]
        if fault == n:
            fn = _with_fault(fn)
        t0 = time.perf_counter()
        res = fn(ctx)
        res.seconds = time.perf_counter() - t0
        out.append(res)
    return out
