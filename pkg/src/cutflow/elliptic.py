"""Complete elliptic integrals in the parameter convention.

Throughout, ``s`` multiplies ``t**2`` directly::

    K(s)    = int_0^1 dt / (sqrt(1 - t^2) sqrt(1 - s t^2))
    E(s)    = int_0^1 sqrt(1 - s t^2) / sqrt(1 - t^2) dt
    Pi(r,s) = int_0^1 dt / ((1 - r t^2) sqrt(1 - t^2) sqrt(1 - s t^2))

K and E use the arithmetic-geometric mean.  Pi uses Carlson's symmetric
forms ``R_F`` and ``R_J`` with the duplication theorem.  Functions with a
leading underscore take the complements ``1 - r`` and ``1 - s`` directly,
which keeps full relative accuracy when the geometry hands us a complement
computed from endpoint differences.
"""

from __future__ import annotations

import math

from .errors import DomainError

_AGM_TOL = 1e-15
_RF_TOL = 1e-3
_RJ_TOL = 1e-3
_MAX_ITER = 200

# Below this complement Pi/K switches to its logarithmic asymptotics.
ASYMPTOTIC_THRESHOLD = 1e-12
# The asymptotic form only holds when r -> 1 together with s.
JOINT_THRESHOLD = 1e-6
# Regime switch between direct and transformed evaluation of Pi/K.
TRANSFORM_THRESHOLD = 0.5


def _check_unit(name: str, x: float, closed: bool = False) -> float:
    x = float(x)
    ok = 0.0 <= x <= 1.0 if closed else 0.0 <= x < 1.0
    if not ok:
        interval = "[0, 1]" if closed else "[0, 1)"
        raise DomainError(f"{name} must lie in {interval}, got {x!r}")
    return x


def carlson_rf(x: float, y: float, z: float) -> float:
    """Carlson's symmetric integral ``R_F(x, y, z)``; at most one argument zero."""
    if min(x, y, z) < 0 or min(x + y, y + z, z + x) == 0:
        raise DomainError("R_F needs non-negative arguments with at most one zero")
    for _ in range(_MAX_ITER):
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * (sy + sz) + sy * sz
        x, y, z = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam)
        ave = (x + y + z) / 3.0
        dx, dy, dz = (ave - x) / ave, (ave - y) / ave, (ave - z) / ave
        if max(abs(dx), abs(dy), abs(dz)) < _RF_TOL:
            break
    e2 = dx * dy - dz * dz
    e3 = dx * dy * dz
    return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / math.sqrt(ave)


def carlson_rc(x: float, y: float) -> float:
    """Degenerate case ``R_C(x, y) = R_F(x, y, y)`` for ``y > 0``."""
    if x < 0 or y <= 0:
        raise DomainError("R_C needs x >= 0 and y > 0")
    for _ in range(_MAX_ITER):
        lam = 2.0 * math.sqrt(x) * math.sqrt(y) + y
        x, y = 0.25 * (x + lam), 0.25 * (y + lam)
        ave = (x + y + y) / 3.0
        d = (y - ave) / ave
        if abs(d) < _RF_TOL:
            break
    return (1.0 + d * d * (0.3 + d * (1.0 / 7.0 + d * (0.375 + d * 9.0 / 22.0)))) / math.sqrt(ave)


def carlson_rj(x: float, y: float, z: float, p: float) -> float:
    """Carlson's ``R_J(x, y, z, p)`` for ``p > 0``."""
    if min(x, y, z) < 0 or min(x + y, y + z, z + x) == 0 or p <= 0:
        raise DomainError("R_J needs non-negative x, y, z (one zero at most) and p > 0")
    total = 0.0
    fac = 1.0
    for _ in range(_MAX_ITER):
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * (sy + sz) + sy * sz
        alpha = (p * (sx + sy + sz) + sx * sy * sz) ** 2
        beta = p * (p + lam) ** 2
        total += fac * carlson_rc(alpha, beta)
        fac *= 0.25
        x, y, z, p = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam), 0.25 * (p + lam)
        ave = 0.2 * (x + y + z + p + p)
        dx, dy, dz, dp = (ave - x) / ave, (ave - y) / ave, (ave - z) / ave, (ave - p) / ave
        if max(abs(dx), abs(dy), abs(dz), abs(dp)) < _RJ_TOL:
            break
    ea = dx * (dy + dz) + dy * dz
    eb = dx * dy * dz
    ec = dp * dp
    ed = ea - 3.0 * ec
    ee = eb + 2.0 * dp * (ea - ec)
    c1, c2, c3, c4 = 3.0 / 14.0, 1.0 / 3.0, 3.0 / 22.0, 3.0 / 26.0
    c5, c6, c7, c8 = 0.75 * c3, 1.5 * c4, 0.5 * c2, 2.0 * c3
    series = (
        1.0
        + ed * (-c1 + c5 * ed - c6 * ee)
        + eb * (c7 + dp * (-c8 + dp * c4))
        + dp * ea * (c2 - dp * c3)
        - c2 * dp * ec
    )
    return 3.0 * total + fac * series / (ave * math.sqrt(ave))


def _agm(sc: float) -> tuple[float, float]:
    """AGM of ``(1, sqrt(sc))`` and the weighted sum of squared differences.

    Returns ``(a, sum)`` with ``K = pi / (2a)`` and ``E = K (1 - sum)``.
    """
    a, b = 1.0, math.sqrt(sc)
    total = 0.5 * (1.0 - sc)
    weight = 0.5
    for _ in range(_MAX_ITER):
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        weight *= 2.0
        total += weight * c * c
        # c converges quadratically; once below the tolerance the remaining
        # terms are under rounding, and waiting longer can stall at ulp level
        if abs(c) <= _AGM_TOL * a:
            break
    return a, total


def _ellip_k(sc: float) -> float:
    """K from the complementary parameter ``sc = 1 - s``."""
    if sc <= 0:
        raise DomainError("K diverges at s = 1")
    a, _ = _agm(sc)
    return math.pi / (2.0 * a)


def _ellip_e(sc: float) -> float:
    if sc == 0.0:
        return 1.0
    a, total = _agm(sc)
    return math.pi / (2.0 * a) * (1.0 - total)


def _ellip_pi(rc: float, sc: float) -> float:
    """Pi from the complements ``rc = 1 - r`` and ``sc = 1 - s``.

    Valid for any ``r < 1`` (including negative ``r``) and ``0 <= s < 1``.
    """
    r = 1.0 - rc
    rf = carlson_rf(0.0, sc, 1.0)
    if r == 0.0:
        return rf
    return rf + r / 3.0 * carlson_rj(0.0, sc, 1.0, rc)


def ellip_k(s: float) -> float:
    """Complete integral of the first kind ``K(s)``, parameter convention.

    Parameters
    ----------
    s : float
        Parameter in ``[0, 1)``.
    """
    s = _check_unit("s", s)
    return _ellip_k(1.0 - s)


def ellip_e(s: float) -> float:
    """Complete integral of the second kind ``E(s)``; ``E(1) = 1``."""
    s = _check_unit("s", s, closed=True)
    return _ellip_e(1.0 - s)


def ellip_pi(r: float, s: float) -> float:
    """Complete integral of the third kind ``Pi(r, s)``.

    Parameters
    ----------
    r : float
        Characteristic in ``[0, 1)``.
    s : float
        Parameter in ``[0, 1)``.
    """
    r = _check_unit("r", r)
    s = _check_unit("s", s)
    return _ellip_pi(1.0 - r, 1.0 - s)


def _pi_over_k_joint_asymptotic(rc: float, sc: float) -> float:
    # K ~ log(16/sc)/2 and Pi ~ atanh(sqrt((s-r)/(1-r))) / sqrt((s-r)(1-r)).
    d = rc - sc
    if d <= 0.0:
        pi = 1.0 / rc
    else:
        pi = math.atanh(math.sqrt(d / rc)) / (math.sqrt(d) * math.sqrt(rc))
    return pi / (0.5 * math.log(16.0 / sc))


def pi_over_k_asymptotic(rc: float, sc: float) -> float:
    """Leading behaviour of ``Pi/K`` as ``r`` and ``s`` tend to 1 together.

    Parameters
    ----------
    rc, sc : float
        Complements ``1 - r`` and ``1 - s`` with ``0 < sc <= rc``.
    """
    if not 0.0 < sc <= rc < 1.0:
        raise DomainError(f"need 0 < 1-s <= 1-r < 1, got rc={rc}, sc={sc}")
    return _pi_over_k_joint_asymptotic(float(rc), float(sc))


def _pi_over_k(r: float, s: float, rc: float, sc: float) -> float:
    if r == 0.0:
        return 1.0
    if s <= TRANSFORM_THRESHOLD:
        return _ellip_pi(rc, sc) / _ellip_k(sc)
    if sc < ASYMPTOTIC_THRESHOLD and rc < JOINT_THRESHOLD:
        return _pi_over_k_joint_asymptotic(rc, sc)
    # Map s -> s/(s-1) < 0 and r -> r/(r-1) <= 0.  The sqrt(1-s) factors cancel.
    sc_t = 1.0 / sc
    rc_t = 1.0 / rc
    k_t = carlson_rf(0.0, sc_t, 1.0)
    pi_t = k_t + (1.0 - rc_t) / 3.0 * carlson_rj(0.0, sc_t, 1.0, rc_t)
    return pi_t / (rc * k_t)


def pi_over_k(r: float, s: float, *, rc: float | None = None, sc: float | None = None) -> float:
    """Ratio ``Pi(r, s) / K(s)`` evaluated stably for ``0 <= r <= s < 1``.

    For ``s <= 0.5`` the ratio is formed directly.  Above that both
    integrals are evaluated at the transformed arguments ``r/(r-1)`` and
    ``s/(s-1)``, which lie on the negative axis where nothing is singular.
    Once ``1 - s`` drops below ``1e-12`` with ``1 - r`` also small, the
    logarithmic asymptotic form is used.

    Parameters
    ----------
    r, s : float
        Characteristic and parameter.
    rc, sc : float, optional
        Exact complements ``1 - r`` and ``1 - s``.  Pass them when they are
        known to more digits than ``1 - r`` would give.
    """
    r = _check_unit("r", r)
    s = _check_unit("s", s)
    if r > s * (1.0 + 1e-12) + 1e-300:
        raise DomainError(f"pi_over_k needs r <= s, got r={r}, s={s}")
    rc = 1.0 - r if rc is None else float(rc)
    sc = 1.0 - s if sc is None else float(sc)
    if rc <= 0 or sc <= 0:
        raise DomainError("complements must be positive")
    return _pi_over_k(r, s, rc, sc)


def theta_ratio(r: float, s: float) -> float:
    """``atanh(sqrt((sqrt(s) - sqrt(r)) / (1 - sqrt(r))))`` for ``0 < r < s < 1``."""
    r, s = float(r), float(s)
    if not 0.0 < r < s < 1.0:
        raise DomainError(f"theta_ratio needs 0 < r < s < 1, got r={r}, s={s}")
    sr, ss = math.sqrt(r), math.sqrt(s)
    return math.atanh(math.sqrt((ss - sr) / (1.0 - sr)))
