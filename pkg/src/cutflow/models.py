"""Named potentials and their closed-form endpoint solutions.

The Bleher-Eynard family

    V(x) = x**4/4 - (4/3) c x**3 + (2c**2 - 1) x**2 + 8 c x,   -1 < c < 1,

has a merge of two cuts at ``T_c = 1 + 4c**2`` with one-cut endpoints
``(-2, 2)``; ``c = 0`` is the quartic even potential ``x**4/4 - x**2``.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .geometry import EndpointConfig
from .polyops import Polynomial, Potential


def bleher_eynard(c: float) -> Potential:
    c = float(c)
    if not -1.0 < c < 1.0:
        raise DomainError(f"Bleher-Eynard parameter must satisfy |c| < 1, got {c}")
    return Potential([8.0 * c, 2.0 * c * c - 1.0, -4.0 * c / 3.0, 0.25], name=f"bleher_eynard(c={c:g})")


def quartic_even() -> Potential:
    return Potential([0.0, -1.0, 0.0, 0.25], name="quartic_even")


def be_critical_temperature(c: float) -> float:
    return 1.0 + 4.0 * c * c


def quartic_even_one_cut(T: float) -> EndpointConfig:
    """One-cut endpoints ``+-(2/sqrt3) sqrt(1 + sqrt(1 + 3T))`` for ``T >= 1``."""
    if not T >= 1.0:
        raise DomainError(f"one-cut closed form needs T >= 1, got {T}")
    b = 2.0 / math.sqrt(3.0) * math.sqrt(1.0 + math.sqrt(1.0 + 3.0 * T))
    return EndpointConfig((-b, b))


def quartic_even_one_cut_velocity(T: float) -> np.ndarray:
    b = quartic_even_one_cut(T).beta[1]
    v = 1.0 / (b * math.sqrt(1.0 + 3.0 * T))
    return np.array([-v, v])


def quartic_even_two_cut(T: float) -> EndpointConfig:
    """Two-cut endpoints ``+-sqrt(2(1 +- sqrt T))`` for ``0 < T < 1``."""
    if not 0.0 < T < 1.0:
        raise DomainError(f"two-cut closed form needs 0 < T < 1, got {T}")
    a = math.sqrt(2.0 * (1.0 + math.sqrt(T)))
    b = math.sqrt(2.0 * (1.0 - math.sqrt(T)))
    return EndpointConfig((-a, -b, b, a))


def be_minimum(c: float) -> float:
    """Location of the absolute minimum of the Bleher-Eynard potential.

    The support shrinks onto this point as ``T -> 0``.  At ``c = 0`` the
    minimum is attained at two points and the limit is not a single point.
    """
    c = float(c)
    if not -1.0 < c < 1.0:
        raise DomainError(f"|c| < 1 required, got {c}")
    if c == 0.0:
        raise DomainError("c = 0 has two absolute minima (+-sqrt 2); no single collapse point")
    pot = bleher_eynard(c)
    roots = pot.dV.roots()
    real = np.real(roots[np.abs(np.imag(roots)) < 1e-8])
    d2 = pot.dV.deriv()
    best = min((x for x in real if d2(x) > 0), key=lambda x: pot.V(x))
    # polish: the eigenvalue solver leaves ~1e-15 relative error
    for _ in range(3):
        best = best - pot.dV(best) / d2(best)
    return float(best)
