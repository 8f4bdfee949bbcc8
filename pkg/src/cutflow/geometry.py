"""Normalized polynomials ``P_k`` for one- and two-cut endpoint configurations.

For ``s`` cuts,

    P_k(z) = (delta_k0 + k/2) (z**(k-1) w1(z))_+ + (constant, s = 2 only)

and the constant is fixed by requiring ``P_k / w`` to integrate to zero
across the gap ``(beta_2, beta_3)``.  Gap integrals are reduced to the
normalized moments ``mu_m = I_m / I_0`` with

    I_m = int_{beta_2}^{beta_3} x**m / sqrt(Q(x)) dx,    Q = prod(x - beta_i) > 0 on the gap.

``mu_0 .. mu_2`` have closed forms in K, E and Pi; higher moments follow from
integrating ``d(x**j sqrt(Q)) = 0`` across the gap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import elliptic
from .errors import DomainError
from .polyops import Polynomial, check_endpoints, polynomial_part_times_branch

COALESCENCE_RTOL = 1e-9


def coalescence_tol(beta: float) -> float:
    return COALESCENCE_RTOL * max(1.0, abs(beta))


@dataclass(frozen=True, eq=False)
class EndpointConfig:
    """Sorted endpoints ``beta_1 < ... < beta_2s`` of an ``s``-cut support.

    Parameters
    ----------
    beta : sequence of float
        Endpoints in increasing order; the length fixes ``s``.
    allow_coincident : bool
        Accept equal neighbours.  Only the degenerate configurations at a
        transition need this.
    """

    beta: tuple
    allow_coincident: bool = False

    def __init__(self, beta, allow_coincident: bool = False):
        b = check_endpoints(beta, allow_coincident)
        if len(b) > 4:
            raise DomainError(f"only one- and two-cut configurations are supported, got {len(b) // 2} cuts")
        object.__setattr__(self, "beta", tuple(float(x) for x in b))
        object.__setattr__(self, "allow_coincident", allow_coincident)

    @property
    def s(self) -> int:
        return len(self.beta) // 2

    @property
    def array(self) -> np.ndarray:
        return np.array(self.beta)

    def cuts(self) -> list[tuple[float, float]]:
        b = self.beta
        return [(b[2 * j], b[2 * j + 1]) for j in range(self.s)]

    def gaps(self) -> np.ndarray:
        return np.diff(self.array)

    def min_gap(self) -> float:
        return float(np.min(self.gaps()))

    def check_potential(self, pot) -> None:
        if self.s > pot.max_cuts():
            raise DomainError(f"{self.s} cuts exceed the bound deg V / 2 = {pot.max_cuts()}")

    def coalesced_pair(self) -> int | None:
        """1-based index ``l`` with ``beta_l == beta_{l+1}`` within tolerance."""
        b = self.beta
        for l in range(len(b) - 1):
            if b[l + 1] - b[l] <= coalescence_tol(b[l]):
                return l + 1
        return None

    def __eq__(self, other):
        if not isinstance(other, EndpointConfig):
            return NotImplemented
        return self.beta == other.beta

    def __hash__(self):
        return hash(self.beta)

    def __repr__(self):
        return f"EndpointConfig(s={self.s}, beta={list(self.beta)!r})"

    @cached_property
    def _ellip(self) -> "TwoCutModuli":
        return TwoCutModuli.from_config(self)


def _require(config: EndpointConfig, s: int) -> None:
    if config.s != s:
        raise DomainError(f"expected a {s}-cut configuration, got s={config.s}")


def _base_part(k: int, beta) -> Polynomial:
    """``(delta_k0 + k/2) (z**(k-1) w1)_+``."""
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    if k == 0:
        # (w1 / z)_+ : drop one power from (z w1 / z**2)
        full = polynomial_part_times_branch(Polynomial([1.0]), beta, allow_coincident=True)
        return Polynomial(full.coeffs[1:])
    return (k / 2.0) * polynomial_part_times_branch(Polynomial.monomial(k - 1), beta, allow_coincident=True)


def p_k_one_cut(k: int, config: EndpointConfig) -> Polynomial:
    """``P_k = (delta_k0 + k/2) (z**(k-1) sqrt((z-beta_1)(z-beta_2)))_+``."""
    _require(config, 1)
    return _base_part(k, config.beta)


@dataclass(frozen=True)
class TwoCutModuli:
    """Elliptic data of a two-cut configuration.

    ``rc`` and ``sc`` are ``1 - r`` and ``1 - s`` formed from endpoint
    differences, so they keep full relative accuracy near coalescence.
    """

    r: float
    s: float
    rc: float
    sc: float
    pi_over_k: float
    e_over_k: float

    @classmethod
    def from_config(cls, config: EndpointConfig) -> "TwoCutModuli":
        _require(config, 2)
        b1, b2, b3, b4 = config.beta
        d31, d42 = b3 - b1, b4 - b2
        r = (b3 - b2) / d42
        rc = (b4 - b3) / d42
        s = (b4 - b1) * (b3 - b2) / (d31 * d42)
        sc = (b2 - b1) * (b4 - b3) / (d31 * d42)
        if sc <= 0.0:
            # Exterior pair merged: K is infinite, E/K -> 0, and Pi/K -> 1/(1-r)
            # unless r -> 1 too, in which case (beta_4 - beta_3) Pi/K -> 0.
            pk = 1.0 / rc if rc > 0 else math.inf
            return cls(r, s, rc, 0.0, pk, 0.0)
        pk = elliptic._pi_over_k(r, s, rc, sc)
        ek = elliptic._ellip_e(sc) / elliptic._ellip_k(sc)
        return cls(r, s, rc, sc, pk, ek)


def c_center(config: EndpointConfig) -> float:
    """Root ``C = beta_4 - (beta_4 - beta_3) Pi(r,s)/K(s)`` of the two-cut ``P_0``."""
    _require(config, 2)
    b4, b3 = config.beta[3], config.beta[2]
    m = config._ellip
    if b4 == b3:
        return b4
    return b4 - (b4 - b3) * m.pi_over_k


def gap_moments(config: EndpointConfig, n: int) -> np.ndarray:
    """Normalized gap moments ``mu_0 .. mu_n`` (``mu_0 = 1``).

    Parameters
    ----------
    config : EndpointConfig
        Two-cut configuration; coincident neighbours are allowed.
    n : int
        Highest moment order.
    """
    _require(config, 2)
    b1, b2, b3, b4 = config.beta
    mu = np.zeros(max(n, 2) + 1)
    mu[0] = 1.0
    if b4 == b3:
        # The gap weight collapses onto beta_3.  The approach is only
        # logarithmic in beta_4 - beta_3, so nothing short of equality snaps.
        mu[:] = b3 ** np.arange(len(mu))
        return mu[: n + 1]

    m = config._ellip
    mu[1] = c_center(config)
    mu[2] = 0.5 * (
        2.0 * b4 * b4
        - (b4 - b3) * (b4 - b2)
        - (b3 - b1) * (b4 - b2) * m.e_over_k
        - (b1 + b2 + b3 + b4) * (b4 - b3) * m.pi_over_k
    )
    q = Polynomial.from_roots(config.beta).coeffs
    # (j+2) mu_{j+3} = -sum_{m<4} q_m (j + m/2) mu_{j+m-1}
    for j in range(0, n - 2):
        acc = 0.0
        for mm in range(4):
            if j + mm - 1 >= 0:
                acc += q[mm] * (j + 0.5 * mm) * mu[j + mm - 1]
        mu[j + 3] = -acc / (j + 2.0)
    return mu[: n + 1]


def gap_moments_chebyshev(config: EndpointConfig, n: int, nodes: int = 64) -> np.ndarray:
    """Same moments by Gauss-Chebyshev quadrature on the gap.

    Spectrally accurate while the outer endpoints stay well separated from
    the gap; loses accuracy as ``beta_1 -> beta_2`` or ``beta_3 -> beta_4``.
    """
    _require(config, 2)
    b1, b2, b3, b4 = config.beta
    phi = (np.arange(nodes) + 0.5) * np.pi / nodes
    x = 0.5 * (b2 + b3) + 0.5 * (b3 - b2) * np.cos(phi)
    w = 1.0 / np.sqrt((x - b1) * (b4 - x))
    i0 = w.sum()
    return np.array([(w * x**m).sum() / i0 for m in range(n + 1)])


def c_k0_two_cut(k: int, config: EndpointConfig) -> float:
    """Constant that normalizes the two-cut ``P_k`` across the gap.

    This is the constant added to ``(delta_k0 + k/2)(z**(k-1) w1)_+``.
    """
    _require(config, 2)
    base = _base_part(k, config.beta)
    mu = gap_moments(config, base.degree)
    return -float(np.dot(base.coeffs, mu[: len(base.coeffs)]))


def p_k_two_cut(k: int, config: EndpointConfig) -> Polynomial:
    """Two-cut ``P_k``, of degree ``k + 1`` (degree 1 for ``k = 0``)."""
    _require(config, 2)
    base = _base_part(k, config.beta)
    mu = gap_moments(config, base.degree)
    c = -float(np.dot(base.coeffs, mu[: len(base.coeffs)]))
    return base + c


def p_k(k: int, config: EndpointConfig) -> Polynomial:
    """Dispatch on the phase of ``config``."""
    if config.s == 1:
        return p_k_one_cut(k, config)
    return p_k_two_cut(k, config)


def reduce_config(config: EndpointConfig, l: int) -> EndpointConfig:
    """Drop the coalesced pair ``beta_l = beta_{l+1}`` (1-based ``l``)."""
    _require(config, 2)
    b = list(config.beta)
    if not 1 <= l <= len(b) - 1:
        raise DomainError(f"pair index must lie in [1, {len(b) - 1}], got {l}")
    if abs(b[l] - b[l - 1]) > coalescence_tol(b[l - 1]):
        raise DomainError(f"beta_{l} and beta_{l + 1} are not coalesced: {b[l - 1]} vs {b[l]}")
    return EndpointConfig(b[: l - 1] + b[l + 1 :])
