"""Dense real polynomials and expansions of the branch ``w1`` at infinity.

``w1(z)`` is the branch of ``sqrt(prod(z - beta_i))`` that behaves like
``z**s`` for large ``z``.  Writing ``u = 1/z``::

    w1(z) = z**s * prod(1 - beta_i u)**(1/2)

so every Laurent expansion needed here reduces to a product of binomial
series in ``u``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError


class Polynomial:
    """Real polynomial stored densely in ascending degree order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[float]):
        c = np.array(coeffs, dtype=float).ravel()
        n = len(c)
        while n > 0 and c[n - 1] == 0.0:
            n -= 1
        c = c[:n].copy()
        c.flags.writeable = False
        self.coeffs = c

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls([])

    @classmethod
    def monomial(cls, n: int, a: float = 1.0) -> "Polynomial":
        c = np.zeros(n + 1)
        c[n] = a
        return cls(c)

    @classmethod
    def from_roots(cls, roots: Sequence[float]) -> "Polynomial":
        p = cls([1.0])
        for r in roots:
            p = p * cls([-r, 1.0])
        return p

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for a in self.coeffs[::-1]:
            out = out * x + a
        return out if out.ndim else float(out)

    def coef(self, n: int) -> float:
        return float(self.coeffs[n]) if 0 <= n < len(self.coeffs) else 0.0

    def deriv(self) -> "Polynomial":
        if self.degree < 1:
            return Polynomial.zero()
        return Polynomial(self.coeffs[1:] * np.arange(1, len(self.coeffs)))

    def integ(self) -> "Polynomial":
        """Antiderivative vanishing at zero."""
        if self.is_zero():
            return Polynomial.zero()
        return Polynomial(np.concatenate([[0.0], self.coeffs / np.arange(1, len(self.coeffs) + 1)]))

    def roots(self) -> np.ndarray:
        if self.degree < 1:
            return np.array([])
        return np.roots(self.coeffs[::-1])

    def _binary(self, other, sign):
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros(n)
        a[: len(self.coeffs)] += self.coeffs
        a[: len(other.coeffs)] += sign * other.coeffs
        return Polynomial(a)

    def __add__(self, other):
        return self._binary(other, 1.0)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, -1.0)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Polynomial(-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if self.is_zero() or other.is_zero():
                return Polynomial.zero()
            return Polynomial(np.convolve(self.coeffs, other.coeffs))
        return Polynomial(self.coeffs * float(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar: float):
        return Polynomial(self.coeffs / float(scalar))

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def allclose(self, other: "Polynomial", atol: float = 1e-12) -> bool:
        d = self - other
        return bool(np.all(np.abs(d.coeffs) <= atol))

    def __repr__(self):
        return f"Polynomial({self.coeffs.tolist()!r})"


class Potential:
    """Even-degree potential ``V(z) = sum_{n>=1} t_n z**n`` with ``t_2p > 0``.

    ``coeffs`` holds ``t_1 ... t_2p``; there is no constant term.  The
    temperature enters the flows through ``t_0 = -T`` and is not stored here.
    """

    def __init__(self, coeffs: Sequence[float], name: str | None = None):
        t = np.array(coeffs, dtype=float).ravel()
        if len(t) < 2 or len(t) % 2:
            raise DomainError(f"potential degree must be even and >= 2, got {len(t)}")
        if not t[-1] > 0:
            raise DomainError("leading coefficient of the potential must be positive")
        t.flags.writeable = False
        self.t = t
        self.name = name
        self.V = Polynomial(np.concatenate([[0.0], t]))
        self.dV = self.V.deriv()

    @property
    def degree(self) -> int:
        return len(self.t)

    @property
    def p(self) -> int:
        return len(self.t) // 2

    def coupling(self, k: int, T: float) -> float:
        """``t_k`` with the convention ``t_0 = -T``."""
        if k == 0:
            return -T
        return float(self.t[k - 1]) if k <= len(self.t) else 0.0

    def max_cuts(self) -> int:
        return self.degree // 2

    def __call__(self, x):
        return self.V(x)

    def __repr__(self):
        label = f"{self.name}, " if self.name else ""
        return f"Potential({label}t={self.t.tolist()!r})"


@dataclass(frozen=True)
class LaurentTail:
    """Truncated expansion ``sum_k coeffs[k] * z**(order - k)`` at infinity."""

    order: int
    coeffs: np.ndarray

    @property
    def n_terms(self) -> int:
        return len(self.coeffs)

    def coef(self, power: int) -> float:
        k = self.order - power
        if k < 0:
            return 0.0
        if k >= len(self.coeffs):
            raise IndexError(f"z**{power} lies beyond the truncation of this series")
        return float(self.coeffs[k])


def check_endpoints(endpoints, allow_coincident: bool = False) -> np.ndarray:
    b = np.asarray(endpoints, dtype=float).ravel()
    if len(b) == 0 or len(b) % 2:
        raise DomainError(f"need an even, non-zero number of endpoints, got {len(b)}")
    if not np.all(np.isfinite(b)):
        raise DomainError("endpoints must be finite")
    d = np.diff(b)
    if np.any(d < 0) or (not allow_coincident and np.any(d <= 0)):
        raise DomainError(f"endpoints must be strictly increasing: {b}")
    return b


def _binomial_product(endpoints: np.ndarray, exponent: float, n_terms: int) -> np.ndarray:
    """Coefficients of ``prod_i (1 - beta_i u)**exponent`` up to ``u**(n_terms-1)``."""
    out = np.zeros(n_terms)
    out[0] = 1.0
    for beta in endpoints:
        c = np.empty(n_terms)
        c[0] = 1.0
        for k in range(1, n_terms):
            c[k] = c[k - 1] * (k - 1 - exponent) / k * beta
        out = np.convolve(out, c)[:n_terms]
    return out


def inv_sqrt_branch_series(endpoints, n_terms: int, *, allow_coincident: bool = False) -> LaurentTail:
    """Expansion of ``1/w1(z)`` at infinity: ``z**-s (1 + a_1/z + ...)``.

    Raises :class:`DomainError` unless the endpoints strictly increase.
    """
    b = check_endpoints(endpoints, allow_coincident)
    if n_terms < 1:
        raise DomainError("n_terms must be >= 1")
    return LaurentTail(-(len(b) // 2), _binomial_product(b, -0.5, n_terms))


def sqrt_branch_series(endpoints, n_terms: int, *, allow_coincident: bool = False) -> LaurentTail:
    """Expansion of ``w1(z)`` itself: ``z**s (1 + a_1/z + ...)``."""
    b = check_endpoints(endpoints, allow_coincident)
    if n_terms < 1:
        raise DomainError("n_terms must be >= 1")
    return LaurentTail(len(b) // 2, _binomial_product(b, 0.5, n_terms))


def laurent_times(numer: Polynomial, tail: LaurentTail) -> LaurentTail:
    """Product of a polynomial and a truncated Laurent series.

    The result is exact down to ``z**(tail.order - tail.n_terms + 1)``.
    """
    if numer.is_zero():
        return LaurentTail(tail.order, np.zeros(tail.n_terms))
    d = numer.degree
    full = np.convolve(numer.coeffs[::-1], tail.coeffs)
    return LaurentTail(tail.order + d, full[: tail.n_terms])


def _series_length(numer: Polynomial, s: int) -> int:
    return max(numer.degree, 0) + s + 4


def _poly_part(series: LaurentTail) -> Polynomial:
    if series.order < 0:
        return Polynomial.zero()
    return Polynomial(series.coeffs[: series.order + 1][::-1])


def polynomial_part(numer: Polynomial, endpoints, *, allow_coincident: bool = False) -> Polynomial:
    """``(numer(z) / w1(z))`` truncated to its polynomial part at infinity."""
    b = check_endpoints(endpoints, allow_coincident)
    s = len(b) // 2
    tail = inv_sqrt_branch_series(b, _series_length(numer, s), allow_coincident=allow_coincident)
    return _poly_part(laurent_times(numer, tail))


def polynomial_part_times_branch(numer: Polynomial, endpoints, *, allow_coincident: bool = False) -> Polynomial:
    """``(numer(z) * w1(z))`` truncated to its polynomial part at infinity."""
    b = check_endpoints(endpoints, allow_coincident)
    s = len(b) // 2
    tail = sqrt_branch_series(b, _series_length(numer, s) + s, allow_coincident=allow_coincident)
    return _poly_part(laurent_times(numer, tail))


def branch_over_z_part(endpoints, *, allow_coincident: bool = False) -> Polynomial:
    """``(w1(z) / z)`` truncated to its polynomial part (degree ``s - 1``)."""
    b = check_endpoints(endpoints, allow_coincident)
    s = len(b) // 2
    tail = sqrt_branch_series(b, s + 2, allow_coincident=allow_coincident)
    return Polynomial(tail.coeffs[:s][::-1])


def h_polynomial(pot: Potential, endpoints, *, allow_coincident: bool = False) -> Polynomial:
    """``h(z) = (V'(z) / w1(z))_+``, of degree ``deg V - s - 1``."""
    return polynomial_part(pot.dV, endpoints, allow_coincident=allow_coincident)


def infinity_moment(j: int, pot: Potential, endpoints) -> float:
    """``(1/2 pi i)`` times the loop integral of ``z**j V'(z) / w1(z)``.

    Computed as the ``z**-1`` coefficient of the expansion at infinity.  The
    endpoint conditions require it to vanish for ``j = 0 .. s-1``.
    """
    if j < 0 or j > pot.degree:
        raise DomainError(f"moment index must lie in [0, {pot.degree}], got {j}")
    b = check_endpoints(endpoints)
    s = len(b) // 2
    numer = Polynomial.monomial(j) * pot.dV
    tail = inv_sqrt_branch_series(b, _series_length(numer, s))
    return laurent_times(numer, tail).coef(-1)


def normalization_moment(pot: Potential, endpoints) -> float:
    """``z**-1`` coefficient of ``h(z) w1(z)``.

    The normalization of the density reads ``-coef / (2T) = 1``.
    """
    b = check_endpoints(endpoints)
    s = len(b) // 2
    h = h_polynomial(pot, b)
    tail = sqrt_branch_series(b, _series_length(h, s) + s)
    return laurent_times(h, tail).coef(-1)
