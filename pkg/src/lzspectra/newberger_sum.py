"""Closed forms and truncated-series oracles for sums of Bessel products over ``n + mu``.

Canonical orientation (integer shifts ``p``, ``q`` with ``p + q >= 0``)::

    sum_n J_{n+p}(x) J_{n-q}(x) / (n + mu) = (-1)^q pi/sin(pi mu) J_{p-mu}(x) J_{q+mu}(x)

The general stride form carries an explicit ``(-1)^n``::

    sum_n (-1)^n J_{a+s n}(x) J_{b-s n}(x) / (n + mu) = pi/sin(pi mu) J_{a-s mu}(x) J_{b+s mu}(x)

With ``s = 1, a = p, b = q`` the ``(-1)^n`` is absorbed by ``J_{q-n} = (-1)^{n-q} J_{n-q}``,
which is where the ``(-1)^q`` of the integer form comes from.

The series routes use scipy's integer-order ``jv`` and never touch
:func:`lzspectra.special_functions.bessel_j`, so the two sides stay independent.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, j0, jv, rgamma

from .errors import AccuracyError, DomainError, PoleError
from .special_functions import (
    EPS,
    ComplexOrder,
    EvalResult,
    OrderLike,
    as_complex,
    bessel_j,
    sin_pi,
)

POLE_TOL = 1e-8
MAX_WINDOW = 1_000_000
# below this argument a Bessel product is summed as one power series
_PAIR_SERIES_MAX_X = 0.5


def check_pole(mu: complex) -> None:
    n = round(mu.real)
    if abs(mu.real - n) < POLE_TOL and abs(mu.imag) < POLE_TOL:
        raise PoleError(mu, int(n))


@dataclass(frozen=True)
class SumSpec:
    p: int
    q: int
    mu: ComplexOrder
    x: float

    def __post_init__(self):
        object.__setattr__(self, "mu", ComplexOrder.of(self.mu))
        if int(self.p) != self.p or int(self.q) != self.q:
            raise DomainError("p and q must be integers")
        if self.p + self.q <= -1:
            raise DomainError(f"convergence needs p + q > -1, got p={self.p}, q={self.q}")
        if not (self.x >= 0 and math.isfinite(self.x)):
            raise DomainError(f"x must be finite and >= 0, got {self.x}")


@dataclass(frozen=True)
class GeneralSumSpec:
    alpha: complex
    beta: complex
    stride: float
    mu: ComplexOrder
    x: float

    def __post_init__(self):
        object.__setattr__(self, "mu", ComplexOrder.of(self.mu))
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        if not 0 < self.stride <= 1:
            raise DomainError(f"stride must lie in (0, 1], got {self.stride}")
        if (self.alpha + self.beta).real <= -1:
            raise DomainError("convergence needs Re(alpha + beta) > -1")
        if not (self.x >= 0 and math.isfinite(self.x)):
            raise DomainError(f"x must be finite and >= 0, got {self.x}")


def bessel_pair(a: complex, b: complex, x: float) -> complex:
    """``J_a(x) J_b(x)``, including the finite ``x -> 0`` limit when ``a + b = 0``."""
    if x == 0.0:
        s = a + b
        if s == 0:
            return 1.0 + 0j if a == 0 else sin_pi(a) / (math.pi * a)
        if s.real > 0:
            return 0j
        raise DomainError(f"J_{a} J_{b} is unbounded at x = 0")
    if x <= _PAIR_SERIES_MAX_X:
        return _bessel_pair_series(a, b, x)
    return bessel_j(a, x).value * bessel_j(b, x).value


def _bessel_pair_series(a: complex, b: complex, x: float) -> complex:
    # J_a J_b = sum_k (-1)^k (x/2)^(a+b+2k) G(a+b+2k+1) / (k! G(a+k+1) G(b+k+1) G(a+b+k+1));
    # one power series, so tiny x cannot overflow a single factor
    s = a + b
    h = 0.5 * x
    total, k = 0j, 0
    while k < 60:
        poch = 1.0 + 0j
        for j in range(k):
            poch *= s + k + 1 + j
        term = (-h * h) ** k * poch / math.factorial(k) * rgamma(a + k + 1) * rgamma(b + k + 1)
        total += term
        if k >= 2 and abs(term) <= 0.25 * EPS * abs(total):
            break
        k += 1
    if s == 0:
        return complex(total)
    return complex(total * cmath.exp(s * (math.log(x) - math.log(2.0))))


def pair_sum(mu: OrderLike, x: float) -> complex:
    """``pi/sin(pi mu) J_mu(x) J_{-mu}(x)``, the closed form of ``sum_n J_n(x)^2/(n + mu)``."""
    return pair_sum_eval(mu, x).value


def pair_sum_eval(mu: OrderLike, x: float) -> EvalResult:
    mu = as_complex(mu)
    check_pole(mu)
    if x == 0.0:
        return EvalResult(1.0 / mu, 0.0, 1)
    if abs(mu) >= 2.0 * x + 10.0:
        # J_-mu alone would overflow long before the product does
        return pair_sum_small_x(mu, x)
    pref = math.pi / sin_pi(mu)
    if x <= _PAIR_SERIES_MAX_X:
        v = pref * _bessel_pair_series(mu, -mu, x)
        return EvalResult(v, 8 * EPS * abs(v), 1)
    a, b = bessel_j(mu, x), bessel_j(-mu, x)
    err = abs(pref) * (a.est_error * abs(b.value) + b.est_error * abs(a.value))
    return EvalResult(pref * a.value * b.value, err, a.terms_used + b.terms_used)


def pair_sum_small_x(mu: OrderLike, x: float, m_max: int = None) -> EvalResult:
    """Expansion ``(1/mu) (1 + sum_m (2m)!/(2^2m m!^2) x^2m / prod_k (mu^2 - k^2))``.

    With ``m_max=None`` terms are added until they drop below machine precision.
    """
    mu = as_complex(mu)
    if mu == 0:
        raise DomainError("mu = 0: the small-x expansion is singular")
    mu2, x2 = mu * mu, x * x
    total, term, m = 1.0 + 0j, 1.0 + 0j, 0
    limit = m_max if m_max is not None else 10_000
    while m < limit:
        m += 1
        d = mu2 - m * m
        if abs(d) < 1e-8 * m * m:
            raise PoleError(mu, m if mu.real > 0 else -m)
        term *= (2 * m - 1) / (2 * m) * x2 / d
        total += term
        if m_max is None and abs(term) <= 0.25 * EPS * abs(total) and m * m > abs(mu2) + x2:
            break
    else:
        if m_max is None:
            raise AccuracyError("small-x expansion did not converge", abs(term / total))
    return EvalResult(total / mu, 4 * EPS * m * abs(total / mu), m + 1)


def sum_exact(spec: SumSpec) -> complex:
    mu = spec.mu.value
    check_pole(mu)
    sign = -1 if spec.q % 2 else 1
    return sign * math.pi / sin_pi(mu) * bessel_pair(spec.p - mu, spec.q + mu, spec.x)


def sum_exact_general(spec: GeneralSumSpec) -> complex:
    mu = spec.mu.value
    check_pole(mu)
    s = spec.stride
    return math.pi / sin_pi(mu) * bessel_pair(spec.alpha - s * mu, spec.beta + s * mu, spec.x)


def cosine_sum(mu: OrderLike, phi: float) -> complex:
    """``sum_n (-1)^n cos(n phi)/(n + mu) = pi cos(mu phi)/sin(pi mu)`` for ``|phi| <= pi``."""
    mu = as_complex(mu)
    if abs(phi) > math.pi:
        raise DomainError(f"phi must lie in [-pi, pi], got {phi}")
    check_pole(mu)
    return math.pi * cmath.cos(mu * phi) / sin_pi(mu)


def pair_sum_nicholson(mu: OrderLike, x: float, quad_points: int = 512) -> complex:
    """``sum_n J_n(x)^2/(n+mu)`` by summing under the Nicholson integral.

    ``(2/pi) int_0^{pi/2} J0(2x cos t) * cosine_sum(mu, 2t) dt``; Gauss-Legendre nodes.
    """
    mu = as_complex(mu)
    check_pole(mu)
    nodes, weights = np.polynomial.legendre.leggauss(int(quad_points))
    theta = 0.25 * math.pi * (nodes + 1.0)
    kernel = np.cos(2.0 * mu * theta) * (math.pi / sin_pi(mu))
    integrand = j0(2.0 * x * np.cos(theta)) * kernel
    return complex(0.5 * np.sum(weights * integrand))


# ---------------------------------------------------------------------------
# truncated series


def default_window(x: float, mu: complex) -> int:
    return (
        math.ceil(x)
        + math.ceil(6.0 * (x + 1.0) ** (1.0 / 3.0))
        + math.ceil(abs(mu))
        + 20
    )


def bessel_bound(k: np.ndarray, x: float) -> np.ndarray:
    """Upper bound ``min(1, (x/2)^|k| / |k|!)`` on ``|J_k(x)|`` for integer ``k``."""
    k = np.abs(k)
    if x == 0.0:
        return (k == 0).astype(float)
    logb = k * (math.log(x) - math.log(2.0)) - gammaln(k + 1.0)
    return np.minimum(1.0, np.exp(np.minimum(logb, 0.0)))


def _tail_indices(n_window: int) -> np.ndarray:
    right = np.arange(n_window + 1, 3 * n_window + 60)
    return np.concatenate([right, -right])


def sum_series(spec: SumSpec, rel_tol: float = 1e-12) -> EvalResult:
    """Brute-force ``sum_{|n|<=N} J_{n+p}(x) J_{n-q}(x)/(n+mu)`` with a rigorous tail bound."""
    if rel_tol < 1e-14:
        raise DomainError("rel_tol must be >= 1e-14")
    mu = spec.mu.value
    check_pole(mu)
    p, q, x = spec.p, spec.q, spec.x
    n_window = default_window(x, mu) + abs(p) + abs(q)

    def terms(n):
        return jv(n + p, x) * jv(n - q, x) / (n + mu)

    def tail_of(n_window):
        n = _tail_indices(n_window)
        return float(
            np.sum(bessel_bound(n + p, x) * bessel_bound(n - q, x) / np.abs(n + mu))
        )

    return _adaptive(terms, tail_of, n_window, rel_tol)


def lorentzian_comb(center: float, width: float, x: float, rel_tol: float = 1e-12) -> EvalResult:
    """``sum_n J_n(x)^2 * width / ((n - center)^2 + width^2)`` truncated adaptively."""
    if rel_tol < 1e-14:
        raise DomainError("rel_tol must be >= 1e-14")
    if width < 0:
        raise DomainError("width must be >= 0")
    if width == 0 and float(center).is_integer():
        raise PoleError(complex(center), int(center))
    n_window = default_window(x, complex(center, width))

    def terms(n):
        return jv(n, x) ** 2 * width / ((n - center) ** 2 + width * width)

    def tail_of(n_window):
        n = _tail_indices(n_window)
        lor = width / ((n - center) ** 2 + width * width)
        return float(np.sum(bessel_bound(n, x) ** 2 * lor))

    r = _adaptive(terms, tail_of, n_window, rel_tol)
    return EvalResult(r.value.real, r.est_error, r.terms_used)


def _adaptive(terms, tail_of, n_window: int, rel_tol: float) -> EvalResult:
    while True:
        n = np.arange(-n_window, n_window + 1)
        t = terms(n)
        total = complex(np.sum(t))
        rounding = 4 * EPS * float(np.sum(np.abs(t))) * math.sqrt(t.size)
        tail = tail_of(n_window)
        if tail <= rel_tol * abs(total) or tail == 0.0:
            return EvalResult(total, tail + rounding, int(t.size))
        if n_window >= MAX_WINDOW:
            raise AccuracyError("truncated series did not reach rel_tol", tail / abs(total))
        n_window = min(2 * n_window, MAX_WINDOW)
