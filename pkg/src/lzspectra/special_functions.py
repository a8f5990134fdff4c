"""Bessel J of complex order, Airy Ai and Legendre P of complex degree.

Everything here works on plain Python complex numbers. Orders are accepted
as :class:`ComplexOrder`, ``complex``, ``float`` or a ``(re, im)`` pair.

Evaluation strategy for ``J_nu(x)`` with real ``x >= 0``:

* ascending power series when its cancellation is harmless (small ``x``);
* Hankel's asymptotic expansion when ``x > max(30, 2|nu|^2)`` and the
  expansion converges to working precision;
* Miller's backward recurrence over ``nu - floor(Re nu) + k`` otherwise,
  normalised with the Neumann series for ``(x/2)^nu``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Tuple, Union

from scipy.special import loggamma

from .errors import AccuracyError, DomainError

EPS = 2.220446049250313e-16

# accept a series result if the estimated relative rounding error is below this
_SERIES_REL_TOL = 1e-14
_HANKEL_MIN_X = 30.0


@dataclass(frozen=True)
class ComplexOrder:
    """A complex Bessel order (or detuning) ``re + i*im``."""

    re: float
    im: float = 0.0

    @classmethod
    def of(cls, value: "OrderLike") -> "ComplexOrder":
        if isinstance(value, ComplexOrder):
            return value
        if isinstance(value, tuple):
            re, im = value
            return cls(float(re), float(im))
        z = complex(value)
        return cls(z.real, z.imag)

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def conj(self) -> "ComplexOrder":
        return ComplexOrder(self.re, -self.im)

    def __neg__(self) -> "ComplexOrder":
        return ComplexOrder(-self.re, -self.im)

    def __complex__(self) -> complex:
        return self.value

    def is_real_integer(self) -> bool:
        return self.im == 0.0 and float(self.re).is_integer()


OrderLike = Union[ComplexOrder, complex, float, int, Tuple[float, float]]


@dataclass(frozen=True)
class EvalResult:
    value: complex
    est_error: float
    terms_used: int


def as_complex(order: OrderLike) -> complex:
    if isinstance(order, ComplexOrder):
        return order.value
    if isinstance(order, tuple):
        return complex(order[0], order[1])
    return complex(order)


def sin_pi(z: complex) -> complex:
    """``sin(pi z)`` with the real part reduced first, so integers give exact zeros."""
    n = round(z.real)
    s = cmath.sin(math.pi * (z - n))
    return -s if n % 2 else s


def cos_pi(z: complex) -> complex:
    n = round(z.real)
    c = cmath.cos(math.pi * (z - n))
    return -c if n % 2 else c


def _check_finite(*values: complex) -> None:
    for v in values:
        if not cmath.isfinite(v):
            raise DomainError(f"non-finite input {v!r}")


# ---------------------------------------------------------------------------
# Bessel J


def bessel_j(order: OrderLike, x: float) -> EvalResult:
    """``J_order(x)`` for complex order and real ``x >= 0``."""
    nu = as_complex(order)
    x = float(x)
    _check_finite(nu, x)
    if x < 0:
        raise DomainError(f"x must be >= 0, got {x}")
    try:
        if nu.imag < 0:
            r = _bessel_j(nu.conjugate(), x)
            r = EvalResult(r.value.conjugate(), r.est_error, r.terms_used)
        else:
            r = _bessel_j(nu, x)
    except OverflowError:
        r = None
    if r is None or not cmath.isfinite(r.value):
        raise AccuracyError(f"J_{nu}({x}) overflows double precision", math.inf)
    return r


def _bessel_j(nu: complex, x: float) -> EvalResult:
    if nu.imag == 0 and nu.real.is_integer():
        n = int(nu.real)
        if n < 0:
            r = _bessel_j(complex(-n, 0.0), x)
            return r if n % 2 == 0 else EvalResult(-r.value, r.est_error, r.terms_used)
    if x == 0.0:
        if nu == 0:
            return EvalResult(1.0 + 0j, 0.0, 1)
        if nu.real > 0:
            return EvalResult(0j, 0.0, 1)
        raise DomainError(f"J_nu(0) is unbounded for order {nu}")

    if x <= 25.0 or abs(nu) > x:
        r = _ascending_series(nu, x)
        if r is not None:
            return r
    if x > max(_HANKEL_MIN_X, 2.0 * abs(nu) ** 2):
        r = _hankel(nu, x)
        if r is not None:
            return r
    return _miller(nu, x)


def _ascending_series(nu: complex, x: float):
    """Power series; returns None when cancellation would cost too many digits."""
    h = 0.5 * x
    q = -h * h
    if (nu + 1).imag == 0 and (nu + 1).real <= 0 and (nu + 1).real.is_integer():
        raise AssertionError("integer orders are reduced before reaching here")
    # log(x) - log 2 rather than log(h): h underflows to 0 for subnormal x
    term = cmath.exp(nu * (math.log(x) - math.log(2.0)) - complex(loggamma(nu + 1)))
    total = term
    abs_sum = abs(term)
    small = 0
    k = 0
    while True:
        k += 1
        term = term * q / (k * (nu + k))
        total += term
        a = abs(term)
        abs_sum += a
        if a <= 1e-17 * abs(total):
            small += 1
            if small >= 3 and k > h:
                break
        else:
            small = 0
        if k > 2000:
            return None
    scale = abs(total)
    rounding = 4 * EPS * abs_sum
    if abs_sum == 0:
        # every term underflowed: the value is below the smallest double
        return EvalResult(0j, 5e-324, k + 1)
    if scale == 0 or rounding > _SERIES_REL_TOL * scale:
        return None
    return EvalResult(total, rounding + abs(term), k + 1)


def _hankel(nu: complex, x: float):
    mu4 = 4.0 * nu * nu
    u = 1.0 + 0j
    p = u
    qsum = 0j
    prev = math.inf
    k = 0
    while True:
        k += 1
        u = u * (mu4 - (2 * k - 1) ** 2) / (8.0 * k * x)
        a = abs(u)
        if a > prev:
            return None
        prev = a
        sign = -1 if (k // 2) % 2 else 1
        if k % 2 == 0:
            p += sign * u
        else:
            qsum += sign * u
        if a < 1e-17:
            break
        if k > 60:
            return None
    w = x - (0.5 * nu + 0.25) * math.pi
    amp = math.sqrt(2.0 / (math.pi * x))
    c, s = cmath.cos(w), cmath.sin(w)
    value = amp * (p * c - qsum * s)
    envelope = amp * (abs(c) + abs(s))
    return EvalResult(value, envelope * (a + 4 * EPS), k + 1)


def _miller(nu: complex, x: float) -> EvalResult:
    m = math.floor(nu.real)
    b = nu - m
    n_top = max(m, 0) + int(math.ceil(x + 8.0 * x ** (1.0 / 3.0))) + 25
    ratio, value = _miller_run(b, m, x, n_top)
    if ratio * EPS > 1e-14:
        # the normalisation sum cancels heavily (large |Im nu| at large x);
        # redo the recurrence in fixed point with enough guard bits
        bits = 96 + int(math.log2(ratio))
        value = _miller_run_fixed(b, m, x, n_top, bits)
        ratio = 1.0
    est = 16 * EPS * ratio * abs(value)
    return EvalResult(value, est, n_top - min(m, 0) + 1)


def _miller_run(b: complex, m: int, x: float, n_top: int) -> Tuple[float, complex]:
    """Backward recurrence over orders ``b + k``.

    Returns ``(cancellation ratio of the normalisation sum, J_{b+m}(x))``.
    """
    k_lo = min(m, 0)
    size = n_top - k_lo + 1
    f = [0j] * size  # f[i] ~ J_{b + k_lo + i}
    f_next = 0j
    f_cur = 1e-30 + 0j
    f[size - 1] = f_cur
    two_over_x = 2.0 / x
    for i in range(size - 1, 0, -1):
        f_prev = two_over_x * (b + k_lo + i) * f_cur - f_next
        f[i - 1] = f_prev
        f_next, f_cur = f_cur, f_prev
        if abs(f_cur) > 1e250:
            for j in range(i - 1, size):
                f[j] *= 1e-250
            f_next *= 1e-250
            f_cur *= 1e-250
    # Neumann normalisation: (x/2)^b = sum_k (b+2k) Gamma(b+k)/k! J_{b+2k}(x),
    # written as Gamma(b+1) * [J_b + sum_{k>=1} (b+2k) (b+1)_{k-1}/k! J_{b+2k}]
    off = -k_lo
    h = 1.0 + 0j
    bracket = f[off]
    mag = abs(bracket)
    k = 1
    while off + 2 * k < size:
        if k > 1:
            h = h * (b + k - 1) / k
        t = (b + 2 * k) * h * f[off + 2 * k]
        bracket += t
        mag += abs(t)
        k += 1
    scale = cmath.exp(b * (math.log(x) - math.log(2.0)) - complex(loggamma(b + 1)))
    return mag / abs(bracket), f[off + m] / bracket * scale


def _miller_run_fixed(b: complex, m: int, x: float, n_top: int, bits: int) -> complex:
    """Same recurrence as :func:`_miller_run` in big-integer fixed point."""
    one = 1 << bits

    def fix(v: float) -> int:
        return int(math.ldexp(v, bits))

    b_re, b_im = fix(b.real), fix(b.imag)
    x_fix = fix(x)
    k_lo = min(m, 0)
    size = n_top - k_lo + 1
    f_re = [0] * size
    f_im = [0] * size
    cur_re, cur_im = one, 0
    nxt_re, nxt_im = 0, 0
    f_re[size - 1] = cur_re
    for i in range(size - 1, 0, -1):
        c_re = (2 * (b_re + (k_lo + i) * one) << bits) // x_fix
        c_im = (2 * b_im << bits) // x_fix
        p_re = ((c_re * cur_re - c_im * cur_im) >> bits) - nxt_re
        p_im = ((c_re * cur_im + c_im * cur_re) >> bits) - nxt_im
        f_re[i - 1], f_im[i - 1] = p_re, p_im
        nxt_re, nxt_im, cur_re, cur_im = cur_re, cur_im, p_re, p_im
    off = -k_lo
    h_re, h_im = one, 0
    s_re, s_im = f_re[off], f_im[off]
    k = 1
    while off + 2 * k < size:
        if k > 1:
            a_re = b_re + (k - 1) * one
            h_re, h_im = (
                ((h_re * a_re - h_im * b_im) >> bits) // k,
                ((h_re * b_im + h_im * a_re) >> bits) // k,
            )
        w_re = b_re + 2 * k * one
        t_re = (w_re * h_re - b_im * h_im) >> bits
        t_im = (w_re * h_im + b_im * h_re) >> bits
        g_re, g_im = f_re[off + 2 * k], f_im[off + 2 * k]
        s_re += (t_re * g_re - t_im * g_im) >> bits
        s_im += (t_re * g_im + t_im * g_re) >> bits
        k += 1
    n_re, n_im = f_re[off + m], f_im[off + m]
    den = s_re * s_re + s_im * s_im
    ratio = complex((n_re * s_re + n_im * s_im) / den, (n_im * s_re - n_re * s_im) / den)
    scale = cmath.exp(b * (math.log(x) - math.log(2.0)) - complex(loggamma(b + 1)))
    return ratio * scale


def bessel_product_nicholson(order: OrderLike, x: float, quad_points: int = 512) -> complex:
    """``J_order(x) * J_{-order}(x)`` from the Nicholson-type integral.

    Gauss-Legendre quadrature of ``(2/pi) int_0^{pi/2} J0(2x cos t) cos(2 nu t) dt``.
    ``J0`` comes from scipy so this stays independent of :func:`bessel_j`.
    """
    import numpy as np
    from scipy.special import j0

    if quad_points < 16:
        raise DomainError("quad_points must be >= 16")
    nu = as_complex(order)
    _check_finite(nu, x)
    nodes, weights = np.polynomial.legendre.leggauss(int(quad_points))
    theta = 0.25 * math.pi * (nodes + 1.0)
    integrand = j0(2.0 * x * np.cos(theta)) * np.cos(2.0 * nu * theta)
    return complex((2.0 / math.pi) * 0.25 * math.pi * np.sum(weights * integrand))


# ---------------------------------------------------------------------------
# Airy Ai

_AI0 = 0.355028053887817239260  # Ai(0)
_AIP0 = 0.258819403792806798405  # -Ai'(0)


def airy_ai(t: float) -> float:
    t = float(t)
    _check_finite(t)
    if abs(t) <= 5.0:
        return _airy_maclaurin(t)
    if t > 0:
        return _airy_decay(t)
    # Ai(-z) = (sqrt(z)/3) [J_{1/3}(zeta) + J_{-1/3}(zeta)]
    z = -t
    zeta = (2.0 / 3.0) * z ** 1.5
    j_plus = bessel_j(1.0 / 3.0, zeta).value.real
    j_minus = bessel_j(-1.0 / 3.0, zeta).value.real
    return math.sqrt(z) / 3.0 * (j_plus + j_minus)


def _airy_maclaurin(t: float) -> float:
    t3 = t ** 3
    f = 1.0
    g = t
    tf, tg = 1.0, t
    k = 0
    while True:
        k += 1
        tf *= t3 / ((3 * k - 1) * (3 * k))
        tg *= t3 / ((3 * k) * (3 * k + 1))
        f += tf
        g += tg
        if abs(tf) + abs(tg) < 1e-18 * (abs(f) + abs(g)) and k > 3:
            break
    return _AI0 * f - _AIP0 * g


def _airy_decay(t: float) -> float:
    zeta = (2.0 / 3.0) * t ** 1.5
    total = 1.0
    u = 1.0
    prev = math.inf
    for k in range(1, 40):
        # u_k = (6k-5)(6k-3)(6k-1) / ((2k-1) 216 k) u_{k-1}
        u *= (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216.0 * k)
        term = u / zeta ** k
        if abs(term) > prev:
            break
        prev = abs(term)
        total += (-1) ** k * term
        if abs(term) < 1e-17:
            break
    return math.exp(-zeta) / (2.0 * math.sqrt(math.pi) * t ** 0.25) * total


# ---------------------------------------------------------------------------
# Legendre function P_nu(z) on [-1, 1]

_LEGENDRE_MAX_TERMS = 10_000


def legendre_p(degree: OrderLike, z: float) -> EvalResult:
    """``P_degree(z)`` via ``2F1(-nu, nu+1; 1; (1-z)/2)``.

    Accurate to ~1e-12 for ``z >= -0.9``. Convergence slows as ``z -> -1``;
    the series is capped at 10^4 terms and ``est_error`` reports the bound
    on the neglected tail.
    """
    nu = as_complex(degree)
    z = float(z)
    _check_finite(nu, z)
    if not -1.0 <= z <= 1.0:
        raise DomainError(f"z must lie in [-1, 1], got {z}")
    t = 0.5 * (1.0 - z)
    if t == 0.0:
        return EvalResult(1.0 + 0j, 0.0, 1)
    term = 1.0 + 0j
    total = term
    k = 0
    while k < _LEGENDRE_MAX_TERMS:
        term = term * (k - nu) * (k + nu + 1) / ((k + 1) ** 2) * t
        k += 1
        total += term
        if term == 0 or abs(term) < 1e-17 * abs(total) and k > abs(nu):
            break
    ratio = t * (1.0 + abs(nu) / (k + 1)) ** 2
    tail = abs(term) * (ratio / (1.0 - ratio) if ratio < 1 else k)
    return EvalResult(total, tail + 4 * EPS * k * abs(total), k + 1)
