"""Transition rate of a periodically driven qubit swept through an avoided crossing.

All formulas work in the dimensionless triple ``eps = bias/omega``,
``gamma = gamma2/omega``, ``x = amplitude/omega`` and report rates in units of
``delta**2/omega``.  The physical quantities live on :class:`DrivenQubit`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np
from scipy.special import jv

from .errors import DomainError, PoleError
from .newberger_sum import bessel_pair, check_pole, lorentzian_comb, pair_sum_eval, pair_sum_small_x
from .special_functions import (
    EPS,
    airy_ai,
    bessel_j,
    cos_pi,
    legendre_p,
    sin_pi,
)


@dataclass(frozen=True)
class DrivenQubit:
    delta: float
    bias: float
    gamma2: float
    omega: float
    amplitude: float

    def __post_init__(self):
        if not self.omega > 0:
            raise DomainError(f"omega must be > 0, got {self.omega}")
        if not self.delta > 0:
            raise DomainError(f"delta must be > 0, got {self.delta}")
        if not self.gamma2 >= 0:
            raise DomainError(f"gamma2 must be >= 0, got {self.gamma2}")
        if not self.amplitude >= 0:
            raise DomainError(f"amplitude must be >= 0, got {self.amplitude}")
        for name in ("delta", "bias", "gamma2", "omega", "amplitude"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")

    @classmethod
    def dimensionless(cls, eps: float, gamma: float, x: float, delta: float = 1.0, omega: float = 1.0):
        return cls(delta=delta, bias=eps * omega, gamma2=gamma * omega, omega=omega, amplitude=x * omega)

    @property
    def eps(self) -> float:
        return self.bias / self.omega

    @property
    def gamma(self) -> float:
        return self.gamma2 / self.omega

    @property
    def x(self) -> float:
        return self.amplitude / self.omega

    @property
    def mu(self) -> complex:
        return complex(self.eps, self.gamma)

    @property
    def unit(self) -> float:
        """``delta**2/omega``, the natural unit of the rate."""
        return self.delta**2 / self.omega


class RateMethod(enum.Enum):
    Series = "series"
    Exact = "exact"
    AiryApprox = "airy"
    AiryAsym = "airy_asym"
    Asymptotic = "asym"
    SmallX = "small_x"


@dataclass(frozen=True)
class RateValue:
    value: float
    method: RateMethod
    est_error: float = math.nan  # nan: no estimate available


# ---------------------------------------------------------------------------
# rate in its various forms


def rate_series(q: DrivenQubit, rel_tol: float = 1e-12) -> RateValue:
    r = lorentzian_comb(q.eps, q.gamma, q.x, rel_tol)
    return RateValue(0.5 * r.value, RateMethod.Series, 0.5 * r.est_error)


def rate_exact(q: DrivenQubit) -> RateValue:
    mu = q.mu
    check_pole(mu)
    eps, gamma, x = q.eps, q.gamma, q.x
    if x == 0.0:
        return RateValue(0.5 * gamma / abs(mu) ** 2, RateMethod.Exact, 0.0)
    if gamma > 0 and float(eps).is_integer() and abs(mu) < 2.0 * x + 10.0:
        return _resonance(int(eps), gamma, x, RateMethod.Exact)
    r = pair_sum_eval(mu, x)
    return RateValue(-0.5 * r.value.imag, RateMethod.Exact, 0.5 * r.est_error)


def rate_zero_amplitude(q: DrivenQubit) -> RateValue:
    if q.mu == 0:
        raise DomainError("mu = 0: the zero-amplitude rate is singular")
    return RateValue(0.5 * q.gamma / abs(q.mu) ** 2, RateMethod.Exact, 0.0)


def _im_cot_conj(eps: float, gamma: float) -> float:
    """``Im cot(pi (eps - i gamma))``, written without cancellation."""
    denom = math.cosh(2 * math.pi * gamma) - cos_pi(2 * eps).real
    if denom <= 0:
        raise PoleError(complex(eps, gamma), round(eps))
    return math.sinh(2 * math.pi * gamma) / denom


def rate_airy_approx(q: DrivenQubit) -> RateValue:
    """Legacy approximation built from one Airy function near the last resonance."""
    if not q.x > 0:
        raise DomainError("the Airy approximation needs x > 0")
    a = (2.0 / q.x) ** (1.0 / 3.0)
    ai = airy_ai(a * (q.eps - q.x))
    value = 0.5 * math.pi * a * a * _im_cot_conj(q.eps, q.gamma) * ai * ai
    return RateValue(value, RateMethod.AiryApprox)


def rate_airy_asym(q: DrivenQubit, literal: bool = False) -> RateValue:
    """Large-``x`` form of :func:`rate_airy_approx` (oscillation frequency ``4*sqrt(2)/3``).

    The default phase is ``(2 sqrt2/3)(x - eps) - pi/4``.  ``literal=True`` uses the
    alternative bracketing ``(2 sqrt2/3) x (1 - eps/x - pi/4)``, which lowers the
    frequency by ``1 - pi/4``.
    """
    eps, x = q.eps, q.x
    if not x > eps:
        raise DomainError("the Airy asymptotic needs x > eps")
    c = 2.0 * math.sqrt(2.0) / 3.0
    if literal:
        phase = c * x * (1.0 - eps / x - math.pi / 4)
    else:
        phase = c * (x - eps) - math.pi / 4
    envelope = _im_cot_conj(eps, q.gamma) / (2.0 * x) / math.sqrt(1.0 - eps / x)
    return RateValue(envelope * math.cos(phase) ** 2, RateMethod.AiryAsym)


def _asym_weight(eps: float, gamma: float) -> float:
    denom = math.cosh(2 * math.pi * gamma) - cos_pi(2 * eps).real
    if denom <= 0:
        raise PoleError(complex(eps, gamma), round(eps))
    return math.sinh(math.pi * gamma) / denom


def rate_asym(q: DrivenQubit) -> RateValue:
    """Large-amplitude asymptotic rate; oscillates as ``sin(2x)`` around a ``1/x`` trend."""
    if not q.x > 0:
        raise DomainError("the asymptotic rate needs x > 0")
    eps, gamma, x = q.eps, q.gamma, q.x
    b = _asym_weight(eps, gamma)
    value = b * (math.cosh(math.pi * gamma) + cos_pi(eps).real * math.sin(2 * x)) / x
    return RateValue(value, RateMethod.Asymptotic)


def rate_extrema(q: DrivenQubit) -> Tuple[RateValue, RateValue]:
    """Envelope ``(max, min)`` of the asymptotic rate at amplitude ``x``."""
    if not q.x > 0:
        raise DomainError("extrema need x > 0")
    g, x = q.gamma, q.x
    c = abs(cos_pi(q.eps).real)
    sh, ch = math.sinh(math.pi * g), math.cosh(math.pi * g)
    if ch - c <= 0:
        raise PoleError(q.mu, round(q.eps))
    hi = sh / (ch - c) / (2 * x)
    lo = sh / (ch + c) / (2 * x)
    return RateValue(hi, RateMethod.Asymptotic), RateValue(lo, RateMethod.Asymptotic)


def _resonance(n: int, gamma: float, x: float, method: RateMethod) -> RateValue:
    mu = complex(n, gamma)
    sign = -1.0 if n % 2 else 1.0
    pref = math.pi / math.sinh(math.pi * gamma)
    prod = bessel_pair(mu, -mu, x)
    value = 0.5 * sign * pref * prod.real
    return RateValue(value, method, 0.5 * pref * 8 * EPS * abs(prod))


def rate_resonance(n: int, q: DrivenQubit) -> RateValue:
    """Rate exactly on the ``n``-photon resonance (``eps = n``) at the qubit's ``gamma`` and ``x``."""
    if not q.gamma > 0:
        raise DomainError("the resonance value needs gamma > 0")
    return rate_exact(DrivenQubit.dimensionless(int(n), q.gamma, q.x))


def rate_small_x(q: DrivenQubit, m_max: int) -> RateValue:
    """Small-amplitude expansion in powers of ``x**2`` truncated after ``m_max`` terms."""
    if not q.x < 1:
        raise DomainError(f"small-x expansion needs x < 1, got {q.x}")
    if m_max < 0:
        raise DomainError("m_max must be >= 0")
    r = pair_sum_small_x(q.mu, q.x, m_max)
    return RateValue(-0.5 * r.value.imag, RateMethod.SmallX)


def double_passage_prob(q: DrivenQubit) -> float:
    """Fast-passage transition probability after one drive period."""
    if q.amplitude == 0:
        raise DomainError("double-passage probability needs a nonzero amplitude")
    phase = q.x - 0.5 * math.pi * q.eps - 0.25 * math.pi
    return 2 * math.pi * q.delta**2 / (q.omega * q.amplitude) * math.sin(phase) ** 2


# ---------------------------------------------------------------------------
# Fourier transforms


class FourierMethod(enum.Enum):
    Closed = "closed"
    GrafSeries = "graf"
    Quadrature = "quadrature"


def fourier_in_bias(q: DrivenQubit, k_e: float, method: FourierMethod = FourierMethod.Closed) -> float:
    """``int W(bias) exp(-i bias k_e) d bias``."""
    if not math.isfinite(k_e):
        raise DomainError("k_e must be finite")
    method = FourierMethod(method)
    if method is FourierMethod.Quadrature:
        return float(fourier_in_bias_quadrature(q, [k_e])[0])
    damp = 0.5 * math.pi * q.delta**2 * math.exp(-q.gamma2 * abs(k_e))
    if method is FourierMethod.Closed:
        arg = 2 * q.x * abs(math.sin(0.5 * q.omega * k_e))
        return damp * bessel_j(0, arg).value.real
    return damp * _graf_series(q.x, q.omega * k_e)


def _graf_series(x: float, phase: float) -> float:
    # sum_n J_n(x)^2 exp(-i n phase) = J_0^2 + 2 sum_{n>=1} J_n^2 cos(n phase)
    n_top = math.ceil(x) + math.ceil(6.0 * (x + 1.0) ** (1.0 / 3.0)) + 40
    n = np.arange(1, n_top + 1)
    jn = jv(n, x)
    return float(jv(0, x) ** 2 + 2.0 * np.sum(jn * jn * np.cos(n * phase)))


def fourier_in_bias_quadrature(q: DrivenQubit, k_values: Sequence[float]) -> np.ndarray:
    """Trapezoidal transform of :func:`rate_exact` over a wide bias window.

    The single Lorentzian ``(1/2) gamma/(eps^2 + gamma^2)`` is removed before
    quadrature and its transform added back exactly, which leaves a remainder
    decaying as ``eps**-4``.  The rate is sampled once and reused for every ``k``.
    """
    if not q.gamma > 0:
        raise DomainError("quadrature transform needs gamma2 > 0")
    k = np.abs(np.asarray(k_values, dtype=float))
    gamma, x = q.gamma, q.x
    kappa = q.omega * float(np.max(k)) if k.size else 0.0
    half_width = 40.0 * max(1.0, gamma) + 20.0 + 20.0 * x
    h = min(gamma / 4.0, 0.25, math.pi / (4.0 * kappa) if kappa > 0 else 0.25)
    n_pts = int(math.ceil(half_width / h))
    eps = np.linspace(0.0, n_pts * h, n_pts + 1)
    remainder = np.empty_like(eps)
    for i, e in enumerate(eps):
        w = rate_exact(DrivenQubit.dimensionless(e, gamma, x)).value
        remainder[i] = w - 0.5 * gamma / (e * e + gamma * gamma)
    weights = np.full(eps.size, h)
    weights[0] = weights[-1] = 0.5 * h
    out = np.empty(k.size)
    for j, kj in enumerate(k):
        kap = q.omega * kj
        # W is even in the bias, so the transform is twice the cosine integral over eps >= 0
        rem = 2.0 * float(np.sum(weights * remainder * np.cos(eps * kap)))
        out[j] = q.delta**2 * (rem + 0.5 * math.pi * math.exp(-gamma * kap))
    return out


@dataclass(frozen=True)
class FourierValue:
    value: float
    support: str  # "inside", "outside" or "boundary"


def fourier_double(q: DrivenQubit, k_e: float, k_a: float) -> FourierValue:
    """Transform of the rate in both bias and amplitude; compactly supported in ``k_a``."""
    s = 2.0 / q.omega * abs(math.sin(0.5 * q.omega * k_e))
    disc = s * s - k_a * k_a
    if abs(disc) <= 4 * EPS * s * s or (s == 0 and k_a == 0):
        return FourierValue(math.inf, "boundary")
    if disc < 0:
        return FourierValue(0.0, "outside")
    value = math.pi * q.delta**2 * math.exp(-q.gamma2 * abs(k_e)) / math.sqrt(disc)
    return FourierValue(value, "inside")


def fourier_in_amplitude(q: DrivenQubit, k_x: float) -> complex:
    """``2 int_0^inf (pi/sin pi mu) J_mu(x) J_-mu(x) cos(k_x x) dx``, zero outside ``[0, 2]``."""
    mu = q.mu
    check_pole(mu)
    if k_x < 0 or k_x > 2:
        return 0j
    return math.pi / sin_pi(mu) * legendre_p(mu - 0.5, 0.5 * k_x * k_x - 1.0).value


def scan(q: DrivenQubit, variable: str, values: Iterable[float], fn) -> np.ndarray:
    """Evaluate ``fn`` on copies of ``q`` with one dimensionless field replaced."""
    base = {"eps": q.eps, "gamma": q.gamma, "x": q.x}
    out = []
    for v in values:
        params = dict(base, **{variable: float(v)})
        out.append(fn(DrivenQubit.dimensionless(delta=q.delta, omega=q.omega, **params)).value)
    return np.asarray(out)
