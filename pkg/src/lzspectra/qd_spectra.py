"""Fluorescence spectra of a quantum dot whose transition is modulated periodically.

Covers the power spectrum of a frequency-modulated dot, the discrete sideband
lines under a probe laser, coherent scattering from an amplitude-modulated
drive, the harmonics of the atomic inversion, and the bichromatic Mollow
spectrum.  Every closed form reduces to :func:`lzspectra.newberger_sum.sum_exact`
or :func:`lzspectra.newberger_sum.pair_sum`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, List, Tuple

import numpy as np
from scipy.special import jv

from .errors import DomainError
from .newberger_sum import (
    SumSpec,
    check_pole,
    lorentzian_comb,
    pair_sum,
    sum_exact,
    sum_series,
)
from .special_functions import bessel_j, cos_pi, sin_pi


def default_ell_max(chi: float) -> int:
    return math.ceil(chi) + 10


@dataclass(frozen=True)
class SawDrive:
    omega0: float
    omega_s: float
    chi: float
    gamma: float

    def __post_init__(self):
        if not self.omega_s > 0:
            raise DomainError(f"omega_s must be > 0, got {self.omega_s}")
        if not self.gamma > 0:
            raise DomainError(f"gamma must be > 0, got {self.gamma}")
        if not self.chi >= 0:
            raise DomainError(f"chi must be >= 0, got {self.chi}")

    def nu(self, omega: float) -> complex:
        return complex(omega - self.omega0, self.gamma) / self.omega_s


@dataclass(frozen=True)
class LaserCoupling:
    omega_L: float
    zeta: float
    eta: float

    def __post_init__(self):
        if not self.eta > 0:
            raise DomainError(f"eta must be > 0, got {self.eta}")

    @classmethod
    def for_drive(cls, d: SawDrive, omega_L: float) -> "LaserCoupling":
        return cls(omega_L, (omega_L - d.omega0) / d.omega_s, d.gamma / d.omega_s)

    @property
    def mu(self) -> complex:
        return complex(self.zeta, self.eta)


@dataclass(frozen=True)
class Line:
    index: int
    frequency: float
    weight: float


@dataclass(frozen=True)
class LineSpectrum:
    """Immutable list of delta lines sorted by increasing frequency."""

    lines: Tuple[Line, ...]
    tail_bound: float = 0.0

    def __post_init__(self):
        lines = tuple(sorted(self.lines, key=lambda ln: ln.frequency))
        for a, b in zip(lines, lines[1:]):
            if not b.frequency > a.frequency:
                raise DomainError("line frequencies must be distinct")
        for ln in lines:
            if ln.weight < 0:
                raise DomainError(f"negative line weight {ln.weight}")
        object.__setattr__(self, "lines", lines)

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def weight(self, index: int) -> float:
        for ln in self.lines:
            if ln.index == index:
                return ln.weight
        raise KeyError(index)

    @property
    def frequencies(self) -> np.ndarray:
        return np.array([ln.frequency for ln in self.lines])

    @property
    def weights(self) -> np.ndarray:
        return np.array([ln.weight for ln in self.lines])

    def broadened(self, omega: np.ndarray, width: float) -> np.ndarray:
        """Render as a sum of Lorentzians of half-width ``width`` (presentation only)."""
        omega = np.asarray(omega, dtype=float)
        out = np.zeros_like(omega)
        for ln in self.lines:
            out += ln.weight * width / math.pi / ((omega - ln.frequency) ** 2 + width**2)
        return out


# ---------------------------------------------------------------------------
# power spectrum of the modulated dot


def power_spectrum_exact(d: SawDrive, omega: float) -> float:
    nu = d.nu(omega)
    return -pair_sum(nu, d.chi).imag / (d.gamma * d.omega_s)


def power_spectrum_series(d: SawDrive, omega: float, rel_tol: float = 1e-12) -> float:
    # sum_n J_n^2/(gamma^2 + (w - w0 + n ws)^2) is a Lorentzian comb in n centred at -(w - w0)/ws
    r = lorentzian_comb(-(omega - d.omega0) / d.omega_s, d.gamma / d.omega_s, d.chi, rel_tol)
    return r.value / (d.gamma * d.omega_s)


def power_spectrum_partial(d: SawDrive, omega: float, orders: Iterable[int]) -> float:
    """The series restricted to the listed Bessel orders."""
    n = np.asarray(list(orders), dtype=float)
    return float(np.sum(jv(n, d.chi) ** 2 / (d.gamma**2 + (omega - d.omega0 + n * d.omega_s) ** 2)))


def power_spectrum_asym(d: SawDrive, omega: float) -> float:
    if not d.chi > 0:
        raise DomainError("the asymptotic spectrum needs chi > 0")
    eta = d.gamma / d.omega_s
    det = (omega - d.omega0) / d.omega_s
    b = math.sinh(math.pi * eta) / (math.cosh(2 * math.pi * eta) - cos_pi(2 * det).real)
    osc = math.cosh(math.pi * eta) + cos_pi(det).real * math.sin(2 * d.chi)
    return 2.0 * b * osc / (d.chi * d.gamma * d.omega_s)


# ---------------------------------------------------------------------------
# sideband lines under a probe laser


def _sideband_amplitude(mu: complex, chi: float, ell: int) -> complex:
    # sum_n J_{n+ell} J_n/(n + mu) for ell >= 0; sum_n J_n J_{n-|ell|}/(n + mu) for ell < 0
    if ell >= 0:
        return sum_exact(SumSpec(ell, 0, mu, chi))
    return sum_exact(SumSpec(0, -ell, mu, chi))


def sideband_weight(d: SawDrive, lc: LaserCoupling, ell: int) -> float:
    """Weight of the line at ``omega_L - ell*omega_s``."""
    check_pole(lc.mu)
    return abs(_sideband_amplitude(lc.mu, d.chi, ell)) ** 2 / d.omega_s**2


def sideband_weight_series(d: SawDrive, lc: LaserCoupling, ell: int, rel_tol: float = 1e-12) -> float:
    p, q = (ell, 0) if ell >= 0 else (0, -ell)
    return abs(sum_series(SumSpec(p, q, lc.mu, d.chi), rel_tol).value) ** 2 / d.omega_s**2


def _lines(lc: LaserCoupling, step: float, ell_max: int, weight) -> LineSpectrum:
    if ell_max < 1:
        raise DomainError("ell_max must be >= 1")
    check_pole(lc.mu)
    lines = [Line(ell, lc.omega_L - ell * step, weight(ell)) for ell in range(-ell_max, ell_max + 1)]
    return LineSpectrum(tuple(lines))


def sideband_lines(d: SawDrive, lc: LaserCoupling, ell_max: int = None) -> LineSpectrum:
    if ell_max is None:
        ell_max = default_ell_max(d.chi)
    spec = _lines(lc, d.omega_s, ell_max, lambda ell: sideband_weight(d, lc, ell))
    # lines beyond ell_max: sum their weights until they stop mattering
    tail, ell = 0.0, ell_max + 1
    while True:
        w = sideband_weight(d, lc, ell) + sideband_weight(d, lc, -ell)
        tail += w
        if w <= 1e-17 * (tail + spec.weights.sum()) or ell > ell_max + 200:
            break
        ell += 1
    return LineSpectrum(spec.lines, tail)


def sideband_asym_weights(d: SawDrive, lc: LaserCoupling) -> Tuple[float, float, float]:
    """Large-``chi`` weights ``(even, odd_plus, odd_minus)`` of the sideband lines."""
    if not d.chi > 0:
        raise DomainError("the asymptotic line weights need chi > 0")
    check_pole(lc.mu)
    z, e = lc.zeta, lc.eta
    s2, c2 = math.sin(2 * d.chi), math.cos(2 * d.chi)
    sz, cz = sin_pi(z).real, cos_pi(z).real
    ch, sh = math.cosh(math.pi * e), math.sinh(math.pi * e)
    denom = d.chi**2 * d.omega_s**2 * (sz * sz + sh * sh)
    even = ((cz * ch + s2) ** 2 + (sz * sh) ** 2) / denom
    odd_plus = ((sz * ch - c2) ** 2 + (cz * sh) ** 2) / denom
    odd_minus = ((sz * ch + c2) ** 2 + (cz * sh) ** 2) / denom
    return even, odd_plus, odd_minus


def sideband_lines_asym(d: SawDrive, lc: LaserCoupling, ell_max: int = None) -> LineSpectrum:
    if ell_max is None:
        ell_max = default_ell_max(d.chi)
    even, odd_plus, odd_minus = sideband_asym_weights(d, lc)

    def weight(ell):
        if ell % 2 == 0:
            return even
        return odd_plus if ell > 0 else odd_minus

    return _lines(lc, d.omega_s, ell_max, weight)


# ---------------------------------------------------------------------------
# coherent scattering and inversion harmonics under amplitude modulation


@dataclass(frozen=True)
class ModulatedField:
    Omega0: float
    omega1: float
    a: float
    gamma: float

    def __post_init__(self):
        if not self.omega1 > 0:
            raise DomainError(f"omega1 must be > 0, got {self.omega1}")
        if not self.gamma >= 0:
            raise DomainError(f"gamma must be >= 0, got {self.gamma}")

    @property
    def rho(self) -> complex:
        return complex(self.Omega0, 0.75 * self.gamma) / self.omega1

    @property
    def z(self) -> float:
        """Common Bessel argument ``a*Omega0/omega1``."""
        return self.a * self.Omega0 / self.omega1


def _bessel_arg(f: ModulatedField) -> float:
    z = f.z
    if z < 0:
        raise DomainError("a*Omega0/omega1 must be >= 0")
    return z


def coherent_amplitude(f: ModulatedField, k: int) -> complex:
    """Amplitude ``Y_k`` of the coherently scattered line at ``omega_L - k*omega1``."""
    rho = f.rho
    check_pole(rho)
    z = _bessel_arg(f)
    rc = rho.conjugate()
    j = abs(k)
    if k >= 0:
        s = sum_exact(SumSpec(0, j, rho, z)) + sum_exact(SumSpec(j, 0, rc, z))
    else:
        s = sum_exact(SumSpec(j, 0, rho, z)) + sum_exact(SumSpec(0, j, rc, z))
    return 1j * s / f.omega1


def coherent_lines(f: ModulatedField, omega_L: float, k_max: int) -> LineSpectrum:
    if k_max < 0:
        raise DomainError("k_max must be >= 0")
    pref = math.pi * f.gamma**2 / 8.0
    lines = [
        Line(k, omega_L - k * f.omega1, pref * abs(coherent_amplitude(f, k)) ** 2)
        for k in range(-k_max, k_max + 1)
    ]
    tail, k = 0.0, k_max + 1
    total = sum(ln.weight for ln in lines)
    while True:
        w = pref * (abs(coherent_amplitude(f, k)) ** 2 + abs(coherent_amplitude(f, -k)) ** 2)
        tail += w
        if w <= 1e-17 * (tail + total) or k > k_max + 200:
            break
        k += 1
    return LineSpectrum(tuple(lines), tail)


@dataclass(frozen=True)
class Harmonic:
    k: int
    beta: float
    amplitude: complex


def inversion_amplitude(f: ModulatedField, k: int) -> complex:
    """Complex amplitude ``c_k`` whose imaginary part is the inversion harmonic ``beta_k``."""
    rho = f.rho
    check_pole(rho)
    z = _bessel_arg(f)
    if k >= 0:
        s = sum_exact(SumSpec(0, k, rho, z))
    else:
        s = sum_exact(SumSpec(-k, 0, rho, z))
    return f.gamma / f.omega1 * s


def inversion_harmonics(f: ModulatedField, k_max: int) -> List[Harmonic]:
    if k_max < 0:
        raise DomainError("k_max must be >= 0")
    out = []
    for k in range(-k_max, k_max + 1):
        c = inversion_amplitude(f, k)
        out.append(Harmonic(k, c.imag, c))
    return out


def inversion_signal(f: ModulatedField, t: np.ndarray, k_max: int) -> np.ndarray:
    """Real inversion ``z(t) = Im sum_k c_k exp(-i k omega1 t)``, truncated at ``|k| <= k_max``.

    ``beta_k`` is the imaginary part of each coefficient separately; the real
    signal needs the complex amplitudes, so it is rebuilt from those.
    """
    t = np.asarray(t, dtype=float)
    total = np.zeros(t.shape, dtype=complex)
    for h in inversion_harmonics(f, k_max):
        total += h.amplitude * np.exp(-1j * h.k * f.omega1 * t)
    return total.imag


# ---------------------------------------------------------------------------
# bichromatic Mollow spectrum


@dataclass(frozen=True)
class BichromaticDot:
    d11: float
    d22: float
    d12: float
    E1: float
    E2: float
    omega1: float
    omega2: float
    omega0: float
    n: int
    gamma: float
    deltaS: float = 0.0
    sign: int = 1
    hbar: float = 1.0
    omega_eff: float = field(init=False)
    x: float = field(init=False)
    F: float = field(init=False)
    phi: float = field(init=False)
    Omega: float = field(init=False)
    gamma11: float = field(init=False)
    gamma12: float = field(init=False)

    def __post_init__(self):
        if not self.omega1 > 0:
            raise DomainError(f"omega1 must be > 0, got {self.omega1}")
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        if not 0 <= self.deltaS < 1:
            raise DomainError(f"deltaS must lie in [0, 1), got {self.deltaS}")
        if not self.gamma > 0:
            raise DomainError(f"gamma must be > 0, got {self.gamma}")
        w_eff = self.E1 * (self.d22 - self.d11) / self.hbar
        x = w_eff / self.omega1
        jn = bessel_j(self.n, abs(x)).value.real
        if x < 0 and self.n % 2:
            jn = -jn
        F = -(self.d12 * self.E2 / (2 * self.hbar)) * jn
        phi = self.omega0 + self.sign * self.omega2 - self.n * self.omega1
        Omega = math.sqrt(0.25 * phi * phi + F * F)
        if Omega == 0:
            raise DomainError("the dressed Rabi frequency vanishes (phi = F = 0)")
        r = phi * phi / (4 * Omega * Omega)
        for name, value in (
            ("omega_eff", w_eff),
            ("x", x),
            ("F", F),
            ("phi", phi),
            ("Omega", Omega),
            ("gamma11", 0.5 * self.gamma * (1 + r)),
            ("gamma12", 0.25 * self.gamma * (3 - r)),
        ):
            object.__setattr__(self, name, value)

    @property
    def r(self) -> float:
        return self.phi**2 / (4 * self.Omega**2)

    def _weights(self) -> Tuple[float, float]:
        r = self.r
        central = (1 - self.deltaS**2) * (self.F / self.Omega) ** 2
        side = (1 - r) ** 2 / (2 * (1 + r))
        return central, side

    def _centres(self, omega: float) -> Tuple[float, float, float]:
        base = self.omega2 - omega
        return base, base - 2 * self.Omega, base + 2 * self.Omega


def mollow_spectrum(dot: BichromaticDot, omega: float) -> float:
    central, side = dot._weights()
    c1, c2, c3 = dot._centres(omega)
    w1 = dot.omega1
    x = abs(dot.x)
    nu1 = dot.n + complex(c1, dot.gamma11) / w1
    nu2 = dot.n + complex(c2, dot.gamma12) / w1
    nu3 = dot.n + complex(c3, dot.gamma12) / w1
    total = central * pair_sum(nu1, x).imag
    if side != 0:
        total += side * (pair_sum(nu2, x).imag + pair_sum(nu3, x).imag)
    return -dot.d12**2 / (4 * math.pi * w1) * total


def mollow_spectrum_series(dot: BichromaticDot, omega: float, rel_tol: float = 1e-12) -> float:
    central, side = dot._weights()
    w1 = dot.omega1
    x = abs(dot.x)

    # -Im pair_sum(n + (c + iG)/w1) is a Lorentzian comb in m centred at -(n + c/w1)
    def comb(c, g):
        return lorentzian_comb(-(dot.n + c / w1), g / w1, x, rel_tol).value / w1

    c1, c2, c3 = dot._centres(omega)
    total = central * comb(c1, dot.gamma11)
    if side != 0:
        total += side * (comb(c2, dot.gamma12) + comb(c3, dot.gamma12))
    return dot.d12**2 / (4 * math.pi) * total
