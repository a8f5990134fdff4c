"""Closed-form transition rates and fluorescence spectra of periodically driven two-level systems."""

from .errors import AccuracyError, DomainError, PoleError, SpectraError
from .special_functions import (
    ComplexOrder,
    EvalResult,
    airy_ai,
    bessel_j,
    bessel_product_nicholson,
    legendre_p,
)
from .newberger_sum import (
    GeneralSumSpec,
    SumSpec,
    cosine_sum,
    pair_sum,
    pair_sum_nicholson,
    sum_exact,
    sum_exact_general,
    sum_series,
)
from .lzsm_rate import (
    DrivenQubit,
    FourierMethod,
    FourierValue,
    RateMethod,
    RateValue,
    double_passage_prob,
    fourier_double,
    fourier_in_amplitude,
    fourier_in_bias,
    rate_airy_approx,
    rate_airy_asym,
    rate_asym,
    rate_exact,
    rate_extrema,
    rate_resonance,
    rate_series,
    rate_small_x,
    rate_zero_amplitude,
)
from .qd_spectra import (
    BichromaticDot,
    LaserCoupling,
    LineSpectrum,
    ModulatedField,
    SawDrive,
    coherent_lines,
    inversion_harmonics,
    mollow_spectrum,
    power_spectrum_asym,
    power_spectrum_exact,
    power_spectrum_series,
    sideband_lines,
    sideband_lines_asym,
)
from .sweep import SweepSpec, Target, detect_extrema, run_sweep, suppression_report

__version__ = "0.1.0"
