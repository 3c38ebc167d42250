"""Physical constants, Bose-Einstein occupation and magnitude/flux conversion.

Constants are the exact SI-defined values (CODATA 2018) plus the IAU
nominal astronomical lengths, compiled into one table so results are
bit-reproducible across platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

CONSTANTS_VERSION = "CODATA-2018"

# Vega-like V-band zero point, 3.63e-9 erg s^-1 cm^-2 A^-1 expressed per nm.
DEFAULT_V_REFERENCE_FLUX = 3.63e-11  # W m^-2 nm^-1


@dataclass(frozen=True)
class PhysicalConstants:
    c: float = 299_792_458.0
    h: float = 6.626_070_15e-34
    hbar: float = 6.626_070_15e-34 / (2.0 * math.pi)
    k_B: float = 1.380_649e-23
    AU: float = 1.495_978_707e11
    ly: float = 9.460_730_472_580_8e15
    R_sun: float = 6.957e8
    R_jupiter: float = 7.1492e7


CONSTANTS = PhysicalConstants()


def _check_positive(name, value):
    arr = np.asarray(value, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise ValueError(f"{name} must be finite and > 0, got {value!r}")
    return arr


def _scalar_or_array(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def reduced_energy(frequency, temperature):
    """Return h*nu / (k_B*T)."""
    nu = _check_positive("frequency", frequency)
    T = _check_positive("temperature", temperature)
    return CONSTANTS.h * nu / (CONSTANTS.k_B * T)


def mean_photon_number(frequency, temperature):
    """Bose-Einstein occupation 1/(exp(h nu / k_B T) - 1).

    Works on scalars or arrays. ``expm1`` keeps full precision in the
    Rayleigh-Jeans regime; in the Wien tail the result underflows
    gracefully to 0 instead of overflowing.
    """
    x = reduced_energy(frequency, temperature)
    with np.errstate(over="ignore"):
        n = 1.0 / np.expm1(x)
    return _scalar_or_array(n)


def log_mean_photon_number(frequency, temperature):
    """Natural log of the occupation, finite even where the occupation underflows."""
    x = reduced_energy(frequency, temperature)
    # log(1/(e^x - 1)) = -x - log1p(-e^-x)
    out = -x - np.log1p(-np.exp(-x))
    return _scalar_or_array(out)


def occupation_ratio(frequency, temperature_b, temperature_a):
    """n_B / n_A evaluated in log space so deep-Wien ratios stay finite."""
    out = np.exp(
        np.asarray(log_mean_photon_number(frequency, temperature_b))
        - np.asarray(log_mean_photon_number(frequency, temperature_a))
    )
    return _scalar_or_array(out)


def temperature_from_occupation(frequency, n_bar):
    """Invert the occupation: T = h nu / (k_B ln(1 + 1/n))."""
    nu = _check_positive("frequency", frequency)
    n = _check_positive("n_bar", n_bar)
    T = CONSTANTS.h * nu / (CONSTANTS.k_B * np.log1p(1.0 / n))
    return _scalar_or_array(T)


def flux_from_magnitude(m, reference_flux=DEFAULT_V_REFERENCE_FLUX):
    """Flux from apparent magnitude, F = F' 10^(-m/2.5).

    The returned flux carries the units of ``reference_flux``.
    """
    _check_positive("reference_flux", reference_flux)
    out = reference_flux * np.power(10.0, -np.asarray(m, dtype=float) / 2.5)
    return _scalar_or_array(out)


def magnitude_from_flux(flux, reference_flux=DEFAULT_V_REFERENCE_FLUX):
    f = _check_positive("flux", flux)
    _check_positive("reference_flux", reference_flux)
    return _scalar_or_array(-2.5 * np.log10(f / reference_flux))
