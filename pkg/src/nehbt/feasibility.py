"""Photon-rate, signal-to-noise and timing budgets for a two-telescope measurement.

Two flux conventions appear here and are never converted implicitly:

* ``flux`` in :func:`photon_rate` is an energy flux density, W m^-2 nm^-1.
* ``flux_spectral`` in :func:`snr_rms` is a photon flux per unit optical
  bandwidth, photons s^-1 m^-2 Hz^-1.

:func:`spectral_photon_flux` is the one explicit bridge between them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .radiometry import CONSTANTS


class InfeasibleOperatingPoint(ValueError):
    """No integration time reaches the target at this operating point."""


def _pos(name, v):
    if not (math.isfinite(v) and v > 0):
        raise ValueError(f"{name} must be finite and > 0, got {v!r}")
    return v


@dataclass(frozen=True)
class InstrumentConfig:
    """Telescope pair and detector chain (all SI except where noted).

    ``electronic_bandwidth`` is 1/T_dead; build it with :meth:`from_dead_time`
    when only the detector dead time is known.
    """

    telescope_radius: float = 0.6  # m
    quantum_efficiency: float = 0.3
    electronic_bandwidth: float | None = None  # Hz
    filter_center_wavelength: float = 550e-9  # m
    filter_bandwidth: float = 88e-9  # m
    attenuation_factor: float = 1.0

    def __post_init__(self):
        _pos("telescope_radius", self.telescope_radius)
        _pos("filter_center_wavelength", self.filter_center_wavelength)
        _pos("filter_bandwidth", self.filter_bandwidth)
        if not 0 < self.quantum_efficiency <= 1:
            raise ValueError("quantum_efficiency must be in (0, 1]")
        if not 0 < self.attenuation_factor <= 1:
            raise ValueError("attenuation_factor must be in (0, 1]")
        if self.electronic_bandwidth is not None:
            _pos("electronic_bandwidth", self.electronic_bandwidth)

    @classmethod
    def from_dead_time(cls, dead_time, **kwargs):
        return cls(electronic_bandwidth=1.0 / _pos("dead_time", dead_time), **kwargs)

    @property
    def area(self):
        return math.pi * self.telescope_radius**2

    @property
    def optical_bandwidth_hz(self):
        lam = self.filter_center_wavelength
        return CONSTANTS.c * self.filter_bandwidth / lam**2


@dataclass(frozen=True)
class SnrReport:
    snr: float
    integration_time: float  # s
    photon_rate: float  # 1/s
    attenuated_rate: float  # 1/s


def photon_rate(flux, instrument):
    """Detected photons per second, pi R^2 eta dlambda F lambda / (h c).

    ``flux`` is in W m^-2 nm^-1. Returns ``(rate, attenuated_rate)``.
    """
    _pos("flux", flux)
    dlam_nm = instrument.filter_bandwidth * 1e9
    energy_rate = instrument.area * instrument.quantum_efficiency * dlam_nm * flux  # W
    rate = energy_rate * instrument.filter_center_wavelength / (CONSTANTS.h * CONSTANTS.c)
    return rate, rate * instrument.attenuation_factor


def attenuation_for_rate(rate, target_rate):
    """Attenuation factor that brings ``rate`` down to ``target_rate`` (capped at 1)."""
    return min(1.0, _pos("target_rate", target_rate) / _pos("rate", rate))


def spectral_photon_flux(detected_rate, instrument):
    """Photon flux per unit area and optical bandwidth at the telescope aperture.

    Undoes the area and efficiency factors of a detected rate and spreads it
    over the filter's optical bandwidth in Hz.
    """
    return detected_rate / (
        instrument.area * instrument.quantum_efficiency * instrument.optical_bandwidth_hz
    )


def snr_rms(area_gm, eta, flux_spectral, gamma_excess, delta_f, tau_exp):
    """RMS signal-to-noise A eta F (gamma - 3/2) sqrt(delta_f) sqrt(tau/2)."""
    if gamma_excess < 0:
        raise ValueError("gamma_excess = gamma2 - 3/2 must be >= 0")
    for name, v in (("area_gm", area_gm), ("eta", eta), ("flux_spectral", flux_spectral),
                    ("delta_f", delta_f), ("tau_exp", tau_exp)):
        _pos(name, v)
    return area_gm * eta * flux_spectral * gamma_excess * math.sqrt(delta_f) * math.sqrt(tau_exp / 2.0)


def required_integration_time(target_snr, area_gm, eta, flux_spectral, gamma_excess, delta_f):
    """Integration time at which :func:`snr_rms` equals ``target_snr``."""
    _pos("target_snr", target_snr)
    if gamma_excess <= 0:
        raise InfeasibleOperatingPoint("gamma_excess = 0: the signal vanishes at this baseline")
    per_root_tau = area_gm * eta * flux_spectral * gamma_excess * math.sqrt(delta_f)
    return 2.0 * (target_snr / per_root_tau) ** 2


def budget(instrument, flux, gamma2, target_snr, attenuated_rate=None):
    """Full chain: magnitude-derived flux -> rate -> spectral flux -> tau for ``target_snr``."""
    if instrument.electronic_bandwidth is None:
        raise ValueError("instrument needs an electronic bandwidth (1/T_dead)")
    rate, att = photon_rate(flux, instrument)
    if attenuated_rate is not None:
        att = rate * attenuation_for_rate(rate, attenuated_rate)
    f_spec = spectral_photon_flux(att, instrument)
    excess = gamma2 - 1.5
    tau = required_integration_time(
        target_snr, instrument.area, instrument.quantum_efficiency, f_spec, excess,
        instrument.electronic_bandwidth,
    )
    return SnrReport(snr=target_snr, integration_time=tau, photon_rate=rate, attenuated_rate=att)


def timing_budget(temperature, binning_time):
    """Coherence time hbar/(k_B T) and the chance a correlated pair lands in one bin.

    Returns ``(coherence_time, pair_probability)``; the probability is capped at 1.
    """
    _pos("temperature", temperature)
    _pos("binning_time", binning_time)
    tau_coh = CONSTANTS.hbar / (CONSTANTS.k_B * temperature)
    return tau_coh, min(1.0, tau_coh / binning_time)


def implied_reference_flux(rate, magnitude, instrument):
    """Zero-point flux F' (W m^-2 nm^-1) that would make :func:`photon_rate` return ``rate``."""
    _pos("rate", rate)
    per_flux, _ = photon_rate(1.0, instrument)
    return rate / per_flux * 10.0 ** (magnitude / 2.5)


def implied_electronic_bandwidth(integration_time, target_snr, area_gm, eta, flux_spectral, gamma_excess):
    """Electronic bandwidth at which ``integration_time`` reaches ``target_snr``."""
    _pos("integration_time", integration_time)
    tau_unit_df = required_integration_time(target_snr, area_gm, eta, flux_spectral, gamma_excess, 1.0)
    return tau_unit_df / integration_time


@dataclass(frozen=True)
class GapReport:
    """Quoted vs. computed operating point, with the hidden inputs that would reconcile them."""

    quoted_rate: float
    computed_rate: float
    implied_reference_flux: float
    quoted_integration_time: float
    computed_integration_time: float
    implied_electronic_bandwidth: float

    @property
    def reproduced(self):
        return (
            math.isclose(self.quoted_rate, self.computed_rate, rel_tol=0.05)
            and math.isclose(self.quoted_integration_time, self.computed_integration_time, rel_tol=0.05)
        )


def gap_report(instrument, magnitude, gamma2, target_snr, quoted_rate, quoted_integration_time,
               attenuated_rate, reference_flux):
    """Compare quoted rate and integration time with what the formulas give.

    Solves for the reference flux and electronic bandwidth that the quoted
    figures would need, so the size of the discrepancy is explicit.
    """
    flux = reference_flux * 10.0 ** (-magnitude / 2.5)
    rep = budget(instrument, flux, gamma2, target_snr, attenuated_rate)
    f_spec = spectral_photon_flux(rep.attenuated_rate, instrument)
    return GapReport(
        quoted_rate=quoted_rate,
        computed_rate=rep.photon_rate,
        implied_reference_flux=implied_reference_flux(quoted_rate, magnitude, instrument),
        quoted_integration_time=quoted_integration_time,
        computed_integration_time=rep.integration_time,
        implied_electronic_bandwidth=implied_electronic_bandwidth(
            quoted_integration_time, target_snr, instrument.area, instrument.quantum_efficiency,
            f_spec, gamma2 - 1.5,
        ),
    )
