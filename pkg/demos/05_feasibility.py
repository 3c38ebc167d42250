"""
Photon budget for a two-telescope measurement
=============================================

Rates, integration time and timing for 0.6 m telescopes with a V-band
filter. Absolute numbers hinge on the reference flux and detector dead
time, both inputs here.
"""

# %%
from nehbt import coherence as coh
from nehbt import feasibility as fz
from nehbt.catalog import get_entry
from nehbt.radiometry import CONSTANTS, flux_from_magnitude

inst = fz.InstrumentConfig.from_dead_time(1e-9)
nu = CONSTANTS.c / inst.filter_center_wavelength

# %%
for key, rate_cap in (("spica", 2e3), ("luhman16", None)):
    entry = get_entry(key)
    system = entry.system()
    x_osc = coh.baseline_osc(coh.angular_frequency(nu), system.observer_distance_D, system.separation_d)
    g = coh.gamma2_binary(x_osc, system, nu)
    flux = flux_from_magnitude(entry.apparent_magnitude_V)
    rep = fz.budget(inst, flux, g, target_snr=50.0, attenuated_rate=rate_cap)
    print(f"{key}: rate {rep.photon_rate:.3e}/s, detected {rep.attenuated_rate:.3e}/s, "
          f"gamma2(x_osc)={g:.4f}, tau(SNR 50) = {rep.integration_time:.3e} s")

# %% [markdown]
# Square-root law and the coincidence-timing penalty.

# %%
for tau in (1.0, 4.0, 16.0):
    print(f"tau={tau:5.1f} s  SNR={fz.snr_rms(1.13, 0.3, 1e-3, 0.14, 1e9, tau):.4e}")
tau_coh, p = fz.timing_budget(25300.0, 1e-8)
print(f"coherence time {tau_coh:.2e} s, pair-in-bin probability {p:.1e}")
