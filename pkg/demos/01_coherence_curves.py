"""
Coherence curves of the two catalog binaries
============================================

Sample gamma2 against baseline for Luhman 16 and Spica and compare it with
the single-disc curve of the larger body.
"""

# %%
import numpy as np

from nehbt import coherence as coh
from nehbt.catalog import get_entry

from _plotting import plt, save

nu = 600e12
omega = coh.angular_frequency(nu)

# %% [markdown]
# Characteristic baselines: the first fringe minimum and the first zero of
# the larger disc's envelope.

# %%
for key in ("luhman16", "spica"):
    system = get_entry(key).system()
    D = system.observer_distance_D
    x_osc = coh.baseline_osc(omega, D, system.separation_d)
    x_asy = coh.baseline_asy(omega, D, system.body_a.radius)
    r = coh.derived_ratios(system, nu)
    print(f"{key:9s} s={r.s:.3f} N={r.N:.3f}  x_osc={x_osc:.4g} m  x_asy={x_asy:.4g} m  "
          f"gamma_inf={coh.gamma_infinity(r.s, r.N):.5f}")

# %% [markdown]
# The curves. Luhman 16's fringes are very fine at this frequency, so a
# short zoomed window is shown next to the full range.

# %%
if plt is not None:
    fig, axes = plt.subplots(1, 3, figsize=(14, 3.8))
    windows = [("luhman16", 0.5), ("luhman16", 800.0), ("spica", 400.0)]
    for ax, (key, span) in zip(axes, windows):
        system = get_entry(key).system()
        x = np.linspace(0, span, 4000)
        ax.plot(x, coh.gamma2_binary(x, system, nu), label="binary")
        ax.plot(x, coh.gamma2_single(x, system.body_a.radius, system.observer_distance_D, omega),
                "--", label="single disc A")
        ax.axhline(1.5, color="0.6", lw=0.8)
        ax.set_title(f"{key}, {nu / 1e12:.0f} THz")
        ax.set_xlabel("baseline x [m]")
    axes[0].set_ylabel("gamma2")
    axes[0].legend()
    save(fig, "coherence_curves.png")
