"""
Which feature to measure
========================

For a Sun-like primary, map the companion temperature and observing
frequency to the dominant feature: fringe depth or raised plateau.
"""

# %%
import numpy as np

from nehbt import analysis as an
from nehbt import coherence as coh
from nehbt.radiometry import occupation_ratio

T_A = 5778.0

# %% [markdown]
# The two features are equally strong when the occupation ratio hits
# 4 -/+ sqrt(15). Those roots give a temperature window around T_A.

# %%
for nu in (1e14, 3e14, 1e15):
    t_minus, t_plus = an.decision_boundaries(coh.angular_frequency(nu), T_A)
    label, f_osc, f_asy = an.classify_by_ratios(1.0, occupation_ratio(nu, 1e4, T_A))
    print(f"nu={nu:.0e} Hz: window [{t_minus:7.0f}, {t_plus:7.0f}] K; T_B=1e4 K -> {label} "
          f"(F_osc={f_osc:.3f}, F_asy={f_asy:.3f})")

# %% [markdown]
# A coarse map on a log grid of (nu, T_B), equal radii.

# %%
nus = np.logspace(13, 16, 7)
temps = np.logspace(3, 5, 9)
symbols = {"oscillation": "o", "asymptotic": "A", "neither_appreciable": "."}
print("T_B \\ nu " + " ".join(f"{n:7.0e}" for n in nus))
for T_B in temps:
    row = [symbols[an.classify_by_ratios(1.0, occupation_ratio(nu, T_B, T_A))[0]] for nu in nus]
    print(f"{T_B:8.0f}  " + "       ".join(row))
