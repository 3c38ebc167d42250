"""
Independent checks of the closed forms
======================================

Three brute-force routes: Monte-Carlo sampling of thermal amplitudes,
numerical integration over both discs, and a 4x4 Gaussian determinant.
"""

# %%
import math

import numpy as np

from nehbt import coherence as coh
from nehbt.catalog import get_entry
from nehbt.oracle import McConfig, gaussian_determinant_identity, mc_gamma2_two_sources, quadrature_gamma2_binary

# %% [markdown]
# Two thermal point sources: sample, correlate, compare.

# %%
cfg = McConfig(samples=400_000, seed=1)
for n1, n2, phase in [(1.0, 1.0, 0.0), (1.0, 1.0, math.pi), (1.0, 0.2, math.pi), (0.3, 2.0, 1.0)]:
    est = mc_gamma2_two_sources(n1, n2, phase, cfg)
    closed = coh.gamma2_two_sources(n2 / n1, phase)
    print(f"n=({n1}, {n2}) phase={phase:.2f}: MC {est.gamma2_hat:.4f} +/- {est.std_error:.4f}, "
          f"closed {closed:.4f}")

# %% [markdown]
# Disc quadrature along Spica's curve.

# %%
system = get_entry("spica").system()
nu = 600e12
for x in np.linspace(0, 200, 6):
    q = quadrature_gamma2_binary(system, nu, x)
    c = coh.gamma2_binary(x, system, nu)
    print(f"x={x:6.1f} m  quadrature {q:.12f}  closed {c:.12f}  diff {q - c:.1e}")

# %% [markdown]
# Gaussian determinant identity for one coefficient set.

# %%
lhs, rhs = gaussian_determinant_identity(0.2, -0.4, 0.3 + 0.1j, 0.8, 1.5)
print(f"LU det {lhs:.15g}, closed form {rhs:.15g}")
