"""Oracle verification suites: each returns a JSON-ready report with a ``passed`` flag."""

from __future__ import annotations

import math

import numpy as np

from . import coherence as coh
from .catalog import load_catalog
from .oracle import McConfig, gaussian_determinant_identity, mc_gamma2_two_sources, quadrature_gamma2_binary
from .specialfn import QuadratureSpec

SUITES = ("determinant", "quadrature", "mc")


def random_determinant_inputs(rng, count):
    """Coefficient sets inside the region where the Gaussian integral converges.

    |A12| is kept below 90% of its positive-definiteness limit so the
    closed-form bracket never cancels to zero.
    """
    out = []
    for _ in range(count):
        n1, n2 = np.exp(rng.uniform(np.log(0.01), np.log(10.0), 2))
        m1, m2 = rng.uniform(0.1, 2.0, 2)  # margins n_l (1/n_l - A_ll)
        A11, A22 = (1.0 - m1) / n1, (1.0 - m2) / n2
        limit = math.sqrt((m1 / n1) * (m2 / n2))
        mag = rng.uniform(0.0, 0.9) * limit
        A12 = mag * np.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        out.append((float(A11), float(A22), complex(A12), float(n1), float(n2)))
    return out


def verify_determinant(seed=0, count=100, rtol=1e-10):
    rng = np.random.default_rng(seed)
    worst = 0.0
    failures = 0
    for args in random_determinant_inputs(rng, count):
        lhs, rhs = gaussian_determinant_identity(*args)
        rel = abs(lhs - rhs) / abs(rhs)
        worst = max(worst, rel)
        failures += rel > rtol
    return {
        "suite": "determinant", "seed": seed, "checks": count, "rtol": rtol,
        "max_relative_error": worst, "failures": int(failures), "passed": failures == 0,
    }


def quadrature_grid(system, frequency, points=20, span=1.5):
    omega = coh.angular_frequency(frequency)
    x_asy = coh.baseline_asy(omega, system.observer_distance_D, system.body_a.radius)
    return np.linspace(0.0, span * x_asy, points)


def verify_quadrature(frequency=600e12, points=20, atol=1e-6, catalog=None, spec=QuadratureSpec()):
    systems = load_catalog(catalog)
    per_system = {}
    ok = True
    for key, entry in sorted(systems.items()):
        system = entry.system()
        grid = quadrature_grid(system, frequency, points)
        closed = np.asarray(coh.gamma2_binary(grid, system, frequency))
        numeric = np.array([quadrature_gamma2_binary(system, frequency, x, spec) for x in grid])
        dev = float(np.max(np.abs(numeric - closed)))
        per_system[key] = {"points": points, "max_abs_deviation": dev, "grid_max_m": float(grid[-1])}
        ok &= dev < atol
    return {
        "suite": "quadrature", "frequency_Hz": frequency, "atol": atol,
        "systems": per_system, "passed": bool(ok),
    }


def random_mc_configs(rng, count):
    out = []
    for _ in range(count):
        n1, n2 = np.exp(rng.uniform(np.log(0.05), np.log(5.0), 2))
        phase = rng.uniform(0.0, 2.0 * math.pi)
        out.append((float(n1), float(n2), float(phase)))
    return out


def verify_mc(seed=0, configs=50, samples=1_000_000, workers=1, n_sigma=4.0, required=47):
    rng = np.random.default_rng(seed)
    rows = []
    hits = 0
    for i, (n1, n2, phase) in enumerate(random_mc_configs(rng, configs)):
        cfg = McConfig(samples=samples, seed=(seed * 1_000_003 + i) % 2**64, workers=workers)
        est = mc_gamma2_two_sources(n1, n2, phase, cfg)
        closed = coh.gamma2_two_sources(n2 / n1, phase)
        z = (est.gamma2_hat - closed) / est.std_error
        inside = bool(abs(z) <= n_sigma)
        hits += inside
        rows.append({
            "n1": n1, "n2": n2, "phase_rad": phase, "seed": cfg.seed,
            "gamma2_hat": est.gamma2_hat, "std_error": est.std_error,
            "closed_form": closed, "z": z, "within": bool(inside),
        })
    return {
        "suite": "mc", "seed": seed, "samples": samples, "configs": configs,
        "n_sigma": n_sigma, "within": int(hits), "required": required,
        "passed": bool(hits >= required), "rows": rows,
    }


def run_suite(name, seed=0, samples=1_000_000, workers=1, frequency=600e12):
    if name == "determinant":
        return verify_determinant(seed)
    if name == "quadrature":
        return verify_quadrature(frequency)
    if name == "mc":
        return verify_mc(seed, samples=samples, workers=workers)
    raise ValueError(f"unknown suite {name!r}")
