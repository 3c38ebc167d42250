"""Brute-force checks that share no algebra with the closed forms.

* Monte-Carlo sampling of the thermal P-function for two point sources.
* Direct quadrature of the pairwise coherence over both discs.
* The 4x4 Gaussian-integral determinant behind the generating functional.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import coherence as coh
from .radiometry import CONSTANTS, mean_photon_number
from .specialfn import QuadratureSpec, disc_phase_integral

JACKKNIFE_BLOCKS = 100


@dataclass(frozen=True)
class McConfig:
    samples: int = 1_000_000
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.samples < 10_000:
            raise ValueError("samples must be >= 1e4")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True)
class McEstimate:
    gamma2_hat: float
    std_error: float


def _block_rng(seed, block):
    # counter-based stream keyed on (seed, block): independent of worker scheduling
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, block])))


def _thermal_amplitudes(rng, n_bar, size):
    # Box-Muller: |v|^2 is exponential with mean n_bar, phase uniform
    u1 = 1.0 - rng.random(size)  # (0, 1]
    u2 = rng.random(size)
    radius = np.sqrt(-n_bar * np.log(u1))
    return radius * np.exp(2j * math.pi * u2)


def _block_moments(seed, block, size, n1, n2, phase):
    rng = _block_rng(seed, block)
    v1 = _thermal_amplitudes(rng, n1, size)
    v2 = _thermal_amplitudes(rng, n2, size)
    # detector 2 sees source 2 with an extra path phase relative to source 1
    i1 = np.abs(v1 + v2) ** 2
    i2 = np.abs(v1 + v2 * np.exp(1j * phase)) ** 2
    return np.array([i1.sum(), i2.sum(), (i1 * i2).sum()]), size


def mc_gamma2_two_sources(n1, n2, phase, cfg=McConfig()):
    """Monte-Carlo estimate of <I1 I2> / (<I1><I2>) for two thermal point sources.

    Samples are split into 100 fixed blocks, each with its own counter-based
    random stream, so the estimate is identical for any number of workers.
    The standard error is the delete-one-block jackknife.
    """
    if not (n1 > 0 and n2 > 0):
        raise ValueError("occupations must be > 0")
    base, extra = divmod(cfg.samples, JACKKNIFE_BLOCKS)
    sizes = [base + (1 if b < extra else 0) for b in range(JACKKNIFE_BLOCKS)]

    def work(b):
        return _block_moments(cfg.seed, b, sizes[b], n1, n2, phase)

    if cfg.workers == 1:
        results = [work(b) for b in range(JACKKNIFE_BLOCKS)]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(work, range(JACKKNIFE_BLOCKS)))

    sums = np.array([r[0] for r in results])  # (blocks, 3), fixed order
    counts = np.array([r[1] for r in results], dtype=float)
    total = sums.sum(axis=0)
    n_total = counts.sum()

    def ratio(s, n):
        return (s[2] / n) / ((s[0] / n) * (s[1] / n))

    estimate = ratio(total, n_total)
    loo = np.array([ratio(total - sums[b], n_total - counts[b]) for b in range(JACKKNIFE_BLOCKS)])
    B = JACKKNIFE_BLOCKS
    se = math.sqrt((B - 1) / B * np.sum((loo - loo.mean()) ** 2))
    return McEstimate(gamma2_hat=float(estimate), std_error=float(se))


# -- disc-pair quadrature ----------------------------------------------------------


def quadrature_gamma2_binary(system, frequency, x, spec=QuadratureSpec(), alpha=None):
    """Surface average of the point-pair coherence over both discs.

    For each block (i, j) in {A, B}^2 the pair coherence
    2 (1 + w_ij [cos(k (d1 - d2)) - 1]) is integrated over disc i x disc j,
    with w_ij = n_i n_j / (n_i + n_j)^2 and k = omega x / (c D). Since
    cos(k(d1 - d2)) = Re[e^{i k d1} e^{-i k d2}], each 4-D block integral
    is the product of two 2-D disc integrals, each evaluated numerically
    with the source offset included in the integrand.
    """
    if x < 0:
        raise ValueError("x must be >= 0")
    omega = coh.angular_frequency(frequency)
    D = system.observer_distance_D
    d = system.separation_d
    if alpha is not None:
        d = coh.apparent_separation(d, alpha, D)
    k = omega * x / (CONSTANTS.c * D)

    bodies = (system.body_a, system.body_b)
    offsets = (0.0, d)
    n = [mean_photon_number(frequency, b.temperature) for b in bodies]
    if min(n) == 0.0:
        # deep Wien tail: only the ratio matters, rebuild it in log space
        N = coh.derived_ratios(system, frequency).N
        n = [1.0, N]
    areas = [math.pi * b.radius**2 for b in bodies]
    phases = [disc_phase_integral(b.radius, k, off, spec) for b, off in zip(bodies, offsets)]

    total_area = sum(areas)
    acc = 0.0
    for i in range(2):
        for j in range(2):
            w = n[i] * n[j] / (n[i] + n[j]) ** 2
            cos_block = (phases[i] * phases[j].conjugate()).real
            acc += 2.0 * ((1.0 - w) * areas[i] * areas[j] + w * cos_block)
    return acc / total_area**2


def direct_quadrature_gamma2_binary(system, frequency, x, radial=12, angular=24):
    """Unfactorised 4-D tensor quadrature of the same surface average.

    Slow and low-order; used only to confirm the factorisation in
    :func:`quadrature_gamma2_binary`.
    """
    omega = coh.angular_frequency(frequency)
    D = system.observer_distance_D
    k = omega * x / (CONSTANTS.c * D)
    t, w = np.polynomial.legendre.leggauss(radial)
    theta = 2.0 * math.pi * np.arange(angular) / angular
    N = coh.derived_ratios(system, frequency).N
    occ = (1.0, N)

    pts, wts, owner = [], [], []
    for idx, (body, off) in enumerate(((system.body_a, 0.0), (system.body_b, system.separation_d))):
        R = body.radius
        r = 0.5 * R * (t + 1.0)
        wr = 0.5 * R * w * r
        xs = off + np.outer(r, np.cos(theta)).ravel()
        ws = np.outer(wr, np.full(angular, 2.0 * math.pi / angular)).ravel()
        pts.append(xs)
        wts.append(ws)
        owner.append(np.full(xs.size, idx))
    p = np.concatenate(pts)
    wv = np.concatenate(wts)
    o = np.concatenate(owner)
    n = np.array(occ)[o]
    pair_w = np.outer(n, n) / (n[:, None] + n[None, :]) ** 2
    g = 2.0 * (1.0 + pair_w * (np.cos(k * (p[:, None] - p[None, :])) - 1.0))
    return float(wv @ g @ wv / wv.sum() ** 2)


# -- Gaussian determinant ----------------------------------------------------------


def gaussian_matrix(A11, A22, A12, n1, n2):
    """Real 4x4 quadratic form of the two-source Gaussian P-function integral.

    Variables are ordered (Re v1, Im v1, Re v2, Im v2).
    """
    a = 2.0 * (1.0 / n1 - A11)
    b = 2.0 * (1.0 / n2 - A22)
    re, im = A12.real, A12.imag
    return np.array(
        [
            [a, 0.0, -2 * re, -2 * im],
            [0.0, a, 2 * im, -2 * re],
            [-2 * re, 2 * im, b, 0.0],
            [-2 * im, -2 * re, 0.0, b],
        ]
    )


def _check_domain(A11, A22, n1, n2):
    if not (n1 > 0 and n2 > 0):
        raise ValueError("occupations must be > 0")
    if not (1.0 / n1 - A11 > 0 and 1.0 / n2 - A22 > 0):
        raise ValueError("convergence requires 1/n_l - A_ll > 0 for l = 1, 2")


def gaussian_determinant_identity(A11, A22, A12, n1, n2):
    """Return (LU determinant of the 4x4 matrix, closed-form determinant)."""
    _check_domain(A11, A22, n1, n2)
    A12 = complex(A12)
    lhs = float(np.linalg.det(gaussian_matrix(A11, A22, A12, n1, n2)))
    core = (1.0 - A11 * n1) * (1.0 - A22 * n2) - n1 * n2 * abs(A12) ** 2
    rhs = (4.0 * core / (n1 * n2)) ** 2
    return lhs, rhs


def generating_functional(A11, A22, A12, n1, n2):
    """Z from the numerical Gaussian integral: 4 / (n1 n2 sqrt(det))."""
    lhs, _ = gaussian_determinant_identity(A11, A22, A12, n1, n2)
    if lhs <= 0:
        raise ValueError("quadratic form is not positive definite")
    return 4.0 / (n1 * n2 * math.sqrt(lhs))
