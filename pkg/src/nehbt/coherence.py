"""Closed-form second-order coherence of binary thermal emitters.

Baselines ``x`` are detector separations in metres; every curve function
accepts a scalar or an array of baselines and returns the same shape.
Frequencies are in Hz, angular frequencies in rad/s.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .radiometry import CONSTANTS, occupation_ratio
from .specialfn import bessel_j1_first_zero, j1_over_x

FAR_FIELD_RATIO = 1e3


class FarFieldWarning(UserWarning):
    """Observer distance is not much larger than the binary separation."""


def _positive(name, value):
    if not (np.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be finite and > 0, got {value!r}")
    return float(value)


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


@dataclass(frozen=True)
class SourceBody:
    radius: float  # m
    temperature: float  # K

    def __post_init__(self):
        _positive("radius", self.radius)
        _positive("temperature", self.temperature)


@dataclass(frozen=True)
class BinarySystem:
    """Two disc-like thermal emitters seen from a distance D.

    ``body_a`` always ends up as the larger body; if the caller passes them
    the other way round they are exchanged and ``swapped`` is set.
    ``allow_overlap`` admits separations below R_A + R_B, which is only
    meaningful for limiting-case studies such as concentric discs.
    """

    body_a: SourceBody
    body_b: SourceBody
    separation_d: float  # m
    observer_distance_D: float  # m
    orbital_period: float | None = None  # s
    allow_overlap: bool = False
    swapped: bool = field(default=False, init=False)

    def __post_init__(self):
        if self.body_b.radius > self.body_a.radius:
            a, b = self.body_b, self.body_a
            object.__setattr__(self, "body_a", a)
            object.__setattr__(self, "body_b", b)
            object.__setattr__(self, "swapped", True)
        if not (np.isfinite(self.separation_d) and self.separation_d >= 0):
            raise ValueError("separation_d must be finite and >= 0")
        _positive("observer_distance_D", self.observer_distance_D)
        if self.orbital_period is not None:
            _positive("orbital_period", self.orbital_period)
        if not self.allow_overlap and self.separation_d <= self.body_a.radius + self.body_b.radius:
            raise ValueError(
                "bodies overlap: separation_d must exceed R_A + R_B "
                "(pass allow_overlap=True for limiting cases)"
            )
        if self.separation_d >= self.observer_distance_D:
            raise ValueError("separation_d must be smaller than observer_distance_D")
        if self.separation_d > 0 and self.observer_distance_D / self.separation_d < FAR_FIELD_RATIO:
            warnings.warn(
                f"D/d = {self.observer_distance_D / self.separation_d:.3g} is below "
                f"{FAR_FIELD_RATIO:g}; far-field approximation is doubtful",
                FarFieldWarning,
                stacklevel=3,
            )

    @property
    def surface_ratio(self):
        return (self.body_b.radius / self.body_a.radius) ** 2

    def ratios(self, frequency):
        return derived_ratios(self, frequency)


@dataclass(frozen=True)
class DerivedRatios:
    s: float  # (R_B/R_A)^2
    N: float  # n_B/n_A


def derived_ratios(system, frequency):
    """Surface ratio s and occupation ratio N of ``system`` at ``frequency``."""
    _positive("frequency", frequency)
    N = occupation_ratio(frequency, system.body_b.temperature, system.body_a.temperature)
    return DerivedRatios(s=system.surface_ratio, N=float(N))


@dataclass(frozen=True)
class CoherenceCurve:
    baselines: np.ndarray
    gamma2: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.baselines, dtype=float)
        g = np.asarray(self.gamma2, dtype=float)
        if b.shape != g.shape or b.ndim != 1:
            raise ValueError("baselines and gamma2 must be 1-D and the same length")
        object.__setattr__(self, "baselines", b)
        object.__setattr__(self, "gamma2", g)

    def __len__(self):
        return len(self.baselines)


def angular_frequency(frequency):
    return 2.0 * math.pi * _positive("frequency", frequency)


# -- point sources -------------------------------------------------------------


def gamma2_two_sources(N12, phase):
    """Coherence of two thermal point sources with occupation ratio ``N12``.

    ``phase`` is omega (d1 - d2)(x1 - x2) / (c D), precomputed by the caller.
    """
    if not np.all(np.asarray(N12) > 0):
        raise ValueError("N12 must be > 0")
    N12 = np.asarray(N12, dtype=float)
    w = N12 / (1.0 + N12) ** 2
    return _out(2.0 * (1.0 + w * (np.cos(phase) - 1.0)))


# -- extended objects ------------------------------------------------------------


def _reduced(x, R, D, omega):
    return omega * R * np.asarray(x, dtype=float) / (CONSTANTS.c * D)


def gamma2_single(x, R, D, omega):
    """Single uniform disc: 3/2 + 2 [J1(u)/u]^2 with u = omega R x / (c D)."""
    for name, v in (("R", R), ("D", D), ("omega", omega)):
        _positive(name, v)
    f = j1_over_x(_reduced(x, R, D, omega))
    return _out(1.5 + 2.0 * f * f)


def gamma2_cross_term(x, R_i, R_j, D, omega):
    """Disc-pair envelope 2 [J1(u_i)/u_i][J1(u_j)/u_j]; equals 1/2 at x = 0."""
    fi = j1_over_x(_reduced(x, R_i, D, omega))
    fj = j1_over_x(_reduced(x, R_j, D, omega))
    return _out(2.0 * fi * fj)


def gamma_infinity(s, N):
    """Long-baseline plateau 3/2 + s/(1+s)^2 (1-N)^2/(1+N)^2."""
    _positive("s", s)
    _positive("N", N)
    return 1.5 + s / (1.0 + s) ** 2 * ((1.0 - N) / (1.0 + N)) ** 2


def gamma_min(s, N):
    """First-minimum depth in the R_i/d << 1 regime: 2 - 8 s/(1+s)^2 N/(1+N)^2."""
    _positive("s", s)
    _positive("N", N)
    return 2.0 - 8.0 * s / (1.0 + s) ** 2 * N / (1.0 + N) ** 2


def apparent_separation(d, alpha, D):
    """Projected separation d sin(a) / cos(arcsin(d sin(a) / D)), exact form."""
    if not d < D:
        raise ValueError("d must be smaller than D")
    y = d * math.sin(alpha)
    return y / math.sqrt(1.0 - (y / D) ** 2)


def separation_from_apparent(d_star, alpha, D):
    """Inverse of :func:`apparent_separation` for a known phase angle."""
    y = d_star / math.sqrt(1.0 + (d_star / D) ** 2)
    sa = math.sin(alpha)
    if sa == 0:
        raise ValueError("separation is unobservable at alpha = 0")
    return y / sa


def gamma2_binary(x, system, frequency, phase_angle_alpha=None):
    """Second-order coherence of a binary system at baseline(s) ``x``.

    With ``phase_angle_alpha`` given, the true separation is replaced by the
    apparent one seen at that orbital phase.
    """
    omega = angular_frequency(frequency)
    r = derived_ratios(system, frequency)
    s, N = r.s, r.N
    D = system.observer_distance_D
    RA, RB = system.body_a.radius, system.body_b.radius
    d = system.separation_d
    if phase_angle_alpha is not None:
        d = apparent_separation(d, phase_angle_alpha, D)

    x = np.asarray(x, dtype=float)
    fa = j1_over_x(_reduced(x, RA, D, omega))
    fb = j1_over_x(_reduced(x, RB, D, omega))
    g_aa = 2.0 * fa * fa
    g_bb = 2.0 * fb * fb
    g_ab = 2.0 * fa * fb
    fringe = np.cos(omega * d * x / (CONSTANTS.c * D))
    cross = 8.0 * N * s / (1.0 + N) ** 2
    out = gamma_infinity(s, N) + (g_aa + s * s * g_bb + cross * fringe * g_ab) / (1.0 + s) ** 2
    return _out(out)


# -- characteristic baselines -----------------------------------------------------


def baseline_osc(omega, D, d):
    """Baseline of the first fringe minimum, pi c D / (omega d)."""
    _positive("omega", omega)
    _positive("D", D)
    _positive("d", d)
    return math.pi * CONSTANTS.c * D / (omega * d)


def baseline_asy(omega, D, R_A):
    """Decay baseline u1 c D / (omega R_A), the first zero of the largest disc's envelope."""
    _positive("omega", omega)
    _positive("D", D)
    _positive("R_A", R_A)
    return bessel_j1_first_zero() * CONSTANTS.c * D / (omega * R_A)


@dataclass(frozen=True)
class MinimaLadder:
    rungs: tuple  # (m, baseline) pairs
    truncated: bool  # True when x_asy < x_osc leaves no usable minimum

    def __iter__(self):
        return iter(self.rungs)

    def __len__(self):
        return len(self.rungs)

    @property
    def baselines(self):
        return np.array([b for _, b in self.rungs])


def minima_ladder(x_osc, x_asy):
    """Usable fringe minima (2m-1) x_osc for m <= (1 + x_asy/x_osc)/2."""
    _positive("x_osc", x_osc)
    _positive("x_asy", x_asy)
    m_max = math.floor((1.0 + x_asy / x_osc) / 2.0)
    rungs = tuple((m, (2 * m - 1) * x_osc) for m in range(1, m_max + 1))
    return MinimaLadder(rungs=rungs, truncated=x_asy < x_osc)


def sample_curve(system, frequency, baselines, alpha=None):
    """Evaluate :func:`gamma2_binary` on a caller-provided ascending grid."""
    b = np.asarray(baselines, dtype=float)
    if b.ndim != 1 or b.size == 0:
        raise ValueError("baselines must be a non-empty 1-D sequence")
    if np.any(b < 0) or np.any(np.diff(b) < 0):
        raise ValueError("baselines must be non-negative and sorted ascending")
    g = np.atleast_1d(gamma2_binary(b, system, frequency, alpha))
    return CoherenceCurve(baselines=b, gamma2=g)
