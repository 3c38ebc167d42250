"""Feature extraction, measurement-strategy decisions and parameter inversion."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from . import coherence as coh
from .radiometry import CONSTANTS, mean_photon_number, temperature_from_occupation
from .specialfn import bessel_j1_first_zero, minimize_scalar

APPRECIABLE = 0.01
PLATEAU_TOL = 1e-3
SIZE_RATIO_BOUNDS = (0.1, 10.0)
ROOT_LOW = 4.0 - math.sqrt(15.0)
ROOT_HIGH = 4.0 + math.sqrt(15.0)


class PlateauNotReached(ValueError):
    """The sampled curve stops before reaching its long-baseline plateau."""


class InfeasibleFeatures(ValueError):
    """Measured features admit no physical (s, N) solution."""


class NoOscillationSignal(InfeasibleFeatures):
    """gamma_min shows no dip below 2, so no oscillation can be inverted."""


@dataclass(frozen=True)
class FeatureSet:
    """Characteristic features of one coherence curve.

    ``gamma_min``/``x_osc`` are None when no oscillation minimum exists.
    ``gamma_min_source`` records whether gamma_min is the closed-form
    approximation or a value read off the full curve.
    """

    gamma_min: float | None
    gamma_inf: float
    x_osc: float | None
    x_asy: float
    f_osc: float
    f_asy: float
    usable_minima: int
    gamma_min_source: str = "closed_form"


def variation_osc(s, N):
    """Oscillation variation assuming gamma_Single(x_osc) ~ 2."""
    coh._positive("s", s)
    coh._positive("N", N)
    return 4.0 * s / (1.0 + s) ** 2 * N / (1.0 + N) ** 2


def variation_asy(s, N):
    coh._positive("s", s)
    coh._positive("N", N)
    return (2.0 / 3.0) * s / (1.0 + s) ** 2 * ((1.0 - N) / (1.0 + N)) ** 2


def size_bound_check(R_A, R_B, bounds=SIZE_RATIO_BOUNDS):
    """True iff R_B/R_A lies strictly inside the appreciability decade."""
    ratio = R_B / R_A
    return bounds[0] < ratio < bounds[1]


def decision_boundaries(omega, T_A):
    """Temperatures T_- < T_+ of body B at which F_osc = F_asy.

    Between them the oscillation amplitude is the larger variation.
    """
    nu = coh._positive("omega", omega) / (2.0 * math.pi)
    n_a = mean_photon_number(nu, T_A)
    if n_a == 0.0:
        raise ValueError("occupation of body A underflows at this frequency")
    t_minus = temperature_from_occupation(nu, ROOT_LOW * n_a)
    t_plus = temperature_from_occupation(nu, ROOT_HIGH * n_a)
    return t_minus, t_plus


@dataclass(frozen=True)
class DecisionOutcome:
    dominant_feature: str  # "oscillation" | "asymptotic" | "neither_appreciable"
    T_minus: float
    T_plus: float
    size_bound_ok: bool
    f_osc: float = math.nan
    f_asy: float = math.nan
    N: float = math.nan


def classify_by_ratios(s, N, threshold=APPRECIABLE):
    """Dominant feature for given surface and occupation ratios."""
    f_osc, f_asy = variation_osc(s, N), variation_asy(s, N)
    if max(f_osc, f_asy) < threshold:
        return "neither_appreciable", f_osc, f_asy
    if ROOT_LOW < N < ROOT_HIGH:
        return "oscillation", f_osc, f_asy
    return "asymptotic", f_osc, f_asy


def classify_strategy(system, frequency, threshold=APPRECIABLE):
    r = coh.derived_ratios(system, frequency)
    label, f_osc, f_asy = classify_by_ratios(r.s, r.N, threshold)
    t_minus, t_plus = decision_boundaries(coh.angular_frequency(frequency), system.body_a.temperature)
    return DecisionOutcome(
        dominant_feature=label,
        T_minus=t_minus,
        T_plus=t_plus,
        size_bound_ok=size_bound_check(system.body_a.radius, system.body_b.radius),
        f_osc=f_osc,
        f_asy=f_asy,
        N=r.N,
    )


# -- forward features -------------------------------------------------------------


def forward_features(system, frequency, alpha=None, minimum="closed_form"):
    """Features predicted by the forward model.

    ``minimum="closed_form"`` uses the small-disc approximation for
    gamma_min; ``minimum="curve"`` evaluates the full curve at x_osc.
    """
    omega = coh.angular_frequency(frequency)
    D = system.observer_distance_D
    d = system.separation_d
    if alpha is not None:
        d = coh.apparent_separation(d, alpha, D)
    r = coh.derived_ratios(system, frequency)
    x_osc = coh.baseline_osc(omega, D, d)
    x_asy = coh.baseline_asy(omega, D, system.body_a.radius)
    if minimum == "closed_form":
        g_min = coh.gamma_min(r.s, r.N)
    elif minimum == "curve":
        g_min = coh.gamma2_binary(x_osc, system, frequency, alpha)
    else:
        raise ValueError(f"unknown minimum mode {minimum!r}")
    g_inf = coh.gamma_infinity(r.s, r.N)
    g_single = coh.gamma2_single(x_osc, system.body_a.radius, D, omega)
    return FeatureSet(
        gamma_min=g_min,
        gamma_inf=g_inf,
        x_osc=x_osc,
        x_asy=x_asy,
        f_osc=1.0 - g_min / g_single,
        f_asy=2.0 * g_inf / 3.0 - 1.0,
        usable_minima=len(coh.minima_ladder(x_osc, x_asy)),
        gamma_min_source=minimum,
    )


# -- extraction from sampled curves ----------------------------------------------


def _local_minima(g):
    i = np.arange(1, len(g) - 1)
    return i[(g[i] < g[i - 1]) & (g[i] <= g[i + 1])]


def _prominence(g, i):
    # depth of the minimum below the lower of the two enclosing maxima
    left = g[: i + 1].max()
    j = i + 1
    while j < len(g) and g[j] >= g[j - 1]:
        j += 1
    right = g[i:j].max()
    return min(left, right) - g[i]


def _refine_minimum(b, g, i):
    lo, hi = max(i - 3, 0), min(i + 4, len(b))
    spline = CubicSpline(b[lo:hi], g[lo:hi])
    x, y = minimize_scalar(lambda t: float(spline(t)), (b[i - 1], b[i + 1]), tol=1e-9)
    return x, y


def extract_features(curve, system_geometry, plateau_tol=PLATEAU_TOL, min_prominence=0.015):
    """Read the characteristic features off a sampled coherence curve.

    Parameters
    ----------
    curve : CoherenceCurve
        Must extend into the long-baseline plateau: the last decade of
        baselines (x >= x_max/10) may vary by less than ``plateau_tol``.
    system_geometry : (omega, D)
        Angular frequency and observer distance, used to turn the decay
        baseline into a radius for the single-disc reference curve.
    plateau_tol : float
        Band half-width around gamma_inf that defines the decay baseline.
    min_prominence : float
        Minima shallower than this are treated as ripples of the disc
        envelope rather than binary fringes.

    Returns
    -------
    FeatureSet
        ``gamma_min`` and ``x_osc`` are None when no fringe minimum is found.
    """
    omega, D = system_geometry
    b, g = curve.baselines, curve.gamma2
    if len(b) < 5 or b[-1] <= 0:
        raise PlateauNotReached("curve too short")
    tail = b >= b[-1] / 10.0
    if tail.sum() < 3 or np.ptp(g[tail]) >= plateau_tol:
        raise PlateauNotReached(
            f"last decade of baselines varies by {np.ptp(g[tail]):.3g} >= {plateau_tol:g}"
        )
    g_inf = float(g[tail].mean())

    outside = np.abs(g - g_inf) >= plateau_tol
    last_out = np.flatnonzero(outside)
    if last_out.size == 0:
        x_asy = float(b[0])
    else:
        k = last_out[-1]
        # linear interpolation of the final band entry
        g0, g1 = abs(g[k] - g_inf), abs(g[k + 1] - g_inf)
        t = (g0 - plateau_tol) / (g0 - g1) if g0 != g1 else 0.0
        x_asy = float(b[k] + t * (b[k + 1] - b[k]))

    f_asy = 2.0 * g_inf / 3.0 - 1.0
    minima = [i for i in _local_minima(g) if b[i] < x_asy and _prominence(g, i) >= min_prominence]
    if not minima:
        return FeatureSet(None, g_inf, None, x_asy, 0.0, f_asy, 0, "curve")

    x_osc, g_min = _refine_minimum(b, g, minima[0])
    R_A = bessel_j1_first_zero() * CONSTANTS.c * D / (omega * x_asy)
    g_single = coh.gamma2_single(x_osc, R_A, D, omega)
    return FeatureSet(
        gamma_min=float(g_min),
        gamma_inf=g_inf,
        x_osc=float(x_osc),
        x_asy=x_asy,
        f_osc=1.0 - g_min / g_single,
        f_asy=f_asy,
        usable_minima=len(minima),
        gamma_min_source="curve",
    )


# -- inversion -------------------------------------------------------------------


def _reciprocal_pair(root):
    lo, hi = sorted((root, 1.0 / root))
    return (lo, hi)


@dataclass(frozen=True)
class EstimateResult:
    """Inverted system parameters.

    The features are invariant under s -> 1/s and N -> 1/N, so both members
    of each reciprocal pair are always reported. ``d`` is None when the
    orbital phase is unknown; ``d_apparent`` is then the only constraint.
    """

    R_A: float
    d: float | None
    d_apparent: float
    s_branches: tuple
    N_branches: tuple
    T_B: tuple | None = None
    selected_s: float = math.nan
    selected_branch_rule: str = "s <= 1 (body A is the larger disc)"
    flags: tuple = field(default_factory=tuple)


def estimate_parameters(features, omega, D, T_A=None, alpha=math.pi / 2, equilibrium_tol=1e-12):
    """Invert measured features to (R_A, d, s, N[, T_B]).

    ``alpha`` is the orbital phase angle at which the features were taken;
    pass None when it is unknown and only the apparent separation can be
    reported.
    """
    if features.gamma_min is None or features.x_osc is None:
        raise NoOscillationSignal("features carry no oscillation minimum")
    g_min, g_inf = features.gamma_min, features.gamma_inf
    if not 1.5 - 1e-12 <= g_inf <= 1.75 + 1e-12:
        raise InfeasibleFeatures(f"gamma_inf={g_inf} outside [3/2, 7/4]")
    b = (2.0 - g_min) / 8.0
    if b <= 0:
        raise NoOscillationSignal("gamma_min >= 2: no oscillation signal")
    a = max(g_inf - 1.5, 0.0)

    c = CONSTANTS.c
    R_A = bessel_j1_first_zero() * c * D / (omega * features.x_asy)
    d_apparent = math.pi * c * D / (omega * features.x_osc)
    d = None if alpha is None else coh.separation_from_apparent(d_apparent, alpha, D)

    flags = []
    # N^2 - (2 + a/b) N + 1 = 0
    p = 2.0 + a / b
    disc = p * p - 4.0
    if disc < 0:
        raise InfeasibleFeatures("negative discriminant for the occupation ratio")
    N_root = (p - math.sqrt(disc)) / 2.0
    if a <= equilibrium_tol:
        N_root = 1.0
        flags.append("equilibrium: temperatures unresolved individually")
    N_branches = _reciprocal_pair(N_root)

    # s/(1+s)^2 = q, i.e. q s^2 + (2q - 1) s + q = 0
    q = b * (1.0 + N_root) ** 2 / N_root
    if q > 0.25:
        if q - 0.25 > 1e-9:
            raise InfeasibleFeatures(f"s/(1+s)^2 = {q:.6g} exceeds 1/4")
        q = 0.25
    disc_s = 1.0 - 4.0 * q
    s_root = (1.0 - 2.0 * q - math.sqrt(max(disc_s, 0.0))) / (2.0 * q)
    s_branches = _reciprocal_pair(s_root)

    T_B = None
    if T_A is not None:
        nu = omega / (2.0 * math.pi)
        n_a = mean_photon_number(nu, T_A)
        T_B = tuple(temperature_from_occupation(nu, N * n_a) for N in N_branches)

    return EstimateResult(
        R_A=R_A,
        d=d,
        d_apparent=d_apparent,
        s_branches=s_branches,
        N_branches=N_branches,
        T_B=T_B,
        selected_s=s_branches[0],
        flags=tuple(flags),
    )


# -- orbital phase ---------------------------------------------------------------


def phase_angle_sweep(system, frequency, x, alphas):
    """Normalised coherence gamma_Binary(x; d*(alpha)) / gamma_Single(x) per alpha."""
    if not x > 0:
        raise ValueError("x must be > 0")
    omega = coh.angular_frequency(frequency)
    g_single = coh.gamma2_single(x, system.body_a.radius, system.observer_distance_D, omega)
    return [
        (float(a), coh.gamma2_binary(x, system, frequency, float(a)) / g_single)
        for a in alphas
    ]
