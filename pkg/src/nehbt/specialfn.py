"""Bessel J1, disc quadrature and a bracketed scalar minimizer.

J1 is evaluated piecewise:

* ``|x| <= 8``: Taylor series about the origin,
* ``8 < |x| <= 25``: Miller backward recurrence normalised with
  ``J0 + 2 sum J_2k = 1``,
* ``|x| > 25``: Hankel asymptotic expansion.

All three branches are accurate to a few ulp times the size of J1, far
below the 1e-12 absolute budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import optimize

SERIES_LIMIT = 8.0
ASYMPTOTIC_LIMIT = 25.0
SMALL_ARGUMENT = 1e-6


class QuadratureError(RuntimeError):
    """Raised when a quadrature does not reach the requested tolerance."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Starting node counts and target tolerance for disc integrals.

    ``target_abs_tol`` is relative to the disc area pi R^2.
    """

    radial_nodes: int = 32
    angular_nodes: int = 64
    target_abs_tol: float = 1e-10
    max_refinements: int = 6

    def __post_init__(self):
        if self.radial_nodes < 8:
            raise ValueError("radial_nodes must be >= 8")
        if self.angular_nodes < 16:
            raise ValueError("angular_nodes must be >= 16")
        if not self.target_abs_tol > 0:
            raise ValueError("target_abs_tol must be > 0")


# -- Bessel J1 ---------------------------------------------------------------

_SERIES_TERMS = 40


@lru_cache(maxsize=None)
def _series_coefficients():
    # J1(x) = sum_k (-1)^k (x/2)^(2k+1) / (k! (k+1)!)
    return np.array(
        [(-1) ** k / (math.factorial(k) * math.factorial(k + 1)) for k in range(_SERIES_TERMS)]
    )


def _j1_series(x):
    h = 0.5 * x
    z = h * h
    acc = np.zeros_like(x)
    for c in _series_coefficients()[::-1]:
        acc = acc * z + c
    return acc * h


def _j1_miller(x):
    xmax = float(np.max(x))
    n_start = 2 * ((int(xmax + math.sqrt(60.0 * xmax)) + 20) // 2)
    j_next = np.zeros_like(x)
    j_cur = np.full_like(x, 1e-30)
    norm = np.zeros_like(x)
    j1 = np.zeros_like(x)
    for n in range(n_start, 0, -1):
        j_prev = (2.0 * n / x) * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        # j_cur now holds the unnormalised J_{n-1}
        if (n - 1) % 2 == 0 and n - 1 > 0:
            norm += 2.0 * j_cur
        if n - 1 == 1:
            j1 = j_cur.copy()
        big = np.abs(j_cur) > 1e250
        if np.any(big):
            scale = np.where(big, 1e-250, 1.0)
            j_cur *= scale
            j_next *= scale
            norm *= scale
            j1 *= scale
    norm += j_cur  # J0
    return j1 / norm


@lru_cache(maxsize=None)
def _hankel_coefficients(nu=1.0, terms=30):
    mu = 4.0 * nu * nu
    a = [1.0]
    for k in range(1, terms):
        a.append(a[-1] * (mu - (2 * k - 1) ** 2) / (k * 8.0))
    return tuple(a)


def _j1_asymptotic(x):
    a = _hankel_coefficients()
    inv = 1.0 / x
    p = np.zeros_like(x)
    q = np.zeros_like(x)
    term_scale = np.ones_like(x)
    for k, ak in enumerate(a):
        t = ak * term_scale
        if k % 2 == 0:
            p += (-1) ** (k // 2) * t
        else:
            q += (-1) ** (k // 2) * t
        term_scale = term_scale * inv
        if np.all(np.abs(t) < 1e-18):
            break
    # chi = x - 3 pi / 4 expanded so x itself is never shifted by an inexact constant
    s, c = np.sin(x), np.cos(x)
    cos_chi = (s - c) / math.sqrt(2.0)
    sin_chi = -(s + c) / math.sqrt(2.0)
    return np.sqrt(2.0 / (math.pi * x)) * (p * cos_chi - q * sin_chi)


def bessel_j1(x):
    """Bessel function of the first kind of order one.

    Parameters
    ----------
    x : float or array_like
        Finite argument(s).

    Returns
    -------
    float or ndarray
        J1(x); odd symmetry J1(-x) = -J1(x) holds exactly.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("bessel_j1 requires finite input")
    ax = np.abs(np.atleast_1d(arr))
    out = np.empty_like(ax)

    low = ax <= SERIES_LIMIT
    mid = (ax > SERIES_LIMIT) & (ax <= ASYMPTOTIC_LIMIT)
    high = ax > ASYMPTOTIC_LIMIT
    if np.any(low):
        out[low] = _j1_series(ax[low])
    if np.any(mid):
        out[mid] = _j1_miller(ax[mid])
    if np.any(high):
        out[high] = _j1_asymptotic(ax[high])

    out = np.where(np.atleast_1d(arr) < 0, -out, out)
    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)


def j1_over_x(u):
    """J1(u)/u with the removable singularity at 0 filled by its series (-> 1/2)."""
    arr = np.asarray(u, dtype=float)
    au = np.atleast_1d(arr)
    out = np.empty_like(au)
    small = np.abs(au) < SMALL_ARGUMENT
    out[small] = 0.5 - au[small] ** 2 / 16.0
    big = ~small
    if np.any(big):
        out[big] = bessel_j1(au[big]) / au[big]
    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)


@lru_cache(maxsize=None)
def bessel_j1_first_zero():
    """First positive zero u1 of J1 (about 3.8317059702)."""
    return optimize.brentq(bessel_j1, 3.0, 4.0, xtol=1e-15, rtol=4 * np.finfo(float).eps)


# -- Disc quadrature -----------------------------------------------------------


def _disc_nodes(R, radial, angular):
    t, w = np.polynomial.legendre.leggauss(radial)
    r = 0.5 * R * (t + 1.0)
    wr = 0.5 * R * w * r  # includes the Jacobian r
    theta = 2.0 * math.pi * np.arange(angular) / angular
    wt = np.full(angular, 2.0 * math.pi / angular)
    return r, wr, theta, wt


def disc_phase_integral(R, k, offset=0.0, spec=QuadratureSpec()):
    """Integrate exp(i k (offset + r cos(theta))) over a disc of radius R.

    Tensor-product Gauss-Legendre (radial) x trapezoid (angular). Node
    counts are doubled until two successive estimates agree within
    ``spec.target_abs_tol * pi R^2``; otherwise :class:`QuadratureError`.
    """
    if not R > 0:
        raise ValueError("R must be > 0")
    if not k >= 0:
        raise ValueError("k must be >= 0")
    area = math.pi * R * R
    tol = spec.target_abs_tol * area
    radial, angular = spec.radial_nodes, spec.angular_nodes
    previous = None
    for _ in range(spec.max_refinements + 1):
        r, wr, theta, wt = _disc_nodes(R, radial, angular)
        phase = k * (offset + np.outer(r, np.cos(theta)))
        value = complex(wr @ np.exp(1j * phase) @ wt)
        if previous is not None and abs(value - previous) <= tol:
            return value
        previous = value
        radial *= 2
        angular *= 2
    raise QuadratureError(
        f"disc quadrature did not converge to {spec.target_abs_tol:g} "
        f"(R={R!r}, k={k!r}) within {spec.max_refinements} refinements"
    )


def disc_cosine_integral(R, k, spec=QuadratureSpec()):
    """Numerical value of int_0^R dr int_0^2pi dtheta r cos(k r cos(theta))."""
    return disc_phase_integral(R, k, 0.0, spec).real


def disc_sine_integral(R, k, spec=QuadratureSpec()):
    """Numerical value of int_0^R dr int_0^2pi dtheta r sin(k r cos(theta)); vanishes."""
    if k == 0:
        return 0.0
    return disc_phase_integral(R, k, 0.0, spec).imag


def disc_cosine_closed_form(R, k):
    """(2 pi R / k) J1(k R), with the k -> 0 limit pi R^2."""
    return 2.0 * math.pi * R * R * j1_over_x(k * R)


# -- Minimization --------------------------------------------------------------


def minimize_scalar(f, bracket, tol=1e-8):
    """Bounded Brent minimization of ``f`` on ``bracket``.

    Returns ``(x_min, f_min)`` located to ``tol * (hi - lo)``. When the
    left endpoint is at least as low as the interior optimum (a flat or
    monotone-increasing function) the left endpoint is returned, so ties
    resolve to the smallest x.
    """
    lo, hi = (float(b) for b in bracket)
    if not (np.isfinite(lo) and np.isfinite(hi)) or not lo < hi:
        raise ValueError(f"invalid bracket {bracket!r}")
    if not tol > 0:
        raise ValueError("tol must be > 0")
    res = optimize.minimize_scalar(
        f, bounds=(lo, hi), method="bounded",
        options={"xatol": tol * (hi - lo) / 4.0, "maxiter": 500},
    )
    x_min, f_min = float(res.x), float(res.fun)
    f_lo = float(f(lo))
    if f_lo <= f_min:
        return lo, f_lo
    return x_min, f_min
