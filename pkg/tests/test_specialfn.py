import math

import mpmath as mp
import numpy as np
import pytest

from nehbt.specialfn import (
    QuadratureError,
    QuadratureSpec,
    bessel_j1,
    bessel_j1_first_zero,
    disc_cosine_closed_form,
    disc_cosine_integral,
    disc_phase_integral,
    disc_sine_integral,
    j1_over_x,
    minimize_scalar,
)

U1 = 3.8317059702


def series_oracle(x, dps=60):
    """J1 from its power series in high-precision arithmetic, summed to convergence."""
    with mp.workdps(dps):
        x = mp.mpf(x)
        half = x / 2
        term = half
        total = term
        k = 0
        while True:
            k += 1
            term = -term * half * half / (k * (k + 1))
            total += term
            if abs(term) < mp.mpf(10) ** (-dps + 5) * max(1, abs(total)):
                break
        return float(total)


def test_known_values():
    assert bessel_j1(0.0) == 0.0
    assert bessel_j1(1.0) == pytest.approx(0.4400505857449335, abs=1e-15)
    assert abs(bessel_j1(U1)) < 1e-10


def test_against_series_oracle_random_points():
    rng = np.random.default_rng(1)
    xs = rng.uniform(0.0, 50.0, 1000)
    ours = bessel_j1(xs)
    ref = np.array([series_oracle(x, dps=80) for x in xs])
    assert np.max(np.abs(ours - ref)) < 1e-12


def test_branch_edges_continuous():
    for edge in (8.0, 25.0):
        xs = np.array([edge - 1e-9, edge, edge + 1e-9])
        ref = np.array([series_oracle(x, dps=60) for x in xs])
        assert np.max(np.abs(bessel_j1(xs) - ref)) < 1e-13


def test_large_argument_and_odd_symmetry():
    for x in (60.0, 123.4, 500.0):
        assert bessel_j1(x) == pytest.approx(float(mp.besselj(1, x)), abs=1e-13)
    xs = np.linspace(0.1, 40.0, 50)
    assert np.array_equal(bessel_j1(-xs), -bessel_j1(xs))


def test_rejects_non_finite():
    with pytest.raises(ValueError):
        bessel_j1(math.nan)
    with pytest.raises(ValueError):
        bessel_j1(np.array([1.0, math.inf]))


def test_j1_over_x_small_argument():
    assert j1_over_x(0.0) == 0.5
    assert j1_over_x(1e-8) == pytest.approx(0.5, rel=1e-15)
    assert j1_over_x(2.0) == pytest.approx(bessel_j1(2.0) / 2.0, rel=1e-15)


def test_first_zero():
    u1 = bessel_j1_first_zero()
    assert 3.0 < u1 < 4.0
    assert abs(bessel_j1(u1)) < 1e-10
    # Brent on the series oracle, independent of the production routine
    with mp.workdps(30):
        ref = mp.findroot(lambda t: mp.mpf(series_oracle(t, 30)), 3.83)
    assert u1 == pytest.approx(float(ref), abs=1e-10)
    assert u1 == pytest.approx(U1, abs=1e-10)


def test_disc_cosine_limits():
    assert disc_cosine_integral(1.3, 0.0) == pytest.approx(math.pi * 1.3**2, rel=1e-12)
    assert abs(disc_cosine_integral(1.0, U1)) < 1e-8
    assert disc_cosine_integral(1.0, 1.0) == pytest.approx(2 * math.pi * series_oracle(1.0), abs=1e-10)
    assert disc_cosine_integral(1.0, 1.0) == pytest.approx(2.7649, abs=1e-4)


def test_disc_sine_vanishes():
    assert disc_sine_integral(1.0, 0.0) == 0.0
    assert abs(disc_sine_integral(2.0, 5.0)) < 1e-8
    rng = np.random.default_rng(7)
    for R, k in zip(rng.uniform(0.1, 5, 20), rng.uniform(0, 10, 20)):
        assert abs(disc_sine_integral(R, k)) < 1e-8 * R * R


def test_quadrature_matches_closed_form_random_pairs():
    rng = np.random.default_rng(3)
    for _ in range(100):
        R = rng.uniform(0.1, 3.0)
        k = rng.uniform(0.0, 20.0)
        num = disc_cosine_integral(R, k)
        assert abs(num - disc_cosine_closed_form(R, k)) < 1e-8 * math.pi * R * R


def test_phase_integral_offset_is_pure_phase():
    R, k, off = 1.5, 2.2, 7.0
    shifted = disc_phase_integral(R, k, off)
    assert shifted == pytest.approx(np.exp(1j * k * off) * disc_cosine_closed_form(R, k), abs=1e-9)


def test_quadrature_error_when_budget_too_small():
    spec = QuadratureSpec(radial_nodes=8, angular_nodes=16, target_abs_tol=1e-15, max_refinements=0)
    with pytest.raises(QuadratureError):
        disc_cosine_integral(1.0, 200.0, spec)


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(radial_nodes=4)
    with pytest.raises(ValueError):
        QuadratureSpec(target_abs_tol=0.0)


def test_minimize_scalar():
    x, fx = minimize_scalar(lambda t: (t - 1.0) ** 2, (0.0, 2.0))
    assert x == pytest.approx(1.0, abs=1e-7) and fx < 1e-14
    x, _ = minimize_scalar(math.cos, (2.0, 4.0))
    assert x == pytest.approx(math.pi, abs=1e-7)
    # quadratic minimum: location only resolvable to ~sqrt(eps)
    x, _ = minimize_scalar(lambda t: bessel_j1(t) ** 2, (3.0, 4.0))
    assert x == pytest.approx(bessel_j1_first_zero(), abs=1e-6)


def test_minimize_scalar_ties_and_errors():
    x, fx = minimize_scalar(lambda t: 1.0, (0.0, 5.0))
    assert x == 0.0 and fx == 1.0
    x, _ = minimize_scalar(lambda t: t, (2.0, 3.0))
    assert x == 2.0
    with pytest.raises(ValueError):
        minimize_scalar(lambda t: t, (3.0, 2.0))
