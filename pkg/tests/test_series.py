"""Coefficient series machinery: eigenvalues, region guards, the divisor
bijection, theta-weighted sums, and the residue/main polar terms."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from specrec.charkit import primitive_characters
from specrec.errors import (GcdViolation, PoleCollision, RegionViolation)
from specrec.series import (REGION_DUAL_THETA, REGION_PRIMARY, REGION_THETA,
                            ab_functional_equation_residual, big_lambda,
                            bijection_forward, bijection_inverse,
                            contour_derivative, contour_residue, eval_A,
                            eval_B, eval_D, eval_E, lambda_eis,
                            lambda_eis_bar, main_P, polar_R,
                            residue_coefficients, residue_series_value)


@pytest.fixture(scope="module")
def chi5():
    return primitive_characters(5)[0]


def test_lambda_eis_multiplicative(chi5):
    t = 0.7
    for m, n in [(2, 3), (4, 9), (3, 7)]:
        a = lambda_eis("inf", t, m, chi5) * lambda_eis("inf", t, n, chi5)
        b = lambda_eis("inf", t, m * n, chi5)
        assert abs(a - b) < 1e-12


def test_lambda_eis_hecke_at_prime(chi5):
    # lambda(p)^2 = chi(p) + lambda(p^2) for the Eisenstein eigenvalues
    t = 1.3
    for p in (2, 3, 7):
        lp = lambda_eis("inf", t, p, chi5)
        lp2 = lambda_eis("inf", t, p * p, chi5)
        assert abs(lp * lp - complex(chi5(p)) - lp2) < 1e-12


def test_lambda_eis_scaling_by_modulus(chi5):
    # lambda(n q) = q^{-it} lambda(n): only a = divisors coprime to q survive
    t = 0.9
    q = 5
    for n in (1, 2, 6):
        lhs = lambda_eis("inf", t, n * q, chi5)
        rhs = q ** (-1j * t) * lambda_eis("inf", t, n, chi5)
        assert abs(lhs - rhs) < 1e-12


def test_lambda_eis_bar_continuation(chi5):
    # at real t, lambda_eis_bar is the literal conjugate
    t = 0.45
    for n in (4, 6):
        assert abs(lambda_eis_bar("inf", t, n, chi5)
                   - np.conj(lambda_eis("inf", t, n, chi5))) < 1e-12


def test_big_lambda_moebius_inversion(chi5):
    # big_lambda inverts the divisor structure: for ell = p prime,
    # Lambda(p) = lam(p) - chi(p) p^-w lam(1)
    w = 1.1 + 0.3j
    lam = lambda n: lambda_eis("inf", 0.8, n, chi5)
    for p in (2, 3):
        val = big_lambda(p, w, lam, chi5)
        ref = lam(p) - complex(chi5(p)) * p ** (-w) * lam(1)
        assert abs(val - ref) < 1e-12
    with pytest.raises(GcdViolation):
        big_lambda(5, w, lam, chi5)


def test_region_specs():
    assert REGION_PRIMARY.contains(1.8, -0.8, 1.6)
    assert not REGION_PRIMARY.contains(1.8, 0.0, 1.6)
    with pytest.raises(RegionViolation):
        REGION_PRIMARY.check(0.5, -0.8, 0.5)
    assert REGION_THETA.contains(0.4, -1.2, 2.6)
    assert REGION_DUAL_THETA.contains(0.4, -1.2, 2.6)


@given(st.integers(1, 30), st.integers(1, 30), st.integers(1, 30),
       st.integers(1, 30))
@settings(max_examples=200, deadline=None)
def test_bijection_roundtrip(m, c, d, n1):
    from math import gcd
    if gcd(c, d) != 1 or (c * m) % n1 != 0:
        return
    r, C = bijection_forward(m, c, d, n1)
    assert bijection_inverse(n1, C, r) == (m, c, d)


def test_bijection_validation():
    with pytest.raises(GcdViolation):
        bijection_forward(1, 4, 2, 1)
    with pytest.raises(GcdViolation):
        bijection_forward(1, 4, 3, 3)


def test_eval_e_equals_eval_d(chi5):
    s, u, w = 1.8, -0.8, 1.6
    for ell in (1, 2):
        e = eval_E(5, ell, s, u, w, chi5, K=60)
        d = eval_D(5, ell, s, u, w, chi5, K=60)
        assert abs(e - d) < 1e-12 * abs(e)


def test_eval_e_region_guard(chi5):
    with pytest.raises(RegionViolation):
        eval_E(5, 1, 0.5, -0.8, 0.5, chi5, K=10)


def test_ab_functional_equation(chi5):
    s, u, w = 0.4, -1.2, 2.6
    avec, bvec = ab_functional_equation_residual(1, s, u, w, chi5, K=40)
    err = np.abs(avec - bvec).max()
    assert err < 1e-3 * np.abs(avec).max()


def test_contour_residue_and_derivative():
    f = lambda z: np.exp(z) / (z - 0.5)
    assert abs(contour_residue(f, 0.5) - np.exp(0.5)) < 1e-10
    g = lambda z: np.exp(2 * z)
    for order in (0, 1, 2):
        ref = 2 ** order * np.exp(2 * 0.3)
        assert abs(contour_derivative(g, 0.3, order) - ref) < 1e-9


def test_residue_series_euler_acceleration_converges(chi5):
    mu = (0.01, -0.004, -0.006)
    a = residue_series_value(1.6, 2.2, mu, chi5, 1, pmax=2 * 10 ** 4)
    b = residue_series_value(1.6, 2.2, mu, chi5, 1, pmax=10 ** 5)
    assert abs(a - b) < 1e-8 * abs(b)


def test_residue_coefficients_stability(chi5):
    r1 = residue_coefficients(5, 1, 1.6, 2.2, chi5, hstep=1e-2)
    r2 = residue_coefficients(5, 1, 1.6, 2.2, chi5, hstep=5e-3)
    for a, b in zip(r1, r2):
        assert abs(a - b) < 1e-4 * max(1.0, abs(a))


def test_polar_r_guards(chi5):
    from specrec.transforms import AdmissibleTestFunction
    h = AdmissibleTestFunction(T=10.0)
    with pytest.raises(RegionViolation):
        polar_R(5, 1, 2.2, 1.6, chi5, h)
    with pytest.raises(PoleCollision):
        polar_R(5, 1, 0.9, 0.9 + 1e-5, chi5, h)


def test_polar_r_forced_zeros_vanish(chi5):
    from specrec.transforms import AdmissibleTestFunction
    s, w = 0.75, 0.9
    hz = AdmissibleTestFunction(T=10.0, forced_zeros=((s - 1.0, 3), (w - 1.0, 1)))
    hg = AdmissibleTestFunction(T=10.0)
    scale = 1.0 / abs(hg(1j * (s - 1)))
    vz = polar_R(5, 1, s, w, chi5, AdmissibleTestFunction(
        T=10.0, forced_zeros=hz.forced_zeros, scale=scale))
    vg = polar_R(5, 1, s, w, chi5, AdmissibleTestFunction(T=10.0, scale=scale))
    assert abs(vz) < 1e-8
    assert abs(vg) > 1e-6


def test_main_p_finite(chi5):
    from specrec.transforms import AdmissibleTestFunction
    h = AdmissibleTestFunction(T=10.0, scale=1e-40)
    val = main_P(5, 1, 0.75, 0.9, chi5, h)
    assert np.isfinite([val.real, val.imag]).all()
    assert abs(val) > 0
