"""Integral transforms of the test function: kernels, the Hankel-type
transform and its Mellin transform, and the curved-contour transform."""

import mpmath as mp
import numpy as np
import pytest

from specrec.errors import DomainViolation, Pole
from specrec.transforms import (AdmissibleTestFunction, CurvedContour,
                                H_transform, K_transform, L_transform,
                                h_contour_decomposition, h_eval,
                                h_transform_residue, k_bound_constant,
                                k_mellin, k_mellin_numeric, kernel_J, q_tau)


@pytest.fixture(scope="module")
def h10():
    return AdmissibleTestFunction(T=10.0)


def test_h_even_and_positive_on_reals(h10):
    ts = np.linspace(-25, 25, 41)
    vals = h10(ts)
    assert np.allclose(vals, h10(-ts))
    assert (vals.real >= 0).all()
    assert np.abs(vals.imag).max() < 1e-20 * np.abs(vals).max()


def test_h_required_zeros(h10):
    # h(i(n - 1/2)) = 0 for |n| <= depth + 1
    sup = h10.sup_norm()
    for n in range(0, h10.depth + 2):
        assert abs(h10(1j * (n - 0.5))) < 1e-25 * sup
        assert abs(h10(-1j * (n - 0.5))) < 1e-25 * sup


def test_h_size_at_spectral_scale():
    # normalization keeps h(T) within a few orders of unity
    for T in (12.0, 50.0):
        h = AdmissibleTestFunction(T=T)
        assert 1e-3 < abs(h(T)) < 1e3


def test_h_forced_zeros_and_scale(h10):
    h = AdmissibleTestFunction(T=10.0, forced_zeros=((-0.25, 3), (-0.1, 1)),
                               scale=2.0)
    assert abs(h(0.25j)) < 1e-30 * h.sup_norm()
    assert abs(h(0.1j)) < 1e-30 * h.sup_norm()
    base = AdmissibleTestFunction(T=10.0, forced_zeros=((-0.25, 3), (-0.1, 1)))
    assert abs(h(3.0) - 2.0 * base(3.0)) < 1e-12 * abs(h(3.0))


def test_h_eval_matches_call(h10):
    assert h_eval(h10, 2.5) == complex(h10(2.5))


def test_q_tau_properties():
    ts = np.linspace(-8, 8, 17)
    for tau in (0.0, 0.8):
        vals = np.array([q_tau(tau, t) for t in ts])
        assert np.abs(np.abs(vals) - 1).max() < 1e-12
    # exponential approach to 1: |Q - 1| ~ 2 sinh(pi tau)/cosh(pi t)
    assert abs(q_tau(0.8, 6.0) - 1) < 4.2 * np.sinh(np.pi * 0.8) * np.exp(-np.pi * 6.0)
    assert q_tau(0.0, 1.3) == 1.0


def test_kernel_hol_equals_plus_at_shifted_argument():
    for k in (6, 8, 10):
        for x in np.geomspace(0.05, 20, 20):
            a = kernel_J("hol", float(x), k)
            b = kernel_J("+", float(x), (k - 1) / 2j)
            assert abs(a - b) <= 1e-9 * max(abs(a), abs(b), 1.0)


def test_kernel_minus_at_zero_order():
    for x in (0.1, 0.7, 3.0):
        a = kernel_J("-", x, 0.0)
        b = complex(4 * mp.besselk(0, 4 * mp.pi * x))
        assert abs(a - b) < 1e-12 * abs(b)


def test_kernel_validation():
    with pytest.raises(DomainViolation):
        kernel_J("-", -1.0, 1.0)
    with pytest.raises(DomainViolation):
        kernel_J("?", 1.0, 1.0)
    with pytest.raises(Pole):
        kernel_J("+", 1.0, 0.0)


def test_k_transform_stability(h10):
    # refining the tolerance barely moves the value
    for x in (0.5, 3.0, 30.0):
        a = K_transform(h10, x, tol=1e-9)
        b = K_transform(h10, x, tol=1e-11)
        assert abs(a - b) < 1e-8 * max(abs(a), abs(b))


def test_k_transform_decay(h10):
    sup = h10.sup_norm()
    near = abs(K_transform(h10, 10.0)) / sup
    far = abs(K_transform(h10, 400.0)) / sup
    assert far < 1e-3 * near
    assert abs(K_transform(h10, 10 * 10 ** (13 / 12))) / sup < 1e-6 * 10


def test_k_bound_constant_small(h10):
    assert k_bound_constant(h10, n_x=12) < 1e3


def test_k_mellin_matches_numeric_oracle(h10):
    for u in (0.5 + 0j, 1.2 + 0.8j, -0.5 + 0j):
        a = k_mellin(h10, u)
        b = k_mellin_numeric(h10, u)
        assert abs(a - b) < 1e-3 * max(abs(a), abs(b))


def test_k_mellin_near_even_line_extrapolation(h10):
    # values on the pinch line interpolate smoothly between neighbours
    v0 = k_mellin(h10, -2.0 + 0.5j)
    va = k_mellin(h10, -2.1 + 0.5j)
    vb = k_mellin(h10, -1.9 + 0.5j)
    mid = 0.5 * (va + vb)
    assert abs(v0 - mid) < 0.05 * max(abs(v0), abs(mid))


def test_l_transform_gamma_oracle():
    # Phi(u) = Gamma(a+u) pairs with x^a e^{-x} under the Mellin convention;
    # the transform then equals the direct kernel integral
    a = 1.5
    phi = lambda u: complex(mp.gamma(a + u))
    for kind, tk in (("+", 1.3), ("hol", 6)):
        lt = L_transform(kind, phi, tk)
        direct = complex(mp.quad(
            lambda x: complex(kernel_J(kind, float(x), tk))
            * x ** a * mp.e ** (-x) / x, [0, 1, 5, 30]))
        assert abs(lt - direct) < 1e-6 * max(abs(lt), 1e-6)


def test_curved_contour_cauchy():
    # for an entire decaying integrand the bent contour equals the straight
    # vertical line through its asymptotes
    contour = CurvedContour(0.5, 0.25)
    val = contour.integrate(lambda z: np.exp(z * z))
    ref = complex(mp.quad(lambda t: mp.exp((0.25 + 1j * t) ** 2) * 1j,
                          [-mp.inf, 0, mp.inf]))
    assert abs(val - ref) < 1e-8 * abs(ref)


def test_h_transform_region_guard():
    from specrec.errors import RegionViolation
    h = AdmissibleTestFunction(T=4.0)
    with pytest.raises(RegionViolation):
        H_transform(0.1, 0.1, -2.5, (1, 1), h)


def test_h_transform_contour_shift():
    h = AdmissibleTestFunction(T=4.0)
    direct, shifted = h_contour_decomposition(0.6, 0.7, -0.4, (1, 1), h)
    assert abs(direct - shifted) < 1e-6 * abs(direct)
