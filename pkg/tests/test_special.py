"""Special-function layer: Hurwitz/periodic zeta, Dirichlet L, Bessel kernels,
gamma-factor products."""

import mpmath as mp
import numpy as np
import pytest

from specrec.charkit import primitive_characters, trivial_character
from specrec.errors import DomainViolation, Pole
from specrec.special import (DEFAULT, FAST, GammaFactorSpec, bessel_kernels,
                             besselk_imag_order, dirichlet_l, g_pm,
                             gamma_factor, hurwitz_vector, hurwitz_zeta,
                             hurwitz_zeta_deflated, log_gamma, periodic_zeta,
                             riemann_zeta, script_g, tt_g)


def test_log_gamma_and_pole():
    assert abs(log_gamma(5.0 + 0j) - np.log(24.0)) < 1e-12
    with pytest.raises(Pole):
        log_gamma(-2.0 + 0j)


def test_hurwitz_basic():
    # zeta(2, 1) = pi^2/6
    assert abs(hurwitz_zeta(2.0 + 0j, 1.0) - np.pi ** 2 / 6) < 1e-12
    # zeta(v, 1/2) = (2^v - 1) zeta(v)
    v = 1.7 + 0.3j
    lhs = hurwitz_zeta(v, 0.5)
    rhs = (2 ** v - 1) * riemann_zeta(v)
    assert abs(lhs - rhs) < 1e-12 * abs(rhs)
    with pytest.raises(Pole):
        hurwitz_zeta(1.0 + 0j, 0.5)
    with pytest.raises(DomainViolation):
        hurwitz_zeta(2.0 + 0j, 1.5)


def test_hurwitz_deflated_is_minus_digamma():
    assert abs(hurwitz_zeta_deflated(1.0) - float(mp.euler)) < 1e-12


def test_hurwitz_vector_matches_scalar():
    v = 0.3 - 1.2j
    zs = hurwitz_vector(v, 7)
    for g in range(1, 8):
        assert abs(zs[g - 1] - hurwitz_zeta(v, g / 7)) < 1e-11


def test_hurwitz_vector_distribution():
    # sum_{g=1}^m zeta(v, g/m) = m^v zeta(v)
    v = -0.5 + 2j
    m = 6
    lhs = hurwitz_vector(v, m).sum()
    rhs = m ** v * riemann_zeta(v)
    assert abs(lhs - rhs) < 1e-11 * abs(rhs)


def test_periodic_zeta_convergent_region():
    # compare against the direct sum at Re v = 2
    v, a, m = 2.0 + 0j, 1, 4
    direct = sum(np.exp(2j * np.pi * c * a / m) * c ** (-v)
                 for c in range(1, 200000))
    assert abs(periodic_zeta(v, a, m) - direct) < 1e-9


def test_dirichlet_l_euler_product():
    from sympy import primerange
    chi = primitive_characters(5)[0]
    s = 2.5 + 0j
    prod = 1.0 + 0j
    for p in primerange(2, 20000):
        prod /= (1 - chi(p) * p ** (-s))
    assert abs(dirichlet_l(s, chi) - prod) < 1e-9
    with pytest.raises(Pole):
        dirichlet_l(1.0 + 0j, trivial_character(5))


def test_dirichlet_l_at_one_nontrivial():
    # L(1, chi_{-4}) = pi/4 for the odd character mod 4
    from specrec.charkit import enumerate_characters
    chi = [c for c in enumerate_characters(4) if not c.is_trivial][0]
    assert abs(dirichlet_l(1.0 + 0j, chi) - np.pi / 4) < 1e-12


def test_besselk_imag_order_vs_mpmath():
    # K_{2it}(y) for moderate t agrees with direct mpmath evaluation
    for t, y in [(0.5, 1.0), (1.0, 3.0), (0.0, 2.0)]:
        ours = besselk_imag_order(t, y)
        ref = complex(mp.besselk(2j * t, y))
        assert abs(ours - ref) < 1e-12 * max(1.0, abs(ref))


def test_bessel_kernels_real_and_imag_order():
    rec = bessel_kernels(2.0, 1.0)
    assert abs(rec["J"] - complex(mp.besselj(1, 2.0))) < 1e-12
    rec = bessel_kernels(1.5, 2j)
    assert abs(rec["K"] - complex(mp.besselk(2j, 1.5))) < 1e-10
    with pytest.raises(DomainViolation):
        bessel_kernels(-1.0, 1.0)


def test_g_pm_reflection():
    # G^+(s) G^-(1-s) = (2 pi)^-1 by the gamma reflection formula:
    # Gamma(s)Gamma(1-s) e^{i pi s/2} e^{-i pi (1-s)/2} / (2pi) ... check numerically
    s = 0.3 + 0.7j
    val = g_pm(s, 1) * g_pm(1 - s, -1)
    ref = complex(mp.gamma(s) * mp.gamma(1 - s)
                  * mp.exp(1j * mp.pi * s / 2 - 1j * mp.pi * (1 - s) / 2)) / (2 * np.pi)
    assert abs(val - ref) < 1e-12 * abs(ref)


def test_script_g_mu_zero_matches_cube_structure():
    s = 0.8 + 0.2j
    val = script_g(s, (0, 0, 0), 1)
    ref = complex(4 * (2 * mp.pi) ** (-3 * s)
                  * mp.gamma(s) ** 3 * (mp.cos(mp.pi * s / 2) ** 3
                                        + mp.sin(mp.pi * s / 2) ** 3 / 1j))
    assert abs(val - ref) < 1e-12 * abs(ref)
    with pytest.raises(DomainViolation):
        script_g(s, (0.1, 0.0, 0.0), 1)


def test_tt_g_symmetry():
    s, t = 1.1 + 0.4j, 0.9
    for eps in (1, -1):
        assert abs(tt_g(eps, s, t) - tt_g(eps, s, -t)) < 1e-12
    with pytest.raises(DomainViolation):
        tt_g(0, s, t)


def test_gamma_factor_dispatch():
    s = 0.6 + 0.1j
    assert gamma_factor(GammaFactorSpec("G", 1), s) == g_pm(s, 1)
    assert gamma_factor(GammaFactorSpec("scriptG", -1), s) == script_g(s, (0, 0, 0), -1)
    assert gamma_factor(GammaFactorSpec("ttG", 1), s, aux=0.5) == tt_g(1, s, 0.5)
    with pytest.raises(DomainViolation):
        gamma_factor(GammaFactorSpec("ttG", 1), s)


def test_precision_contracts():
    with pytest.raises(ValueError):
        from specrec.special import PrecisionContract
        PrecisionContract(working_digits=10)
    v = hurwitz_zeta(2.0 + 0j, 0.25, FAST)
    w = hurwitz_zeta(2.0 + 0j, 0.25, DEFAULT)
    assert abs(v - w) < 1e-12 * abs(w)
