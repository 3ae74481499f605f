"""Kloosterman and Gauss sum identities."""

from math import gcd, sqrt

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from specrec.charkit import primitive_characters, quadratic_character
from specrec.errors import ModulusMismatch
from specrec.expsums import (gauss_sum, kloosterman, kloosterman_matrix,
                             selberg_rhs, twisted_kloosterman)


def test_small_values():
    # S(1,1,2) = e((1+1)/2) = e(1) = 1
    assert abs(kloosterman(1, 1, 2) - 1.0) < 1e-12
    # S(1,1,3): d=1,2 -> e(2/3) + e((2+2)/3) = 2 cos(2 pi / 3)
    assert abs(kloosterman(1, 1, 3) - 2 * np.cos(2 * np.pi / 3)) < 1e-12
    assert kloosterman(5, 3, 1) == 1.0


@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(1, 40))
@settings(max_examples=200, deadline=None)
def test_symmetry_and_reality(m, n, c):
    s = kloosterman(m, n, c)
    assert abs(s - kloosterman(n, m, c)) < 1e-10
    assert abs(s.imag) < 1e-10  # pairing d with -d makes the sum real


@given(st.integers(1, 12), st.integers(1, 12))
@settings(max_examples=60, deadline=None)
def test_weil_bound_heuristic(m, c):
    from sympy import divisor_count
    s = abs(kloosterman(m, 1, c))
    assert s <= divisor_count(c) * sqrt(c * gcd(m, c)) + 1e-9


def test_matrix_matches_scalar():
    c = 12
    a = np.array([0, 1, 5, 7])
    b = np.array([1, 2, 11])
    M = kloosterman_matrix(c, a, b)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            assert abs(M[i, j] - kloosterman(int(ai), int(bj), c)) < 1e-10


@pytest.mark.parametrize("c", range(1, 41))
def test_selberg_identity(c):
    for a in range(1, c + 1):
        for b in range(1, c + 1):
            assert abs(kloosterman(a, b, c) - selberg_rhs(a, b, c)) < 1e-10


def test_gauss_sum_magnitude_and_legendre():
    for q in (5, 7, 13):
        for chi in primitive_characters(q):
            assert abs(abs(gauss_sum(chi)) - sqrt(q)) < 1e-10
    # quadratic character mod 5: tau = sqrt(5) exactly (q = 1 mod 4)
    assert abs(gauss_sum(quadratic_character(5)) - sqrt(5)) < 1e-12


def test_twisted_requires_divisibility():
    chi = primitive_characters(5)[0]
    with pytest.raises(ModulusMismatch):
        twisted_kloosterman(1, 1, 7, chi)


def test_twisted_vanishing_at_q_squared():
    for q in (5, 7):
        chi = primitive_characters(q)[0]
        for k in (1, 2):
            c = q * q * k
            worst = max(abs(twisted_kloosterman(r, n2 * q, c, chi))
                        for r in (1, 3) for n2 in range(c))
            assert worst < 1e-9 * c


def test_twisted_multiplicativity():
    # S_chi(-r, n2 q, q c) = tau(chi) chi(-1) conj(chi)(r) chi(c) S(-r qbar, n2, c)
    from specrec.charkit import inv_mod
    for q in (5, 7):
        chi = primitive_characters(q)[0]
        tau = gauss_sum(chi)
        for c in (2, 3, 9, 11):
            qbar = inv_mod(q % c, c) if c > 1 else 0
            for r in (1, 2):
                for n2 in (1, c - 1):
                    lhs = twisted_kloosterman(-r, n2 * q, q * c, chi)
                    rhs = (tau * chi(-1) * np.conj(chi(r)) * chi(c)
                           * kloosterman((-r * qbar) % c, n2, c))
                    assert abs(lhs - rhs) < 1e-9 * q * c
