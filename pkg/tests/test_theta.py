"""Theta series: continuation against direct sums, batching, and the 2x2
functional equation."""

import numpy as np
import pytest

from specrec.charkit import primitive_characters
from specrec.errors import GcdViolation
from specrec.theta import (ThetaArgs, theta_q, theta_q_batch, theta_q_direct,
                           theta_residue_weight_sum, theta_tilde,
                           theta_tilde_batch, theta_tilde_direct,
                           verify_theta_functional_equation)


@pytest.fixture(scope="module")
def chi5():
    return primitive_characters(5)[0]


@pytest.fixture(scope="module")
def chi7():
    return primitive_characters(7)[0]


def test_args_validation(chi5):
    with pytest.raises(ValueError):
        ThetaArgs(0, 3, 2.0, chi5)
    with pytest.raises(GcdViolation):
        ThetaArgs(1, 10, 2.0, chi5)


def test_continuation_matches_direct_sum(chi5, chi7):
    for chi in (chi5, chi7):
        for d in (1, 3):
            for n in (1, -2):
                args = ThetaArgs(n, d, 2.5 + 0.5j, chi)
                cont = theta_q(args)
                direct = theta_q_direct(args, 300000)
                assert abs(cont - direct) < 1e-8 * max(1.0, abs(cont))


def test_tilde_continuation_matches_direct_sum(chi5):
    for d in (2, 3):
        args = ThetaArgs(1, d, 2.5 + 0j, chi5)
        cont = theta_tilde(args)
        direct = theta_tilde_direct(args, 300000)
        assert abs(cont - direct) < 1e-7 * max(1.0, abs(cont))


def test_batch_matches_scalar(chi5):
    ns = np.array([1, -1, 2, 5, -6])
    v = 0.4 - 1.1j
    d = 3
    bq = theta_q_batch(ns, d, v, chi5)
    bt = theta_tilde_batch(ns, d, v, chi5)
    for i, n in enumerate(ns):
        assert abs(bq[i] - theta_q(ThetaArgs(int(n), d, v, chi5))) < 1e-10
        assert abs(bt[i] - theta_tilde(ThetaArgs(int(n), d, v, chi5))) < 1e-10


def test_value_at_one_is_removable(chi5):
    # v=1 is a removable point for nontrivial chi (the residue weights sum to 0)
    val = theta_q(ThetaArgs(1, 3, 1.0, chi5))
    near = theta_q(ThetaArgs(1, 3, 1.0 + 1e-6, chi5))
    assert abs(val - near) < 1e-4 * max(1.0, abs(val))


def test_residue_weight_sum_vanishes(chi5, chi7):
    for chi in (chi5, chi7):
        for d in (1, 2, 3):
            for n in (1, -1, 4):
                assert abs(theta_residue_weight_sum(n, d, chi)) < 1e-9


@pytest.mark.parametrize("v", [2.0, 1.5, 0.5, 0.5 + 4j, -0.5, 0.9, 1.1])
def test_functional_equation_spot(v, chi5):
    rep = verify_theta_functional_equation(ThetaArgs(1, 3, complex(v), chi5))
    assert rep.status == "pass"


def test_functional_equation_odd_character():
    # an odd primitive character exercises the chi(-1) off-diagonal signs
    odd = [c for c in primitive_characters(5) if abs(c(-1) + 1) < 1e-12][0]
    for v in (1.5, 0.5, 2 + 7j):
        rep = verify_theta_functional_equation(ThetaArgs(2, 3, complex(v), odd))
        assert rep.status == "pass"
