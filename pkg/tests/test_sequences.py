"""Absolute-monotonicity finite differences against mpmath."""

import math

import mpmath
import pytest

from leblab import KernelParams, PrecisionLoss, check_abs_monotone, finite_difference

mpmath.mp.dps = 60


def mp_difference(alpha, r, m, k):
    return float(
        mpmath.fsum(
            mpmath.binomial(m, v) * (-1) ** (m + v) * mpmath.exp(-alpha * mpmath.mpf(k + v) ** mpmath.mpf(r))
            for v in range(m + 1)
        )
    )


def test_zeroth_difference_is_term(cheap_params):
    got = finite_difference(cheap_params, 0, 7)
    assert got == pytest.approx(math.exp(-(7**0.5)), rel=1e-15)


def test_first_difference_negative():
    p = KernelParams(1.0, 0.5)
    for k in [1, 5, 50]:
        assert finite_difference(p, 1, k) < 0


@pytest.mark.parametrize("m,k", [(3, 2), (6, 20), (9, 64), (12, 100)])
def test_against_mpmath(m, k):
    p = KernelParams(1.0, 0.5)
    got = finite_difference(p, m, k)
    ref = mp_difference(1.0, 0.5, m, k)
    assert got == pytest.approx(ref, rel=1e-9)


def test_pascal_identity_cross_path():
    # Delta^m a_k = Delta^(m-1) a_(k+1) - Delta^(m-1) a_k: the direct
    # binomial route on both sides must agree to 1e-8 relative
    p = KernelParams(2.0, 0.7)
    for m, k in [(4, 3), (8, 11), (12, 40)]:
        lhs = finite_difference(p, m, k)
        rhs = finite_difference(p, m - 1, k + 1) - finite_difference(p, m - 1, k)
        assert rhs == pytest.approx(lhs, rel=1e-8)


def test_alternating_signs_window():
    p = KernelParams(1.0, 0.5)
    for m in range(0, 13, 3):
        for k in [1, 10, 100]:
            assert (-1) ** m * finite_difference(p, m, k) > 0


def test_certificate_easy_params():
    cert = check_abs_monotone(KernelParams(0.01, 0.9), 8, 50)
    assert cert.passed
    assert cert.limit_zero_ok and cert.summable_ok
    assert cert.min_signed_difference > 0


def test_certificate_trivial_m0():
    cert = check_abs_monotone(KernelParams(3.0, 0.3), 0, 20)
    assert cert.passed


def test_precision_loss_detected():
    # order 30 at slow decay: the signal sits far below the noise floor
    with pytest.raises(PrecisionLoss):
        check_abs_monotone(KernelParams(0.01, 0.9), 30, 50)


def test_criterion_scale_runs():
    cert = check_abs_monotone(KernelParams(1.0, 0.5), 12, 200)
    assert cert.passed and cert.min_signed_difference > 0
