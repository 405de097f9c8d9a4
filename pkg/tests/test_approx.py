"""Exchange algorithm against closed forms and a grid linear program."""

import math

import numpy as np
import pytest
from scipy.optimize import linprog

from leblab import TrigPolynomial, best_trig_approx, verify_alternation

TWOPI = 2 * math.pi


def lp_grid_oracle(f, n, m=4096):
    """Minimax over a dense grid as a linear program (independent route)."""
    x = np.linspace(0.0, TWOPI, m, endpoint=False)
    fx = np.asarray(f(x))
    cols = [np.full(m, 0.5)]
    for k in range(1, n):
        cols.append(np.cos(k * x))
    for k in range(1, n):
        cols.append(np.sin(k * x))
    a = np.stack(cols, axis=1)
    nv = a.shape[1]
    cvec = np.zeros(nv + 1)
    cvec[-1] = 1.0
    ones = np.ones((m, 1))
    a_ub = np.block([[a, -ones], [-a, -ones]])
    b_ub = np.concatenate([fx, -fx])
    res = linprog(cvec, A_ub=a_ub, b_ub=b_ub,
                  bounds=[(None, None)] * nv + [(0.0, None)], method="highs")
    assert res.status == 0
    return float(res.fun)


def test_pure_harmonic():
    for n in [1, 2, 5]:
        f = lambda t: np.cos(n * np.asarray(t))
        p, e, cert = best_trig_approx(f, n)
        assert abs(e - 1.0) < 1e-10
        coeff_norm = abs(p.a0) + float(np.sum(np.abs(p.cos_coeffs)) + np.sum(np.abs(p.sin_coeffs)))
        assert coeff_norm < 1e-10
        ok, msg = verify_alternation(f, p, cert)
        assert ok, msg


def test_harmonic_plus_inspace_part():
    f = lambda t: np.cos(3 * np.asarray(t)) + 0.5 * np.cos(np.asarray(t))
    p, e, cert = best_trig_approx(f, 3)
    assert abs(e - 1.0) < 1e-10
    assert abs(p.cos_coeffs[0] - 0.5) < 1e-10
    assert abs(p.a0) < 1e-10


def test_inspace_function_zero_error():
    g = TrigPolynomial(0.4, [0.3, -1.2], [0.0, 0.7])
    p, e, _ = best_trig_approx(lambda t: g(t), 3)
    assert e < 1e-12
    x = np.linspace(0, TWOPI, 33)
    assert np.max(np.abs(p(x) - g(x))) < 1e-10


@pytest.mark.parametrize("n", [2, 4])
def test_lp_oracle_agreement(n):
    f = lambda t: np.abs(np.asarray(t) - math.pi)
    p, e, _ = best_trig_approx(f, n)
    e_lp = lp_grid_oracle(f, n)
    # the grid LP is a lower bound up to grid resolution
    assert e_lp <= e + 1e-9
    assert abs(e - e_lp) < 5e-5


def test_lp_oracle_smooth_case():
    f = lambda t: np.exp(np.cos(np.asarray(t)))
    p, e, cert = best_trig_approx(f, 3)
    e_lp = lp_grid_oracle(f, 3)
    assert abs(e - e_lp) < 1e-7
    ok, _ = verify_alternation(f, p, cert)
    assert ok


def test_scale_equivariance():
    f = lambda t: np.exp(np.cos(np.asarray(t)))
    p, e, _ = best_trig_approx(f, 3)
    for c in [-2.0, 0.5]:
        pc, ec, _ = best_trig_approx(lambda t: c * f(t), 3)
        assert abs(ec - abs(c) * e) < 1e-9 * max(1, abs(c))
        x = np.linspace(0, TWOPI, 40)
        assert np.max(np.abs(pc(x) - c * p(x))) < 1e-7 * max(1, abs(c))


def test_inspace_shift_invariance():
    f = lambda t: np.exp(np.cos(np.asarray(t)))
    q = TrigPolynomial(0.8, [0.3, -0.2], [0.1, 0.4])
    p1, e1, _ = best_trig_approx(f, 3)
    p2, e2, _ = best_trig_approx(lambda t: f(t) + q(t), 3)
    assert abs(e1 - e2) < 1e-10
    x = np.linspace(0, TWOPI, 40)
    assert np.max(np.abs(p2(x) - (p1(x) + q(x)))) < 1e-8


def test_perturbed_certificate_fails():
    f = lambda t: np.cos(4 * np.asarray(t))
    p, e, cert = best_trig_approx(f, 4)
    cert.points[2] += math.pi / 32.0
    ok, msg = verify_alternation(f, p, cert)
    assert not ok


def test_duality_sandwich():
    f = lambda t: np.abs(np.asarray(t) - math.pi)
    p, e, cert = best_trig_approx(f, 4)
    assert cert.leveled_error <= e <= cert.max_error + 1e-15
    assert (cert.max_error - cert.leveled_error) / cert.max_error < 1e-8
