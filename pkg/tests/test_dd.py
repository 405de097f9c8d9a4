"""Double-double arithmetic against mpmath."""

import math

import mpmath
from hypothesis import given, settings
from hypothesis import strategies as st

from leblab import _dd as dd

mpmath.mp.dps = 50


def _as_mp(x):
    return mpmath.mpf(x[0]) + mpmath.mpf(x[1])


@given(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3))
@settings(max_examples=200, deadline=None)
def test_two_sum_exact(a, b):
    s, e = dd.two_sum(a, b)
    assert mpmath.mpf(s) + mpmath.mpf(e) == mpmath.mpf(a) + mpmath.mpf(b)


@given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
@settings(max_examples=200, deadline=None)
def test_two_prod_exact(a, b):
    p, e = dd.two_prod(a, b)
    assert mpmath.mpf(p) + mpmath.mpf(e) == mpmath.mpf(a) * mpmath.mpf(b)


@given(st.floats(1e-3, 1e6))
@settings(max_examples=100, deadline=None)
def test_dd_ln(a):
    got = _as_mp(dd.dd_ln(a))
    assert abs(got - mpmath.ln(mpmath.mpf(a))) < mpmath.mpf("1e-30") * (1 + abs(got))


@given(st.floats(-700.0, 10.0))
@settings(max_examples=100, deadline=None)
def test_dd_exp(x):
    got = _as_mp(dd.dd_exp(dd.from_float(x)))
    ref = mpmath.exp(mpmath.mpf(x))
    assert abs(got - ref) < mpmath.mpf("1e-29") * ref + mpmath.mpf("1e-320")


@given(st.integers(1, 10**6), st.floats(0.05, 0.95))
@settings(max_examples=100, deadline=None)
def test_dd_pow(k, r):
    got = _as_mp(dd.dd_pow(float(k), r))
    ref = mpmath.mpf(k) ** mpmath.mpf(r)
    assert abs(got - ref) < mpmath.mpf("1e-29") * ref


def test_division_by_small_integers():
    x = dd.dd_div_d((1.0, 0.0), 3.0)
    assert abs(_as_mp(x) - mpmath.mpf(1) / 3) < mpmath.mpf("1e-32")


def test_constants():
    assert abs(_as_mp(dd.LN2) - mpmath.ln(2)) < mpmath.mpf("1e-32")
    assert abs(_as_mp(dd.TWOPI) - 2 * mpmath.pi) < mpmath.mpf("1e-31")
