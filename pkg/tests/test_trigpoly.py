"""Trigonometric polynomial arithmetic and the partial-sum projection."""

import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from leblab import TrigPolynomial, partial_sum

coeff_lists = st.lists(st.floats(-5, 5), min_size=1, max_size=8)


def test_evaluation_matches_manual():
    p = TrigPolynomial(2.0, [1.0, 0.0, -0.5], [0.0, 2.0, 0.0])
    x = 0.37
    ref = 1.0 + math.cos(x) - 0.5 * math.cos(3 * x) + 2.0 * math.sin(2 * x)
    assert abs(p(x) - ref) < 1e-14


def test_degree_ignores_trailing_zeros():
    p = TrigPolynomial(1.0, [0.0, 3.0, 0.0], [0.0, 0.0, 0.0])
    assert p.degree == 2
    assert TrigPolynomial(5.0).degree == 0


@given(coeff_lists, st.integers(1, 10))
@settings(max_examples=60, deadline=None)
def test_partial_sum_idempotent(coeffs, n):
    f = TrigPolynomial(0.3, coeffs, coeffs[::-1])
    once = partial_sum(f, n)
    twice = partial_sum(once, n)
    assert once.a0 == twice.a0
    assert np.array_equal(once.cos_coeffs, twice.cos_coeffs)
    assert np.array_equal(once.sin_coeffs, twice.sin_coeffs)


def test_partial_sum_identity_when_degree_small():
    f = TrigPolynomial(1.0, [1.0, 2.0], [0.5, 0.0])
    g = partial_sum(f, 10)
    x = np.linspace(0, 2 * math.pi, 17)
    assert np.max(np.abs(f(x) - g(x))) < 1e-15


def test_partial_sum_n1_is_constant():
    f = TrigPolynomial(3.0, [1.0, 2.0], [0.5, -1.0])
    g = partial_sum(f, 1)
    assert g.degree == 0
    assert g(0.1) == 1.5


def test_shift_translates_values(rng):
    f = TrigPolynomial(0.2, [1.0, -0.7, 0.3], [0.4, 0.0, -1.1])
    tau = 1.234
    xs = rng.uniform(0, 2 * math.pi, 32)
    g = f.shifted(tau)
    assert np.max(np.abs(g(xs) - f(xs - tau))) < 1e-13
