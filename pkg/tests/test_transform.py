"""Poisson image, deviation, and the convolution-quadrature cross route."""

import math

import numpy as np
import pytest

from leblab import (
    KernelParams,
    TrigPolynomial,
    convolve_quadrature,
    deviation_rho,
    l1_norm_tail_kernel,
    best_trig_approx,
    partial_sum,
    poisson_integral,
)
from leblab.trigpoly import random_trig_polynomial

TWOPI = 2 * math.pi


def test_single_harmonic_image():
    p = KernelParams(1.0, 0.5, 0.3)
    phi = TrigPolynomial(0.0, [0.0, 0.0, 0.0, 1.0], [0.0] * 4)  # cos 4t
    pair = poisson_integral(p, phi)
    xs = np.linspace(0, TWOPI, 16, endpoint=False)
    expected = math.exp(-2.0) * np.cos(4 * xs - 0.3 * math.pi / 2)
    assert np.max(np.abs(pair.f_coeffs(xs) - expected)) < 1e-14
    assert pair.f_coeffs.degree == phi.degree


def test_image_matches_convolution_probe(rng):
    p = KernelParams(1.0, 0.5, 0.7)
    phi = random_trig_polynomial(rng, 5)
    pair = poisson_integral(p, phi)
    xs = rng.uniform(0, TWOPI, 16)
    for x in xs[:4]:
        # direct convolution against the full kernel (tail from 1)
        conv = convolve_quadrature(p, 1, lambda t: phi(t), x, tol=1e-9)
        spectral = pair.f_coeffs(x) - 0.5 * pair.f_coeffs.a0
        assert abs(conv - spectral) < 1e-8


def test_beta_zero_is_pure_scaling(rng):
    p = KernelParams(2.0, 0.7, 0.0)
    phi = random_trig_polynomial(rng, 6)
    pair = poisson_integral(p, phi)
    w = p.psi(np.arange(1.0, 7.0))
    assert np.max(np.abs(pair.f_coeffs.cos_coeffs - w * phi.cos_coeffs)) < 1e-15
    assert np.max(np.abs(pair.f_coeffs.sin_coeffs - w * phi.sin_coeffs)) < 1e-15


def test_zero_input():
    p = KernelParams(1.0, 0.5, 0.2)
    phi = TrigPolynomial(1.4)
    pair = poisson_integral(p, phi)
    assert pair.f_coeffs(0.3) == pytest.approx(0.7)


def test_rho_vanishes_below_degree(rng):
    p = KernelParams(1.0, 0.5, 0.9)
    phi = random_trig_polynomial(rng, 4)
    xs = rng.uniform(0, TWOPI, 8)
    assert np.max(np.abs(deviation_rho(p, phi, 5, xs))) < 1e-15


def test_rho_single_harmonic():
    p = KernelParams(1.0, 0.5, 0.4)
    m, n = 6, 3
    phi = TrigPolynomial(0.0, [0.0] * 5 + [1.0], [0.0] * 6)
    xs = np.linspace(0, TWOPI, 7)
    expected = math.exp(-math.sqrt(6.0)) * np.cos(m * xs - 0.4 * math.pi / 2)
    assert np.max(np.abs(deviation_rho(p, phi, n, xs) - expected)) < 1e-14


def test_rho_linear_in_phi(rng):
    p = KernelParams(0.7, 0.6, 1.3)
    f1 = random_trig_polynomial(rng, 7)
    f2 = random_trig_polynomial(rng, 7)
    xs = rng.uniform(0, TWOPI, 12)
    lhs = deviation_rho(p, f1 + 2.5 * f2, 4, xs)
    rhs = deviation_rho(p, f1, 4, xs) + 2.5 * deviation_rho(p, f2, 4, xs)
    assert np.max(np.abs(lhs - rhs)) < 1e-13


def test_rho_translation_equivariance(rng):
    p = KernelParams(1.0, 0.5, 0.2)
    phi = random_trig_polynomial(rng, 6)
    tau = 0.91
    xs = rng.uniform(0, TWOPI, 8)
    lhs = deviation_rho(p, phi.shifted(tau), 3, xs)
    rhs = deviation_rho(p, phi, 3, xs - tau)
    assert np.max(np.abs(lhs - rhs)) < 1e-13


def test_spectral_vs_quadrature_cross_route(rng):
    for _ in range(6):
        alpha = float(rng.uniform(0.7, 2.0))
        r = float(rng.uniform(0.4, 0.7))
        beta = float(rng.uniform(0.0, 0.99))
        n = int(rng.integers(1, 9))
        p = KernelParams(alpha, r, beta)
        phi = random_trig_polynomial(rng, int(rng.integers(n, 16)))
        x = float(rng.uniform(0, TWOPI))
        spec = deviation_rho(p, phi, n, x)
        quad = convolve_quadrature(p, n, lambda t: phi(t), x, tol=1e-10)
        assert abs(spec - quad) < 1e-8


def test_orthogonality_to_low_degrees(rng):
    p = KernelParams(1.0, 0.5, 0.3)
    low = random_trig_polynomial(rng, 3)
    v = convolve_quadrature(p, 4, lambda t: low(t), 1.1, tol=1e-10)
    assert abs(v) < 1e-9
    ones = convolve_quadrature(p, 4, lambda t: np.ones_like(np.asarray(t)), 0.5, tol=1e-10)
    assert abs(ones) < 1e-9


def test_unconditional_deviation_bound(rng):
    # sup |rho_n(f)| <= (1/pi) ||P||_1 E_n(phi) on a sup grid
    p = KernelParams(1.0, 0.5, 0.5)
    n = 4
    phi = random_trig_polynomial(rng, 10)
    grid = np.linspace(0, TWOPI, 1024, endpoint=False)
    sup_rho = float(np.max(np.abs(deviation_rho(p, phi, n, grid))))
    rep = l1_norm_tail_kernel(p, n)
    _, e_n, _ = best_trig_approx(lambda t: phi(t), n)
    assert sup_rho <= rep.l1_norm / math.pi * e_n + 1e-8
