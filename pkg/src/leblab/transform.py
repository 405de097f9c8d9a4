"""Generalized Poisson integral, Fourier partial sums, and the deviation.

The integral acts on each harmonic by the decay factor exp(-alpha k^r)
and a rotation through beta pi/2, which makes the deviation from the
(n-1)-st partial sum an exact finite sum for polynomial inputs; the
periodic convolution against the kernel tail provides the independent
quadrature route.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .kernel import KERNEL_TOL, make_tail_kernel
from .params import KernelParams
from .quadrature import integrate_pieces
from .trigpoly import TrigPolynomial, partial_sum
from .zeros import locate_zeros, reduce_beta

TWOPI = 2.0 * math.pi

__all__ = [
    "PoissonPair",
    "poisson_integral",
    "partial_sum",
    "deviation_rho",
    "convolve_quadrature",
]


@dataclass
class PoissonPair:
    phi: TrigPolynomial
    f_coeffs: TrigPolynomial
    params: KernelParams


def poisson_integral(params: KernelParams, phi: TrigPolynomial) -> PoissonPair:
    """Image of phi: harmonic k is scaled by psi(k) and rotated by beta pi/2.

    The constant term passes through untouched (it is the free constant
    of the image, orthogonal to the rest).
    """
    m = phi.cos_coeffs.shape[0]
    ph = params.phase
    c, s = math.cos(ph), math.sin(ph)
    if m:
        w = params.psi(np.arange(1.0, m + 1.0))
        a_f = w * (phi.cos_coeffs * c - phi.sin_coeffs * s)
        b_f = w * (phi.cos_coeffs * s + phi.sin_coeffs * c)
    else:
        a_f = np.zeros(0)
        b_f = np.zeros(0)
    return PoissonPair(phi=phi, f_coeffs=TrigPolynomial(phi.a0, a_f, b_f), params=params)


def deviation_rho(params: KernelParams, phi: TrigPolynomial, n, x):
    """rho_n(f; x) for f the Poisson image of phi: the spectral tail
    sum_{k>=n} psi(k) (rotated harmonic of phi)(x).  Exact finite sum."""
    if n < 1:
        raise DomainError("n must be >= 1")
    f = poisson_integral(params, phi).f_coeffs
    tail = f - partial_sum(f, n)
    tail.a0 = 0.0
    return tail(x)


def convolve_quadrature(params: KernelParams, n, g, x, tol=1e-9):
    """(1/pi) integral of g(t) P(x - t) over a period, to absolute tol.

    Integrates piecewise between the zeros of t -> P(x - t); when the
    phase parameter admits no bracket reduction the period is split
    uniformly instead.
    """
    x = float(x)
    tk = make_tail_kernel(params, n, scaled_tol=min(1e-10, tol / (4.0 * math.pi)))
    try:
        reduce_beta(params.beta)
        zs = locate_zeros(params, n, tol=1e-9)
        edges = np.sort((x - zs.zeros) % TWOPI)
        edges = np.concatenate([edges, [edges[0] + TWOPI]])
    except DomainError:
        edges = np.linspace(0.0, TWOPI, 4 * n + 9)

    def fbatch(ts):
        return np.asarray(g(ts), dtype=np.float64) * tk.values(x - ts, scaled=True)

    piece_tol = (tol / max(tk.scale, 1e-300)) * math.pi / (edges.shape[0] - 1)
    totals, _ = integrate_pieces(fbatch, edges, piece_tol)
    return tk.scale * float(np.sum(totals)) / math.pi
