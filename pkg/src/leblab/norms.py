"""Scalar integrals, the log defect, kernel L1 norms, Lebesgue constants.

The kernel L1 norm is assembled piecewise between certified zeros.  The
series is split at a head index: the head is integrated by adaptive
Gauss-Legendre (its bandwidth is resolvable by construction), while the
remaining terms are integrated in closed form through the antiderivative
series sum c_k/k sin(k t - phase), so slowly decaying coefficient tails
never force quadrature refinement.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import DomainError
from .kernel import dirichlet, make_tail_kernel
from .params import KernelParams, n1_necessary_lower_bound, threshold_n1
from .quadrature import integrate, integrate_pieces
from .zeros import ZeroSet, locate_zeros_grid

TWOPI = 2.0 * math.pi
HEAD_TERMS = 2048
L1_TOL = 1e-8  # scaled units: tolerance on exp(alpha n^r) * ||P||_1


_SINH_SWITCH = 1e4


def integral_Is(s, upsilon, tol=1e-13):
    """I_s(v) = (int_0^v (t^2+1)^(-s/2) dt)^(1/s); the sup branch is 1.

    Adaptive quadrature on geometrically spread pieces; beyond t = 1e4
    the t = sinh(u) substitution tames the long tail.
    """
    if upsilon < 0:
        raise DomainError("upsilon must be nonnegative")
    if s == math.inf:
        return 1.0
    if not 1.0 <= s < math.inf:
        raise DomainError(f"s must lie in [1, inf], got {s}")
    if upsilon == 0.0:
        return 0.0
    near = min(upsilon, _SINH_SWITCH)
    edges = [0.0]
    scale = 1.0
    while scale < near:
        edges.append(scale)
        scale *= 10.0
    edges.append(near)
    totals, _ = integrate_pieces(
        lambda t: (t * t + 1.0) ** (-0.5 * s), edges, tol / len(edges)
    )
    val = float(np.sum(totals))
    if upsilon > _SINH_SWITCH:
        far, _ = integrate(
            lambda u: np.cosh(u) ** (1.0 - s),
            math.asinh(_SINH_SWITCH),
            math.asinh(upsilon),
            tol,
        )
        val += far
    return val ** (1.0 / s)


def theta_upsilon(params: KernelParams, n):
    return math.pi * float(n) ** (1.0 - params.r) / (params.alpha * params.r)


def theta_defect(params: KernelParams, n, tol=1e-13):
    """Theta = I_1(pi n^(1-r)/(alpha r)) - ln of the same argument.

    Returns (theta, flag) with flag true iff 0 < theta < 1.
    """
    upsilon = theta_upsilon(params, n)
    theta = integral_Is(1.0, upsilon, tol) - math.log(upsilon)
    return theta, 0.0 < theta < 1.0


@dataclass
class NormReport:
    n: int
    l1_norm: float  # may underflow to 0.0 at large n; see l1_norm_scaled
    l1_norm_scaled: float
    principal: float
    gamma_star: float
    theta: float
    theta_in_range: bool
    quad_error_bound: float
    n_ge_n1: bool


def _is_n_ge_n1(params, n):
    if n < n1_necessary_lower_bound(params):
        return False
    res = threshold_n1(params)
    return res.exact and n >= res.n


def l1_norm_tail_kernel(params: KernelParams, n, zeroset: ZeroSet | None = None,
                        tol=L1_TOL) -> NormReport:
    """||P||_1 as the sum of |integral| over the sign-constant pieces
    between consecutive zeros; NormReport carries the decomposition into
    the principal logarithm and the empirical residual gamma_star."""
    if zeroset is None:
        zeroset = locate_zeros_grid(params, n, m=_grid_size_for(n), refine_tol=1e-7)
    z = zeroset.validate().zeros
    edges = np.concatenate([z, [z[0] + TWOPI]])
    tk = make_tail_kernel(params, n, scaled_tol=min(tol / TWOPI, 1e-10))
    head_top = min(tk.trunc_k, n + HEAD_TERMS)
    head = tk.coeffs[: head_top - n + 1]
    ph = params.phase

    def head_vals(ts):
        c, s = _backend.eval_cs(head, n, ts)
        return math.cos(ph) * c + math.sin(ph) * s

    piece_tol = tol / (2.0 * n + 2.0)
    totals, errs = integrate_pieces(head_vals, edges, piece_tol)
    quad_err = float(np.sum(errs))
    if head_top < tk.trunc_k:
        # antiderivative series for the unresolved part: exact per piece
        k = np.arange(head_top + 1, tk.trunc_k + 1, dtype=np.float64)
        anti = tk.coeffs[head_top - n + 1 :] / k
        cc, ss = _backend.eval_cs(anti, head_top + 1, edges)
        # integral of cos(kt - ph) is sin(kt - ph)/k
        anti_vals = math.cos(ph) * ss - math.sin(ph) * cc
        totals += np.diff(anti_vals)
    l1_scaled = float(np.sum(np.abs(totals)))
    # terms beyond trunc_k affect the whole-period integral by <= 2pi * rem
    quad_err += TWOPI * tk.scaled_remainder_bound
    ar = params.alpha * params.r
    principal = (4.0 / math.pi**2) * math.log(float(n) ** (1.0 - params.r) / ar)
    gamma_star = l1_scaled / math.pi - principal
    theta, theta_ok = theta_defect(params, n)
    return NormReport(
        n=int(n),
        l1_norm=l1_scaled * tk.scale,
        l1_norm_scaled=l1_scaled,
        principal=principal,
        gamma_star=gamma_star,
        theta=theta,
        theta_in_range=theta_ok,
        quad_error_bound=quad_err,
        n_ge_n1=_is_n_ge_n1(params, n),
    )


def _grid_size_for(n):
    m = 8192
    while m < 16 * n:
        m *= 2
    return m


def dense_grid_l1_oracle(params: KernelParams, n, m=1 << 18):
    """L1 norm of the scaled kernel from uniform-grid values alone.

    Independent of the zero-partitioned path: per-cell integrals of the
    linear interpolant of the signed values, which handles the corner of
    |P| inside sign-change cells exactly.
    """
    tk = make_tail_kernel(params, n, scaled_tol=1e-10)
    v0 = tk.grid(m, scaled=True)
    v1 = np.roll(v0, -1)
    h = TWOPI / m
    same = v0 * v1 >= 0.0
    cells = np.where(
        same,
        0.5 * h * (np.abs(v0) + np.abs(v1)),
        0.5 * h * (v0 * v0 + v1 * v1) / np.maximum(np.abs(v0) + np.abs(v1), 1e-300),
    )
    return float(np.sum(cells))


def lebesgue_constant(n, tol=1e-11):
    """(L_{n-1}, L_{n-1} - (4/pi^2) ln n) with L the Dirichlet L1 norm / pi."""
    if n < 1:
        raise DomainError("n must be >= 1")
    j = np.arange(1, n, dtype=np.float64)
    zeros = 2.0 * math.pi * j / (2.0 * n - 1.0)
    edges = np.concatenate([[0.0], zeros[zeros < math.pi], [math.pi]])
    totals, _ = integrate_pieces(lambda t: dirichlet(n, t), edges, tol / max(1, len(edges)))
    lconst = (2.0 / math.pi) * float(np.sum(np.abs(totals)))
    return lconst, lconst - (4.0 / math.pi**2) * math.log(n)
