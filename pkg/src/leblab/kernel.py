"""Certified evaluation of the generalized Poisson kernel tail.

The tail from index n of the lacunary-decay cosine series is

    P(t) = sum_{k >= n} exp(-alpha k^r) cos(k t - beta pi/2).

All series are summed directly over k = n..K; the omitted mass is
certified through the integral comparison

    sum_{k > K} k^(w-1) exp(-alpha k^r) <= Gamma(w/r, alpha K^r) / (r alpha^(w/r)),

with the upper incomplete gamma computed by continued fraction.  To
remain usable when exp(-alpha n^r) underflows (large n), every sum is
formed in rescaled units with leading coefficient 1; the unscaled value
is the scaled one times exp(-alpha n^r).
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from ._incgamma import log_upper_gamma
from .errors import DomainError, ToleranceUnreachable
from .params import KernelParams

KERNEL_TOL = 1e-12
SCALAR_TOL = 1e-14
TERM_CAP = 1 << 23

M_N_BOUND_FACTOR = 784.0 * math.pi**2 / 117.0


def psi(params: KernelParams, k):
    """exp(-alpha k^r) for k >= 0."""
    return params.psi(k)


def _scaled_exponent(params, n, k):
    """alpha*(k^r - n^r) evaluated without cancellation, for k >= n >= 1."""
    nr = float(n) ** params.r
    return params.alpha * nr * np.expm1(params.r * np.log1p((k - float(n)) / n))


_coeff_cache = {}


def scaled_coeffs(params: KernelParams, n, trunc_k):
    """exp(-alpha (k^r - n^r)) for k = n..trunc_k; leading entry is 1.

    Cached: beta-independent, so zero location, norms and sweeps reuse
    the same arrays across phase values.
    """
    key = (params.alpha, params.r, int(n), int(trunc_k))
    hit = _coeff_cache.get(key)
    if hit is not None:
        return hit
    k = np.arange(n, trunc_k + 1, dtype=np.float64)
    out = np.exp(-_scaled_exponent(params, n, k))
    if len(_coeff_cache) >= 32:
        _coeff_cache.pop(next(iter(_coeff_cache)))
    _coeff_cache[key] = out
    return out


def log_tail_remainder(params: KernelParams, n, trunc_k, weight=1):
    """ln of the certified scaled bound on sum_{k>K} k^(w-1) psi(k) * e^{alpha n^r}."""
    a = weight / params.r
    x = params.alpha * float(trunc_k) ** params.r
    nr = params.alpha * float(n) ** params.r
    return nr + log_upper_gamma(a, x) - math.log(params.r) - a * math.log(params.alpha)


def choose_truncation(params: KernelParams, n, log_tol_scaled, weight=1, cap=TERM_CAP):
    """Smallest-ish K with certified scaled remainder <= exp(log_tol_scaled)."""
    a = weight / params.r
    k_min = ((a + 1.5) / params.alpha) ** (1.0 / params.r)
    k = int(max(n + 8, math.ceil(k_min)))
    while log_tail_remainder(params, n, k, weight) > log_tol_scaled:
        if k - n > cap:
            raise ToleranceUnreachable(
                f"term count above cap {cap} for alpha={params.alpha}, r={params.r}, n={n}"
            )
        k *= 2
    lo = max(n + 8, int(math.ceil(k_min)), k // 2)
    while k - lo > max(16, k // 64):
        mid = (lo + k) // 2
        if log_tail_remainder(params, n, mid, weight) <= log_tol_scaled:
            k = mid
        else:
            lo = mid
    return k


@dataclass
class TailKernel:
    """A truncation-certified evaluator for the kernel tail from index n."""

    params: KernelParams
    n: int
    trunc_k: int
    remainder_bound: float  # unscaled; 0.0 when exp(-alpha n^r) underflows
    scaled_remainder_bound: float
    log_scale: float  # ln of exp(-alpha n^r), i.e. -alpha n^r
    coeffs: np.ndarray  # scaled, leading entry 1

    @property
    def scale(self):
        return math.exp(self.log_scale)

    def values(self, ts, scaled=False):
        ts = np.atleast_1d(np.asarray(ts, dtype=np.float64))
        c, s = _backend.eval_cs(self.coeffs, self.n, ts)
        ph = self.params.phase
        out = math.cos(ph) * c + math.sin(ph) * s
        return out if scaled else out * self.scale

    def value(self, t, scaled=False):
        return float(self.values([t], scaled=scaled)[0])

    def grid(self, m, scaled=False):
        """Kernel values on the canonical m-point grid via exact folding."""
        c, s = _backend.grid_cs(self.coeffs, self.n, m)
        ph = self.params.phase
        out = math.cos(ph) * c + math.sin(ph) * s
        return out if scaled else out * self.scale

    def sup_bound(self, scaled=False):
        b = float(np.sum(self.coeffs)) + self.scaled_remainder_bound
        return b if scaled else b * self.scale


def make_tail_kernel(params: KernelParams, n, tol=KERNEL_TOL, scaled_tol=None) -> TailKernel:
    """Build a TailKernel whose truncation honours an absolute tolerance.

    ``tol`` is on unscaled values; pass ``scaled_tol`` instead to budget
    in rescaled units (used at indices where the scale underflows).
    """
    if n < 1:
        raise DomainError(f"tail start must be >= 1, got {n}")
    nr = params.alpha * float(n) ** params.r
    if scaled_tol is not None:
        log_tol = math.log(scaled_tol)
    else:
        log_tol = math.log(tol) + nr
    k = choose_truncation(params, n, log_tol)
    rem_scaled = math.exp(log_tail_remainder(params, n, k))
    return TailKernel(
        params=params,
        n=int(n),
        trunc_k=int(k),
        remainder_bound=rem_scaled * math.exp(-nr),
        scaled_remainder_bound=rem_scaled,
        log_scale=-nr,
        coeffs=scaled_coeffs(params, n, k),
    )


def tail_sum(params: KernelParams, n, tol=SCALAR_TOL, scaled=False):
    """(sum_{k>=n} psi(k), certified remainder bound); rescaled if asked."""
    if n < 1:
        raise DomainError(f"tail start must be >= 1, got {n}")
    nr = params.alpha * float(n) ** params.r
    log_tol = math.log(tol) + (0.0 if scaled else nr)
    k = choose_truncation(params, n, log_tol)
    total = 0.0
    for lo in range(n, k + 1, 1 << 20):
        hi = min(k, lo + (1 << 20) - 1)
        kk = np.arange(lo, hi + 1, dtype=np.float64)
        total += float(np.sum(np.exp(-_scaled_exponent(params, n, kk))))
    rem = math.exp(log_tail_remainder(params, n, k))
    if scaled:
        return total, rem
    sc = math.exp(-nr)
    return total * sc, rem * sc


def eval_tail_kernel(params: KernelParams, n, t, tol=KERNEL_TOL, scaled=False):
    """Pointwise tail-kernel value with |error| <= tol (plus rounding floor)."""
    return make_tail_kernel(params, n, tol=tol).value(t, scaled=scaled)


@dataclass
class EnvelopePhase:
    g: float
    h: float
    y: float
    y_prime_lower: float | None = None


def _envelope_parts(params, n, ts, tol, derivatives=False):
    """Scaled g, h (and g', h') on an array of points, with remainders.

    The scaled budget is capped at 1e-9 so the envelope stays meaningful
    at indices where exp(-alpha n^r) underflows the absolute tolerance.
    """
    nr = params.alpha * float(n) ** params.r
    log_tol = min(math.log(tol) + nr, math.log(1e-9))
    k = choose_truncation(params, n, log_tol)
    c = scaled_coeffs(params, n, k)
    cc, ss = _backend.eval_cs(c, 0.0, ts)
    rem = math.exp(log_tail_remainder(params, n, k))
    if not derivatives:
        return cc, ss, rem, None, None, None
    kd = choose_truncation(params, n, log_tol + math.log(max(n, 2.0)), weight=2)
    j = np.arange(0, kd - n + 1, dtype=np.float64)
    cd = scaled_coeffs(params, n, kd) * j
    dc, ds = _backend.eval_cs(cd, 0.0, ts)
    rem_d = math.exp(log_tail_remainder(params, n, kd, weight=2))
    return cc, ss, rem, -ds, dc, rem_d  # g' = -sum j c sin, h' = sum j c cos


def envelope_phase_grid(params: KernelParams, n, ts, tol=KERNEL_TOL):
    """Scaled (g, h, y) along sorted points starting near 0.

    y(t) = t - beta pi/(2n) + arctan(h/g)/n with the arctan branch
    continued nearest-neighbour along the grid, so y is continuous and
    gains exactly 2 pi over a period.
    """
    ts = np.asarray(ts, dtype=np.float64)
    g, h, rem, _, _, _ = _envelope_parts(params, n, ts, tol)
    theta = np.arctan2(h, g)
    dtheta = np.diff(theta)
    jumps = np.round(dtheta / (2.0 * math.pi))
    theta = theta - np.concatenate([[0.0], 2.0 * math.pi * np.cumsum(jumps)])
    y = ts - params.beta * math.pi / (2.0 * n) + theta / n
    return g, h, y, rem


def eval_envelope_phase(params: KernelParams, n, t, tol=KERNEL_TOL) -> EnvelopePhase:
    """Envelope pair and phase at one point (unscaled g, h).

    The phase is unwrapped from 0 along a fine grid up to t, so repeated
    calls are consistent with a continuous y.
    """
    t = float(t)
    # step count resolves the phase motion: |theta'| <= M_n <= closed-form bound
    steps = int(abs(t) * 4.0 * mn_paper_bound(params, n) / math.pi) + 64
    grid = np.linspace(0.0, t, min(steps, 1 << 18))
    if grid.size < 2:
        grid = np.array([0.0, t])
    g, h, y, rem = envelope_phase_grid(params, n, grid, tol)
    sc = math.exp(-params.alpha * float(n) ** params.r)
    amp2 = g[-1] ** 2 + h[-1] ** 2
    gg, hh, rr, gd, hd, rem_d = _envelope_parts(params, n, grid[-1:], tol, derivatives=True)
    dnum = math.hypot(gd[0], hd[0]) + rem_d
    denom = max(math.hypot(gg[0], hh[0]) - rr, 1e-300)
    y_lower = 1.0 - dnum / (n * denom)
    if amp2 <= 0.0:
        raise ToleranceUnreachable("envelope magnitude vanished numerically")
    return EnvelopePhase(g=float(g[-1] * sc), h=float(h[-1] * sc), y=float(y[-1]), y_prime_lower=y_lower)


def mn_paper_bound(params: KernelParams, n):
    ar = params.alpha * params.r
    return M_N_BOUND_FACTOR * (float(n) ** (1.0 - params.r) / ar + ar * float(n) ** params.r)


def estimate_Mn(params: KernelParams, n, grid_size=4096, tol=KERNEL_TOL):
    """(empirical sup of |(g',h')|/|(g,h)| over a grid, closed-form bound)."""
    if grid_size < 1024:
        raise DomainError("grid_size must be >= 1024")
    ts = 2.0 * math.pi * np.arange(grid_size, dtype=np.float64) / grid_size
    g, h, rem, gd, hd, rem_d = _envelope_parts(params, n, ts, tol, derivatives=True)
    num = np.hypot(gd, hd)
    den = np.hypot(g, h)
    if np.any(den <= 0.0):
        raise ToleranceUnreachable("envelope magnitude vanished numerically")
    emp = float(np.max(num / den))
    return emp, mn_paper_bound(params, n)


def dirichlet(n, t):
    """Dirichlet kernel value sin((n-1/2)t) / (2 sin(t/2)), with the
    removable singularity filled by n - 1/2."""
    if n < 1:
        raise DomainError(f"dirichlet order parameter must be >= 1, got {n}")
    t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    s = np.sin(t_arr / 2.0)
    out = np.empty_like(t_arr)
    near = np.abs(s) < 1e-9
    safe = ~near
    out[safe] = np.sin((n - 0.5) * t_arr[safe]) / (2.0 * s[safe])
    if near.any():
        tt = t_arr[near]
        acc = np.full(tt.shape, 0.5)
        for k in range(1, n):
            acc += np.cos(k * tt)
        out[near] = acc
    return out if np.ndim(t) else float(out[0])
