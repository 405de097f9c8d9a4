"""Localization of the 2n simple zeros of the kernel tail on [0, 2pi).

Two independent routes:

* bracket route: transcribed interval families (valid for phase
  parameter beta in [0,1); other beta are reduced by the kernel's
  quarter-period symmetries), each bracket refined by sign-safe
  bisection.  A grid-accelerated variant folds the coefficients onto a
  uniform grid first, which makes the slowly-decaying parameter range
  tractable.

* phase route: inversion of the strictly increasing phase function
  y(t) = t - beta pi/(2n) + arctan(h/g)/n at the half-integer levels
  (pi/2 + k pi)/n; licensed for n >= n* (or an empirical monotonicity
  check).
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import (
    DegenerateBrackets,
    DomainError,
    NoSignChange,
    PhaseNotMonotone,
    ToleranceUnreachable,
)
from .kernel import (
    KERNEL_TOL,
    TailKernel,
    choose_truncation,
    envelope_phase_grid,
    make_tail_kernel,
    mn_paper_bound,
    scaled_coeffs,
    estimate_Mn,
)
from .params import KernelParams, threshold_nstar

TWOPI = 2.0 * math.pi
ZERO_TOL = 1e-12
SIGN_KERNEL_TOL = 1e-14  # scaled units, near sign decisions


@dataclass(frozen=True)
class BracketList:
    intervals: tuple

    def __post_init__(self):
        prev_end = -1.0
        for i, (a, b) in enumerate(self.intervals):
            if not (0.0 <= a < b <= TWOPI):
                raise DegenerateBrackets(f"bracket {i} = ({a}, {b}) is empty or out of range")
            if a < prev_end:
                raise DegenerateBrackets(f"bracket {i} overlaps its predecessor")
            prev_end = b

    def __len__(self):
        return len(self.intervals)


@dataclass
class ZeroSet:
    n: int
    zeros: np.ndarray
    method: str  # 'brackets' or 'phase'
    residuals: np.ndarray | None
    alternation_ok: bool
    tol: float
    residuals_ok: bool | None = None

    def validate(self):
        z = self.zeros
        if z.shape[0] != 2 * self.n:
            raise DomainError(f"expected {2*self.n} zeros, found {z.shape[0]}")
        if np.any(np.diff(z) <= 0) or z[0] < 0 or z[-1] >= TWOPI:
            raise DomainError("zeros must be strictly increasing inside [0, 2pi)")
        return self


def reduce_beta(beta):
    """Map beta to (beta_c in [0,1), sign, reflected) with
    P_beta(t) = sign * P_beta_c(-t if reflected else t).

    Raises DomainError for beta = 1, 3 (mod 4): the pure sine kernel has
    no bracket transcription; use the phase route there.
    """
    b = beta % 4.0
    if b == 4.0:  # float mod of a tiny negative rounds up
        b = 0.0
    if 0.0 <= b < 1.0:
        return b, 1.0, False
    if 1.0 < b < 2.0:
        return 2.0 - b, -1.0, True
    if 2.0 <= b < 3.0:
        return b - 2.0, -1.0, False
    if 3.0 < b < 4.0:
        return 4.0 - b, 1.0, True
    raise DomainError(f"beta = {beta} reduces to an odd kernel; bracket route unavailable")


def corollary_brackets(n, beta) -> BracketList:
    """The 2n open intervals, one per zero: n of the first family,
    n-1 of the second, and the terminal one."""
    if not 0.0 <= beta < 1.0:
        raise DomainError(f"bracket transcription needs beta in [0,1), got {beta}")
    if n < 1:
        raise DomainError("n must be >= 1")
    g = (1.0 - beta) * math.pi / 2.0
    fam_a = [((2 * j - 2 + beta) * math.pi / (2 * n - 1), (j * math.pi - g) / n) for j in range(1, n + 1)]
    fam_b = [(((n + j) * math.pi - g) / n, (2 * n - 2 + 2 * j + beta) * math.pi / (2 * n - 1)) for j in range(1, n)]
    fam_c = [((2 * n * math.pi - g) / n, TWOPI)]
    return BracketList(tuple(fam_a + fam_b + fam_c))


def _canonical(params: KernelParams, n):
    beta_c, sign, reflected = reduce_beta(params.beta)
    canon = KernelParams(params.alpha, params.r, beta_c)
    return canon, corollary_brackets(n, beta_c), sign, reflected


def _map_back(zs, reflected):
    if not reflected:
        return zs
    out = np.sort((TWOPI - zs) % TWOPI)
    return out


def _lockstep_bisect(values_fn, lo, hi, slo, tol, tiny):
    """Vectorised bisection; stops a bracket early when |value| <= tiny."""
    lo = lo.copy()
    hi = hi.copy()
    rounds = max(1, int(math.ceil(math.log2(max(float(np.max(hi - lo)) / tol, 1.0)))))
    for _ in range(rounds):
        active = (hi - lo) > tol
        if not np.any(active):
            break
        mid = 0.5 * (lo + hi)
        vals = values_fn(mid[active])
        va = np.zeros_like(mid)
        va[active] = vals
        settle = active & (np.abs(va) <= tiny)
        lo[settle] = mid[settle]
        hi[settle] = mid[settle]
        go = active & ~settle
        same = np.sign(va) == slo
        take_lo = go & same
        take_hi = go & ~same
        lo[take_lo] = mid[take_lo]
        hi[take_hi] = mid[take_hi]
    return 0.5 * (lo + hi)


def locate_zeros_bracketed(params: KernelParams, n, brackets=None, tol=ZERO_TOL,
                           sign_tol=SIGN_KERNEL_TOL) -> ZeroSet:
    """One zero per bracket by bisection to |interval| <= tol.

    The kernel is evaluated in rescaled units at tolerance ``sign_tol``
    near sign decisions; a probe whose magnitude falls under the
    certified noise floor triggers one tolerance shrink, after which the
    midpoint is accepted.
    """
    canon, default_brackets, sign, reflected = _canonical(params, n)
    brackets = default_brackets if brackets is None else brackets
    tk = make_tail_kernel(canon, n, scaled_tol=sign_tol)
    lo = np.array([a for a, _ in brackets.intervals])
    hi = np.array([b for _, b in brackets.intervals])
    vlo = tk.values(lo, scaled=True)
    vhi = tk.values(hi, scaled=True)
    bad = np.nonzero(np.sign(vlo) * np.sign(vhi) >= 0)[0]
    if bad.size:
        raise NoSignChange(int(bad[0]))
    tiny = 10.0 * tk.scaled_remainder_bound
    shrunk = None

    def values(ts):
        nonlocal shrunk
        v = tk.values(ts, scaled=True)
        small = np.abs(v) <= tiny
        if small.any():
            if shrunk is None:
                shrunk = make_tail_kernel(canon, n, scaled_tol=sign_tol / 10.0)
            v[small] = shrunk.values(ts[small], scaled=True)
        return v

    zs = _lockstep_bisect(values, lo, hi, np.sign(vlo), tol, tiny)
    zs_orig = _map_back(zs, reflected)
    res_scaled = np.abs(tk.values(zs, scaled=True))
    h = max(tol, 1e-9)
    dplus = tk.values(zs + h, scaled=True)
    dminus = tk.values(zs - h, scaled=True)
    dscale = np.abs(dplus - dminus) / (2.0 * h)
    residuals_ok = bool(np.all(res_scaled <= tol * np.maximum(dscale, 1.0) * 10.0 + tiny))
    zset = ZeroSet(
        n=int(n),
        zeros=zs_orig,
        method="brackets",
        residuals=res_scaled * tk.scale,
        alternation_ok=False,
        tol=float(tol),
        residuals_ok=residuals_ok,
    ).validate()
    zset.alternation_ok = verify_sign_alternation(params, n, zset)[0]
    return zset


def locate_zeros_grid(params: KernelParams, n, m=8192, refine_tol=None,
                      kernel=None, grid_pair=None) -> ZeroSet:
    """Bracket-route zeros via exact coefficient folding on an m-point grid.

    Each bracket must isolate exactly one grid sign change.  Without
    ``refine_tol`` the zeros carry the grid-cell resolution (secant
    estimate inside the cell); with it, lockstep bisection refines them.
    ``kernel``/``grid_pair`` allow reuse of the phase-independent work
    across beta values.
    """
    canon, brackets, sign, reflected = _canonical(params, n)
    tk = kernel if kernel is not None else make_tail_kernel(canon, n, scaled_tol=SIGN_KERNEL_TOL)
    if grid_pair is None:
        grid_pair = _backend.grid_cs(tk.coeffs, tk.n, m)
    cvals, svals = grid_pair
    ph = canon.phase
    pvals = math.cos(ph) * cvals + math.sin(ph) * svals
    step = TWOPI / m
    ts = _backend.grid_points(m)
    sgn = np.where(pvals >= 0.0, 1.0, -1.0)
    flips = np.nonzero(sgn * np.roll(sgn, -1) < 0)[0]  # cell [t_l, t_{l+1}), cyclic
    if flips.size != 2 * n:
        raise ToleranceUnreachable(
            f"grid of {m} points isolated {flips.size} sign changes, expected {2*n}; "
            "increase the grid size"
        )
    lo_all = ts[flips]
    hi_all = lo_all + step
    # assign cells to brackets; repair cells straddling a bracket endpoint
    zeros = np.empty(2 * n)
    starts = np.array([a for a, _ in brackets.intervals])
    ends = np.array([b for _, b in brackets.intervals])
    for i in range(2 * n):
        a, b = starts[i], ends[i]
        lo_i, hi_i = lo_all[i], hi_all[i]
        if not (lo_i < b and hi_i > a):
            raise ToleranceUnreachable(f"sign change {i} missed bracket ({a}, {b})")
        if lo_i < a or hi_i > b:
            va = tk.values(np.array([max(a, lo_i), min(b, hi_i)]), scaled=True)
            if np.sign(va[0]) == np.sign(va[1]):
                raise NoSignChange(i)
            lo_i, hi_i = max(a, lo_i), min(b, hi_i)
            v0, v1 = va
        else:
            v0, v1 = pvals[flips[i]], pvals[(flips[i] + 1) % m]
        zeros[i] = lo_i + (hi_i - lo_i) * v0 / (v0 - v1)
    tol = step
    if refine_tol is not None and refine_tol < step:
        slo = np.where(pvals[flips] >= 0.0, 1.0, -1.0)
        tiny = 10.0 * tk.scaled_remainder_bound
        zeros = _lockstep_bisect(
            lambda t: tk.values(t, scaled=True), lo_all, hi_all, slo, refine_tol, tiny
        )
        tol = refine_tol
    zs_orig = _map_back(zeros, reflected)
    zset = ZeroSet(
        n=int(n), zeros=zs_orig, method="brackets", residuals=None,
        alternation_ok=False, tol=float(tol),
    ).validate()
    zset.alternation_ok = _alternation_from_grid(pvals, zeros, m) if not reflected else \
        verify_sign_alternation(params, n, zset)[0]
    return zset


def _alternation_from_grid(pvals, zeros, m):
    mids = (zeros + np.diff(np.concatenate([zeros, [zeros[0] + TWOPI]])) / 2.0) % TWOPI
    idx = np.round(mids / (TWOPI / m)).astype(np.int64) % m
    s = np.where(pvals[idx] >= 0.0, 1.0, -1.0)
    return bool(np.all(s * np.roll(s, -1) < 0))


def locate_zeros_phase(params: KernelParams, n, tol=ZERO_TOL, gate="strict") -> ZeroSet:
    """Zeros as y^{-1}((pi/2 + k pi)/n), k = 0..2n-1, by monotone inversion.

    ``gate='strict'`` requires n >= n*(alpha, r); ``gate='empirical'``
    accepts an observed sup of the phase-derivative ratio below 1.
    """
    if gate == "strict":
        ns = threshold_nstar(params)
        if not ns.exact or n < ns.n:
            raise DomainError(f"phase route needs n >= n* = {ns.n}, got {n}")
        bound = mn_paper_bound(params, n)
    elif gate == "empirical":
        emp, paper = estimate_Mn(params, n, 4096)
        if emp >= n:
            raise PhaseNotMonotone(f"observed phase-derivative ratio {emp:.3g} >= n = {n}")
        bound = min(paper, 4.0 * emp + n)
    else:
        raise DomainError(f"unknown gate {gate!r}")
    m = 1 << max(12, int(math.ceil(math.log2(16.0 * bound + 4096))))
    ts = _backend.grid_points(m)
    g, h, y, rem = envelope_phase_grid(params, n, ts, tol=KERNEL_TOL)
    ycheck = np.concatenate([y, [y[0] + TWOPI]])
    if np.any(np.diff(ycheck) <= 0.0):
        raise PhaseNotMonotone("numerical phase is not strictly increasing on the grid")
    y0 = y[0]
    qmin = math.ceil((y0 * n - math.pi / 2.0) / math.pi - 1e-12)
    targets = (math.pi / 2.0 + (qmin + np.arange(2 * n)) * math.pi) / n
    if targets[-1] >= y0 + TWOPI:
        raise PhaseNotMonotone("phase span does not cover 2n half-integer levels")
    # bracket each target between grid nodes of the extended phase
    tgrid = np.concatenate([ts, [TWOPI]])
    cell = np.searchsorted(ycheck, targets, side="right") - 1
    cell = np.clip(cell, 0, m - 1)
    lo = tgrid[cell]
    hi = tgrid[cell + 1]
    ylo = ycheck[cell]
    yhi = ycheck[cell + 1]
    theta_anchor = (ylo - lo + params.beta * math.pi / (2.0 * n)) * n

    nr = params.alpha * float(n) ** params.r
    k_top = choose_truncation(params, n, math.log(SIGN_KERNEL_TOL) + 0.0)
    coeffs = scaled_coeffs(params, n, k_top)

    def y_at(t, anchor_theta):
        cc, ssin = _backend.eval_cs(coeffs, 0.0, t)
        th = np.arctan2(ssin, cc)
        th = th + TWOPI * np.round((anchor_theta - th) / TWOPI)
        return t - params.beta * math.pi / (2.0 * n) + th / n

    for _ in range(200):
        wide = (hi - lo) > tol
        if not np.any(wide):
            break
        # regula falsi with bisection safeguard
        denom = np.where(yhi > ylo, yhi - ylo, 1.0)
        frac = np.clip((targets - ylo) / denom, 0.25, 0.75)
        mid = lo + frac * (hi - lo)
        ymid = y_at(mid, theta_anchor)
        left = ymid < targets
        lo = np.where(wide & left, mid, lo)
        ylo = np.where(wide & left, ymid, ylo)
        hi = np.where(wide & ~left, mid, hi)
        yhi = np.where(wide & ~left, ymid, yhi)
    zs = 0.5 * (lo + hi) % TWOPI
    zs = np.sort(zs)
    tk = make_tail_kernel(params, n, scaled_tol=SIGN_KERNEL_TOL)
    res_scaled = np.abs(tk.values(zs, scaled=True))
    zset = ZeroSet(
        n=int(n), zeros=zs, method="phase", residuals=res_scaled * tk.scale,
        alternation_ok=False, tol=float(tol),
    ).validate()
    zset.alternation_ok = verify_sign_alternation(params, n, zset)[0]
    return zset


def verify_sign_alternation(params: KernelParams, n, zeroset: ZeroSet, kernel=None):
    """Evaluate the kernel at cyclic inter-zero midpoints; (ok, bad_index)."""
    z = zeroset.zeros
    if z.shape[0] < 2:
        return False, 0
    gaps = np.diff(np.concatenate([z, [z[0] + TWOPI]]))
    mids = (z + gaps / 2.0) % TWOPI
    tk = kernel if kernel is not None else make_tail_kernel(params, n, scaled_tol=SIGN_KERNEL_TOL)
    vals = tk.values(mids, scaled=True)
    s = np.where(vals >= 0.0, 1.0, -1.0)
    flips = s * np.roll(s, -1)
    bad = np.nonzero(flips > 0)[0]
    if bad.size:
        return False, int(bad[0])
    return True, None


def locate_zeros(params: KernelParams, n, tol=ZERO_TOL, method="auto", m=8192) -> ZeroSet:
    """Route selection: brackets where the reduction applies, else phase."""
    if method == "brackets":
        return locate_zeros_bracketed(params, n, tol=tol)
    if method == "phase":
        return locate_zeros_phase(params, n, tol=tol)
    if method == "grid":
        return locate_zeros_grid(params, n, m=m, refine_tol=tol)
    try:
        reduce_beta(params.beta)
    except DomainError:
        return locate_zeros_phase(params, n, tol=tol)
    heavy = choose_truncation(params, n, math.log(SIGN_KERNEL_TOL)) - n > 50000
    if heavy:
        return locate_zeros_grid(params, n, m=m, refine_tol=tol)
    return locate_zeros_bracketed(params, n, tol=tol)
