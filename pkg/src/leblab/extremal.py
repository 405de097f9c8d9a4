"""The extremal construction attaining the Lebesgue-type bound.

Phi_0 is level * sign(P(-t)); Phi_delta replaces each jump at a
reflected kernel zero by a linear ramp of half-width delta.  Its best
uniform approximation of degree < n is the zero polynomial (alternating
plateau extrema), and the deviation integral against P(-t) differs from
(1/pi) ||P||_1 * level exactly by the ramp correction R_n(delta).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DeltaTooLarge, DomainError
from .kernel import make_tail_kernel
from .norms import l1_norm_tail_kernel
from .params import KernelParams
from .quadrature import integrate_pieces
from .transform import convolve_quadrature
from .zeros import ZeroSet, locate_zeros

TWOPI = 2.0 * math.pi
# ramp half-width cap from the correction-budget inequality
DELTA_FACTOR = 13.0 * math.pi * (10.0 * math.pi**4 - 969.0) / 14.0


@dataclass
class ExtremalFunction:
    level: float
    zeros: np.ndarray  # reflected kernel zeros, sorted in [0, 2pi)
    delta: float
    plateau_signs: np.ndarray  # sign on (w_k, w_{k+1}), cyclic
    params: KernelParams
    n: int
    _wext: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        w = self.zeros
        gaps = np.diff(np.concatenate([w, [w[0] + TWOPI]]))
        if self.delta >= 0.5 * float(np.min(gaps)):
            raise DeltaTooLarge(
                f"delta = {self.delta} does not fit half the minimal zero gap {np.min(gaps)/2}"
            )
        self._wext = np.concatenate([[w[-1] - TWOPI], w, [w[0] + TWOPI]])

    def breakpoints(self):
        """Sorted ramp edges w_k -/+ delta within [0, 2pi)."""
        b = np.concatenate([self.zeros - self.delta, self.zeros + self.delta]) % TWOPI
        return np.unique(b)

    def plateau_midpoints(self):
        w = self.zeros
        gaps = np.diff(np.concatenate([w, [w[0] + TWOPI]]))
        return (w + gaps / 2.0) % TWOPI

    def sign_at(self, t):
        """Sign of Phi_0, i.e. of P(-t), looked up from the plateau table."""
        t = np.asarray(t, dtype=np.float64) % TWOPI
        idx = np.searchsorted(self.zeros, t, side="right")
        return self.plateau_signs[(idx - 1) % (2 * self.n)]

    def __call__(self, t):
        t = np.asarray(t, dtype=np.float64)
        scalar = t.ndim == 0
        tm = np.atleast_1d(t) % TWOPI
        idx = np.searchsorted(self.zeros, tm, side="right")
        below = self._wext[idx]  # nearest zero at or below (wrapped)
        above = self._wext[idx + 1]  # nearest zero above (wrapped)
        sign_plateau = self.plateau_signs[(idx - 1) % (2 * self.n)]
        out = sign_plateau * self.level * np.ones_like(tm)
        near_below = (tm - below) < self.delta
        near_above = (above - tm) < self.delta
        # ramp centred at the zero below: left plateau sign is the one
        # before it; value = s_left * level * (w - t)/delta
        sb = self.plateau_signs[(idx - 2) % (2 * self.n)]
        out = np.where(near_below, sb * self.level * (below - tm) / self.delta, out)
        sa = self.plateau_signs[(idx - 1) % (2 * self.n)]
        out = np.where(near_above, sa * self.level * (above - tm) / self.delta, out)
        return float(out[0]) if scalar else out


def reflected_zeros(zeroset: ZeroSet):
    """Zeros of t -> P(-t): reflect and re-sort the certified set."""
    return np.sort((TWOPI - zeroset.zeros) % TWOPI)


def build_phi_delta(params: KernelParams, n, level, delta, zeroset=None) -> ExtremalFunction:
    if level <= 0:
        raise DomainError("level must be positive")
    if zeroset is None:
        zeroset = locate_zeros(params, n, tol=1e-10)
    w = reflected_zeros(zeroset)
    tk = make_tail_kernel(params, n)
    gaps = np.diff(np.concatenate([w, [w[0] + TWOPI]]))
    mids = (w + gaps / 2.0) % TWOPI
    vals = tk.values(-mids, scaled=True)
    signs = np.where(vals >= 0.0, 1.0, -1.0)
    return ExtremalFunction(
        level=float(level), zeros=w, delta=float(delta),
        plateau_signs=signs, params=params, n=int(n),
    )


def choose_delta(params: KernelParams, n, zeroset: ZeroSet):
    """min( quarter of the smallest zero gap, half the correction-budget cap )."""
    w = reflected_zeros(zeroset)
    gaps = np.diff(np.concatenate([w, [w[0] + TWOPI]]))
    ar = params.alpha * params.r
    budget = 0.5 * DELTA_FACTOR * ar * float(n) ** params.r / float(n) ** 2
    return min(0.25 * float(np.min(gaps)), budget)


def compute_Rn_delta(params: KernelParams, n, ext: ExtremalFunction, tol=1e-10):
    """R_n(delta) = (1/pi) integral of (Phi_delta - Phi_0) P(-t) over the
    ramps, and the a-priori bound (1/pi) sup|P| * 2 n delta * level."""
    tk = make_tail_kernel(params, n)
    w = ext.zeros
    edges = np.sort(np.concatenate([w - ext.delta, w, w + ext.delta]))

    def fbatch(ts):
        diff = ext(ts) - ext.sign_at(ts) * ext.level
        return diff * tk.values(-ts, scaled=True)

    piece_tol = tol / max(tk.scale, 1e-300) / (3.0 * n)
    totals, _ = integrate_pieces(fbatch, edges, piece_tol)
    value = tk.scale * float(np.sum(totals)) / math.pi
    bound = tk.sup_bound() * 2.0 * n * ext.delta * ext.level / math.pi
    return value, bound


@dataclass
class EqualityReport:
    a_value: float  # (1/pi) int Phi_delta(t) P(0-t) dt
    b_value: float  # (1/pi) ||P||_1 * level
    r_value: float
    r_bound: float
    identity_rel_err: float
    attained_rho0: float
    ratio: float
    level: float
    delta: float


def verify_equality_case(params: KernelParams, n, level, delta=None, tol=1e-10) -> EqualityReport:
    """Checks A = B + R and the attainment of the deviation at x = 0."""
    zs = locate_zeros(params, n, tol=1e-10)
    if delta is None:
        delta = choose_delta(params, n, zs)
    ext = build_phi_delta(params, n, level, delta, zeroset=zs)
    tk = make_tail_kernel(params, n)
    edges = np.sort(np.concatenate([ext.breakpoints(), [0.0, TWOPI]]))
    edges = np.unique(edges)

    def fbatch(ts):
        return ext(ts) * tk.values(-ts, scaled=True)

    piece_tol = tol / max(tk.scale, 1e-300) / (edges.shape[0] + 1.0)
    totals, _ = integrate_pieces(fbatch, edges, piece_tol)
    a_value = tk.scale * float(np.sum(totals)) / math.pi
    rep = l1_norm_tail_kernel(params, n, zeroset=zs)
    b_value = rep.l1_norm_scaled * tk.scale * level / math.pi
    r_value, r_bound = compute_Rn_delta(params, n, ext, tol=tol)
    rho0 = convolve_quadrature(params, n, ext, 0.0, tol=max(tol, 1e-10))
    denom = max(abs(b_value), 1e-300)
    return EqualityReport(
        a_value=a_value,
        b_value=b_value,
        r_value=r_value,
        r_bound=r_bound,
        identity_rel_err=abs(a_value - (b_value + r_value)) / denom,
        attained_rho0=rho0,
        ratio=a_value / b_value if b_value else math.nan,
        level=float(level),
        delta=float(delta),
    )


@dataclass
class ClassMajorant:
    """Monotone nonincreasing nonnegative sequence eps_nu, as a table
    with a tail rule for indices beyond it."""

    table: np.ndarray
    tail_rule: object = None  # callable nu -> eps

    def __post_init__(self):
        self.table = np.asarray(self.table, dtype=np.float64)
        if self.table.size == 0:
            raise DomainError("majorant table must be nonempty")
        if np.any(self.table < 0) or np.any(np.diff(self.table) > 0):
            raise DomainError("majorant must be nonincreasing and nonnegative")

    def __call__(self, nu):
        nu = int(nu)
        if nu < self.table.shape[0]:
            return float(self.table[nu])
        if self.tail_rule is None:
            return float(self.table[-1])
        v = float(self.tail_rule(nu))
        if v < 0 or v > self.table[-1] + 1e-15:
            raise DomainError("tail rule breaks monotone nonincreasing majorant")
        return v


@dataclass
class ClassSupremumReport:
    lower: float  # attained by the construction at level eps_n
    upper: float  # (1/pi) ||P||_1 eps_n
    width: float
    level: float


def class_supremum(params: KernelParams, n, eps: ClassMajorant, delta=None) -> ClassSupremumReport:
    """Bracket the class-wide worst deviation: attained below, norm bound above."""
    level = eps(n)
    rep = verify_equality_case(params, n, level, delta=delta)
    return ClassSupremumReport(
        lower=abs(rep.a_value),
        upper=rep.b_value,
        width=rep.b_value - abs(rep.a_value),
        level=level,
    )
