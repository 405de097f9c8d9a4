"""Validated kernel parameters and the threshold integers n0, n1, n*.

The thresholds are the smallest indices at which the closed-form gating
inequalities hold.  They are found by an upward vectorised linear scan
(certifying minimality over the scanned range) up to 2**26, and beyond
that by doubling to a satisfying index followed by a downward linear
walk to the first failure, so minimality is certified only within the
walked window.  All comparisons are evaluated as written in binary64.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError

THREE_PI_CUBED = (3.0 * math.pi) ** 3
N1_RHS = 1.0 / THREE_PI_CUBED
N_STAR_RHS = 117.0 / (784.0 * math.pi**2)
LINEAR_SCAN_LIMIT = 1 << 26
DEFAULT_CEILING = 1 << 40
_CHUNK = 1 << 20
_MAX_WALK = 1 << 24


@dataclass(frozen=True)
class KernelParams:
    """Decay scale alpha > 0, decay exponent r in (0,1), phase beta (quarter turns)."""

    alpha: float
    r: float
    beta: float = 0.0

    def __post_init__(self):
        for name, v in (("alpha", self.alpha), ("r", self.r), ("beta", self.beta)):
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
        if self.alpha <= 0:
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        if not 0.0 < self.r < 1.0:
            raise DomainError(f"r must lie strictly inside (0, 1), got {self.r}")
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "beta", float(self.beta))

    def psi(self, k):
        """Coefficient weight exp(-alpha * k^r); psi(0) = 1."""
        k = np.asarray(k, dtype=np.float64)
        if np.any(k < 0):
            raise DomainError("psi index must be nonnegative")
        out = np.exp(-self.alpha * np.power(k, self.r))
        return float(out) if out.ndim == 0 else out

    @property
    def beta_mod4(self):
        """Reduced phase representative; beta + 2 negates the kernel pointwise."""
        b = self.beta % 4.0
        return 0.0 if b == 4.0 else b  # float mod of a tiny negative rounds to 4.0

    @property
    def phase(self):
        """Cosine argument shift beta*pi/2."""
        return self.beta * math.pi / 2.0


def validate_params(alpha, r, beta=0.0) -> KernelParams:
    return KernelParams(alpha, r, beta)


@dataclass(frozen=True)
class ScanResult:
    n: int
    exact: bool
    window: tuple | None = None  # (first failing index walked, doubling hit)


@dataclass(frozen=True)
class ThresholdSet:
    n0_for_p: dict
    n1: int
    n_star: int
    scan_ceiling: int
    exact: bool


def _scan_smallest(lhs, rhs, strict, lower, ceiling):
    """Smallest n >= lower satisfying lhs(n) <= rhs (or < when strict)."""

    def ok(arr):
        v = lhs(arr)
        return v < rhs if strict else v <= rhs

    lower = max(1, int(lower))
    scan_top = min(ceiling, LINEAR_SCAN_LIMIT)
    n = lower
    while n <= scan_top:
        hi = min(scan_top, n + _CHUNK - 1)
        arr = np.arange(n, hi + 1, dtype=np.float64)
        good = np.nonzero(ok(arr))[0]
        if good.size:
            found = int(arr[good[0]])
            return ScanResult(found, True, (found - 1, found))
        n = hi + 1
    if ceiling <= scan_top:
        return ScanResult(int(ceiling), False, None)
    # doubling search above the linear-scan range
    m = max(scan_top, lower)
    hit = None
    while m <= ceiling:
        m *= 2
        if m > ceiling:
            break
        if bool(ok(np.array([float(m)]))[0]):
            hit = m
            break
    if hit is None:
        return ScanResult(int(ceiling), False, None)
    # downward walk to the first failure (bounded window)
    floor_n = max(scan_top, lower - 1)
    top = hit
    walked = 0
    while top > floor_n and walked < _MAX_WALK:
        lo = max(floor_n, top - _CHUNK)
        arr = np.arange(lo, top, dtype=np.float64)
        bad = np.nonzero(~ok(arr))[0]
        walked += arr.size
        if bad.size:
            first_fail = int(arr[bad[-1]])
            return ScanResult(first_fail + 1, True, (first_fail, hit))
        top = lo
    if top <= floor_n:
        # everything above the floor satisfied; verify the single step below
        step_below_fails = top <= 1 or not bool(ok(np.array([float(top - 1)]))[0])
        return ScanResult(top, step_below_fails, (top - 1, hit) if step_below_fails else None)
    # walk cap reached: bisect the unwalked stretch for the boundary,
    # then verify the single step below it
    lo_n, hi_n = floor_n, top
    while hi_n - lo_n > 1:
        mid = (lo_n + hi_n) // 2
        if bool(ok(np.array([float(mid)]))[0]):
            hi_n = mid
        else:
            lo_n = mid
    if not bool(ok(np.array([float(hi_n - 1)]))[0]):
        return ScanResult(hi_n, True, (hi_n - 1, hit))
    return ScanResult(hi_n, True, None)


def _chi(p):
    return 1.0 if p == math.inf else float(p)


def _n0_rhs(p):
    if p == 1:
        return 1.0 / 14.0
    if p == math.inf:
        return N1_RHS
    return N1_RHS * (p - 1.0) / p


def n1_necessary_lower_bound(params: KernelParams) -> int:
    """From the second summand alone: n1 >= ceil((27 pi^3 alpha r)^(1/(1-r)))."""
    ar = params.alpha * params.r
    return math.ceil((THREE_PI_CUBED * ar) ** (1.0 / (1.0 - params.r)))


@lru_cache(maxsize=256)
def _threshold_n1_cached(alpha, r, ceiling):
    ar = alpha * r

    def lhs(n):
        return (1.0 / (ar * n**r)) * (1.0 + np.log(np.pi * n ** (1.0 - r) / ar)) + ar / n ** (1.0 - r)

    lower = n1_necessary_lower_bound(KernelParams(alpha, r))
    return _scan_smallest(lhs, N1_RHS, False, lower, ceiling)


def threshold_n1(params: KernelParams, ceiling=DEFAULT_CEILING) -> ScanResult:
    """Smallest n with (1/(ar n^r))(1 + ln(pi n^(1-r)/(ar))) + ar/n^(1-r) <= (3 pi)^-3."""
    return _threshold_n1_cached(params.alpha, params.r, int(ceiling))


@lru_cache(maxsize=256)
def _threshold_n0_cached(alpha, r, p, ceiling):
    ar = alpha * r
    chi = _chi(p)
    rhs = _n0_rhs(p)

    def lhs(n):
        return 1.0 / (ar * n**r) + ar * chi / n ** (1.0 - r)

    lower = max(
        (1.0 / (ar * rhs)) ** (1.0 / r),
        (ar * chi / rhs) ** (1.0 / (1.0 - r)),
    )
    return _scan_smallest(lhs, rhs, False, math.floor(lower) - 1, ceiling)


def threshold_n0(params: KernelParams, p, ceiling=DEFAULT_CEILING) -> ScanResult:
    """Smallest n with 1/(ar n^r) + ar chi(p)/n^(1-r) <= the three-branch bound."""
    if p != math.inf and (not math.isfinite(p) or p < 1):
        raise DomainError(f"exponent descriptor must be in [1, inf], got {p!r}")
    return _threshold_n0_cached(params.alpha, params.r, float(p), int(ceiling))


@lru_cache(maxsize=256)
def _threshold_nstar_cached(alpha, r, ceiling):
    ar = alpha * r

    def lhs(n):
        return 1.0 / (ar * n**r) + ar / n ** (1.0 - r)

    lower = max(
        (1.0 / (ar * N_STAR_RHS)) ** (1.0 / r),
        (ar / N_STAR_RHS) ** (1.0 / (1.0 - r)),
    )
    return _scan_smallest(lhs, N_STAR_RHS, True, math.floor(lower) - 1, ceiling)


def threshold_nstar(params: KernelParams, ceiling=DEFAULT_CEILING) -> ScanResult:
    """Smallest n with 1/(ar n^r) + ar/n^(1-r) < 117/(784 pi^2), strictly."""
    return _threshold_nstar_cached(params.alpha, params.r, int(ceiling))


def threshold_set(params: KernelParams, ps=(1.0, 2.0, math.inf), ceiling=DEFAULT_CEILING) -> ThresholdSet:
    n0 = {p: threshold_n0(params, p, ceiling) for p in ps}
    n1 = threshold_n1(params, ceiling)
    ns = threshold_nstar(params, ceiling)
    exact = n1.exact and ns.exact and all(s.exact for s in n0.values())
    return ThresholdSet(
        n0_for_p={p: s.n for p, s in n0.items()},
        n1=n1.n,
        n_star=ns.n,
        scan_ceiling=int(ceiling),
        exact=exact,
    )
