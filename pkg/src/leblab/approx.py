"""Best uniform approximation by trigonometric polynomials of degree < n.

Multi-point exchange on the circle.  Degree-(n-1) trigonometric
polynomials form a Haar system of dimension 2n-1 on the period, so the
minimax solution is characterised by an equioscillating residual at 2n
points; the exchange keeps a cyclically alternating reference of that
size and grows the leveled error monotonically.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ExchangeStall
from .trigpoly import TrigPolynomial

TWOPI = 2.0 * math.pi
_GOLD = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass
class AlternationCertificate:
    points: np.ndarray
    signs: np.ndarray
    leveled_error: float
    max_error: float


def _solve_reference(f_vals, xs, n, sigma):
    m = 2 * n
    cols = [np.full(m, 0.5)]
    for k in range(1, n):
        cols.append(np.cos(k * xs))
    for k in range(1, n):
        cols.append(np.sin(k * xs))
    cols.append(sigma.astype(np.float64))
    mat = np.stack(cols, axis=1)
    sol = np.linalg.solve(mat, f_vals)
    a0 = sol[0]
    ac = sol[1:n]
    bs = sol[n : 2 * n - 1]
    h = sol[-1]
    return TrigPolynomial(a0, ac, bs), h


def _golden_max(fun, a, b, iters=40):
    x1 = b - _GOLD * (b - a)
    x2 = a + _GOLD * (b - a)
    f1, f2 = fun(x1), fun(x2)
    for _ in range(iters):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLD * (b - a)
            f2 = fun(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLD * (b - a)
            f1 = fun(x1)
    return (a + b) / 2.0


def _local_extrema(res_fun, n, scan_hints):
    grid = np.linspace(0.0, TWOPI, 32 * n, endpoint=False)
    if scan_hints is not None:
        grid = np.unique(np.concatenate([grid, np.asarray(scan_hints) % TWOPI]))
    vals = res_fun(grid)
    absv = np.abs(vals)
    up = absv >= np.roll(absv, 1)
    down = absv >= np.roll(absv, -1)
    idx = np.nonzero(up & down)[0]
    # compress runs of equal |value| (flat plateaus): keep the leftmost
    keep = []
    for i in idx:
        if keep and i == keep[-1] + 1 and absv[i] == absv[keep[-1]]:
            continue
        keep.append(i)
    pts = []
    for i in keep:
        a = grid[i - 1] if i > 0 else grid[-1] - TWOPI
        b = grid[(i + 1) % grid.shape[0]]
        if b <= a:
            b += TWOPI
        flat = absv[i] == absv[i - 1] or absv[i] == absv[(i + 1) % grid.shape[0]]
        x = grid[i] if flat else _golden_max(lambda t: abs(float(res_fun(np.array([t]))[0])), a, b)
        pts.append(x % TWOPI)
    pts = np.unique(np.asarray(pts))
    rv = res_fun(pts)
    return pts, rv


def _alternating_subset(pts, rv, n):
    """Cyclically alternating 2n points, same-sign runs compressed to
    their largest member, weakest pairs dropped."""
    m = pts.shape[0]
    if m == 0:
        raise ExchangeStall("no residual extrema found")
    sgn = np.where(rv >= 0.0, 1, -1)
    order = list(range(m))
    # compress cyclic same-sign runs
    changed = True
    while changed and len(order) > 1:
        changed = False
        for i in range(len(order)):
            j = (i + 1) % len(order)
            if sgn[order[i]] == sgn[order[j]]:
                drop = i if abs(rv[order[i]]) < abs(rv[order[j]]) else j
                del order[drop]
                changed = True
                break
    while len(order) > 2 * n:
        mags = [abs(rv[o]) for o in order]
        i = int(np.argmin(mags))
        j = (i + 1) % len(order)
        jm = (i - 1) % len(order)
        drop2 = jm if abs(rv[order[jm]]) < abs(rv[order[j]]) else j
        for d in sorted({i, drop2}, reverse=True):
            del order[d]
    if len(order) < 2 * n:
        raise ExchangeStall(f"only {len(order)} alternating extrema for a 2n = {2*n} reference")
    sel = sorted(order, key=lambda o: pts[o])
    return pts[sel], rv[sel]


def best_trig_approx(f, n, tol=1e-8, max_rounds=100, scan_hints=None):
    """(best polynomial of degree <= n-1, E, certificate).

    ``f`` maps numpy arrays of points in [0, 2pi) to values and is the
    caller's contract to be continuous and periodic.  Convergence is the
    relative gap (max_error - leveled_error)/max_error < tol.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    xs = np.array([j * math.pi / n + math.pi / (2 * n) for j in range(2 * n)])
    sigma = np.array([(-1) ** j for j in range(2 * n)])
    fscale = float(np.max(np.abs(f(np.linspace(0.0, TWOPI, 64, endpoint=False)))))
    best = None
    h_prev = -math.inf
    stall = 0
    for _ in range(max_rounds):
        fx = np.asarray(f(xs), dtype=np.float64)
        p, h = _solve_reference(fx, xs, n, sigma)
        if h < 0:
            h, sigma = -h, -sigma

        def residual(t):
            return np.asarray(f(t), dtype=np.float64) - p(t)

        pts, rv = _local_extrema(residual, n, scan_hints)
        max_err = float(np.max(np.abs(rv)))
        gap = (max_err - abs(h)) / max_err if max_err > 0 else 0.0
        cert = AlternationCertificate(
            points=xs.copy(),
            signs=np.where(residual(xs) >= 0, 1, -1),
            leveled_error=abs(h),
            max_error=max_err,
        )
        best = (p, max_err, cert)
        if gap < tol or max_err <= 1e-13 * fscale + 1e-300:
            return best
        if abs(h) <= h_prev * (1.0 - 1e-12):
            stall += 1
            if stall >= 5:
                raise ExchangeStall("leveled error stopped increasing")
        else:
            stall = 0
        h_prev = abs(h)
        new_pts, new_rv = _alternating_subset(pts, rv, n)
        xs = new_pts
        sigma = np.where(new_rv >= 0, 1, -1)
    raise ExchangeStall(f"no convergence in {max_rounds} exchange rounds")


def verify_alternation(f, p: TrigPolynomial, cert: AlternationCertificate, rel_slack=1e-6):
    """Recheck the certificate against fresh residuals; (ok, diagnostic)."""
    r = np.asarray(f(cert.points), dtype=np.float64) - p(cert.points)
    s = np.where(r >= 0, 1, -1)
    if np.any(s[:-1] * s[1:] >= 0):
        return False, "residual signs do not alternate at the certificate points"
    slack = rel_slack * max(cert.max_error, 1e-300) + 1e-14
    if np.any(np.abs(r) < cert.leveled_error - slack):
        return False, "residual magnitude fell below the leveled error"
    if np.max(np.abs(r)) > cert.max_error + slack:
        return False, "residual magnitude exceeds the certified maximum"
    return True, None
