"""Fixed-order Gauss-Legendre panels with level-synchronous adaptive bisection.

All panels active at a refinement level are evaluated in one batched
call, which keeps the certified series evaluations amortised.
"""

import numpy as np

from .errors import QuadratureStall

GL_ORDER = 32
_nodes, _weights = np.polynomial.legendre.leggauss(GL_ORDER)


def gl_batch(fbatch, a, b):
    """Gauss-Legendre integrals over panels [a_i, b_i], one batched call."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    pts = mid[:, None] + half[:, None] * _nodes[None, :]
    vals = fbatch(pts.ravel()).reshape(pts.shape)
    return half * (vals @ _weights)


def integrate_pieces(fbatch, edges, piece_tol, max_depth=26):
    """Adaptive integrals over consecutive [edges[i], edges[i+1]] pieces.

    A panel is accepted when splitting it changes its value by at most
    its width-proportional share of ``piece_tol``.  Returns per-piece
    totals and accumulated split-difference error estimates.
    """
    edges = np.asarray(edges, dtype=np.float64)
    npieces = edges.shape[0] - 1
    widths = np.diff(edges)
    totals = np.zeros(npieces)
    errs = np.zeros(npieces)
    a = edges[:-1].copy()
    b = edges[1:].copy()
    idx = np.arange(npieces)
    coarse = gl_batch(fbatch, a, b)
    for depth in range(max_depth + 1):
        mid = 0.5 * (a + b)
        left = gl_batch(fbatch, a, mid)
        right = gl_batch(fbatch, mid, b)
        fine = left + right
        est = np.abs(fine - coarse)
        budget = piece_tol * (b - a) / widths[idx]
        # roundoff floor: splitting cannot certify below the noise of the
        # panel values themselves
        floor = 4e-16 * (np.abs(left) + np.abs(right) + np.abs(coarse)) + 1e-300
        done = (est <= np.maximum(budget, floor)) | ((b - a) <= 1e-13 * widths[idx])
        if (depth == max_depth or a.shape[0] > (1 << 20)) and not done.all():
            raise QuadratureStall(f"adaptive refinement stalled at depth {depth}")
        np.add.at(totals, idx[done], fine[done])
        np.add.at(errs, idx[done], est[done])
        if done.all():
            break
        keep = ~done
        a = np.concatenate([a[keep], mid[keep]])
        b = np.concatenate([mid[keep], b[keep]])
        idx = np.concatenate([idx[keep], idx[keep]])
        coarse = np.concatenate([left[keep], right[keep]])
    return totals, errs


def integrate(fbatch, a, b, tol, max_depth=26):
    """Adaptive integral over a single interval."""
    totals, errs = integrate_pieces(fbatch, [a, b], tol, max_depth)
    return float(totals[0]), float(errs[0])
