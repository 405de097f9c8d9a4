"""Pure-numpy fallback for the compiled series kernels.

Same contracts as the Cython module.  Point batches are evaluated by a
blocked scheme k = k0 + b*S + a, so the bulk of the work lands in two
real matrix products; the per-block phase factors are built from
exactly reduced angles (vectorised double-double k*t mod 2pi).
"""

import numpy as np

_TWOPI_HI = 6.283185307179586
_TWOPI_LO = 2.4492935982947064e-16
_SPLITTER = 134217729.0

_tc = _SPLITTER * _TWOPI_HI
_TPH_HI = _tc - (_tc - _TWOPI_HI)
_TPH_LO = _TWOPI_HI - _TPH_HI


def _mod2pi(k, t):
    """(k * t) mod 2pi, elementwise with broadcasting, product split exact."""
    k = np.asarray(k, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    p = k * t
    kc = _SPLITTER * k
    khi = kc - (kc - k)
    klo = k - khi
    tc = _SPLITTER * t
    thi = tc - (tc - t)
    tlo = t - thi
    e = ((khi * thi - p) + khi * tlo + klo * thi) + klo * tlo
    q = np.round(p / _TWOPI_HI)
    qc = _SPLITTER * q
    qhi = qc - (qc - q)
    qlo = q - qhi
    ph = q * _TWOPI_HI
    pe = ((qhi * _TPH_HI - ph) + qhi * _TPH_LO + qlo * _TPH_HI) + qlo * _TPH_LO
    return ((p - ph) - pe) + e - q * _TWOPI_LO


def _block_size(nterm):
    s = 1
    while s * s < nterm:
        s *= 2
    return min(max(s, 32), 4096)


def eval_cs(coeffs, k0, ts, out_c, out_s, resync=32):
    nterm = coeffs.shape[0]
    npts = ts.shape[0]
    if nterm == 0 or npts == 0:
        out_c[:] = 0.0
        out_s[:] = 0.0
        return
    s = _block_size(nterm)
    nb = -(-nterm // s)
    cmat = np.zeros((nb, s))
    cmat.ravel()[:nterm] = coeffs
    a = np.arange(s, dtype=np.float64)[:, None]
    b = k0 + s * np.arange(nb, dtype=np.float64)[:, None]
    chunk = max(64, (1 << 21) // s)
    for lo in range(0, npts, chunk):
        tc = ts[lo : lo + chunk]
        ang_in = _mod2pi(a, tc[None, :])
        ein_c = np.cos(ang_in)
        ein_s = np.sin(ang_in)
        inner_c = cmat @ ein_c
        inner_s = cmat @ ein_s
        ang_out = _mod2pi(b, tc[None, :])
        eout_c = np.cos(ang_out)
        eout_s = np.sin(ang_out)
        # sum_k c_k e^{ikt} = sum_b e^{i(k0+bS)t} * inner_b
        sl = slice(lo, lo + len(tc))
        out_c[sl] = np.einsum("bp,bp->p", eout_c, inner_c)
        out_c[sl] -= np.einsum("bp,bp->p", eout_s, inner_s)
        out_s[sl] = np.einsum("bp,bp->p", eout_c, inner_s)
        out_s[sl] += np.einsum("bp,bp->p", eout_s, inner_c)


def folded_grid_cs(cfold, costab, sintab, out_c, out_s):
    # costab/sintab unused here: the blocked evaluator on the canonical
    # grid is faster in numpy than an index-gather table walk
    m = cfold.shape[0]
    ts = _TWOPI_HI * (np.arange(m, dtype=np.float64) / m)
    eval_cs(cfold, 0.0, ts, out_c, out_s)
