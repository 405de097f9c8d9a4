"""Series-kernel backend selection and grid helpers.

The compiled extension is preferred when importable; the numpy fallback
implements the same contracts.  Set LEBLAB_FORCE_FALLBACK=1 to pin the
fallback (used by the backend-parity tests and the benchmark).
"""

import os

import numpy as np

from . import _serieskernel_py as _py

if os.environ.get("LEBLAB_FORCE_FALLBACK"):
    _impl = _py
    BACKEND = "python"
else:
    try:
        from . import _serieskernel as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _py
        BACKEND = "python"

_TWOPI = 2.0 * np.pi
_table_cache = {}


def backend_name():
    return BACKEND


def eval_cs(coeffs, k0, ts, resync=32):
    """(sum_j c_j cos((k0+j)t), sum_j c_j sin((k0+j)t)) at each t."""
    coeffs = np.ascontiguousarray(coeffs, dtype=np.float64)
    ts = np.ascontiguousarray(ts, dtype=np.float64)
    out_c = np.empty(ts.shape[0])
    out_s = np.empty(ts.shape[0])
    _impl.eval_cs(coeffs, float(k0), ts, out_c, out_s, resync)
    return out_c, out_s


def grid_points(m):
    """Canonical uniform grid t_l = 2 pi l / m."""
    return _TWOPI * (np.arange(m, dtype=np.float64) / m)


def _tables(m):
    tabs = _table_cache.get(m)
    if tabs is None:
        ang = grid_points(m)
        tabs = (np.cos(ang), np.sin(ang))
        if len(_table_cache) > 8:
            _table_cache.clear()
        _table_cache[m] = tabs
    return tabs


def fold_coeffs(coeffs, k0, m):
    """Alias-fold coefficients of cos(k t)/sin(k t) onto indices k mod m.

    Exact on the canonical m-point grid: cos((q + j m) t_l) = cos(q t_l).
    """
    idx = (k0 + np.arange(coeffs.shape[0], dtype=np.int64)) % m
    return np.bincount(idx, weights=coeffs, minlength=m)


def folded_grid_cs(cfold, m=None):
    """Evaluate a folded coefficient array on the canonical grid."""
    cfold = np.ascontiguousarray(cfold, dtype=np.float64)
    m = cfold.shape[0] if m is None else m
    costab, sintab = _tables(m)
    out_c = np.empty(m)
    out_s = np.empty(m)
    _impl.folded_grid_cs(cfold, costab, sintab, out_c, out_s)
    return out_c, out_s


def grid_cs(coeffs, k0, m):
    """(C, S) of the series on the canonical m-point grid.

    Folding costs O(m^2) in the table walk and pays off only when the
    series is longer than the grid; short series go point-batch.
    """
    if coeffs.shape[0] >= m:
        return folded_grid_cs(fold_coeffs(coeffs, int(k0), m), m)
    return eval_cs(coeffs, k0, grid_points(m))
