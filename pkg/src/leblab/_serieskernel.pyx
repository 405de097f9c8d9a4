# cython: language_level=3
"""Compiled hot kernels for certified trigonometric series evaluation.

Two inner loops dominate the library's runtime:

* ``eval_cs`` -- batch evaluation of C(t) = sum_j c_j cos((k0+j) t) and
  S(t) = sum_j c_j sin((k0+j) t) by a unit-rotation recurrence.  The
  rotation is resynchronised every ``resync`` steps from an exactly
  reduced angle (double-double k*t mod 2pi), and the accumulators are
  Kahan-compensated, so the rounding floor stays near u * sum|c|
  independent of the term count.

* ``folded_grid_cs`` -- evaluation of a modulus-folded coefficient
  array on the canonical uniform grid t_l = 2 pi l / M.  Only integer
  index arithmetic and table lookups appear in the inner loop.
"""

from libc.math cimport cos, sin, round as c_round

cdef double TWOPI_HI = 6.283185307179586
cdef double TWOPI_LO = 2.4492935982947064e-16
cdef double SPLITTER = 134217729.0

cdef double _tc = SPLITTER * TWOPI_HI
cdef double TPH_HI = _tc - (_tc - TWOPI_HI)
cdef double TPH_LO = TWOPI_HI - TPH_HI


cdef inline double mod2pi(double k, double t) nogil:
    """(k * t) mod 2pi with the product formed exactly in double-double."""
    cdef double p = k * t
    cdef double kc = SPLITTER * k
    cdef double khi = kc - (kc - k)
    cdef double klo = k - khi
    cdef double tc = SPLITTER * t
    cdef double thi = tc - (tc - t)
    cdef double tlo = t - thi
    cdef double e = ((khi * thi - p) + khi * tlo + klo * thi) + klo * tlo
    cdef double q = c_round(p / TWOPI_HI)
    cdef double qc = SPLITTER * q
    cdef double qhi = qc - (qc - q)
    cdef double qlo = q - qhi
    cdef double ph = q * TWOPI_HI
    cdef double pe = ((qhi * TPH_HI - ph) + qhi * TPH_LO + qlo * TPH_HI) + qlo * TPH_LO
    return ((p - ph) - pe) + e - q * TWOPI_LO


def eval_cs(double[::1] coeffs, double k0, double[::1] ts,
            double[::1] out_c, double[::1] out_s, int resync=32):
    cdef Py_ssize_t nterm = coeffs.shape[0]
    cdef Py_ssize_t npts = ts.shape[0]
    cdef Py_ssize_t p, j
    cdef int cnt
    cdef double t, ct, st, cr, ci, tmp, val, y
    cdef double acc_c, acc_s, comp_c, comp_s, ang
    if resync < 1:
        resync = 32
    with nogil:
        for p in range(npts):
            t = ts[p]
            ang = mod2pi(1.0, t)
            ct = cos(ang)
            st = sin(ang)
            ang = mod2pi(k0, t)
            cr = cos(ang)
            ci = sin(ang)
            acc_c = 0.0
            comp_c = 0.0
            acc_s = 0.0
            comp_s = 0.0
            cnt = 0
            for j in range(nterm):
                val = coeffs[j]
                y = val * cr - comp_c
                tmp = acc_c + y
                comp_c = (tmp - acc_c) - y
                acc_c = tmp
                y = val * ci - comp_s
                tmp = acc_s + y
                comp_s = (tmp - acc_s) - y
                acc_s = tmp
                cnt += 1
                if cnt == resync:
                    cnt = 0
                    ang = mod2pi(k0 + j + 1, t)
                    cr = cos(ang)
                    ci = sin(ang)
                else:
                    tmp = cr * ct - ci * st
                    ci = cr * st + ci * ct
                    cr = tmp
            out_c[p] = acc_c
            out_s[p] = acc_s


def folded_grid_cs(double[::1] cfold, double[::1] costab, double[::1] sintab,
                   double[::1] out_c, double[::1] out_s):
    cdef Py_ssize_t m = cfold.shape[0]
    cdef Py_ssize_t l, i, q
    cdef double acc_c, acc_s, comp_c, comp_s, val, y, tmp
    with nogil:
        for l in range(m):
            q = 0
            acc_c = 0.0
            comp_c = 0.0
            acc_s = 0.0
            comp_s = 0.0
            for i in range(m):
                val = cfold[i]
                y = val * costab[q] - comp_c
                tmp = acc_c + y
                comp_c = (tmp - acc_c) - y
                acc_c = tmp
                y = val * sintab[q] - comp_s
                tmp = acc_s + y
                comp_s = (tmp - acc_s) - y
                acc_s = tmp
                q += l
                if q >= m:
                    q -= m
            out_c[l] = acc_c
            out_s[l] = acc_s
