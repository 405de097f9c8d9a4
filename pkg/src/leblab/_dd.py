"""Double-double (compensated) arithmetic on (hi, lo) float pairs.

Provides ~31 significant digits, enough to survive the catastrophic
cancellation in high-order alternating differences of near-equal
exponentials.  Only the operations the library needs are implemented:
ring ops, division, and exp/ln/pow on the restricted domains that
arise from e^(-alpha*k^r) with k a positive integer.
"""

import math

_SPLITTER = 134217729.0  # 2**27 + 1

LN2 = (0.6931471805599453, 2.3190468138462996e-17)
TWOPI = (6.283185307179586, 2.4492935982947064e-16)


def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def quick_two_sum(a, b):
    # assumes |a| >= |b|
    s = a + b
    return s, b - (s - a)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ahi, alo = _split(a)
    bhi, blo = _split(b)
    return p, ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo


def dd_add(x, y):
    s, e = two_sum(x[0], y[0])
    t, f = two_sum(x[1], y[1])
    e += t
    s, e = quick_two_sum(s, e)
    e += f
    return quick_two_sum(s, e)


def dd_neg(x):
    return (-x[0], -x[1])


def dd_sub(x, y):
    return dd_add(x, dd_neg(y))


def dd_mul(x, y):
    p, e = two_prod(x[0], y[0])
    e += x[0] * y[1] + x[1] * y[0]
    return quick_two_sum(p, e)


def dd_mul_d(x, a):
    p, e = two_prod(x[0], a)
    e += x[1] * a
    return quick_two_sum(p, e)


def dd_div(x, y):
    q1 = x[0] / y[0]
    r = dd_sub(x, dd_mul_d(y, q1))
    q2 = r[0] / y[0]
    r = dd_sub(r, dd_mul_d(y, q2))
    q3 = r[0] / y[0]
    s, e = quick_two_sum(q1, q2)
    return dd_add((s, e), (q3, 0.0))


def dd_div_d(x, a):
    """x / a with a an exact float divisor (1/a rounded would lose digits)."""
    return dd_div(x, (a, 0.0))


def from_float(a):
    return (float(a), 0.0)


def to_float(x):
    return x[0] + x[1]


def dd_ldexp(x, m):
    return (math.ldexp(x[0], m), math.ldexp(x[1], m))


def dd_exp(x):
    """exp(x) for x in roughly [-750, 50]; returns (0.0, 0.0) on deep underflow."""
    if x[0] < -745.0:
        return (0.0, 0.0)
    m = round(x[0] / LN2[0])
    s = dd_sub(x, dd_mul_d(LN2, float(m)))
    # Taylor on |s| <= ln2/2
    term = (1.0, 0.0)
    acc = (1.0, 0.0)
    for j in range(1, 26):
        term = dd_div_d(dd_mul(term, s), float(j))
        acc = dd_add(acc, term)
        if abs(term[0]) < 1e-35 * abs(acc[0]):
            break
    return dd_ldexp(acc, m)


def dd_ln(a):
    """ln(a) for a finite positive float."""
    if a <= 0.0:
        raise ValueError("dd_ln requires a > 0")
    f, e = math.frexp(a)  # a = f * 2**e, f in [0.5, 1)
    # ln a = e*ln2 + 2*atanh(z), z = (f-1)/(f+1), |z| <= 1/3
    z = dd_div(from_float(f - 1.0), from_float(f + 1.0))
    z2 = dd_mul(z, z)
    term = z
    acc = z
    for j in range(1, 40):
        term = dd_mul(term, z2)
        contrib = dd_div_d(term, float(2 * j + 1))
        acc = dd_add(acc, contrib)
        if acc[0] != 0.0 and abs(contrib[0]) < 1e-35 * abs(acc[0]):
            break
    acc = dd_mul_d(acc, 2.0)
    return dd_add(dd_mul_d(LN2, float(e)), acc)


def dd_pow(a, r):
    """a**r for a positive float, r float."""
    return dd_exp(dd_mul_d(dd_ln(a), r))
