"""Upper incomplete gamma via continued fraction, in plain and log form.

Used to certify truncation remainders of sums of exp(-alpha*k^r): the
integral comparison gives

    sum_{k > K} exp(-alpha*k^r)  <=  Gamma(1/r, alpha*K^r) / (r * alpha^(1/r))

and the k-weighted analogue uses Gamma(2/r, .).  The log form keeps the
bound usable after multiplication by exp(+alpha*n^r) when working with
the rescaled kernel at large n.
"""

import math

from .errors import ToleranceUnreachable

_TINY = 1e-300
_MAX_ITER = 600


def upper_gamma_cf(a, x):
    """G(a, x) = Gamma(a, x) * exp(x) * x**(-a), by modified Lentz.

    Requires x >= a + 1.5 where the continued fraction converges fast.
    """
    if x < a + 1.5:
        raise ValueError(f"continued fraction needs x >= a + 1.5 (a={a}, x={x})")
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return h
    raise ToleranceUnreachable("incomplete gamma continued fraction did not converge")


def log_upper_gamma(a, x):
    """log Gamma(a, x) for x >= a + 1.5."""
    return -x + a * math.log(x) + math.log(upper_gamma_cf(a, x))


def upper_gamma(a, x):
    """Gamma(a, x) for x >= a + 1.5."""
    return math.exp(log_upper_gamma(a, x))
