"""Real trigonometric polynomials a0/2 + sum_k (a_k cos kx + b_k sin kx)."""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError


@dataclass
class TrigPolynomial:
    a0: float = 0.0
    cos_coeffs: np.ndarray = field(default_factory=lambda: np.zeros(0))
    sin_coeffs: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        self.cos_coeffs = np.asarray(self.cos_coeffs, dtype=np.float64)
        self.sin_coeffs = np.asarray(self.sin_coeffs, dtype=np.float64)
        if self.cos_coeffs.shape != self.sin_coeffs.shape:
            raise DomainError("cosine and sine coefficient arrays must have equal length")

    @property
    def degree(self):
        nz = np.nonzero((self.cos_coeffs != 0.0) | (self.sin_coeffs != 0.0))[0]
        return int(nz[-1] + 1) if nz.size else 0

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        out = np.full(x.shape, 0.5 * self.a0)
        m = self.cos_coeffs.shape[0]
        if m:
            k = np.arange(1, m + 1, dtype=np.float64)
            kx = k[:, None] * x[None, :]
            out += self.cos_coeffs @ np.cos(kx) + self.sin_coeffs @ np.sin(kx)
        return float(out[0]) if scalar else out

    def pad_to(self, m):
        c = np.zeros(m)
        s = np.zeros(m)
        c[: self.cos_coeffs.shape[0]] = self.cos_coeffs
        s[: self.sin_coeffs.shape[0]] = self.sin_coeffs
        return TrigPolynomial(self.a0, c, s)

    def __add__(self, other):
        m = max(self.cos_coeffs.shape[0], other.cos_coeffs.shape[0])
        a, b = self.pad_to(m), other.pad_to(m)
        return TrigPolynomial(a.a0 + b.a0, a.cos_coeffs + b.cos_coeffs, a.sin_coeffs + b.sin_coeffs)

    def __sub__(self, other):
        return self + (other * -1.0)

    def __mul__(self, c):
        return TrigPolynomial(self.a0 * c, self.cos_coeffs * c, self.sin_coeffs * c)

    __rmul__ = __mul__

    def shifted(self, tau):
        """The translate x -> value at (x - tau)."""
        m = self.cos_coeffs.shape[0]
        if not m:
            return TrigPolynomial(self.a0)
        k = np.arange(1, m + 1, dtype=np.float64)
        ck, sk = np.cos(k * tau), np.sin(k * tau)
        # cos k(x-tau) = cos kx cos k tau + sin kx sin k tau, etc.
        return TrigPolynomial(
            self.a0,
            self.cos_coeffs * ck - self.sin_coeffs * sk,
            self.cos_coeffs * sk + self.sin_coeffs * ck,
        )


def partial_sum(f: TrigPolynomial, n) -> TrigPolynomial:
    """Truncation to degree <= n-1 (the Fourier projection for polynomials)."""
    if n < 1:
        raise DomainError("n must be >= 1")
    m = min(n - 1, f.cos_coeffs.shape[0])
    return TrigPolynomial(f.a0, f.cos_coeffs[:m].copy(), f.sin_coeffs[:m].copy())


def random_trig_polynomial(rng, degree, scale=1.0, zero_mean=True):
    """Test helper: coefficients uniform in [-scale, scale]."""
    a0 = 0.0 if zero_mean else float(rng.uniform(-scale, scale))
    return TrigPolynomial(
        a0,
        rng.uniform(-scale, scale, degree),
        rng.uniform(-scale, scale, degree),
    )
