"""Truncated power series on the unit disc and the explicit constructions.

A :class:`PowerSeries` is an immutable vector of Taylor coefficients.  All
transformations are exact on coefficients; evaluation on circles goes through
a zero-padded inverse FFT so that trapezoidal means of ``|f|^p`` are free of
quadrature error whenever the sample count resolves the truncation degree.

Constructors that drop an infinite tail attach a certified ``tail_bound`` so
experiments can check that the truncation does not pollute their claims.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.signal import fftconvolve
from scipy.special import gammaln

from .weights import LOG2, PhiSpec, dyadic_radius

DEFAULT_MAX_DEGREE = 1 << 16
# beyond this the dense coefficient vector / FFT buffers stop being desk scale
HARD_DEGREE_CAP = 1 << 24

_DIRECT_CONV_LIMIT = 1 << 21  # use exact O(n*m) convolution below this work size


class DegreeOverflowError(ValueError):
    """Requested construction exceeds the configured truncation degree."""


@dataclass(frozen=True, eq=False)
class PowerSeries:
    """Finite Taylor series sum_k coeffs[k] z^k with metadata from its constructor."""

    coeffs: np.ndarray
    tail_bound: float | None = field(default=None, compare=False)

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(c.view(float))):
            raise ValueError("coefficients must be finite")
        c = c.copy()
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, z):
        return self.evaluate(z)

    def evaluate(self, z):
        """Horner evaluation at scalar or array arguments inside the disc."""
        return npoly.polyval(np.asarray(z, dtype=complex), self.coeffs)

    def derivative(self) -> "PowerSeries":
        if self.coeffs.size == 1:
            return PowerSeries(np.zeros(1, dtype=complex))
        k = np.arange(1, self.coeffs.size)
        return PowerSeries(self.coeffs[1:] * k)

    def primitive(self) -> "PowerSeries":
        """Termwise antiderivative with value 0 at the origin."""
        k = np.arange(1, self.coeffs.size + 1)
        return PowerSeries(np.concatenate([[0.0 + 0.0j], self.coeffs / k]))

    def dilate(self, r: float) -> "PowerSeries":
        """Coefficients of z -> f(r z); exact composition of dilations."""
        if not 0.0 <= r < 1.0:
            raise ValueError("dilation radius must lie in [0, 1)")
        return PowerSeries(self.coeffs * r ** np.arange(self.coeffs.size))

    def truncate(self, degree: int) -> "PowerSeries":
        if degree >= self.degree:
            return self
        return PowerSeries(self.coeffs[: degree + 1])

    # linear structure -------------------------------------------------------
    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = max(self.coeffs.size, other.coeffs.size)
        out = np.zeros(n, dtype=complex)
        out[: self.coeffs.size] += self.coeffs
        out[: other.coeffs.size] += other.coeffs
        return PowerSeries(out)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + (-1.0) * other

    def __mul__(self, scalar) -> "PowerSeries":
        return PowerSeries(self.coeffs * complex(scalar))

    __rmul__ = __mul__

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"PowerSeries(degree={self.degree}, tail_bound={self.tail_bound})"


@dataclass(frozen=True)
class TestFnParams:
    """Parameters of the boundary bump F(z) = ((1-|a|^2)/(1-conj(a) z))^{(1+gamma)/p}."""

    a: complex
    p: float
    gamma: float

    def __post_init__(self):
        if not 0.0 < abs(self.a) < 1.0:
            raise ValueError("base point must satisfy 0 < |a| < 1")
        if self.p <= 0.0 or self.gamma <= 0.0:
            raise ValueError("p and gamma must be positive")

    @property
    def s(self) -> float:
        return (1.0 + self.gamma) / self.p


@dataclass(frozen=True)
class SpaceParams:
    """Exponents (p, q, alpha) of the function spaces under study."""

    p: float
    q: float | None = None
    alpha: float = -0.5

    def __post_init__(self):
        if self.p <= 0.0 or (self.q is not None and self.q <= 0.0):
            raise ValueError("integrability exponents must be positive")
        if self.alpha <= -1.0:
            raise ValueError("weight exponent must exceed -1")


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def monomial(n: int, coefficient: complex = 1.0) -> PowerSeries:
    if n < 0:
        raise ValueError("monomial degree must be >= 0")
    c = np.zeros(n + 1, dtype=complex)
    c[n] = coefficient
    return PowerSeries(c)


def geometric(a: complex, degree: int) -> PowerSeries:
    """Truncation of 1/(1 - a z)."""
    if abs(a) >= 1.0:
        raise ValueError("geometric ratio must satisfy |a| < 1")
    return PowerSeries(np.asarray(a, dtype=complex) ** np.arange(degree + 1))


def log_reciprocal(degree: int) -> PowerSeries:
    """Truncation of log(1/(1-z)) = sum_{k>=1} z^k / k."""
    c = np.zeros(degree + 1, dtype=complex)
    c[1:] = 1.0 / np.arange(1, degree + 1)
    return PowerSeries(c)


def one_minus_z_power(beta: float, degree: int) -> PowerSeries:
    """Truncation of (1-z)^beta via the exact binomial recurrence."""
    c = np.zeros(degree + 1, dtype=complex)
    c[0] = 1.0
    val = 1.0
    for k in range(1, degree + 1):
        val *= (k - 1.0 - beta) / k
        c[k] = val
    return PowerSeries(c)


def test_function(params: TestFnParams, degree: int) -> PowerSeries:
    """Binomial series of ((1-|a|^2)/(1-conj(a) z))^s, s = (1+gamma)/p.

    Coefficient magnitudes are assembled in log space (log-gamma differences,
    exponentiated last) so that s need not be an integer and the degree can
    reach the full truncation cap without overflow.  The attached tail bound
    dominates sum_{k>degree} |c_k| |a|^k, the dropped mass at |z| = |a| where
    the function peaks.
    """
    a = complex(params.a)
    s = params.s
    aa = abs(a)
    k = np.arange(degree + 1, dtype=float)
    logmag = (
        s * math.log1p(-aa * aa)
        + gammaln(s + k)
        - gammaln(s)
        - gammaln(k + 1.0)
        + k * math.log(aa)
    )
    phase = np.exp(-1j * k * np.angle(a))
    coeffs = np.exp(logmag) * phase
    # ratio of consecutive terms of sum |c_k| |a|^k is |a|^2 (s+k)/(k+1)
    rho = aa * aa * (s + degree + 1.0) / (degree + 2.0)
    if rho < 1.0:
        first = math.exp(
            s * math.log1p(-aa * aa)
            + float(gammaln(s + degree + 1.0))
            - float(gammaln(s))
            - float(gammaln(degree + 2.0))
            + 2.0 * (degree + 1.0) * math.log(aa)
        )
        tail = first / (1.0 - rho)
    else:
        tail = math.inf
    return PowerSeries(coeffs, tail_bound=tail)


def lacunary_from_phi(
    phi: PhiSpec, p: float, big_k: int, max_degree: int | None = None
) -> PowerSeries:
    """Lacunary series sum_{k=1}^{K} ((h(r_k)-h(r_{k-1}))/phi(r_k))^{1/p} z^{2^k}.

    Here h = log(phi) and r_k = 1 - 2^{-k}.  The tail bound is on the p-th
    power of the weighted-Dirichlet norm of the dropped terms,
    sum_{k>K} (h(r_k)-h(r_{k-1}))/phi(r_k) <= 1/phi(r_K).
    """
    if p <= 0.0:
        raise ValueError("p must be positive")
    if big_k < 1:
        raise ValueError("need at least one lacunary term")
    phi.validate()
    cap = DEFAULT_MAX_DEGREE if max_degree is None else int(max_degree)
    if cap > HARD_DEGREE_CAP:
        raise DegreeOverflowError(f"truncation degree cap exceeds {HARD_DEGREE_CAP}")
    if (1 << big_k) > cap:
        raise DegreeOverflowError(
            f"lacunary index 2^{big_k} exceeds the configured max degree {cap}"
        )
    ks = np.arange(0, big_k + 1, dtype=float)
    h = phi.log_phi_of_u(1.0 + ks * LOG2)
    phis = phi.phi_of_u(1.0 + ks[1:] * LOG2)
    amps = ((h[1:] - h[:-1]) / phis) ** (1.0 / p)
    coeffs = np.zeros((1 << big_k) + 1, dtype=complex)
    coeffs[1 << np.arange(1, big_k + 1)] = amps
    tail = 1.0 / float(phi.phi(dyadic_radius(big_k)))
    return PowerSeries(coeffs, tail_bound=tail)


def counterexample_symbol(
    alpha: float, big_j: int, max_degree: int | None = None
) -> PowerSeries:
    """Partial sum of sum_{j>=1} z^{2^{2^j}} / ((j+1) (log(j+1))^alpha).

    The displayed series formally starts at j=0 where log(j+1) vanishes; the
    sum here starts at j=1, matching the divergence display.  Tail bound is
    on sum_{j>J} of the absolute coefficients (sup-norm error on the closed
    disc), via the integral estimate (log(J+1))^{1-alpha}/(alpha-1).
    """
    if alpha <= 1.0:
        raise ValueError("alpha must exceed 1 for an absolutely summable symbol")
    if big_j < 0:
        raise ValueError("partial-sum index must be >= 0")
    cap = DEFAULT_MAX_DEGREE if max_degree is None else int(max_degree)
    if big_j >= 1 and 2 ** (2**big_j) > cap:
        raise DegreeOverflowError(
            f"frequency 2^(2^{big_j}) exceeds the configured max degree {cap}"
        )
    if big_j == 0:
        return PowerSeries(np.zeros(1, dtype=complex), tail_bound=None)
    n = 2 ** (2**big_j) + 1
    coeffs = np.zeros(n, dtype=complex)
    for j in range(1, big_j + 1):
        coeffs[2 ** (2**j)] = 1.0 / ((j + 1) * math.log(j + 1) ** alpha)
    tail = math.log(big_j + 1) ** (1.0 - alpha) / (alpha - 1.0)
    return PowerSeries(coeffs, tail_bound=tail)


# ---------------------------------------------------------------------------
# bilinear / evaluation machinery
# ---------------------------------------------------------------------------


def cauchy_product(f: PowerSeries, g: PowerSeries, max_degree: int | None = None) -> PowerSeries:
    """Coefficient convolution of f and g, truncated at the configured degree."""
    cap = DEFAULT_MAX_DEGREE if max_degree is None else int(max_degree)
    a, b = f.coeffs, g.coeffs
    if a.size * b.size <= _DIRECT_CONV_LIMIT:
        full = np.convolve(a, b)
    else:
        full = fftconvolve(a, b)
    return PowerSeries(full[: cap + 1])


def next_power_of_two(n: int) -> int:
    return 1 << max(2, (int(n) - 1).bit_length())


def evaluate_on_circle(f: PowerSeries, r: float, m: int | None = None) -> np.ndarray:
    """Values f(r e^{2 pi i j/m}), j = 0..m-1, by inverse FFT of dilated coefficients.

    m must be a power of two; it is doubled automatically until it reaches
    2*(degree+1), the anti-aliasing floor that makes the p=2 circle means
    exact.  Deterministic for fixed inputs.
    """
    if not 0.0 <= r < 1.0:
        raise ValueError("circle radius must lie in [0, 1)")
    floor = 2 * (f.degree + 1)
    if m is None:
        m = next_power_of_two(floor)
    else:
        m = int(m)
        if m < 2 or m & (m - 1):
            raise ValueError("sample count must be a power of two")
        while m < floor:
            m *= 2
    if m > (1 << 26):
        raise DegreeOverflowError("sample count beyond desk scale")
    padded = np.zeros(m, dtype=complex)
    padded[: f.coeffs.size] = f.coeffs * r ** np.arange(f.coeffs.size)
    return np.fft.ifft(padded) * m


def parseval_mean_square(f: PowerSeries, r: float) -> float:
    """Exact circle mean of |f|^2 at radius r: sum |a_k|^2 r^{2k}."""
    mags = np.abs(f.coeffs) ** 2 * (float(r) ** (2 * np.arange(f.coeffs.size)))
    return float(math.fsum(mags.tolist()))
