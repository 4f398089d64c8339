"""Integral means and the function-space norms of the disc laboratory.

Circle means are trapezoidal (equivalently rectangle, by periodicity) on FFT
sample grids, exact for p = 2 once the sample count resolves the truncation
degree.  Radial integrals run on the geometric grid r_k = 1 - 2^{-k} with a
configurable number of sub-steps per dyadic ring, uniform in the boundary
coordinate u = log(e/(1-r)).  Two-dimensional quantities (Carleson boxes of
|g'|^2 (1-|z|^2) dA, Stolz-angle square functions) are assembled from angular
prefix integrals so that box windows of any width cost O(1) per ring.

All numbers here use the normalized area measure dA = dx dy / pi and the
normalized boundary measure; boundary averages are plain means over the
sample grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import simpson

from .series import PowerSeries, evaluate_on_circle, next_power_of_two
from .weights import LOG2, r_of_u, u_of_r


class AliasingError(RuntimeError):
    """Raised when circle means violate monotonicity beyond tolerance."""


@dataclass(frozen=True)
class RadialScheme:
    """Radial/angular resolution: dyadic depth, FFT angle count, sub-steps per ring."""

    depth: int = 12
    angular_m: int = 256
    refinement: int = 4

    def __post_init__(self):
        if self.depth < 1 or self.refinement < 1:
            raise ValueError("depth and refinement must be >= 1")
        if self.angular_m < 4:
            raise ValueError("angular sample count must be >= 4")

    def u_nodes(self) -> np.ndarray:
        """u-grid from the disc centre (u=1) to depth, ``refinement`` nodes per ring."""
        n = self.depth * self.refinement
        return 1.0 + np.arange(n + 1) * (LOG2 / self.refinement)

    def radii(self) -> np.ndarray:
        return r_of_u(self.u_nodes())

    def dyadic_radii(self) -> np.ndarray:
        return 1.0 - 2.0 ** (-np.arange(1, self.depth + 1, dtype=float))


@dataclass(frozen=True)
class StolzParams:
    """Nontangential approach region {z : |1 - conj(zeta) z| < sigma (1-|z|)}."""

    sigma: float = 2.0
    vertex_cutoff: float = 1e-6

    def __post_init__(self):
        if self.sigma <= 1.0:
            raise ValueError("aperture must exceed 1")
        if not 0.0 < self.vertex_cutoff < 1.0:
            raise ValueError("vertex cutoff must lie in (0, 1)")


@dataclass(frozen=True)
class GrowthFit:
    """Least-squares slope of a log-log growth curve over a window of levels."""

    window: tuple[int, int]
    slope: float
    intercept: float
    max_residual: float

    def __post_init__(self):
        if self.window[1] < self.window[0]:
            raise ValueError("fit window is empty")
        if self.max_residual < 0.0:
            raise ValueError("residual must be nonnegative")


def fit_loglog(levels: np.ndarray, x: np.ndarray, y: np.ndarray) -> GrowthFit:
    if len(x) < 3:
        raise ValueError("fit window too small; need at least 3 levels")
    slope, intercept = np.polyfit(x, y, 1)
    res = float(np.max(np.abs(y - (slope * x + intercept))))
    return GrowthFit(
        window=(int(levels[0]), int(levels[-1])),
        slope=float(slope),
        intercept=float(intercept),
        max_residual=res,
    )


# ---------------------------------------------------------------------------
# circle means
# ---------------------------------------------------------------------------


def integral_mean(f: PowerSeries, p: float, r: float, m: int | None = None) -> float:
    """M_p(r, f): the L^p average of f over the circle of radius r.

    Rectangle-rule quadrature of (1/2pi) int |f(r e^{i theta})|^p dtheta on m
    uniform angles; m is raised to the anti-aliasing floor automatically.
    """
    if p <= 0.0:
        raise ValueError("p must be positive")
    vals = np.abs(evaluate_on_circle(f, r, m))
    return float(np.mean(vals**p) ** (1.0 / p))


def sup_mean(f: PowerSeries, r: float, m: int | None = None, refine_rounds: int = 2) -> float:
    """M_inf(r, f): max of |f| on the circle, grid max plus local refinement.

    The returned value is a lower bound for the true maximum with grid
    resolution ~ (2 pi / m) / 16^rounds around the coarse argmax.
    """
    vals = np.abs(evaluate_on_circle(f, r, m))
    m_eff = vals.size
    j = int(np.argmax(vals))
    best = float(vals[j])
    lo = 2.0 * math.pi * (j - 1) / m_eff
    hi = 2.0 * math.pi * (j + 1) / m_eff
    for _ in range(refine_rounds):
        theta = np.linspace(lo, hi, 33)
        local = np.abs(f.evaluate(r * np.exp(1j * theta)))
        i = int(np.argmax(local))
        best = max(best, float(local[i]))
        width = (hi - lo) / 16.0
        lo, hi = theta[i] - width, theta[i] + width
    return best


class HardyNorm(NamedTuple):
    """Dyadic means M_p(r_k, f) and the resulting norm estimate (last mean)."""

    means: np.ndarray
    value: float
    parseval: float | None = None


def hardy_norm(f: PowerSeries, p: float, scheme: RadialScheme = RadialScheme()) -> HardyNorm:
    """H^p norm estimate: nondecreasing means along r_k = 1-2^{-k}, last entry.

    Raises :class:`AliasingError` when the computed means decrease beyond a
    1e-9 relative tolerance, the signature of an under-resolved circle grid.
    For p = 2 the exact Parseval value of the truncation is attached.
    """
    radii = scheme.dyadic_radii()
    means = np.array([integral_mean(f, p, r, scheme.angular_m) for r in radii])
    drops = means[1:] < means[:-1] * (1.0 - 1e-9)
    if np.any(drops):
        k = int(np.argmax(drops)) + 1
        raise AliasingError(
            f"circle means decreased at level {k + 1}; raise angular_m"
        )
    parseval = None
    if p == 2.0:
        parseval = math.sqrt(
            math.fsum((np.abs(f.coeffs) ** 2).tolist())
        )
    return HardyNorm(means=means, value=float(means[-1]), parseval=parseval)


@dataclass(frozen=True)
class DirichletDetail:
    """Quadrature report for the weighted Dirichlet functional."""

    value: float
    integral: float
    origin_term: float
    tail_bound: float
    converged: bool


def dirichlet_norm_detail(
    f: PowerSeries, p: float, alpha: float, scheme: RadialScheme = RadialScheme()
) -> DirichletDetail:
    """int_D |f'|^p (1-|z|^2)^alpha dA + |f(0)|^p with a certified tail bound.

    The radial integral 2 int r M_p(r, f')^p (1-r^2)^alpha dr runs on the
    scheme's u-grid (Simpson).  The one-sided remainder beyond the deepest
    ring is bounded through the monotonicity of M_p by
    (sum_k |f'_k|)^p (1-r_max^2)^{alpha+1}/(alpha+1).
    """
    if p <= 0.0 or alpha <= -1.0:
        raise ValueError("need p > 0 and alpha > -1")
    fp = f.derivative()
    u = scheme.u_nodes()
    r = r_of_u(u)
    mp = np.array([integral_mean(fp, p, rr, scheme.angular_m) for rr in r])
    integrand = 2.0 * r * mp**p * (1.0 - r * r) ** alpha * np.exp(1.0 - u)
    integral = float(simpson(integrand, x=u))
    origin = abs(f.coeffs[0]) ** p
    coef_l1 = math.fsum(np.abs(fp.coeffs).tolist())
    r_max = float(r[-1])
    tail = coef_l1**p * (1.0 - r_max * r_max) ** (alpha + 1.0) / (alpha + 1.0)
    value = integral + origin
    converged = tail <= 1e-3 * max(value, 1e-300) or tail == 0.0
    return DirichletDetail(
        value=value,
        integral=integral,
        origin_term=float(origin),
        tail_bound=tail,
        converged=converged,
    )


def dirichlet_norm(
    f: PowerSeries, p: float, alpha: float, scheme: RadialScheme = RadialScheme()
) -> float:
    """The displayed sum int_D |f'|^p (1-|z|^2)^alpha dA + |f(0)|^p.

    Note this is the p-th power of the space norm; take the p-th root for a
    quantity that scales linearly under f -> c f.
    """
    return dirichlet_norm_detail(f, p, alpha, scheme).value


def bloch_norm(f: PowerSeries, scheme: RadialScheme = RadialScheme()) -> float:
    """sup over the radial grid of M_inf(r, f') (1 - r^2), plus |f(0)|."""
    best = 0.0
    for r in r_of_u(scheme.u_nodes()):
        best = max(best, sup_mean(f.derivative(), r, scheme.angular_m) * (1.0 - r * r))
    return best + abs(f.coeffs[0])


def littlewood_paley_terms(f: PowerSeries) -> tuple[float, float]:
    """Exact coefficient values of (|f(0)|^2 + int |f'|^2 (1-|z|^2) dA, ||f||_{H^2}^2).

    Per coefficient, int |(z^n)'|^2 (1-|z|^2) dA = n/(n+1), so the first
    entry always lies in [1/2, 1] times the second.
    """
    mags = np.abs(f.coeffs) ** 2
    n = np.arange(f.coeffs.size, dtype=float)
    ratios = np.ones_like(n)
    ratios[1:] = n[1:] / (n[1:] + 1.0)
    lhs = math.fsum((mags * ratios).tolist())
    h2 = math.fsum(mags.tolist())
    return lhs, h2


# ---------------------------------------------------------------------------
# angular prefix machinery for boxes and Stolz angles
# ---------------------------------------------------------------------------


def _angular_prefix(rows: np.ndarray) -> np.ndarray:
    """Prefix integrals of the periodic trapezoid interpolant along axis 1.

    rows has shape (n_r, m) of samples on theta_j = 2 pi j / m; the result P
    has shape (n_r, m+1) with P[:, j] = int_0^{theta_j} and P[:, m] the full
    circle integral.
    """
    m = rows.shape[1]
    dtheta = 2.0 * math.pi / m
    cell = 0.5 * (rows + np.roll(rows, -1, axis=1)) * dtheta
    out = np.zeros((rows.shape[0], m + 1))
    np.cumsum(cell, axis=1, out=out[:, 1:])
    return out


def _prefix_rows_at(P: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """Row-wise evaluation of prefix integrals at angles theta, shape (n_r, C).

    Wrap-around is handled by adding whole-circle integrals per winding.
    """
    m = P.shape[1] - 1
    dtheta = 2.0 * math.pi / m
    x = theta / dtheta
    base = np.floor(x)
    frac = x - base
    wraps = np.floor_divide(base, m)
    idx = (base - wraps * m).astype(int)
    lo = np.take_along_axis(P, idx, axis=1)
    hi = np.take_along_axis(P, idx + 1, axis=1)
    return wraps * P[:, -1:] + lo + frac * (hi - lo)


def _window_rows(P: np.ndarray, centers, half_width) -> np.ndarray:
    """Window integrals per ring: out[i, j] = int over [c_j - h_i, c_j + h_i]."""
    c = np.atleast_1d(np.asarray(centers, dtype=float))[None, :]
    h = np.asarray(half_width, dtype=float)
    h = h[:, None] if h.ndim == 1 else np.full((P.shape[0], 1), float(h))
    return _prefix_rows_at(P, c + h) - _prefix_rows_at(P, c - h)


def _gradient_mesh(g: PowerSeries, scheme: RadialScheme) -> tuple[np.ndarray, np.ndarray]:
    """(u-grid, |g'|^2 samples) on the polar mesh; angle count auto-raised."""
    gp = g.derivative()
    m = next_power_of_two(max(scheme.angular_m, 2 * (gp.degree + 1)))
    u = scheme.u_nodes()
    rows = np.empty((u.size, m))
    for i, r in enumerate(r_of_u(u)):
        rows[i] = np.abs(evaluate_on_circle(gp, r, m)) ** 2
    return u, rows


def carleson_box_integrals(
    g: PowerSeries,
    scheme: RadialScheme,
    levels: range | None = None,
    centers: str = "all",
) -> dict[int, np.ndarray]:
    """Box masses of mu_g = |g'|^2 (1-|z|^2) dA over Carleson boxes per level.

    Level k boxes have radial range [1-2^{-k}, 1) and angular width 2 pi
    2^{-k}.  With ``centers="all"`` every angular mesh position is used (the
    BMOA center grid); with ``centers="dyadic"`` only the 2^k aligned boxes.
    Radial coverage is truncated at the scheme depth, so levels deeper than
    depth-2 are not meaningful and are rejected.
    """
    u, rows = _gradient_mesh(g, scheme)
    r = r_of_u(u)
    radial_density = (1.0 - r * r) * r * np.exp(1.0 - u) / math.pi
    rows = rows * radial_density[:, None]
    P = _angular_prefix(rows)
    if levels is None:
        levels = range(0, max(1, scheme.depth - 2) + 1)
    out: dict[int, np.ndarray] = {}
    m = rows.shape[1]
    for k in levels:
        if k > scheme.depth - 2 and k != 0:
            raise ValueError(f"level {k} deeper than the mesh supports")
        start = k * scheme.refinement
        half = math.pi * 2.0**-k
        if centers == "all":
            theta_c = 2.0 * math.pi * np.arange(m) / m
        elif centers == "dyadic":
            theta_c = 2.0 * math.pi * (np.arange(1 << k) + 0.5) / (1 << k)
        else:
            raise ValueError("centers must be 'all' or 'dyadic'")
        win = _window_rows(P[start:], theta_c, half)
        out[k] = simpson(win, x=u[start:], axis=0)
    return out


def bmoa_box_norm(g: PowerSeries, scheme: RadialScheme = RadialScheme()) -> float:
    """Squared BMOA box norm: sup over boxes of the mu_g mass ratio, plus |g(0)|^2.

    Centers sweep every angular mesh position at radii 1-2^{-k} for k = 0
    (the whole disc) up to depth-2; ties in the supremum resolve to the
    smallest level and then the smallest angular index by scan order.
    """
    boxes = carleson_box_integrals(g, scheme)
    best = 0.0
    for k, masses in boxes.items():
        best = max(best, float(np.max(masses)) / 2.0**-k)
    return best + abs(g.coeffs[0]) ** 2


# ---------------------------------------------------------------------------
# square function, Fefferman-Stein, maximal function
# ---------------------------------------------------------------------------


def _stolz_half_width(r: np.ndarray, sigma: float) -> np.ndarray:
    """Angular half-width of {|1 - conj(zeta) z| < sigma (1-|z|)} at radius r."""
    r = np.asarray(r, dtype=float)
    out = np.full(r.shape, math.pi)
    pos = r > 1e-12
    t = np.empty_like(r)
    t[pos] = (1.0 + r[pos] ** 2 - sigma**2 * (1.0 - r[pos]) ** 2) / (2.0 * r[pos])
    inside = pos & (t < 1.0)
    out[pos & (t >= 1.0)] = 0.0
    out[inside] = np.arccos(np.clip(t[inside], -1.0, 1.0))
    return out


def _square_mesh(f: PowerSeries, stolz: StolzParams, scheme: RadialScheme):
    u, rows = _gradient_mesh(f, scheme)
    r = r_of_u(u)
    u_cut = min(float(u[-1]), float(u_of_r(1.0 - stolz.vertex_cutoff)))
    keep = u <= u_cut + 1e-12
    u, rows, r = u[keep], rows[keep], r[keep]
    density = r * np.exp(1.0 - u) / math.pi
    P = _angular_prefix(rows * density[:, None])
    half = _stolz_half_width(r, stolz.sigma)
    return u, P, half


def square_function(
    f: PowerSeries,
    zeta: complex,
    stolz: StolzParams = StolzParams(),
    scheme: RadialScheme = RadialScheme(),
) -> float:
    """S_f(zeta): L^2 area integral of f' over the Stolz angle with vertex zeta."""
    if abs(abs(zeta) - 1.0) > 1e-9:
        raise ValueError("vertex must lie on the unit circle")
    u, P, half = _square_mesh(f, stolz, scheme)
    theta = float(np.angle(zeta))
    win = _window_rows(P, theta, half)[:, 0]
    return float(math.sqrt(max(simpson(win, x=u), 0.0)))


def square_function_profile(
    f: PowerSeries,
    stolz: StolzParams = StolzParams(),
    scheme: RadialScheme = RadialScheme(),
    m: int = 256,
) -> np.ndarray:
    """S_f at the m boundary points e^{2 pi i j / m}, via per-ring window sums."""
    u, P, half = _square_mesh(f, stolz, scheme)
    theta_c = 2.0 * math.pi * np.arange(m) / m
    win = _window_rows(P, theta_c, half)
    s_sq = simpson(win, x=u, axis=0)
    return np.sqrt(np.maximum(s_sq, 0.0))


class FeffermanStein(NamedTuple):
    lhs: float
    rhs: float
    ratio: float


def fefferman_stein(
    f: PowerSeries,
    p: float,
    stolz: StolzParams = StolzParams(),
    scheme: RadialScheme = RadialScheme(),
    m: int = 256,
) -> FeffermanStein:
    """Both sides of the square-function comparison for ||f||_{H^p}^p.

    lhs is the Hardy norm estimate to the p-th power; rhs is the boundary
    mean of S_f^p plus |f(0)|^p (normalized boundary measure).
    """
    lhs = hardy_norm(f, p, scheme).value ** p
    prof = square_function_profile(f, stolz, scheme, m)
    rhs = float(np.mean(prof**p) + abs(f.coeffs[0]) ** p)
    return FeffermanStein(lhs=lhs, rhs=rhs, ratio=lhs / rhs if rhs > 0 else math.inf)


def maximal_function(samples: np.ndarray, z: complex) -> float:
    """Hormander-type maximal function over dyadic-aligned boundary intervals.

    samples are |phi| values on a power-of-two uniform boundary grid.  The
    supremum scans every dyadic level whose interval length 2^{-k} is at
    least 1-|z| (so the Carleson box over the interval contains z) and is
    resolvable on the grid; at each level exactly one aligned interval
    contains arg z, with boundary-angle ties going to the lower index.
    """
    phi = np.abs(np.asarray(samples)).astype(float)
    m = phi.size
    if m < 2 or m & (m - 1):
        raise ValueError("sample count must be a power of two")
    rho = abs(z)
    if rho >= 1.0:
        raise ValueError("point must lie inside the disc")
    gap = 1.0 - rho
    k_max = 0 if gap >= 1.0 else min(int(math.floor(-math.log2(gap))), int(math.log2(m)))
    prefix = np.concatenate([[0.0], np.cumsum(phi)])
    frac = (math.atan2(z.imag, z.real) / (2.0 * math.pi)) % 1.0
    best = 0.0
    for k in range(k_max + 1):
        cells = 1 << k
        x = frac * cells
        j = int(math.floor(x))
        if x == j and j > 0:
            j -= 1
        width = m >> k
        lo = j * width
        avg = (prefix[lo + width] - prefix[lo]) / width
        best = max(best, float(avg))
    return best
