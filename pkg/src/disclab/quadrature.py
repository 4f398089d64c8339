"""Radial quadrature in boundary-logarithmic coordinates.

Integrals over [r0, 1) concentrate at the boundary for every gauge and weight
in this package, so they are computed in u = log(e/(1-r)) (finite part) and,
when the integrand decays only like a power of u, in v = log(u) for the far
tail.  Both rules are plain composite Simpson on uniform grids, which keeps
every result bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import simpson

from .weights import r_of_u


@dataclass(frozen=True)
class QuadratureSettings:
    """Node counts and cutoffs for the radial rules.

    ``v_max`` truncates the tail integral at u = exp(v_max); with the default
    the dropped tail is below 1e-15 of the value whenever the integrand decays
    at least like u^{-3/2}.  ``cauchy_rel_tol`` drives the convergence flag:
    the last 5% of the tail range must contribute less than this fraction.
    """

    nodes_u: int = 1 << 13
    nodes_v: int = 1 << 15
    u_max: float = 40.0
    v_max: float = 80.0
    cauchy_rel_tol: float = 1e-2


DEFAULT_QUAD = QuadratureSettings()


def integrate_u(
    fn_of_u: Callable[[np.ndarray], np.ndarray],
    u_lo: float,
    u_hi: float,
    nodes: int,
) -> float:
    """Simpson integral of fn(u) du on [u_lo, u_hi], uniform in u."""
    if u_hi <= u_lo:
        return 0.0
    u = np.linspace(u_lo, u_hi, int(nodes) | 1)  # odd node count for Simpson
    return float(simpson(fn_of_u(u), x=u))


def integrate_r(
    fn_of_r: Callable[[np.ndarray], np.ndarray],
    u_lo: float,
    u_hi: float,
    nodes: int,
) -> float:
    """Simpson integral of fn(r) dr on the radial image of [u_lo, u_hi]."""
    return integrate_u(
        lambda u: fn_of_r(r_of_u(u)) * np.exp(1.0 - u), u_lo, u_hi, nodes
    )


def tail_integral_u(
    fn_of_u: Callable[[np.ndarray], np.ndarray],
    u_lo: float,
    quad: QuadratureSettings = DEFAULT_QUAD,
) -> tuple[float, bool]:
    """Integral of fn(u) du on [u_lo, exp(v_max)) via the v = log(u) substitution.

    Returns (value, converged); ``converged`` is False when the last stretch
    of the range still carries more than ``cauchy_rel_tol`` of the total,
    which is the numerical surrogate for a divergent radial integral.
    """
    v_lo = float(np.log(u_lo))
    if v_lo >= quad.v_max:
        return 0.0, True
    v = np.linspace(v_lo, quad.v_max, int(quad.nodes_v) | 1)
    u = np.exp(v)
    y = fn_of_u(u) * u
    total = float(simpson(y, x=v))
    split = int(y.size * 0.95)
    last = float(simpson(y[split:], x=v[split:]))
    scale = max(abs(total), 1e-300)
    return total, bool(abs(last) <= quad.cauchy_rel_tol * scale)
