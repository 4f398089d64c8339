"""Increasing radial weights used by the lacunary constructions and sharp measures.

The weight families live on [0, 1) and are parametrised either as a power of
``log(e/(1-r))`` or as an iterated logarithm.  All boundary-singular work is
done in the variable ``u = log(e/(1-r))``, which maps [0, 1) onto [1, oo) and
turns every weight in these families into a slowly varying function of ``u``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

LOG2 = math.log(2.0)

_POWERLOG = "powerlog"
_ITERLOG = "iterlog"


def u_of_r(r):
    """Map radius r in [0,1) to u = log(e/(1-r)) >= 1."""
    return 1.0 - np.log1p(-np.asarray(r, dtype=float))


def r_of_u(u):
    """Inverse of :func:`u_of_r`; exact at u=1 (r=0) and saturates to 1.0 in floats."""
    return -np.expm1(1.0 - np.asarray(u, dtype=float))


def dyadic_radius(k):
    """r_k = 1 - 2^{-k}; the geometric radial grid used throughout."""
    return 1.0 - 2.0 ** (-np.asarray(k, dtype=float))


def _exp_tower(n: int) -> float:
    # exp_n(2): exp_1(2)=e^2, exp_2(2)=e^(e^2), ...
    x = 2.0
    for _ in range(n):
        x = math.exp(x)
    return x


@dataclass(frozen=True)
class PhiSpec:
    """An increasing auxiliary weight on [0,1).

    ``power_log(c)`` is (log e/(1-r))^c and ``iterated_log(n, alpha)`` is
    (log_n (exp_n(2)/(1-r)))^alpha where log_n / exp_n are the n-fold iterates.
    Both families have h(r) = log(phi(r)) with h'(r)(1-r) decreasing, which is
    the hypothesis the lacunary construction needs.  ``power_log(0.0)`` is the
    degenerate constant weight, accepted only for diagnostics; ``validate``
    rejects it.
    """

    kind: str
    c: float = 0.0
    n: int = 1
    alpha: float = 1.0

    @staticmethod
    def power_log(c: float) -> "PhiSpec":
        if c < 0.0:
            raise ValueError("power-log exponent must be >= 0")
        return PhiSpec(kind=_POWERLOG, c=float(c))

    @staticmethod
    def iterated_log(n: int, alpha: float) -> "PhiSpec":
        if n < 1:
            raise ValueError("iteration depth must be a positive integer")
        if alpha <= 0.0:
            raise ValueError("iterated-log exponent must be > 0")
        return PhiSpec(kind=_ITERLOG, n=int(n), alpha=float(alpha))

    # -- the u-space tower for the iterated family -------------------------
    def _tower(self, u):
        """Chain w_0..w_{n-1} with w_0 = exp_{n-1}(2)+u-1, w_{i+1} = log w_i."""
        w = _exp_tower(self.n - 1) + np.asarray(u, dtype=float) - 1.0
        chain = [w]
        for _ in range(self.n - 1):
            w = np.log(w)
            chain.append(w)
        return chain

    def phi_of_u(self, u):
        u = np.asarray(u, dtype=float)
        if self.kind == _POWERLOG:
            return u**self.c
        return self._tower(u)[-1] ** self.alpha

    def log_phi_of_u(self, u):
        u = np.asarray(u, dtype=float)
        if self.kind == _POWERLOG:
            return self.c * np.log(u)
        return self.alpha * np.log(self._tower(u)[-1])

    def h_slope_of_u(self, u):
        """h'(r)(1-r) expressed through u; h = log(phi)."""
        u = np.asarray(u, dtype=float)
        if self.kind == _POWERLOG:
            return self.c / u
        chain = self._tower(u)
        prod = chain[0]
        for w in chain[1:]:
            prod = prod * w
        return self.alpha / prod

    # -- r-space conveniences ----------------------------------------------
    def phi(self, r):
        return self.phi_of_u(u_of_r(r))

    def h(self, r):
        return self.log_phi_of_u(u_of_r(r))

    def h_slope(self, r):
        return self.h_slope_of_u(u_of_r(r))

    def decay_indicator_of_u(self, u):
        """(phi'/phi)(1-r) * log(e/(1-r)); constant c for the power-log family."""
        return self.h_slope_of_u(u) * np.asarray(u, dtype=float)

    def validate(self, levels: int = 24) -> None:
        """Check phi > 1, phi increasing and h'(r)(1-r) decreasing on the dyadic grid.

        The grid is r_k = 1 - 2^{-k}, k = 1..levels; the power-log family has
        phi(0) = 1 exactly, so the origin itself is not sampled.
        """
        u = 1.0 + np.arange(1, levels + 1) * LOG2
        phi = self.phi_of_u(u)
        if not np.all(phi > 1.0):
            raise ValueError("weight must exceed 1 on [0,1)")
        if not np.all(np.diff(phi) > 0.0):
            raise ValueError("weight must be strictly increasing")
        slope = self.h_slope_of_u(u)
        if not np.all(np.diff(slope) <= 1e-15):
            raise ValueError("h'(r)(1-r) must be non-increasing")

    # -- serialisation ------------------------------------------------------
    def to_spec(self) -> dict:
        if self.kind == _POWERLOG:
            return {"family": "powerlog", "c": self.c}
        return {"family": "iterlog", "n": self.n, "alpha": self.alpha}

    @staticmethod
    def from_spec(obj: dict) -> "PhiSpec":
        fam = obj.get("family")
        if fam == "powerlog":
            return PhiSpec.power_log(float(obj["c"]))
        if fam == "iterlog":
            return PhiSpec.iterated_log(int(obj["n"]), float(obj["alpha"]))
        raise ValueError(f"unknown weight family: {fam!r}")
