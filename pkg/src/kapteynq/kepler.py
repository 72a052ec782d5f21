"""Kepler's equation M = E - eps*sin(E) and elliptic-orbit kinematics.

Supplies the closed-form right sides checked against the Kapteyn trig sums:
with rho = 1 - eps*cos(E) (radius over semi-major axis; the orbital scale
cancels in every identity used here),

    1/rho,   (1/rho^2) sin(w) eps/sqrt(1-eps^2),   (1/rho^2) cos(w)

where w is the true anomaly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NoConvergence

__all__ = ["OrbitState", "solve_kepler", "orbit_state", "identity_rhs"]

_MAX_NEWTON_ITER = 50


@dataclass(frozen=True)
class OrbitState:
    """Kinematic state at eccentric anomaly E for eccentricity eps.

    Invariants (enforced by construction, checked in tests): M = E - eps sin E,
    rho = 1 - eps cos E, sin_w^2 + cos_w^2 = 1, and the conic identity
    rho*(1 + eps*cos_w) = 1 - eps^2.
    """

    eps: float
    E: float
    M: float
    rho: float
    sin_w: float
    cos_w: float


def solve_kepler(M: float, eps: float, tol: float = 1e-14) -> float:
    """Solve M = E - eps*sin(E) for E; unique since the map is increasing.

    Newton from the standard starter E0 = M + eps*sin(M), falling back to
    bisection on [M - eps, M + eps] whenever a step leaves the bracket.
    """
    if not math.isfinite(M):
        raise ValueError(f"M must be finite, got {M}")
    if not (0.0 <= eps < 1.0):
        raise ValueError(f"eps must lie in [0, 1), got {eps}")
    if not (tol > 0.0):
        raise ValueError(f"tol must be positive, got {tol}")
    if eps == 0.0:
        return M

    lo = M - eps
    hi = M + eps
    e_cur = M + eps * math.sin(M)
    e_cur = min(max(e_cur, lo), hi)
    for _ in range(_MAX_NEWTON_ITER):
        f = e_cur - eps * math.sin(e_cur) - M
        if abs(f) <= tol:
            return e_cur
        if f > 0.0:
            hi = e_cur
        else:
            lo = e_cur
        step = f / (1.0 - eps * math.cos(e_cur))
        e_next = e_cur - step
        if not (lo < e_next < hi):
            e_next = 0.5 * (lo + hi)
        e_cur = e_next
    raise NoConvergence(
        f"Kepler iteration cap {_MAX_NEWTON_ITER} exceeded for M={M}, eps={eps}"
    )


def orbit_state(E: float, eps: float) -> OrbitState:
    """Fill the orbit state at eccentric anomaly E.

    cos(w) comes from inverting the conic equation
    rho = (1 - eps^2)/(1 + eps*cos w); algebraic simplification gives the
    eps-stable form (cos E - eps)/rho, whose eps -> 0 limit is cos E.
    """
    if not (0.0 < eps < 1.0):
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    sin_e = math.sin(E)
    cos_e = math.cos(E)
    rho = 1.0 - eps * cos_e
    s = math.sqrt((1.0 - eps) * (1.0 + eps))
    return OrbitState(
        eps=eps,
        E=E,
        M=E - eps * sin_e,
        rho=rho,
        sin_w=s * sin_e / rho,
        cos_w=(cos_e - eps) / rho,
    )


def identity_rhs(state: OrbitState) -> tuple[float, float, float]:
    """Closed-form right sides matching the Kapteyn trig sums (S0, S1, S2)."""
    inv_rho = 1.0 / state.rho
    inv_rho2 = inv_rho * inv_rho
    s = math.sqrt((1.0 - state.eps) * (1.0 + state.eps))
    r0 = inv_rho
    r1 = inv_rho2 * state.sin_w * state.eps / s
    r2 = inv_rho2 * state.cos_w
    return r0, r1, r2
