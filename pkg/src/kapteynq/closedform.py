"""Closed-form solutions, bounds, asymptotics, and the complex-plane trace.

These are the compact expressions the numeric solver is checked against:

    C(D)  = exp(D/(2(D+1))) / sqrt(D+1)
    C1(D) = a * D / (2 (D+1)^(3/2))
    C2(D) = sqrt(D+1)/4 - (D + (D+1)^(3/2)) a^2 / (8 (D+1)^2)

together with the bracketing bound on C(D), the small-/large-D approximants,
and the exact values of F, F1, F2 at the root.  The printed C2 expression is
reproduced verbatim and treated as a candidate only: the verification battery
compares it numerically against the solver (see the C2 adjudication there)
rather than asserting it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import BranchViolation

__all__ = [
    "ClosedForms",
    "ProofTrace",
    "AsymptoticApproximants",
    "closed_C",
    "closed_C1",
    "closed_C2_paper",
    "closed_forms",
    "exact_series_values",
    "bound_interval",
    "asymptotics",
    "proof_trace",
]


def _check_D(D: float) -> None:
    if not (D > 0.0) or not math.isfinite(D):
        raise ValueError(f"D must be positive and finite, got {D}")


def _check_a(a: float) -> None:
    if not (a >= 0.0) or not math.isfinite(a):
        raise ValueError(f"a must be nonnegative and finite, got {a}")


def closed_C(D: float) -> float:
    """exp(D/(2(D+1)))/sqrt(D+1); tends to 1 as D -> 0 and to sqrt(e/D) for large D."""
    _check_D(D)
    return math.exp(0.5 * D / (D + 1.0)) / math.sqrt(D + 1.0)


def closed_C1(D: float, a: float) -> float:
    """a*D/(2*(D+1)^(3/2)); linear in a, ~ a*D/2 as D -> 0."""
    _check_D(D)
    _check_a(a)
    return a * D / (2.0 * (D + 1.0) ** 1.5)


def closed_C2_paper(D: float, a: float) -> float:
    """sqrt(D+1)/4 - (D + (D+1)^(3/2))*a^2/(8*(D+1)^2), exactly as printed.

    Compared against the numeric solve, never trusted; see the C2
    adjudication in the verification battery.
    """
    _check_D(D)
    _check_a(a)
    dp1 = D + 1.0
    return math.sqrt(dp1) / 4.0 - (D + dp1**1.5) * a * a / (8.0 * dp1 * dp1)


def exact_series_values(D: float) -> tuple[float, float, float]:
    """(F, F1, F2) at C = closed_C(D):

    F = 2(D+1)/D,  F1 = -4((D+1)/D)^2,  F2 = 4(D+1)^(5/2)/D^2.
    """
    _check_D(D)
    dp1 = D + 1.0
    f = 2.0 * dp1 / D
    f1 = -4.0 * (dp1 / D) ** 2
    f2 = 4.0 * dp1**2.5 / (D * D)
    return f, f1, f2


def bound_interval(D: float) -> tuple[float, float]:
    """(lo, 1) with lo = (sqrt(D+1)-sqrt(D))*exp(sqrt(D/(D+1))).

    The difference of roots is computed as 1/(sqrt(D+1)+sqrt(D)), which is the
    same number without the large-D cancellation.  lo is algebraically
    identical to the Kapteyn boundary g at eps = 1/sqrt(D+1):
    sqrt(D+1)-sqrt(D) = eps/(1+s) and sqrt(D/(D+1)) = s.
    """
    _check_D(D)
    lo = math.exp(math.sqrt(D / (D + 1.0))) / (math.sqrt(D + 1.0) + math.sqrt(D))
    return lo, 1.0


@dataclass(frozen=True)
class AsymptoticApproximants:
    """The four printed approximants; callers pick by regime."""

    c_small_d: float  # 1 - D^2/4,        D -> 0
    c1_small_d: float  # a*D/2,            D -> 0
    c2_small_d: float  # 1/4 - a^2/8,      D -> 0
    c_large_d: float  # sqrt(e/D),        D -> infinity


def asymptotics(D: float, a: float) -> AsymptoticApproximants:
    _check_D(D)
    _check_a(a)
    return AsymptoticApproximants(
        c_small_d=1.0 - 0.25 * D * D,
        c1_small_d=0.5 * a * D,
        c2_small_d=0.25 - a * a / 8.0,
        c_large_d=math.sqrt(math.e / D),
    )


@dataclass(frozen=True)
class ClosedForms:
    """Bundle of the closed-form values at one (D, a)."""

    C: float
    C1: float
    C2_paper: float
    F_at_root: float
    F1_at_root: float
    F2_at_root: float
    lower_bound: float


def closed_forms(D: float, a: float) -> ClosedForms:
    f, f1, f2 = exact_series_values(D)
    lo, _ = bound_interval(D)
    return ClosedForms(
        C=closed_C(D),
        C1=closed_C1(D, a),
        C2_paper=closed_C2_paper(D, a),
        F_at_root=f,
        F1_at_root=f1,
        F2_at_root=f2,
        lower_bound=lo,
    )


@dataclass(frozen=True)
class ProofTrace:
    """Complex substitution record: E solving cos(E) = (1+eps^2)/(2 eps).

    M = E - eps*sin(E) comes out purely imaginary on the correct branch and
    C = exp(iM) reconstructs the closed-form root.
    """

    eps: float
    E_complex: complex
    M_complex: complex
    C_reconstructed: float
    branch_ok: bool


def proof_trace(eps: float) -> ProofTrace:
    """Trace the complex-plane substitution at eccentricity eps.

    The principal arccos of the (>= 1) argument is taken with the sign that
    puts Im(E) > 0; that branch yields C in (0, 1), the other gives 1/C.
    """
    if not (0.0 < eps < 1.0):
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    arg = (1.0 + eps * eps) / (2.0 * eps)
    e_c = cmath.acos(arg)
    if e_c.imag < 0.0:
        e_c = e_c.conjugate()
    m_c = e_c - eps * cmath.sin(e_c)
    if abs(m_c.real) > 1e-12:
        raise BranchViolation(
            f"Re(M) = {m_c.real} is not numerically zero at eps={eps}"
        )
    c_rec = cmath.exp(1j * m_c).real
    branch_ok = 0.0 < c_rec < 1.0
    if not branch_ok:
        raise BranchViolation(f"reconstructed C = {c_rec} outside (0, 1) at eps={eps}")
    return ProofTrace(
        eps=eps,
        E_complex=e_c,
        M_complex=m_c,
        C_reconstructed=c_rec,
        branch_ok=branch_ok,
    )
