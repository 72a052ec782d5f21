"""Kapteyn series F, F1, F2 and their trigonometric forms.

The two-sided sums over all integer orders fold, via J_{-n}(z) = (-1)^n J_n(z),
into one-sided series in the diagonal coefficients J_n(n*eps), J_n'(n*eps):

    F(C)  = 1 + 2 sum_n J_n(n eps) cosh(n ln C)
    F1(C) =     2 sum_n n J_n(n eps) sinh(n ln C)
    F2(C) =     2 sum_n n J_n'(n eps) cosh(n ln C)

For real C the series converge on (g, 1], where g = eps*exp(s)/(1+s) with
s = sqrt(1-eps^2) is Kapteyn's boundary function.  Coefficients decay like
g^n/sqrt(n), so once past a short pre-asymptotic regime the tail is bounded
by a geometric majorant in the ratio g/C; truncation stops when that
majorant falls below the requested absolute tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bessel
from .bessel import DEFAULT_BESSEL_CONFIG, BesselConfig
from .errors import DivergentDomain, MaxTermsExceeded, OutOfRange

__all__ = [
    "Eccentricity",
    "SeriesValue",
    "TruncationConfig",
    "DEFAULT_TRUNCATION",
    "convergence_boundary",
    "domain_floor",
    "eval_F",
    "eval_F1",
    "eval_F2",
    "eval_trig_sums",
]

_MIN_TERMS = 10


@dataclass(frozen=True)
class Eccentricity:
    """Eccentricity eps with derived s = sqrt(1-eps^2) and boundary g.

    In the queueing context construct via :meth:`from_D`, which maps the
    model parameter D > 0 to eps = 1/sqrt(D+1).
    """

    eps: float
    s: float
    g: float

    def __post_init__(self):
        if not (0.0 < self.eps < 1.0):
            raise ValueError(f"eps must lie in (0, 1), got {self.eps}")
        # compare the squares: near eps -> 1 the rounding of eps itself
        # shifts sqrt(1-eps^2) by far more than an ulp of s
        if abs(self.s * self.s - (1.0 - self.eps) * (1.0 + self.eps)) > 2e-15:
            raise ValueError("s is inconsistent with sqrt(1 - eps^2)")
        g_ref = self.eps * math.exp(self.s) / (1.0 + self.s)
        if abs(self.g - g_ref) > 1e-13 * g_ref or not (0.0 < self.g < 1.0):
            raise ValueError("g is inconsistent with eps*exp(s)/(1+s)")

    @classmethod
    def from_eps(cls, eps: float) -> "Eccentricity":
        if not (0.0 < eps < 1.0):
            raise ValueError(f"eps must lie in (0, 1), got {eps}")
        s = math.sqrt((1.0 - eps) * (1.0 + eps))
        return cls(eps=eps, s=s, g=eps * math.exp(s) / (1.0 + s))

    @classmethod
    def from_D(cls, D: float) -> "Eccentricity":
        if not (D > 0.0) or not math.isfinite(D):
            raise ValueError(f"D must be positive and finite, got {D}")
        eps = 1.0 / math.sqrt(D + 1.0)
        s = math.sqrt(D / (D + 1.0))
        return cls(eps=eps, s=s, g=eps * math.exp(s) / (1.0 + s))


@dataclass(frozen=True)
class SeriesValue:
    """Result of a truncated series evaluation.

    ``tail_bound`` is the geometric-majorant estimate of the discarded tail;
    ``converged`` means that bound came in under the requested tolerance.
    ``coeff_err`` separately reports the accumulated coefficient-inaccuracy
    allowance (sum of |term| times the per-order relative error estimate of
    the Bessel path used); it is negligible inside the supported parameter
    envelope and grows only for eccentricities extremely close to 1.
    """

    value: float
    terms_used: int
    tail_bound: float
    converged: bool
    coeff_err: float = 0.0


@dataclass(frozen=True)
class TruncationConfig:
    abs_tol: float = 1e-12
    max_terms: int = 200_000
    safety_margin: float = 1e-6

    def __post_init__(self):
        if not (self.abs_tol > 0.0):
            raise ValueError(f"abs_tol must be positive, got {self.abs_tol}")
        if self.max_terms < 1:
            raise ValueError(f"max_terms must be >= 1, got {self.max_terms}")
        if not (0.0 < self.safety_margin < 1.0):
            raise ValueError(
                f"safety_margin must lie in (0, 1), got {self.safety_margin}"
            )


DEFAULT_TRUNCATION = TruncationConfig()


def convergence_boundary(ecc: Eccentricity) -> float:
    """Kapteyn's boundary g(eps) = eps*exp(sqrt(1-eps^2))/(1+sqrt(1-eps^2)).

    Real-C series for F, F1, F2 converge for C in (g, 1]; this equals the
    classical lower bound (sqrt(D+1)-sqrt(D))*exp(sqrt(D/(D+1))) under
    eps = 1/sqrt(D+1).
    """
    return ecc.g


def domain_floor(ecc: Eccentricity, trunc: TruncationConfig = DEFAULT_TRUNCATION) -> float:
    """Smallest admissible C: g plus the configured stand-off fraction of (1-g)."""
    return ecc.g + trunc.safety_margin * (1.0 - ecc.g)


def _table_size(n: int) -> int:
    return max(256, 1 << (int(n) - 1).bit_length())


def _estimate_terms(t1: float, rho: float, weighted: bool, trunc: TruncationConfig) -> int:
    """Predict the truncation order from the first-term scale and ratio rho."""
    if t1 <= 0.0 or rho >= 1.0:
        return trunc.max_terms
    log_rho = math.log(rho)
    target = trunc.abs_tol * (1.0 - rho)
    n_est = (math.log(target) - math.log(t1)) / log_rho if target < t1 else 1.0
    if weighted:
        n_est += math.log(max(n_est, 2.0)) / -log_rho
    n_est = n_est * 1.2 + 48.0
    return int(min(trunc.max_terms, max(_MIN_TERMS, math.ceil(n_est))))


def _domain_check(C: float, ecc: Eccentricity, trunc: TruncationConfig) -> None:
    if not math.isfinite(C) or C <= 0.0 or C > 1.0:
        raise OutOfRange(f"C must lie in (0, 1], got {C}")
    floor = domain_floor(ecc, trunc)
    if C <= floor:
        raise DivergentDomain(
            f"C={C} is at or below the convergence stand-off {floor} "
            f"(g={ecc.g}); the series diverges for C <= g"
        )


def _series_terms(kind: str, tab, size: int, n: np.ndarray, ln_c: float):
    """Full folded terms 2*J*cosh / 2*n*J*sinh / 2*n*J'*cosh.

    When n|ln C| can exceed the cosh/sinh overflow threshold inside the table
    the hyperbolics are assembled in log form, pairing each exponential with
    the (tiny) coefficient so the product never overflows representationally.
    """
    coeff = tab.j[:size] if kind != "F2" else tab.jp[:size]
    with np.errstate(over="ignore", under="ignore", invalid="ignore", divide="ignore"):
        if size * abs(ln_c) <= 700.0:
            if kind == "F1":
                hyp = np.sinh(n * ln_c)
            else:
                hyp = np.cosh(n * ln_c)
            weight = 2.0 if kind == "F" else 2.0 * n
            return weight * coeff * hyp
        log_coeff = np.where(coeff > 0.0, np.log(np.maximum(coeff, 5e-324)), -np.inf)
        up = np.exp(log_coeff + n * ln_c)
        dn = np.exp(log_coeff - n * ln_c)
        if kind == "F":
            return up + dn
        if kind == "F1":
            return n * (up - dn)
        sign = np.sign(tab.jp[:size])
        return sign * n * (up + dn)


def _eval_series(C: float, ecc: Eccentricity, trunc: TruncationConfig,
                 bcfg: BesselConfig, kind: str) -> SeriesValue:
    _domain_check(C, ecc, trunc)
    rho = ecc.g / C
    ln_c = math.log(C)

    # first-term scale for the size prediction; J_1(eps) ~ eps/2
    t1 = ecc.eps * math.cosh(ln_c)
    weighted = kind != "F"
    n_try = _estimate_terms(t1, rho, weighted, trunc)

    while True:
        size = min(trunc.max_terms, _table_size(n_try))
        tab = bessel.diagonal_table(ecc.eps, size, bcfg)
        n = np.arange(1.0, size + 1.0)
        terms = _series_terms(kind, tab, size, n, ln_c)
        rel = tab.rel_j[:size] if kind != "F2" else tab.rel_jp[:size]
        with np.errstate(over="ignore", invalid="ignore"):
            rho_eff = rho if kind == "F" else rho * (1.0 + 1.0 / n)
            tail = np.abs(terms) * rho_eff / (1.0 - np.minimum(rho_eff, 1.0 - 1e-16))
        can_stop = tail <= trunc.abs_tol
        can_stop[: _MIN_TERMS - 1] = False
        if can_stop.any():
            n_used = int(np.argmax(can_stop)) + 1
            converged = True
            break
        if size >= trunc.max_terms:
            n_used = size
            converged = False
            break
        n_try = min(trunc.max_terms, size * 4)

    used = terms[:n_used]
    if not np.isfinite(used).all():
        raise OutOfRange("series terms overflowed inside the evaluation range")
    value = float(np.sum(used))
    const = 1.0 if kind == "F" else 0.0
    tail_bound = float(tail[n_used - 1]) if np.isfinite(tail[n_used - 1]) else math.inf
    coeff_err = float(np.dot(np.abs(used), rel[:n_used]))
    return SeriesValue(
        value=const + value,
        terms_used=n_used,
        tail_bound=tail_bound,
        converged=converged,
        coeff_err=coeff_err,
    )


def eval_F(C: float, ecc: Eccentricity, trunc: TruncationConfig = DEFAULT_TRUNCATION,
           bcfg: BesselConfig = DEFAULT_BESSEL_CONFIG) -> SeriesValue:
    """F(C) = 1 + 2 sum_{n>=1} J_n(n eps) cosh(n ln C) for C in (g, 1].

    Strictly decreasing in C on the domain.  If the tolerance is not met
    within max_terms the best partial value is returned with
    ``converged=False`` (no exception).
    """
    return _eval_series(C, ecc, trunc, bcfg, "F")


def eval_F1(C: float, ecc: Eccentricity, trunc: TruncationConfig = DEFAULT_TRUNCATION,
            bcfg: BesselConfig = DEFAULT_BESSEL_CONFIG) -> SeriesValue:
    """F1(C) = 2 sum_{n>=1} n J_n(n eps) sinh(n ln C); nonpositive on (g, 1]."""
    return _eval_series(C, ecc, trunc, bcfg, "F1")


def eval_F2(C: float, ecc: Eccentricity, trunc: TruncationConfig = DEFAULT_TRUNCATION,
            bcfg: BesselConfig = DEFAULT_BESSEL_CONFIG) -> SeriesValue:
    """F2(C) = 2 sum_{n>=1} n J_n'(n eps) cosh(n ln C); positive on (g, 1]."""
    return _eval_series(C, ecc, trunc, bcfg, "F2")


def eval_trig_sums(E: float, ecc: Eccentricity,
                   trunc: TruncationConfig = DEFAULT_TRUNCATION,
                   bcfg: BesselConfig = DEFAULT_BESSEL_CONFIG,
                   endpoint_margin: float = 0.0) -> tuple[float, float, float]:
    """The three Kapteyn sums at M = E - eps*sin(E) for E inside (0, pi):

        S0 = 1 + 2 sum J_n(n eps) cos(n M)
        S1 =     2 sum n J_n(n eps) sin(n M)
        S2 =     2 sum n J_n'(n eps) cos(n M)

    Coefficients decay like g^n, so the tail is majorized with ratio g
    (|trig| <= 1 plays the role of |C| = 1).  Raises MaxTermsExceeded if the
    tolerance is unreachable within max_terms: unlike eval_F* there is no
    converged flag in this return shape.
    """
    if not (endpoint_margin >= 0.0):
        raise ValueError("endpoint_margin must be >= 0")
    if not (endpoint_margin < E < math.pi - endpoint_margin):
        raise OutOfRange(
            f"E must lie strictly inside ({endpoint_margin}, pi - {endpoint_margin}), got {E}"
        )
    M = E - ecc.eps * math.sin(E)
    g = ecc.g

    n_try = _estimate_terms(ecc.eps, g, True, trunc)
    while True:
        size = min(trunc.max_terms, _table_size(n_try))
        tab = bessel.diagonal_table(ecc.eps, size, bcfg)
        n = np.arange(1.0, size + 1.0)
        base = np.maximum(tab.j[:size], np.maximum(n * tab.j[:size], n * np.abs(tab.jp[:size])))
        rho_eff = g * (1.0 + 1.0 / n)
        tail = 2.0 * base * rho_eff / (1.0 - np.minimum(rho_eff, 1.0 - 1e-16))
        can_stop = tail <= trunc.abs_tol
        can_stop[: _MIN_TERMS - 1] = False
        if can_stop.any():
            n_used = int(np.argmax(can_stop)) + 1
            break
        if size >= trunc.max_terms:
            raise MaxTermsExceeded(
                f"trig sums did not reach abs_tol={trunc.abs_tol} within "
                f"{trunc.max_terms} terms (eps={ecc.eps})"
            )
        n_try = min(trunc.max_terms, size * 4)

    n = n[:n_used]
    phase = n * M
    cos_p = np.cos(phase)
    sin_p = np.sin(phase)
    j = tab.j[:n_used]
    jp = tab.jp[:n_used]
    s0 = 1.0 + 2.0 * float(np.sum(j * cos_p))
    s1 = 2.0 * float(np.sum(n * j * sin_p))
    s2 = 2.0 * float(np.sum(n * jp * cos_p))
    return s0, s1, s2
