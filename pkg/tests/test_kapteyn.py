"""Kapteyn series: domain handling, frozen values, folds, and properties."""

import math

import mpmath as mp
import pytest

from kapteynq import bound_interval, closed_C, exact_series_values
from kapteynq.bessel import bessel_j, bessel_j_prime
from kapteynq.errors import DivergentDomain, MaxTermsExceeded, OutOfRange
from kapteynq.kapteyn import (
    Eccentricity,
    TruncationConfig,
    convergence_boundary,
    domain_floor,
    eval_F,
    eval_F1,
    eval_F2,
    eval_trig_sums,
)
from kapteynq.kepler import identity_rhs, orbit_state

G_HALF = 0.6370338448808182848202  # eps*exp(s)/(1+s) at eps = 0.5, 50 digits
F2_D1 = 22.62741699796952078083  # 4*2^(5/2)
F2_D3 = 14.22222222222222222222  # 128/9


class TestEccentricity:
    def test_from_eps_fields(self):
        ecc = Eccentricity.from_eps(0.5)
        assert ecc.g == pytest.approx(G_HALF, rel=1e-14)
        assert ecc.s == pytest.approx(math.sqrt(0.75), rel=1e-15)

    def test_from_D_maps_eps(self):
        ecc = Eccentricity.from_D(3.0)
        assert ecc.eps == pytest.approx(0.5, rel=1e-15)

    def test_invalid(self):
        with pytest.raises(ValueError):
            Eccentricity.from_eps(0.0)
        with pytest.raises(ValueError):
            Eccentricity.from_eps(1.0)
        with pytest.raises(ValueError):
            Eccentricity.from_D(-2.0)
        with pytest.raises(ValueError):
            Eccentricity(eps=0.5, s=0.5, g=0.6)  # inconsistent s

    def test_boundary_limits(self):
        assert convergence_boundary(Eccentricity.from_eps(1e-8)) < 1e-7
        assert convergence_boundary(Eccentricity.from_eps(1.0 - 1e-9)) > 1.0 - 1e-4

    @pytest.mark.parametrize("d_exp", range(-3, 7))
    def test_boundary_equals_bound_lower(self, d_exp):
        d = 10.0 ** d_exp
        lo, _ = bound_interval(d)
        g = Eccentricity.from_D(d).g
        assert abs(lo - g) <= 1e-14 * lo


class TestDomain:
    def test_divergent_below_floor(self):
        ecc = Eccentricity.from_eps(0.5)
        floor = domain_floor(ecc)
        with pytest.raises(DivergentDomain):
            eval_F(floor, ecc)
        with pytest.raises(DivergentDomain):
            eval_F(ecc.g * 0.5, ecc)

    def test_out_of_range(self):
        ecc = Eccentricity.from_eps(0.5)
        for bad in (1.0 + 1e-12, 0.0, -0.3, math.nan):
            with pytest.raises(OutOfRange):
                eval_F(bad, ecc)

    def test_truncation_config_validation(self):
        with pytest.raises(ValueError):
            TruncationConfig(abs_tol=0.0)
        with pytest.raises(ValueError):
            TruncationConfig(max_terms=0)
        with pytest.raises(ValueError):
            TruncationConfig(safety_margin=1.5)


class TestSeriesValues:
    def test_F_small_eps_is_one(self):
        # the n = 1 term leaves a residual ~ eps*cosh(ln C)
        ecc = Eccentricity.from_eps(1e-8)
        sv = eval_F(0.9, ecc)
        assert sv.value == pytest.approx(1.0, abs=2e-8)
        assert sv.converged

    def test_F_at_root_D1(self):
        sv = eval_F(closed_C(1.0), Eccentricity.from_D(1.0))
        assert sv.value == pytest.approx(4.0, abs=1e-9)

    def test_F_at_one_equals_geometric(self):
        # F(1) = 1/(1 - eps); also checked against a direct summation oracle
        ecc = Eccentricity.from_eps(0.5)
        sv = eval_F(1.0, ecc)
        assert sv.value == pytest.approx(2.0, abs=1e-10)
        with mp.workdps(30):
            direct = mp.mpf(1) + 2 * mp.fsum(
                mp.besselj(n, n * mp.mpf(0.5)) for n in range(1, 300))
        assert sv.value == pytest.approx(float(direct), abs=1e-10)

    def test_F1_at_one_is_zero(self):
        for eps in (0.2, 0.5, 0.8):
            sv = eval_F1(1.0, Eccentricity.from_eps(eps))
            assert sv.value == 0.0

    @pytest.mark.parametrize("d,expected", [(1.0, -16.0), (3.0, -4.0 * (4.0 / 3.0) ** 2)])
    def test_F1_exact_values(self, d, expected):
        sv = eval_F1(closed_C(d), Eccentricity.from_D(d))
        assert sv.value == pytest.approx(expected, rel=1e-8)

    def test_F2_small_eps_limit(self):
        # only the n = +-1 terms survive (J_n'(0) = 0 for n >= 2):
        # F2 -> (C + 1/C)/2, approached at O(eps) from the n = 2 term
        c = 0.9
        sv = eval_F2(c, Eccentricity.from_eps(1e-8))
        assert sv.value == pytest.approx((c + 1.0 / c) / 2.0, abs=5e-8)

    @pytest.mark.parametrize("d,expected", [(1.0, F2_D1), (3.0, F2_D3)])
    def test_F2_exact_values(self, d, expected):
        sv = eval_F2(closed_C(d), Eccentricity.from_D(d))
        assert sv.value == pytest.approx(expected, rel=1e-8)

    def test_max_terms_returns_unconverged(self):
        ecc = Eccentricity.from_D(1.0)
        sv = eval_F(closed_C(1.0), ecc, TruncationConfig(abs_tol=1e-12, max_terms=50))
        assert not sv.converged
        assert sv.terms_used == 50
        assert math.isfinite(sv.value)

    def test_converged_implies_tail_below_tol(self):
        trunc = TruncationConfig(abs_tol=1e-12)
        for d in (0.5, 1.0, 10.0):
            sv = eval_F(closed_C(d), Eccentricity.from_D(d), trunc)
            assert sv.converged and sv.tail_bound <= trunc.abs_tol


class TestTwoSidedFold:
    """Literal sums over n = -N..N must equal the folded one-sided forms.

    Negative orders use the reflection J_{-n}(-n eps) = J_n(n eps) (and the
    derivative analogue J'_{-n}(-n eps) = -J'_n(n eps)).
    """

    N = 30

    @pytest.mark.parametrize("c,eps", [(0.95, 0.3), (0.9, 0.5), (0.97, 0.7)])
    def test_fold_F(self, c, eps):
        two_sided = 1.0  # n = 0 term: J_0(0) = 1
        for n in range(1, self.N + 1):
            jn_val = bessel_j(n, n * eps)
            two_sided += jn_val * c**n + jn_val * c**-n
        folded = 1.0 + sum(
            2.0 * bessel_j(n, n * eps) * math.cosh(n * math.log(c))
            for n in range(1, self.N + 1))
        assert abs(two_sided - folded) <= 1e-13

    @pytest.mark.parametrize("c,eps", [(0.95, 0.3), (0.9, 0.5)])
    def test_fold_F1(self, c, eps):
        two_sided = 0.0
        for n in range(1, self.N + 1):
            jn_val = bessel_j(n, n * eps)
            two_sided += n * jn_val * c**n + (-n) * jn_val * c**-n
        folded = sum(
            2.0 * n * bessel_j(n, n * eps) * math.sinh(n * math.log(c))
            for n in range(1, self.N + 1))
        assert abs(two_sided - folded) <= 1e-13

    @pytest.mark.parametrize("c,eps", [(0.95, 0.3), (0.9, 0.5)])
    def test_fold_F2(self, c, eps):
        two_sided = 0.0
        for n in range(1, self.N + 1):
            jp = bessel_j_prime(n, n * eps)
            two_sided += n * jp * c**n + (-n) * (-jp) * c**-n
        folded = sum(
            2.0 * n * bessel_j_prime(n, n * eps) * math.cosh(n * math.log(c))
            for n in range(1, self.N + 1))
        assert abs(two_sided - folded) <= 1e-13


class TestProperties:
    @pytest.mark.parametrize("eps", [0.3, 0.7])
    def test_F_strictly_decreasing(self, eps):
        ecc = Eccentricity.from_eps(eps)
        lo = domain_floor(ecc) + 0.02 * (1.0 - ecc.g)
        values = [eval_F(lo + (1.0 - lo) * i / 9.0, ecc).value for i in range(10)]
        assert all(a > b for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("eps", [0.2, 0.5, 0.9])
    def test_signs(self, eps):
        ecc = Eccentricity.from_eps(eps)
        lo = domain_floor(ecc) + 0.05 * (1.0 - ecc.g)
        for i in range(5):
            c = lo + (0.999 - lo) * i / 4.0
            assert eval_F1(c, ecc).value < 0.0
            assert eval_F2(c, ecc).value > 0.0

    @pytest.mark.parametrize("d,c_frac", [(1.0, 0.5), (5.0, 0.4)])
    def test_F1_is_C_dF_dC(self, d, c_frac):
        ecc = Eccentricity.from_D(d)
        lo = domain_floor(ecc)
        c = lo + c_frac * (1.0 - lo)
        f1 = eval_F1(c, ecc).value
        errs = []
        for h in (1e-4, 5e-5, 2.5e-5):
            fd = c * (eval_F(c + h, ecc).value - eval_F(c - h, ecc).value) / (2.0 * h)
            errs.append(abs(fd - f1))
        assert errs[1] <= errs[0] / 2.5
        assert errs[2] <= errs[1] / 2.5

    def test_tail_soundness(self):
        # doubling max_terms must not move a converged value by more than the
        # reported tail bound, nor must a 100x tighter tolerance
        for d in (0.5, 2.0, 20.0):
            ecc = Eccentricity.from_D(d)
            c = closed_C(d)
            base = eval_F(c, ecc, TruncationConfig(abs_tol=1e-10))
            assert base.converged
            doubled = eval_F(c, ecc, TruncationConfig(abs_tol=1e-10, max_terms=400_000))
            assert abs(doubled.value - base.value) <= base.tail_bound
            tight = eval_F(c, ecc, TruncationConfig(abs_tol=1e-12))
            assert abs(tight.value - base.value) <= base.tail_bound


class TestTrigSums:
    def test_s0_at_right_angle(self):
        # cos E = 0 makes the closed side exactly 1
        ecc = Eccentricity.from_eps(0.5)
        s0, _, _ = eval_trig_sums(math.pi / 2.0, ecc)
        assert s0 == pytest.approx(1.0, abs=1e-10)

    def test_s0_near_zero_anomaly(self):
        # E -> 0 drives S0 toward 1/(1 - eps)
        ecc = Eccentricity.from_eps(0.3)
        s0, _, _ = eval_trig_sums(1e-4, ecc)
        assert s0 == pytest.approx(1.0 / 0.7, abs=1e-4)

    def test_s1_matches_orbit_rhs(self):
        ecc = Eccentricity.from_eps(0.4)
        _, s1, _ = eval_trig_sums(math.pi / 3.0, ecc)
        _, r1, _ = identity_rhs(orbit_state(math.pi / 3.0, 0.4))
        assert abs(s1 - r1) <= 1e-10

    def test_endpoints_rejected(self):
        ecc = Eccentricity.from_eps(0.5)
        for bad in (0.0, math.pi, -0.1, 4.0):
            with pytest.raises(OutOfRange):
                eval_trig_sums(bad, ecc)
        with pytest.raises(OutOfRange):
            eval_trig_sums(0.04, ecc, endpoint_margin=0.05)

    def test_max_terms_raises(self):
        ecc = Eccentricity.from_eps(0.65)
        with pytest.raises(MaxTermsExceeded):
            eval_trig_sums(1.0, ecc, TruncationConfig(abs_tol=1e-12, max_terms=40))

    @pytest.mark.parametrize("eps", [0.05, 0.35, 0.8])
    def test_identity_battery_sample(self, eps):
        ecc = Eccentricity.from_eps(eps)
        for i in range(9):
            e_val = 0.05 + (math.pi - 0.1) * i / 8.0
            s0, s1, s2 = eval_trig_sums(e_val, ecc)
            r0, r1, r2 = identity_rhs(orbit_state(e_val, eps))
            assert abs(s0 - r0) <= 1e-10
            assert abs(s1 - r1) <= 1e-9
            assert abs(s2 - r2) <= 1e-9


def test_exact_series_triple_consistency():
    # the closed-form triple reproduces the series at the root to 1e-8
    for d in (0.5, 2.0):
        fe, f1e, f2e = exact_series_values(d)
        ecc = Eccentricity.from_D(d)
        c = closed_C(d)
        assert eval_F(c, ecc).value == pytest.approx(fe, rel=1e-9)
        assert eval_F1(c, ecc).value == pytest.approx(f1e, rel=1e-8)
        assert eval_F2(c, ecc).value == pytest.approx(f2e, rel=1e-8)
