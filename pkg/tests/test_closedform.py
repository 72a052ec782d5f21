"""Closed forms, bound, asymptotics, proof trace."""

import math

import pytest

from kapteynq.closedform import (
    asymptotics,
    bound_interval,
    closed_C,
    closed_C1,
    closed_C2_paper,
    closed_forms,
    exact_series_values,
    proof_trace,
)
from kapteynq.kapteyn import Eccentricity

CLOSED_C_1 = 0.9079430793557843257142
CLOSED_C_3 = 0.7274957073091006680269
LO_1 = 0.8400727314504438503236  # (sqrt2 - 1) e^sqrt(1/2)
CLOSED_C1_11 = 0.1767766952966368811002
CLOSED_C2P_11 = 0.2339150429449553216503
F2_D1 = 22.62741699796952078083
SQRT_E_1E4 = 0.01648721270700128146849
LN2 = 0.6931471805599453094172


class TestClosedC:
    def test_small_d_limit(self):
        assert closed_C(1e-9) == pytest.approx(1.0, abs=1e-9)

    def test_reference(self):
        assert closed_C(1.0) == pytest.approx(CLOSED_C_1, rel=1e-15)
        assert closed_C(3.0) == pytest.approx(CLOSED_C_3, rel=1e-15)

    def test_large_d_ratio(self):
        ratio = closed_C(1e4) / SQRT_E_1E4
        assert abs(ratio - 1.0) <= 1e-4

    def test_validation(self):
        with pytest.raises(ValueError):
            closed_C(0.0)
        with pytest.raises(ValueError):
            closed_C(math.inf)


class TestClosedC1C2:
    def test_c1_small_d(self):
        d, a = 1e-6, 2.0
        assert closed_C1(d, a) == pytest.approx(a * d / 2.0, rel=2e-6)

    def test_c1_reference(self):
        assert closed_C1(1.0, 1.0) == pytest.approx(CLOSED_C1_11, rel=1e-15)

    def test_c1_zero_a(self):
        assert closed_C1(2.0, 0.0) == 0.0

    def test_c2_small_d(self):
        assert closed_C2_paper(1e-9, 1.0) == pytest.approx(0.25 - 1.0 / 8.0, abs=1e-8)

    def test_c2_reference(self):
        assert closed_C2_paper(1.0, 1.0) == pytest.approx(CLOSED_C2P_11, rel=1e-15)
        assert closed_C2_paper(1.0, 0.0) == pytest.approx(math.sqrt(2.0) / 4.0, rel=1e-15)


class TestExactSeriesValues:
    def test_d1(self):
        f, f1, f2 = exact_series_values(1.0)
        assert f == 4.0
        assert f1 == -16.0
        assert f2 == pytest.approx(F2_D1, rel=1e-15)

    def test_d3(self):
        f, f1, f2 = exact_series_values(3.0)
        assert f == pytest.approx(8.0 / 3.0, rel=1e-15)
        assert f1 == pytest.approx(-64.0 / 9.0, rel=1e-15)
        assert f2 == pytest.approx(128.0 / 9.0, rel=1e-15)

    def test_large_d_limits(self):
        f, f1, f2 = exact_series_values(1e12)
        assert f == pytest.approx(2.0, rel=1e-11)
        assert f1 == pytest.approx(-4.0, rel=1e-11)
        eps = 1.0 / math.sqrt(1e12 + 1.0)
        assert f2 * eps == pytest.approx(4.0, rel=1e-11)


class TestBoundInterval:
    def test_reference(self):
        lo, hi = bound_interval(1.0)
        assert lo == pytest.approx(LO_1, rel=1e-14)
        assert hi == 1.0

    def test_limits(self):
        lo_small, _ = bound_interval(1e-12)
        assert lo_small == pytest.approx(1.0, abs=1e-5)
        lo_big, _ = bound_interval(1e12)
        assert lo_big < 3e-6

    @pytest.mark.parametrize("d_exp", range(-3, 7))
    def test_identity_with_g(self, d_exp):
        d = 10.0 ** d_exp
        lo, _ = bound_interval(d)
        assert abs(lo - Eccentricity.from_D(d).g) <= 1e-14 * lo

    @pytest.mark.parametrize("d", [1e-2, 0.3, 1.0, 7.0, 300.0, 1e4])
    def test_contains_closed_root(self, d):
        lo, hi = bound_interval(d)
        assert lo < closed_C(d) < hi


class TestAsymptotics:
    def test_record_fields(self):
        rec = asymptotics(1e-3, 1.0)
        assert rec.c_small_d == pytest.approx(1.0 - 2.5e-7, abs=1e-16)
        assert rec.c1_small_d == pytest.approx(5e-4, rel=1e-15)
        assert rec.c2_small_d == pytest.approx(0.125, rel=1e-15)

    def test_large_d_field(self):
        assert asymptotics(1e4, 1.0).c_large_d == pytest.approx(SQRT_E_1E4, rel=1e-14)

    def test_c2_zero_crossing(self):
        assert asymptotics(1.0, math.sqrt(2.0)).c2_small_d == pytest.approx(0.0, abs=1e-16)

    @pytest.mark.parametrize("d", [1e-4, 1e-3, 1e-2])
    def test_small_d_orders(self, d):
        assert abs(closed_C(d) - (1.0 - d * d / 4.0)) <= 2.0 * d**3
        assert abs(closed_C1(d, 1.0) - d / 2.0) <= d * d
        assert abs(closed_C2_paper(d, 1.0) - 0.125) <= d

    def test_large_d_approach_from_below(self):
        prev = 0.0
        for d in (1e2, 1e3, 1e4, 1e5, 1e6):
            ratio = closed_C(d) / asymptotics(d, 1.0).c_large_d
            assert 1.0 - 1.0 / d <= ratio <= 1.0
            assert ratio > prev  # monotone toward 1
            prev = ratio


class TestClosedForms:
    def test_bundle_invariants(self):
        cf = closed_forms(2.0, 1.5)
        assert cf.lower_bound < cf.C < 1.0
        assert cf.F_at_root == pytest.approx(2.0 * 3.0 / 2.0, rel=1e-15)
        assert cf.F1_at_root < 0.0
        assert cf.F2_at_root > 0.0


class TestProofTrace:
    def test_half(self):
        tr = proof_trace(0.5)
        assert tr.E_complex.real == pytest.approx(0.0, abs=1e-15)
        assert tr.E_complex.imag == pytest.approx(LN2, rel=1e-14)
        assert tr.M_complex.real == pytest.approx(0.0, abs=1e-14)
        assert tr.M_complex.imag == pytest.approx(LN2 - 0.375, rel=1e-13)
        assert tr.C_reconstructed == pytest.approx(CLOSED_C_3, rel=1e-13)
        assert tr.branch_ok

    def test_eps_to_one(self):
        tr = proof_trace(1.0 - 1e-8)
        assert abs(tr.E_complex) <= 1e-3
        assert tr.C_reconstructed == pytest.approx(1.0, abs=1e-7)

    @pytest.mark.parametrize("i", range(19))
    def test_reconstruction_grid(self, i):
        eps = 0.05 + 0.9 * i / 18.0
        tr = proof_trace(eps)
        ref = eps * math.exp((1.0 - eps * eps) / 2.0)
        assert abs(tr.C_reconstructed - ref) <= 1e-13
        assert abs(tr.M_complex.real) <= 1e-13
        # and it reconstructs the closed-form root at D = 1/eps^2 - 1
        d = 1.0 / (eps * eps) - 1.0
        assert abs(tr.C_reconstructed - closed_C(d)) <= 1e-13

    def test_validation(self):
        with pytest.raises(ValueError):
            proof_trace(0.0)
        with pytest.raises(ValueError):
            proof_trace(1.0)
