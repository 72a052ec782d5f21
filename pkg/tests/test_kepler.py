"""Kepler solver and orbit kinematics."""

import math

import pytest

from kapteynq.kepler import identity_rhs, orbit_state, solve_kepler

from _oracles import kepler_bisect

# bisection oracle at 40 digits for E - 0.5 sin E = 1
KEPLER_ROOT_1_HALF = 1.498701133517848314058
SQRT_3_4 = 0.8660254037844386467637
# orbit state at E = pi/3, eps = 0.4 (50-digit direct evaluation)
ORBIT_PI3_SINW = 0.9921567416492214714381
ORBIT_PI3_M = 0.7007873896828222874487
RHS_PI3_R1 = 0.6765823467065926927842


class TestSolveKepler:
    def test_zero_anomaly(self):
        assert solve_kepler(0.0, 0.7) == 0.0

    def test_zero_eccentricity_identity(self):
        for m in (-2.0, 0.3, 5.5):
            assert solve_kepler(m, 0.0) == m

    def test_reference_root(self):
        e = solve_kepler(1.0, 0.5, tol=1e-15)
        assert e == pytest.approx(KEPLER_ROOT_1_HALF, abs=1e-12)
        # cross-check the frozen value against the bisection oracle
        assert float(kepler_bisect(1.0, 0.5)) == pytest.approx(KEPLER_ROOT_1_HALF, abs=1e-15)

    def test_residual_contract(self):
        for m in (0.1, 1.0, 2.5, 3.0, -1.3, 7.0):
            for eps in (0.1, 0.5, 0.9, 0.99):
                tol = 1e-13
                e = solve_kepler(m, eps, tol)
                assert abs(e - eps * math.sin(e) - m) <= tol

    @pytest.mark.parametrize("eps", [0.1, 0.3, 0.5, 0.7, 0.9])
    def test_round_trip(self, eps):
        for i in range(1, 24):
            e_true = math.pi * i / 24.0
            m = e_true - eps * math.sin(e_true)
            assert solve_kepler(m, eps, 1e-15) == pytest.approx(e_true, abs=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            solve_kepler(math.nan, 0.5)
        with pytest.raises(ValueError):
            solve_kepler(1.0, 1.0)
        with pytest.raises(ValueError):
            solve_kepler(1.0, -0.1)
        with pytest.raises(ValueError):
            solve_kepler(1.0, 0.5, tol=0.0)


class TestOrbitState:
    def test_perihelion(self):
        st = orbit_state(0.0, 0.5)
        assert st.rho == pytest.approx(0.5, abs=1e-15)
        assert st.sin_w == 0.0
        assert st.cos_w == pytest.approx(1.0, abs=1e-15)

    def test_right_angle(self):
        st = orbit_state(math.pi / 2.0, 0.5)
        assert st.rho == pytest.approx(1.0, abs=1e-15)
        assert st.sin_w == pytest.approx(SQRT_3_4, rel=1e-14)
        assert st.cos_w == pytest.approx(-0.5, abs=1e-14)
        assert st.sin_w**2 + st.cos_w**2 == pytest.approx(1.0, abs=1e-12)

    def test_aphelion(self):
        st = orbit_state(math.pi, 0.3)
        assert st.rho == pytest.approx(1.3, abs=1e-15)
        assert abs(st.sin_w) <= 1e-15
        assert st.cos_w == pytest.approx(-1.0, abs=1e-14)

    def test_pi_third(self):
        st = orbit_state(math.pi / 3.0, 0.4)
        assert st.rho == pytest.approx(0.8, abs=1e-15)
        assert st.sin_w == pytest.approx(ORBIT_PI3_SINW, rel=1e-14)
        assert st.cos_w == pytest.approx(0.125, abs=1e-14)
        assert st.M == pytest.approx(ORBIT_PI3_M, rel=1e-14)

    @pytest.mark.parametrize("eps", [0.1, 0.3, 0.5, 0.7, 0.9])
    def test_invariants_on_grid(self, eps):
        for i in range(1, 24):
            e_val = math.pi * i / 24.0
            st = orbit_state(e_val, eps)
            assert abs(st.M - (e_val - eps * math.sin(e_val))) <= 1e-14
            assert abs(st.rho - (1.0 - eps * math.cos(e_val))) <= 1e-15
            assert abs(st.sin_w**2 + st.cos_w**2 - 1.0) <= 1e-12
            assert abs(st.rho * (1.0 + eps * st.cos_w) - (1.0 - eps * eps)) <= 1e-12

    def test_small_eps_limit_is_cos_E(self):
        st = orbit_state(1.1, 1e-12)
        assert st.cos_w == pytest.approx(math.cos(1.1), abs=1e-11)

    def test_validation(self):
        with pytest.raises(ValueError):
            orbit_state(1.0, 0.0)
        with pytest.raises(ValueError):
            orbit_state(1.0, 1.0)


class TestIdentityRhs:
    def test_right_angle(self):
        r0, _, _ = identity_rhs(orbit_state(math.pi / 2.0, 0.5))
        assert r0 == pytest.approx(1.0, abs=1e-14)

    def test_perihelion(self):
        r0, r1, r2 = identity_rhs(orbit_state(0.0, 0.5))
        assert r0 == pytest.approx(2.0, abs=1e-14)
        assert r1 == 0.0
        assert r2 == pytest.approx(4.0, abs=1e-13)

    def test_pi_third(self):
        r0, r1, r2 = identity_rhs(orbit_state(math.pi / 3.0, 0.4))
        assert r0 == pytest.approx(1.25, abs=1e-14)
        assert r1 == pytest.approx(RHS_PI3_R1, rel=1e-13)
        assert r2 == pytest.approx(0.1953125, abs=1e-14)
