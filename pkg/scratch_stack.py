"""Smoke test of kapteyn/kepler/solver/closedform against known relations."""
import math
import sys
import time

sys.path.insert(0, "src")

import kapteynq as kq

print("=== g boundary ===")
ecc = kq.Eccentricity.from_eps(0.5)
print("g(0.5) =", ecc.g, " (expect ~0.637035)")
ecc_d1 = kq.Eccentricity.from_D(1.0)
lo, hi = kq.bound_interval(1.0)
print("lo(1) =", lo, " g(eps=1/sqrt2) =", ecc_d1.g, " reldiff =", abs(lo - ecc_d1.g) / lo)

print("\n=== exact series values at the closed-form root ===")
for D in [0.5, 1.0, 2.0, 3.0, 5.0]:
    C = kq.closed_C(D)
    ecc = kq.Eccentricity.from_D(D)
    f = kq.eval_F(C, ecc)
    f1 = kq.eval_F1(C, ecc)
    f2 = kq.eval_F2(C, ecc)
    fe, f1e, f2e = kq.exact_series_values(D)
    print(f"D={D}: F err={abs(f.value-fe)/fe:.2e} F1 err={abs(f1.value-f1e)/abs(f1e):.2e} "
          f"F2 err={abs(f2.value-f2e)/f2e:.2e} terms={f.terms_used},{f1.terms_used},{f2.terms_used} "
          f"conv={f.converged},{f1.converged},{f2.converged} coeff_err={f.coeff_err:.1e}")

print("\n=== F(1) = 1/(1-eps) ===")
for eps in [0.3, 0.5, 0.8]:
    ecc = kq.Eccentricity.from_eps(eps)
    f = kq.eval_F(1.0, ecc)
    print(f"eps={eps}: F(1)={f.value} vs {1/(1-eps)}  err={abs(f.value-1/(1-eps)):.2e}")

print("\n=== solver vs closed form ===")
for D in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 100.0]:
    t0 = time.perf_counter()
    p = kq.Problem(D=D, a=1.0)
    rep = kq.solve_problem(p)
    dt = time.perf_counter() - t0
    cc = kq.closed_C(D)
    c1c = kq.closed_C1(D, 1.0)
    print(f"D={D}: relC={abs(rep.C_numeric-cc)/cc:.2e} relC1={abs(rep.C1_numeric-c1c)/c1c:.2e} "
          f"res={rep.residuals[0]:.1e},{rep.residuals[1]:.1e},{rep.residuals[2]:.1e} "
          f"iters={rep.diagnostics['iterations']} conv={rep.converged}  ({dt*1e3:.0f} ms)")

print("\n=== C2 adjudication preview at D=1, a=1 ===")
p = kq.Problem(D=1.0, a=1.0)
rep = kq.solve_problem(p)
c2_paper = kq.closed_C2_paper(1.0, 1.0)
c2_derived = 0.25 - 1.0 * (2 * 1.0 + 1) / (8 * (1.0 + 1) ** 2)
print("numeric:", rep.C2_numeric, " paper:", c2_paper, " derived:", c2_derived)
print("dist paper:", abs(rep.C2_numeric - c2_paper), " dist derived:", abs(rep.C2_numeric - c2_derived))

print("\n=== kepler identities ===")
worst = [0.0, 0.0, 0.0]
for eps in [0.05, 0.1, 0.2, 0.35, 0.5, 0.65, 0.8]:
    ecc = kq.Eccentricity.from_eps(eps)
    for i in range(25):
        E = 0.05 + (math.pi - 0.1) * i / 24
        s0, s1, s2 = kq.eval_trig_sums(E, ecc)
        st = kq.orbit_state(E, eps)
        r0, r1, r2 = kq.identity_rhs(st)
        worst[0] = max(worst[0], abs(s0 - r0))
        worst[1] = max(worst[1], abs(s1 - r1))
        worst[2] = max(worst[2], abs(s2 - r2))
print("identity battery worst |S-R|:", worst)

print("\n=== proof trace ===")
tr = kq.proof_trace(0.5)
print("E =", tr.E_complex, " M =", tr.M_complex, " C_rec =", tr.C_reconstructed)
print("closed_C(3) =", kq.closed_C(3.0), " diff =", abs(tr.C_reconstructed - kq.closed_C(3.0)))
worst_tr = 0.0
for i in range(19):
    eps = 0.05 + 0.9 * i / 18
    tr = kq.proof_trace(eps)
    ref = eps * math.exp((1 - eps * eps) / 2)
    worst_tr = max(worst_tr, abs(tr.C_reconstructed - ref), abs(tr.M_complex.real))
print("proof trace worst err:", worst_tr)

print("\n=== kepler solve ===")
E = kq.solve_kepler(1.0, 0.5)
print("solve_kepler(1, 0.5) =", E, " residual =", E - 0.5 * math.sin(E) - 1.0)

print("\n=== small-D criterion 4 preview (tightened config) ===")
t0 = time.perf_counter()
D = 1e-3
p = kq.Problem(D=D, a=1.0)
trunc = kq.TruncationConfig(abs_tol=1e-5, max_terms=4_000_000)
C = kq.closed_C(D)
c1 = kq.solve_C1_numeric(p, C, trunc)
c2 = kq.solve_C2_numeric(p, C, c1, trunc)
dt = time.perf_counter() - t0
print(f"C1 = {c1}  target D/2 = {D/2}  |diff| = {abs(c1 - D/2):.3e}  (allow {D*D:.1e})")
print(f"C2 = {c2}  target 0.125     |diff| = {abs(c2 - 0.125):.3e}  (allow 1e-3)")
print(f"({dt:.1f} s)")
