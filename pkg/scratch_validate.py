"""Scratch validation of the bessel engines against mpmath (50 digits)."""
import math
import sys
import time

sys.path.insert(0, "src")

import mpmath as mp
import numpy as np

from kapteynq import bessel as B

mp.mp.dps = 50


def mp_jn(n, x):
    return mp.besselj(n, mp.mpf(x))


def mp_jnp(n, x):
    if n == 0:
        return -mp.besselj(1, mp.mpf(x))
    return (mp.besselj(n - 1, mp.mpf(x)) - mp.besselj(n + 1, mp.mpf(x))) / 2


def mp_miller3(n, x, dps=35):
    """(J_{n-1}, J_n, J_{n+1}) via backward recurrence in mpmath floats."""
    with mp.workdps(dps):
        xm = mp.mpf(x)
        m = B._miller_start(n + 1, float(x)) + 40
        jk1 = mp.mpf(0)
        jk = mp.mpf("1e-40")
        norm = mp.mpf(0)
        caps = {}
        for k in range(m, 0, -1):
            if k in (n - 1, n, n + 1):
                caps[k] = jk
            if k % 2 == 0:
                norm += 2 * jk
            jk1, jk = jk, (2 * k / xm) * jk - jk1
        if n == 1:
            caps[0] = jk
        norm += jk
        return caps[n - 1] / norm, caps[n] / norm, caps[n + 1] / norm


def oracle_diag(n, eps):
    """High-precision (J_n(n eps), J_n'(n eps)) at the binary-double eps."""
    with mp.workdps(40):
        e = mp.mpf(float(eps))  # exact binary value, same point the library sees
        x = n * e
        if n <= 3000:
            j = mp.besselj(n, x)
            jp = (mp.besselj(n - 1, x) - mp.besselj(n + 1, x)) / 2
            return j, jp
    lo, mid, hi = mp_miller3(n, mp.mpf(float(eps)) * n, dps=35)
    return mid, (lo - hi) / 2


def relerr(approx, exact):
    if exact == 0:
        return abs(approx)
    return abs((mp.mpf(approx) - exact) / exact)


print("=== U/V polynomial checks ===")
# A&S 9.3.9: u1 = (3t-5t^3)/24, u2 = (81t^2-462t^4+385t^6)/1152
u1 = B._U_POLYS[1]
print("u1:", u1, " expected [0, 3/24, 0, -5/24] =", [0, 3 / 24, 0, -5 / 24])
u2 = B._U_POLYS[2]
print("u2:", u2, " expected coeffs (81, -462, 385)/1152 =", [81 / 1152, -462 / 1152, 385 / 1152])
u3 = B._U_POLYS[3]
print("u3 deg:", len(u3) - 1, "coeff t^3:", u3[3], "expect", 30375 / 414720)
print("   coeff t^5:", u3[5], "expect", -369603 / 414720)
print("   coeff t^7:", u3[7], "expect", 765765 / 414720)
print("   coeff t^9:", u3[9], "expect", -425425 / 414720)
v1 = B._V_POLYS[1]
print("v1:", v1, " expected [0, -9/24, 0, 7/24]")

print("\n=== power series vs mpmath ===")
for n, x in [(0, 1.0), (1, 0.5), (3, 2.0), (10, 1.7), (40, 2.0), (200, 1.0)]:
    mine = B._jn_series(n, x)
    ex = mp_jn(n, x)
    print(f"J_{n}({x}) rel={float(relerr(mine, ex)):.2e}")

print("\n=== scalar Miller vs mpmath ===")
cases = [(0, 5.0), (1, 3.0), (5, 4.9), (20, 10.0), (100, 30.0), (100, 95.0),
         (500, 450.0), (2005, 1800.0), (3, 50.0), (0, 30.0), (10, 300.0)]
for n, x in cases:
    t0 = time.perf_counter()
    mine = B._miller_scalar(x, (n,))[n]
    dt = time.perf_counter() - t0
    ex = mp_jn(n, x)
    print(f"J_{n}({x}) rel={float(relerr(mine, ex)):.2e}  ({dt*1e3:.1f} ms)")

print("\n=== Miller diag block vs oracle ===")
for eps in ["0.1", "0.5", "0.9", "0.9535", "0.98"]:
    e = float(eps)
    n_lo = max(1, int(2.0 / e) + 1)
    n_hi = 2100
    t0 = time.perf_counter()
    j, jp = B._miller_diag_block(e, n_lo, n_hi)
    dt = time.perf_counter() - t0
    worst_j, worst_jp, arg_j = 0.0, 0.0, 0
    for n in [n_lo, n_lo + 7, 137, 500, 1000, 2000, 2100]:
        if n < n_lo or n > n_hi:
            continue
        i = n - n_lo
        ej, ejp = oracle_diag(n, eps)
        if j[i] != 0.0:
            r = float(relerr(j[i], ej))
            if r > worst_j:
                worst_j, arg_j = r, n
        if jp[i] != 0.0:
            worst_jp = max(worst_jp, float(relerr(jp[i], ejp)))
    print(f"eps={eps}: worst relJ={worst_j:.2e} (at n={arg_j}) relJp={worst_jp:.2e}  ({dt*1e3:.0f} ms)")

print("\n=== Debye accuracy + estimate honesty ===")
for eps in ["0.3", "0.7", "0.9", "0.9535", "0.98", "0.995", "0.9995"]:
    e = float(eps)
    print(f"eps={eps}:")
    for n in [300, 1000, 2000, 4000, 20000, 100000]:
        j, jp, rj, rjp = B._debye_scalar(n, e)
        ej, ejp = oracle_diag(n, eps)
        act = float(relerr(j, ej)) if ej != 0 else 0.0
        actp = float(relerr(jp, ejp)) if ejp != 0 else 0.0
        s = math.sqrt(1 - e * e)
        print(f"    n={n} nu*s^3={n*s**3:.1f} act={act:.1e}/{actp:.1e} est={rj:.1e}/{rjp:.1e}")

print("\n=== numba ladder point check ===")
t0 = time.perf_counter()
jv, jpv = B._diag_point(0.9995, 50000)
dt = time.perf_counter() - t0
print(f"first call (jit) {dt:.2f} s")
ej, ejp = oracle_diag(50000, "0.9995")
print("rel J:", float(relerr(jv, ej)), "rel Jp:", float(relerr(jpv, ejp)))
t0 = time.perf_counter()
B._diag_point(0.9995, 400000)
print(f"n=400000 ladder: {time.perf_counter()-t0:.3f} s")

print("\n=== anchored interpolation band ===")
eps = 0.9995
n_lo, n_hi = 2001, 1_500_000
t0 = time.perf_counter()
n_test = np.array([2001, 2500, 5000, 17777, 60001, 123457], dtype=np.int64)
j, jp = B._interp_band(eps, n_test, n_lo, n_hi)
dt = time.perf_counter() - t0
print(f"build+eval: {dt:.2f} s")
for i, n in enumerate(n_test):
    ej, ejp = oracle_diag(int(n), "0.9995")
    print(f"n={n}: relJ={float(relerr(j[i], ej)):.2e} relJp={float(relerr(jp[i], ejp)):.2e}")
# interpolant vs the (independent-arithmetic) numba ladder at larger n
for n in [399999, 900001, 1499999]:
    jn = np.array([n], dtype=np.int64)
    ji, jpi = B._interp_band(eps, jn, n_lo, n_hi)
    jd, jpd = B._diag_point(eps, n)
    print(f"n={n}: interp-vs-ladder relJ={abs(ji[0]-jd)/abs(jd):.2e} relJp={abs(jpi[0]-jpd)/abs(jpd):.2e}")

print("\n=== full diagonal table timing ===")
for eps, n_max in [(0.7071, 512), (0.9535, 8192), (0.9995, 4_000_000)]:
    B._diagonal_table_cached.cache_clear()
    t0 = time.perf_counter()
    tab = B.diagonal_table(eps, n_max)
    dt = time.perf_counter() - t0
    print(f"eps={eps}, n_max={n_max}: {dt:.2f} s")
    for n in [1, 5, 77, min(n_max, 2345), min(n_max, 30000), min(n_max, 300000)]:
        i = n - 1
        if tab.j[i] == 0.0:
            continue
        ej, _ = oracle_diag(n, str(eps))
        r = float(relerr(tab.j[i], ej))
        flag = "OK " if r <= max(5e-13, 3 * tab.rel_j[i]) else "BAD"
        print(f"   n={n}: rel={r:.2e} est={tab.rel_j[i]:.1e} {flag}")

print("\n=== crossover consistency (default 2000) ===")
cfg = B.DEFAULT_BESSEL_CONFIG
worst = 0.0
for eps in [0.1, 0.3, 0.5, 0.7, 0.9]:
    for n in range(1995, 2006):
        x = n * eps
        small = B._miller_scalar(x, (n,))[n]
        jd, _, rel, _ = B._debye_scalar(n, eps)
        if small == 0.0 and jd == 0.0:
            continue  # both underflowed: consistent by the zero policy
        d = abs(small - jd) / max(abs(small), abs(jd))
        worst = max(worst, d)
print(f"worst small/large path disagreement near crossover: {worst:.2e}")
