"""Generate frozen oracle constants for the test suite (mpmath, 50 digits)."""
import mpmath as mp

mp.mp.dps = 50


def jn_series(n, x):
    """Ascending power series oracle."""
    x = mp.mpf(x)
    total = mp.mpf(0)
    for k in range(200):
        term = (-1) ** k * (x / 2) ** (n + 2 * k) / (mp.factorial(k) * mp.factorial(n + k))
        total += term
        if abs(term) < mp.mpf(10) ** (-60) * max(abs(total), mp.mpf(10) ** -50):
            break
    return total


def jn_backward(n, x, dps=50):
    """Backward-recurrence oracle at 50-digit working precision."""
    with mp.workdps(dps):
        x = mp.mpf(x)
        m = n + max(60, int(2 * mp.sqrt(n + 1)) + 60) + int(x)
        jk1, jk = mp.mpf(0), mp.mpf("1e-60")
        norm = mp.mpf(0)
        caps = {}
        for k in range(m, 0, -1):
            if k in (n - 1, n, n + 1):
                caps[k] = jk
            if k % 2 == 0:
                norm += 2 * jk
            jk1, jk = jk, (2 * k / x) * jk - jk1
        caps[0] = jk
        norm += jk
        return caps.get(n) / norm


def show(label, val, digits=22):
    print(f"{label} = {mp.nstr(val, digits)}")


show("J_1(0.5) series", jn_series(1, 0.5))
show("J_0(1.0) series", jn_series(0, 1.0))
show("J_2'(1.0) = (J_1(1)-J_3(1))/2", (jn_series(1, 1.0) - jn_series(3, 1.0)) / 2)
show("J_1(1.0)", jn_series(1, 1.0))
show("J_3(1.0)", jn_series(3, 1.0))

s = mp.sqrt(mp.mpf(3)) / 2
g05 = mp.mpf("0.5") * mp.e**s / (1 + s)
show("g(0.5)", g05)
show("debye leading (200, 0.5): g^200/sqrt(2pi*200*s)", g05**200 / mp.sqrt(2 * mp.pi * 200 * s))
show("J_200(100) backward", jn_backward(200, 100.0))
show("J_200(100) besselj", mp.besselj(200, mp.mpf(100)))

show("Jp_100(30) backward", (jn_backward(99, 30.0) - jn_backward(101, 30.0)) / 2)
j99 = mp.besselj(99, mp.mpf(30))
j101 = mp.besselj(101, mp.mpf(30))
show("Jp_100(30) besselj", (j99 - j101) / 2)

# kepler root E - 0.5 sin E = 1 via bisection on [0, pi]
f = lambda e: e - mp.mpf("0.5") * mp.sin(e) - 1
lo, hi = mp.mpf(0), mp.pi
for _ in range(200):
    mid = (lo + hi) / 2
    if f(mid) > 0:
        hi = mid
    else:
        lo = mid
show("kepler root (M=1, eps=0.5) bisection", (lo + hi) / 2)

# orbit state at E = pi/3, eps = 0.4
E = mp.pi / 3
eps = mp.mpf("0.4")
rho = 1 - eps * mp.cos(E)
sin_w = mp.sqrt(1 - eps**2) * mp.sin(E) / rho
cos_w = (mp.cos(E) - eps) / rho
show("orbit(pi/3, 0.4) rho", rho)
show("orbit(pi/3, 0.4) sin_w", sin_w)
show("orbit(pi/3, 0.4) cos_w", cos_w)
show("orbit(pi/3, 0.4) M", E - eps * mp.sin(E))
r0 = 1 / rho
r1 = sin_w * eps / (rho**2 * mp.sqrt(1 - eps**2))
r2 = cos_w / rho**2
show("identity rhs R0", r0)
show("identity rhs R1", r1)
show("identity rhs R2", r2)

show("closed_C(1) = e^(1/4)/sqrt2", mp.e ** mp.mpf("0.25") / mp.sqrt(2))
show("closed_C(3) = e^(3/8)/2", mp.e ** (mp.mpf(3) / 8) / 2)
show("bound lo(1) = (sqrt2-1)e^sqrt(1/2)", (mp.sqrt(2) - 1) * mp.e ** mp.sqrt(mp.mpf("0.5")))
show("closed_C1(1,1) = 1/(2*2^1.5)", 1 / (2 * 2 ** mp.mpf("1.5")))
show("closed_C2_paper(1,1)", mp.sqrt(2) / 4 - (1 + 2 ** mp.mpf("1.5")) / 32)
show("F2 exact D=1: 4*2^2.5", 4 * 2 ** mp.mpf("2.5"))
show("F2 exact D=3: 128/9", mp.mpf(128) / 9)
show("sqrt(e/1e4)", mp.sqrt(mp.e / 10000))

# orbit at pi/2, eps 0.5
show("sqrt(0.75)", mp.sqrt(mp.mpf("0.75")))

# solve_kepler example M=1 eps=0.5 -> spec says ~1.49870
# identity battery row: S1 at (E=pi/3, eps=0.4) equals r1 above
