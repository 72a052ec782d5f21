"""Independent high-precision oracles used by the tests (mpmath, 50 digits).

Everything here is deliberately separate from the package's own algorithms:
the power series and backward recurrence run in mpmath arbitrary-precision
arithmetic, and besselj is mpmath's hypergeometric implementation.
"""

import mpmath as mp


def jn_series(n: int, x, dps: int = 50):
    """J_n(x) by the ascending power series at dps digits."""
    with mp.workdps(dps):
        xm = mp.mpf(x)
        total = mp.mpf(0)
        for k in range(300):
            term = (-1) ** k * (xm / 2) ** (n + 2 * k) / (
                mp.factorial(k) * mp.factorial(n + k))
            total += term
            if abs(term) < mp.mpf(10) ** (-dps - 10) * max(abs(total), mp.mpf(10) ** (-dps)):
                break
        return total


def jn_backward(n: int, x, dps: int = 50):
    """J_n(x) by backward recurrence with even-order normalization."""
    with mp.workdps(dps):
        xm = mp.mpf(x)
        m = n + max(80, int(3 * mp.sqrt(n + 1)) + 80) + int(xm)
        jk1, jk = mp.mpf(0), mp.mpf(10) ** (-dps - 20)
        norm = mp.mpf(0)
        cap = None
        for k in range(m, 0, -1):
            if k == n:
                cap = jk
            if k % 2 == 0:
                norm += 2 * jk
            jk1, jk = jk, (2 * k / xm) * jk - jk1
        if n == 0:
            cap = jk
        norm += jk
        return cap / norm


def jn(n: int, x, dps: int = 40):
    """Reference J_n(x): mpmath besselj for moderate orders, recurrence beyond."""
    with mp.workdps(dps):
        xm = mp.mpf(x)
        if n <= 3000:
            return mp.besselj(n, xm)
    return jn_backward(n, x, dps=max(dps, 35))


def jn_prime(n: int, x, dps: int = 40):
    if n == 0:
        return -jn(1, x, dps)
    return (jn(n - 1, x, dps) - jn(n + 1, x, dps)) / 2


def kepler_bisect(M, eps, dps: int = 40):
    """Root of E - eps*sin(E) = M by plain bisection."""
    with mp.workdps(dps):
        mm, ee = mp.mpf(M), mp.mpf(eps)
        lo, hi = mm - ee, mm + ee
        for _ in range(220):
            mid = (lo + hi) / 2
            if mid - ee * mp.sin(mid) - mm > 0:
                hi = mid
            else:
                lo = mid
        return (lo + hi) / 2


def rel_err(approx, exact) -> float:
    exact = mp.mpf(exact) if not isinstance(exact, mp.mpf) else exact
    if exact == 0:
        return float(abs(approx))
    return float(abs((mp.mpf(float(approx)) - exact) / exact))
