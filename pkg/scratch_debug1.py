import sys
sys.path.insert(0, "src")
import math
import mpmath as mp
import numpy as np
from kapteynq import bessel as B

cases = [(0.9, 20000), (0.98, 100000), (0.9535, 20000)]

def mp_miller3(n, x_mpf, dps):
    with mp.workdps(dps):
        xm = x_mpf
        m = B._miller_start(n + 1, float(x_mpf)) + 60
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
        norm += jk
        return caps[n] / norm

for eps, n in cases:
    with mp.workdps(60):
        e = mp.mpf(eps)  # binary double, exact conversion
        x = n * e
        o35 = mp_miller3(n, x, 35)
        o50 = mp_miller3(n, x, 50)
        jd, _, rj, _ = B._debye_scalar(n, eps)
        ladder, _ = B._diag_point(eps, n)
        print(f"eps={eps} n={n}:")
        print("  oracle35 vs oracle50:", float(abs(o35 - o50) / abs(o50)))
        print("  debye   vs oracle50:", float(abs(jd - o50) / abs(o50)), " est", rj)
        print("  ladder  vs oracle50:", float(abs(ladder - o50) / abs(o50)))
        # check lng in decimal vs mpmath
        s_mp = mp.sqrt((1 - e) * (1 + e))
        lng_mp = mp.log(e) + s_mp - mp.log(1 + s_mp)
        s, hi, lo, t = B._eps_geometry(eps)
        print("  lng err:", float(abs((mp.mpf(hi) + mp.mpf(lo)) - lng_mp)))
        print("  s err:", float(abs(mp.mpf(s) - s_mp) / s_mp))
        # reconstruct debye by hand at high precision for the U-part
        with mp.workdps(50):
            nn = mp.mpf(n)
            pref = mp.exp(nn * lng_mp) / mp.sqrt(2 * mp.pi * s_mp * nn)
            su = mp.mpf(1)
            tt = 1 / s_mp
            for k in range(1, 17):
                poly = B._U_POLYS[k]
                val = mp.mpf(0)
                for p, c in enumerate(poly):
                    if c:
                        val += mp.mpf(c) * tt**p
                term = val / nn**k
                if abs(term) > 1:
                    break
                su += term
            print("  mp-debye vs oracle50:", float(abs(pref * su - o50) / abs(o50)))
