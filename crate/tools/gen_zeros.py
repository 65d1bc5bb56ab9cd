#!/usr/bin/env python3
"""Generate the first N ordinates of the nontrivial zeta zeros.

Low zeros come straight from mpmath.zetazero. Above LOW_T the Riemann-Siegel
Z function (C0..C2 corrections) is scanned on a fine grid, sign changes are
polished by bisection + secant, and the result is checked against the
counting function N(t) = theta(t)/pi + 1 + S(t) (|S| must stay small) and
against mpmath at a handful of spot indices.

usage: gen_zeros.py N OUT
"""
import sys
import numpy as np
import mpmath
from numpy.polynomial import chebyshev as C

LOW_T = 600.0
PI = np.pi


def theta(t):
    return t / 2 * np.log(t / (2 * PI)) - t / 2 - PI / 8 + 1 / (48 * t) + 7 / (5760 * t ** 3)


def _psi(p):
    return np.cos(2 * PI * (p * p - p - 1.0 / 16)) / np.cos(2 * PI * p)


# Chebyshev fit of C0 on [0,1] and its derivatives
_nodes = 0.5 + 0.5 * np.cos(PI * (np.arange(80) + 0.5) / 80)
_fit = C.chebfit(2 * _nodes - 1, _psi(_nodes), 60)
_d2 = C.chebder(_fit, 2) * 2 ** 2
_d3 = C.chebder(_fit, 3) * 2 ** 3
_d6 = C.chebder(_fit, 6) * 2 ** 6


def siegel_z(t):
    t = np.atleast_1d(np.asarray(t, dtype=float))
    a = np.sqrt(t / (2 * PI))
    n = np.floor(a).astype(int)
    p = a - n
    th = theta(t)
    out = np.zeros_like(t)
    kmax = n.max()
    for k in range(1, kmax + 1):
        mask = n >= k
        out[mask] += np.cos(th[mask] - t[mask] * np.log(k)) / np.sqrt(k)
    out *= 2
    x = 2 * p - 1
    c0 = C.chebval(x, _fit)
    c1 = -C.chebval(x, _d3) / (96 * PI ** 2)
    c2 = C.chebval(x, _d6) / (18432 * PI ** 4) + C.chebval(x, _d2) / (64 * PI ** 2)
    w = 1 / a
    sign = np.where((n - 1) % 2 == 0, 1.0, -1.0)
    out += sign * np.sqrt(w) * (c0 + c1 * w + c2 * w * w)
    return out


def refine(lo, hi, iters=60):
    zl = siegel_z(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        zm = siegel_z(mid)
        left = np.sign(zm) == np.sign(zl)
        lo = np.where(left, mid, lo)
        zl = np.where(left, zm, zl)
        hi = np.where(left, hi, mid)
        if np.max(hi - lo) < 1e-11:
            break
    return 0.5 * (lo + hi)


def scan(t0, t1):
    zeros = []
    chunk = 2000.0
    a = t0
    while a < t1:
        b = min(a + chunk, t1)
        spacing = 2 * PI / np.log(b / (2 * PI))
        step = spacing / 48
        grid = np.arange(a, b + step, step)
        z = siegel_z(grid)
        idx = np.nonzero(np.sign(z[:-1]) != np.sign(z[1:]))[0]
        zeros.append(refine(grid[idx], grid[idx + 1]))
        a = grid[-1]
    return np.concatenate(zeros)


def main():
    count = int(sys.argv[1])
    out = sys.argv[2]
    mpmath.mp.dps = 20
    low = []
    k = 1
    while True:
        g = float(mpmath.zetazero(k).imag)
        if g > LOW_T:
            break
        low.append(g)
        k += 1
    start = 0.5 * (low[-1] + g)
    # height safely above the requested count
    tmax = 1000.0
    while theta(tmax) / PI + 1 < count + 50:
        tmax *= 1.05
    high = scan(start, tmax)
    allz = np.concatenate([np.array(low), high])
    allz = np.unique(np.round(allz, 11))
    # counting check at midpoints
    mids = 0.5 * (allz[:-1] + allz[1:])
    s = np.arange(1, len(allz)) - 1 - theta(mids) / PI
    bad = np.nonzero(np.abs(s) > 1.8)[0]
    if bad.size:
        raise SystemExit(f"counting check failed near t={mids[bad[:5]]}, S={s[bad[:5]]}")
    if len(allz) < count:
        raise SystemExit(f"only {len(allz)} zeros found")
    allz = allz[:count]
    for j in [1, 2, 10, 100, 1000, 5000, 7005, 12345, 40000, 65432, count]:
        ref = float(mpmath.zetazero(j).imag)
        if abs(ref - allz[j - 1]) > 1e-6:
            raise SystemExit(f"spot check failed at {j}: {allz[j-1]} vs {ref}")
    with open(out, "w") as f:
        f.write(f"# first {count} ordinates of nontrivial zeta zeros (t > 0)\n")
        f.write("# rho = 1/2 + i t; generated by tools/gen_zeros.py\n")
        for g in allz:
            f.write(f"{g:.10f}\n")
    print(f"wrote {count} zeros, max |S| = {np.abs(s).max():.3f}")


if __name__ == "__main__":
    main()
