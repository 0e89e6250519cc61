"""Numba-compiled twins of the kernels in ``_kernels_numpy``.

Same math, elementwise scalar loops.  Compiled lazily with on-disk caching so
repeat runs skip the JIT cost.
"""

import math

import numpy as np
from numba import njit

RESCALE_LIMIT = 1e250
LOG_ZERO = -np.inf

TWO_PI = 2.0 * math.pi


@njit(cache=True)
def laguerre_log(k, alpha, x, sign_out, logabs_out):
    for i in range(x.shape[0]):
        xi = x[i]
        off = 0.0
        if k == 0:
            cur = 1.0
        else:
            prev = 1.0
            cur = (alpha + 1.0) - xi
            for j in range(1, k):
                nxt = ((2.0 * j + 1.0 + alpha - xi) * cur - (j + alpha) * prev) / (j + 1.0)
                prev = cur
                cur = nxt
                am = abs(cur)
                ap = abs(prev)
                amax = am if am > ap else ap
                if amax > RESCALE_LIMIT or (0.0 < amax < 1.0 / RESCALE_LIMIT):
                    cur /= amax
                    prev /= amax
                    off += math.log(amax)
        if cur == 0.0:
            sign_out[i] = 0.0
            logabs_out[i] = LOG_ZERO
        else:
            sign_out[i] = 1.0 if cur > 0.0 else -1.0
            logabs_out[i] = math.log(abs(cur)) + off


@njit(cache=True)
def hermite_log(n, x, sign_out, logabs_out):
    for i in range(x.shape[0]):
        xi = x[i]
        off = 0.0
        if n == 0:
            cur = 1.0
        else:
            prev = 1.0
            cur = 2.0 * xi
            for j in range(1, n):
                nxt = 2.0 * xi * cur - 2.0 * j * prev
                prev = cur
                cur = nxt
                am = abs(cur)
                ap = abs(prev)
                amax = am if am > ap else ap
                if amax > RESCALE_LIMIT or (0.0 < amax < 1.0 / RESCALE_LIMIT):
                    cur /= amax
                    prev /= amax
                    off += math.log(amax)
        if cur == 0.0:
            sign_out[i] = 0.0
            logabs_out[i] = LOG_ZERO
        else:
            sign_out[i] = 1.0 if cur > 0.0 else -1.0
            logabs_out[i] = math.log(abs(cur)) + off


@njit(cache=True)
def legendre_norm_log(l, m, x, sign_out, logabs_out):
    seed = 0.5 * (math.log(2.0 * m + 1.0) - math.log(4.0 * math.pi) + math.lgamma(2.0 * m + 1.0)) \
        - m * math.log(2.0) - math.lgamma(m + 1.0)
    sign_seed = -1.0 if m % 2 else 1.0
    for i in range(x.shape[0]):
        xi = x[i]
        if m > 0 and abs(xi) >= 1.0:
            sign_out[i] = 0.0
            logabs_out[i] = LOG_ZERO
            continue
        if m > 0:
            off = seed + m * 0.5 * (math.log1p(-xi) + math.log1p(xi))
        else:
            off = seed
        cur = sign_seed
        prev = 0.0
        for ll in range(m + 1, l + 1):
            a = math.sqrt((4.0 * ll * ll - 1.0) / (ll * ll - m * m))
            if ll == m + 1:
                b = 0.0
            else:
                b = math.sqrt(((2.0 * ll + 1.0) * (ll - 1 + m) * (ll - 1 - m))
                              / ((2.0 * ll - 3.0) * (ll * ll - m * m)))
            nxt = a * xi * cur - b * prev
            prev = cur
            cur = nxt
            am = abs(cur)
            ap = abs(prev)
            amax = am if am > ap else ap
            if amax > RESCALE_LIMIT or (0.0 < amax < 1.0 / RESCALE_LIMIT):
                cur /= amax
                prev /= amax
                off += math.log(amax)
        if cur == 0.0:
            sign_out[i] = 0.0
            logabs_out[i] = LOG_ZERO
        else:
            sign_out[i] = 1.0 if cur > 0.0 else -1.0
            logabs_out[i] = math.log(abs(cur)) + off


@njit(cache=True)
def kepler_solve(mean_anomaly, ecc, u_out, tol, maxiter):
    failures = 0
    for i in range(mean_anomaly.shape[0]):
        M = mean_anomaly[i] % TWO_PI
        refl = M > math.pi
        Ms = TWO_PI - M if refl else M
        lo = 0.0
        hi = math.pi
        u = Ms + ecc * math.sin(Ms)
        if u < 0.0:
            u = 0.0
        elif u > math.pi:
            u = math.pi
        ok = False
        for _ in range(maxiter):
            g = u - ecc * math.sin(u) - Ms
            if abs(g) < tol:
                ok = True
                break
            if g > 0.0:
                if u < hi:
                    hi = u
            else:
                if u > lo:
                    lo = u
            fp = 1.0 - ecc * math.cos(u)
            if fp > 0.0:
                newton = u - g / fp
            else:
                newton = -1.0
            if newton > lo and newton < hi:
                u = newton
            else:
                u = 0.5 * (lo + hi)
        if not ok:
            g = u - ecc * math.sin(u) - Ms
            if abs(g) >= tol:
                failures += 1
        if refl:
            u = (TWO_PI - u) % TWO_PI
        u_out[i] = u
    return failures


@njit(cache=True)
def gaussian_smooth(values, sigma_steps, out):
    n = values.shape[0]
    for i in range(n):
        s = sigma_steps[i]
        w = int(5.0 * s) + 1
        a = i - w
        if a < 0:
            a = 0
        b = i + w + 1
        if b > n:
            b = n
        acc = 0.0
        norm = 0.0
        for j in range(a, b):
            d = (j - i) / s
            ker = math.exp(-0.5 * d * d)
            acc += ker * values[j]
            norm += ker
        out[i] = acc / norm
