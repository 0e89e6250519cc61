"""Pure-numpy implementations of the hot numeric kernels.

Every kernel here has a numba twin in ``_kernels_numba``; the active set is
picked in ``_backend`` (``ORBITWAVE_BACKEND`` env flag).  All recurrences are
carried with per-step magnitude rescaling so results come back as
(sign, log-magnitude) pairs that never overflow.
"""

import math

import numpy as np

RESCALE_LIMIT = 1e250
LOG_ZERO = -np.inf

TWO_PI = 2.0 * math.pi


def _rescale(cur, prev, offset):
    amax = np.maximum(np.abs(cur), np.abs(prev))
    need = (amax > RESCALE_LIMIT) | ((amax < 1.0 / RESCALE_LIMIT) & (amax > 0.0))
    if np.any(need):
        scale = np.where(need, amax, 1.0)
        cur = cur / scale
        prev = prev / scale
        offset = offset + np.where(need, np.log(scale), 0.0)
    return cur, prev, offset


def _finish_log(cur, offset, sign_out, logabs_out):
    sign_out[:] = np.sign(cur)
    with np.errstate(divide="ignore"):
        logabs_out[:] = np.where(cur == 0.0, LOG_ZERO, np.log(np.abs(cur)) + offset)


def laguerre_log(k, alpha, x, sign_out, logabs_out):
    """Generalized Laguerre L_k^alpha(x) in (sign, log|.|) form, degree-ascending."""
    x = np.asarray(x, dtype=np.float64)
    offset = np.zeros_like(x)
    if k == 0:
        cur = np.ones_like(x)
    else:
        prev = np.ones_like(x)
        cur = (alpha + 1.0) - x
        for j in range(1, k):
            nxt = ((2.0 * j + 1.0 + alpha - x) * cur - (j + alpha) * prev) / (j + 1.0)
            prev = cur
            cur = nxt
            cur, prev, offset = _rescale(cur, prev, offset)
    _finish_log(cur, offset, sign_out, logabs_out)


def hermite_log(n, x, sign_out, logabs_out):
    """Physicists' Hermite H_n(x) in (sign, log|.|) form."""
    x = np.asarray(x, dtype=np.float64)
    offset = np.zeros_like(x)
    if n == 0:
        cur = np.ones_like(x)
    else:
        prev = np.ones_like(x)
        cur = 2.0 * x
        for j in range(1, n):
            nxt = 2.0 * x * cur - 2.0 * j * prev
            prev = cur
            cur = nxt
            cur, prev, offset = _rescale(cur, prev, offset)
    _finish_log(cur, offset, sign_out, logabs_out)


def legendre_norm_log(l, m, x, sign_out, logabs_out):
    """Orthonormal spherical-harmonic amplitude N_l^m P_l^m(x), log-scaled.

    Diagonal seed computed in log space, then the l-ascending three-term
    recurrence at fixed m; Condon-Shortley phase included in the seed sign.
    """
    x = np.asarray(x, dtype=np.float64)
    # log of |N_m^m P_m^m| = seed; P_m^m carries (1-x^2)^(m/2)
    seed = 0.5 * (math.log(2 * m + 1) - math.log(4.0 * math.pi) + math.lgamma(2 * m + 1)) \
        - m * math.log(2.0) - math.lgamma(m + 1)
    sign_seed = -1.0 if m % 2 else 1.0
    cur = np.full_like(x, sign_seed)
    if m > 0:
        with np.errstate(divide="ignore"):
            edge = np.abs(x) >= 1.0
            log_sin = np.where(edge, LOG_ZERO, 0.5 * (np.log1p(-x) + np.log1p(x)))
        offset = np.where(edge, 0.0, seed + m * log_sin)
        cur = np.where(edge, 0.0, cur)
    else:
        offset = np.full_like(x, seed)
    prev = np.zeros_like(x)
    for ll in range(m + 1, l + 1):
        a = math.sqrt((4.0 * ll * ll - 1.0) / (ll * ll - m * m))
        if ll == m + 1:
            b = 0.0
        else:
            b = math.sqrt(((2.0 * ll + 1.0) * (ll - 1 + m) * (ll - 1 - m))
                          / ((2.0 * ll - 3.0) * (ll * ll - m * m)))
        nxt = a * x * cur - b * prev
        prev = cur
        cur = nxt
        cur, prev, offset = _rescale(cur, prev, offset)
    _finish_log(cur, offset, sign_out, logabs_out)


def kepler_solve(mean_anomaly, ecc, u_out, tol, maxiter):
    """Solve u - ecc*sin(u) = M elementwise; safeguarded Newton with bisection.

    Returns the number of elements that failed to reach |residual| < tol.
    """
    M = np.mod(np.asarray(mean_anomaly, dtype=np.float64), TWO_PI)
    refl = M > math.pi
    Ms = np.where(refl, TWO_PI - M, M)

    lo = np.zeros_like(Ms)
    hi = np.full_like(Ms, math.pi)
    u = np.clip(Ms + ecc * np.sin(Ms), 0.0, math.pi)
    done = np.zeros(Ms.shape, dtype=bool)
    for _ in range(maxiter):
        g = u - ecc * np.sin(u) - Ms
        done |= np.abs(g) < tol
        if done.all():
            break
        pos = g > 0.0
        hi = np.where(pos & ~done, np.minimum(hi, u), hi)
        lo = np.where(~pos & ~done, np.maximum(lo, u), lo)
        fp = 1.0 - ecc * np.cos(u)
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = u - g / fp
        bad = ~((newton > lo) & (newton < hi))
        u_next = np.where(bad, 0.5 * (lo + hi), newton)
        u = np.where(done, u, u_next)
    g = u - ecc * np.sin(u) - Ms
    done = np.abs(g) < tol
    u_out[:] = np.where(refl, np.mod(TWO_PI - u, TWO_PI), u)
    return int(np.size(done) - np.count_nonzero(done))


def gaussian_smooth(values, sigma_steps, out):
    """Row-normalized truncated Gaussian smoothing on a uniform grid.

    ``sigma_steps`` is the kernel width at each output point in units of the
    grid step; the kernel is cut at 5 sigma and renormalized wherever the
    window is clipped by the domain edges.
    """
    n = values.shape[0]
    idx = np.arange(n, dtype=np.float64)
    for i in range(n):
        s = sigma_steps[i]
        w = int(5.0 * s) + 1
        a = max(0, i - w)
        b = min(n, i + w + 1)
        d = (idx[a:b] - i) / s
        ker = np.exp(-0.5 * d * d)
        out[i] = np.dot(ker, values[a:b]) / np.sum(ker)
