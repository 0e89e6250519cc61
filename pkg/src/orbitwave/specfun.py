"""Numerically stable orthogonal polynomials and normalizations.

Everything that can overflow for large degree is evaluated through
(sign, log-magnitude) pairs; the linear-scale helpers are exact re-exports of
the same recurrences without rescaling.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels

__all__ = [
    "LogScaledValue",
    "log_factorial",
    "laguerre",
    "laguerre_log",
    "laguerre_log_array",
    "assoc_legendre_normalized",
    "assoc_legendre_normalized_array",
    "hermite_log",
    "hermite_log_array",
]


@dataclass(frozen=True)
class LogScaledValue:
    """A real number stored as sign and natural log of its magnitude.

    ``sign == 0`` represents exactly zero; ``log_abs`` is meaningless then.
    """

    sign: int
    log_abs: float

    @classmethod
    def from_real(cls, x: float) -> "LogScaledValue":
        if x == 0.0:
            return cls(0, -math.inf)
        return cls(1 if x > 0.0 else -1, math.log(abs(x)))

    def to_real(self) -> float:
        if self.sign == 0:
            return 0.0
        if self.log_abs > 709.0:  # exp overflow threshold for float64
            return self.sign * math.inf
        return self.sign * math.exp(self.log_abs)


def log_factorial(k: int) -> float:
    """ln(k!) for k >= 0."""
    if k < 0:
        raise ValueError(f"factorial argument must be non-negative, got {k}")
    return math.lgamma(k + 1)


def laguerre(k: int, alpha: float, x):
    """Generalized Laguerre polynomial L_k^alpha(x), degree-ascending recurrence.

    Plain float64 arithmetic; overflows for large degree/argument — use
    :func:`laguerre_log` there.
    """
    if k < 0:
        raise ValueError(f"degree must be non-negative, got {k}")
    x = np.asarray(x, dtype=np.float64)
    if k == 0:
        cur = np.ones_like(x)
    else:
        prev = np.ones_like(x)
        cur = (alpha + 1.0) - x
        for j in range(1, k):
            nxt = ((2.0 * j + 1.0 + alpha - x) * cur - (j + alpha) * prev) / (j + 1.0)
            prev, cur = cur, nxt
    return cur if cur.ndim else float(cur)


def _run_log_kernel(kernel, x, *args):
    """Feed an arbitrary-shape argument through a 1-d (sign, log) kernel."""
    x = np.asarray(x, dtype=np.float64)
    flat = np.ascontiguousarray(x.ravel())
    sign = np.empty_like(flat)
    logabs = np.empty_like(flat)
    kernel(*args, flat, sign, logabs)
    return sign.reshape(x.shape), logabs.reshape(x.shape)


def laguerre_log_array(k: int, alpha: float, x) -> tuple[np.ndarray, np.ndarray]:
    """(sign, log|L_k^alpha|) arrays; rescaled recurrence, never overflows."""
    if k < 0:
        raise ValueError(f"degree must be non-negative, got {k}")
    return _run_log_kernel(kernels.laguerre_log, x, k, float(alpha))


def laguerre_log(k: int, alpha: float, x: float) -> LogScaledValue:
    sign, logabs = laguerre_log_array(k, alpha, np.array([x]))
    return LogScaledValue(int(sign[0]), float(logabs[0]))


def assoc_legendre_normalized_array(l: int, m: int, x) -> np.ndarray:
    """Fully normalized associated Legendre N_l^m P_l^m(x) (Condon-Shortley).

    This is the spherical-harmonic amplitude without the exp(i m phi) factor;
    computed from a log-space diagonal seed so large (l, m) stay finite.
    """
    sign, logabs = assoc_legendre_normalized_log_array(l, m, x)
    with np.errstate(over="ignore"):
        return sign * np.exp(logabs)


def assoc_legendre_normalized_log_array(l: int, m: int, x) -> tuple[np.ndarray, np.ndarray]:
    if not 0 <= m <= l:
        raise ValueError(f"need 0 <= m <= l, got l={l}, m={m}")
    if np.any(np.abs(np.asarray(x)) > 1.0):
        raise ValueError("argument outside [-1, 1]")
    return _run_log_kernel(kernels.legendre_norm_log, x, l, m)


def assoc_legendre_normalized(l: int, m: int, x: float) -> float:
    return float(assoc_legendre_normalized_array(l, m, np.array([x]))[0])


def hermite_log_array(n: int, x) -> tuple[np.ndarray, np.ndarray]:
    """(sign, log|H_n|) arrays for the physicists' Hermite polynomial."""
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    return _run_log_kernel(kernels.hermite_log, x, n)


def hermite_log(n: int, x: float) -> LogScaledValue:
    sign, logabs = hermite_log_array(n, np.array([x]))
    return LogScaledValue(int(sign[0]), float(logabs[0]))
