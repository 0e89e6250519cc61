"""Hydrogen eigenstate probability densities in dimensionless atomic units.

Lengths are r_tilde = r/a (Bohr radii), energies are hbar^2/(m_e a^2).  All
wavefunction assembly happens in log space with sign tracking; only the final
density is converted back to linear scale.
"""

import math
from dataclasses import dataclass

import numpy as np

from .specfun import (
    assoc_legendre_normalized_log_array,
    hermite_log_array,
    laguerre_log_array,
)

__all__ = [
    "QuantumNumbers",
    "energy",
    "radial_wavefunction",
    "radial_density",
    "angular_density",
    "density3d",
    "oscillator_quantum_density",
    "radial_mass",
    "angular_mass",
    "oscillator_mass",
    "radial_node_count",
    "default_radial_grid",
    "default_angular_grid",
    "default_oscillator_grid",
]

RADIAL_MARGIN = 1.1  # grid reaches 10% past the classical cutoff 2n^2


@dataclass(frozen=True)
class QuantumNumbers:
    """Validated (n, l, m) triple of a bound hydrogen eigenstate."""

    n: int
    l: int
    m: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.l <= self.n - 1:
            raise ValueError(f"need 0 <= l <= n-1, got n={self.n}, l={self.l}")
        if abs(self.m) > self.l:
            raise ValueError(f"need |m| <= l, got l={self.l}, m={self.m}")


def energy(qn: QuantumNumbers) -> float:
    """Eigenenergy -1/(2 n^2)."""
    return -0.5 / (qn.n * qn.n)


def _log_radial_norm(n: int, l: int) -> float:
    # sqrt((2/n)^3 (n-l-1)! / (2n (n+l)!))
    return 0.5 * (3.0 * (math.log(2.0) - math.log(n))
                  + math.lgamma(n - l) - math.log(2.0 * n) - math.lgamma(n + l + 1))


def _radial_sign_log(qn: QuantumNumbers, r):
    """(sign, log|R_nl|) on an array of radii."""
    n, l = qn.n, qn.l
    r = np.asarray(r, dtype=np.float64)
    if np.any(r < 0.0):
        raise ValueError("radius must be non-negative")
    x = 2.0 * r / n
    sign, loglag = laguerre_log_array(n - l - 1, 2 * l + 1, x)
    with np.errstate(divide="ignore"):
        logpow = l * np.log(x) if l > 0 else np.zeros_like(x)
    logR = _log_radial_norm(n, l) + logpow - r / n + loglag
    if l > 0:
        zero = x == 0.0
        sign = np.where(zero, 0.0, sign)
        logR = np.where(zero, -np.inf, logR)
    return sign, logR


def radial_wavefunction(qn: QuantumNumbers, r):
    """R_nl(r_tilde) in units a^(-3/2); scalar or array radii."""
    r_arr = np.asarray(r, dtype=np.float64)
    sign, logR = _radial_sign_log(qn, r_arr)
    with np.errstate(over="ignore"):
        out = sign * np.exp(logR)
    return out if out.ndim else float(out)


def radial_density(qn: QuantumNumbers, r):
    """p_q(r_tilde) = r_tilde^2 R_nl^2, the radial probability density."""
    r_arr = np.asarray(r, dtype=np.float64)
    sign, logR = _radial_sign_log(qn, r_arr)
    with np.errstate(divide="ignore"):
        logr = np.where(r_arr > 0.0, np.log(r_arr), -np.inf)
    out = np.where(sign == 0.0, 0.0, np.exp(2.0 * logR + 2.0 * logr))
    return out if out.ndim else float(out)


def angular_density(qn: QuantumNumbers, theta):
    """p_q(theta): the polar-angle density of |Y_l^m|^2, phi already integrated."""
    th = np.asarray(theta, dtype=np.float64)
    if np.any((th < 0.0) | (th > math.pi)):
        raise ValueError("theta outside [0, pi]")
    sign, logN = assoc_legendre_normalized_log_array(qn.l, abs(qn.m), np.cos(th))
    out = np.where(sign == 0.0, 0.0, 2.0 * math.pi * np.exp(2.0 * logN) * np.sin(th))
    return out if out.ndim else float(out)


def density3d(qn: QuantumNumbers, r, theta):
    """|psi_nlm|^2 in units a^(-3); independent of phi."""
    r_arr, th = np.broadcast_arrays(np.asarray(r, dtype=np.float64),
                                    np.asarray(theta, dtype=np.float64))
    if np.any((th < 0.0) | (th > math.pi)):
        raise ValueError("theta outside [0, pi]")
    rsign, logR = _radial_sign_log(qn, r_arr)
    asign, logN = assoc_legendre_normalized_log_array(qn.l, abs(qn.m), np.cos(th))
    out = np.where((rsign == 0.0) | (asign == 0.0), 0.0, np.exp(2.0 * (logR + logN)))
    return out if out.ndim else float(out)


def oscillator_quantum_density(n: int, x):
    """|psi_n(x)|^2 of the 1D harmonic oscillator, x in units sqrt(hbar/(m w))."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    x_arr = np.asarray(x, dtype=np.float64)
    sign, logH = hermite_log_array(n, x_arr)
    lognorm = n * math.log(2.0) + math.lgamma(n + 1) + 0.5 * math.log(math.pi)
    out = np.where(sign == 0.0, 0.0, np.exp(2.0 * logH - x_arr * x_arr - lognorm))
    return out if out.ndim else float(out)


def radial_mass(qn: QuantumNumbers) -> float:
    """Full integral of the radial density (equals 1 for a correct R_nl).

    Piecewise Gauss-Legendre: panels scale with the node count inside the
    classical support, plus the turning-point tail out to where the WKB decay
    has killed everything beyond 1e-10.
    """
    from ._quad import integrate
    n, l = qn.n, qn.l
    r_apo = n * n + math.sqrt(n**4 - n * n * l * (l + 1))
    r_peri = 2.0 * n * n - r_apo
    f = lambda r: radial_density(qn, r)
    total = 0.0
    if r_peri > 0.0:
        total += integrate(f, 0.0, r_peri, 40)
    total += integrate(f, r_peri, r_apo, 6 * (n - l + 4))
    total += integrate(f, r_apo, r_apo + 12.0 * n ** (4.0 / 3.0), 60)
    return total


def angular_mass(qn: QuantumNumbers) -> float:
    """Full integral of the polar-angle density (equals 1)."""
    from ._quad import integrate
    f = lambda th: angular_density(qn, th)
    return integrate(f, 0.0, math.pi, 6 * (qn.l - abs(qn.m) + 4))


def oscillator_mass(n: int) -> float:
    """Full integral of the oscillator density (equals 1)."""
    from ._quad import integrate
    turn = math.sqrt(2.0 * n + 1.0)
    f = lambda x: oscillator_quantum_density(n, x)
    return integrate(f, -turn - 12.0, turn + 12.0, 8 * (n + 4))


def radial_node_count(qn: QuantumNumbers, points: int = 8000) -> int:
    """Interior sign changes of R_nl on a fine grid (expected n - l - 1)."""
    r = np.linspace(0.0, 2.0 * RADIAL_MARGIN * qn.n * qn.n, points)[1:]
    vals = radial_wavefunction(qn, r)
    sign = np.sign(vals[vals != 0.0])
    return int(np.count_nonzero(sign[1:] != sign[:-1]))


def default_radial_grid(n: int, points: int = 4000) -> np.ndarray:
    """Uniform r_tilde grid on [0, 2.2 n^2] resolving the fastest oscillation."""
    return np.linspace(0.0, 2.0 * RADIAL_MARGIN * n * n, points)


def default_angular_grid(points: int = 4000) -> np.ndarray:
    return np.linspace(0.0, math.pi, points)


def default_oscillator_grid(n: int, points: int = 4000) -> np.ndarray:
    turn = math.sqrt(2.0 * n + 1.0)
    return np.linspace(-1.2 * turn, 1.2 * turn, points)
