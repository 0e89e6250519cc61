"""Time-averaged probability densities of classical Kepler orbit ensembles.

An ensemble is the equal-weight superposition of all bound orbits sharing the
energy, total angular momentum and z-projection of a hydrogen eigenstate.  The
closed forms below carry integrable singularities at the apsides and at the
angular support edges; every value is defined on the open support and is 0
outside, and all quadrature goes through singularity-free substitutions
(eccentric anomaly radially, the in-plane angle gamma angularly).
"""

import math
from dataclasses import dataclass

import numpy as np

from ._quad import gauss_nodes
from .hydrogen_quantum import QuantumNumbers

__all__ = [
    "OrbitEnsembleParams",
    "make_params",
    "radial_density_l0",
    "radial_density",
    "radial_density_eccentric",
    "angular_density_branch",
    "angular_density",
    "density3d_product",
    "oscillator_classical_density",
    "radial_mass",
    "angular_mass",
]


@dataclass(frozen=True)
class OrbitEnsembleParams:
    """Derived classical quantities of an (n, l, m) orbit ensemble.

    ``tau``, ``alpha`` and ``theta_min`` exist only for l >= 1; the l = 0
    ensemble is a degenerate line ellipse taken isotropic in direction.
    """

    n: int
    l: int
    m: int
    ell: float            # sqrt(l(l+1))
    eccentricity: float
    semi_latus: float     # ell^2, units a
    semi_major: float     # n^2, units a
    period: float         # 2 pi n^3, units m_e a^2 / hbar
    r_peri: float
    r_apo: float
    tau: float | None = None
    alpha: float | None = None

    @property
    def theta_min(self) -> float:
        """Lower edge of the polar-angle support, arcsin(m/ell)."""
        if self.l == 0:
            return 0.0
        return math.asin(self.m / self.ell)

    @property
    def sin_alpha(self) -> float:
        if self.alpha is None:
            raise ValueError("l = 0 ensemble has no orbit-plane inclination")
        return math.sin(self.alpha)


def make_params(qn: QuantumNumbers) -> OrbitEnsembleParams:
    """Orbit-ensemble parameters for a validated (n, l, m).

    Negative m maps to |m| (all densities are even in m).
    """
    n, l, m = qn.n, qn.l, abs(qn.m)
    ell_sq = float(l * (l + 1))
    ell = math.sqrt(ell_sq)
    # integer differences avoid the cancellation in 1 - ell^2/n^2
    ecc = math.sqrt(n * n - l * (l + 1)) / n
    if l == 0:
        r_peri = 0.0
        tau = None
        alpha = None
    else:
        r_peri = ell_sq / (1.0 + ecc)
        sin_alpha = math.sqrt(l * (l + 1) - m * m) / ell
        tau = ecc / sin_alpha
        alpha = math.acos(m / ell)
        assert tau >= ecc and math.isfinite(tau)
    r_apo = 2.0 * n * n - r_peri  # keeps r_peri + r_apo == 2 n^2 exact
    return OrbitEnsembleParams(
        n=n, l=l, m=m, ell=ell, eccentricity=ecc,
        semi_latus=ell_sq, semi_major=float(n * n),
        period=2.0 * math.pi * n**3,
        r_peri=r_peri, r_apo=r_apo, tau=tau, alpha=alpha,
    )


def _check_radius(r: np.ndarray):
    if np.any(r <= 0.0):
        raise ValueError("radius must be positive")


def radial_density_l0(n: int, r):
    """Radial density of the degenerate (l = 0) ensemble on (0, 2 n^2)."""
    r_arr = np.asarray(r, dtype=np.float64)
    _check_radius(r_arr)
    out = np.zeros_like(r_arr)
    inside = r_arr < 2.0 * n * n
    rr = r_arr[inside]
    out[inside] = 1.0 / (math.pi * n**3 * np.sqrt(2.0 / rr - 1.0 / (n * n)))
    return out if out.ndim else float(out)


def radial_density(params: OrbitEnsembleParams, r):
    """Radial density of the l >= 1 ensemble on (r_peri, r_apo); 0 outside."""
    if params.l == 0:
        return radial_density_l0(params.n, r)
    r_arr = np.asarray(r, dtype=np.float64)
    _check_radius(r_arr)
    n = params.n
    ell_sq = params.semi_latus
    out = np.zeros_like(r_arr)
    inside = (r_arr > params.r_peri) & (r_arr < params.r_apo)
    rr = r_arr[inside]
    vsq = 2.0 / rr - 1.0 / (n * n)
    bracket = 1.0 - ell_sq / (n * n) - (1.0 - ell_sq / rr) ** 2
    ok = bracket > 0.0
    val = np.zeros_like(rr)
    val[ok] = np.sqrt(1.0 + ell_sq * ell_sq / (rr[ok] ** 2 * bracket[ok])) \
        / (math.pi * n**3 * np.sqrt(vsq[ok]))
    out[inside] = val
    return out if out.ndim else float(out)


def radial_density_eccentric(params_or_n, r):
    """Equivalent closed form through the eccentric anomaly u.

    With r = n^2 (1 - ecc cos u) the time-uniform measure is
    (1 - ecc cos u) du / pi on u in (0, pi), so the density is
    (1 - ecc cos u) / (pi n^2 ecc sin u).  Accepts an integer n for the
    degenerate ecc = 1 ensemble.
    """
    if isinstance(params_or_n, OrbitEnsembleParams):
        n = params_or_n.n
        ecc = params_or_n.eccentricity
        lo, hi = params_or_n.r_peri, params_or_n.r_apo
    else:
        n = int(params_or_n)
        ecc = 1.0
        lo, hi = 0.0, 2.0 * n * n
    r_arr = np.asarray(r, dtype=np.float64)
    _check_radius(r_arr)
    out = np.zeros_like(r_arr)
    inside = (r_arr > lo) & (r_arr < hi)
    cosu = (1.0 - r_arr[inside] / (n * n)) / ecc
    sinu = np.sqrt(np.maximum(1.0 - cosu * cosu, 0.0))
    ok = sinu > 0.0
    val = np.zeros_like(cosu)
    val[ok] = (1.0 - ecc * cosu[ok]) / (math.pi * n * n * ecc * sinu[ok])
    out[inside] = val
    return out if out.ndim else float(out)


def _branch_density(params: OrbitEnsembleParams, theta, orient: float):
    """Angular density of one orbit family; orient=-1 for r = p/(1 - tau cos),
    +1 for the mirrored r = p/(1 + tau cos) family."""
    n = params.n
    ell_sq = params.semi_latus
    tau = params.tau
    sin_alpha_sq = math.sin(params.alpha) ** 2
    th = np.asarray(theta, dtype=np.float64)
    if np.any((th < 0.0) | (th > math.pi)):
        raise ValueError("theta outside [0, pi]")
    cth = np.cos(th)
    sth = np.sin(th)
    band = sin_alpha_sq - cth * cth
    out = np.zeros_like(th)
    inside = band > 0.0
    w = 1.0 + orient * tau * cth[inside]
    vsq = 2.0 * w / ell_sq - 1.0 / (n * n)
    amp = np.sqrt(tau * tau + w * w / band[inside])
    out[inside] = amp * ell_sq * sth[inside] / (math.pi * n**3 * np.sqrt(vsq) * w * w)
    return out


def angular_density_branch(params: OrbitEnsembleParams, theta, branch: int):
    """Polar-angle density of one of the two orbit orientation families."""
    if params.l == 0:
        raise ValueError("l = 0 ensemble has no per-branch angular density")
    if branch not in (1, 2):
        raise ValueError(f"branch must be 1 or 2, got {branch}")
    out = _branch_density(params, theta, -1.0 if branch == 1 else 1.0)
    return out if out.ndim else float(out)


def angular_density(params: OrbitEnsembleParams, theta):
    """Mean of the two branch densities; isotropic sin(theta)/2 for l = 0.

    The l = 0 form is a convention of this toolkit (the degenerate ensemble
    taken isotropic), matching the quantum l = 0 angular density exactly.
    """
    th = np.asarray(theta, dtype=np.float64)
    if np.any((th < 0.0) | (th > math.pi)):
        raise ValueError("theta outside [0, pi]")
    if params.l == 0:
        out = 0.5 * np.sin(th)
    else:
        out = 0.5 * (_branch_density(params, th, -1.0) + _branch_density(params, th, 1.0))
    return out if out.ndim else float(out)


def density3d_product(params: OrbitEnsembleParams, r, theta):
    """Product-ansatz 3D density p_c(r) p_c(theta) / (2 pi r^2 sin(theta)).

    The unique phi-symmetric density with the ensemble's two marginals.
    """
    if params.l == 0:
        raise ValueError("3D product density needs l >= 1")
    r_arr, th = np.broadcast_arrays(np.asarray(r, dtype=np.float64),
                                    np.asarray(theta, dtype=np.float64))
    out = np.zeros_like(r_arr)
    # r <= 0 and the polar axis are outside the support, not errors here
    valid = (r_arr > 0.0) & (np.sin(th) > 0.0)
    rs = r_arr[valid]
    ts = th[valid]
    pr = np.asarray(radial_density(params, rs))
    pt = np.asarray(angular_density(params, ts))
    vals = np.zeros_like(rs)
    ok = (pr > 0.0) & (pt > 0.0)
    vals[ok] = pr[ok] * pt[ok] / (2.0 * math.pi * rs[ok] ** 2 * np.sin(ts[ok]))
    out[valid] = vals
    return out if out.ndim else float(out)


def oscillator_classical_density(n: int, x):
    """Period-weighted density of the classical oscillator at energy n + 1/2."""
    two_e = 2.0 * n + 1.0
    x_arr = np.asarray(x, dtype=np.float64)
    out = np.zeros_like(x_arr)
    inside = x_arr * x_arr < two_e
    out[inside] = 1.0 / (math.pi * np.sqrt(two_e - x_arr[inside] ** 2))
    return out if out.ndim else float(out)


def radial_mass(params: OrbitEnsembleParams, panels: int = 400) -> float:
    """Integral of the radial density via the eccentric-anomaly substitution.

    Evaluates the closed-form density itself (not the u-space shortcut), so
    this doubles as a normalization check of the singular formula.
    """
    n = params.n
    ecc = params.eccentricity
    u, w = gauss_nodes(0.0, math.pi, panels)
    r = n * n * (1.0 - ecc * np.cos(u))
    jac = n * n * ecc * np.sin(u)
    return float(np.dot(w, radial_density(params, r) * jac))


def angular_mass(params: OrbitEnsembleParams, panels: int = 400) -> float:
    """Integral of the angular density via the in-plane angle substitution.

    cos(theta) = sin(alpha) cos(gamma) removes the support-edge singularity.
    """
    if params.l == 0:
        g, w = gauss_nodes(0.0, math.pi, panels)
        return float(np.dot(w, angular_density(params, g)))
    sa = params.sin_alpha
    g, w = gauss_nodes(0.0, math.pi, panels)
    cth = sa * np.cos(g)
    th = np.arccos(cth)
    sth = np.sin(th)
    jac = sa * np.sin(g) / sth
    return float(np.dot(w, angular_density(params, th) * jac))
