"""Monte Carlo verification of the classical ensemble densities.

Samples orbit positions uniformly in time by inverting Kepler's equation --
exact in distribution, no equations of motion integrated.  The sample stream
is split into fixed-size chunks, each driven by a generator derived from
(seed, chunk index), so histograms are bit-identical for any worker count.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .kepler_classical import OrbitEnsembleParams, angular_density, radial_density

__all__ = [
    "OrbitSample",
    "Histogram",
    "Histogram2D",
    "solve_kepler",
    "sample_position",
    "histogram_radial",
    "histogram_angular",
    "histogram_2d",
]

CHUNK = 1 << 15
PHASE_MODES = ("two-branch", "uniform-phase")

KEPLER_TOL = 1e-13     # iteration target; public contract is 1e-12
KEPLER_MAXITER = 60


@dataclass(frozen=True)
class OrbitSample:
    """One time-uniform draw from the orbit ensemble."""

    r: float
    theta: float
    phi: float
    branch: int
    u: float       # eccentric anomaly
    gamma: float   # in-plane position angle (0.0 for the l = 0 ensemble)


@dataclass(frozen=True)
class Histogram:
    edges: np.ndarray
    counts: np.ndarray
    density: np.ndarray

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True)
class Histogram2D:
    r_edges: np.ndarray
    theta_edges: np.ndarray
    counts: np.ndarray
    density: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def solve_kepler(mean_anomaly, ecc: float):
    """u in [0, 2 pi) with u - ecc sin(u) = M (mod 2 pi), residual below 1e-12.

    Newton iteration from u = M + ecc sin(M) with a bisection safeguard; a
    non-converged element raises (that is a solver bug, never a data issue).
    """
    if not 0.0 <= ecc <= 1.0:
        raise ValueError(f"eccentricity outside [0, 1]: {ecc}")
    arr = np.atleast_1d(np.ascontiguousarray(mean_anomaly, dtype=np.float64))
    out = np.empty_like(arr)
    failures = kernels.kepler_solve(arr, float(ecc), out, KEPLER_TOL, KEPLER_MAXITER)
    if failures:
        raise RuntimeError(
            f"Kepler solver failed to reach |residual| < {KEPLER_TOL} "
            f"for {failures} of {arr.size} samples (ecc={ecc})")
    return out if np.ndim(mean_anomaly) else float(out[0])


def _chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(int(chunk),)))


def _draw_positions(params: OrbitEnsembleParams, rng: np.random.Generator,
                    count: int, phase_mode: str):
    """Arrays (r, theta, phi, branch, u, gamma) of time-uniform ensemble draws."""
    if phase_mode not in PHASE_MODES:
        raise ValueError(f"phase_mode must be one of {PHASE_MODES}, got {phase_mode!r}")
    n = params.n
    ecc = params.eccentricity
    M = rng.uniform(0.0, 2.0 * math.pi, count)
    branch = rng.integers(1, 3, count)
    phi = rng.uniform(0.0, 2.0 * math.pi, count)
    extra = rng.random(count)  # phase gamma_0, or the isotropic direction for l = 0
    u = np.atleast_1d(solve_kepler(M, ecc))
    r = n * n * (1.0 - ecc * np.cos(u))
    np.clip(r, params.r_peri, params.r_apo, out=r)
    if params.l == 0:
        cos_theta = 2.0 * extra - 1.0
        gamma = np.zeros(count)
    else:
        # true anomaly via atan2 keeps the quadrant right near u = pi
        f = np.arctan2(math.sqrt(1.0 - ecc * ecc) * np.sin(u), np.cos(u) - ecc)
        gamma = f + math.pi * (branch == 1)
        if phase_mode == "uniform-phase":
            gamma = gamma + 2.0 * math.pi * extra
        cos_theta = params.sin_alpha * np.cos(gamma)
    theta = np.arccos(np.clip(cos_theta, -1.0, 1.0))
    return r, theta, phi, branch, u, gamma


def sample_position(params: OrbitEnsembleParams, rng: np.random.Generator,
                    phase_mode: str = "two-branch") -> OrbitSample:
    """Draw a single position; see the histogram functions for bulk sampling."""
    r, theta, phi, branch, u, gamma = _draw_positions(params, rng, 1, phase_mode)
    return OrbitSample(r=float(r[0]), theta=float(theta[0]), phi=float(phi[0]),
                       branch=int(branch[0]), u=float(u[0]), gamma=float(gamma[0]))


def _chunk_sizes(total: int):
    sizes = [CHUNK] * (total // CHUNK)
    if total % CHUNK:
        sizes.append(total % CHUNK)
    return sizes


def _accumulate(func, sample_count: int, seed: int, workers: int):
    """Sum integer count arrays over deterministic per-chunk generators."""
    sizes = _chunk_sizes(sample_count)
    jobs = [(k, size) for k, size in enumerate(sizes)]

    def one(job):
        k, size = job
        return func(_chunk_rng(seed, k), size)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one, jobs))
    else:
        parts = [one(j) for j in jobs]
    acc = parts[0]
    for p in parts[1:]:
        acc = acc + p
    return acc


def _validate_histogram_args(sample_count: int, bins: int):
    if sample_count < 1:
        raise ValueError(f"sample_count must be >= 1, got {sample_count}")
    if bins < 2:
        raise ValueError(f"bins must be >= 2, got {bins}")


def histogram_radial(params: OrbitEnsembleParams, sample_count: int, bins: int,
                     seed: int, workers: int = 1) -> Histogram:
    """Empirical radial density on [r_peri, r_apo]; deterministic per seed."""
    _validate_histogram_args(sample_count, bins)
    edges = np.linspace(params.r_peri, params.r_apo, bins + 1)

    def counts(rng, size):
        r = _draw_positions(params, rng, size, "two-branch")[0]
        return np.histogram(r, bins=edges)[0]

    c = _accumulate(counts, sample_count, seed, workers)
    density = c / (sample_count * np.diff(edges))
    return Histogram(edges=edges, counts=c, density=density)


def histogram_angular(params: OrbitEnsembleParams, sample_count: int, bins: int,
                      seed: int, phase_mode: str = "two-branch",
                      workers: int = 1) -> Histogram:
    """Empirical polar-angle density on [0, pi]."""
    _validate_histogram_args(sample_count, bins)
    edges = np.linspace(0.0, math.pi, bins + 1)

    def counts(rng, size):
        theta = _draw_positions(params, rng, size, phase_mode)[1]
        return np.histogram(theta, bins=edges)[0]

    c = _accumulate(counts, sample_count, seed, workers)
    density = c / (sample_count * np.diff(edges))
    return Histogram(edges=edges, counts=c, density=density)


def histogram_2d(params: OrbitEnsembleParams, sample_count: int, r_bins: int,
                 theta_bins: int, seed: int, phase_mode: str = "two-branch",
                 workers: int = 1) -> Histogram2D:
    """Joint (r, theta) empirical density."""
    _validate_histogram_args(sample_count, r_bins)
    _validate_histogram_args(sample_count, theta_bins)
    r_edges = np.linspace(params.r_peri, params.r_apo, r_bins + 1)
    t_edges = np.linspace(0.0, math.pi, theta_bins + 1)

    def counts(rng, size):
        r, theta = _draw_positions(params, rng, size, phase_mode)[:2]
        return np.histogram2d(r, theta, bins=(r_edges, t_edges))[0].astype(np.int64)

    c = _accumulate(counts, sample_count, seed, workers)
    area = np.outer(np.diff(r_edges), np.diff(t_edges))
    density = c / (sample_count * area)
    return Histogram2D(r_edges=r_edges, theta_edges=t_edges, counts=c, density=density)


def analytic_radial_at_centers(params: OrbitEnsembleParams, hist: Histogram) -> np.ndarray:
    return np.asarray(radial_density(params, hist.centers))


def analytic_angular_at_centers(params: OrbitEnsembleParams, hist: Histogram) -> np.ndarray:
    return np.asarray(angular_density(params, hist.centers))


def histogram_l1(hist: Histogram, analytic: np.ndarray,
                 singular: tuple = ()) -> float:
    """Mass-weighted L1 between empirical and analytic densities.

    The first and last bins, plus any bin containing a point of ``singular``
    (the support edges for densities whose support sits inside the histogram
    range), are excluded: the analytic density is integrably singular there,
    so a finite-bin average measures bin width, not physics.
    """
    nbins = len(hist.density)
    keep = np.ones(nbins, dtype=bool)
    keep[0] = keep[-1] = False
    for point in singular:
        idx = int(np.searchsorted(hist.edges, point) - 1)
        keep[min(max(idx, 0), nbins - 1)] = False
    return float(np.sum(np.abs(hist.density[keep] - analytic[keep]) * hist.widths[keep]))
