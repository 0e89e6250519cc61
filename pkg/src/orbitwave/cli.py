"""Command-line front end writing deterministic CSV/JSON artifacts.

One subcommand per figure-style output: curve commands (radial, angular,
density3d, oscillator), the Monte Carlo oracle, and the converge/limit
studies.  Files are written atomically (temp file + rename); identical
configurations, seeds included, produce byte-identical outputs.
"""

import argparse
import dataclasses
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import correspondence_analysis as ca
from . import hydrogen_quantum as hq
from . import kepler_classical as kc
from . import orbit_ensemble_oracle as oracle
from .hydrogen_quantum import QuantumNumbers

__all__ = ["RunConfig", "run", "main"]

OUT_ENV = "ORBITWAVE_OUT"
EXIT_USAGE = 2
EXIT_COMPUTE = 3
QUANTUM_DRIFT = 0.02


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    l: int | None = None
    m: int = 0
    points: int = 4000
    r_max: float | None = None          # None = auto (2.2 n^2)
    samples: int = 1_000_000
    bins: int = 200
    seed: int = 42
    phase_mode: str = "two-branch"
    kind: str = "radial"                # oracle histogram dimension
    n_list: tuple = ()
    ratio_l: Fraction | None = None
    ratio_m: Fraction | None = None
    out: str | None = None
    format: str = "csv"
    workers: int = 1
    curves_dir: str | None = None


def _fmt(x: float) -> str:
    return f"{x:.11e}"


def _write_atomic(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv_text(columns: dict[str, np.ndarray]) -> str:
    names = list(columns)
    rows = [",".join(names)]
    data = [np.asarray(columns[c]) for c in names]
    for i in range(len(data[0])):
        rows.append(",".join(_fmt(float(col[i])) for col in data))
    return "\n".join(rows) + "\n"


def _config_echo(config: RunConfig) -> dict:
    d = dataclasses.asdict(config)
    d["ratio_l"] = str(config.ratio_l) if config.ratio_l is not None else None
    d["ratio_m"] = str(config.ratio_m) if config.ratio_m is not None else None
    d["n_list"] = list(config.n_list)
    return d


def _json_text(config: RunConfig, payload: dict) -> str:
    return json.dumps({"config": _config_echo(config), **payload}, indent=2) + "\n"


def _resolve_out(config: RunConfig, default_name: str) -> Path:
    base = Path(os.environ.get(OUT_ENV, "."))
    out = Path(config.out) if config.out else Path(default_name)
    return out if out.is_absolute() else base / out


def _qn(config: RunConfig) -> QuantumNumbers:
    if config.n is None or config.l is None:
        raise UsageError("this command requires --n and --l")
    try:
        return QuantumNumbers(config.n, config.l, config.m)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _check_quantum_mass(mass: float, what: str):
    # grid-independent quadrature, so a coarse or truncated plot grid never trips it
    if abs(mass - 1.0) > QUANTUM_DRIFT:
        raise RuntimeError(
            f"{what} normalization drifted to {mass:.6f} (> 2% off unit mass)")


def _emit(config: RunConfig, default_name: str, columns: dict, payload_extra=None) -> Path:
    path = _resolve_out(config, default_name + "." + config.format)
    if config.format == "csv":
        _write_atomic(path, _csv_text(columns))
    else:
        payload = {"columns": {k: [float(v) for v in np.asarray(vals)]
                               for k, vals in columns.items()}}
        if payload_extra:
            payload.update(payload_extra)
        _write_atomic(path, _json_text(config, payload))
    return path


def _run_radial(config: RunConfig) -> Path:
    qn = _qn(config)
    r_max = config.r_max if config.r_max is not None else 2.2 * qn.n * qn.n
    params = kc.make_params(qn)
    quantum = ca.quantum_radial_curve(qn, config.points, r_max)
    _check_quantum_mass(hq.radial_mass(qn), "radial quantum density")
    classical = ca.classical_radial_curve(params, quantum.grid)
    smoothed = ca.smooth(quantum, params)
    return _emit(config, f"radial_n{qn.n}_l{qn.l}", {
        "r_tilde": quantum.grid,
        "p_q": quantum.values,
        "p_c": classical.values,
        "p_c_x2": 2.0 * classical.values,
        "p_q_smoothed": smoothed.values,
    })


def _run_angular(config: RunConfig) -> Path:
    qn = _qn(config)
    params = kc.make_params(qn)
    quantum = ca.quantum_angular_curve(qn, config.points)
    _check_quantum_mass(hq.angular_mass(qn), "angular quantum density")
    classical = ca.classical_angular_curve(params, quantum.grid)
    if qn.l == 0:
        print("note: l = 0 classical angular density is the isotropic "
              "convention sin(theta)/2", file=sys.stderr)
    return _emit(config, f"angular_n{qn.n}_l{qn.l}_m{qn.m}", {
        "theta": quantum.grid,
        "p_q": quantum.values,
        "p_c": classical.values,
    })


def _run_density3d(config: RunConfig) -> Path:
    qn = _qn(config)
    if qn.l == 0:
        raise UsageError("density3d needs l >= 1 (classical product undefined at l = 0)")
    params = kc.make_params(qn)
    pts = config.points if config.points != 4000 else 200
    r_max = config.r_max if config.r_max is not None else 2.2 * qn.n * qn.n
    r = np.linspace(0.0, r_max, pts)
    theta = np.linspace(0.0, math.pi, pts)
    R, TH = np.meshgrid(r, theta, indexing="ij")
    rho_q = hq.density3d(qn, R, TH)
    rho_c = kc.density3d_product(params, R, TH)
    return _emit(config, f"density3d_n{qn.n}_l{qn.l}_m{qn.m}", {
        "r_tilde": R.ravel(),
        "theta": TH.ravel(),
        "rho_q": rho_q.ravel(),
        "rho_c_product": rho_c.ravel(),
    })


def _run_oscillator(config: RunConfig) -> Path:
    if config.n is None or config.n < 0:
        raise UsageError("oscillator requires --n >= 0")
    n = config.n
    quantum = ca.oscillator_quantum_curve(n, config.points)
    _check_quantum_mass(hq.oscillator_mass(n), "oscillator quantum density")
    classical = ca.oscillator_classical_curve(n, config.points)
    return _emit(config, f"oscillator_n{n}", {
        "x": quantum.grid,
        "p_q": quantum.values,
        "p_c": classical.values,
    })


def _run_oracle(config: RunConfig) -> Path:
    qn = _qn(config)
    params = kc.make_params(qn)
    name = f"oracle_{config.kind}_n{qn.n}_l{qn.l}_m{qn.m}"
    if config.kind == "radial":
        hist = oracle.histogram_radial(params, config.samples, config.bins,
                                       config.seed, workers=config.workers)
        analytic = oracle.analytic_radial_at_centers(params, hist)
        return _emit(config, name, {
            "bin_left": hist.edges[:-1],
            "bin_right": hist.edges[1:],
            "density_empirical": hist.density,
            "density_analytic": analytic,
        })
    if config.kind == "angular":
        hist = oracle.histogram_angular(params, config.samples, config.bins,
                                        config.seed, phase_mode=config.phase_mode,
                                        workers=config.workers)
        analytic = oracle.analytic_angular_at_centers(params, hist)
        return _emit(config, name, {
            "bin_left": hist.edges[:-1],
            "bin_right": hist.edges[1:],
            "density_empirical": hist.density,
            "density_analytic": analytic,
        })
    if config.kind == "2d":
        if qn.l == 0:
            raise UsageError("2d oracle needs l >= 1")
        hist = oracle.histogram_2d(params, config.samples, config.bins, config.bins,
                                   config.seed, phase_mode=config.phase_mode,
                                   workers=config.workers)
        rl = np.repeat(hist.r_edges[:-1], config.bins)
        rr = np.repeat(hist.r_edges[1:], config.bins)
        tl = np.tile(hist.theta_edges[:-1], config.bins)
        tr = np.tile(hist.theta_edges[1:], config.bins)
        rc = 0.5 * (rl + rr)
        tc = 0.5 * (tl + tr)
        # product-ansatz joint (r, theta) density for side-by-side comparison
        analytic = np.asarray(kc.radial_density(params, rc)) \
            * np.asarray(kc.angular_density(params, tc))
        return _emit(config, name, {
            "r_left": rl, "r_right": rr,
            "theta_left": tl, "theta_right": tr,
            "density_empirical": hist.density.ravel(),
            "density_analytic": analytic,
        })
    raise UsageError(f"unknown oracle kind {config.kind!r}")


def _report_dict(report: ca.ComparisonReport | None) -> dict | None:
    return None if report is None else dataclasses.asdict(report)


def _run_converge(config: RunConfig) -> Path:
    if config.ratio_l is None or not config.n_list:
        raise UsageError("converge requires --ratio-l and --n-list")
    try:
        rows = ca.convergence_study(config.ratio_l, config.ratio_m, config.n_list)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    path = _resolve_out(config, "converge." + config.format)
    if config.format == "json":
        payload = {"rows": [{
            "n": row.n, "l": row.l, "m": row.m,
            "radial": _report_dict(row.radial),
            "angular": _report_dict(row.angular),
        } for row in rows]}
        _write_atomic(path, _json_text(config, payload))
    else:
        cols = {
            "n": [r.n for r in rows],
            "l": [r.l for r in rows],
            "m": [r.m for r in rows],
            "l1_radial_smoothed": [r.radial.l1 for r in rows],
            "mass_in_support": [r.radial.mass_in_classical_support for r in rows],
            "l1_angular": [r.angular.l1 if r.angular else math.nan for r in rows],
        }
        _write_atomic(path, _csv_text(cols))
    return path


def _run_limit(config: RunConfig) -> Path:
    if len(config.n_list) < 2:
        raise UsageError("limit requires --n-list with at least two entries")
    study = ca.singular_limit_study(config.n_list)
    if config.curves_dir is not None:
        base = Path(config.curves_dir)
        if not base.is_absolute():
            base = Path(os.environ.get(OUT_ENV, ".")) / base
        for n in config.n_list:
            grid = hq.default_radial_grid(n, config.points)
            y0 = grid * hq.radial_wavefunction(QuantumNumbers(n, 0, 0), grid)
            y1 = grid * hq.radial_wavefunction(QuantumNumbers(n, 1, 0), grid)
            _write_atomic(base / f"limit_n{n}.csv", _csv_text({
                "r_tilde": grid, "r_R_n0": y0, "r_R_n1": y1,
            }))
    path = _resolve_out(config, "limit." + config.format)
    if config.format == "json":
        payload = {
            "distances": [{"n": n, "d": d} for n, d in study.entries],
            "strictly_decreasing": study.strictly_decreasing,
            "last_term_errors": [{"n": n, "rel_err": e} for n, e in study.last_term_errors],
        }
        _write_atomic(path, _json_text(config, payload))
    else:
        _write_atomic(path, _csv_text({
            "n": [n for n, _ in study.entries],
            "d": [d for _, d in study.entries],
            "last_term_rel_err": [e for _, e in study.last_term_errors],
        }))
    return path


_RUNNERS = {
    "radial": _run_radial,
    "angular": _run_angular,
    "density3d": _run_density3d,
    "oscillator": _run_oscillator,
    "oracle": _run_oracle,
    "converge": _run_converge,
    "limit": _run_limit,
}


def run(config: RunConfig) -> int:
    """Execute one command; returns the process exit status."""
    try:
        runner = _RUNNERS[config.command]
    except KeyError:
        print(f"error: unknown command {config.command!r}", file=sys.stderr)
        return EXIT_USAGE
    try:
        path = runner(config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RuntimeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    print(f"wrote {path}")
    return 0


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.split(",") if t)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from exc


def _r_max(text: str) -> float | None:
    if text == "auto":
        return None
    try:
        return float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"--r-max must be a number or 'auto'") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitwave",
        description="Hydrogen eigenstate densities vs classical orbit ensembles")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, formats=("csv", "json")):
        p.add_argument("--out", help=f"output path (relative paths resolve under ${OUT_ENV})")
        p.add_argument("--format", choices=formats, default=formats[0])

    def add_qn(p, with_m=True):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--l", type=int, required=True)
        if with_m:
            p.add_argument("--m", type=int, default=0)

    p = sub.add_parser("radial", help="radial density curves (quantum, classical, smoothed)")
    add_qn(p, with_m=False)
    p.add_argument("--points", type=int, default=4000)
    p.add_argument("--r-max", type=_r_max, default=None, help="grid end, or 'auto' = 2.2 n^2")
    add_common(p)

    p = sub.add_parser("angular", help="polar-angle density curves")
    add_qn(p)
    p.add_argument("--points", type=int, default=4000)
    add_common(p)

    p = sub.add_parser("density3d", help="|psi|^2 and the classical product density on an (r, theta) grid")
    add_qn(p)
    p.add_argument("--points", type=int, default=4000, help="grid points per axis (default 200)")
    p.add_argument("--r-max", type=_r_max, default=None)
    add_common(p)

    p = sub.add_parser("oscillator", help="harmonic-oscillator warm-up densities")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--points", type=int, default=4000)
    add_common(p)

    p = sub.add_parser("oracle", help="Monte Carlo histogram vs analytic density")
    add_qn(p)
    p.add_argument("--kind", choices=("radial", "angular", "2d"), default="radial")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--bins", type=int, default=200)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--phase-mode", choices=oracle.PHASE_MODES, default="two-branch",
                   dest="phase_mode")
    p.add_argument("--workers", type=int, default=1)
    add_common(p)

    p = sub.add_parser("converge", help="fixed-ratio convergence study")
    p.add_argument("--ratio-l", type=_fraction, required=True, dest="ratio_l")
    p.add_argument("--ratio-m", type=_fraction, default=None, dest="ratio_m")
    p.add_argument("--n-list", type=_int_list, required=True, dest="n_list")
    add_common(p, formats=("json", "csv"))

    p = sub.add_parser("limit", help="degenerate-ellipse limit study of R_n0 vs R_n1")
    p.add_argument("--n-list", type=_int_list, required=True, dest="n_list")
    p.add_argument("--points", type=int, default=4000)
    p.add_argument("--curves-dir", default=None, dest="curves_dir",
                   help="also write limit_n{n}.csv curve files here")
    add_common(p, formats=("json", "csv"))

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fields = {f.name for f in dataclasses.fields(RunConfig)}
    config = RunConfig(**{k: v for k, v in vars(ns).items() if k in fields})
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
