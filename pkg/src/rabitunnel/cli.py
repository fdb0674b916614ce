"""Command-line front end.

Exit codes: 0 success, 2 configuration error, 3 numerical or convergence
failure, 4 parameter-regime error.
"""

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from rabitunnel import dynamics, potential, spectra, variational
from rabitunnel.config import RunConfig, load_config, parse_config
from rabitunnel.errors import ConfigError, ConvergenceError, RegimeError
from rabitunnel.feasibility import PRESETS, feasibility_report
from rabitunnel.model import BasisSpec, ModelParams, build_hamiltonian

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_REGIME = 0, 2, 3, 4

FIGURES = {
    "1": ("spectrum", {"model": {"omega_q": 3.0, "coupling": [1.3, 2.0]}, "levels": 20}),
    "2": ("wavefunctions", {"model": {"omega_q": 3.0, "coupling": [2.0, 1.3]}}),
    "3": ("dynamics", {"model": {"omega_q": 3.0, "coupling": 1.3}, "times": {"samples": 101, "stop": 1.0}}),
    "4": ("dynamics", {"model": {"omega_q": 3.0, "coupling": 1.3}, "times": {"samples": 401, "stop": 1.0}}),
    "5a": ("potential", {"model": {"omega_q": 3.0, "coupling": 1.3}, "states": 4}),
    "5b": ("potential", {"model": {"omega_q": 3.0, "coupling": 2.0}, "states": 6}),
}


def fmt(value):
    """Shortest round-trip text for CSV cells; empty for missing values."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _json_value(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        v = float(value)
        return v if math.isfinite(v) else None
    return value


def write_table(cfg: RunConfig, name, columns, rows):
    out_dir = Path(cfg.output.path)
    out_dir.mkdir(parents=True, exist_ok=True)
    if cfg.output.format == "json":
        path = out_dir / f"{name}.json"
        records = [{c: _json_value(v) for c, v in zip(columns, row)} for row in rows]
        path.write_text(json.dumps(records, indent=1, ensure_ascii=False) + "\n", encoding="utf-8")
    else:
        path = out_dir / f"{name}.csv"
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(columns)
            for row in rows:
                writer.writerow([fmt(v) for v in row])
    return path


def _suffix(cfg, lam):
    return "" if len(cfg.couplings) == 1 else f"_lambda{fmt(lam)}"


def spectrum_for(cfg: RunConfig, params: ModelParams, k):
    if cfg.n_max is None:
        return spectra.converged_spectrum(params, k=k, tol=1e-9)
    result = spectra.diagonalize(build_hamiltonian(params, BasisSpec(cfg.n_max)), tracked=k)
    if not result.converged:
        w = result.boundary_weights(k).max()
        raise ConvergenceError(f"n_max={cfg.n_max} truncates the lowest {k} levels (boundary weight {w:.2e})")
    return spectra.SpectralResult(
        result.eigenvalues, result.eigenvectors, result.parities, result.basis, True, result.params
    )


def cmd_spectrum(cfg: RunConfig):
    columns = ["omega_q", "coupling", "index", "energy_exact", "energy_approx_full",
               "energy_approx_simplified", "parity", "N", "note"]
    rows = []
    for params in cfg.models():
        spec = spectrum_for(cfg, params, cfg.levels)
        try:
            approx = variational.approximate_levels(params, cfg.levels)
            simple = {}
            for row in variational.doublet_table(params, cfg.levels, simplified=True):
                simple[(-1, row.N)], simple[(1, row.N)] = row.e_minus, row.e_plus
            note = ""
        except RegimeError:
            approx, note = None, "single-minimum regime"
        for k in range(cfg.levels):
            if approx is None:
                full = simp = n = None
            else:
                full, sign, n = approx[k]
                simp = simple[(sign, n)]
            rows.append([params.omega_q, params.coupling, k, spec.eigenvalues[k], full, simp,
                         int(spec.parities[k]), n, note])
    return [write_table(cfg, "spectrum", columns, rows)]


def _aligned(exact_vec, approx_vec):
    return exact_vec if np.vdot(approx_vec, exact_vec).real >= 0 else -exact_vec


def cmd_wavefunctions(cfg: RunConfig):
    grid = cfg.grid.array()
    columns = ["coupling", "state", "q", "exact_plus_z", "exact_minus_z", "approx_plus_z", "approx_minus_z"]
    rows = []
    for params in cfg.models():
        spec = spectrum_for(cfg, params, 2)
        for k, (label, sign) in enumerate((("ground", "-"), ("first_excited", "+"))):
            approx = variational.parity_doublet_state(params, 0, sign, spec.basis)
            exact = spectra.JointState(_aligned(spec.eigenvectors[:, k], approx.coefficients.real), spec.basis)
            ep, em = spectra.position_projections(exact, grid)
            ap, am = spectra.position_projections(approx, grid)
            for i, q in enumerate(grid):
                rows.append([params.coupling, label, q, ep[i], em[i], ap[i], am[i]])
    return [write_table(cfg, "wavefunctions", columns, rows)]


def cmd_dynamics(cfg: RunConfig):
    grid = cfg.grid.array()
    written = []
    for params in cfg.models():
        dw = variational.tunneling_splitting(params)
        axis = np.linspace(0.0, cfg.times.stop, cfg.times.samples)
        times = dynamics.period_times(axis, dw) if cfg.times.mode == "period-fractions" else axis
        spec = spectrum_for(cfg, params, 20)
        psi0 = dynamics.initial_left_state(params, spec.basis)
        exact = dynamics.evolve_exact(psi0, spec, times, grid)
        approx = dynamics.evolve_approx(params, times, spec.basis, grid)
        sfx = _suffix(cfg, params.coupling)
        header = ["t"] + [fmt(q) for q in grid]
        for label, traj in (("approx", approx), ("exact", exact)):
            rows = [[t] + list(traj.density[i]) for i, t in enumerate(axis)]
            written.append(write_table(cfg, f"density_{label}{sfx}", header, rows))
        obs = [[t, exact.sz[i], exact.sx[i], exact.sy[i], approx.sz_closed[i], approx.sx_closed[i]] for i, t in enumerate(axis)]
        written.append(write_table(cfg, f"observables{sfx}",
                                   ["t", "sz_exact", "sx_exact", "sy_exact", "sz_approx", "sx_approx"], obs))
    return written


def cmd_potential(cfg: RunConfig):
    grid = cfg.grid.array()
    n = cfg.states
    columns = ["coupling", "kind", "label", "value", "q", "E_b"]
    for j in range(n):
        columns += [f"V_{j}", f"mask_{j}"]
    rows = []
    blank = [None] * (2 * n)
    for params in cfg.models():
        spec = spectrum_for(cfg, params, max(n, 2))
        band = potential.lower_band(params, grid)
        curves = []
        for j in range(n):
            dens = dynamics.density_profile(spec.state(j), grid)
            curves.append(potential.curvature_potential(dens, spec.eigenvalues[j], cfg.floor))
        for i, q in enumerate(grid):
            cells = []
            for c in curves:
                cells += [c.values[i], bool(c.mask[i])]
            rows.append([params.coupling, "curve", None, None, q, band.values[i]] + cells)
        for j in range(n):
            rows.append([params.coupling, "energy", f"{j}:{'+' if spec.parities[j] > 0 else '-'}",
                         spec.eigenvalues[j], None, None] + blank)
        try:
            counts = potential.doublet_counts(params)
            stats = potential.barrier_stats(params)
            summary = [("energy_bound", counts.energy_bound), ("overlap_count", counts.overlap_count),
                       ("large_N_bound", counts.large_N_bound), ("barrier_height", stats.barrier_height),
                       ("exact_doublets_below_barrier",
                        potential.exact_doublets(spec.eigenvalues, barrier=stats.barrier_value))]
        except RegimeError:
            summary = [("note", "single-minimum regime")]
        for key, value in summary:
            rows.append([params.coupling, "summary", key, value, None, None] + blank)
    return [write_table(cfg, "potential", columns, rows)]


def cmd_feasibility(cfg: RunConfig):
    if not cfg.physical:
        raise ConfigError("feasibility needs a 'physical' block (or --preset)")
    reports = []
    for sc in cfg.physical:
        report = feasibility_report(sc.params, sc.context)
        reports.append({
            "name": sc.name,
            "omega_q": sc.params.omega_q,
            "coupling": sc.params.coupling,
            "omega0_phys": sc.context.omega0_phys,
            "quality_factor": sc.context.quality_factor,
            "report": {k: _json_value(v) for k, v in report.to_dict().items()},
        })
    out_dir = Path(cfg.output.path)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "feasibility.json"
    path.write_text(json.dumps(reports, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    return [path]


COMMANDS = {
    "spectrum": cmd_spectrum,
    "wavefunctions": cmd_wavefunctions,
    "dynamics": cmd_dynamics,
    "potential": cmd_potential,
    "feasibility": cmd_feasibility,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration")
    common.add_argument("--omega", type=float, help="qubit splitting Omega / omega_0")
    common.add_argument("--lambda", dest="coupling", type=float, action="append",
                        help="coupling lambda / omega_0 (repeat for a sweep)")
    common.add_argument("--n-max", help="Fock truncation, or 'auto'")
    common.add_argument("--out", help="output directory")
    common.add_argument("--format", choices=["csv", "json"])

    parser = argparse.ArgumentParser(prog="rabitunnel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "feasibility":
            p.add_argument("--preset", action="append", choices=sorted(PRESETS))
    p = sub.add_parser("reproduce-figure", parents=[common])
    p.add_argument("figure", choices=sorted(FIGURES))
    return parser


def resolve_config(args):
    doc = {}
    if args.command == "reproduce-figure":
        doc = json.loads(json.dumps(FIGURES[args.figure][1]))
    cfg = load_config(args.config) if args.config else parse_config(doc)
    if args.omega is not None or args.coupling:
        model = {"omega_q": args.omega if args.omega is not None else cfg.omega_q,
                 "coupling": args.coupling if args.coupling else cfg.couplings}
        try:
            cfg.omega_q = float(model["omega_q"])
            cfg.couplings = [float(v) for v in model["coupling"]]
            cfg.models()
        except ValueError as exc:
            raise ConfigError(f"model: {exc}") from exc
    if args.n_max is not None:
        if args.n_max == "auto":
            cfg.n_max = None
        else:
            try:
                cfg.n_max = int(args.n_max)
            except ValueError:
                raise ConfigError(f"--n-max must be an integer or 'auto', got {args.n_max!r}") from None
            if cfg.n_max < 2:
                raise ConfigError("--n-max must be at least 2")
    if args.out is not None:
        cfg.output.path = args.out
    if args.format is not None:
        cfg.output.format = args.format
    if getattr(args, "preset", None):
        cfg.physical = [PRESETS[name] for name in args.preset]
    return cfg


def _fail(code, kind, message):
    print(json.dumps({"error": kind, "message": str(message)}), file=sys.stderr)
    return code


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        command = FIGURES[args.figure][0] if args.command == "reproduce-figure" else args.command
        written = COMMANDS[command](cfg)
    except ConfigError as exc:
        return _fail(EXIT_CONFIG, "config", exc)
    except RegimeError as exc:
        return _fail(EXIT_REGIME, "regime", exc)
    except (ConvergenceError, np.linalg.LinAlgError) as exc:
        return _fail(EXIT_NUMERIC, "numeric", exc)
    for path in written:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
