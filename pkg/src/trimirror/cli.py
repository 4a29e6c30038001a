"""Command-line entry point: scenario runs, presets, verification, tuning.

Subcommands
-----------
run             execute a scenario (preset or config file) and export data
presets         print the built-in scenario presets as YAML
verify-sw       effective-Hamiltonian verification table
tune-resonance  analytic vs numerically optimized resonance point

Data files land in the output directory (``--out-dir``, config ``out_dir``,
or the TRIMIRROR_OUT_DIR environment variable) together with a
``manifest.json`` recording the resolved configuration, seeds, per-stage
wall-clock and the emitted files; the manifest itself can be fed back to
``run --config`` to reproduce a run.
"""

from __future__ import annotations

import argparse
import datetime
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .dynamics import (
    TimeGrid,
    average_trajectories,
    evolve_closed,
    evolve_master,
    evolve_trajectory,
    trajectory_seed,
)
from .entanglement import chevron_scan
from .fock import ModeDims, basis_state
from .io import (
    write_chevron_csv,
    write_manifest,
    write_occupations_csv,
    write_sw_verification_csv,
)
from .model import ScenarioKind, SystemParams
from .scenarios import PRESETS, ScenarioConfig, load_config
from .tuning import analytic_resonance, optimize_resonance
from .verify import full_verification_table

# Relative shift of the closed-system occupations under a +2 truncation
# probe above which a convergence warning is recorded.
PROBE_THRESHOLD = 1e-4


def _resolve_out_dir(cli_value, config_value) -> Path:
    out = cli_value or os.environ.get("TRIMIRROR_OUT_DIR") or config_value
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _common_meta(config: ScenarioConfig) -> dict:
    p = config.params
    return {
        "scenario": config.scenario.value,
        "omega_a": repr(p.omega_a),
        "omega_b": repr(p.omega_b),
        "omega_c": repr(p.omega_c),
        "g": repr(p.g),
        "gamma_a": repr(p.gamma_a),
        "gamma_b": repr(p.gamma_b),
        "gamma_c": repr(p.gamma_c),
        "dims": "x".join(str(d) for d in config.dims.dims),
        "initial_state": ",".join(str(n) for n in config.initial_state),
    }


def _convergence_probe(config: ScenarioConfig) -> dict:
    """Closed-system occupations at dims and dims+2; warn above threshold."""
    psi_ref = basis_state(config.initial_state, config.dims)
    occ_ref, _ = evolve_closed(psi_ref, config.params, config.dims, config.grid)
    dims_probe = ModeDims(tuple(d + 2 for d in config.dims.dims))
    psi_probe = basis_state(config.initial_state, dims_probe)
    occ_probe, _ = evolve_closed(psi_probe, config.params, dims_probe, config.grid)
    scale = max(1.0, float(np.max(np.abs(occ_ref))))
    shift = float(np.max(np.abs(occ_ref - occ_probe))) / scale
    result = {
        "dims": list(config.dims.dims),
        "probe_dims": list(dims_probe.dims),
        "max_relative_shift": shift,
        "threshold": PROBE_THRESHOLD,
        "converged": bool(shift <= PROBE_THRESHOLD),
    }
    if shift > PROBE_THRESHOLD:
        print(
            f"warning: truncation probe shifted closed-system occupations by "
            f"{shift:.2e} (> {PROBE_THRESHOLD:.0e}); consider larger dims",
            file=sys.stderr,
        )
    return result


def cmd_run(args) -> int:
    t_total = time.perf_counter()
    config = load_config(path=args.config, preset=args.preset, override_exprs=args.override or ())
    if args.n_traj:
        config.n_traj = args.n_traj
    if args.seed is not None:
        config.base_seed = args.seed
    if args.workers:
        config.workers = args.workers
    if args.truncation:
        dims = tuple(int(x) for x in args.truncation.split(","))
        config.dims = ModeDims(dims)
        config.dims._check_occupations(config.initial_state)
    out_dir = _resolve_out_dir(args.out_dir, config.out_dir)
    config.out_dir = str(out_dir)

    psi0 = basis_state(config.initial_state, config.dims)
    meta = _common_meta(config)
    stages: dict[str, float] = {}
    files: list[str] = []
    manifest: dict = {
        "tool": "trimirror",
        "version": __version__,
        "config": config.to_dict(),
        "resolution": config.resolution_info,
    }

    def stage(name: str):
        class _Timer:
            def __enter__(self):
                self.t0 = time.perf_counter()

            def __exit__(self, *exc):
                stages[name] = round(time.perf_counter() - self.t0, 3)

        return _Timer()

    if config.convergence_probe:
        with stage("convergence-probe"):
            manifest["convergence_probe"] = _convergence_probe(config)

    if "sw-verification" in config.outputs:
        with stage("sw-verification"):
            rows = full_verification_table()
            path = out_dir / "sw_verification.csv"
            write_sw_verification_csv(path, rows, {"tool_version": __version__})
            files.append(path.name)

    if "master-equation" in config.outputs:
        with stage("master-equation"):
            res = evolve_master(psi0, config.params, config.dims, config.grid,
                                method="split", split_dt=config.split_dt)
            path = out_dir / "occupations_me.csv"
            write_occupations_csv(
                path, config.grid, res.mean_occupations, "occupations (master equation)",
                {**meta, "split_dt": repr(config.split_dt)},
            )
            files.append(path.name)
            manifest["master_equation"] = {
                "max_trace_deviation": float(np.max(np.abs(res.trace_series - 1.0))),
            }

    if "trajectories" in config.outputs:
        with stage("trajectories"):
            for k in config.trajectories:
                res = evolve_trajectory(
                    psi0, config.params, config.dims, config.grid,
                    trajectory_seed(config.base_seed, int(k)),
                )
                path = out_dir / f"occupations_traj_{k}.csv"
                write_occupations_csv(
                    path, config.grid, res.occupations, f"occupations (trajectory {k})",
                    {**meta, "base_seed": config.base_seed, "trajectory_index": k},
                    jumps=res.jumps,
                )
                files.append(path.name)

    if "ensemble" in config.outputs:
        with stage("ensemble"):
            ens = average_trajectories(
                psi0, config.params, config.dims, config.grid,
                n_traj=config.n_traj, base_seed=config.base_seed,
                workers=config.effective_workers,
            )
            path = out_dir / "occupations_ensemble.csv"
            write_occupations_csv(
                path, config.grid, ens.mean_occupations, "occupations (trajectory ensemble)",
                {**meta, "n_traj": config.n_traj, "base_seed": config.base_seed},
            )
            files.append(path.name)

    if "chevron" in config.outputs:
        with stage("chevron"):
            chv = config.chevron
            g_eff = 2 * np.sqrt(2) * config.params.g ** 2 / config.params.omega_b
            deltas = np.linspace(-chv.delta_over_geff_max, chv.delta_over_geff_max, chv.n_delta) * g_eff
            grid = TimeGrid(t_end=chv.t_end, n_points=chv.n_points)
            scan = chevron_scan(
                config.params, deltas, grid, ModeDims(tuple(chv.dims)),
                initial_state=config.initial_state, split_dt=chv.split_dt,
            )
            path = out_dir / "chevron.csv"
            write_chevron_csv(path, scan, {**meta, "g_eff": repr(g_eff)})
            files.append(path.name)

    manifest["stages_wallclock_s"] = stages
    manifest["files"] = files
    manifest["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    manifest["total_wallclock_s"] = round(time.perf_counter() - t_total, 3)
    write_manifest(out_dir / "manifest.json", manifest)
    print(f"run complete: {len(files)} data files in {out_dir}")
    return 0


def cmd_presets(args) -> int:
    import yaml

    print(yaml.safe_dump(PRESETS, sort_keys=False))
    return 0


def cmd_verify_sw(args) -> int:
    rows = full_verification_table()
    width = max(len(r.label) for r in rows)
    current = None
    for row in rows:
        if row.scenario != current:
            current = row.scenario
            print(f"\n[{current}]")
        print(
            f"  {row.label:<{width}}  closed {row.closed_form:+.12e}  "
            f"numeric {row.numeric:+.12e}  |diff| {row.abs_diff:.2e}"
        )
    if args.out_dir:
        out_dir = _resolve_out_dir(args.out_dir, ".")
        path = out_dir / "sw_verification.csv"
        write_sw_verification_csv(path, rows, {"tool_version": __version__})
        print(f"\nwrote {path}")
    return 0


def cmd_tune(args) -> int:
    scenario = ScenarioKind(args.scenario)
    g = args.g if args.g is not None else {"two-photon": 0.05, "four-photon": 0.03, "janus": 0.05}[scenario.value]
    if scenario is ScenarioKind.JANUS:
        params = SystemParams(omega_a=0.25 + 1.0 / 15.0, omega_c=0.2, g=g)
    else:
        params = SystemParams(omega_a=0.5, omega_c=0.5, g=g)
    dims = ModeDims((7, 4, 7) if scenario is ScenarioKind.TWO_PHOTON else (7, 3, 7))
    result = optimize_resonance(
        scenario, params, dims,
        objective_kind=args.objective,
        search_width=args.width,
    )
    print(f"scenario:   {scenario.value}  (g = {g}, dims = {dims.dims})")
    print(f"analytic:   {result.analytic_value:.8f}")
    print(f"optimized:  {result.optimized_value:.8f}")
    print(f"difference: {result.shift:+.3e}")
    print(f"objective:  {result.optimized_objective:.6e} (analytic point {result.analytic_objective:.6e})")
    if args.out_dir:
        out_dir = _resolve_out_dir(args.out_dir, ".")
        path = out_dir / f"resonance_trace_{scenario.value}.csv"
        lines = ["# trimirror resonance objective trace", "candidate,objective"]
        lines += [f"{repr(float(x))},{repr(float(y))}" for x, y in result.objective_trace]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"wrote {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trimirror",
        description="cavity / vibrating-mirror / cavity quantum dynamics",
    )
    parser.add_argument("--version", action="version", version=f"trimirror {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a scenario and export data files")
    run.add_argument("--config", help="YAML run configuration (or a previous manifest.json)")
    run.add_argument("--preset", "--scenario", dest="preset", help="preset name: " + ", ".join(PRESETS))
    run.add_argument("--n-traj", type=int, help="override ensemble size")
    run.add_argument("--seed", type=int, help="override base seed")
    run.add_argument("--workers", type=int, help="trajectory worker processes")
    run.add_argument("--truncation", help="override dims, e.g. 7,4,7")
    run.add_argument("--out-dir", help="output directory (also TRIMIRROR_OUT_DIR)")
    run.add_argument("--override", action="append", metavar="KEY=VALUE",
                     help="dotted config override, e.g. params.g=0.04 (repeatable)")
    run.set_defaults(func=cmd_run)

    pres = sub.add_parser("presets", help="print built-in presets as YAML")
    pres.set_defaults(func=cmd_presets)

    ver = sub.add_parser("verify-sw", help="closed-form vs numeric effective blocks")
    ver.add_argument("--out-dir", help="also write sw_verification.csv here")
    ver.set_defaults(func=cmd_verify_sw)

    tune = sub.add_parser("tune-resonance", help="analytic vs optimized resonance")
    tune.add_argument("--scenario", required=True, choices=[k.value for k in ScenarioKind])
    tune.add_argument("--g", type=float, help="coupling strength in units of omega_b")
    tune.add_argument("--objective", default="gap", choices=["gap", "amplitude"])
    tune.add_argument("--width", type=float, help="search bracket width")
    tune.add_argument("--out-dir", help="write the objective trace here")
    tune.set_defaults(func=cmd_tune)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # argparse-style error reporting, nonzero exit
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
