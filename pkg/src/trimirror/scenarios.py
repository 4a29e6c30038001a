"""Scenario presets and run configuration.

A run is described by one nested-key YAML document (every physical value in
units of w_b).  The three presets carry the operating points of the three
processes; preset fields can be overridden individually.  Cavity
frequencies a preset leaves unresolved (the third-order operating points)
are computed at load time with the resonance tuner and recorded in the run
manifest.
"""

from __future__ import annotations

import copy
import os
from dataclasses import dataclass, field

from .dynamics import TimeGrid
from .fock import ModeDims
from .model import ScenarioKind, SystemParams
from .tuning import analytic_resonance, optimize_resonance

__all__ = ["ScenarioConfig", "ChevronConfig", "load_config", "preset_config", "PRESETS"]

OUTPUT_KINDS = ("master-equation", "ensemble", "trajectories", "chevron", "sw-verification")

_TOP_KEYS = {
    "scenario", "params", "dims", "initial_state", "grid", "n_traj", "base_seed",
    "workers", "outputs", "trajectories", "chevron", "out_dir", "split_dt",
    "convergence_probe", "resonance",
}
_PARAM_KEYS = {"omega_a", "omega_b", "omega_c", "g", "gamma_a", "gamma_b", "gamma_c"}
_GRID_KEYS = {"t_start", "t_end", "n_points"}
_CHEVRON_KEYS = {"n_delta", "delta_over_geff_max", "t_end", "n_points", "dims", "split_dt"}


@dataclass
class ChevronConfig:
    n_delta: int = 13
    delta_over_geff_max: float = 6.0
    t_end: float = 460.0
    n_points: int = 231
    dims: tuple = (5, 4, 5)
    split_dt: float = 0.2


@dataclass
class ScenarioConfig:
    scenario: ScenarioKind
    params: SystemParams
    dims: ModeDims
    initial_state: tuple
    grid: TimeGrid
    n_traj: int = 1000
    base_seed: int = 2026
    workers: int | None = None
    outputs: tuple = ("trajectories", "ensemble")
    trajectories: tuple = (0, 1, 2)
    chevron: ChevronConfig = field(default_factory=ChevronConfig)
    out_dir: str = "runs/out"
    split_dt: float = 0.02
    convergence_probe: bool = True
    resolution_info: dict = field(default_factory=dict)

    def __post_init__(self):
        self.dims._check_occupations(self.initial_state)
        if self.n_traj < 1:
            raise ValueError("n_traj must be at least 1")
        unknown = set(self.outputs) - set(OUTPUT_KINDS)
        if unknown:
            raise ValueError(f"unknown output kinds: {sorted(unknown)}")

    @property
    def effective_workers(self) -> int:
        return self.workers if self.workers else (os.cpu_count() or 1)

    def to_dict(self) -> dict:
        p = self.params
        return {
            "scenario": self.scenario.value,
            "params": {
                "omega_a": p.omega_a, "omega_b": p.omega_b, "omega_c": p.omega_c,
                "g": p.g, "gamma_a": p.gamma_a, "gamma_b": p.gamma_b, "gamma_c": p.gamma_c,
            },
            "dims": list(self.dims.dims),
            "initial_state": list(self.initial_state),
            "grid": {"t_start": self.grid.t_start, "t_end": self.grid.t_end,
                     "n_points": self.grid.n_points},
            "n_traj": self.n_traj,
            "base_seed": self.base_seed,
            "workers": self.workers,
            "outputs": list(self.outputs),
            "trajectories": list(self.trajectories),
            "chevron": {
                "n_delta": self.chevron.n_delta,
                "delta_over_geff_max": self.chevron.delta_over_geff_max,
                "t_end": self.chevron.t_end,
                "n_points": self.chevron.n_points,
                "dims": list(self.chevron.dims),
                "split_dt": self.chevron.split_dt,
            },
            "out_dir": self.out_dir,
            "split_dt": self.split_dt,
            "convergence_probe": self.convergence_probe,
            "resonance": "explicit",
        }


# Preset operating points.  Frequencies given as None are resolved by the
# resonance tuner at load time (resonance: optimized); the two-photon point
# is the closed-form condition w = w_b + g^2/w_b.
PRESETS: dict[str, dict] = {
    "two-photon": {
        "scenario": "two-photon",
        "params": {"omega_a": 1.0025, "omega_b": 1.0, "omega_c": 1.0025, "g": 0.05,
                   "gamma_a": 5e-4, "gamma_b": 5e-4, "gamma_c": 5e-4},
        "dims": [7, 4, 7],
        "initial_state": [0, 2, 0],
        "grid": {"t_start": 0.0, "t_end": 1200.0, "n_points": 481},
        "n_traj": 1000,
        "base_seed": 2026,
        "workers": None,
        "outputs": ["trajectories", "ensemble", "master-equation", "sw-verification"],
        "trajectories": [0, 1, 2],
        "chevron": {"n_delta": 13, "delta_over_geff_max": 6.0, "t_end": 460.0,
                    "n_points": 231, "dims": [5, 4, 5], "split_dt": 0.2},
        "out_dir": "runs/two-photon",
        "split_dt": 0.25,
        "convergence_probe": True,
        "resonance": "analytic",
    },
    "four-photon": {
        "scenario": "four-photon",
        "params": {"omega_a": None, "omega_b": 1.0, "omega_c": None, "g": 0.03,
                   "gamma_a": 2e-5, "gamma_b": 2e-5, "gamma_c": 2e-5},
        "dims": [7, 3, 7],
        "initial_state": [0, 1, 0],
        "grid": {"t_start": 0.0, "t_end": 25000.0, "n_points": 501},
        "n_traj": 1000,
        "base_seed": 2026,
        "workers": None,
        "outputs": ["trajectories", "ensemble", "sw-verification"],
        "trajectories": [0, 1, 2],
        "chevron": {"n_delta": 13, "delta_over_geff_max": 6.0, "t_end": 460.0,
                    "n_points": 231, "dims": [5, 4, 5], "split_dt": 0.2},
        "out_dir": "runs/four-photon",
        "split_dt": 0.2,
        "convergence_probe": True,
        "resonance": "optimized",
    },
    "janus": {
        "scenario": "janus",
        "params": {"omega_a": 0.25 + 1.0 / 15.0, "omega_b": 1.0, "omega_c": None,
                   "g": 0.05, "gamma_a": 2e-5, "gamma_b": 2e-5, "gamma_c": 2e-5},
        "dims": [7, 3, 7],
        "initial_state": [2, 0, 2],
        "grid": {"t_start": 0.0, "t_end": 36000.0, "n_points": 601},
        "n_traj": 1000,
        "base_seed": 2026,
        "workers": None,
        "outputs": ["trajectories", "ensemble", "sw-verification"],
        "trajectories": [0, 1, 2],
        "chevron": {"n_delta": 13, "delta_over_geff_max": 6.0, "t_end": 460.0,
                    "n_points": 231, "dims": [5, 4, 5], "split_dt": 0.2},
        "out_dir": "runs/janus",
        "split_dt": 0.2,
        "convergence_probe": True,
        "resonance": "optimized",
    },
}


def _check_keys(mapping: dict, allowed: set, context: str) -> None:
    unknown = sorted(set(mapping) - allowed)
    if unknown:
        raise ValueError(f"unknown {context} keys: {unknown}")


def _deep_update(base: dict, overlay: dict) -> dict:
    out = copy.deepcopy(base)
    for key, value in overlay.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _deep_update(out[key], value)
        else:
            out[key] = value
    return out


def _parse_override(expr: str):
    """Parse one ``dotted.key=value`` CLI override into a nested dict."""
    import yaml

    if "=" not in expr:
        raise ValueError(f"override {expr!r} is not of the form key=value")
    key, raw = expr.split("=", 1)
    value = yaml.safe_load(raw)
    out: dict = {}
    node = out
    parts = key.strip().split(".")
    for part in parts[:-1]:
        node[part] = {}
        node = node[part]
    node[parts[-1]] = value
    return out


def _resolve_frequencies(doc: dict) -> tuple[dict, dict]:
    """Fill unresolved cavity frequencies, returning (doc, resolution info)."""
    scenario = ScenarioKind(doc["scenario"])
    pd = dict(doc["params"])
    mode = doc.get("resonance", "explicit")
    info: dict = {"mode": mode}
    needs = [k for k in ("omega_a", "omega_c") if pd.get(k) is None]
    if not needs:
        return doc, info

    if mode == "explicit":
        raise ValueError(f"params {needs} are unset but resonance mode is 'explicit'")
    dims = ModeDims(tuple(doc["dims"]))
    probe = dict(pd)
    for k in needs:
        probe[k] = 0.5 * pd["omega_b"]  # placeholder for constructing params
    base = SystemParams(**probe)

    if scenario is ScenarioKind.JANUS:
        if "omega_c" not in needs or "omega_a" in needs:
            raise ValueError("the bilateral scenario resolves omega_c at fixed omega_a")
        base = base.replace(omega_a=pd["omega_a"])
        analytic = analytic_resonance(scenario, base)
        if mode == "analytic":
            value = analytic
        else:
            res = optimize_resonance(scenario, base, dims)
            value = res.optimized_value
            info["objective"] = res.optimized_objective
        pd["omega_c"] = value
        info.update({"resolved": "omega_c", "analytic": analytic, "value": value})
    else:
        analytic = analytic_resonance(scenario, base)
        if mode == "analytic":
            value = analytic
        else:
            res = optimize_resonance(scenario, base, dims)
            value = res.optimized_value
            info["objective"] = res.optimized_objective
        for k in needs:
            pd[k] = value
        info.update({"resolved": "+".join(needs), "analytic": analytic, "value": value})

    doc = dict(doc)
    doc["params"] = pd
    doc["resonance"] = "explicit"
    return doc, info


def config_from_dict(doc: dict) -> ScenarioConfig:
    _check_keys(doc, _TOP_KEYS, "config")
    for key in ("scenario", "params", "dims", "initial_state", "grid"):
        if key not in doc:
            raise ValueError(f"config is missing required key {key!r}")
    _check_keys(doc["params"], _PARAM_KEYS, "params")
    _check_keys(doc["grid"], _GRID_KEYS, "grid")
    if "chevron" in doc:
        _check_keys(doc["chevron"], _CHEVRON_KEYS, "chevron")

    doc, info = _resolve_frequencies(doc)
    chev = doc.get("chevron", {})
    chev = {**chev, "dims": tuple(chev.get("dims", (5, 4, 5)))}
    return ScenarioConfig(
        scenario=ScenarioKind(doc["scenario"]),
        params=SystemParams(**doc["params"]),
        dims=ModeDims(tuple(doc["dims"])),
        initial_state=tuple(doc["initial_state"]),
        grid=TimeGrid(**doc["grid"]),
        n_traj=int(doc.get("n_traj", 1000)),
        base_seed=int(doc.get("base_seed", 2026)),
        workers=doc.get("workers"),
        outputs=tuple(doc.get("outputs", ("trajectories", "ensemble"))),
        trajectories=tuple(doc.get("trajectories", (0, 1, 2))),
        chevron=ChevronConfig(**chev),
        out_dir=str(doc.get("out_dir", "runs/out")),
        split_dt=float(doc.get("split_dt", 0.02)),
        convergence_probe=bool(doc.get("convergence_probe", True)),
        resolution_info=info,
    )


def preset_config(name: str, overrides: dict | None = None) -> ScenarioConfig:
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; available: {sorted(PRESETS)}")
    doc = PRESETS[name]
    if overrides:
        doc = _deep_update(doc, overrides)
    return config_from_dict(doc)


def load_config(path=None, preset=None, override_exprs=()) -> ScenarioConfig:
    """Resolve a run configuration from a file or preset plus overrides."""
    import yaml

    if (path is None) == (preset is None):
        raise ValueError("provide exactly one of a config path or a preset name")
    overrides: dict = {}
    for expr in override_exprs:
        overrides = _deep_update(overrides, _parse_override(expr))
    if preset is not None:
        return preset_config(preset, overrides)
    with open(path, "r", encoding="utf-8") as fh:
        doc = yaml.safe_load(fh)
    if not isinstance(doc, dict):
        raise ValueError(f"config file {path} does not hold a mapping")
    if "config" in doc and isinstance(doc["config"], dict) and "scenario" in doc["config"]:
        doc = doc["config"]  # accept a run manifest as a config source
    if overrides:
        doc = _deep_update(doc, overrides)
    return config_from_dict(doc)
