"""Experiment orchestration: declarative TOML configs, probes, sweeps.

A config file declares a grid, a data family, solver settings and a list of
probes.  ``run_experiment`` executes the probes, writes CSV/JSON report
files plus a manifest, and reports whether every declared pass-criterion
held.  Unknown config keys are errors so sweeps stay diffable.

Parallelism: sweep points run on a thread pool capped by the
``NLSZP_WORKERS`` environment variable (FFT work releases the GIL); outputs
are assembled in a deterministic order regardless of scheduling.
"""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Any

import numpy as np
import tomli

from .datafamilies import Custom, DataFamily, Gaussian, PowerTail, PureMode, synthesize
from .decomposition import frequency_split, make_truncation_params
from .evolution import (
    NlsParams,
    PicardConfig,
    gain_of_integrability_probe,
    linear_zsp_growth_probe,
    picard_solve,
    split_step_solve,
)
from .exponents import check_window
from .globalization import GlobalizationConfig, globalize, increment_scaling_report
from .norms import NormKind, compute_norm, l2_norm
from .spectral import Field, Grid


class ConfigError(ValueError):
    pass


def max_workers() -> int:
    value = os.environ.get("NLSZP_WORKERS", "")
    if value:
        return max(1, int(value))
    return min(4, os.cpu_count() or 1)


_ALLOWED = {
    "grid": {"dim", "n", "box_length"},
    "data": {"kind", "width", "amplitude", "gamma", "core_width", "k", "path"},
    "nls": {"sigma", "lambda"},
    "solver": {"dt", "method", "tol", "max_iter", "quadrature"},
    "output": {"directory"},
}
_PROBE_KEYS = {
    "norm_table": {"kind", "norms"},
    "growth": {"kind", "s", "p", "times"},
    "gain": {"kind", "T", "s", "p"},
    "globalize": {"kind", "p", "epsilon", "eta", "T"},
    "sweep_epsilon": {"kind", "p", "epsilons", "eta", "T"},
    "l_sweep": {"kind", "box_lengths", "p", "s"},
}


def _check_keys(table: dict, allowed: set[str], where: str) -> None:
    unknown = set(table) - allowed
    if unknown:
        raise ConfigError(f"unknown keys in [{where}]: {sorted(unknown)}")


@dataclass(frozen=True)
class ExperimentConfig:
    grid: Grid
    data: DataFamily
    nls: NlsParams
    solver: PicardConfig
    method: str
    output_dir: Path
    probes: list[dict[str, Any]] = dc_field(default_factory=list)


def _parse_data(table: dict, grid: Grid) -> DataFamily:
    kind = table.get("kind")
    if kind == "gaussian":
        profile = Gaussian(width=table.get("width", 1.0),
                           amplitude=table.get("amplitude", 1.0))
    elif kind == "pure_mode":
        k = table.get("k", 1)
        profile = PureMode(k=tuple(k) if isinstance(k, list) else int(k),
                           amplitude=table.get("amplitude", 1.0))
    elif kind == "power_tail":
        profile = PowerTail(gamma=table["gamma"],
                            core_width=table.get("core_width", 1.0),
                            amplitude=table.get("amplitude", 1.0))
    elif kind == "custom":
        profile = Custom(path=table["path"])
    else:
        raise ConfigError(f"unknown data kind {kind!r}")
    return DataFamily(kind=profile, grid=grid)


def load_config(path: str | Path) -> ExperimentConfig:
    with open(path, "rb") as fh:
        raw = tomli.load(fh)
    top_allowed = {"grid", "data", "nls", "solver", "output", "probes"}
    _check_keys(raw, top_allowed, "top level")
    for section, allowed in _ALLOWED.items():
        if section in raw:
            _check_keys(raw[section], allowed, section)

    g = raw.get("grid", {})
    grid = Grid(dim=g.get("dim", 1), n=g.get("n", 256),
                box_length=float(g.get("box_length", 32.0)))
    data = _parse_data(raw.get("data", {"kind": "gaussian"}), grid)
    nls_table = raw.get("nls", {})
    nls = NlsParams(sigma=float(nls_table.get("sigma", 2.0)),
                    lam=int(nls_table.get("lambda", -1)), dim=grid.dim)
    sol = raw.get("solver", {})
    solver = PicardConfig(dt=float(sol.get("dt", 1e-3)),
                          max_iter=int(sol.get("max_iter", 50)),
                          tol=float(sol.get("tol", 1e-10)),
                          quadrature=sol.get("quadrature", "midpoint"))
    method = sol.get("method", "splitstep")
    if method not in ("picard", "splitstep"):
        raise ConfigError(f"unknown solver method {method!r}")
    out = Path(raw.get("output", {}).get("directory", "out"))

    probes = raw.get("probes", [])
    for probe in probes:
        kind = probe.get("kind")
        if kind not in _PROBE_KEYS:
            raise ConfigError(f"unknown probe kind {kind!r}")
        _check_keys(probe, _PROBE_KEYS[kind], f"probes.{kind}")
        _validate_probe(probe, grid)
    return ExperimentConfig(grid=grid, data=data, nls=nls, solver=solver,
                            method=method, output_dir=out, probes=probes)


def _validate_probe(probe: dict, grid: Grid) -> None:
    """Reject parameter windows that would fail mid-run."""
    kind = probe["kind"]
    if kind in ("globalize", "sweep_epsilon"):
        p = float(probe["p"])
        params = make_truncation_params(p, float(probe.get("epsilon", 0.5))
                                        if kind == "globalize" else 0.5,
                                        float(probe.get("eta", 0.05)))
        if not params.globalizable:
            raise ConfigError(
                f"probe {kind!r}: p = {p} is not globalizable (needs p < 9/2)"
            )
    if kind == "growth":
        result = check_window(probe.get("s", 1), probe.get("p", 4), grid.dim)
        # s = 1 sits on the boundary of the rough window but inside the
        # cubic 3-D setting; only reject parameters outside both.
        if not (result.in_window or result.in_cubic_3d_window
                or float(probe.get("s", 1)) == 1.0):
            raise ConfigError(f"probe growth: {result.reason}")


def _solve(u0: Field, cfg: ExperimentConfig, T: float, **kwargs):
    if cfg.method == "picard":
        return picard_solve(u0, cfg.nls, T, cfg.solver, **kwargs)
    return split_step_solve(u0, cfg.nls, T, cfg.solver.dt, **kwargs)


def _write_csv(path: Path, header: list[str], rows: list[tuple]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in row])


def run_experiment(cfg: ExperimentConfig) -> dict[str, Any]:
    """Execute every declared probe; returns the manifest (also written to
    disk).  manifest["ok"] is True iff all probe pass-criteria held."""
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    u0 = synthesize(cfg.data)
    manifest: dict[str, Any] = {"probes": [], "ok": True}
    for index, probe in enumerate(cfg.probes):
        kind = probe["kind"]
        runner = _PROBE_RUNNERS[kind]
        try:
            entry = runner(u0, cfg, probe, index)
        except Exception as exc:  # flush partial manifest with the failure
            entry = {"kind": kind, "params": probe, "error": str(exc), "ok": False}
        entry.setdefault("ok", True)
        manifest["probes"].append(entry)
        manifest["ok"] = manifest["ok"] and entry["ok"]
    with open(cfg.output_dir / "manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, default=str)
    return manifest


def _probe_norm_table(u0, cfg, probe, index):
    rows = []
    for spec in probe.get("norms", []):
        params = {k: v for k, v in spec.items() if k != "kind"}
        value = compute_norm(u0, NormKind(spec["kind"], params))
        rows.append((spec["kind"], json.dumps(params, sort_keys=True), value))
    path = cfg.output_dir / f"probe{index}_norms.csv"
    _write_csv(path, ["kind", "params", "value"], rows)
    return {"kind": "norm_table", "params": probe, "outputs": [str(path)],
            "values": [r[2] for r in rows]}


def _probe_growth(u0, cfg, probe, index):
    times = probe.get("times", list(np.linspace(0.0, 10.0, 21)))
    ratios = linear_zsp_growth_probe(u0, float(probe.get("s", 1.0)),
                                    float(probe.get("p", 4.0)), times)
    path = cfg.output_dir / f"probe{index}_growth.dat"
    _write_csv(path, ["t", "ratio"], ratios)
    max_ratio = max(r for _, r in ratios)
    return {"kind": "growth", "params": probe, "outputs": [str(path)],
            "max_ratio": max_ratio, "ok": bool(math.isfinite(max_ratio))}


def _probe_gain(u0, cfg, probe, index):
    T = float(probe.get("T", 0.5))
    traj = _solve(u0, cfg, T, store_every=max(1, round(T / cfg.solver.dt) // 20))
    series = gain_of_integrability_probe(traj, u0)
    path = cfg.output_dir / f"probe{index}_gain.dat"
    _write_csv(path, ["t", "duhamel_l2"], series)
    return {"kind": "gain", "params": probe, "outputs": [str(path)],
            "final_duhamel_l2": series[-1][1],
            "ok": bool(series[0][1] < 1e-12)}


def _ledger_rows(ledger):
    return [
        (e.step_index, e.t_start, e.delta, e.e_phi_before, e.e_phi_after,
         e.increment, e.w_l2, e.w_h1, e.psi_h1, e.psi_h32, e.psi_h52)
        for e in ledger.steps
    ]


LEDGER_HEADER = ["step", "t_start", "delta", "E_before", "E_after",
                 "increment", "w_l2", "w_h1", "psi_h1", "psi_h32", "psi_h52"]


def _probe_globalize(u0, cfg, probe, index):
    gcfg = GlobalizationConfig(
        p=float(probe["p"]), epsilon=float(probe["epsilon"]), grid=u0.grid,
        solver=cfg.solver, eta_slack=float(probe.get("eta", 0.05)),
        T_target=float(probe.get("T", 1.0)), sigma=cfg.nls.sigma, lam=cfg.nls.lam,
    )
    traj, ledger = globalize(u0, gcfg)
    path = cfg.output_dir / f"probe{index}_ledger.csv"
    _write_csv(path, LEDGER_HEADER, _ledger_rows(ledger))
    reached = traj.times[-1] >= gcfg.T_target - 1e-12
    return {"kind": "globalize", "params": probe, "outputs": [str(path)],
            "total_increment": ledger.total_increment, "ok": bool(reached)}


def _probe_sweep_epsilon(u0, cfg, probe, index):
    epsilons = [float(e) for e in probe["epsilons"]]

    def one(eps: float):
        gcfg = GlobalizationConfig(
            p=float(probe["p"]), epsilon=eps, grid=u0.grid, solver=cfg.solver,
            eta_slack=float(probe.get("eta", 0.05)),
            T_target=float(probe.get("T", 1.0)),
            sigma=cfg.nls.sigma, lam=cfg.nls.lam,
        )
        return globalize(u0, gcfg)[1]

    with ThreadPoolExecutor(max_workers=max_workers()) as pool:
        ledgers = list(pool.map(one, epsilons))
    fit = increment_scaling_report(ledgers)
    path = cfg.output_dir / f"probe{index}_sweep.json"
    payload = {"slope": fit.slope, "ci": fit.ci_halfwidth,
               "target_beta_minus_3theta": fit.target, "pass": fit.passed,
               "points": fit.points}
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
    for eps, ledger in zip(epsilons, ledgers):
        lpath = cfg.output_dir / f"probe{index}_ledger_eps{eps}.csv"
        _write_csv(lpath, LEDGER_HEADER, _ledger_rows(ledger))
    return {"kind": "sweep_epsilon", "params": probe, "outputs": [str(path)],
            "slope": fit.slope, "ok": fit.passed}


def _probe_l_sweep(u0, cfg, probe, index):
    lengths = [float(L) for L in probe["box_lengths"]]

    def one(L: float):
        grid = Grid(dim=cfg.grid.dim, n=cfg.grid.n, box_length=L)
        f = synthesize(DataFamily(kind=cfg.data.kind, grid=grid))
        return L, l2_norm(f)

    with ThreadPoolExecutor(max_workers=max_workers()) as pool:
        rows = list(pool.map(one, lengths))
    slope = float(np.polyfit(np.log([r[0] for r in rows]),
                             np.log([r[1] for r in rows]), 1)[0])
    path = cfg.output_dir / f"probe{index}_lsweep.dat"
    _write_csv(path, ["L", "l2_norm"], rows)
    return {"kind": "l_sweep", "params": probe, "outputs": [str(path)],
            "l2_slope": slope}


_PROBE_RUNNERS = {
    "norm_table": _probe_norm_table,
    "growth": _probe_growth,
    "gain": _probe_gain,
    "globalize": _probe_globalize,
    "sweep_epsilon": _probe_sweep_epsilon,
    "l_sweep": _probe_l_sweep,
}
