"""Command-line entry point (``nlszp``)."""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from .datafamilies import Custom, DataFamily, Gaussian, PowerTail, PureMode, synthesize
from .decomposition import frequency_split, make_truncation_params
from .evolution import NlsParams, PicardConfig, energy, mass, picard_solve, split_step_solve
from .exponents import check_admissible, derive_lwp_exponents
from .fieldio import read_zfld, write_zfld
from .harness import (
    LEDGER_HEADER,
    _ledger_rows,
    _write_csv,
    load_config,
    max_workers,
    run_experiment,
)
from .globalization import GlobalizationConfig, globalize, increment_scaling_report
from .norms import NormKind, compute_norm
from .spectral import Grid


def _parse_rational(text: str):
    if text in ("inf", "infinity"):
        return math.inf
    return Fraction(text)


def _jsonify(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    if isinstance(value, dict):
        return {k: _jsonify(v) for k, v in value.items()}
    return value


def _add_grid_args(sub):
    sub.add_argument("--dim", type=int, default=1)
    sub.add_argument("--n", type=int, default=256)
    sub.add_argument("--box-length", type=float, default=32.0)


def cmd_synth(args) -> int:
    grid = Grid(dim=args.dim, n=args.n, box_length=args.box_length)
    if args.kind == "gaussian":
        profile = Gaussian(width=args.width, amplitude=args.amplitude)
    elif args.kind == "pure_mode":
        profile = PureMode(k=args.k, amplitude=args.amplitude)
    elif args.kind == "power_tail":
        profile = PowerTail(gamma=args.gamma, core_width=args.core_width,
                            amplitude=args.amplitude)
    else:
        profile = Custom(path=args.path)
    write_zfld(args.out, synthesize(DataFamily(kind=profile, grid=grid)))
    return 0


def cmd_norm(args) -> int:
    f = read_zfld(getattr(args, "in"))
    if args.kind == "energy":
        value = energy(f, NlsParams(sigma=args.sigma, lam=args.lam, dim=f.grid.dim))
        params = {"sigma": args.sigma, "lambda": args.lam}
    elif args.kind == "mass":
        value = mass(f)
        params = {}
    else:
        params = {}
        for name in ("p", "s", "q", "r"):
            v = getattr(args, name)
            if v is not None:
                params[name] = v
        if args.kind == "besov":
            params["homogeneous"] = args.homogeneous
        value = compute_norm(f, NormKind(args.kind, params))
    print(json.dumps({"kind": args.kind, "params": _jsonify(params), "value": value}))
    return 0


def cmd_exponents(args) -> int:
    exps = derive_lwp_exponents(Fraction(args.s), Fraction(args.p),
                                Fraction(args.sigma), args.dim)
    payload = {
        "regime": exps.regime, "dim": exps.dim,
        "s": exps.s, "p": exps.p, "sigma": exps.sigma,
        "r1": exps.r1, "q1": exps.q1, "r2": exps.r2, "q2": exps.q2,
        "r3": exps.r3, "q3": exps.q3, "a": exps.a,
        "theta_interp": exps.theta_interp, "rho": exps.rho,
        "rho_star": exps.rho_star, "conditions_ok": exps.conditions_ok,
    }
    print(json.dumps({k: _jsonify(v) for k, v in payload.items()}))
    return 0


def cmd_admissible(args) -> int:
    ok = check_admissible(_parse_rational(args.q), _parse_rational(args.r), args.dim)
    print(json.dumps({"q": args.q, "r": args.r, "dim": args.dim, "admissible": ok}))
    return 0 if ok else 1


def cmd_split(args) -> int:
    u0 = read_zfld(getattr(args, "in"))
    params = make_truncation_params(args.p, args.epsilon, args.eta)
    result = frequency_split(u0, params, sharp=args.sharp)
    write_zfld(args.out_low, result.regular)
    write_zfld(args.out_high, result.rough)
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(result.report, fh, indent=2)
    return 0


def cmd_evolve(args) -> int:
    u0 = read_zfld(getattr(args, "in"))
    nls = NlsParams(sigma=args.sigma, lam=args.lam, dim=u0.grid.dim)
    kwargs = dict(store_every=args.snap_every, diag_zsp=(args.s, args.p),
                  track_duhamel=True)
    if args.method == "picard":
        cfg = PicardConfig(dt=args.dt)
        traj = picard_solve(u0, nls, args.T, cfg, **kwargs)
    else:
        traj = split_step_solve(u0, nls, args.T, args.dt, **kwargs)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for t, state in zip(traj.times, traj.states):
        write_zfld(out_dir / f"u_t{t:.6f}.zfld", state)
    rows = [(d["t"], d["mass"], d["energy"], d["zsp_norm"], d["duhamel_l2"])
            for d in traj.diagnostics]
    _write_csv(Path(args.diag), ["t", "mass", "energy", "zsp_norm", "duhamel_l2"], rows)
    return 0


def cmd_globalize(args) -> int:
    u0 = read_zfld(getattr(args, "in"))
    cfg = GlobalizationConfig(
        p=args.p, epsilon=args.epsilon, grid=u0.grid,
        solver=PicardConfig(dt=args.dt), eta_slack=args.eta, T_target=args.T,
    )
    traj, ledger = globalize(u0, cfg)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for t, state in zip(traj.times, traj.states):
        write_zfld(out_dir / f"u_t{t:.6f}.zfld", state)
    _write_csv(Path(args.ledger), LEDGER_HEADER, _ledger_rows(ledger))
    return 0


def cmd_sweep_epsilon(args) -> int:
    import tomli
    from concurrent.futures import ThreadPoolExecutor

    with open(args.config, "rb") as fh:
        raw = tomli.load(fh)
    cfg = load_config(args.config) if "probes" in raw else None
    if cfg is not None:
        manifest = run_experiment(cfg)
        print(json.dumps(manifest, indent=2, default=str))
        return 0 if manifest["ok"] else 1
    # Plain sweep table: grid/data plus a [sweep] section.
    grid = Grid(**raw["grid"])
    from .harness import _parse_data

    u0 = synthesize(_parse_data(raw["data"], grid))
    sweep = raw["sweep"]
    solver = PicardConfig(dt=float(sweep.get("dt", 1e-3)))

    def one(eps: float):
        gcfg = GlobalizationConfig(p=float(sweep["p"]), epsilon=eps, grid=grid,
                                   solver=solver,
                                   eta_slack=float(sweep.get("eta", 0.05)),
                                   T_target=float(sweep.get("T", 1.0)))
        return globalize(u0, gcfg)[1]

    with ThreadPoolExecutor(max_workers=max_workers()) as pool:
        ledgers = list(pool.map(one, [float(e) for e in sweep["epsilons"]]))
    fit = increment_scaling_report(ledgers)
    payload = {"slope": fit.slope, "ci": fit.ci_halfwidth,
               "target_beta_minus_3theta": fit.target, "pass": fit.passed}
    print(json.dumps(payload))
    return 0 if fit.passed else 1


def cmd_run(args) -> int:
    manifest = run_experiment(load_config(args.config))
    print(json.dumps(manifest, indent=2, default=str))
    return 0 if manifest["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nlszp")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesize an initial-data field")
    _add_grid_args(p)
    p.add_argument("--kind", choices=["gaussian", "pure_mode", "power_tail", "custom"],
                   required=True)
    p.add_argument("--width", type=float, default=1.0)
    p.add_argument("--amplitude", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=1.2)
    p.add_argument("--core-width", type=float, default=1.0)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--path", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("norm", help="evaluate a norm of a stored field")
    p.add_argument("--in", required=True)
    p.add_argument("--kind", required=True,
                   choices=["lp", "hs", "besov", "zhidkov", "energy", "mass"])
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--s", type=float, default=None)
    p.add_argument("--q", type=float, default=None)
    p.add_argument("--r", type=float, default=None)
    p.add_argument("--homogeneous", action="store_true")
    p.add_argument("--sigma", type=float, default=2.0)
    p.add_argument("--lambda", dest="lam", type=int, default=-1)
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("exponents", help="derive local-solving exponents")
    p.add_argument("--s", required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--sigma", required=True)
    p.add_argument("--dim", type=int, required=True)
    p.set_defaults(func=cmd_exponents)

    p = sub.add_parser("admissible", help="check a Strichartz pair")
    p.add_argument("--q", required=True)
    p.add_argument("--r", required=True)
    p.add_argument("--dim", type=int, required=True)
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("split", help="low/high frequency split at epsilon")
    p.add_argument("--in", required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--p", type=float, default=4.25)
    p.add_argument("--eta", type=float, default=0.05)
    p.add_argument("--sharp", action="store_true")
    p.add_argument("--out-low", required=True)
    p.add_argument("--out-high", required=True)
    p.add_argument("--report", default=None)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("evolve", help="integrate the equation")
    p.add_argument("--in", required=True)
    p.add_argument("--sigma", type=float, default=2.0)
    p.add_argument("--lambda", dest="lam", type=int, default=-1)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--dt", type=float, required=True)
    p.add_argument("--method", choices=["picard", "splitstep"], default="splitstep")
    p.add_argument("--snap-every", type=int, default=100)
    p.add_argument("--s", type=float, default=1.0)
    p.add_argument("--p", type=float, default=4.0)
    p.add_argument("--out", required=True)
    p.add_argument("--diag", required=True)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("globalize", help="run the truncation globalization loop")
    p.add_argument("--in", required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--eta", type=float, default=0.05)
    p.add_argument("--T", type=float, default=1.0)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--out", required=True)
    p.add_argument("--ledger", required=True)
    p.set_defaults(func=cmd_globalize)

    p = sub.add_parser("sweep-epsilon", help="epsilon sweep with slope fit")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_sweep_epsilon)

    p = sub.add_parser("run", help="run a full experiment config")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_run)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
