"""Command-line interface.

Subcommands: sample, pn, scaling, diagnose, bose-hubbard, rerun.  Every run
writes a manifest.json (resolved configuration, package version, seed) next
to its outputs; rerunning from a manifest reproduces every output file
byte-for-byte regardless of --threads.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from ._backend import BACKEND
from .analytic import (
    SqueezedCoherentParams,
    pn_squeezed_coherent,
    pn_thermal,
)
from .binning import BinSpec, bin_ensemble, pn_binned_analytic, pn_boxcar_quadrature
from .bose_hubbard import BHParams, compare_distributions, exact_evolve, twa_evolve
from .diagnostics import bhattacharyya, radial_profile, smoothness_check
from .distributions import save_distribution_csv
from .fock import pn_quadrature, pn_wigner_average, sample_fock_gaussian_ring
from .states import GaussianWignerState, load_ensemble_csv, sample, save_ensemble_csv
from .sweeps import sweep_coherent, sweep_sigma_eff, sweep_thermal


def _state_from_config(cfg):
    kind = cfg["state"]
    if kind == "vacuum":
        return GaussianWignerState.vacuum()
    if kind == "coherent":
        beta = cfg["beta_mag"] * np.exp(1j * cfg.get("beta_phase", 0.0))
        return GaussianWignerState.coherent(beta)
    if kind == "thermal":
        return GaussianWignerState.thermal(cfg["nbar"])
    if kind == "squeezed-coherent":
        beta = cfg["beta_mag"] * np.exp(1j * cfg.get("beta_phase", 0.0))
        return GaussianWignerState.squeezed_coherent(beta, cfg["s"], cfg.get("theta", 0.0))
    raise SystemExit(f"unsupported state kind: {kind}")


def _write_manifest(outdir, command, config, warning_messages=()):
    manifest = {
        "command": command,
        "config": config,
        "version": __version__,
        "seed": config.get("seed"),
        "warnings": sorted(set(warning_messages)),
    }
    with open(os.path.join(outdir, "manifest.json"), "w") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
    return manifest


def _dist_to_jsonable(dist):
    return {
        "n": list(range(dist.n_max + 1)),
        "p": [float(v) for v in dist.probs],
        "stderr": None if dist.stderr is None else [float(v) for v in dist.stderr],
        "method": dist.method.value,
        "meta": dist.meta,
    }


def _save_dist(dist, outdir, name, fmt):
    if fmt == "json":
        with open(os.path.join(outdir, name + ".json"), "w") as f:
            json.dump(_dist_to_jsonable(dist), f, indent=1)
    else:
        save_distribution_csv(dist, os.path.join(outdir, name + ".csv"))


# -- commands -----------------------------------------------------------------


def cmd_sample(config, threads):
    outdir = config["out"]
    os.makedirs(outdir, exist_ok=True)
    if config["state"] == "fock-ring":
        ens = sample_fock_gaussian_ring(config["fock_n"], config["ntraj"], config["seed"], threads=threads)
    else:
        state = _state_from_config(config)
        ens = sample(state, config["ntraj"], config["seed"], threads=threads)
    save_ensemble_csv(ens, os.path.join(outdir, "ensemble.csv"))
    return 0


def cmd_pn(config, threads):
    outdir = config["out"]
    os.makedirs(outdir, exist_ok=True)
    fmt = config.get("format", "csv")
    state = _state_from_config(config)
    methods = config["methods"]
    known = {"binned", "quadrature", "wigner-average", "analytic",
             "binned-analytic", "binned-quadrature"}
    unknown = set(methods) - known
    if unknown:
        raise SystemExit(f"unknown methods: {sorted(unknown)}")
    n_max = config.get("n_max")

    produced = {}
    if "quadrature" in methods:
        produced["quadrature"] = pn_quadrature(state, n_max=n_max, threads=threads)
    if n_max is None:
        n_max = produced["quadrature"].n_max if "quadrature" in produced else None
    if "analytic" in methods:
        if config["state"] == "thermal":
            produced["analytic"] = pn_thermal(config["nbar"], n_max)
        elif config["state"] in ("coherent", "squeezed-coherent"):
            p = SqueezedCoherentParams(
                beta_mag=config["beta_mag"],
                varphi=config.get("beta_phase", 0.0),
                s=config.get("s", 0.0),
                theta=config.get("theta", 0.0),
            )
            produced["analytic"] = pn_squeezed_coherent(p, n_max)
        else:
            raise SystemExit("analytic method not available for this state")
    if n_max is None and produced:
        n_max = max(d.n_max for d in produced.values())
    if "binned" in methods or "wigner-average" in methods:
        ens = sample(state, config["ntraj"], config["seed"], threads=threads)
        if n_max is None:
            from .fock import auto_n_max

            n_max = auto_n_max(state)
        if "binned" in methods:
            produced["binned"] = bin_ensemble(ens, 0, BinSpec(n_max))
        if "wigner-average" in methods:
            produced["wigner-average"] = pn_wigner_average(ens, n_max, threads=threads)
    if "binned-analytic" in methods:
        produced["binned-analytic"] = pn_binned_analytic(state, n_max)
    if "binned-quadrature" in methods:
        produced["binned-quadrature"] = pn_boxcar_quadrature(state, n_max, threads=threads)
    if not produced:
        raise SystemExit("no methods requested")

    for name, dist in produced.items():
        _save_dist(dist, outdir, f"pn_{name}", fmt)
    pairs = {}
    names = sorted(produced)
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            pa = np.clip(produced[a].probs, 0.0, None)
            pb = np.clip(produced[b].probs, 0.0, None)
            pairs[f"{a}__vs__{b}"] = bhattacharyya(pa, pb).distance
    with open(os.path.join(outdir, "db_summary.json"), "w") as f:
        json.dump(pairs, f, indent=2, sort_keys=True)
    return 0


def cmd_scaling(config, threads):
    outdir = config["out"]
    os.makedirs(outdir, exist_ok=True)
    sweep = config["sweep"]
    points = config.get("points")
    kw = dict(threads=threads)
    if sweep == "thermal-nbar":
        rows, fit = sweep_thermal(points) if points else sweep_thermal()
    elif sweep == "coherent-beta":
        if points:
            kw["beta_sqs"] = points
        rows, fit = sweep_coherent(n_samples=config["ntraj"], seed=config["seed"], **kw)
    elif sweep == "sigma-eff":
        if points:
            kw["sig_effs"] = points
        rows, fit = sweep_sigma_eff(n_samples=config["ntraj"], seed=config["seed"], **kw)
    else:
        raise SystemExit(f"unknown sweep: {sweep}")
    with open(os.path.join(outdir, "scaling.csv"), "w") as f:
        f.write("x,d_b,stderr\n")
        for x, d, se in rows:
            f.write(f"{float(x)!r},{float(d)!r},{float(se)!r}\n")
    with open(os.path.join(outdir, "fit.json"), "w") as f:
        json.dump(
            {"exponent": fit.exponent, "stderr": fit.stderr, "points": fit.points},
            f,
            indent=2,
        )
    return 0


def cmd_diagnose(config, threads):
    outdir = config["out"]
    os.makedirs(outdir, exist_ok=True)
    ns = config["n_list"]
    if config.get("ensemble"):
        ens = load_ensemble_csv(config["ensemble"])
        r_need = np.sqrt(max(ns) + 1.0)
        prof = radial_profile(
            ens, r_max=max(float(np.abs(ens.mode(0)).max()) * 1.001, r_need) + 0.5
        )
    else:
        state = _state_from_config(config)
        r_need = np.sqrt(max(ns) + 1.0) + 0.5
        r_def = abs(state.beta) + 8.0 * max(state.sigma_s, state.sigma_a)
        prof = radial_profile(state, r_max=max(r_need, r_def), n_points=2048)
    with open(os.path.join(outdir, "radial_profile.csv"), "w") as f:
        f.write("# " + json.dumps(prof.meta) + "\n")
        f.write("r,w,l_inh\n")
        for r, w, li in zip(prof.r_grid, prof.w, prof.l_inh):
            f.write(f"{float(r)!r},{float(w)!r},{float(li)!r}\n")
    verdicts = {}
    for n in ns:
        v = smoothness_check(prof, n, threshold=config.get("threshold", 10.0))
        verdicts[str(n)] = {"passed": v.passed, "min_value": v.min_value, "threshold": v.threshold}
    with open(os.path.join(outdir, "verdicts.json"), "w") as f:
        json.dump(verdicts, f, indent=2, sort_keys=True)
    return 0


def cmd_bose_hubbard(config, threads):
    outdir = config["out"]
    os.makedirs(outdir, exist_ok=True)
    fmt = config.get("format", "csv")
    params = BHParams(
        u=config["u"],
        omega=config.get("omega", 1.0),
        n1_initial=config["n1_initial"],
        t_final=config["t_final"],
        dt=config["dt"],
        n_traj=config["ntraj"],
        seed=config["seed"],
    )
    times = config.get("times") or [params.t_final]
    modes = config.get("modes", [0, 1])

    twa = twa_evolve(params, times, threads=threads)
    exact = exact_evolve(params, times, threads=threads)

    with open(os.path.join(outdir, "populations.csv"), "w") as f:
        f.write("t,n1,n2,method\n")
        for (t, n1, n2) in twa.populations():
            f.write(f"{float(t)!r},{float(n1)!r},{float(n2)!r},twa\n")
        for st in exact:
            n1, n2 = st.populations()
            f.write(f"{float(st.time)!r},{float(n1)!r},{float(n2)!r},exact\n")

    report_json = {"params": params.to_dict(), "times": times, "comparisons": []}
    for it, t in enumerate(times):
        for mode in modes:
            rep = compare_distributions(
                params, t, mode, twa=twa, exact=[exact[it]], threads=threads
            )
            tag = f"t{it}_mode{mode + 1}"
            _save_dist(rep.binned, outdir, f"pn_binned_{tag}", fmt)
            _save_dist(rep.wigner_average, outdir, f"pn_wigner_average_{tag}", fmt)
            _save_dist(rep.exact, outdir, f"pn_exact_{tag}", fmt)
            xe, ye, H = rep.wigner_hist
            np.savetxt(
                os.path.join(outdir, f"wigner_hist_{tag}.csv"),
                H,
                delimiter=",",
                header=f"2-D reconstruction; x in [{float(xe[0])!r},{float(xe[-1])!r}], bin {float(xe[1] - xe[0])!r}",
            )
            report_json["comparisons"].append(
                {
                    "time": t,
                    "mode": mode,
                    "distances": rep.distances,
                    "n_range": list(rep.n_range),
                    "smoothness": [
                        {"n": v.n, "passed": v.passed, "min_value": v.min_value}
                        for v in rep.smoothness
                    ],
                }
            )
    with open(os.path.join(outdir, "comparison_report.json"), "w") as f:
        json.dump(report_json, f, indent=1, sort_keys=True)
    return 0


_RUNNERS = {
    "sample": cmd_sample,
    "pn": cmd_pn,
    "scaling": cmd_scaling,
    "diagnose": cmd_diagnose,
    "bose-hubbard": cmd_bose_hubbard,
}


def run_command(command, config, threads):
    """Execute a command, then write its manifest (with captured warnings)."""
    import warnings as _warnings

    with _warnings.catch_warnings(record=True) as caught:
        _warnings.simplefilter("always")
        rc = _RUNNERS[command](config, threads)
    _write_manifest(config["out"], command, config, [str(w.message) for w in caught])
    return rc


def cmd_rerun(manifest_path, threads):
    with open(manifest_path) as f:
        manifest = json.load(f)
    return run_command(manifest["command"], manifest["config"], threads)


# -- argument parsing -----------------------------------------------------------


def _add_common(p):
    p.add_argument("--seed", type=int, default=12345)
    p.add_argument("--ntraj", type=int, default=10**7)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", type=str, required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")


def _add_state(p):
    p.add_argument(
        "--state",
        choices=["vacuum", "coherent", "thermal", "squeezed-coherent", "fock-ring"],
        required=True,
    )
    p.add_argument("--nbar", type=float)
    p.add_argument("--beta-mag", type=float)
    p.add_argument("--beta-phase", type=float, default=0.0)
    p.add_argument("--s", type=float, default=0.0)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--fock-n", type=int)


def _state_config(args):
    cfg = {"state": args.state}
    for key in ("nbar", "beta_mag", "beta_phase", "s", "theta", "fock_n"):
        val = getattr(args, key)
        if val is not None:
            cfg[key] = val
    return cfg


def build_parser():
    ap = argparse.ArgumentParser(prog="wignerbin", description=__doc__)
    ap.add_argument("--version", action="version", version=f"wignerbin {__version__} ({BACKEND})")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw an ensemble and write it to CSV")
    _add_state(p)
    _add_common(p)

    p = sub.add_parser("pn", help="number distribution by one or more methods")
    _add_state(p)
    _add_common(p)
    p.add_argument(
        "--methods",
        type=str,
        default="binned,quadrature,wigner-average,analytic",
        help="comma list from binned,quadrature,wigner-average,analytic,"
        "binned-analytic,binned-quadrature",
    )
    p.add_argument("--n-max", type=int, default=None)

    p = sub.add_parser("scaling", help="statistical-distance scaling sweep")
    _add_common(p)
    p.add_argument("--sweep", choices=["thermal-nbar", "coherent-beta", "sigma-eff"], required=True)
    p.add_argument("--points", type=str, default=None, help="comma list of x values")

    p = sub.add_parser("diagnose", help="radial profile and smoothness verdicts")
    _add_state(p)
    _add_common(p)
    p.add_argument("--n-list", type=str, required=True, help="comma list of Fock orders")
    p.add_argument("--ensemble", type=str, default=None, help="ensemble CSV instead of a state")
    p.add_argument("--threshold", type=float, default=10.0)

    p = sub.add_parser("bose-hubbard", help="two-site trajectory vs exact comparison")
    _add_common(p)
    p.add_argument("--config", type=str, default=None, help="JSON file with run parameters")
    p.add_argument("--u", type=float, default=0.25)
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--n1-initial", type=float, default=100.0)
    p.add_argument("--t-final", type=float, default=0.15)
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--times", type=str, default=None, help="comma list of output times")

    p = sub.add_parser("rerun", help="re-execute a run from its manifest")
    p.add_argument("--manifest", type=str, required=True)
    p.add_argument("--threads", type=int, default=1)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "rerun":
        return cmd_rerun(args.manifest, args.threads)

    if args.command == "sample":
        config = _state_config(args)
        config.update(seed=args.seed, ntraj=args.ntraj, out=args.out, format=args.format)
        return run_command("sample", config, args.threads)

    if args.command == "pn":
        config = _state_config(args)
        config.update(
            seed=args.seed,
            ntraj=args.ntraj,
            out=args.out,
            format=args.format,
            methods=[m.strip() for m in args.methods.split(",") if m.strip()],
        )
        if args.n_max is not None:
            config["n_max"] = args.n_max
        return run_command("pn", config, args.threads)

    if args.command == "scaling":
        config = {
            "sweep": args.sweep,
            "seed": args.seed,
            "ntraj": args.ntraj,
            "out": args.out,
            "format": args.format,
        }
        if args.points:
            config["points"] = [float(x) for x in args.points.split(",")]
        return run_command("scaling", config, args.threads)

    if args.command == "diagnose":
        config = _state_config(args) if not args.ensemble else {"state": args.state}
        config.update(
            seed=args.seed,
            out=args.out,
            format=args.format,
            n_list=[int(n) for n in args.n_list.split(",")],
            threshold=args.threshold,
        )
        if args.ensemble:
            config["ensemble"] = args.ensemble
        return run_command("diagnose", config, args.threads)

    if args.command == "bose-hubbard":
        if args.config:
            with open(args.config) as f:
                config = json.load(f)
            config.setdefault("out", args.out)
            config.setdefault("format", args.format)
        else:
            from .bose_hubbard import default_dt

            dt = args.dt if args.dt is not None else default_dt(args.u, args.omega, args.n1_initial)
            config = {
                "u": args.u,
                "omega": args.omega,
                "n1_initial": args.n1_initial,
                "t_final": args.t_final,
                "dt": dt,
                "ntraj": args.ntraj,
                "seed": args.seed,
                "out": args.out,
                "format": args.format,
            }
            if args.times:
                config["times"] = [float(t) for t in args.times.split(",")]
        return run_command("bose-hubbard", config, args.threads)

    raise SystemExit(f"unknown command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
