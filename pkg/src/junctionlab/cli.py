"""Command-line front end.

Exit codes: 0 success, 1 usage/config error, 2 numerical failure. All
results go under the output directory (--out, else JUNCTIONLAB_OUT, else
./out); logs go to stderr; stdout carries only the JSON summary when
--json is set.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import bdg, bulk, csvio, device, presets, sweep
from .configfile import parse_device_config
from .continuum import abs_energy
from .eigen import eig_hermitian
from .errors import ConfigError, EigenConvergenceError, JunctionLabError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _log(message):
    print(message, file=sys.stderr)


def _out_dir(args) -> Path:
    out = args.out or os.environ.get("JUNCTIONLAB_OUT") or "out"
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _emit(args, summary: dict):
    if args.json:
        print(json.dumps(summary, sort_keys=True))


def _add_common(p):
    p.add_argument("--out", help="output directory (fallback: $JUNCTIONLAB_OUT, ./out)")
    p.add_argument("--json", action="store_true",
                   help="print a JSON summary on stdout")
    p.add_argument("--threads", type=int, default=1,
                   help="worker threads for grid diagonalizations")


def _add_device_args(p):
    p.add_argument("--config", help="device config file (sectioned key-value)")
    p.add_argument("--sweep-region",
                   help="region whose phase is swept (config devices)")
    p.add_argument("--family", choices=["sc-sc", "sc-tsc", "tsc-tsc"],
                   help="built-in chain family (alternative to --config)")
    p.add_argument("--n", type=int, default=30, help="total site count")
    p.add_argument("--mu", type=float, default=0.5)
    p.add_argument("--mu-left", type=float, default=1.0)
    p.add_argument("--mu-right", type=float, default=1.0)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--delta0", type=float, default=1.0)
    p.add_argument("--v-junction", type=float, default=None)
    p.add_argument("--v-c", type=float, default=1.0)


def _device_sweep_callable(args, parser):
    if args.config:
        text = Path(args.config).read_text()
        spec = parse_device_config(text)
        region = args.sweep_region
        if not region:
            parser.error("--sweep-region is required with --config")
        try:
            spec.region_index(region)
        except KeyError:
            raise ConfigError(f"region {region!r} not found in config")
        return (lambda phi: device.with_region_phase(spec, region, phi)), {
            "source": args.config, "sweep_region": region}
    if not args.family:
        parser.error("give either --config or --family")
    if args.family == "sc-sc":
        vj = args.t if args.v_junction is None else args.v_junction
        cfg = sweep.SweepConfig("sc-sc", {
            "n_sites": args.n, "mu": args.mu, "t": args.t,
            "delta0": args.delta0, "v_junction": vj})
    elif args.family == "sc-tsc":
        cfg = sweep.SweepConfig("sc-tsc", {
            "n_sites": args.n, "mu": args.mu, "t": args.t,
            "delta0": args.delta0, "v_c": args.v_c})
    else:
        cfg = sweep.SweepConfig("tsc-tsc", {
            "n_sites": args.n, "mu_left": args.mu_left,
            "mu_right": args.mu_right, "t": args.t, "delta0": args.delta0,
            "v_junction": args.v_junction})
    return cfg.spec_at, {"family": args.family, "params": cfg.params}


def _cmd_sweep(args, parser):
    out = _out_dir(args)
    spec_at, meta = _device_sweep_callable(args, parser)
    if args.dump_matrix:
        csvio.write_matrix(out / "matrix.csv",
                           bdg.assemble(spec_at(0.0)).matrix)
    res = sweep.run_sweep(spec_at, n_phi=args.phi_steps, track=args.track,
                          threads=args.threads)
    csvio.write_curves(out / "curves.csv", res)
    sidecar = {"command": "sweep", "n_phi": args.phi_steps,
               "track": args.track, "gap_edge_ev": res.gap_edge,
               "flags": res.flags} | meta
    csvio.write_json(out / "sweep.json", sidecar)
    _log(f"wrote {out / 'curves.csv'} ({len(res.curves)} branches)")
    _emit(args, {"curves": str(out / "curves.csv"),
                 "n_branches": len(res.curves),
                 "gap_edge_ev": res.gap_edge})
    return EXIT_OK


def _cmd_densities(args, parser):
    out = _out_dir(args)
    spec_at, meta = _device_sweep_callable(args, parser)
    res = sweep.run_sweep(spec_at, n_phi=args.phi_steps, track=args.track,
                          threads=args.threads)
    full = res.full_curves()
    if not full:
        _log("no full-span in-gap branch to report densities for")
        return EXIT_NUMERICAL
    ordered = sorted(full, key=lambda c: c.mean_abs_energy)
    branch = ordered[min(args.branch, len(ordered) - 1)]
    csvio.write_densities(out / "densities.csv", branch)
    csvio.write_json(out / "densities.json",
                     {"command": "densities", "branch_id": branch.branch_id,
                      "n_phi": args.phi_steps} | meta)
    _log(f"wrote {out / 'densities.csv'} (branch {branch.branch_id})")
    _emit(args, {"densities": str(out / "densities.csv"),
                 "branch_id": branch.branch_id})
    return EXIT_OK


def _cmd_bulk(args, parser):
    out = _out_dir(args)
    kind = {
        "normal-sc": device.RegionKind.NORMAL_SC,
        "kitaev-tsc": device.RegionKind.KITAEV_TSC,
        "tsc-phase-hopping": device.RegionKind.TSC_PHASE_HOPPING,
    }[args.kind]
    region = device.RegionModel(kind, args.mu, args.t, args.delta0, args.phase)
    bands = bulk.bulk_bands(region, n_k=args.n_k)
    csvio.write_bulk(out / "bulk.csv", bands)
    _log(f"wrote {out / 'bulk.csv'} (gap edge {bands.gap_edge:.6g} eV)")
    _emit(args, {"bulk": str(out / "bulk.csv"), "gap_edge_ev": bands.gap_edge})
    return EXIT_OK


def _cmd_analytic(args, parser):
    out = _out_dir(args)
    phis = np.linspace(0.0, 2 * math.pi, args.phi_steps)
    csvio.write_analytic(out / "analytic.csv", phis,
                         [abs_energy(p, args.delta, args.eta) for p in phis])
    _log(f"wrote {out / 'analytic.csv'}")
    _emit(args, {"analytic": str(out / "analytic.csv")})
    return EXIT_OK


def _cmd_msq(args, parser):
    out = _out_dir(args)
    gates = device.DEFAULT_GATES
    if args.gates:
        parts = [float(v) for v in args.gates.split(",")]
        gates = tuple(parts)
    if args.dump_matrix:
        spec = device.build_msq(0.0, args.phi1, args.phi2, gates)
        csvio.write_matrix(out / "matrix.csv", bdg.assemble(spec).matrix)
    res = sweep.msq_sweep(args.phi1, args.phi2, gates=gates,
                          n_phi=args.phi_steps, swept_phase=args.swept_phase,
                          track=args.track, threads=args.threads)
    csvio.write_curves(out / "curves.csv", res)
    csvio.write_json(out / "sweep.json", {
        "command": "msq", "phi1": args.phi1, "phi2": args.phi2,
        "gates": list(gates), "n_phi": args.phi_steps,
        "swept_phase": args.swept_phase,
        "labels": {c.label: c.branch_id for c in res.curves},
        "flags": res.flags})
    _log(f"wrote {out / 'curves.csv'} ({len(res.curves)} selected branches)")
    _emit(args, {"curves": str(out / "curves.csv"),
                 "labels": {c.label: c.branch_id for c in res.curves}})
    return EXIT_OK


def _cmd_preset(args, parser):
    out = _out_dir(args)
    try:
        manifest = presets.run_preset(args.id, out, threads=args.threads)
    except KeyError as exc:
        parser.error(str(exc))
    _log(f"preset {args.id} written under {out / args.id}")
    _emit(args, {"preset": args.id,
                 "artifacts": manifest["artifacts"],
                 "dir": str(out / args.id)})
    return EXIT_OK


def _cmd_validate(args, parser):
    text = Path(args.config).read_text()
    spec = parse_device_config(text)
    problems = device.validate(spec)
    payload = {"config": args.config, "valid": not problems,
               "violations": [{"kind": v.kind, "message": v.message}
                              for v in problems]}
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        _log(f"{args.config}: "
             + ("valid" if not problems else f"{len(problems)} violations"))
        for v in problems:
            _log(f"  {v.kind}: {v.message}")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="junctionlab",
                     description="tight-binding junction energy-phase toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="energy-phase sweep of a chain device")
    _add_device_args(p)
    _add_common(p)
    p.add_argument("--phi-steps", type=int, default=128)
    p.add_argument("--track", dest="track", action="store_true", default=True)
    p.add_argument("--no-track", dest="track", action="store_false")
    p.add_argument("--dump-matrix", action="store_true",
                   help="also write the assembled matrix as CSV triplets")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("densities", help="per-site densities of one branch")
    _add_device_args(p)
    _add_common(p)
    p.add_argument("--phi-steps", type=int, default=64)
    p.add_argument("--track", dest="track", action="store_true", default=True)
    p.add_argument("--no-track", dest="track", action="store_false")
    p.add_argument("--branch", type=int, default=0,
                   help="rank of the branch by mean |E| (0 = nearest zero)")
    p.set_defaults(func=_cmd_densities)

    p = sub.add_parser("bulk", help="bulk band curves for one region model")
    _add_common(p)
    p.add_argument("--kind", required=True,
                   choices=["normal-sc", "kitaev-tsc", "tsc-phase-hopping"])
    p.add_argument("--mu", type=float, default=0.5)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--delta0", type=float, default=1.0)
    p.add_argument("--phase", type=float, default=0.0)
    p.add_argument("--n-k", type=int, default=512)
    p.set_defaults(func=_cmd_bulk)

    p = sub.add_parser("analytic", help="closed-form junction dispersion CSV")
    _add_common(p)
    p.add_argument("--phi-steps", type=int, default=128)
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--eta", type=float, default=1.0)
    p.set_defaults(func=_cmd_analytic)

    p = sub.add_parser("msq", help="two-island 2D junction sweep")
    _add_common(p)
    p.add_argument("--phi1", type=float, default=0.0)
    p.add_argument("--phi2", type=float, default=0.0)
    p.add_argument("--gates", help="six comma-separated gate strengths")
    p.add_argument("--phi-steps", type=int, default=48)
    p.add_argument("--swept-phase", choices=["phi", "phi1", "phi2"],
                   default="phi")
    p.add_argument("--track", dest="track", action="store_true", default=True)
    p.add_argument("--no-track", dest="track", action="store_false")
    p.add_argument("--dump-matrix", action="store_true")
    p.set_defaults(func=_cmd_msq)

    p = sub.add_parser("preset", help="run a named reproduction bundle")
    p.add_argument("id", help="preset name, e.g. Fig3")
    _add_common(p)
    p.set_defaults(func=_cmd_preset)

    p = sub.add_parser("validate", help="parse and validate a device config")
    p.add_argument("--config", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, parser)
    except SystemExit as exc:
        return int(exc.code or 0)
    except ConfigError as exc:
        _log(f"config error: {exc}")
        return EXIT_USAGE
    except FileNotFoundError as exc:
        _log(f"error: {exc}")
        return EXIT_USAGE
    except EigenConvergenceError as exc:
        _log(f"numerical failure: {exc}")
        return EXIT_NUMERICAL
    except JunctionLabError as exc:
        _log(f"error: {exc}")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
