"""Command-line front end.

Exit codes: 0 success, 2 usage or configuration error, 3 physics-domain
error (e.g. unstable operating point), 4 partial failure of a multi-part
run.  Every emitted file gets a sidecar ``<name>.manifest.json`` recording
the canonicalized-config hash, tool version, command line and timestamp.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .dynmat import (Detuning, matrices_as_json, rwa_from_params,
                     system_from_params)
from .params import (DriveDirect, DrivePhysical, SystemParams,
                     ValidationError, load_config)
from .rwa import rwa_scattering
from .scattering import (ANTI_STOKES_SIGN, STOKES_SIGN, ZeroEfficiency,
                         default_grid, sideband_report, spectrum_rows,
                         write_spectrum_csv)
from .stability import AxisSpec, classify, stability_map, write_map_csv
from .steady_state import NoConvergence, solve_steady_state
from .sweep import run_sweep, write_sweep_csv
from . import presets

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PHYSICS = 3
EXIT_PARTIAL = 4


def _canonical_config(p: SystemParams) -> dict:
    cfg = {
        "omega_b_thz": p.omega_b_thz,
        "omega_c_thz": p.omega_c_thz,
        "kappa_a_thz": p.kappa_a_thz,
        "kappa_c_thz": p.kappa_c_thz,
        "gamma_B_thz": p.gamma_B_thz,
        "g_c_thz": p.g_c_thz,
        "n_molecules": p.n_molecules,
    }
    if isinstance(p.drive, DriveDirect):
        g = complex(p.drive.g_a_enh_thz)
        cfg["drive.mode"] = "direct"
        cfg["drive.delta_thz"] = p.drive.delta_thz
        cfg["drive.g_a_enh_thz"] = [g.real, g.imag]
    else:
        cfg["drive.mode"] = "physical"
        cfg["drive.delta0_thz"] = p.drive.delta0_thz
        cfg["drive.g_a_thz"] = p.drive.g_a_thz
        cfg["drive.eps_p_thz"] = p.drive.eps_p_thz
    return cfg


def config_hash(p: SystemParams) -> str:
    blob = json.dumps(_canonical_config(p), sort_keys=True,
                      separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def write_manifest(out_path: Path, p: SystemParams | None,
                   argv: list) -> None:
    manifest = {
        "config_hash": config_hash(p) if p is not None else None,
        "tool_version": __version__,
        "command_line": " ".join(argv),
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    if p is not None:
        manifest["config"] = _canonical_config(p)
    side = out_path.with_name(out_path.name + ".manifest.json")
    side.write_text(json.dumps(manifest, indent=2) + "\n")


def parse_axis(text: str) -> AxisSpec:
    """Parse ``name:start:stop:points[:log]`` axis syntax."""
    parts = text.split(":")
    if len(parts) not in (4, 5):
        raise ValueError(f"bad axis spec {text!r}")
    scale = "linear"
    if len(parts) == 5:
        scale = parts[4]
    return AxisSpec(parts[0], float(parts[1]), float(parts[2]),
                    int(parts[3]), scale)


def _load(args) -> SystemParams:
    return load_config(args.config)


def cmd_spectrum(args, argv) -> int:
    p = _load(args)
    if args.grid is not None:
        lo, hi, n = args.grid.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
        if n < 1 or not lo < hi:
            print("error: empty or inverted frequency grid", file=sys.stderr)
            return EXIT_USAGE
        import numpy as np
        grid = np.linspace(lo, hi, n)
    else:
        grid = default_grid(p.omega_b_thz)
    sys_full = system_from_params(p)
    verdict = classify(sys_full)
    rows = spectrum_rows(sys_full, grid)
    out = Path(args.out)
    write_spectrum_csv(out, rows)
    write_manifest(out, p, argv)
    if not verdict.stable:
        print("warning: operating point is linearly unstable", file=sys.stderr)
        return EXIT_PHYSICS
    return EXIT_OK


def cmd_sidebands(args, argv) -> int:
    p = _load(args)
    wb = p.omega_b_thz
    if args.model == "full":
        sys_full = system_from_params(p)
        rep = sideband_report(sys_full, wb)
        payload = {
            "t_ac_AS": rep.t_ac_AS, "t_ac_S": rep.t_ac_S,
            "n_add_AS": rep.n_add_AS, "n_add_S": rep.n_add_S,
            "model": "full", "regime": rep.detuning_regime.value,
        }
    else:
        from .dynmat import effective_drive
        delta, _ = effective_drive(p)
        kind = Detuning.RED if delta >= 0 else Detuning.BLUE
        r = rwa_from_params(p, kind)
        res_as = rwa_scattering(r, ANTI_STOKES_SIGN * wb)
        res_s = rwa_scattering(r, STOKES_SIGN * wb)
        payload = {
            "t_ac_AS": res_as.t_ac, "t_ac_S": res_s.t_ac,
            "n_add_AS": res_as.s_add / res_as.t_ac if res_as.t_ac > 0 else None,
            "n_add_S": res_s.s_add / res_s.t_ac if res_s.t_ac > 0 else None,
            "model": "rwa", "regime": kind.value,
        }
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def cmd_sweep(args, argv) -> int:
    p = _load(args)
    axes = [parse_axis(args.x)]
    if args.y:
        axes.append(parse_axis(args.y))
    metrics = [m for m in args.metrics.split(",") if m]
    table = run_sweep(p, axes, metrics)
    out = Path(args.out)
    write_sweep_csv(out, table)
    write_manifest(out, p, argv)
    return EXIT_OK


def cmd_stability_map(args, argv) -> int:
    p = _load(args)
    if args.detuning:
        sign = +1.0 if args.detuning == "red" else -1.0
        if not isinstance(p.drive, DriveDirect):
            print("error: --detuning requires a direct-drive config",
                  file=sys.stderr)
            return EXIT_USAGE
        p = dataclasses.replace(
            p, drive=dataclasses.replace(
                p.drive, delta_thz=sign * p.omega_b_thz))
    m = stability_map(p, parse_axis(args.x), parse_axis(args.y))
    out = Path(args.out)
    write_map_csv(out, m)
    write_manifest(out, p, argv)
    return EXIT_OK


def cmd_steady_state(args, argv) -> int:
    p = _load(args)
    if not isinstance(p.drive, DrivePhysical):
        print("error: steady-state solve needs drive.mode=physical",
              file=sys.stderr)
        return EXIT_USAGE
    sol = solve_steady_state(p)
    payload = {
        "branches": [
            {"a_re": b.a_ss.real, "a_im": b.a_ss.imag,
             "c_re": b.c_ss.real, "c_im": b.c_ss.imag,
             "B_re": b.B_ss.real, "B_im": b.B_ss.imag,
             "delta_eff_thz": b.delta_eff_thz}
            for b in sol.branches
        ],
        "selected": sol.selected,
    }
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def cmd_dump_matrix(args, argv) -> int:
    p = _load(args)
    print(json.dumps(matrices_as_json(system_from_params(p)), indent=2))
    return EXIT_OK


def _reproduce_fig2(out_dir: Path, argv) -> None:
    for name, (x, y) in presets.FIG2_AXES.items():
        # fig2a sweeps |gA| at kappa_a = 30; fig2b sweeps kappa_a at |gA| = 0.75
        p = presets.blue(0.75, kappa_a_thz=30.0)
        m = stability_map(p, x, y)
        out = out_dir / f"{name}.csv"
        write_map_csv(out, m)
        write_manifest(out, p, argv)


def _reproduce_fig4(out_dir: Path, argv) -> None:
    for name, p in (("fig4a", presets.red(3.0)), ("fig4b", presets.blue(3.0))):
        sys_full = system_from_params(p)
        out = out_dir / f"{name}.csv"
        write_spectrum_csv(out, spectrum_rows(sys_full, default_grid(p.omega_b_thz)))
        write_manifest(out, p, argv)
    panels = (("fig4c", presets.red(0.0), ["t_ac_S", "t_ac_rwa_S"]),
              ("fig4d", presets.blue(0.0), ["t_ac_S", "t_ac_rwa_S"]),
              ("fig4e", presets.red(0.0), ["t_ac_AS", "t_ac_rwa_AS"]),
              ("fig4f", presets.blue(0.0), ["t_ac_AS", "t_ac_rwa_AS"]))
    for name, p, metrics in panels:
        table = run_sweep(p, [presets.SWEEP_GA], metrics)
        out = out_dir / f"{name}.csv"
        write_sweep_csv(out, table)
        write_manifest(out, p, argv)


def _reproduce_fig5(out_dir: Path, argv) -> None:
    for side, make in (("red", presets.red), ("blue", presets.blue)):
        for ga in (1.0, 2.0, 3.0):
            p = make(ga)
            sys_full = system_from_params(p)
            out = out_dir / f"fig5_{side}_gA{ga:g}.csv"
            write_spectrum_csv(out, spectrum_rows(
                sys_full, default_grid(p.omega_b_thz)))
            write_manifest(out, p, argv)


def _reproduce_fig6(out_dir: Path, argv) -> None:
    panels = (
        ("fig6a", presets.red(0.0, kappa_a_thz=2.0), presets.FIG6_GA_AXIS,
         ["t_ac_AS", "n_add_AS"]),
        ("fig6b", presets.blue(0.0, kappa_a_thz=2.0), presets.FIG6_GA_AXIS,
         ["t_ac_S", "n_add_S"]),
        ("fig6c", presets.red(0.75), presets.FIG6_KAPPA_AXIS,
         ["t_ac_AS", "n_add_AS"]),
        ("fig6d", presets.blue(0.75), presets.FIG6_KAPPA_AXIS,
         ["t_ac_S", "n_add_S"]),
    )
    for name, p, axis, metrics in panels:
        table = run_sweep(p, [axis], metrics)
        out = out_dir / f"{name}.csv"
        write_sweep_csv(out, table)
        write_manifest(out, p, argv)


def cmd_reproduce(args, argv) -> int:
    if args.figure not in presets.FIGURE_IDS:
        print(f"error: unknown figure id {args.figure!r}", file=sys.stderr)
        return EXIT_USAGE
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    runner = {"fig2": _reproduce_fig2, "fig4": _reproduce_fig4,
              "fig5": _reproduce_fig5, "fig6": _reproduce_fig6}[args.figure]
    try:
        runner(out_dir, argv)
    except Exception as exc:  # any panel failure is a partial failure
        print(f"error: panel run failed: {exc}", file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="moloconv",
        description="Frequency-domain simulator for IR-to-VIS upconversion "
                    "in molecular optomechanical cavities")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="scattering spectrum CSV over a frequency grid")
    sp.add_argument("--config", required=True)
    sp.add_argument("--grid", help="omega grid as min:max:points (THz)")
    sp.add_argument("--out", required=True)

    sb = sub.add_parser("sidebands", help="sideband efficiencies and added noise as JSON")
    sb.add_argument("--config", required=True)
    sb.add_argument("--model", choices=["full", "rwa"], default="full")

    sw = sub.add_parser("sweep", help="metric sweep over 1-2 parameter axes")
    sw.add_argument("--config", required=True)
    sw.add_argument("--x", required=True, help="axis as name:start:stop:points[:log]")
    sw.add_argument("--y")
    sw.add_argument("--metrics", required=True)
    sw.add_argument("--out", required=True)

    sm = sub.add_parser("stability-map", help="2D stability map CSV")
    sm.add_argument("--config", required=True)
    sm.add_argument("--x", required=True)
    sm.add_argument("--y", required=True)
    sm.add_argument("--detuning", choices=["red", "blue"])
    sm.add_argument("--out", required=True)

    ss = sub.add_parser("steady-state", help="mean-field branches as JSON")
    ss.add_argument("--config", required=True)

    rp = sub.add_parser("reproduce", help="rebuild a published figure's data tables")
    rp.add_argument("figure")
    rp.add_argument("--out-dir", required=True)

    dm = sub.add_parser("dump-matrix", help="emit M and L as JSON")
    dm.add_argument("--config", required=True)

    return ap


_HANDLERS = {
    "spectrum": cmd_spectrum,
    "sidebands": cmd_sidebands,
    "sweep": cmd_sweep,
    "stability-map": cmd_stability_map,
    "steady-state": cmd_steady_state,
    "reproduce": cmd_reproduce,
    "dump-matrix": cmd_dump_matrix,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, 0 on --help; pass both through
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args, ["moloconv"] + argv)
    except ValidationError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except json.JSONDecodeError as exc:
        print(f"config error: invalid JSON at line {exc.lineno} column "
              f"{exc.colno}: {exc.msg}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NoConvergence, ZeroEfficiency) as exc:
        print(f"physics error: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
