"""Command-line front end.

    tiltspdc tilt-solve   --scenario FILE
    tiltspdc jsi          --scenario FILE [--out DIR] [--grid-points N] [--format text|binary]
    tiltspdc hom          --scenario FILE
    tiltspdc cw-spectrum  --scenario FILE
    tiltspdc polarization --scenario FILE [--theta-a DEG ...]

Every command writes its data files plus ``manifest.json`` (inputs with units,
scenario hash, results, library versions) into the output directory. Exit
codes: 0 ok, 2 validation error, 3 physics-domain error, 4 numerical guard.
"""
from __future__ import annotations

import argparse
import datetime as _dt
import json
import logging
import math
import platform
import sys
from pathlib import Path

import numpy as np
import scipy

from . import __version__
from .biphoton import (build_jsa, cw_signal_spectrum_analytic, diagonal_spectra,
                       marginal_signal, pearson_correlation, schmidt_number)
from .dispersion import degenerate_type_ii
from .errors import GratingError, TiltSpdcError, UnsupportedBranchError, ValidationError
from .export import write_columns, write_jsi
from .hom import coincidence_trace
from .numerics import fwhm
from .polarization import (PolarizationMixModel, coincidence_vs_angles, curve_visibility,
                           epsilon_from_jsa, purity, sweep)
from .scenario import ScenarioFile
from .tilt import (effective_wave, grating_for_tilt, solve_tilt_anticorrelation,
                   solve_tilt_correlation)
from .units import C_UM_PER_FS

log = logging.getLogger("tiltspdc")

SUGGESTED_GROOVES = (300, 600, 1200, 1800, 2400, 3600)  # lines/mm


class Run:
    """State shared by one command invocation."""

    def __init__(self, args):
        self.args = args
        self.scenario = ScenarioFile.from_path(args.scenario)
        self.hash = self.scenario.digest()
        out = args.out or self.scenario.get("output")
        self.out = Path(out)
        self.out.mkdir(parents=True, exist_ok=True)
        self.results = {}

    def config(self):
        return self.scenario.to_config(self.args.grid_points)

    def header(self, **extra):
        return {"scenario_hash": self.hash, **extra}

    def inputs(self, cfg):
        p = cfg.pump
        echo = {
            "crystal": cfg.crystal.name,
            "length": f"{cfg.length!r}um",
            "pump.wavelength": f"{p.lambda_p!r}um",
            "pump.fwhm": "cw" if p.cw else f"{p.bandwidth_fwhm!r}um",
            "pump.waist": "inf" if math.isinf(p.waist) else f"{p.waist!r}um",
            "pump.phi": f"{math.degrees(p.phi)!r}deg",
            "pump.alpha": f"{p.alpha!r}",
            "grid.points": f"{cfg.grid.n_points}",
            "grid.span": f"{cfg.grid.span!r}rad/fs",
        }
        for arm, f in (("signal", cfg.filter_signal), ("idler", cfg.filter_idler)):
            echo[f"filter.{arm}"] = (f.shape.value if f.fwhm is None
                                     else f"{f.shape.value} {f.fwhm!r}um")
        return echo

    def write_manifest(self, command, cfg=None):
        manifest = {
            "tool": "tiltspdc",
            "version": __version__,
            "command": command,
            "scenario": dict(sorted(self.scenario.raw.items())),
            "scenario_hash": self.hash,
            "inputs": self.inputs(cfg) if cfg is not None else {},
            "results": self.results,
            "versions": {"python": platform.python_version(), "numpy": np.__version__,
                         "scipy": scipy.__version__},
            "seed": self.args.seed,
            "created": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        }
        path = self.out / "manifest.json"
        path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
        return path


def _grating_suggestions(phi, lambda_p):
    rows = []
    if phi == 0.0:
        return rows
    order = 1 if math.tan(phi) < 0 else -1
    for lines in SUGGESTED_GROOVES:
        try:
            g = grating_for_tilt(phi, lambda_p, lines * 1e-3, order)
        except GratingError:
            continue
        rows.append({"lines_per_mm": lines, "order": order,
                     "theta0_deg": math.degrees(g.theta0), "beta0_deg": math.degrees(g.beta0)})
    return rows


def cmd_tilt_solve(run):
    sc = run.scenario
    crystal = sc.crystal()
    lambda_p = sc.quantity("pump.wavelength", "length")
    L = sc.quantity("length", "length")
    waves = degenerate_type_ii(crystal, lambda_p)
    solved = {
        "anticorrelation": solve_tilt_anticorrelation(waves.signal, waves.idler),
        "correlation": solve_tilt_correlation(waves.pump, waves.signal, waves.idler),
    }
    phi, alpha = sc.resolve_tilt(crystal, lambda_p)
    lines = [f"# tilt-solve  scenario {run.hash}",
             f"crystal {crystal.name}  L = {L:g} um  lambda_p = {lambda_p:g} um",
             f"phase-matching angle theta_pm = {math.degrees(waves.theta_pm):.6f} deg", ""]
    tilts = {}
    for name, angle in list(solved.items()) + [("scenario", phi)]:
        eff = [effective_wave(w, angle) for w in (waves.pump, waves.signal, waves.idler)]
        ep, es, ei = eff
        tilts[name] = {
            "phi_deg": math.degrees(angle),
            "u_fs_per_um": {"p": ep.u, "s": es.u, "i": ei.u},
            "g_fs2_per_um": {"p": ep.g, "s": es.g, "i": ei.g},
            "residual_anticorrelation_fs_per_um": es.u - ei.u,
            "residual_correlation_fs_per_um": ep.u - 0.5 * (es.u + ei.u),
            "gratings": _grating_suggestions(angle, lambda_p),
        }
        lines.append(f"[{name}] phi = {math.degrees(angle):+.4f} deg")
        lines.append(f"  {'wave':<6}{'u [fs/um]':>16}{'g [fs^2/um]':>16}")
        for label, e in zip("psi", eff):
            lines.append(f"  {label:<6}{e.u:16.9f}{e.g:16.9f}")
        lines.append(f"  residual u_s - u_i           = {es.u - ei.u:+.3e} fs/um")
        lines.append(f"  residual u_p - (u_s + u_i)/2 = {ep.u - 0.5 * (es.u + ei.u):+.3e} fs/um")
        for g in tilts[name]["gratings"]:
            lines.append(f"  grating {g['lines_per_mm']:>5} lines/mm  m={g['order']:+d}  "
                         f"theta0={g['theta0_deg']:+.3f} deg  beta0={g['beta0_deg']:+.3f} deg")
        lines.append("")
    run.results = {
        "theta_pm_deg": math.degrees(waves.theta_pm),
        "directive": sc.tilt_directive,
        "phi_deg": math.degrees(phi),
        "alpha": alpha,
        "tilts": tilts,
        "waves": {k: {"N": w.N, "D": w.D, "rho_deg": math.degrees(w.rho), "k": w.k, "n": w.n}
                  for k, w in zip(("p", "s", "i"), waves[1:])},
        "c_um_per_fs": C_UM_PER_FS,
    }
    report = "\n".join(lines)
    (run.out / "tilt.txt").write_text(report + "\n")
    print(report)
    run.write_manifest("tilt-solve")
    return run.results


def cmd_jsi(run):
    cfg = run.config()
    js = build_jsa(cfg)
    write_jsi(run.out, js, run.hash, run.args.format)
    spectra = diagonal_spectra(js)
    write_columns(run.out / "diagonals.txt", [spectra.omega, spectra.plus, spectra.minus],
                  ["omega[rad/fs]", "S_plus", "S_minus"], run.header())
    run.results = {
        "pearson_r": pearson_correlation(js),
        "schmidt_K": schmidt_number(js),
        "fwhm_S_plus_rad_per_fs": fwhm(spectra.omega, spectra.plus),
        "fwhm_S_minus_rad_per_fs": fwhm(spectra.omega, spectra.minus),
        "theta_pm_deg": math.degrees(js.meta["theta_pm"]),
        "norm": js.norm(),
    }
    run.write_manifest("jsi", cfg)
    return run.results


def cmd_hom(run):
    cfg = run.config()
    js = build_jsa(cfg)
    trace = coincidence_trace(js, run.scenario.hom_window(), run.scenario.hom_points())
    waves = degenerate_type_ii(cfg.crystal, cfg.pump.lambda_p)
    es, ei = (effective_wave(w, cfg.pump.phi) for w in (waves.signal, waves.idler))
    predicted = (es.u - ei.u) * cfg.length / 2.0
    header = run.header(visibility=repr(trace.visibility), dip_center_fs=repr(trace.dip_center))
    write_columns(run.out / "hom.txt", [trace.delays, trace.rate], ["tau[fs]", "R"], header)
    run.results = {
        "visibility": trace.visibility,
        "dip_center_fs": trace.dip_center,
        "dip_center_predicted_fs": predicted,
        "triangular": trace.triangular,
        "triangle_residual": trace.triangle_residual,
        "R_min": float(trace.rate.min()),
        "window_fs": [float(trace.delays[0]), float(trace.delays[-1])],
    }
    run.write_manifest("hom", cfg)
    return run.results


def cmd_cw_spectrum(run):
    if not run.scenario.cw:
        raise ValidationError("cw-spectrum needs a CW pump (pump.fwhm = cw)")
    cfg = run.config()
    js = build_jsa(cfg)
    om = js.omega
    numeric = marginal_signal(js)
    numeric = numeric / numeric.max()
    waves = degenerate_type_ii(cfg.crystal, cfg.pump.lambda_p)
    results = {"fwhm_numeric_rad_per_fs": fwhm(om, numeric)}
    try:
        analytic = cw_signal_spectrum_analytic(waves.signal, waves.idler, cfg.length,
                                               cfg.pump.phi, om)
        results["fwhm_analytic_rad_per_fs"] = fwhm(om, analytic)
        results["analytic_branch"] = "untilted" if cfg.pump.phi == 0 else "anticorrelation"
    except UnsupportedBranchError as exc:
        analytic = np.full_like(om, np.nan)
        results["fwhm_analytic_rad_per_fs"] = None
        results["analytic_branch"] = None
        results["analytic_note"] = str(exc)
    header = run.header(fwhm_numeric=repr(results["fwhm_numeric_rad_per_fs"]),
                        fwhm_analytic=repr(results["fwhm_analytic_rad_per_fs"]))
    write_columns(run.out / "cw_spectrum.txt", [om, numeric, analytic],
                  ["omega_s[rad/fs]", "S_numeric", "S_analytic"], header)
    run.results = results
    run.write_manifest("cw-spectrum", cfg)
    return results


def cmd_polarization(run):
    cfg = run.config()
    sc = run.scenario
    thetas = ([math.radians(t) for t in run.args.theta_a] if run.args.theta_a
              else sc.theta_a())
    eps = sc.forced_epsilon()
    if eps is None:
        eps = epsilon_from_jsa(build_jsa(cfg))
    model = PolarizationMixModel(eps, sc.delta())
    columns, names, curves = [], ["theta_b[deg]"], []
    theta_b = None
    for ta in thetas:
        theta_b, rate = sweep(model, ta)
        columns.append(rate)
        names.append(f"R(theta_a={math.degrees(ta):g}deg)")
        curves.append({"theta_a_deg": math.degrees(ta), "visibility": curve_visibility(model, ta)})
    header = run.header(epsilon=repr(model.epsilon), delta_rad=repr(model.delta),
                        purity=repr(purity(model)))
    write_columns(run.out / "polarization.txt", [np.degrees(theta_b)] + columns, names, header)
    run.results = {"epsilon": model.epsilon, "delta_rad": model.delta,
                   "purity": purity(model), "curves": curves,
                   "epsilon_forced": sc.forced_epsilon() is not None}
    run.write_manifest("polarization", cfg)
    return run.results


COMMANDS = {
    "tilt-solve": cmd_tilt_solve,
    "jsi": cmd_jsi,
    "hom": cmd_hom,
    "cw-spectrum": cmd_cw_spectrum,
    "polarization": cmd_polarization,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="tiltspdc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--scenario", required=True, help="scenario file or run manifest")
        p.add_argument("--out", help="output directory (overrides the scenario)")
        p.add_argument("--grid-points", type=int, help="override grid.points")
        p.add_argument("--seed", type=int, default=None, help="reserved; recorded only")
        p.add_argument("--format", choices=("text", "binary"), default="text")
        if name == "polarization":
            p.add_argument("--theta-a", type=float, nargs="+", help="polarizer a angles, deg")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    try:
        run = Run(args)
        COMMANDS[args.command](run)
    except TiltSpdcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
