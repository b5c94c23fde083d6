"""Signal bandwidth under a CW pump versus crystal length, with and without the
anticorrelation tilt (numerical marginal against the closed forms)."""
import argparse
from dataclasses import replace
from pathlib import Path

import numpy as np

from tiltspdc.biphoton import build_jsa, cw_signal_spectrum_analytic, marginal_signal
from tiltspdc.dispersion import degenerate_type_ii
from tiltspdc.numerics import fwhm
from tiltspdc.scenario import ScenarioFile

ROOT = Path(__file__).resolve().parents[1]


def widths(cfg):
    js = build_jsa(cfg)
    om = js.omega
    num = marginal_signal(js)
    w = degenerate_type_ii(cfg.crystal, cfg.pump.lambda_p)
    ana = cw_signal_spectrum_analytic(w.signal, w.idler, cfg.length, cfg.pump.phi, om)
    return fwhm(om, num / num.max()), fwhm(om, ana)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lengths", type=float, nargs="+", default=[1000, 2000, 4000], help="um")
    args = ap.parse_args()
    flat = ScenarioFile.from_path(ROOT / "scenarios" / "cw_no_tilt.scn").to_config()
    tilted = ScenarioFile.from_path(ROOT / "scenarios" / "cw_anticorrelation.scn").to_config()
    print(f"{'L[um]':>8}{'untilted num':>14}{'analytic':>12}{'tilted num':>12}{'analytic':>12}"
          f"{'ratio':>8}")
    for L in args.lengths:
        # keep both features resolved when L changes
        f0 = replace(flat, length=L, grid=replace(flat.grid, span=flat.grid.span * 2000 / L))
        f1 = replace(tilted, length=L,
                     grid=replace(tilted.grid, span=tilted.grid.span * np.sqrt(2000 / L)))
        a, b = widths(f0)
        c, d = widths(f1)
        print(f"{L:8.0f}{a:14.5f}{b:12.5f}{c:12.5f}{d:12.5f}{c / a:8.2f}")


if __name__ == "__main__":
    main()
