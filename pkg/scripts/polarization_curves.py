"""Coincidences versus the second polarizer angle for the three pump configurations."""
import argparse
import math
from pathlib import Path

import numpy as np

from tiltspdc.biphoton import build_jsa
from tiltspdc.export import write_columns
from tiltspdc.polarization import (PolarizationMixModel, curve_visibility, epsilon_from_jsa,
                                   purity, sweep)
from tiltspdc.scenario import ScenarioFile

ROOT = Path(__file__).resolve().parents[1]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out/polarization")
    ap.add_argument("--theta-a", type=float, nargs="+", default=[-45.0, -30.0], help="deg")
    ap.add_argument("--delta", type=float, default=0.0, help="relative phase, deg")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    for name in ("no_tilt", "anticorrelation", "correlation"):
        sc = ScenarioFile.from_path(ROOT / "scenarios" / f"{name}.scn")
        eps = epsilon_from_jsa(build_jsa(sc.to_config()))
        model = PolarizationMixModel(eps, math.radians(args.delta))
        cols, names = [], ["theta_b[deg]"]
        vis = []
        for ta in args.theta_a:
            theta_b, rate = sweep(model, math.radians(ta))
            cols.append(rate)
            names.append(f"R({ta:g}deg)")
            vis.append(curve_visibility(model, math.radians(ta)))
        write_columns(out / f"{name}.txt", [np.degrees(theta_b)] + cols, names,
                      {"epsilon": repr(eps), "purity": repr(purity(model))})
        shown = "  ".join(f"V({ta:g})={v:.4f}" for ta, v in zip(args.theta_a, vis))
        print(f"{name:<18} eps={eps:.4f}  P={purity(model):.4f}  {shown}")


if __name__ == "__main__":
    main()
