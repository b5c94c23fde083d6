"""Pearson correlation and Schmidt number of the JSI versus pump tilt angle."""
import argparse
import math
from dataclasses import replace
from pathlib import Path

import numpy as np

from tiltspdc.biphoton import FilterSpec, build_jsa, pearson_correlation, schmidt_number
from tiltspdc.scenario import ScenarioFile

ROOT = Path(__file__).resolve().parents[1]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--phi", type=float, nargs="+", default=list(range(-60, 61, 10)), help="deg")
    ap.add_argument("--no-filters", action="store_true")
    ap.add_argument("--span", type=float, default=None, help="rad/fs")
    args = ap.parse_args()
    cfg = ScenarioFile.from_path(ROOT / "scenarios" / "no_tilt.scn").to_config()
    if args.no_filters:
        cfg = replace(cfg, filter_signal=FilterSpec(), filter_idler=FilterSpec())
    if args.span:
        cfg = replace(cfg, grid=replace(cfg.grid, span=args.span))
    print(f"{'phi[deg]':>9}{'r':>9}{'K':>8}")
    for phi in args.phi:
        js = build_jsa(replace(cfg, pump=replace(cfg.pump, phi=math.radians(phi))))
        print(f"{phi:9.1f}{pearson_correlation(js):9.3f}{schmidt_number(js):8.3f}")


if __name__ == "__main__":
    main()
