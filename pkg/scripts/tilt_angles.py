"""Tilt angles for u_s = u_i and u_p = (u_s + u_i)/2 in BBO across pump wavelengths and
Sellmeier sets."""
import argparse
import math

import numpy as np

from tiltspdc.dispersion import degenerate_type_ii, load_crystals
from tiltspdc.errors import PhysicsDomainError
from tiltspdc.tilt import solve_tilt_anticorrelation, solve_tilt_correlation


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lambda-min", type=float, default=0.38, help="um")
    ap.add_argument("--lambda-max", type=float, default=0.45, help="um")
    ap.add_argument("--n", type=int, default=8)
    args = ap.parse_args()

    crystals = load_crystals()
    print(f"{'crystal':<18}{'lambda_p[um]':>13}{'theta_pm':>11}{'phi_anti':>11}{'phi_corr':>11}")
    for name, crystal in crystals.items():
        for lam in np.linspace(args.lambda_min, args.lambda_max, args.n):
            try:
                w = degenerate_type_ii(crystal, lam)
            except PhysicsDomainError as exc:
                print(f"{name:<18}{lam:13.4f}  {exc}")
                continue
            anti = solve_tilt_anticorrelation(w.signal, w.idler)
            corr = solve_tilt_correlation(w.pump, w.signal, w.idler)
            print(f"{name:<18}{lam:13.4f}{math.degrees(w.theta_pm):11.3f}"
                  f"{math.degrees(anti):11.3f}{math.degrees(corr):11.3f}")


if __name__ == "__main__":
    main()
