"""Pulse-front tilt from a grating and the tilt-modified group velocities.

Sign convention: ordinary waves carry rho = 0 and extraordinary waves rho > 0
in the tilt plane. With this orientation the tilt that equalizes the signal
and idler group velocities of BBO comes out negative and the correlation tilt
positive; only their magnitudes are convention independent. A first-order
(m = +1) grating produces the former, m = -1 the latter.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .dispersion import WaveParameters
from .errors import DegenerateTiltError, GratingError, NumericalGuardError, ValidationError
from .units import C_UM_PER_FS

RESIDUAL_TOL = 1e-9  # fs/um


@dataclass(frozen=True)
class GratingSpec:
    """Groove density in lines/um (1.2 for a 1200 lines/mm grating)."""

    groove_density: float
    order: int
    theta0: float
    beta0: float | None = None

    def __post_init__(self):
        if self.groove_density <= 0:
            raise ValidationError("groove density must be positive")

    @property
    def spacing(self):
        return 1.0 / self.groove_density


@dataclass(frozen=True)
class TiltedPumpConfig:
    """Pump central wavelength, wavelength FWHM (None for CW), 1/e^2 waist,
    pulse-front tilt and beam magnification.

    waist = inf disables the transverse pump envelope.
    """

    lambda_p: float
    bandwidth_fwhm: float | None
    waist: float = math.inf
    phi: float = 0.0
    alpha: float = 1.0

    def __post_init__(self):
        if not -math.pi / 2 < self.phi < math.pi / 2:
            raise ValidationError(f"tilt angle {self.phi} rad outside (-pi/2, pi/2)")
        if not self.waist > 0:
            raise ValidationError("pump waist must be positive")
        if self.bandwidth_fwhm is not None and not self.bandwidth_fwhm > 0:
            raise ValidationError("pump bandwidth must be positive (or None for CW)")
        if not self.lambda_p > 0:
            raise ValidationError("pump wavelength must be positive")

    @property
    def cw(self):
        return self.bandwidth_fwhm is None


@dataclass(frozen=True)
class EffectiveWave:
    base: WaveParameters
    phi: float
    u: float = field(init=False)
    g: float = field(init=False)

    def __post_init__(self):
        t = math.tan(self.phi) / C_UM_PER_FS
        object.__setattr__(self, "u", self.base.N - math.tan(self.base.rho) * t)
        object.__setattr__(self, "g", self.base.D - t * t / self.base.k)


def diffraction_angle(grating, lam):
    """beta0 from sin(theta0) + sin(beta0) = m lam / d."""
    s = grating.order * lam / grating.spacing - math.sin(grating.theta0)
    if abs(s) > 1.0:
        raise GratingError(
            f"order m={grating.order} is evanescent at {lam} um "
            f"(m lambda/d - sin theta0 = {s:.4g})")
    return math.asin(s)


def _beta0(grating, lam):
    return grating.beta0 if grating.beta0 is not None else diffraction_angle(grating, lam)


def angular_dispersion(grating, lam=None):
    """epsilon = m / (d cos beta0), in rad/um; sign carried by m."""
    if grating.order == 0:
        return 0.0
    if grating.beta0 is None and lam is None:
        raise ValidationError("need beta0 or a wavelength to derive it")
    beta0 = _beta0(grating, lam)
    cb = math.cos(beta0)
    if abs(cb) < 1e-12:
        raise GratingError("grazing diffraction (beta0 = +-pi/2): angular dispersion diverges")
    return grating.order / (grating.spacing * cb)


def tilt_from_grating(grating, lambda_p):
    """(phi, alpha) with tan(phi) = -lambda_p * epsilon and alpha = -cos(theta0)/cos(beta0)."""
    beta0 = _beta0(grating, lambda_p)
    eps = angular_dispersion(GratingSpec(grating.groove_density, grating.order,
                                         grating.theta0, beta0))
    phi = math.atan(-lambda_p * eps)
    alpha = -math.cos(grating.theta0) / math.cos(beta0)
    return phi, alpha


def littrow_grating(groove_density, order, lam):
    """Grating used in Littrow (theta0 = beta0)."""
    s = order * lam / (2.0 / groove_density)
    if abs(s) > 1.0:
        raise GratingError(f"no Littrow angle for m={order} at {lam} um")
    b = math.asin(s)
    return GratingSpec(groove_density, order, b, b)


def grating_for_tilt(phi, lambda_p, groove_density, order):
    """Incidence/diffraction angles that give tilt ``phi`` with this grating.

    Of the two diffraction angles with the required |cos beta0|, the one with
    the smaller |theta0| is returned.
    """
    if order == 0:
        if phi != 0.0:
            raise GratingError("zeroth order produces no tilt")
        return GratingSpec(groove_density, 0, 0.0, 0.0)
    eps = -math.tan(phi) / lambda_p
    if eps == 0.0 or (eps > 0) != (order > 0):
        raise GratingError(
            f"tilt {math.degrees(phi):.3f} deg needs an order of the opposite sign to m={order}")
    cb = order * groove_density / eps
    if not 0.0 < cb <= 1.0:
        raise GratingError(
            f"{groove_density * 1e3:g} lines/mm in order {order} cannot reach "
            f"|phi| = {abs(math.degrees(phi)):.3f} deg (angular dispersion too small)")
    b = math.acos(cb)
    best = None
    for beta0 in (b, -b):
        s = order * lambda_p * groove_density - math.sin(beta0)
        if abs(s) <= 1.0:
            theta0 = math.asin(s)
            if best is None or abs(theta0) < abs(best.theta0):
                best = GratingSpec(groove_density, order, theta0, beta0)
    if best is None:
        raise GratingError("no real incidence angle realizes this tilt")
    return best


def effective_wave(base, phi):
    if not abs(phi) < math.pi / 2:
        raise ValidationError("|phi| must be below pi/2")
    return EffectiveWave(base, phi)


def _check_residual(r):
    if not abs(r) < RESIDUAL_TOL:
        raise NumericalGuardError(f"tilt solution residual {r:.3g} fs/um exceeds {RESIDUAL_TOL}")


def solve_tilt_anticorrelation(signal, idler):
    """Tilt with u_s = u_i, i.e. tan(phi) = c (N_i - N_s) / (tan rho_i - tan rho_s)."""
    if signal.N == idler.N:
        return 0.0
    den = math.tan(idler.rho) - math.tan(signal.rho)
    if den == 0.0:
        raise DegenerateTiltError(
            "no tilt can equalize group velocities: signal and idler share the same "
            "walk-off but differ in N")
    phi = math.atan(C_UM_PER_FS * (idler.N - signal.N) / den)
    _check_residual(effective_wave(signal, phi).u - effective_wave(idler, phi).u)
    return phi


def solve_tilt_correlation(pump, signal, idler):
    """Tilt with u_p = (u_s + u_i)/2."""
    num = signal.N + idler.N - 2.0 * pump.N
    if num == 0.0:
        return 0.0
    den = math.tan(signal.rho) + math.tan(idler.rho) - 2.0 * math.tan(pump.rho)
    if den == 0.0:
        raise DegenerateTiltError(
            "no tilt can achieve correlation condition: "
            "tan rho_s + tan rho_i - 2 tan rho_p vanishes")
    phi = math.atan(C_UM_PER_FS * num / den)
    ep, es, ei = (effective_wave(w, phi) for w in (pump, signal, idler))
    _check_residual(d_plus(ep, es, ei))
    return phi


def d_plus(pump, signal, idler):
    if not pump.phi == signal.phi == idler.phi:
        raise ValidationError("effective waves must share one tilt angle")
    return pump.u - 0.5 * (signal.u + idler.u)
