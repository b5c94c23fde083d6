"""Joint spectral amplitude of collinear type-II SPDC with a tilted pump.

The amplitude is sampled on a square grid of signal/idler detunings and
projected onto p = q = 0. Each wave's longitudinal wavenumber, for a
transverse wavevector kappa tied to its detuning by kappa = Omega tan(phi)/c,
is

    k_z(Omega, kappa) = k(omega0 + Omega) - tan(rho) kappa - kappa^2 / (2 k0)

with k(omega0 + Omega) from the full Sellmeier curve. Expanding to second
order in Omega reproduces the tilt-modified u and g of :mod:`tiltspdc.tilt`.
"""
from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .dispersion import CrystalModel, degenerate_type_ii, wavenumber
from .errors import (GridResolutionError, UndefinedCorrelationError,
                     UnsupportedBranchError, ValidationError)
from .numerics import sinc, symmetric_axis
from .tilt import TiltedPumpConfig, effective_wave, solve_tilt_anticorrelation
from .units import C_UM_PER_FS, bandwidth_to_omega, omega_from_wavelength

# CW pump proxy: Gaussian of this many grid spacings FWHM along Omega_s + Omega_i.
# A single spacing keeps the sum-frequency diagonals at +-1 spacing at 6% weight
# and everything beyond below 1e-4, i.e. the numerical limit of a delta line.
CW_PROXY_SPACINGS = 1.0
MIN_SAMPLES_PER_FEATURE = 8
SINC2_HALF_MAX = 1.3915573782515103  # sinc(x)^2 = 1/2


class FilterShape(enum.Enum):
    GAUSSIAN = "gaussian"
    RECTANGULAR = "rectangular"
    NONE = "none"


@dataclass(frozen=True)
class FilterSpec:
    """Interference filter, FWHM of the *intensity* transmission in wavelength.

    It multiplies the amplitude by the square root of that transmission.
    A center of None means the degenerate wavelength 2 lambda_p.
    """

    shape: FilterShape = FilterShape.NONE
    fwhm: float | None = None
    center: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "shape", FilterShape(self.shape))
        if self.shape is not FilterShape.NONE and not (self.fwhm and self.fwhm > 0):
            raise ValidationError("filter FWHM must be positive")

    def omega_fwhm(self, lam_center):
        return bandwidth_to_omega(self.center or lam_center, self.fwhm)

    def amplitude(self, detuning, omega_axis_center, lam_default):
        """Amplitude transmission at detunings from ``omega_axis_center``."""
        detuning = np.asarray(detuning, dtype=float)
        if self.shape is FilterShape.NONE:
            return np.ones_like(detuning)
        lam_c = self.center or lam_default
        offset = omega_from_wavelength(lam_c) - omega_axis_center
        width = self.omega_fwhm(lam_default)
        x = detuning - offset
        if self.shape is FilterShape.GAUSSIAN:
            return np.exp(-2.0 * math.log(2.0) * x**2 / width**2)
        return (np.abs(x) <= 0.5 * width).astype(float)


@dataclass(frozen=True)
class FrequencyGrid:
    """Square detuning grid; ``span`` is the half-width in rad/fs.

    ``centers`` are the central signal/idler angular frequencies; None means
    degenerate (omega_p / 2 each) and is resolved by :func:`build_jsa`.
    """

    n_points: int = 512
    span: float = 0.15
    centers: tuple[float, float] | None = None

    def __post_init__(self):
        if self.n_points < 64:
            raise ValidationError("grid needs at least 64 points per axis")
        if not self.span > 0:
            raise ValidationError("grid span must be positive")

    @property
    def omega(self):
        return symmetric_axis(self.n_points, self.span)

    @property
    def spacing(self):
        return 2.0 * self.span / (self.n_points - 1)


@dataclass(frozen=True)
class ScenarioConfig:
    crystal: CrystalModel
    length: float
    pump: TiltedPumpConfig
    filter_signal: FilterSpec = FilterSpec()
    filter_idler: FilterSpec = FilterSpec()
    grid: FrequencyGrid = FrequencyGrid()

    def __post_init__(self):
        if not self.length > 0:
            raise ValidationError("crystal length must be positive")


@dataclass
class JointSpectrum:
    grid: FrequencyGrid
    amplitude: np.ndarray
    normalized: bool = False
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not np.all(np.isfinite(self.amplitude)):
            raise ValidationError("joint spectral amplitude contains non-finite values")

    @property
    def omega(self):
        return self.grid.omega

    @property
    def spacing(self):
        return self.grid.spacing

    def norm(self):
        return float(np.sum(np.abs(self.amplitude) ** 2) * self.spacing**2)

    def normalize(self):
        total = self.norm()
        if total == 0.0:
            raise ValidationError("joint spectral amplitude vanishes on the grid")
        return JointSpectrum(self.grid, self.amplitude / math.sqrt(total), True, dict(self.meta))


class DiagonalSpectra(NamedTuple):
    omega: np.ndarray
    plus: np.ndarray
    minus: np.ndarray


def _kz(crystal, wave, detuning, t):
    kappa = detuning * t
    return (wavenumber(crystal, wave.geometry, wave.omega0 + detuning)
            - math.tan(wave.rho) * kappa - kappa**2 / (2.0 * wave.k))


def feature_widths(config, waves=None):
    """Estimated FWHMs (rad/fs) of the features a grid must resolve."""
    if waves is None:
        waves = degenerate_type_ii(config.crystal, config.pump.lambda_p)
    phi = config.pump.phi
    ep, es, ei = (effective_wave(w, phi) for w in (waves.pump, waves.signal, waves.idler))
    L = config.length
    if config.pump.cw:
        # the state lives on Omega_i = -Omega_s; only that cut must be resolved
        pairs = [(es.u - ei.u, (es.g + ei.g) / 2.0)]
    else:
        pairs = [(ep.u - e.u, (ep.g - e.g) / 2.0) for e in (es, ei)]
    pm = math.inf
    for a, q in pairs:
        # sinc^2(x) halves at x = SINC2_HALF_MAX, with x = (a Omega + q Omega^2) L / 2
        if a != 0:
            pm = min(pm, 4.0 * SINC2_HALF_MAX / (abs(a) * L))
        if q != 0:
            pm = min(pm, 2.0 * math.sqrt(2.0 * SINC2_HALF_MAX / (abs(q) * L)))
    widths = {"phase_matching": pm}
    if not config.pump.cw:
        widths["pump"] = bandwidth_to_omega(config.pump.lambda_p, config.pump.bandwidth_fwhm)
    lam_s = 2.0 * config.pump.lambda_p
    for arm, f in (("filter_signal", config.filter_signal), ("filter_idler", config.filter_idler)):
        if f.shape is not FilterShape.NONE:
            widths[arm] = f.omega_fwhm(lam_s)
    return widths


def check_resolution(config, waves=None):
    widths = feature_widths(config, waves)
    d = config.grid.spacing
    narrow = min(widths, key=widths.get)
    if widths[narrow] / d < MIN_SAMPLES_PER_FEATURE:
        report = ", ".join(f"{k}={v:.4g} rad/fs" for k, v in widths.items())
        raise GridResolutionError(
            f"grid spacing {d:.4g} rad/fs under-resolves '{narrow}' "
            f"(need >= {MIN_SAMPLES_PER_FEATURE} samples per FWHM; widths: {report})")
    return widths


def build_jsa(config, include_phase=True, check_grid=True):
    """Sample Psi(Omega_s, Omega_i) for a scenario and L2-normalize it."""
    pump = config.pump
    waves = degenerate_type_ii(config.crystal, pump.lambda_p)
    if check_grid:
        check_resolution(config, waves)
    grid = config.grid
    ws0, wi0 = grid.centers or (waves.signal.omega0, waves.idler.omega0)
    if grid.centers is None:
        grid = FrequencyGrid(grid.n_points, grid.span, (ws0, wi0))
    sig = dataclasses.replace(waves.signal, omega0=ws0)
    idl = dataclasses.replace(waves.idler, omega0=wi0)
    wp0 = waves.pump.omega0

    om = grid.omega
    t = math.tan(pump.phi) / C_UM_PER_FS
    os_, oi_ = om[:, None], om[None, :]
    # pump detuning from its own carrier
    op = (ws0 + wi0 - wp0) + os_ + oi_
    kp = _kz(config.crystal, waves.pump, op, t)
    ks = _kz(config.crystal, sig, om, t)[:, None]
    ki = _kz(config.crystal, idl, om, t)[None, :]
    dk = kp - ks - ki

    if pump.cw:
        pump_width = CW_PROXY_SPACINGS * grid.spacing
    else:
        pump_width = bandwidth_to_omega(pump.lambda_p, pump.bandwidth_fwhm)
    envelope = np.exp(-2.0 * math.log(2.0) * op**2 / pump_width**2)
    if math.isfinite(pump.waist):
        kappa_p = op * t
        envelope = envelope * np.exp(-((kappa_p * pump.waist / 2.0) ** 2))

    psi = envelope * sinc(dk * config.length / 2.0)
    if include_phase:
        sk = kp + ks + ki
        s0 = waves.pump.k + waves.signal.k + waves.idler.k
        psi = psi * np.exp(0.5j * (sk - s0) * config.length)
    else:
        psi = psi.astype(complex)
    lam_s = 2.0 * pump.lambda_p
    fs = config.filter_signal.amplitude(om, ws0, lam_s)
    fi = config.filter_idler.amplitude(om, wi0, lam_s)
    psi = psi * fs[:, None] * fi[None, :]

    meta = {
        "theta_pm": waves.theta_pm,
        "phi": pump.phi,
        "cw": pump.cw,
        "pump_width": pump_width,
        "filter_signal": config.filter_signal.shape.value,
        "filter_idler": config.filter_idler.shape.value,
        "length": config.length,
    }
    return JointSpectrum(grid, psi, False, meta).normalize()


def marginal_signal(js):
    return np.sum(np.abs(js.amplitude) ** 2, axis=1) * js.spacing


def marginal_idler(js):
    return np.sum(np.abs(js.amplitude) ** 2, axis=0) * js.spacing


def _diagonal_sums(values, n):
    j, k = np.indices((n, n))
    plus = np.bincount((j + k).ravel(), values.ravel(), minlength=2 * n - 1)
    minus = np.bincount((j - k).ravel() + n - 1, values.ravel(), minlength=2 * n - 1)
    return plus, minus


def diagonal_spectra(js):
    """S+ and S- along Omega_s +- Omega_i, each with unit integral.

    Both share one axis: diagonal m of the grid sits at m * spacing.
    """
    n = js.grid.n_points
    plus, minus = _diagonal_sums(np.abs(js.amplitude) ** 2, n)
    d = js.spacing
    axis = (np.arange(2 * n - 1) - (n - 1)) * d
    return DiagonalSpectra(axis, plus * d, minus * d)


def pearson_correlation(js):
    p = np.abs(js.amplitude) ** 2
    p = p / p.sum()
    om = js.omega
    ps, pi = p.sum(axis=1), p.sum(axis=0)
    ms, mi = ps @ om, pi @ om
    vs = ps @ (om - ms) ** 2
    vi = pi @ (om - mi) ** 2
    if vs <= 0 or vi <= 0:
        raise UndefinedCorrelationError("joint spectral intensity has zero variance")
    cov = (om - ms) @ p @ (om - mi)
    return float(cov / math.sqrt(vs * vi))


def schmidt_number(js):
    """K = 1 / sum(lambda_j^2) from the singular values of the amplitude."""
    s = np.linalg.svd(js.amplitude, compute_uv=False)
    lam = s**2 / np.sum(s**2)
    return float(1.0 / np.sum(lam**2))


def cw_signal_spectrum_analytic(signal, idler, length, phi, omega, tol=1e-9):
    """Closed-form CW signal spectrum, peak-normalized.

    Untilted: sinc^2[(N_s - N_i) Omega L / 2]. At the tilt equalizing the
    signal/idler group velocities the linear term vanishes and the spectrum is
    sinc^2[(g_s + g_i) Omega^2 L / 4].
    """
    omega = np.asarray(omega, dtype=float)
    if abs(phi) <= tol:
        return sinc((signal.N - idler.N) * omega * length / 2.0) ** 2
    phi_a = solve_tilt_anticorrelation(signal, idler)
    if abs(phi - phi_a) <= tol:
        gs = effective_wave(signal, phi).g
        gi = effective_wave(idler, phi).g
        return sinc((gs + gi) * omega**2 * length / 4.0) ** 2
    raise UnsupportedBranchError(
        f"no closed-form CW spectrum at phi={math.degrees(phi):.4f} deg; only phi=0 and the "
        f"anticorrelation tilt ({math.degrees(phi_a):.4f} deg) have one. Use build_jsa.")


def _pm_filter_intensity(filter_omega_fwhm, omega):
    # Equal Gaussian filters on both arms factorize in Omega_+ and Omega_-,
    # each direction seeing an intensity FWHM of sqrt(2) times the per-arm one.
    if filter_omega_fwhm is None:
        return np.ones_like(omega)
    return np.exp(-2.0 * math.log(2.0) * omega**2 / filter_omega_fwhm**2)


def anticorrelation_diagonals(pump, signal, idler, length, pump_omega_fwhm, omega,
                              filter_omega_fwhm=None):
    """Closed-form S+ and S- at the group-velocity-matching tilt (peak 1).

    ``pump``, ``signal``, ``idler`` are :class:`EffectiveWave` at that tilt.
    """
    omega = np.asarray(omega, dtype=float)
    dp = pump.u - 0.5 * (signal.u + idler.u)
    f = _pm_filter_intensity(filter_omega_fwhm, omega)
    ep2 = np.exp(-4.0 * math.log(2.0) * omega**2 / pump_omega_fwhm**2)
    s_plus = ep2 * sinc(dp * length * omega / 2.0) ** 2 * f
    s_minus = sinc((signal.g + idler.g) * length * omega**2 / 16.0) ** 2 * f
    return s_plus / s_plus.max(), s_minus / s_minus.max()


def correlation_diagonals(pump, signal, idler, length, pump_omega_fwhm, omega,
                          filter_omega_fwhm=None):
    """Closed-form S+ and S- at the frequency-correlation tilt (peak 1)."""
    omega = np.asarray(omega, dtype=float)
    f = _pm_filter_intensity(filter_omega_fwhm, omega)
    s_plus = np.exp(-4.0 * math.log(2.0) * omega**2 / pump_omega_fwhm**2) * f
    s_minus = sinc((signal.u - idler.u) * length * omega / 4.0) ** 2 * f
    return s_plus / s_plus.max(), s_minus / s_minus.max()
