"""Sellmeier dispersion of uniaxial crystals.

Refractive indices, wavenumbers, inverse group velocities, GVD, Poynting
walk-off and the collinear type-II (oee) phase-matching angle. Derivatives
with respect to frequency are analytic: the Sellmeier chain is differentiated
in wavelength and converted with the usual group-index relations.

Units: micrometers, femtoseconds, rad/fs.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq

from .errors import PhaseMatchingError, ValidationError, WavelengthRangeError
from .units import C_UM_PER_FS, omega_from_wavelength

# Supported dispersion formulas (lambda in micrometers):
#   "abcd":      n^2 = A + B / (lambda^2 - C) - D * lambda^2
#   "sellmeier": n^2 = 1 + sum_j B_j lambda^2 / (lambda^2 - C_j),
#                coefficients listed as [B1, C1, B2, C2, ...]
FORMULAS = ("abcd", "sellmeier")


class Polarization(enum.Enum):
    ORDINARY = "o"
    EXTRAORDINARY = "e"


class Axis(enum.Enum):
    ORDINARY = "o"
    EXTRAORDINARY_PRINCIPAL = "e"


@dataclass(frozen=True)
class SellmeierSet:
    formula: str
    coefficients: tuple[float, ...]

    def __post_init__(self):
        if self.formula not in FORMULAS:
            raise ValidationError(f"unknown dispersion formula {self.formula!r}")
        k = len(self.coefficients)
        if self.formula == "abcd" and k != 4:
            raise ValidationError("'abcd' formula takes 4 coefficients")
        if self.formula == "sellmeier" and (k == 0 or k % 2):
            raise ValidationError("'sellmeier' formula takes pairs [B, C, ...]")

    def _poles(self):
        """Rewrite as eps = A + sum_j P_j / (lam^2 - C_j) - D lam^2."""
        c = self.coefficients
        if self.formula == "abcd":
            return c[0], [(c[1], c[2])], c[3]
        pairs = list(zip(c[0::2], c[1::2]))
        return 1.0 + sum(b for b, _ in pairs), [(b * cj, cj) for b, cj in pairs], 0.0

    def permittivity(self, lam, order=0):
        """n^2 and its first two wavelength derivatives."""
        lam = np.asarray(lam, dtype=float)
        a, poles, d = self._poles()
        l2 = lam * lam
        if order == 0:
            out = a - d * l2
            for p, cj in poles:
                out = out + p / (l2 - cj)
            return out
        if order == 1:
            out = -2.0 * d * lam
            for p, cj in poles:
                out = out - 2.0 * p * lam / (l2 - cj) ** 2
            return out
        if order == 2:
            out = -2.0 * d + 0.0 * lam
            for p, cj in poles:
                q = l2 - cj
                out = out - 2.0 * p / q**2 + 8.0 * p * l2 / q**3
            return out
        raise ValueError("order must be 0, 1 or 2")


@dataclass(frozen=True)
class CrystalModel:
    name: str
    sellmeier_o: SellmeierSet
    sellmeier_e: SellmeierSet
    valid_range: tuple[float, float]
    note: str = ""

    def __post_init__(self):
        lo, hi = self.valid_range
        if not 0 < lo < hi:
            raise ValidationError(f"{self.name}: bad validity range {self.valid_range}")
        lam = np.linspace(lo, hi, 257)
        for label, s in (("o", self.sellmeier_o), ("e", self.sellmeier_e)):
            eps = s.permittivity(lam)
            if not np.all(np.isfinite(eps)) or np.any(eps <= 1.0):
                raise ValidationError(
                    f"{self.name}: {label}-axis index is not > 1 over {self.valid_range} um")

    @property
    def negative_uniaxial(self):
        lam = 0.5 * sum(self.valid_range)
        return bool(self.sellmeier_e.permittivity(lam) < self.sellmeier_o.permittivity(lam))

    def check_range(self, lam):
        lam = np.asarray(lam, dtype=float)
        lo, hi = self.valid_range
        if np.any(~np.isfinite(lam)) or np.any(lam < lo) or np.any(lam > hi):
            bad = lam[(lam < lo) | (lam > hi) | ~np.isfinite(lam)] if lam.ndim else lam
            raise WavelengthRangeError(
                f"wavelength {float(np.ravel(bad)[0]):.6g} um outside the {self.name} "
                f"validity range [{lo}, {hi}] um")


def crystal_from_record(rec):
    return CrystalModel(
        name=rec["name"],
        sellmeier_o=SellmeierSet(rec["formula"], tuple(float(x) for x in rec["o"])),
        sellmeier_e=SellmeierSet(rec["formula"], tuple(float(x) for x in rec["e"])),
        valid_range=tuple(float(x) for x in rec["valid_range_um"]),
        note=rec.get("note", ""),
    )


def load_crystals(path=None):
    """Read a crystal data file; defaults to the bundled one."""
    if path is None:
        text = resources.files("tiltspdc").joinpath("data/crystals.json").read_text()
    else:
        text = Path(path).read_text()
    data = json.loads(text)
    crystals = {}
    for rec in data["crystals"]:
        if rec["name"] in crystals:
            raise ValidationError(f"duplicate crystal name {rec['name']!r}")
        crystals[rec["name"]] = crystal_from_record(rec)
    return crystals


def get_crystal(name, path=None):
    crystals = load_crystals(path)
    try:
        return crystals[name]
    except KeyError:
        raise ValidationError(
            f"unknown crystal {name!r}; available: {sorted(crystals)}") from None


@dataclass(frozen=True)
class PropagationGeometry:
    theta_pm: float
    polarization: Polarization

    def __post_init__(self):
        if not 0.0 <= self.theta_pm <= math.pi / 2:
            raise ValidationError(f"theta_pm={self.theta_pm} outside [0, pi/2]")


@dataclass(frozen=True)
class WaveParameters:
    """Dispersion bundle of one wave at its central frequency.

    N is dk/domega (fs/um), D is d2k/domega2 (fs^2/um), rho the Poynting
    walk-off angle (0 for ordinary waves).
    """

    lambda0: float
    omega0: float
    n: float
    k: float
    N: float
    D: float
    rho: float
    geometry: PropagationGeometry | None = None


def refractive_index(crystal, axis, lam):
    crystal.check_range(lam)
    s = crystal.sellmeier_o if Axis(axis) is Axis.ORDINARY else crystal.sellmeier_e
    return np.sqrt(s.permittivity(lam))


def _index_derivatives(crystal, geom, lam):
    """n, dn/dlam, d2n/dlam2 for the given geometry."""
    crystal.check_range(lam)
    so = crystal.sellmeier_o
    eo, eo1, eo2 = (so.permittivity(lam, k) for k in range(3))
    if geom.polarization is Polarization.ORDINARY:
        n = np.sqrt(eo)
        n1 = eo1 / (2.0 * n)
        n2 = (eo2 - 2.0 * n1**2) / (2.0 * n)
        return n, n1, n2
    se = crystal.sellmeier_e
    ee, ee1, ee2 = (se.permittivity(lam, k) for k in range(3))
    c2, s2 = math.cos(geom.theta_pm) ** 2, math.sin(geom.theta_pm) ** 2
    # eta = 1/n^2 from the index ellipse
    eta = c2 / eo + s2 / ee
    eta1 = -c2 * eo1 / eo**2 - s2 * ee1 / ee**2
    eta2 = (c2 * (2.0 * eo1**2 / eo**3 - eo2 / eo**2)
            + s2 * (2.0 * ee1**2 / ee**3 - ee2 / ee**2))
    n = eta**-0.5
    n1 = -0.5 * eta**-1.5 * eta1
    n2 = 0.75 * eta**-2.5 * eta1**2 - 0.5 * eta**-1.5 * eta2
    return n, n1, n2


def index_at_angle(crystal, geom, lam):
    return _index_derivatives(crystal, geom, lam)[0]


def wavenumber(crystal, geom, omega):
    """k(omega) = omega n(omega, theta) / c; accepts arrays."""
    omega = np.asarray(omega, dtype=float)
    lam = 2.0 * math.pi * C_UM_PER_FS / omega
    return omega * index_at_angle(crystal, geom, lam) / C_UM_PER_FS


def walkoff(crystal, geom, lam):
    if geom.polarization is Polarization.ORDINARY:
        return 0.0
    n = index_at_angle(crystal, geom, lam)
    eo = crystal.sellmeier_o.permittivity(lam)
    ee = crystal.sellmeier_e.permittivity(lam)
    tan_rho = 0.5 * n**2 * (1.0 / ee - 1.0 / eo) * math.sin(2.0 * geom.theta_pm)
    return float(np.arctan(tan_rho))


def wave_parameters(crystal, geom, lambda0):
    n, n1, n2 = (float(x) for x in _index_derivatives(crystal, geom, lambda0))
    c = C_UM_PER_FS
    omega0 = omega_from_wavelength(lambda0)
    return WaveParameters(
        lambda0=float(lambda0),
        omega0=omega0,
        n=n,
        k=omega0 * n / c,
        N=(n - lambda0 * n1) / c,
        D=lambda0**3 * n2 / (2.0 * math.pi * c**2),
        rho=walkoff(crystal, geom, lambda0),
        geometry=geom,
    )


def type_ii_mismatch(crystal, lambda_p, theta):
    """Central-frequency k_p - k_s - k_i for degenerate collinear oee."""
    wp = omega_from_wavelength(lambda_p)
    ws = 0.5 * wp
    e = PropagationGeometry(theta, Polarization.EXTRAORDINARY)
    o = PropagationGeometry(theta, Polarization.ORDINARY)
    return float(wavenumber(crystal, e, wp) - wavenumber(crystal, o, ws)
                 - wavenumber(crystal, e, ws))


def phase_matching_angle(crystal, lambda_p, scheme="type-II", n_scan=181):
    """Collinear degenerate type-II angle: e-pump, o-signal, e-idler at 2 lambda_p."""
    if scheme != "type-II":
        raise ValidationError(f"unsupported phase-matching scheme {scheme!r}")
    crystal.check_range([lambda_p, 2.0 * lambda_p])
    thetas = np.linspace(0.0, math.pi / 2, n_scan)
    dk = np.array([type_ii_mismatch(crystal, lambda_p, t) for t in thetas])
    exact = np.flatnonzero(dk == 0.0)
    if exact.size:
        return float(thetas[exact[0]])
    flips = np.flatnonzero(np.sign(dk[:-1]) != np.sign(dk[1:]))
    if not flips.size:
        raise PhaseMatchingError(
            f"phase matching unattainable in {crystal.name} at lambda_p={lambda_p} um: "
            "k_p - k_s - k_i does not change sign over 0..90 deg")
    i = flips[0]
    return float(brentq(lambda t: type_ii_mismatch(crystal, lambda_p, t),
                        thetas[i], thetas[i + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps))


class TypeIIWaves(NamedTuple):
    theta_pm: float
    pump: WaveParameters
    signal: WaveParameters
    idler: WaveParameters


def degenerate_type_ii(crystal, lambda_p, theta_pm=None):
    """Wave parameters of the e-pump, o-signal and e-idler at phase matching."""
    if theta_pm is None:
        theta_pm = phase_matching_angle(crystal, lambda_p)
    e = PropagationGeometry(theta_pm, Polarization.EXTRAORDINARY)
    o = PropagationGeometry(theta_pm, Polarization.ORDINARY)
    return TypeIIWaves(
        theta_pm,
        wave_parameters(crystal, e, lambda_p),
        wave_parameters(crystal, o, 2.0 * lambda_p),
        wave_parameters(crystal, e, 2.0 * lambda_p),
    )
