"""Line-oriented scenario files.

One ``key = value`` per line, ``#`` starts a comment. Physical quantities
carry a unit suffix (``length = 2mm``, ``pump.fwhm = 3.6nm``). Keys:

    crystal            crystal name in the data file            (BBO)
    crystal.file       alternative crystal data file (JSON)
    length             crystal length                            2mm
    pump.wavelength    pump central wavelength                   405nm
    pump.fwhm          pump wavelength FWHM, or ``cw``            3.6nm
    pump.waist         1/e^2 intensity radius, or ``inf``         inf
    pump.phi           tilt angle                                -38.1deg
    pump.tilt          ``anticorrelation`` | ``correlation``
    grating.lines      groove density                            1200/mm
    grating.order      signed diffraction order                  1
    grating.theta0     incidence angle, or ``littrow``            -17.4deg
    filter.shape       ``gaussian`` | ``rectangular`` | ``none``
    filter.fwhm        intensity FWHM in wavelength              10nm
    filter.center      filter center (default 2 x pump)          810nm
    filter.signal.*    per-arm override of the three filter keys
    filter.idler.*
    grid.points        samples per axis                          512
    grid.span          half-width of the detuning axis           0.15rad/fs
    hom.points         delay samples                             2001
    hom.window         delay window ``lo..hi``                   -1ps..1ps
    polarization.delta     relative phase                        0deg
    polarization.theta_a   comma-separated polarizer angles      -45deg,-30deg
    polarization.epsilon   force the mixing weight (dimensionless)
    output             output directory

Exactly one of ``pump.phi``, ``pump.tilt`` and the ``grating.*`` block sets
the tilt.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path

from .biphoton import FilterShape, FilterSpec, FrequencyGrid, ScenarioConfig
from .dispersion import degenerate_type_ii, get_crystal
from .errors import ValidationError
from .tilt import (GratingSpec, TiltedPumpConfig, littrow_grating,
                   solve_tilt_anticorrelation, solve_tilt_correlation, tilt_from_grating)
from .units import parse_quantity

KNOWN_KEYS = {
    "crystal", "crystal.file", "length", "pump.wavelength", "pump.fwhm", "pump.waist",
    "pump.phi", "pump.tilt", "grating.lines", "grating.order", "grating.theta0",
    "grid.points", "grid.span", "hom.points", "hom.window", "polarization.delta",
    "polarization.theta_a", "polarization.epsilon", "output",
}
for _arm in ("", "signal.", "idler."):
    for _k in ("shape", "fwhm", "center"):
        KNOWN_KEYS.add(f"filter.{_arm}{_k}")

DEFAULTS = {
    "crystal": "BBO",
    "length": "2mm",
    "pump.wavelength": "405nm",
    "pump.fwhm": "3.6nm",
    "pump.waist": "inf",
    "filter.shape": "gaussian",
    "filter.fwhm": "10nm",
    "grid.points": "512",
    "grid.span": "0.15rad/fs",
    "hom.points": "2001",
    "polarization.delta": "0deg",
    "polarization.theta_a": "-45deg",
    "output": "out",
}

TILT_DIRECTIVES = ("anticorrelation", "correlation")


def _integer(text, key):
    try:
        return int(text)
    except ValueError:
        raise ValidationError(f"{key} must be an integer, got {text!r}") from None


def parse_text(text):
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"line {lineno}: expected key = value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KNOWN_KEYS:
            raise ValidationError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ValidationError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value
    return raw


@dataclass(frozen=True)
class ScenarioFile:
    """Raw key/value pairs of a scenario plus typed accessors."""

    raw: dict

    @classmethod
    def from_text(cls, text):
        return cls(parse_text(text))

    @classmethod
    def from_path(cls, path):
        path = Path(path)
        text = path.read_text()
        if path.suffix == ".json":
            # a run manifest: rerun from its recorded inputs
            return cls(dict(json.loads(text)["scenario"]))
        return cls.from_text(text)

    def __post_init__(self):
        unknown = set(self.raw) - KNOWN_KEYS
        if unknown:
            raise ValidationError(f"unknown keys {sorted(unknown)}")
        tilt_sources = [k for k in ("pump.phi", "pump.tilt") if k in self.raw]
        if any(k.startswith("grating.") for k in self.raw):
            tilt_sources.append("grating")
        if len(tilt_sources) != 1:
            raise ValidationError(
                "exactly one of pump.phi, pump.tilt or a grating block must set the tilt "
                f"(found {tilt_sources or 'none'})")
        if "pump.tilt" in self.raw and self.raw["pump.tilt"] not in TILT_DIRECTIVES:
            raise ValidationError(f"pump.tilt must be one of {TILT_DIRECTIVES}")

    def get(self, key):
        return self.raw.get(key, DEFAULTS.get(key))

    def quantity(self, key, kind, positive=True):
        text = self.get(key)
        if text is None:
            raise ValidationError(f"missing key {key!r}")
        if text.strip() == "inf":
            value = math.inf
        else:
            value = parse_quantity(text, kind)
        if positive and not value > 0:
            raise ValidationError(f"{key} must be positive, got {text!r}")
        return value

    def canonical(self):
        return "".join(f"{k} = {self.raw[k]}\n" for k in sorted(self.raw))

    def digest(self):
        return hashlib.sha256(self.canonical().encode()).hexdigest()[:16]

    @property
    def cw(self):
        return self.get("pump.fwhm").strip().lower() == "cw"

    @property
    def tilt_directive(self):
        return self.raw.get("pump.tilt")

    def crystal(self):
        return get_crystal(self.get("crystal"), self.raw.get("crystal.file"))

    def filter(self, arm):
        def pick(name):
            return self.raw.get(f"filter.{arm}.{name}", self.get(f"filter.{name}"))
        try:
            shape = FilterShape(pick("shape"))
        except ValueError:
            raise ValidationError(f"unknown filter shape {pick('shape')!r}") from None
        if shape is FilterShape.NONE:
            return FilterSpec()
        center = pick("center")
        return FilterSpec(shape, parse_quantity(pick("fwhm"), "length"),
                          parse_quantity(center, "length") if center else None)

    def grating(self, lambda_p):
        lines = self.quantity("grating.lines", "groove_density")
        order = _integer(self.raw.get("grating.order", "1"), "grating.order")
        theta0 = self.raw.get("grating.theta0", "littrow")
        if theta0.strip() == "littrow":
            return littrow_grating(lines, order, lambda_p)
        return GratingSpec(lines, order, parse_quantity(theta0, "angle"))

    def resolve_tilt(self, crystal, lambda_p):
        """(phi, alpha) from whichever tilt source the scenario gives."""
        if "pump.phi" in self.raw:
            return parse_quantity(self.raw["pump.phi"], "angle"), 1.0
        if "pump.tilt" in self.raw:
            waves = degenerate_type_ii(crystal, lambda_p)
            if self.raw["pump.tilt"] == "anticorrelation":
                return solve_tilt_anticorrelation(waves.signal, waves.idler), 1.0
            return solve_tilt_correlation(waves.pump, waves.signal, waves.idler), 1.0
        return tilt_from_grating(self.grating(lambda_p), lambda_p)

    def grid(self, points=None):
        n = points if points is not None else _integer(self.get("grid.points"), "grid.points")
        return FrequencyGrid(n, self.quantity("grid.span", "angular_frequency"))

    def to_config(self, grid_points=None):
        crystal = self.crystal()
        lambda_p = self.quantity("pump.wavelength", "length")
        phi, alpha = self.resolve_tilt(crystal, lambda_p)
        pump = TiltedPumpConfig(
            lambda_p=lambda_p,
            bandwidth_fwhm=None if self.cw else self.quantity("pump.fwhm", "length"),
            waist=self.quantity("pump.waist", "length"),
            phi=phi,
            alpha=alpha,
        )
        return ScenarioConfig(
            crystal=crystal,
            length=self.quantity("length", "length"),
            pump=pump,
            filter_signal=self.filter("signal"),
            filter_idler=self.filter("idler"),
            grid=self.grid(grid_points),
        )

    def hom_window(self):
        text = self.raw.get("hom.window")
        if text is None:
            return None
        try:
            lo, hi = text.split("..")
        except ValueError:
            raise ValidationError("hom.window must read 'lo..hi' with time units") from None
        return parse_quantity(lo, "time"), parse_quantity(hi, "time")

    def hom_points(self):
        return _integer(self.get("hom.points"), "hom.points")

    def theta_a(self):
        return [parse_quantity(t, "angle") for t in self.get("polarization.theta_a").split(",")]

    def delta(self):
        return parse_quantity(self.get("polarization.delta"), "angle")

    def forced_epsilon(self):
        text = self.raw.get("polarization.epsilon")
        if text is None:
            return None
        try:
            return float(text)
        except ValueError:
            raise ValidationError("polarization.epsilon must be a number") from None
