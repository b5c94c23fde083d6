"""Internal unit system and unit-suffixed quantity parsing.

Lengths are micrometers, times femtoseconds, angular frequencies rad/fs.
"""
import math
import re

from .errors import ValidationError

C_UM_PER_FS = 0.299792458

_LENGTH = {"nm": 1e-3, "um": 1.0, "µm": 1.0, "mm": 1e3, "cm": 1e4, "m": 1e6}
_ANGLE = {"deg": math.pi / 180.0, "rad": 1.0}
_ANGULAR_FREQUENCY = {"rad/fs": 1.0, "rad/ps": 1e-3}
_TIME = {"fs": 1.0, "ps": 1e3}
_DENSITY = {"/mm": 1e-3, "lines/mm": 1e-3, "/um": 1.0, "lines/um": 1.0}

KINDS = {
    "length": _LENGTH,
    "angle": _ANGLE,
    "angular_frequency": _ANGULAR_FREQUENCY,
    "groove_density": _DENSITY,
    "time": _TIME,
}
# canonical unit used when echoing values back
CANONICAL = {"length": "um", "angle": "rad", "angular_frequency": "rad/fs",
             "groove_density": "lines/um", "time": "fs"}

_NUMBER = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?|[-+]?inf)\s*(.*?)\s*$")


def omega_from_wavelength(lam):
    return 2.0 * math.pi * C_UM_PER_FS / lam


def wavelength_from_omega(omega):
    return 2.0 * math.pi * C_UM_PER_FS / omega


def bandwidth_to_omega(lam_center, dlam):
    """Wavelength FWHM -> angular-frequency FWHM (narrow-band conversion)."""
    return 2.0 * math.pi * C_UM_PER_FS * dlam / lam_center**2


def parse_quantity(text, kind):
    """Parse ``'3.6nm'`` style strings into internal units.

    A bare number is rejected: every physical quantity in a scenario file
    carries its unit.
    """
    m = _NUMBER.match(text)
    if m is None:
        raise ValidationError(f"cannot parse {kind} quantity {text!r}")
    value, unit = float(m.group(1)), m.group(2)
    table = KINDS[kind]
    if unit not in table:
        raise ValidationError(
            f"{text!r}: expected a {kind} unit, one of {sorted(table)}")
    return value * table[unit]


def format_quantity(value, kind):
    return f"{value!r}{CANONICAL[kind]}"
