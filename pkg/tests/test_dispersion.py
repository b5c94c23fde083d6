import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from tiltspdc.dispersion import (Polarization, PropagationGeometry, SellmeierSet,
                                 crystal_from_record, degenerate_type_ii, get_crystal,
                                 index_at_angle, load_crystals, phase_matching_angle,
                                 refractive_index, type_ii_mismatch, walkoff, wave_parameters,
                                 wavenumber)
from tiltspdc.errors import PhaseMatchingError, ValidationError, WavelengthRangeError
from tiltspdc.units import C_UM_PER_FS, omega_from_wavelength

# Kato (1986) BBO, n^2 = A + B/(lam^2 - C) - D lam^2, typed in independently of the data file
KATO_O = (2.7359, 0.01878, 0.01822, 0.01354)
KATO_E = (2.3753, 0.01224, 0.01667, 0.01516)

# frozen from the independent scan + bisection oracle below
THETA_PM_DEG = 41.793089172315746

H = 1e-4  # rad/fs
FD = settings(max_examples=50, deadline=None, derandomize=True)


def kato_n(coef, lam):
    a, b, c, d = coef
    return math.sqrt(a + b / (lam**2 - c) - d * lam**2)


def ellipse_index(no, ne, theta):
    # radius of the index ellipse along theta, found by root bracketing
    f = lambda n: (n * math.cos(theta) / no) ** 2 + (n * math.sin(theta) / ne) ** 2 - 1.0
    return brentq(f, min(no, ne) * 0.999, max(no, ne) * 1.001, xtol=1e-15)


def oracle_k(lam, theta, pol):
    no, ne = kato_n(KATO_O, lam), kato_n(KATO_E, lam)
    n = no if pol == "o" else ellipse_index(no, ne, theta)
    return 2 * math.pi * n / lam


def geom(theta, pol):
    return PropagationGeometry(theta, Polarization(pol))


def test_sellmeier_hand_evaluation(bbo):
    for lam in (0.405, 0.6, 0.81, 1.0):
        assert refractive_index(bbo, "o", lam) == pytest.approx(kato_n(KATO_O, lam), rel=1e-14)
        assert refractive_index(bbo, "e", lam) == pytest.approx(kato_n(KATO_E, lam), rel=1e-14)


def test_sellmeier_derivatives_match_finite_differences():
    s = SellmeierSet("sellmeier", (0.90291, 0.003926, 0.83155, 0.015751, 0.76536, 0.00008))
    lam, h = 0.7, 1e-5
    d1 = (s.permittivity(lam + h) - s.permittivity(lam - h)) / (2 * h)
    d2 = (s.permittivity(lam + h) - 2 * s.permittivity(lam) + s.permittivity(lam - h)) / h**2
    assert s.permittivity(lam, 1) == pytest.approx(d1, rel=1e-8)
    assert s.permittivity(lam, 2) == pytest.approx(d2, rel=1e-4)


def test_extraordinary_index_matches_ellipse_oracle(bbo):
    for theta in np.linspace(0, math.pi / 2, 13):
        for lam in (0.405, 0.81):
            got = index_at_angle(bbo, geom(theta, "e"), lam)
            no, ne = kato_n(KATO_O, lam), kato_n(KATO_E, lam)
            assert got == pytest.approx(ellipse_index(no, ne, theta), rel=1e-12)


def test_extraordinary_index_monotone_between_principal_values(bbo):
    assert bbo.negative_uniaxial
    for lam in (0.3, 0.5, 0.81, 1.0):
        thetas = np.linspace(0, math.pi / 2, 91)
        n = np.array([index_at_angle(bbo, geom(t, "e"), lam) for t in thetas])
        assert np.all(np.diff(n) < 0)
        assert n[0] == pytest.approx(refractive_index(bbo, "o", lam), rel=1e-14)
        assert n[-1] == pytest.approx(refractive_index(bbo, "e", lam), rel=1e-14)


def test_walkoff_properties(bbo):
    lam = 0.81
    assert walkoff(bbo, geom(0.7, "o"), lam) == 0.0
    assert walkoff(bbo, geom(0.0, "e"), lam) == pytest.approx(0.0, abs=1e-15)
    assert walkoff(bbo, geom(math.pi / 2, "e"), lam) == pytest.approx(0.0, abs=1e-15)
    inner = [walkoff(bbo, geom(t, "e"), lam) for t in np.linspace(0.05, 1.5, 30)]
    assert min(inner) > 0


@pytest.mark.parametrize("theta", [0.3, 0.7294, 1.2])
def test_walkoff_matches_normal_geometry(bbo, theta):
    # Poynting vector direction from the ellipse normal: tan(theta + rho) = (no/ne)^2 tan(theta)
    lam = 0.81
    no, ne = kato_n(KATO_O, lam), kato_n(KATO_E, lam)
    rho = math.atan((no / ne) ** 2 * math.tan(theta)) - theta
    assert walkoff(bbo, geom(theta, "e"), lam) == pytest.approx(rho, rel=1e-10)


@pytest.mark.parametrize("pol", ["o", "e"])
@FD
@given(lam=st.floats(0.23, 1.05))
def test_group_index_matches_central_difference(bbo, pol, lam):
    g = geom(0.7294, pol)
    p = wave_parameters(bbo, g, lam)
    w = omega_from_wavelength(lam)
    k = lambda x: float(wavenumber(bbo, g, x))
    fd1 = (k(w + H) - k(w - H)) / (2 * H)
    fd2 = (k(w + H) - 2 * k(w) + k(w - H)) / H**2
    assert abs(p.N - fd1) / abs(p.N) < 1e-6
    assert abs(p.D - fd2) / abs(p.D) < 1e-4


def test_wavenumber_matches_oracle(bbo):
    for pol in "oe":
        for lam in (0.405, 0.81):
            w = omega_from_wavelength(lam)
            got = float(wavenumber(bbo, geom(0.7, pol), w))
            assert got == pytest.approx(oracle_k(lam, 0.7, pol), rel=1e-12)
            assert got == pytest.approx(w * index_at_angle(bbo, geom(0.7, pol), lam) / C_UM_PER_FS)


def _oracle_theta_pm(lambda_p):
    dk = lambda t: (oracle_k(lambda_p, t, "e") - oracle_k(2 * lambda_p, t, "o")
                    - oracle_k(2 * lambda_p, t, "e"))
    thetas = np.linspace(0, math.pi / 2, 901)
    vals = [dk(t) for t in thetas]
    i = next(j for j in range(900) if vals[j] * vals[j + 1] < 0)
    lo, hi = thetas[i], thetas[i + 1]
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if dk(lo) * dk(mid) <= 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def test_phase_matching_angle_matches_scan_oracle(bbo):
    theta = phase_matching_angle(bbo, 0.405)
    assert math.degrees(_oracle_theta_pm(0.405)) == pytest.approx(THETA_PM_DEG, abs=1e-9)
    assert math.degrees(theta) == pytest.approx(THETA_PM_DEG, abs=1e-9)
    assert abs(type_ii_mismatch(bbo, 0.405, theta)) < 1e-9


@pytest.mark.parametrize("lambda_p", [0.38, 0.405, 0.45, 0.5])
def test_phase_matching_self_consistent(bbo, lambda_p):
    theta = phase_matching_angle(bbo, lambda_p)
    assert abs(type_ii_mismatch(bbo, lambda_p, theta)) < 1e-9


def _swapped_bbo():
    # n_e > n_o everywhere: a positive uniaxial crystal has no oee match
    return crystal_from_record({"name": "swapped", "formula": "abcd", "o": list(KATO_E),
                                "e": list(KATO_O), "valid_range_um": [0.22, 1.06]})


def test_no_phase_matching_raises():
    c = _swapped_bbo()
    thetas = np.linspace(0, math.pi / 2, 181)
    dk = [type_ii_mismatch(c, 0.405, t) for t in thetas]
    assert min(dk) > 0 or max(dk) < 0
    with pytest.raises(PhaseMatchingError, match="unattainable"):
        phase_matching_angle(c, 0.405)


def test_out_of_range_wavelength(bbo):
    with pytest.raises(WavelengthRangeError):
        refractive_index(bbo, "o", 1.5)
    with pytest.raises(WavelengthRangeError):
        phase_matching_angle(bbo, 0.6)  # signal at 1.2 um


def test_degenerate_type_ii_bundle(waves):
    assert math.degrees(waves.theta_pm) == pytest.approx(THETA_PM_DEG, abs=1e-9)
    assert waves.signal.rho == 0.0
    assert waves.pump.rho > 0 and waves.idler.rho > 0
    assert waves.signal.N != waves.idler.N
    assert waves.signal.omega0 == pytest.approx(0.5 * waves.pump.omega0)


def test_bundled_data_file_records():
    crystals = load_crystals()
    assert {"BBO", "BBO-Eimerl", "BBO-Tamosauskas"} <= set(crystals)
    with pytest.raises(ValidationError):
        get_crystal("KDP")


def test_duplicate_crystal_names_rejected(tmp_path):
    rec = {"name": "X", "formula": "abcd", "o": [2.7, 0.02, 0.02, 0.01],
           "e": [2.4, 0.01, 0.02, 0.01], "valid_range_um": [0.3, 1.0]}
    path = tmp_path / "dup.json"
    path.write_text(json.dumps({"format": "tiltspdc-crystals/1", "crystals": [rec, rec]}))
    with pytest.raises(ValidationError, match="duplicate"):
        load_crystals(path)


def test_alternative_sellmeier_sets_agree(bbo):
    # published BBO fits differ in the fourth digit of n
    for name in ("BBO-Eimerl", "BBO-Tamosauskas"):
        other = get_crystal(name)
        for lam in (0.405, 0.81):
            for axis in "oe":
                assert refractive_index(other, axis, lam) == pytest.approx(
                    refractive_index(bbo, axis, lam), abs=2e-3)


def test_custom_data_file(tmp_path):
    rec = {"name": "toy", "formula": "abcd", "o": [2.0, 0.0, 0.0, 0.0],
           "e": [2.0, 0.0, 0.0, 0.0], "valid_range_um": [0.2, 2.0], "note": "flat"}
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"format": "tiltspdc-crystals/1", "crystals": [rec]}))
    c = get_crystal("toy", path)
    assert refractive_index(c, "o", 0.5) == pytest.approx(math.sqrt(2.0))


def test_rejects_index_below_one():
    with pytest.raises(ValidationError):
        crystal_from_record({"name": "bad", "formula": "abcd", "o": [0.5, 0, 0, 0],
                             "e": [2.0, 0, 0, 0], "valid_range_um": [0.3, 1.0]})
    with pytest.raises(ValidationError):
        SellmeierSet("cauchy", (1.0,))
