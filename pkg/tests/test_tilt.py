import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tiltspdc.dispersion import WaveParameters
from tiltspdc.errors import DegenerateTiltError, GratingError, ValidationError
from tiltspdc.tilt import (GratingSpec, TiltedPumpConfig, angular_dispersion, d_plus,
                           diffraction_angle, effective_wave, grating_for_tilt, littrow_grating,
                           solve_tilt_anticorrelation, solve_tilt_correlation,
                           tilt_from_grating)
from tiltspdc.units import C_UM_PER_FS

C = C_UM_PER_FS
PHI_ANTI_DEG = 38.10835711546834
PHI_CORR_DEG = 51.837170879522404


def synth(N, rho, D=0.1, k=12.0):
    return WaveParameters(lambda0=0.8, omega0=2.35, n=1.6, k=k, N=N, D=D, rho=rho)


def test_grating_equation_holds():
    g = GratingSpec(1.2, 1, math.radians(10.0))
    beta = diffraction_angle(g, 0.405)
    assert abs(1 * 0.405 * 1.2 - (math.sin(g.theta0) + math.sin(beta))) < 1e-12


def test_zeroth_order():
    g = GratingSpec(1.2, 0, math.radians(20.0))
    beta = diffraction_angle(g, 0.405)
    assert beta == pytest.approx(-g.theta0)
    assert angular_dispersion(g, 0.405) == 0.0
    phi, alpha = tilt_from_grating(g, 0.405)
    assert phi == 0.0
    assert abs(alpha) == pytest.approx(1.0)


def test_evanescent_order():
    g = GratingSpec(1.0, 1, math.asin(-0.2))
    lam = 1.0  # m lam / d - sin theta0 = 1.2
    with pytest.raises(GratingError, match="evanescent"):
        diffraction_angle(g, lam)


def test_angular_dispersion_normal_diffraction():
    g = GratingSpec(1.2, 1, 0.0, beta0=0.0)
    assert angular_dispersion(g) == pytest.approx(1.2, rel=1e-15)


def test_grazing_diffraction_is_singular():
    with pytest.raises(GratingError):
        angular_dispersion(GratingSpec(1.2, 1, 0.0, beta0=math.pi / 2))


@pytest.mark.parametrize("lines,order,target", [(1.2, 1, -PHI_ANTI_DEG), (2.4, -1, PHI_CORR_DEG)])
def test_designed_grating_round_trip(lines, order, target):
    phi = math.radians(target)
    g = grating_for_tilt(phi, 0.405, lines, order)
    assert abs(order * 0.405 * lines - (math.sin(g.theta0) + math.sin(g.beta0))) < 1e-12
    beta = diffraction_angle(GratingSpec(lines, order, g.theta0), 0.405)
    assert beta == pytest.approx(g.beta0, abs=1e-12)
    got, alpha = tilt_from_grating(GratingSpec(lines, order, g.theta0), 0.405)
    assert got == pytest.approx(phi, rel=1e-12)
    assert alpha == pytest.approx(-math.cos(g.theta0) / math.cos(g.beta0))


def test_paper_gratings_reach_the_solved_tilts(waves):
    anti = solve_tilt_anticorrelation(waves.signal, waves.idler)
    corr = solve_tilt_correlation(waves.pump, waves.signal, waves.idler)
    g1 = grating_for_tilt(anti, 0.405, 1.2, 1)
    g2 = grating_for_tilt(corr, 0.405, 2.4, -1)
    phi1, _ = tilt_from_grating(GratingSpec(1.2, 1, g1.theta0), 0.405)
    phi2, _ = tilt_from_grating(GratingSpec(2.4, -1, g2.theta0), 0.405)
    assert abs(math.degrees(phi1)) == pytest.approx(38.1, abs=0.2)
    assert abs(math.degrees(phi2)) == pytest.approx(51.9, abs=0.2)
    eps = angular_dispersion(GratingSpec(2.4, -1, g2.theta0), 0.405)
    assert math.tan(phi2) == pytest.approx(-0.405 * eps, rel=1e-12)


def test_grating_too_weak_for_tilt():
    with pytest.raises(GratingError):
        # a dense grating disperses too much for a small tilt: cos(beta0) would exceed 1
        grating_for_tilt(math.radians(-5.0), 0.405, 3.6, 1)
    with pytest.raises(GratingError):
        grating_for_tilt(math.radians(-38.0), 0.405, 1.2, -1)  # wrong order sign


def test_littrow():
    g = littrow_grating(1.2, 1, 0.405)
    assert g.theta0 == g.beta0
    assert diffraction_angle(GratingSpec(1.2, 1, g.theta0), 0.405) == pytest.approx(g.beta0)


@settings(max_examples=60, deadline=None, derandomize=True)
@given(phi=st.floats(-1.4, 1.4), lines=st.floats(0.3, 3.6), order=st.sampled_from([1, -1, 2]))
def test_grating_inverse_property(phi, lines, order):
    try:
        g = grating_for_tilt(phi, 0.405, lines, order)
    except GratingError:
        return
    got, _ = tilt_from_grating(GratingSpec(lines, order, g.theta0), 0.405)
    assert got == pytest.approx(phi, rel=1e-10, abs=1e-12)


def test_effective_wave_untilted(waves):
    for w in waves[1:]:
        e = effective_wave(w, 0.0)
        assert e.u == w.N and e.g == w.D


def test_effective_wave_formulas(waves):
    phi = 0.4
    for w in waves[1:]:
        e = effective_wave(w, phi)
        assert e.u == pytest.approx(w.N - math.tan(w.rho) * math.tan(phi) / C, rel=1e-15)
        assert e.g == pytest.approx(w.D - (math.tan(phi) / C) ** 2 / w.k, rel=1e-15)
    o = effective_wave(waves.signal, phi)
    assert o.u == waves.signal.N and o.g < waves.signal.D


@settings(max_examples=100, deadline=None, derandomize=True)
@given(phi=st.floats(-1.5, 1.5))
def test_gvd_never_increases(waves, phi):
    for w in waves[1:]:
        g = effective_wave(w, phi).g
        assert g <= w.D
        if abs(phi) > 1e-6:
            assert g < w.D


def test_effective_wave_rejects_right_angle(waves):
    with pytest.raises(ValidationError):
        effective_wave(waves.pump, math.pi / 2)


def test_bbo_anticorrelation_tilt(waves):
    phi = solve_tilt_anticorrelation(waves.signal, waves.idler)
    assert abs(math.degrees(phi)) == pytest.approx(38.1, abs=1.5)
    assert math.degrees(phi) == pytest.approx(-PHI_ANTI_DEG, abs=1e-9)
    es, ei = effective_wave(waves.signal, phi), effective_wave(waves.idler, phi)
    assert abs(es.u - ei.u) < 1e-9


def test_bbo_correlation_tilt(waves):
    phi = solve_tilt_correlation(waves.pump, waves.signal, waves.idler)
    assert abs(math.degrees(phi)) == pytest.approx(51.9, abs=1.5)
    assert math.degrees(phi) == pytest.approx(PHI_CORR_DEG, abs=1e-9)
    eff = [effective_wave(w, phi) for w in (waves.pump, waves.signal, waves.idler)]
    assert abs(d_plus(*eff)) < 1e-9


def test_sign_convention(waves):
    # with rho >= 0 the residual is only killed by the reported sign
    phi = solve_tilt_anticorrelation(waves.signal, waves.idler)
    es, ei = effective_wave(waves.signal, -phi), effective_wave(waves.idler, -phi)
    assert abs(es.u - ei.u) > 1e-2


def test_matched_waves_need_no_tilt():
    s, i = synth(5.5, 0.0), synth(5.5, 0.07)
    assert solve_tilt_anticorrelation(s, i) == 0.0
    p = synth(5.5, 0.05)
    assert solve_tilt_correlation(p, s, i) == 0.0


def test_synthetic_linear_solve():
    # N_s - N_i = 0.01 fs/um, tan rho_s - tan rho_i = 0.1
    s, i = synth(5.51, math.atan(0.1)), synth(5.50, 0.0)
    phi = solve_tilt_anticorrelation(s, i)
    assert math.tan(phi) == pytest.approx(C * 0.1, rel=1e-12)


def test_degenerate_walkoff_raises():
    with pytest.raises(DegenerateTiltError, match="no tilt can equalize"):
        solve_tilt_anticorrelation(synth(5.6, 0.05), synth(5.5, 0.05))
    with pytest.raises(DegenerateTiltError, match="no tilt can achieve"):
        solve_tilt_correlation(synth(5.0, 0.05), synth(5.6, 0.05), synth(5.5, 0.05))


def test_correlation_solve_matches_scan():
    p, s, i = synth(5.3, 0.07), synth(5.6, 0.0), synth(5.4, 0.06)
    phi = solve_tilt_correlation(p, s, i)
    grid = np.arange(-1.5, 1.5, 1e-4)
    resid = [abs(d_plus(*(effective_wave(w, t) for w in (p, s, i)))) for t in grid]
    best = grid[int(np.argmin(resid))]
    assert math.tan(phi) == pytest.approx(math.tan(best), abs=2e-4)


def test_d_plus_untilted(waves):
    eff = [effective_wave(w, 0.0) for w in (waves.pump, waves.signal, waves.idler)]
    assert d_plus(*eff) == waves.pump.N - 0.5 * (waves.signal.N + waves.idler.N)


def test_d_plus_requires_common_tilt(waves):
    with pytest.raises(ValidationError):
        d_plus(effective_wave(waves.pump, 0.1), effective_wave(waves.signal, 0.2),
               effective_wave(waves.idler, 0.1))


def test_pump_config_validation():
    with pytest.raises(ValidationError):
        TiltedPumpConfig(0.405, 0.0036, phi=math.pi / 2)
    with pytest.raises(ValidationError):
        TiltedPumpConfig(0.405, 0.0036, waist=0.0)
    with pytest.raises(ValidationError):
        TiltedPumpConfig(0.405, -1.0)
    assert TiltedPumpConfig(0.405, None).cw
