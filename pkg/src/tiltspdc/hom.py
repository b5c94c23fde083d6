"""Hong-Ou-Mandel coincidence traces from a joint spectrum.

S0 is normalized so that its integral over Omega_- is the exchange overlap
of the normalized amplitude (1 for an exchange-symmetric state). With that
normalization the coincidence probability is

    R(tau) = 1/2 [1 - Re int dOmega_- S0(Omega_-) exp(-i Omega_- tau)],

which is 0 at perfect indistinguishability and 1/2 far outside the dip.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .biphoton import diagonal_spectra
from .errors import AsymmetricGridError, DelayWindowError, ValidationError
from .numerics import fwhm

EDGE_TOL = 0.02
WINDOW_FACTOR = 4.0
KINK_RATIO = 4.0
TRIANGLE_LEVEL = 0.45
TRIANGLE_RESIDUAL = 0.02


@dataclass(frozen=True)
class HomTrace:
    delays: np.ndarray
    rate: np.ndarray
    visibility: float
    dip_center: float
    triangular: bool = False
    triangle_residual: float = math.nan


def check_exchange_grid(js):
    grid = js.grid
    om = grid.omega
    if not np.allclose(om, -om[::-1], rtol=0, atol=1e-12 * grid.span):
        raise AsymmetricGridError("detuning axis is not symmetric about zero")
    if grid.centers is not None:
        ws, wi = grid.centers
        if not math.isclose(ws, wi, rel_tol=1e-12):
            raise AsymmetricGridError(
                f"signal/idler centers differ ({ws} vs {wi} rad/fs); "
                "exchange of Omega_- is not a grid symmetry")


def s_zero(js):
    """(Omega_-, S0) with S0 = sum over Omega_+ of Psi(+,-) Psi*(+,-Omega_-)."""
    check_exchange_grid(js)
    n = js.grid.n_points
    d = js.spacing
    prod = js.amplitude * np.conj(js.amplitude.T)
    j, k = np.indices((n, n))
    idx = (j - k).ravel() + n - 1
    re = np.bincount(idx, prod.real.ravel(), minlength=2 * n - 1)
    im = np.bincount(idx, prod.imag.ravel(), minlength=2 * n - 1)
    axis = (np.arange(2 * n - 1) - (n - 1)) * d
    return axis, (re + 1j * im) * d


def overlap_transform(omega_minus, s0, delays, chunk=512):
    """int dOmega_- S0 exp(-i Omega_- tau) by direct quadrature."""
    delays = np.atleast_1d(np.asarray(delays, dtype=float))
    d = omega_minus[1] - omega_minus[0]
    out = np.empty(delays.shape, dtype=complex)
    for a in range(0, delays.size, chunk):
        tau = delays[a:a + chunk]
        out[a:a + chunk] = np.exp(-1j * np.outer(tau, omega_minus)) @ s0 * d
    return out


def rate_from_s_zero(omega_minus, s0, delays):
    return 0.5 * (1.0 - overlap_transform(omega_minus, s0, delays).real)


def exchange_overlap(js, tau=0.0):
    """int Psi(s, i) Psi*(i, s) exp(-i (Omega_s - Omega_i) tau)."""
    om, s0 = s_zero(js)
    return complex(overlap_transform(om, s0, [tau])[0])


def coincidence_trace_fft(js, pad=4):
    """R on the natural FFT delay grid 2 pi k / (M dOmega), M = pad (2n - 1)."""
    om, s0 = s_zero(js)
    m = s0.size
    size = pad * m
    a = np.zeros(size, dtype=complex)
    shift = np.arange(m) - (m - 1) // 2
    a[shift % size] = s0
    d = om[1] - om[0]
    spec = np.fft.fftshift(np.fft.fft(a)) * d
    delays = 2.0 * math.pi * (np.arange(size) - size // 2) / (size * d)
    return delays, 0.5 * (1.0 - spec.real)


def default_window(js):
    """Window of +-4 transform-limited widths of S-, centered on the coarse dip."""
    spectra = diagonal_spectra(js)
    width = 2.0 * math.pi / fwhm(spectra.omega, spectra.minus)
    delays, rate = coincidence_trace_fft(js, pad=8)
    center = float(delays[np.argmin(rate)])
    half = WINDOW_FACTOR * width
    return center - half, center + half


def coincidence_trace(js, tau_window=None, n_tau=2001):
    if tau_window is None:
        tau_window = default_window(js)
    lo, hi = tau_window
    if not hi > lo or n_tau < 16:
        raise ValidationError("delay window must be increasing with at least 16 samples")
    delays = np.linspace(lo, hi, n_tau)
    om, s0 = s_zero(js)
    rate = rate_from_s_zero(om, s0, delays)
    for edge in (rate[0], rate[-1]):
        if abs(edge - 0.5) > EDGE_TOL:
            raise DelayWindowError(
                f"delay window [{lo:.1f}, {hi:.1f}] fs too narrow: edge rate {edge:.4f} "
                f"differs from 1/2 by more than {EDGE_TOL}")
    center = dip_center(delays, rate)
    _, resid = fit_two_sided_linear(delays, rate)
    return HomTrace(delays, rate, visibility_of(rate), center,
                    is_triangular(delays, rate, resid), resid)


def visibility_of(rate):
    rate = np.asarray(rate)
    hi, lo = rate.max(), rate.min()
    return float((hi - lo) / (hi + lo))


def visibility(trace):
    return visibility_of(trace.rate)


def _has_kink(rate, i):
    d2 = np.diff(rate, 2)
    if i < 7 or i > len(rate) - 8:
        return False
    at = d2[i - 1]
    around = np.abs(np.concatenate([d2[i - 7:i - 2], d2[i + 1:i + 6]]))
    return at > KINK_RATIO * max(np.median(around), 1e-300)


def dip_center(delays, rate):
    """Parabola vertex through the 5 samples around the minimum.

    A kinked (triangular) minimum uses the two-sided linear fit instead.
    """
    i = int(np.argmin(rate))
    if i < 2 or i > len(rate) - 3:
        return float(delays[i])
    if _has_kink(rate, i):
        return fit_two_sided_linear(delays, rate)[0]
    c2, c1, _ = np.polyfit(delays[i - 2:i + 3] - delays[i], rate[i - 2:i + 3], 2)
    if c2 <= 0:
        return float(delays[i])
    return float(delays[i] - c1 / (2.0 * c2))


def _dip_region(delays, rate, level):
    i = int(np.argmin(rate))
    lo, hi = i, i
    while lo > 0 and rate[lo - 1] < level:
        lo -= 1
    while hi < len(rate) - 1 and rate[hi + 1] < level:
        hi += 1
    return delays[lo:hi + 1], rate[lo:hi + 1]


def _v_residual(t, r, center):
    a = np.column_stack([np.ones_like(t), np.clip(center - t, 0, None),
                         np.clip(t - center, 0, None)])
    coef, *_ = np.linalg.lstsq(a, r, rcond=None)
    return a @ coef - r


def fit_two_sided_linear(delays, rate, level=TRIANGLE_LEVEL):
    """Best V-shaped fit to the region below ``level``.

    Returns (apex delay, RMS residual / dip depth).
    """
    rate = np.asarray(rate)
    depth = float(rate.max() - rate.min())
    t, r = _dip_region(np.asarray(delays), rate, level)
    if t.size < 5 or depth == 0.0:
        return float(delays[int(np.argmin(rate))]), math.inf
    sse = [np.sum(_v_residual(t, r, c) ** 2) for c in t]
    k = int(np.argmin(sse))
    lo, hi = t[max(k - 1, 0)], t[min(k + 1, t.size - 1)]
    best = minimize_scalar(lambda c: np.sum(_v_residual(t, r, c) ** 2),
                           bounds=(lo, hi), method="bounded",
                           options={"xatol": 1e-9 * max(1.0, abs(hi))})
    rms = float(np.sqrt(np.mean(_v_residual(t, r, best.x) ** 2)))
    return float(best.x), rms / depth


def is_triangular(delays, rate, v_residual=None):
    """Dip region fits a two-sided linear model within 2% RMS of the depth."""
    if v_residual is None:
        v_residual = fit_two_sided_linear(delays, rate)[1]
    return bool(v_residual < TRIANGLE_RESIDUAL)
