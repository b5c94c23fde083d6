"""Two-photon polarization state mixed by residual spectral distinguishability.

    rho = eps |psi><psi| + (1 - eps)/2 (|HV><HV| + |VH><VH|),
    |psi> = (|HV> + exp(i Delta) |VH>) / sqrt(2)

with the first label the signal (o) photon. eps is tied to the joint spectrum
through the exchange overlap at the HOM dip center, where the polarization
measurement is made.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import ValidationError
from .hom import coincidence_trace_fft, exchange_overlap

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PolarizationMixModel:
    epsilon: float
    delta: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValidationError(f"epsilon={self.epsilon} outside [0, 1]")


def epsilon_from_jsa(js, tau=None):
    """|exchange overlap| of the amplitude at delay ``tau``.

    ``tau=None`` uses the delay that maximizes the overlap, i.e. the HOM dip
    center set by the compensating delay line.
    """
    if tau is None:
        tau = _best_delay(js)
    eps = abs(exchange_overlap(js, tau))
    if eps > 1.0:
        log.info("exchange overlap %.3e above 1 by rounding; clamped", eps - 1.0)
        eps = 1.0
    return float(eps)


def _best_delay(js):
    delays, rate = coincidence_trace_fft(js, pad=8)
    i = int(np.argmin(rate))
    step = delays[1] - delays[0]
    res = minimize_scalar(lambda t: -abs(exchange_overlap(js, t)),
                          bounds=(delays[i] - step, delays[i] + step), method="bounded",
                          options={"xatol": 1e-6})
    return float(res.x)


def purity(model):
    return 0.5 * (1.0 + model.epsilon**2)


def coincidence_vs_angles(model, theta_a, theta_b):
    """Tr[rho P(theta_a) x P(theta_b)] for linear polarizers (theta from H).

    Closed form: [1 - cos2a cos2b + eps cos(Delta) sin2a sin2b] / 4.
    """
    a2 = 2.0 * np.asarray(theta_a, dtype=float)
    b2 = 2.0 * np.asarray(theta_b, dtype=float)
    return 0.25 * (1.0 - np.cos(a2) * np.cos(b2)
                   + model.epsilon * math.cos(model.delta) * np.sin(a2) * np.sin(b2))


def sweep(model, theta_a, n=721):
    theta_b = np.linspace(-math.pi / 2, math.pi / 2, n)
    return theta_b, coincidence_vs_angles(model, theta_a, theta_b)


def curve_visibility(model, theta_a, n=721):
    """(max - min)/(max + min) of the theta_b sweep, extremes refined."""
    theta_b, rate = sweep(model, theta_a, n)
    step = theta_b[1] - theta_b[0]

    def extreme(i, sign):
        # sign=+1 finds the minimum, -1 the maximum
        res = minimize_scalar(lambda b: sign * coincidence_vs_angles(model, theta_a, b),
                              bounds=(theta_b[i] - step, theta_b[i] + step),
                              method="bounded", options={"xatol": 1e-12})
        return sign * min(res.fun, sign * rate[i])

    lo = extreme(int(np.argmin(rate)), 1.0)
    hi = extreme(int(np.argmax(rate)), -1.0)
    if hi + lo == 0.0:
        return 0.0
    return float((hi - lo) / (hi + lo))
