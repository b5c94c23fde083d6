"""Small numerical helpers shared by the physics modules."""
import numpy as np


def sinc(x):
    """sin(x)/x (unnormalized)."""
    return np.sinc(np.asarray(x) / np.pi)


def fwhm(x, y):
    """Full width at half maximum of a single-peaked sampled curve.

    Half-maximum crossings are located by linear interpolation, walking
    outward from the global maximum.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    i = int(np.argmax(y))
    half = 0.5 * y[i]
    left = i
    while left > 0 and y[left] > half:
        left -= 1
    right = i
    while right < len(y) - 1 and y[right] > half:
        right += 1
    if y[left] > half or y[right] > half:
        raise ValueError("curve does not fall to half maximum inside the sampled range")
    xl = np.interp(half, [y[left], y[left + 1]], [x[left], x[left + 1]])
    xr = np.interp(half, [y[right], y[right - 1]], [x[right], x[right - 1]])
    return float(xr - xl)


def symmetric_axis(n, half_width):
    """n samples symmetric about zero; reflection maps samples onto samples."""
    return (np.arange(n) - (n - 1) / 2.0) * (2.0 * half_width / (n - 1))
