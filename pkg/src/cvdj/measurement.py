"""Window measurements: detection probabilities and the optimal window.

A query detects when the measured position falls in [-delta, delta].
For the constant and ASB densities the window probability has a closed
form in the sine integral that depends only on u = P * delta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .quadrature import adaptive_simpson
from .special import sine_integral
from .wavefunction import Pdf

PROB_TOL = 1e-9
QUAD_TOL = 1e-10
_SERIES_U = 0.05


@dataclass(frozen=True)
class Window:
    a: float
    b: float

    def __post_init__(self):
        if not self.a <= self.b:
            raise ValueError(f"window needs a <= b, got a={self.a}, b={self.b}")

    @classmethod
    def symmetric(cls, delta: float) -> "Window":
        if delta < 0:
            raise ValueError(f"delta must be nonnegative, got {delta}")
        return cls(-delta, delta)


def _clamp_probability(value: float) -> float:
    if value < -PROB_TOL or value > 1.0 + PROB_TOL:
        raise ArithmeticError(f"probability {value!r} is outside [0, 1] by more than {PROB_TOL}")
    return min(max(value, 0.0), 1.0)


def window_probability(
    density: Pdf | Callable[[np.ndarray], np.ndarray], w: Window, tol: float = QUAD_TOL
) -> float:
    """int_a^b density dx, split at multiples of pi/P when P is known."""
    if w.a == w.b:
        return 0.0
    breaks: np.ndarray | tuple = ()
    P = getattr(density, "P", None)
    if P:
        step = math.pi / P
        k = np.arange(math.ceil(w.a / step), math.floor(w.b / step) + 1)
        breaks = k * step
    return _clamp_probability(adaptive_simpson(density, w.a, w.b, tol=tol, breakpoints=breaks))


def _check(P: float, delta: float) -> float:
    if not P > 0:
        raise ValueError(f"P must be positive, got {P}")
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    return P * delta


def constant_window_prob(P: float, delta: float) -> float:
    """(cos 2u + 2u Si(2u) - 1) / (u pi) with u = P delta."""
    u = _check(P, delta)
    if u < _SERIES_U:
        u2 = u * u
        value = u * (2 + u2 * (-2 / 9 + u2 * (4 / 225 + u2 * (-2 / 2205 + u2 * 4 / 127575))))
        return value / math.pi
    return _clamp_probability(
        (math.cos(2 * u) + 2 * u * sine_integral(2 * u) - 1) / (u * math.pi)
    )


def asb_window_prob(P: float, delta: float) -> float:
    """(-8 sin^4(u/2) + 4u Si(u) - 2u Si(2u)) / (u pi) with u = P delta."""
    u = _check(P, delta)
    if u < _SERIES_U:
        u2 = u * u
        value = u**3 * (1 / 6 + u2 * (-1 / 60 + u2 * (1 / 1120 + u2 * (-17 / 544320))))
        return value / math.pi
    num = -8 * math.sin(u / 2) ** 4 + 4 * u * sine_integral(u) - 2 * u * sine_integral(2 * u)
    return _clamp_probability(num / (u * math.pi))


def separation(P: float, delta: float) -> float:
    return constant_window_prob(P, delta) - asb_window_prob(P, delta)


def _separation_slope(P: float, delta: float) -> float:
    # d/d(delta) of the separation, up to the positive factor 1/(P pi delta^2)
    u = P * delta
    return math.sin(u) ** 2 - (math.cos(u) - 1) ** 2


def optimal_delta(P: float) -> float:
    """Window half-width maximizing constant-vs-ASB separation, pi/(2P).

    Finds the first +/- sign change of sin^2(P delta) - (cos(P delta) - 1)^2
    on (0, 2 pi / P) and refines it with Brent's method.
    """
    if not P > 0:
        raise ValueError(f"P must be positive, got {P}")
    grid = np.linspace(0.0, 2 * math.pi / P, 65)[1:-1]
    slope = np.array([_separation_slope(P, d) for d in grid])
    falls = np.nonzero((slope[:-1] > 0) & (slope[1:] <= 0))[0]
    if falls.size == 0:
        raise ArithmeticError(f"no bracket for the optimal window at P={P}")
    lo, hi = grid[falls[0]], grid[falls[0] + 1]
    if _separation_slope(P, hi) == 0.0:
        return float(hi)
    return float(brentq(lambda d: _separation_slope(P, d), lo, hi, xtol=1e-15, rtol=1e-15))
