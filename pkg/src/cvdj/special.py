"""Sine integral Si(t) = int_0^t sin(u)/u du."""

from __future__ import annotations

import math

import numpy as np

SERIES_LIMIT = 8.0
_EPS = 1e-17
_TINY = 1e-300
_MAX_TERMS = 200


def _si_series(t: float) -> float:
    # sum_k (-1)^k t^(2k+1) / ((2k+1) (2k+1)!)
    t2 = t * t
    term = t  # t^(2k+1) / (2k+1)!, signed
    total = t
    for k in range(1, _MAX_TERMS):
        term *= -t2 / ((2 * k) * (2 * k + 1))
        contrib = term / (2 * k + 1)
        total += contrib
        if abs(contrib) < _EPS * abs(total):
            return total
    raise ArithmeticError(f"Si series did not converge at t={t}")


def _si_auxiliary(t: float) -> float:
    """Si for t >= SERIES_LIMIT from the auxiliary functions f, g.

    Si(t) = pi/2 - f(t) cos t - g(t) sin t, where f + i g = e^{it} E1(it)
    is evaluated by the modified Lentz continued fraction for E1.
    """
    b = complex(1.0, t)
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(2, _MAX_TERMS):
        a = -float((i - 1) ** 2)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta.real - 1.0) + abs(delta.imag) < 1e-16:
            break
    else:
        raise ArithmeticError(f"Si continued fraction did not converge at t={t}")
    h *= complex(math.cos(t), -math.sin(t))
    return math.pi / 2 + h.imag


def _si_scalar(t: float) -> float:
    t = float(t)
    if t == 0.0:
        return 0.0
    if math.isinf(t):
        return math.copysign(math.pi / 2, t)
    a = abs(t)
    value = _si_series(a) if a < SERIES_LIMIT else _si_auxiliary(a)
    return math.copysign(value, t)


_si_ufunc = np.frompyfunc(_si_scalar, 1, 1)


def sine_integral(t):
    """Si(t) for a scalar or array argument, absolute error below 1e-12."""
    if np.ndim(t) == 0:
        return _si_scalar(t)
    return _si_ufunc(np.asarray(t, dtype=float)).astype(float)
