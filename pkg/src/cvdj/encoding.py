"""Momentum-domain encoding of an N-bit string on a top-hat substrate.

The interval [-P, P] is cut into N bins of width 2P/N. Bin 0 is the
leftmost, so bit z_i sets the sign of the momentum slice
[-P + i*2P/N, -P + (i+1)*2P/N). Bins are half-open except the last,
which also holds p = P. All normalization lives in the substrate
(2P)**-1/2; the sign pattern f_z is a pure +/-1 indicator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitstrings import BitString
from .quadrature import adaptive_simpson


@dataclass(frozen=True)
class CVParams:
    N: int
    P: float

    def __post_init__(self):
        if self.N < 2 or self.N % 2:
            raise ValueError(f"N must be an even integer >= 2, got {self.N}")
        if not self.P > 0:
            raise ValueError(f"P must be positive, got {self.P}")
        object.__setattr__(self, "P", float(self.P))

    @property
    def bin_width(self) -> float:
        return 2.0 * self.P / self.N

    def bin_edges(self) -> np.ndarray:
        return -self.P + self.bin_width * np.arange(self.N + 1)


def tophat(p, P: float, P0: float = 0.0):
    """(2P)**-1/2 on the closed interval [P0 - P, P0 + P], zero elsewhere."""
    if not P > 0:
        raise ValueError(f"P must be positive, got {P}")
    p = np.asarray(p, dtype=float)
    out = np.where(np.abs(p - P0) <= P, 1.0 / np.sqrt(2.0 * P), 0.0)
    return out[()] if out.ndim == 0 else out


def bin_index(params: CVParams, p) -> np.ndarray:
    """Bin holding each momentum, or -1 outside [-P, P]."""
    p = np.asarray(p, dtype=float)
    idx = np.floor((p + params.P) / params.bin_width).astype(int)
    idx = np.where(p == params.P, params.N - 1, idx)
    inside = (p >= -params.P) & (p <= params.P)
    return np.where(inside, np.clip(idx, 0, params.N - 1), -1)


def _check_length(z: BitString, params: CVParams) -> None:
    if z.N != params.N:
        raise ValueError(f"bit string length {z.N} does not match N={params.N}")


def encode(z: BitString | str, params: CVParams, p):
    """The sign pattern f_z(p): (-1)**z_i on bin i, 0 outside [-P, P]."""
    z = BitString.coerce(z)
    _check_length(z, params)
    idx = bin_index(params, p)
    signs = z.signs()
    out = np.where(idx >= 0, signs[np.maximum(idx, 0)], 0.0)
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class MomentumSignal:
    """The encoded momentum amplitude p -> f_z(p) * tophat(p; P, 0)."""

    params: CVParams
    z: BitString

    def __post_init__(self):
        object.__setattr__(self, "z", BitString.coerce(self.z))
        _check_length(self.z, self.params)

    def __call__(self, p):
        return encode(self.z, self.params, p) * tophat(p, self.params.P)

    def norm_squared(self, tol: float = 1e-12) -> float:
        """int |value|^2 dp by quadrature split at the bin edges."""
        P = self.params.P
        edges = self.params.bin_edges()
        return adaptive_simpson(lambda p: self(p) ** 2, -P, P, tol=tol, breakpoints=edges[1:-1])


def encoded_momentum(z: BitString | str, params: CVParams) -> MomentumSignal:
    return MomentumSignal(params, BitString.coerce(z))


def grid_sample(signal: MomentumSignal, M: int) -> tuple[np.ndarray, np.ndarray]:
    """Sample the signal at the M cell midpoints of a uniform grid on [-P, P].

    M must be a power of two, at least 4N and divisible by N, so every
    bin holds M/N whole cells and no sample sits on a bin edge.
    """
    N, P = signal.params.N, signal.params.P
    if M < 1 or M & (M - 1):
        raise ValueError(f"sample count must be a power of two, got {M}")
    if M % N:
        raise ValueError(f"sample count {M} is not divisible by N={N}")
    if M < 4 * N:
        raise ValueError(f"sample count {M} is below 4N={4 * N}")
    dp = 2.0 * P / M
    p = -P + dp * (np.arange(M) + 0.5)
    return p, signal(p)
