"""Position-domain wavefunctions of the encoded momentum states.

Fourier convention: phi~(p) = (2 pi)^-1/2 int e^{+ipx} phi(x) dx and
phi(x) = (2 pi)^-1/2 int e^{-ipx} phi~(p) dp. Under it, each momentum bin
contributes a phasor and the wavefunction of string z is

    phi_z(x) = sin(Px/N) / (sqrt(P pi) x) * sum_j (-1)**z_{j-1} exp(i varphi_j(x))

with varphi_j(x) = (N - (2j - 1)) / N * P x for j = 1..N.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bitstrings import BitString
from .encoding import CVParams, encoded_momentum, grid_sample

SWITCH_SCALE = 1e-6
MIN_SAMPLES_PER_BIT = 64


def phasor_angles(N: int, P: float, x):
    """varphi_j(x) for j = 1..N along the last axis."""
    if N < 2 or N % 2:
        raise ValueError(f"N must be an even integer >= 2, got {N}")
    j = np.arange(1, N + 1)
    coef = (N - (2 * j - 1)) / N * P
    return np.multiply.outer(np.asarray(x, dtype=float), coef)


def _envelope(params: CVParams, x: np.ndarray) -> np.ndarray:
    """sin(Px/N) / (sqrt(P pi) x), with a Taylor branch near x = 0."""
    N, P = params.N, params.P
    u = P * x / N
    small = np.abs(x) < SWITCH_SCALE * N / P
    safe_x = np.where(small, 1.0, x)
    direct = np.sin(u) / safe_x
    u2 = u * u
    series = (P / N) * (1.0 - u2 / 6.0 + u2 * u2 / 120.0)
    return np.where(small, series, direct) / np.sqrt(P * np.pi)


@dataclass(frozen=True)
class PositionWavefunction:
    params: CVParams
    z: BitString

    def __post_init__(self):
        z = BitString.coerce(self.z)
        if z.N != self.params.N:
            raise ValueError(f"bit string length {z.N} does not match N={self.params.N}")
        object.__setattr__(self, "z", z)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        angles = phasor_angles(self.params.N, self.params.P, x)
        total = np.exp(1j * angles) @ self.z.signs()
        out = _envelope(self.params, x) * total
        return out[()] if out.ndim == 0 else out


def wavefunction(z: BitString | str, params: CVParams) -> PositionWavefunction:
    return PositionWavefunction(params, BitString.coerce(z))


def evaluate(wf: PositionWavefunction, x):
    return wf(x)


@dataclass(frozen=True)
class Pdf:
    """A position density x -> value >= 0, vectorized over x.

    ``P`` is kept so integrators can split at the multiples of pi/P.
    """

    fn: Callable[[np.ndarray], np.ndarray]
    P: float
    label: str = ""

    def __call__(self, x):
        out = self.fn(np.asarray(x, dtype=float))
        return out[()] if np.ndim(out) == 0 else out


@functools.lru_cache(maxsize=512)
def _pdf_cached(bits: tuple[int, ...], N: int, P: float) -> Pdf:
    wf = PositionWavefunction(CVParams(N, P), BitString(bits))
    return Pdf(lambda x: np.abs(wf(x)) ** 2, P, "".join(map(str, bits)))


def pdf(wf: PositionWavefunction) -> Pdf:
    """|phi_z(x)|^2. A string and its complement share one cached Pdf."""
    bits = wf.z.bits
    canonical = min(bits, tuple(1 - b for b in bits))
    return _pdf_cached(canonical, wf.params.N, wf.params.P)


def _check_P(P: float) -> None:
    if not P > 0:
        raise ValueError(f"P must be positive, got {P}")


def closed_form_constant_pdf(P: float) -> Pdf:
    """sin^2(Px) / (P pi x^2), equal to P/pi at x = 0."""
    _check_P(P)
    P = float(P)

    def fn(x):
        return P / np.pi * np.sinc(P * x / np.pi) ** 2

    return Pdf(fn, P, "constant")


def closed_form_asb_pdf(P: float) -> Pdf:
    """(cos(Px) - 1)^2 / (P pi x^2), equal to 0 at x = 0."""
    _check_P(P)
    P = float(P)

    # (cos y - 1)^2 = 4 sin^4(y/2) avoids cancellation near y = 2k pi
    def fn(x):
        return P / np.pi * np.sin(P * x / 2) ** 2 * np.sinc(P * x / (2 * np.pi)) ** 2

    return Pdf(fn, P, "asb")


@dataclass(frozen=True)
class CrosscheckResult:
    deviation: float
    under_resolved: bool
    M: int
    points: int


def fft_crosscheck(
    z: BitString | str, params: CVParams, M: int, X: float, pad: int = 16
) -> CrosscheckResult:
    """Max |FFT inverse transform - phasor sum| over positions in [-X, X].

    The momentum signal is sampled at M cell midpoints, zero-padded to
    L = pad * M and transformed with the e^{-ipx} kernel. The comparison
    positions x_l = l * 2 pi / (L dp) are the FFT output grid itself, a
    fixed set of spacing pi / (pad P) for every M.
    """
    z = BitString.coerce(z)
    if M < 1 or M & (M - 1):
        raise ValueError(f"M must be a power of two, got {M}")
    signal = encoded_momentum(z, params)
    p, values = grid_sample(signal, M)
    dp = p[1] - p[0]
    L = pad * M
    dx = 2.0 * np.pi / (L * dp)
    lmax = int(np.floor(X / dx + 1e-9))
    if lmax >= L // 2:
        raise ValueError(f"window X={X} exceeds the transform's alias-free range")
    spectrum = np.fft.fft(values, n=L)
    ell = np.arange(-lmax, lmax + 1)
    x = ell * dx
    # sum_k s_k e^{-i p_k x_l} with p_k = p_0 + k dp and dp dx = 2 pi / L
    numeric = dp / np.sqrt(2.0 * np.pi) * np.exp(-1j * p[0] * x) * spectrum[ell % L]
    exact = wavefunction(z, params)(x)
    return CrosscheckResult(
        deviation=float(np.max(np.abs(numeric - exact))),
        under_resolved=M < MIN_SAMPLES_PER_BIT * params.N,
        M=M,
        points=x.size,
    )
