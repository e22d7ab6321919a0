"""Brute-force check that the ASB strings maximize the balanced phasor sum.

With P = 1 and x in [-pi/2, pi/2], the claim is that for every balanced
sign assignment g on j = 1..2m,

    |sum_j g(j) e^{i varphi_j(x)}| <= |S_ASB(x)|,

where S_ASB uses g = (+1)^m (-1)^m. The check runs on a finite grid over
[0, pi/2]; negative x follow from varphi_j(-x) = -varphi_j(x).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bitstrings import BitString, asb_pair, balanced_sign_matrix, enumerate_balanced
from .wavefunction import phasor_angles

MAX_N = 16
SLACK = 1e-9
CHUNK = 1024


@dataclass(frozen=True)
class SignAssignment:
    g: tuple[int, ...]

    def __post_init__(self):
        g = tuple(int(v) for v in self.g)
        if any(v not in (-1, 1) for v in g):
            raise ValueError("sign assignment entries must be +1 or -1")
        if len(g) < 2 or len(g) % 2:
            raise ValueError(f"sign assignment length must be even and >= 2, got {len(g)}")
        if sum(g) != 0:
            raise ValueError("sign assignment is not balanced: sum of g must be 0")
        object.__setattr__(self, "g", g)

    @classmethod
    def from_bits(cls, z: BitString | str) -> "SignAssignment":
        z = BitString.coerce(z)
        return cls(tuple(1 - 2 * b for b in z.bits))

    @property
    def m(self) -> int:
        return len(self.g) // 2

    def to_bits(self) -> BitString:
        return BitString(tuple((1 - v) // 2 for v in self.g))


def signed_sum(g: SignAssignment, x):
    """sum_{j=1}^{2m} g(j) exp(i varphi_j(x)) at P = 1."""
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > np.pi / 2 + 1e-12):
        raise ValueError("x must lie in [-pi/2, pi/2]")
    out = np.exp(1j * phasor_angles(2 * g.m, 1.0, x)) @ np.asarray(g.g, dtype=float)
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class DominanceResult:
    N: int
    holds: bool
    worst_margin: float
    witness: tuple[str, float] | None
    strings_checked: int
    grid: int


def _chunk_margins(signs: np.ndarray, cos_m: np.ndarray, sin_m: np.ndarray, ref: np.ndarray):
    re = signs @ cos_m
    im = signs @ sin_m
    return ref - np.hypot(re, im)


def verify_asb_dominance(N: int, grid: int = 2001, workers: int = 1) -> DominanceResult:
    """Compare every balanced string against ASB on ``grid`` points of [0, pi/2].

    ``worst_margin`` is the smallest |S_ASB| - |S_g| over non-ASB strings
    at x > 0 (0.0 when N = 2, where ASB are the only balanced strings).
    ``holds`` requires every margin, x = 0 included, to be >= -1e-9.
    A witness (string, x) is reported only when the claim fails.
    """
    if N < 2 or N % 2:
        raise ValueError(f"N must be an even integer >= 2, got {N}")
    if N > MAX_N:
        raise ValueError(f"N={N} exceeds the enumeration cap of {MAX_N}")
    if grid < 2:
        raise ValueError(f"grid must have at least 2 points, got {grid}")
    x = np.linspace(0.0, np.pi / 2, grid)
    angles = phasor_angles(N, 1.0, x).T  # (N, grid)
    cos_m, sin_m = np.cos(angles), np.sin(angles)
    asb = asb_pair(N)[0].signs()
    ref = np.hypot(asb @ cos_m, asb @ sin_m)

    signs = balanced_sign_matrix(N, cap=MAX_N)
    is_asb = np.abs(signs @ asb) == N
    chunks = [slice(i, i + CHUNK) for i in range(0, len(signs), CHUNK)]

    def reduce(sl: slice):
        margins = _chunk_margins(signs[sl], cos_m, sin_m, ref)
        overall = margins.min()
        interior = margins[~is_asb[sl], 1:]
        if interior.size == 0:
            return overall, np.inf, None
        r, c = np.unravel_index(np.argmin(interior), interior.shape)
        row = np.nonzero(~is_asb[sl])[0][r] + sl.start
        return overall, interior[r, c], (int(row), float(x[1 + c]))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(reduce, chunks))
    else:
        parts = [reduce(sl) for sl in chunks]

    overall = min(p[0] for p in parts)
    # first chunk wins ties so the answer does not depend on worker count
    best = min(range(len(parts)), key=lambda i: (parts[i][1], i))
    worst_margin, where = parts[best][1], parts[best][2]
    holds = bool(overall >= -SLACK and (where is None or worst_margin >= -SLACK))
    witness = None
    if not holds and where is not None:
        z = "".join("0" if v > 0 else "1" for v in signs[where[0]])
        witness = (z, where[1])
    return DominanceResult(
        N=N,
        holds=holds,
        worst_margin=0.0 if where is None else float(worst_margin),
        witness=witness,
        strings_checked=len(signs),
        grid=grid,
    )


def balanced_assignments(N: int):
    for z in enumerate_balanced(N, cap=MAX_N):
        yield SignAssignment.from_bits(z)
