"""Oracle settings as N-bit strings, promise classification and enumeration.

Bits are indexed from 0 everywhere. Formulas written with a 1-based bit
index j (the phasor sum, the sign assignments g(j)) read bit ``z[j - 1]``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

DEFAULT_ENUMERATION_CAP = 24


class PromiseClass(str, enum.Enum):
    CONSTANT = "Constant"
    BALANCED = "Balanced"
    NEITHER = "Neither"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class BitString:
    """An oracle setting z = (z_0, ..., z_{N-1}) with N >= 2 even."""

    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError("bit values must be 0 or 1")
        if len(bits) < 2 or len(bits) % 2:
            raise ValueError(f"length must be an even integer >= 2, got {len(bits)}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def parse(cls, text: str) -> "BitString":
        text = text.strip()
        bad = set(text) - {"0", "1"}
        if bad:
            raise ValueError(f"bit string may only contain '0' and '1', got {sorted(bad)}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def coerce(cls, z: "BitString | str | Sequence[int]") -> "BitString":
        if isinstance(z, BitString):
            return z
        if isinstance(z, str):
            return cls.parse(z)
        return cls(tuple(z))

    @property
    def N(self) -> int:
        return len(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def complement(self) -> "BitString":
        return BitString(tuple(1 - b for b in self.bits))

    def signs(self) -> np.ndarray:
        """(-1)**z_i as a float array."""
        return 1.0 - 2.0 * np.asarray(self.bits, dtype=float)


def classify(z: BitString | str) -> PromiseClass:
    z = BitString.coerce(z)
    ones = sum(z.bits)
    if ones == 0 or ones == z.N:
        return PromiseClass.CONSTANT
    if 2 * ones == z.N:
        return PromiseClass.BALANCED
    return PromiseClass.NEITHER


def constant_pair(N: int) -> tuple[BitString, BitString]:
    return BitString((0,) * N), BitString((1,) * N)


def asb_pair(N: int) -> tuple[BitString, BitString]:
    """The two antisymmetric balanced strings 0^{N/2}1^{N/2} and 1^{N/2}0^{N/2}."""
    if N < 2 or N % 2:
        raise ValueError(f"N must be an even integer >= 2, got {N}")
    h = N // 2
    return BitString((0,) * h + (1,) * h), BitString((1,) * h + (0,) * h)


def enumerate_balanced(N: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[BitString]:
    """Yield every balanced N-bit string once, in lexicographic order.

    Walking the combinations of zero positions in order gives lexicographic
    string order, since a string whose first zero comes earlier sorts first.
    """
    if N < 2 or N % 2:
        raise ValueError(f"N must be an even integer >= 2, got {N}")
    if N > cap:
        raise ValueError(f"N={N} exceeds the enumeration cap of {cap}")
    return _balanced(N)


def _balanced(N: int) -> Iterator[BitString]:
    for zeros in itertools.combinations(range(N), N // 2):
        bits = [1] * N
        for i in zeros:
            bits[i] = 0
        yield BitString(tuple(bits))


def balanced_sign_matrix(N: int, cap: int = DEFAULT_ENUMERATION_CAP) -> np.ndarray:
    """All balanced strings as rows of (-1)**z, shape (C(N, N/2), N)."""
    rows = [z.signs() for z in enumerate_balanced(N, cap)]
    return np.vstack(rows)


def random_balanced(N: int, rng: np.random.Generator) -> BitString:
    bits = np.zeros(N, dtype=int)
    bits[rng.permutation(N)[: N // 2]] = 1
    return BitString(tuple(bits.tolist()))
