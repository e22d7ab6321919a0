"""Exact state-vector simulation of the Deutsch-Jozsa circuit.

The production path is the target-less circuit H^n . U_f . H^n |0...0>
with U_f the diagonal +/-1 phase oracle. The full (n+1)-qubit permutation
oracle is built only for cross-checking on small n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitstrings import BitString

MAX_QUBITS = 20
MAX_DENSE_QUBITS = 10
NORM_TOL = 1e-12


def _qubits_for_length(length: int) -> int:
    n = length.bit_length() - 1
    if length < 2 or (1 << n) != length:
        raise ValueError(f"length must be a power of two, got {length}")
    return n


@dataclass(frozen=True)
class DVState:
    amplitudes: np.ndarray
    n: int

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} amplitudes for n={self.n}, got {amps.shape}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True)
class ReducedOracle:
    """Diagonal phase oracle with entries (-1)**z_i."""

    signs: np.ndarray

    def __post_init__(self):
        signs = np.array(self.signs, dtype=float)
        _qubits_for_length(signs.size)
        if not np.all(np.abs(signs) == 1.0):
            raise ValueError("oracle signs must be exactly +1 or -1")
        signs.setflags(write=False)
        object.__setattr__(self, "signs", signs)

    @classmethod
    def from_bits(cls, z: BitString | str) -> "ReducedOracle":
        z = BitString.coerce(z)
        _qubits_for_length(z.N)
        return cls(z.signs())

    @property
    def n(self) -> int:
        return _qubits_for_length(self.signs.size)

    def matrix(self) -> np.ndarray:
        return np.diag(self.signs)


def prepare_uniform(n: int) -> DVState:
    """H^n |0...0>: every amplitude 2**(-n/2)."""
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"qubit count must satisfy 1 <= n <= {MAX_QUBITS}, got {n}")
    dim = 1 << n
    return DVState(np.full(dim, 1.0 / np.sqrt(dim), dtype=complex), n)


def apply_reduced_oracle(state: DVState, oracle: ReducedOracle) -> DVState:
    if oracle.signs.size != state.amplitudes.size:
        raise ValueError(
            f"dimension mismatch: state has {state.amplitudes.size} amplitudes, "
            f"oracle has {oracle.signs.size}"
        )
    return DVState(state.amplitudes * oracle.signs, state.n)


def fwht(values: np.ndarray) -> np.ndarray:
    """Normalized fast Walsh-Hadamard transform along the last axis.

    Equivalent to multiplying by H^{(x) n} in lexicographic basis order.
    Returns a new array.
    """
    a = np.array(values, dtype=np.result_type(values, float), copy=True)
    dim = a.shape[-1]
    n = _qubits_for_length(dim) if dim > 1 else 0
    lead = a.shape[:-1]
    h = 1
    while h < dim:
        # pair index i (bit h clear) with i + h
        v = a.reshape(*lead, dim // (2 * h), 2, h)
        top = v[..., 0, :].copy()
        bottom = v[..., 1, :]
        v[..., 0, :] += bottom
        v[..., 1, :] = top - bottom
        h *= 2
    return a * 2.0 ** (-n / 2)


def walsh_hadamard(state: DVState) -> DVState:
    return DVState(fwht(state.amplitudes), state.n)


def dj_final_state(z: BitString | str) -> DVState:
    z = BitString.coerce(z)
    n = _qubits_for_length(z.N)
    return walsh_hadamard(apply_reduced_oracle(prepare_uniform(n), ReducedOracle.from_bits(z)))


def dj_run(z: BitString | str) -> float:
    """Probability of reading out 0...0 after H^n U_f H^n |0...0>."""
    final = dj_final_state(z)
    return float(abs(final.amplitudes[0]) ** 2)


def build_full_oracle(n: int, z: BitString | str) -> np.ndarray:
    """Dense U_f : |x>|y> -> |x>|y XOR f(x)> in the ordered basis |x>|y>.

    Block diagonal with block X**f(x) for each x, so a 0/1 permutation.
    """
    z = BitString.coerce(z)
    if not 1 <= n <= MAX_DENSE_QUBITS:
        raise ValueError(f"qubit count must satisfy 1 <= n <= {MAX_DENSE_QUBITS}, got {n}")
    if z.N != 1 << n:
        raise ValueError(f"bit string length {z.N} does not match 2**n = {1 << n}")
    dim = 1 << (n + 1)
    u = np.zeros((dim, dim))
    for x, fx in enumerate(z.bits):
        for y in (0, 1):
            u[2 * x + (y ^ fx), 2 * x + y] = 1.0
    return u
