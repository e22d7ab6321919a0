"""Repeated-query decisions, Chernoff bounds and the classical baselines.

Each CV query detects (returns 1) with the window probability of the
oracle's true class. m independent queries give a binomial detection
count, and the decision thresholds it at m/2. A count of exactly m/2 is
read as Balanced.

Randomness comes from numpy's Philox4x64-10 counter-based generator,
keyed through SeedSequence((seed, stream, block)). Stream 0 draws for
constant truth, stream 1 for balanced truth; Monte Carlo runs are cut
into fixed-size blocks, one key per block, so results do not depend on
how many workers process the blocks.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from .bitstrings import BitString, PromiseClass, classify
from .measurement import asb_window_prob, constant_window_prob, optimal_delta

RNG_ALGORITHM = "philox4x64-10/seedsequence(seed,stream,block)"
BLOCK_DRAWS = 1 << 20

_STREAMS = {PromiseClass.CONSTANT: 0, PromiseClass.BALANCED: 1}


def generator(seed: int, stream: int = 0, block: int = 0) -> np.random.Generator:
    ss = np.random.SeedSequence([int(seed), int(stream), int(block)])
    return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True)
class QueryModel:
    p_detect_constant: float
    p_detect_balanced: float
    illustrative_mode: bool = False

    def __post_init__(self):
        pc, pb = self.p_detect_constant, self.p_detect_balanced
        if not (0.0 <= pb < 0.5 < pc <= 1.0):
            raise ValueError(
                "detection probabilities must satisfy 0 <= p_balanced < 1/2 < p_constant <= 1, "
                f"got p_constant={pc}, p_balanced={pb}"
            )

    @classmethod
    def from_window(cls, P: float = 1.0) -> "QueryModel":
        """True detection probabilities at the optimal window, about 0.7737 / 0.1609."""
        delta = optimal_delta(P)
        return cls(constant_window_prob(P, delta), asb_window_prob(P, delta))

    @classmethod
    def illustrative(cls) -> "QueryModel":
        return cls(0.75, 0.25, illustrative_mode=True)

    def p_detect(self, truth: PromiseClass) -> float:
        if truth is PromiseClass.CONSTANT:
            return self.p_detect_constant
        if truth is PromiseClass.BALANCED:
            return self.p_detect_balanced
        raise ValueError(f"truth must be Constant or Balanced, got {truth}")


def _truth(truth) -> PromiseClass:
    truth = PromiseClass(truth)
    if truth is PromiseClass.NEITHER:
        raise ValueError("truth must be Constant or Balanced")
    return truth


def run_trials(model: QueryModel, truth, m: int, seed: int = 0) -> int:
    """Detections in m independent queries against an oracle of class ``truth``."""
    if m < 1:
        raise ValueError(f"query count m must be >= 1, got {m}")
    truth = _truth(truth)
    rng = generator(seed, _STREAMS[truth])
    return int(np.count_nonzero(rng.random(m) < model.p_detect(truth)))


def decide(detections: int, m: int) -> PromiseClass:
    return PromiseClass.CONSTANT if 2 * detections > m else PromiseClass.BALANCED


def chernoff_lower(mu: float, eps: float) -> float:
    """Bound on Pr[X < (1 - eps) mu]: exp(-mu eps^2 / 2)."""
    _check_chernoff(mu, eps)
    return math.exp(-mu * eps * eps / 2)


def chernoff_upper(mu: float, eps: float) -> float:
    """Bound on Pr[X > (1 + eps) mu]: exp(-mu eps^2 / 4)."""
    _check_chernoff(mu, eps)
    return math.exp(-mu * eps * eps / 4)


def _check_chernoff(mu: float, eps: float) -> None:
    if not mu > 0:
        raise ValueError(f"mu must be positive, got {mu}")
    if not 0 < eps <= 1:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")


def decision_error_bound(model: QueryModel, truth, m: int) -> float:
    """Chernoff bound on misclassifying ``truth`` after m queries.

    eps puts (1 -/+ eps) mu at the m/2 threshold. On the balanced side
    eps is capped at 1, which only loosens the bound.
    """
    truth = _truth(truth)
    p = model.p_detect(truth)
    if truth is PromiseClass.CONSTANT:
        return chernoff_lower(m * p, 1 - 1 / (2 * p))
    if p == 0:
        return 0.0
    return chernoff_upper(m * p, min(1 / (2 * p) - 1, 1.0))


def success_bound(m: int) -> float:
    if m < 1:
        raise ValueError(f"query count m must be >= 1, got {m}")
    return 1.0 - math.exp(-m / 24)


@dataclass(frozen=True)
class AmplificationReport:
    """Monte Carlo summary for one true class.

    ``detections`` and ``decision`` describe the median run; the error
    rate counts every run whose decision differs from ``truth``.
    """

    truth: str
    m: int
    runs: int
    detections: int
    decision: str
    errors: int
    empirical_error: float
    chernoff_bound: float
    seed: int
    rng: str = RNG_ALGORITHM

    def to_dict(self) -> dict:
        return asdict(self)


def _block_detections(p: float, m: int, rows: int, seed: int, stream: int, block: int) -> np.ndarray:
    rng = generator(seed, stream, block)
    return np.count_nonzero(rng.random((rows, m)) < p, axis=1)


def monte_carlo_error(
    model: QueryModel, m: int, runs: int, seed: int = 0, workers: int = 1
) -> tuple[AmplificationReport, AmplificationReport]:
    """Empirical error of the m/2 threshold rule, (constant report, balanced report)."""
    if m < 1:
        raise ValueError(f"query count m must be >= 1, got {m}")
    if runs < 1:
        raise ValueError(f"runs must be >= 1, got {runs}")
    rows = max(1, BLOCK_DRAWS // m)
    blocks = [(b, min(rows, runs - b * rows)) for b in range(math.ceil(runs / rows))]

    reports = []
    for truth in (PromiseClass.CONSTANT, PromiseClass.BALANCED):
        p, stream = model.p_detect(truth), _STREAMS[truth]

        def work(block):
            return _block_detections(p, m, block[1], seed, stream, block[0])

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(work, blocks))
        else:
            parts = [work(b) for b in blocks]
        counts = np.concatenate(parts)
        said_constant = 2 * counts > m
        wrong = ~said_constant if truth is PromiseClass.CONSTANT else said_constant
        errors = int(np.count_nonzero(wrong))
        median = int(np.sort(counts)[(runs - 1) // 2])
        reports.append(
            AmplificationReport(
                truth=truth.value,
                m=m,
                runs=runs,
                detections=median,
                decision=decide(median, m).value,
                errors=errors,
                empirical_error=errors / runs,
                chernoff_bound=decision_error_bound(model, truth, m),
                seed=seed,
            )
        )
    return reports[0], reports[1]


def classical_probabilistic_bound(N: int, m: int) -> float:
    """Success probability of m samples without replacement: 1 - prod (N/2-j+1)/(N-j+1).

    More than N/2 samples always expose a balanced string, so m > N/2
    returns 1.
    """
    if N < 2 or N % 2:
        raise ValueError(f"N must be an even integer >= 2, got {N}")
    if m < 1:
        raise ValueError(f"query count m must be >= 1, got {m}")
    if m > N // 2:
        return 1.0
    j = np.arange(m, dtype=float)
    return float(1.0 - np.prod((N / 2 - j) / (N - j)))


class ClassicalResult(NamedTuple):
    answer: PromiseClass
    queries: int
    promise_held: bool


def classical_deterministic(z: BitString | str) -> ClassicalResult:
    """Query z_0, z_1, ... until an output differs or N/2 + 1 agree."""
    z = BitString.coerce(z)
    first = z.bits[0]
    limit = z.N // 2 + 1
    for q in range(1, limit):
        if z.bits[q] != first:
            answer = PromiseClass.BALANCED
            queries = q + 1
            break
    else:
        answer = PromiseClass.CONSTANT
        queries = limit
    return ClassicalResult(answer, queries, classify(z) is not PromiseClass.NEITHER)
