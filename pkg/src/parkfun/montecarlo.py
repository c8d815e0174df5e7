"""Seeded Monte Carlo estimates of expected cycle counts.

Samples are split into fixed-size chunks. Chunk ``i`` draws from
``PCG64(SeedSequence(seed, spawn_key=(i,)))`` so its stream does not depend
on how chunks are spread over workers, and per-chunk sums are exact ints,
so the aggregate is identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from parkfun import counting
from parkfun.cycles import count_m_cycles
from parkfun.errors import DomainError
from parkfun.pollak import sample_classical, sample_prime

CHUNK_SAMPLES = 10_000
_SAMPLERS = {"classical": sample_classical, "prime": sample_prime}


@dataclass(frozen=True)
class Estimate:
    n: int
    m: int
    variant: str
    mean: float
    std_error: float
    samples: int
    seed: int
    exact_value: Optional[Fraction] = None

    def within(self, sigmas: float) -> bool:
        """Whether ``exact_value`` lies within ``sigmas`` standard errors of the mean."""
        return abs(Fraction(self.mean) - self.exact_value) <= sigmas * Fraction(self.std_error)

    def to_dict(self) -> dict:
        return {
            "variant": self.variant,
            "n": self.n,
            "m": self.m,
            "mean": repr(self.mean),
            "std_error": repr(self.std_error),
            "samples": self.samples,
            "seed": self.seed,
            "exact_value": None if self.exact_value is None else counting.format_rational(self.exact_value),
        }


def stream_rng(seed: int, index: int) -> np.random.Generator:
    """Independent generator for substream ``index`` of master ``seed``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


def _chunk_moments(variant: str, n: int, m: int, seed: int, index: int, size: int) -> Tuple[int, int]:
    rng = stream_rng(seed, index)
    draw = _SAMPLERS[variant]
    s1 = s2 = 0
    for _ in range(size):
        c = count_m_cycles(draw(n, rng), m)
        s1 += c
        s2 += c * c
    return s1, s2


def estimate_expected_cycles(
    n: int, m: int, variant: str, samples: int, seed: int, workers: int = 1
) -> Estimate:
    if variant not in _SAMPLERS:
        raise DomainError(f"variant must be classical or prime, got {variant!r}")
    top = n if variant == "classical" else n - 1
    if not 1 <= m <= top:
        raise DomainError(f"need 1 <= m <= {top} for {variant} n={n}, got m={m}")
    if samples < 2:
        raise DomainError(f"need at least 2 samples, got {samples}")
    if not 0 <= seed < 2**64:
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed}")

    sizes = [min(CHUNK_SAMPLES, samples - lo) for lo in range(0, samples, CHUNK_SAMPLES)]
    jobs = [(variant, n, m, seed, i, size) for i, size in enumerate(sizes)]
    if workers <= 1 or len(jobs) == 1:
        moments = [_chunk_moments(*job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            moments = list(pool.map(_chunk_moments, *zip(*jobs)))
    s1 = sum(a for a, _ in moments)
    s2 = sum(b for _, b in moments)

    mean = Fraction(s1, samples)
    var = (s2 - s1 * mean) / (samples - 1)
    exact = (counting.expected_cycles_classical if variant == "classical"
             else counting.expected_cycles_prime)(n, m)
    return Estimate(n, m, variant, float(mean), math.sqrt(var / samples), samples, seed, exact)
