"""Preference sequences, the parking predicates, and one-way-street parking.

Spots and cars are 1-indexed throughout; a preference sequence is a plain
tuple of positive ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from parkfun.errors import DomainError

PrefSeq = Tuple[int, ...]


def as_prefseq(values) -> PrefSeq:
    """Coerce an iterable of ints to a ``PrefSeq``, rejecting values < 1."""
    seq = tuple(int(v) for v in values)
    for i, v in enumerate(seq, 1):
        if v < 1:
            raise DomainError(f"preference of car {i} is {v}; values must be >= 1")
    return seq


@dataclass(frozen=True)
class RKParams:
    """Step ``r`` and offset ``k`` of an (r,k)-parking function."""

    r: int
    k: int

    def __post_init__(self):
        if self.r < 1 or self.k < 1:
            raise DomainError(f"(r,k) must be positive, got r={self.r}, k={self.k}")

    def bound(self, i: int) -> int:
        """Largest allowed value of the i-th smallest preference (1-indexed)."""
        return self.k + (i - 1) * self.r

    def modulus(self, n: int) -> int:
        return self.k + n * self.r


@dataclass(frozen=True)
class ParkOutcome:
    success: bool
    # assignment[i-1] is the spot taken by car i; partial on failure.
    assignment: Tuple[int, ...]
    failing_car: Optional[int] = None


def increasing_rearrangement(pi: Sequence[int]) -> PrefSeq:
    return tuple(sorted(pi))


def is_parking_function(pi: Sequence[int]) -> bool:
    return all(v <= i for i, v in enumerate(sorted(pi), 1))


def is_prime_parking_function(pi: Sequence[int]) -> bool:
    """True iff ``pi`` is a parking function and, for every 1 <= j <= n-1,
    at least j+1 preferences are <= j.

    The empty sequence is not prime.
    """
    n = len(pi)
    if n == 0:
        return False
    counts = [0] * (n + 1)
    for v in pi:
        if v > n:
            return False
        counts[v] += 1
    at_most = 0
    for j in range(1, n):
        at_most += counts[j]
        if at_most < j + 1:
            return False
    # the j <= n-1 conditions already force lambda_i <= i for i < n
    return True


def is_rk_parking_function(pi: Sequence[int], p: RKParams) -> bool:
    k, r = p.k, p.r
    return all(v <= k + (i - 1) * r for i, v in enumerate(sorted(pi), 1))


def simulate_line_parking(pi: Sequence[int]) -> ParkOutcome:
    """Park cars 1..n in order on spots 1..n; each takes the first free spot
    at or after its preference. A preference beyond n fails immediately."""
    n = len(pi)
    taken = [False] * (n + 2)
    assignment = []
    for car, want in enumerate(pi, 1):
        spot = want
        while spot <= n and taken[spot]:
            spot += 1
        if spot > n:
            return ParkOutcome(False, tuple(assignment), car)
        taken[spot] = True
        assignment.append(spot)
    return ParkOutcome(True, tuple(assignment))
