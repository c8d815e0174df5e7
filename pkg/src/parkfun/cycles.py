"""Fixed points and cycle statistics of the functional graph ``i -> pi_i``."""

from __future__ import annotations

import json
from collections import Counter
from typing import Sequence, Set

from parkfun.errors import DomainError


class CycleCensus(Counter):
    """Map from cycle length to the number of cycles of that length.

    Each cycle is counted once as an unordered cyclic structure. Missing
    lengths read as 0.
    """

    def nodes(self) -> int:
        """Number of indices lying on some cycle."""
        return sum(m * c for m, c in self.items())

    def to_dict(self) -> dict:
        return {str(m): c for m, c in sorted(self.items()) if c}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def fixed_points(pi: Sequence[int]) -> Set[int]:
    return {i for i, v in enumerate(pi, 1) if v == i}


def _check_self_map(pi: Sequence[int]) -> None:
    n = len(pi)
    for i, v in enumerate(pi, 1):
        if not 1 <= v <= n:
            raise DomainError(f"pi_{i} = {v} is outside 1..{n}; not a self-map")


def cycle_census(pi: Sequence[int]) -> CycleCensus:
    """Count cycles of every length in O(n) time.

    Walks from each unvisited index, marking nodes in-progress with the
    walk id; hitting a node of the current walk closes a new cycle.
    """
    _check_self_map(pi)
    n = len(pi)
    # 0 = unvisited, w > 0 = on walk w (finished once a later walk starts)
    state = [0] * (n + 1)
    census = CycleCensus()
    for start in range(1, n + 1):
        if state[start]:
            continue
        node = start
        while not state[node]:
            state[node] = start
            node = pi[node - 1]
        if state[node] == start:
            length = 1
            cur = pi[node - 1]
            while cur != node:
                cur = pi[cur - 1]
                length += 1
            census[length] += 1
    return census


def count_m_cycles(pi: Sequence[int], m: int) -> int:
    if m < 1:
        raise DomainError(f"cycle length must be >= 1, got {m}")
    return cycle_census(pi)[m]
