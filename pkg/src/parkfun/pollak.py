"""Circle-argument machinery for classical, prime and (r,k)-parking functions.

Tuples in ``[M]^n`` are grouped into orbits under the diagonal shift
``(a_1..a_n) -> (a_1+1..a_n+1) mod M``. Each orbit holds exactly one
parking function when ``M = n+1``, exactly one prime parking function when
``M = n-1``, and exactly ``k`` (r,k)-parking functions when ``M = k+nr``.
Everything here builds on that: canonicalization, exact uniform sampling,
and duplicate-free enumeration over orbit representatives.

Values of a ``ModTuple`` live in ``1..M``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from parkfun.errors import BudgetExceeded, Defect, DomainError
from parkfun.prefseq import (
    PrefSeq,
    RKParams,
    is_parking_function,
    is_prime_parking_function,
    is_rk_parking_function,
)

ENUM_BUDGET = 10**8
_CHUNK = 1 << 17


@dataclass(frozen=True)
class ModTuple:
    values: Tuple[int, ...]
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if self.modulus < 1:
            raise DomainError(f"modulus must be positive, got {self.modulus}")
        for v in self.values:
            if not 1 <= v <= self.modulus:
                raise DomainError(f"entry {v} outside 1..{self.modulus}")

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class CircularOutcome:
    occupied: Dict[int, int]  # spot -> car
    empty_spots: FrozenSet[int]


def rotate(t: ModTuple, c: int) -> ModTuple:
    M = t.modulus
    return ModTuple(tuple((v - 1 + c) % M + 1 for v in t.values), M)


def valid_rotations(t: ModTuple, pred: Callable[[PrefSeq], bool]) -> List[int]:
    """All shifts ``c`` in ``0..M-1`` whose rotation satisfies ``pred``."""
    M = t.modulus
    return [c for c in range(M) if pred(tuple((v - 1 + c) % M + 1 for v in t.values))]


def circular_park(t: ModTuple) -> CircularOutcome:
    """Park cars in order on a circle of M spots, wrapping from M to 1."""
    M, n = t.modulus, len(t.values)
    if M <= n:
        raise DomainError(f"circle of {M} spots cannot hold {n} cars")
    # nxt[s]: candidate free spot at or after s (0-indexed), path-halved
    nxt = list(range(M))
    occupied = {}

    def find(s):
        while nxt[s] != s:
            nxt[s] = nxt[nxt[s]]
            s = nxt[s]
        return s

    for car, want in enumerate(t.values, 1):
        s = find(want - 1)
        occupied[s + 1] = car
        nxt[s] = find((s + 1) % M)  # M > n keeps a free spot, so find() terminates
    empty = frozenset(s for s in range(1, M + 1) if s not in occupied)
    return CircularOutcome(occupied, empty)


def _spot_counts(values: Sequence[int], M: int) -> List[int]:
    counts = [0] * (M + 1)
    for v in values:
        counts[v] += 1
    return counts


def _excess_argmin(values: Sequence[int], M: int, last: bool) -> int:
    """Spot e in 1..M minimising the running sum of (count(j) - 1) over j <= e.

    The first minimiser is the empty spot of circular parking when M = n+1;
    the last minimiser is the spot a prime rotation sends to M when M = n-1.
    """
    counts = _spot_counts(values, M)
    running, best, arg = 0, None, 0
    for j in range(1, M + 1):
        running += counts[j] - 1
        if best is None or running < best or (last and running == best):
            best, arg = running, j
    return arg


def _checked(seq: PrefSeq, pred, what: str) -> PrefSeq:
    if not pred(seq):
        raise Defect(f"canonical {what} rotation {seq} fails its predicate")
    return seq


def canonicalize_classical(t: ModTuple) -> PrefSeq:
    """The unique parking-function rotation of ``t`` (requires M = n+1).

    Circular parking leaves one spot e empty; shifting by ``M - e`` moves it
    to spot n+1, which is exactly the parking-function condition.
    """
    n, M = len(t.values), t.modulus
    if n < 1 or M != n + 1:
        raise DomainError(f"classical canonicalization needs n >= 1 and M = n+1 (n={n}, M={M})")
    (e,) = circular_park(t).empty_spots
    c = (M - e) % M
    return _checked(rotate(t, c).values, is_parking_function, "classical")


def canonicalize_prime(t: ModTuple) -> PrefSeq:
    """The unique prime-parking-function rotation of ``t`` (requires M = n-1)."""
    n, M = len(t.values), t.modulus
    if n < 2 or M != n - 1:
        raise DomainError(f"prime canonicalization needs n >= 2 and M = n-1 (n={n}, M={M})")
    c = (M - _excess_argmin(t.values, M, last=True)) % M
    return _checked(rotate(t, c).values, is_prime_parking_function, "prime")


def rk_representatives(t: ModTuple, p: RKParams) -> List[PrefSeq]:
    """The k rotations of ``t`` that are (r,k)-parking functions, by ascending shift."""
    n, M = len(t.values), t.modulus
    if M != p.modulus(n):
        raise DomainError(f"(r,k) orbits need M = k+nr = {p.modulus(n)}, got {M}")
    shifts = valid_rotations(t, lambda s: is_rk_parking_function(s, p))
    if len(shifts) != p.k:
        raise Defect(f"{t} has {len(shifts)} valid (r,k) rotations, expected {p.k}")
    return [rotate(t, c).values for c in shifts]


# -- sampling ---------------------------------------------------------------


def _draw(rng: np.random.Generator, n: int, M: int) -> Tuple[int, ...]:
    return tuple(int(v) for v in rng.integers(1, M + 1, size=n))


def sample_classical(n: int, rng: np.random.Generator) -> PrefSeq:
    """Exactly uniform draw from the parking functions of length n."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if n == 0:
        return ()
    return canonicalize_classical(ModTuple(_draw(rng, n, n + 1), n + 1))


def sample_prime(n: int, rng: np.random.Generator) -> PrefSeq:
    if n < 1:
        raise DomainError(f"prime parking functions need n >= 1, got {n}")
    if n == 1:
        return (1,)
    return canonicalize_prime(ModTuple(_draw(rng, n, n - 1), n - 1))


def sample_rk(n: int, p: RKParams, rng: np.random.Generator) -> PrefSeq:
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if n == 0:
        return ()
    M = p.modulus(n)
    reps = rk_representatives(ModTuple(_draw(rng, n, M), M), p)
    return reps[int(rng.integers(p.k))]


# -- vectorized orbit canonicalization ----------------------------------------


def _canonical_batch(vals: np.ndarray, M: int, last: bool) -> np.ndarray:
    """Row-wise canonical rotation; vectorized form of ``_excess_argmin``."""
    rows = vals.shape[0]
    flat = (np.arange(rows, dtype=np.int64)[:, None] * M + (vals - 1)).ravel()
    counts = np.bincount(flat, minlength=rows * M).reshape(rows, M)
    running = np.cumsum(counts - 1, axis=1)
    if last:
        e = M - np.argmin(running[:, ::-1], axis=1)
    else:
        e = np.argmin(running, axis=1) + 1
    shift = (M - e) % M
    return (vals - 1 + shift[:, None]) % M + 1


def _representatives(n: int, M: int, lo: int, hi: int) -> np.ndarray:
    """Rows lo..hi-1 of the orbit representatives: first entry 1, rest base-M digits."""
    idx = np.arange(lo, hi, dtype=np.int64)
    out = np.empty((hi - lo, n), dtype=np.int64)
    out[:, 0] = 1
    for j in range(n - 1, 0, -1):
        out[:, j] = idx % M + 1
        idx //= M
    return out


def _chunk_classical(n: int, lo: int, hi: int) -> np.ndarray:
    return _canonical_batch(_representatives(n, n + 1, lo, hi), n + 1, last=False)


def _chunk_prime(n: int, lo: int, hi: int) -> np.ndarray:
    return _canonical_batch(_representatives(n, n - 1, lo, hi), n - 1, last=True)


def _chunk_rk(n: int, r: int, k: int, lo: int, hi: int) -> np.ndarray:
    M = k + n * r
    reps = _representatives(n, M, lo, hi)
    bounds = k + r * np.arange(n, dtype=np.int64)
    ok = np.empty((len(reps), M), dtype=bool)
    for c in range(M):
        rotated = np.sort((reps - 1 + c) % M + 1, axis=1)
        ok[:, c] = np.all(rotated <= bounds, axis=1)
    if np.any(ok.sum(axis=1) != k):
        raise Defect(f"an orbit of [{M}]^{n} lacks exactly {k} (r,k) rotations")
    row, c = np.nonzero(ok)
    return (reps[row] - 1 + c[:, None]) % M + 1


def _stream(worker, args: tuple, total: int, workers: int) -> Iterator[PrefSeq]:
    spans = [(lo, min(lo + _CHUNK, total)) for lo in range(0, total, _CHUNK)]
    jobs = [args + span for span in spans]
    if workers <= 1:
        for job in jobs:
            yield from map(tuple, worker(*job).tolist())
        return
    # map() keeps chunk order, so output is independent of worker count
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for block in pool.map(worker, *zip(*jobs)):
            yield from map(tuple, block.tolist())


def _guard(needed: int, budget: Optional[int]) -> None:
    budget = ENUM_BUDGET if budget is None else budget
    if needed > budget:
        raise BudgetExceeded(needed, budget, "orbit representatives")


def enumerate_classical(n: int, *, budget: Optional[int] = None, workers: int = 1) -> Iterator[PrefSeq]:
    """Yield every parking function of length n exactly once.

    Representatives with first entry 1 meet every orbit once, so the
    (n+1)^(n-1) canonical rotations are pairwise distinct.
    """
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    total = (n + 1) ** (n - 1) if n else 1
    _guard(total, budget)
    if n == 0:
        return iter([()])
    return _stream(_chunk_classical, (n,), total, workers)


def enumerate_prime(n: int, *, budget: Optional[int] = None, workers: int = 1) -> Iterator[PrefSeq]:
    if n < 1:
        raise DomainError(f"prime parking functions need n >= 1, got {n}")
    if n == 1:
        return iter([(1,)])
    total = (n - 1) ** (n - 1)
    _guard(total, budget)
    return _stream(_chunk_prime, (n,), total, workers)


def enumerate_rk(n: int, p: RKParams, *, budget: Optional[int] = None, workers: int = 1) -> Iterator[PrefSeq]:
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if n == 0:
        return iter([()])
    M = p.modulus(n)
    total = M ** (n - 1)
    # every representative is scanned over all M shifts
    _guard(total * M, budget)
    return _stream(_chunk_rk, (n, p.r, p.k), total, workers)
