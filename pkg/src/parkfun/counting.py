"""Exact closed-form counts and expectations for parking-function statistics.

Counts are Python ints; expectations are ``fractions.Fraction``. Every
formula is evaluated in exact rationals because several exponents reach -1
at the edge of their range; the integer-valued ones are then checked for
integrality rather than truncated.
"""

from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable

from parkfun.errors import Defect, DomainError
from parkfun.prefseq import RKParams


def factorial(a: int) -> int:
    if a < 0:
        raise DomainError(f"factorial of negative {a}")
    return math.factorial(a)


def binomial(a: int, b: int) -> int:
    """C(a, b), taken as 0 when b < 0 or b > a."""
    if a < 0:
        raise DomainError(f"binomial with negative top {a}")
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


def multinomial(a: int, parts: Iterable[int]) -> int:
    parts = list(parts)
    if a < 0 or any(p < 0 for p in parts):
        raise DomainError(f"multinomial({a}; {parts}) has a negative argument")
    if sum(parts) != a:
        raise DomainError(f"multinomial parts {parts} do not sum to {a}")
    out = math.factorial(a)
    for p in parts:
        out //= math.factorial(p)
    return out


def _power(base: int, exp: int) -> Fraction:
    # 0**0 == 1 and (-1)**0 == 1 as in Python
    if exp >= 0:
        return Fraction(base**exp)
    if base == 0:
        raise Defect(f"0 raised to negative power {exp}")
    return Fraction(1, base ** (-exp))


def _as_count(value: Fraction, what: str) -> int:
    if value.denominator != 1 or value < 0:
        raise Defect(f"{what} evaluated to {value}, not a non-negative integer")
    return value.numerator


# -- classical ----------------------------------------------------------------


def count_parking_functions(n: int) -> int:
    """(n+1)^(n-1); the empty sequence makes n = 0 give 1."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    return _as_count(_power(n + 1, n - 1), f"|PF_{n}|")


def count_fixed_classical(n: int, k: int) -> int:
    """Parking functions of length n with exactly k fixed points."""
    if n < 0 or not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got n={n}, k={k}")
    value = Fraction(binomial(n + 1, k) * (n ** (n - k + 1) + (-1) ** (n + k)), (n + 1) ** 2)
    return _as_count(value, f"fixed-point count (n={n}, k={k})")


def _cycle_sum(circle: int, n_free: int, m: int, k: int) -> Fraction:
    """Inclusion-exclusion sum shared by the classical and prime cycle counts.

    ``circle`` is the number of spots on the circle and ``n_free`` the
    largest total number of indices the selected m-cycles may use.
    """
    total = Fraction(0)
    arrangements = math.factorial(m - 1)
    ell = 0
    while (k + ell) * m <= n_free:
        j = k + ell
        rest = circle - j * m
        term = Fraction(arrangements**j, math.factorial(k) * math.factorial(ell))
        term *= multinomial(circle, [m] * j + [rest])
        term *= _power(circle, n_free - j * m)
        total += -term if ell % 2 else term
        ell += 1
    return total


def count_cycles_classical(n: int, m: int, k: int) -> int:
    """Parking functions of length n with exactly k cycles of length m."""
    if m < 1 or k < 0 or k * m > n:
        raise DomainError(f"need m >= 1, k >= 0, km <= n; got n={n}, m={m}, k={k}")
    # exponent n-(k+l)m-1 of (n+1); multinomial tail n-(k+l)m+1
    value = _cycle_sum(n + 1, n, m, k) / (n + 1)
    return _as_count(value, f"cycle count (n={n}, m={m}, k={k})")


def expected_cycles_classical(n: int, m: int) -> Fraction:
    if not 1 <= m <= n:
        raise DomainError(f"need 1 <= m <= n, got n={n}, m={m}")
    return Fraction(math.factorial(m - 1) * math.comb(n + 1, m), (n + 1) ** m)


def count_sorted_prefix_classical(n: int, s: int) -> int:
    """Parking functions of length n with pi_1 < ... < pi_s."""
    if n < 0 or not 0 <= s <= n:
        raise DomainError(f"need 0 <= s <= n, got n={n}, s={s}")
    value = binomial(n + 1, s) * _power(n + 1, n - s - 1)
    return _as_count(value, f"sorted-prefix count (n={n}, s={s})")


# -- prime ----------------------------------------------------------------------


def count_prime_parking_functions(n: int) -> int:
    if n < 1:
        raise DomainError(f"prime parking functions need n >= 1, got {n}")
    return 1 if n == 1 else (n - 1) ** (n - 1)


def count_fixed_prime(n: int, k: int) -> int:
    """Prime parking functions of length n with k fixed points.

    Evaluated as stated for 0 <= k <= n-1. At n = 1 this yields 1 for k = 0
    although the only prime parking function, (1), has one fixed point.
    """
    if n < 1 or not 0 <= k <= n - 1:
        raise DomainError(f"need n >= 1 and 0 <= k <= n-1, got n={n}, k={k}")
    return binomial(n - 1, k) * (n - 2) ** (n - k - 1)


def count_cycles_prime(n: int, m: int, k: int) -> int:
    if n < 1 or m < 1 or k < 0 or k * m > n - 1:
        raise DomainError(f"need m >= 1, k >= 0, km <= n-1; got n={n}, m={m}, k={k}")
    # exponent n-(k+l)m-1 of (n-1); multinomial tail n-(k+l)m-1
    value = _cycle_sum(n - 1, n - 1, m, k)
    return _as_count(value, f"prime cycle count (n={n}, m={m}, k={k})")


def expected_cycles_prime(n: int, m: int) -> Fraction:
    if not 1 <= m <= n - 1:
        raise DomainError(f"need 1 <= m <= n-1, got n={n}, m={m}")
    return Fraction(math.factorial(m - 1) * math.comb(n - 1, m), (n - 1) ** m)


def count_sorted_prefix_prime(n: int, s: int) -> int:
    """Prime parking functions of length n with pi_1 < ... < pi_s."""
    if n < 2 or not 0 <= s <= n - 1:
        raise DomainError(f"need n >= 2 and 0 <= s <= n-1, got n={n}, s={s}")
    value = binomial(n - 1, s) * _power(n - 1, n - s - 1)
    return _as_count(value, f"prime sorted-prefix count (n={n}, s={s})")


# -- (r,k) ----------------------------------------------------------------------


def count_rk_parking_functions(n: int, p: RKParams) -> int:
    return count_sorted_prefix_rk(n, p, 0)


def count_sorted_prefix_rk(n: int, p: RKParams, s: int) -> int:
    """(r,k)-parking functions of length n with pi_1 < ... < pi_s."""
    if n < 0 or not 0 <= s <= n:
        raise DomainError(f"need 0 <= s <= n, got n={n}, s={s}")
    M = p.modulus(n)
    value = p.k * binomial(M, s) * _power(M, n - s - 1)
    return _as_count(value, f"(r,k) sorted-prefix count (n={n}, {p}, s={s})")


# -- serialization --------------------------------------------------------------


def format_count(value: int) -> str:
    return str(value)


def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def decimal_approx(value: Fraction, digits: int = 15) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(value.numerator) / Decimal(value.denominator))
