from collections import Counter
from fractions import Fraction

import pytest

from parkfun.counting import (
    binomial,
    count_cycles_classical,
    count_cycles_prime,
    count_fixed_classical,
    count_fixed_prime,
    count_parking_functions,
    count_prime_parking_functions,
    count_rk_parking_functions,
    count_sorted_prefix_classical,
    count_sorted_prefix_prime,
    count_sorted_prefix_rk,
    decimal_approx,
    expected_cycles_classical,
    expected_cycles_prime,
    factorial,
    format_rational,
    multinomial,
)
from parkfun.cycles import cycle_census, fixed_points
from parkfun.errors import DomainError
from parkfun.prefseq import RKParams


def test_primitives():
    assert binomial(4, 2) == 6
    assert binomial(3, 5) == 0 and binomial(3, -1) == 0
    assert multinomial(4, [2, 2, 0]) == 6
    assert multinomial(0, []) == 1
    assert factorial(0) == 1
    for bad in (lambda: binomial(-1, 0), lambda: factorial(-2), lambda: multinomial(3, [2, 2]),
                lambda: multinomial(2, [3, -1])):
        with pytest.raises(DomainError):
            bad()


@pytest.mark.parametrize("n, total", [(0, 1), (1, 1), (3, 16), (8, 9**7)])
def test_count_parking_functions(n, total):
    assert count_parking_functions(n) == total


def test_counts_exceed_64_bits():
    assert count_parking_functions(20) == 21**19 > 2**64


def test_fixed_classical_values():
    assert [count_fixed_classical(3, k) for k in range(4)] == [5, 7, 3, 1]
    assert count_fixed_classical(1, 1) == 1 and count_fixed_classical(1, 0) == 0
    assert all(count_fixed_classical(n, n) == 1 for n in range(0, 40))
    with pytest.raises(DomainError):
        count_fixed_classical(3, 4)


def test_cycles_classical_values():
    assert count_cycles_classical(3, 2, 1) == 6
    assert count_cycles_classical(2, 2, 1) == 1
    with pytest.raises(DomainError):
        count_cycles_classical(3, 2, 2)
    with pytest.raises(DomainError):
        count_cycles_classical(3, 0, 1)


def test_expected_classical_values():
    assert expected_cycles_classical(3, 2) == Fraction(3, 8)
    assert expected_cycles_classical(3, 3) == Fraction(1, 8)
    assert expected_cycles_classical(50, 2) == Fraction(1275, 2601)
    assert all(expected_cycles_classical(n, 1) == 1 for n in range(1, 101))
    with pytest.raises(DomainError):
        expected_cycles_classical(3, 4)


def test_sorted_prefix_classical_values():
    assert [count_sorted_prefix_classical(3, s) for s in (3, 0, 2)] == [1, 16, 6]
    with pytest.raises(DomainError):
        count_sorted_prefix_classical(3, 4)


def test_prime_values():
    assert [count_prime_parking_functions(n) for n in (1, 2, 3, 4)] == [1, 1, 4, 27]
    assert [count_fixed_prime(3, k) for k in range(3)] == [1, 2, 1]
    assert count_fixed_prime(2, 1) == 1 and count_fixed_prime(2, 0) == 0
    assert count_fixed_prime(1, 0) == 1  # formula value at the n=1 edge, not the true tally
    assert count_cycles_prime(3, 2, 1) == 1
    assert count_cycles_prime(4, 3, 1) == 2
    assert expected_cycles_prime(3, 1) == 1
    assert expected_cycles_prime(3, 2) == Fraction(1, 4)
    assert expected_cycles_prime(2, 1) == 1
    for bad in (lambda: count_fixed_prime(3, 3), lambda: count_cycles_prime(3, 3, 1),
                lambda: expected_cycles_prime(3, 3), lambda: count_prime_parking_functions(0)):
        with pytest.raises(DomainError):
            bad()


def test_sorted_prefix_rk_values():
    assert count_sorted_prefix_rk(2, RKParams(1, 2), 0) == 8
    assert count_sorted_prefix_rk(1, RKParams(2, 3), 1) == 3
    assert count_rk_parking_functions(3, RKParams(2, 3)) == 3 * 9**2
    for n in range(0, 9):
        for s in range(n + 1):
            assert count_sorted_prefix_rk(n, RKParams(1, 1), s) == count_sorted_prefix_classical(n, s)


def test_serialization():
    assert format_rational(Fraction(3, 8)) == "3/8"
    assert format_rational(Fraction(1)) == "1/1"
    assert decimal_approx(Fraction(3, 8)) == "0.375"
    assert decimal_approx(Fraction(1, 3)) == "0.333333333333333"
    assert decimal_approx(expected_cycles_classical(50, 2)) == "0.490196078431373"


# -- identities over grids -------------------------------------------------------


def test_integrality_grid():
    # count functions raise Defect on a non-integral or negative value
    for n in range(0, 31):
        for k in range(n + 1):
            count_fixed_classical(n, k)
        for s in range(n + 1):
            count_sorted_prefix_classical(n, s)
        for m in range(1, n + 1):
            for k in range(n // m + 1):
                count_cycles_classical(n, m, k)
        if n >= 1:
            for m in range(1, n + 1):
                for k in range((n - 1) // m + 1):
                    count_cycles_prime(n, m, k)
    for n in range(0, 12):
        for r in range(1, 4):
            for k in range(1, 4):
                for s in range(n + 1):
                    count_sorted_prefix_rk(n, RKParams(r, k), s)


@pytest.mark.parametrize("n", range(0, 21))
def test_total_sums(n):
    total = count_parking_functions(n)
    assert sum(count_fixed_classical(n, k) for k in range(n + 1)) == total
    for m in range(1, n + 1):
        assert sum(count_cycles_classical(n, m, k) for k in range(n // m + 1)) == total
    if n >= 2:
        prime_total = count_prime_parking_functions(n)
        assert sum(count_fixed_prime(n, k) for k in range(n)) == prime_total
        for m in range(1, n + 1):
            assert sum(count_cycles_prime(n, m, k) for k in range((n - 1) // m + 1)) == prime_total


@pytest.mark.parametrize("n", range(1, 21))
def test_first_moments(n):
    total = count_parking_functions(n)
    for m in range(1, n + 1):
        moment = sum(k * count_cycles_classical(n, m, k) for k in range(n // m + 1))
        assert moment == expected_cycles_classical(n, m) * total
    if n >= 2:
        prime_total = count_prime_parking_functions(n)
        for m in range(1, n):
            moment = sum(k * count_cycles_prime(n, m, k) for k in range((n - 1) // m + 1))
            assert moment == expected_cycles_prime(n, m) * prime_total


@pytest.mark.parametrize("n", range(0, 13))
def test_one_cycles_are_fixed_points(n):
    for k in range(n + 1):
        assert count_cycles_classical(n, 1, k) == count_fixed_classical(n, k)
    if n >= 1:
        for k in range(n):
            assert count_cycles_prime(n, 1, k) == count_fixed_prime(n, k)


@pytest.mark.parametrize("m", [1, 2, 3, 5])
def test_asymptotic_one_over_m(m):
    n = 1000
    assert abs(m * expected_cycles_classical(n, m) - 1) <= Fraction(2 * m * m, n)
    assert abs(m * expected_cycles_prime(n, m) - 1) <= Fraction(2 * m * m, n)


# -- against brute force at small n --------------------------------------------------


@pytest.mark.parametrize("n", range(0, 7))
def test_classical_against_brute_force(n, pf):
    pop = pf[n]
    fixed = Counter(len(fixed_points(pi)) for pi in pop)
    assert [count_fixed_classical(n, k) for k in range(n + 1)] == [fixed[k] for k in range(n + 1)]
    censuses = [cycle_census(pi) for pi in pop]
    for m in range(1, n + 1):
        hist = Counter(c[m] for c in censuses)
        for k in range(n // m + 1):
            assert count_cycles_classical(n, m, k) == hist[k]
        assert expected_cycles_classical(n, m) == Fraction(sum(c[m] for c in censuses), len(pop))
    for s in range(n + 1):
        strict = sum(1 for pi in pop if all(pi[i] < pi[i + 1] for i in range(s - 1)))
        assert count_sorted_prefix_classical(n, s) == strict


@pytest.mark.parametrize("n", range(2, 7))
def test_prime_against_brute_force(n, ppf):
    pop = ppf[n]
    assert count_prime_parking_functions(n) == len(pop)
    fixed = Counter(len(fixed_points(pi)) for pi in pop)
    assert [count_fixed_prime(n, k) for k in range(n)] == [fixed[k] for k in range(n)]
    for s in range(n):
        strict = sum(1 for pi in pop if all(pi[i] < pi[i + 1] for i in range(s - 1)))
        assert count_sorted_prefix_prime(n, s) == strict


def test_prime_fixed_formula_misses_n1(ppf):
    # PPF_1 = {(1)} has one fixed point; the formula's domain stops at k = 0
    assert ppf[1] == [(1,)]
    assert count_fixed_prime(1, 0) == 1
    assert Counter(len(fixed_points(pi)) for pi in ppf[1]) == {1: 1}
