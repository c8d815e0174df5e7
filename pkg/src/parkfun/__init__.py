"""Exact combinatorics of classical, prime and (r,k)-parking functions."""

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
    expected_cycles_classical,
    expected_cycles_prime,
    factorial,
    multinomial,
)
from parkfun.cycles import CycleCensus, count_m_cycles, cycle_census, fixed_points
from parkfun.errors import BudgetExceeded, Defect, DomainError
from parkfun.pollak import (
    ModTuple,
    canonicalize_classical,
    canonicalize_prime,
    circular_park,
    enumerate_classical,
    enumerate_prime,
    enumerate_rk,
    rk_representatives,
    rotate,
    sample_classical,
    sample_prime,
    sample_rk,
    valid_rotations,
)
from parkfun.prefseq import (
    ParkOutcome,
    PrefSeq,
    RKParams,
    as_prefseq,
    increasing_rearrangement,
    is_parking_function,
    is_prime_parking_function,
    is_rk_parking_function,
    simulate_line_parking,
)

__version__ = "0.1.0"
