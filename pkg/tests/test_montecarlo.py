import json
from fractions import Fraction

import pytest

from parkfun.errors import DomainError
from parkfun.montecarlo import estimate_expected_cycles


def test_small_classical_matches_exact():
    est = estimate_expected_cycles(3, 2, "classical", 100_000, seed=11)
    assert est.exact_value == Fraction(3, 8)
    assert est.within(3)


def test_prime_estimate():
    est = estimate_expected_cycles(8, 2, "prime", 20_000, seed=3)
    assert est.exact_value == Fraction(21, 49)
    assert est.within(4)


def test_deterministic():
    a = estimate_expected_cycles(3, 1, "classical", 5000, seed=2**64 - 1)
    b = estimate_expected_cycles(3, 1, "classical", 5000, seed=2**64 - 1)
    assert a == b
    assert json.dumps(a.to_dict()) == json.dumps(b.to_dict())


def test_worker_count_does_not_change_result(monkeypatch):
    import parkfun.montecarlo as mc

    monkeypatch.setattr(mc, "CHUNK_SAMPLES", 700)
    a = estimate_expected_cycles(6, 2, "classical", 3000, seed=9, workers=1)
    b = estimate_expected_cycles(6, 2, "classical", 3000, seed=9, workers=3)
    assert a == b


def test_serialization():
    est = estimate_expected_cycles(4, 2, "classical", 100, seed=0)
    obj = est.to_dict()
    assert obj["exact_value"] == "2/5"  # 1! * C(5,2) / 5^2
    assert float(obj["mean"]) == est.mean and obj["samples"] == 100 and obj["seed"] == 0


@pytest.mark.parametrize(
    "args",
    [
        (3, 4, "classical", 100, 0),
        (3, 3, "prime", 100, 0),
        (3, 1, "rk", 100, 0),
        (3, 1, "classical", 1, 0),
        (3, 1, "classical", 100, -1),
        (3, 1, "classical", 100, 2**64),
    ],
)
def test_domain_errors(args):
    with pytest.raises(DomainError):
        estimate_expected_cycles(*args)
