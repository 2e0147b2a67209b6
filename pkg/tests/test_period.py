import math

import pytest

from aplcm.errors import BudgetExceededError, SelfCheckError
from aplcm.gfun import Progression, Window, ratio_valuation_by_counting, window_ratio
from aplcm.numtheory import integer_log, lcm_many, lcm_upto, primes_upto, valuation
from aplcm.period import (
    closed_form_period,
    exceptional_factor,
    nonperiod_witness,
    smallest_period,
    smallest_period_bruteforce,
    valuation_period_bruteforce,
)


def coprime_pairs(a_max, b_max):
    return [
        (a, b)
        for a in range(1, a_max + 1)
        for b in range(b_max + 1)
        if math.gcd(a, b) == 1
    ]


def test_exceptional_factor_examples():
    assert exceptional_factor(3, 1) == (2, 2)
    assert exceptional_factor(5, 1) == (3, 3)
    assert exceptional_factor(4, 1) == (1, None)
    assert exceptional_factor(0, 7) == (1, None)
    assert exceptional_factor(1, 1) == (1, None)
    # the qualifying prime must not divide a
    assert exceptional_factor(5, 3) == (1, None)


def test_closed_form_period_examples():
    for k, a, expected in ((2, 1, 2), (3, 1, 3), (5, 2, 5), (0, 7, 1)):
        assert closed_form_period(k, a).value == expected


def test_closed_form_matches_bruteforce_for_coprime_pairs():
    for k in range(6):
        for a, b in coprime_pairs(6, 6):
            prog = Progression(a, b)
            assert closed_form_period(k, a).value == \
                smallest_period_bruteforce(prog, k)


def test_smallest_period_examples():
    assert smallest_period(Progression(1, 0), 7).value == 105
    assert smallest_period(Progression(2, 1), 2).value == 1
    assert smallest_period(Progression(6, 3), 5).value == 5
    # each confirmed by the exhaustive search
    assert smallest_period_bruteforce(Progression(1, 0), 7) == 105
    assert smallest_period_bruteforce(Progression(2, 1), 2) == 1
    assert smallest_period_bruteforce(Progression(6, 3), 5) == 5


def test_period_report_structure():
    report = smallest_period(Progression(6, 3), 5)
    assert report.a_reduced == 2
    assert report.exceptional == 3 and report.exceptional_prime == 3
    assert report.removed_primes == [(2, 2)]
    # period * exceptional * removed prime powers recovers lcm(1..k)
    removed = math.prod(q**e for q, e in report.removed_primes)
    assert report.value * report.exceptional * removed == lcm_upto(5).value
    # per-prime entries multiply to the period and cover all primes <= k
    assert list(report.per_prime) == primes_upto(5)
    assert math.prod(report.per_prime.values()) == report.value
    assert report.oracle_value is None
    assert report.with_oracle(5).oracle_value == 5
    with pytest.raises(SelfCheckError):
        report.with_oracle(7)


def test_period_report_identities_hold_across_sweep():
    for k in range(9):
        lk = lcm_upto(k).value
        for a in range(1, 11):
            for b in range(11):
                report = smallest_period(Progression(a, b), k)
                removed = math.prod(q**e for q, e in report.removed_primes)
                assert report.value * report.exceptional * removed == lk
                assert math.prod(report.per_prime.values()) == report.value


def test_bruteforce_small_examples():
    assert smallest_period_bruteforce(Progression(1, 0), 0) == 1
    assert smallest_period_bruteforce(Progression(1, 0), 2) == 2
    # ratio at n = 1..6 cycles 2, 2, 6
    values = [window_ratio(Progression(1, 0), Window(n, 3)) for n in range(1, 7)]
    assert values == [2, 2, 6, 2, 2, 6]
    assert smallest_period_bruteforce(Progression(1, 0), 3) == 3


def test_bruteforce_budget_guard():
    with pytest.raises(BudgetExceededError):
        smallest_period_bruteforce(Progression(1, 0), 8, budget=100)
    with pytest.raises(BudgetExceededError):
        smallest_period_bruteforce(Progression(1, 0), 13)


def test_valuation_period_examples():
    assert valuation_period_bruteforce(2, Progression(1, 0), 5) == 4
    assert valuation_period_bruteforce(3, Progression(1, 0), 5) == 1
    assert valuation_period_bruteforce(5, Progression(5, 2), 6) == 1
    with pytest.raises(ValueError):
        valuation_period_bruteforce(2, Progression(4, 2), 5)


def test_valuation_period_dichotomy():
    for k in range(2, 7):
        for a, b in coprime_pairs(6, 6):
            prog = Progression(a, b)
            for p in primes_upto(k):
                if a % p == 0:
                    expected = 1
                else:
                    max_e = integer_log(p, k)
                    expected = 1 if valuation(p, k + 1) >= max_e else p**max_e
                assert valuation_period_bruteforce(p, prog, k) == expected


def test_full_period_is_lcm_of_valuation_periods():
    for k in range(7):
        for a, b in coprime_pairs(6, 6):
            prog = Progression(a, b)
            parts = [
                valuation_period_bruteforce(p, prog, k) for p in primes_upto(k)
            ] or [1]
            assert smallest_period_bruteforce(prog, k) == lcm_many(parts)


def test_nonperiod_witness_examples():
    n0 = nonperiod_witness(2, Progression(1, 0), 5)
    assert n0 == 4
    assert ratio_valuation_by_counting(2, Progression(1, 0), Window(4, 5)) == 3
    assert ratio_valuation_by_counting(2, Progression(1, 0), Window(6, 5)) == 2

    assert nonperiod_witness(3, Progression(1, 0), 9) % 9 == 0
    assert nonperiod_witness(2, Progression(3, 1), 5) == 1


def test_nonperiod_witness_end_placement_case():
    """(k+1) mod p**E in the top p**(E-1)-1 residues puts the multiple of
    p**E at offset p**(E-1)-1 instead of the window start."""
    n0 = nonperiod_witness(2, Progression(1, 0), 6)  # 7 mod 4 = 3 > 2
    assert n0 == 3
    assert ratio_valuation_by_counting(2, Progression(1, 0), Window(3, 6)) == 3
    assert ratio_valuation_by_counting(2, Progression(1, 0), Window(5, 6)) == 2

    n0 = nonperiod_witness(3, Progression(1, 0), 15)  # 16 mod 9 = 7 > 6
    assert n0 % 9 == 7
    assert ratio_valuation_by_counting(3, Progression(1, 0), Window(n0, 15)) == 5
    assert ratio_valuation_by_counting(3, Progression(1, 0), Window(n0 + 3, 15)) == 4

    assert nonperiod_witness(2, Progression(5, 3), 6) == 4


def test_nonperiod_witness_verified_by_scan():
    for k in range(2, 8):
        for a, b in coprime_pairs(6, 6):
            prog = Progression(a, b)
            for p in primes_upto(k):
                max_e = integer_log(p, k)
                if a % p == 0 or valuation(p, k + 1) >= max_e:
                    continue
                n0 = nonperiod_witness(p, prog, k)
                assert n0 >= 1
                half = p ** (max_e - 1)
                assert ratio_valuation_by_counting(p, prog, Window(n0, k)) != \
                    ratio_valuation_by_counting(p, prog, Window(n0 + half, k))


def test_nonperiod_witness_preconditions():
    with pytest.raises(ValueError, match="reduced"):
        nonperiod_witness(2, Progression(4, 2), 5)
    with pytest.raises(ValueError, match="divides"):
        nonperiod_witness(2, Progression(2, 1), 5)
    with pytest.raises(ValueError, match="exceeds"):
        nonperiod_witness(7, Progression(1, 0), 5)
    with pytest.raises(ValueError, match="maximal"):
        nonperiod_witness(2, Progression(1, 0), 3)


def test_closed_form_equals_bruteforce_including_unreduced():
    for k in range(6):
        for a in range(1, 7):
            for b in range(7):
                prog = Progression(a, b)
                assert smallest_period(prog, k).value == \
                    smallest_period_bruteforce(prog, k)


def test_reduction_preserves_smallest_period():
    pairs = [(a, b) for a in range(1, 9) for b in range(9) if math.gcd(a, b) > 1]
    for k in range(6):
        for a, b in pairs:
            prog = Progression(a, b)
            assert smallest_period_bruteforce(prog, k) == \
                smallest_period_bruteforce(prog.reduced(), k)


def test_relation_to_consecutive_integer_period():
    for k in range(9):
        base = smallest_period(Progression(1, 0), k).value
        for a in range(1, 11):
            for b in range(11):
                prog = Progression(a, b)
                removed = math.prod(
                    p ** integer_log(p, k)
                    for p in primes_upto(k)
                    if prog.a_reduced % p == 0 and base % p == 0
                )
                assert base % removed == 0
                assert smallest_period(prog, k).value == base // removed
                if b % a == 0:
                    assert smallest_period(prog, k).value == base


def test_double_exceptional_prime_is_impossible_up_to_2000():
    for k in range(2001):
        exceptional_factor(k, 1)  # raises SelfCheckError on a double hit


def test_selfcheck_error_is_distinct_from_value_error():
    assert not issubclass(SelfCheckError, ValueError)
