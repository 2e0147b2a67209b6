"""Acceptance gate: every check below must pass exactly (zero
mismatches); the randomized ones are seeded and the exhaustive ones are
full sweeps at their stated scale. Run with `pytest -s` to see one
PASS/FAIL line per criterion.
"""

from aplcm.gfun import Progression
from aplcm.period import smallest_period
from aplcm.verify import CONSECUTIVE_PERIODS, run_suite


def _run(name, time_cap=None):
    report = run_suite(name)
    status = "PASS" if report.passed else "FAIL"
    cap = f" (cap {time_cap}s)" if time_cap else ""
    print(
        f"acceptance[{name}]: {status} - {report.cases_run} cases, "
        f"{len(report.failures)} failures, {report.elapsed:.2f}s{cap}"
    )
    for failure in report.failures[:10]:
        print(f"  {failure.inputs}: expected {failure.expected}, "
              f"got {failure.actual}")
    assert report.passed, f"{name}: {len(report.failures)} failures"
    if time_cap is not None:
        assert report.elapsed <= time_cap, (
            f"{name} took {report.elapsed:.1f}s, over the {time_cap}s cap"
        )
    return report


def test_closed_form_period_matches_exhaustive_search():
    report = _run("period-closed-form", time_cap=300)
    assert report.cases_run == 9 * 10 * 11


def test_consecutive_integer_period_table():
    expected = (1, 1, 2, 3, 12, 20, 60, 105, 280, 504, 2520)
    assert CONSECUTIVE_PERIODS == expected
    actual = tuple(
        smallest_period(Progression(1, 0), k).value for k in range(11)
    )
    assert actual == expected
    _run("consecutive-periods")


def test_valuation_paths_are_consistent():
    _run("valuation-consistency")


def test_prime_periods_and_witnesses():
    _run("prime-period")


def test_inclusion_exclusion_identity():
    report = _run("inclusion-exclusion", time_cap=60)
    assert report.cases_run == 10_000


def test_fast_lcm_equals_direct_lcm():
    # 1000 seeded cases with n up to 10**9; every 20th case (50 total)
    # forces n to a multiple of the period so the residue-0 slot is hit.
    report = _run("fast-lcm")
    assert report.cases_run == 1000


def test_divisibility_suites():
    _run("divisibility")


def test_exceptional_prime_is_unique():
    report = _run("exceptional-prime", time_cap=60)
    assert report.cases_run == 10_001


def test_odd_progression_periods():
    for k, expected in ((2, 1), (3, 3), (5, 5)):
        assert smallest_period(Progression(2, 1), k).value == expected
    _run("odd-progression")
