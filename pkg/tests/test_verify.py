import pytest

from slicecalc.config import Settings
from slicecalc.errors import InvalidSpecError
from slicecalc.slices.verify import ALIASES, SUITES, run_suite, run_suites, suite_names, with_range

SMALL = Settings(induced_max_order=9, induced_max_multiple=3, rho_max_order=6, rho_max_abs_n=12, verify_workers=2)


def test_suite_names():
    assert suite_names("all") == list(SUITES)
    assert suite_names(" Class-Count ") == ["cor44"]
    assert set(ALIASES.values()) == set(SUITES)
    with pytest.raises(InvalidSpecError):
        suite_names("bogus")


@pytest.mark.parametrize("p, k", [(3, 1), (3, 2), (5, 2)])
def test_every_suite_passes(p, k):
    reports = run_suites("all", p, k, SMALL)
    assert [r.name for r in reports] == list(SUITES)
    for r in reports:
        assert r.passed, (r.name, r.failures[:5])
        assert r.checked > 0


def test_vj_equivalence_report():
    report = run_suite("thm43", 3, 2, Settings())
    # j=0 and j=1 each admit 12 values of n below 4 * 9
    assert report.checked == 24
    assert report.summary == "checked 24 (j,n) cases: all Equivalence"


def test_class_count_report():
    report = run_suite("class-count", 5, 2)
    assert report.summary == "4 classes = 2^2"
    assert report.to_json()["suite"] == "cor44"
    assert report.to_json()["passed"] is True


def test_rho_periodicity_counts_both_directions():
    report = run_suite("rho", 3, 1, Settings(rho_max_order=2, rho_max_abs_n=3))
    assert report.passed
    assert report.checked >= 2 * 7


def test_report_is_independent_of_workers():
    one = run_suite("prop210", 3, 1, Settings(induced_max_order=8, induced_max_multiple=3, verify_workers=1))
    many = run_suite("prop210", 3, 1, Settings(induced_max_order=8, induced_max_multiple=3, verify_workers=8))
    assert one == many


@pytest.mark.parametrize("p, k", [(2, 1), (9, 1), (3, 0)])
def test_rejects_bad_group(p, k):
    with pytest.raises(InvalidSpecError):
        run_suites("all", p, k)


def test_range_overrides_only_the_suite_bound():
    base = Settings()
    assert with_range("prop210", base, 5).induced_max_order == 5
    assert with_range("thm43", base, 2).horizon_periods == 2
    assert with_range("rho", base, 3).rho_max_abs_n == 3
    assert with_range("thm45", base, 3) == base
    assert with_range("rho", base, None) == base
    with pytest.raises(InvalidSpecError):
        with_range("rho", base, 0)


def test_run_suite_honours_bound():
    small = run_suite("rho", 3, 1, Settings(rho_max_order=2), bound=1)
    assert small.checked == 2 * 3
    assert small.passed
