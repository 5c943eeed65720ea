"""Acceptance battery: every criterion at its stated size and tolerance.

The whole battery runs once per session (the criteria share tallies for the
stack-property, round-accounting, and budget aggregates); each test then
asserts and prints its criterion's line. Run `pytest tests/test_acceptance.py -v -s`
to watch the lines appear, or `mwisim verify acceptance` for the same battery
outside pytest.
"""

import pytest

from mwisim.verify import run_acceptance_suite


@pytest.fixture(scope="module")
def battery():
    return {r.name.split()[0]: r for r in run_acceptance_suite(quick=False)}


def _check(battery, key):
    result = battery[key]
    print(result.line())
    assert result.passed, result.line()


def test_c01_warmup_guarantee(battery):
    _check(battery, "C1")


def test_c02_stack_property(battery):
    _check(battery, "C2")


def test_c03_boosting_ratio(battery):
    _check(battery, "C3")


def test_c04_round_accounting(battery):
    _check(battery, "C4")


def test_c05_sparsifier_statistics(battery):
    _check(battery, "C5")


def test_c06_ranking_equivalence(battery):
    _check(battery, "C6")


def test_c07_ranking_size_bound(battery):
    _check(battery, "C7")


def test_c08_arboricity_approximation(battery):
    _check(battery, "C8")


def test_c09_reduction_validity(battery):
    _check(battery, "C9")


def test_c10_engine_contracts(battery):
    _check(battery, "C10")
