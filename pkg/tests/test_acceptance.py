"""One test per acceptance criterion; the terminal summary prints a PASS/FAIL line for each."""

import pytest

from glfiber import acceptance as acc


@pytest.fixture(scope="module")
def fixtures():
    return acc.load_fixtures()


def _check(record, res):
    record(res)
    print(res.line())
    assert res.passed, res.detail


def test_criterion_1_cancellation_identities(record_criterion):
    _check(record_criterion, acc._timed(acc.criterion_1))


def test_criterion_2_n_lambda_cases(record_criterion):
    _check(record_criterion, acc._timed(acc.criterion_2))


def test_criterion_3_green_degree_bound(record_criterion):
    _check(record_criterion, acc._timed(acc.criterion_3))


def test_criterion_4_gl2_orthogonality(record_criterion):
    _check(record_criterion, acc._timed(acc.criterion_4))


def test_criterion_5_frobenius_vs_brute(record_criterion):
    _check(record_criterion, acc._timed(acc.criterion_5))


def test_criterion_6_duality_counts(record_criterion):
    _check(record_criterion, acc._timed(acc.criterion_6))


def test_criterion_7_type_constants(record_criterion, fixtures):
    _check(record_criterion, acc._timed(lambda: acc.criterion_7(fixtures)))


def test_criterion_8_flag_probabilities(record_criterion, fixtures):
    _check(record_criterion, acc._timed(lambda: acc.criterion_8(fixtures)))


def test_criterion_9_parabolic_induction(record_criterion):
    _check(record_criterion, acc._timed(acc.criterion_9))


def test_criterion_10_flatness_scaling(record_criterion, fixtures):
    _check(record_criterion, acc._timed(lambda: acc.criterion_10(fixtures)))


def test_criterion_11_central_fiber(record_criterion):
    _check(record_criterion, acc._timed(lambda: acc.criterion_11(False)))


@pytest.mark.slow
def test_criterion_11_central_fiber_n3_q7(record_criterion):
    _check(record_criterion, acc._timed(lambda: acc.criterion_11(True)))
