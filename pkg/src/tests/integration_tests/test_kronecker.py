"""Kronecker quiver over small fields: labels, measure orders and iterates."""

import random

import pytest

from gabriel_roiter.fixtures import kronecker
from gabriel_roiter.gr_measure import iterate_measure, measure_dp
from gabriel_roiter.length_functions import are_equivalent
from gabriel_roiter.order_core import CompareResult, compare_values
from gabriel_roiter.repcat import FieldSpec, category_length, ell1, enumerate_ind, random_length
from gabriel_roiter.verify import check_main_property, check_socle_lemma, detect_simples

pytestmark = pytest.mark.slow

# representatives of each kind, ascending; "R_2[1]" sits at the degree-two point
ELL1_ORDER = ["P_1", "P_2", "P_3", "R_2[1]", "R_1(0:1)", "R_2(0:1)", "Q_3", "Q_2"]
SECOND_ORDER = ["P_1", "R_1(0:1)", "Q_2", "P_2", "R_2(0:1)", "R_2[1]", "Q_3", "P_3"]


@pytest.fixture(scope="module")
def kronecker_f2():
    return enumerate_ind(kronecker(), FieldSpec(2), 5)


@pytest.fixture(scope="module", params=[2, 3], ids=["F2", "F3"])
def kronecker_up_to_five(request):
    return enumerate_ind(kronecker(), FieldSpec(request.param), 5)


def _assert_ascending(values, labels):
    for x, y in zip(labels, labels[1:]):
        assert compare_values(values[x], values[y]) is CompareResult.LESS_THAN, (x, y)


def test_classes_over_f2(kronecker_f2):
    labels = set(kronecker_f2.labels)
    assert {"P_1", "P_2", "P_3", "Q_1", "Q_2", "Q_3"} <= labels
    assert sum(label.startswith("R_1(") for label in labels) == 3
    assert sum(label.startswith("R_2(") for label in labels) == 3
    assert {label for label in labels if label.startswith("R_2[")} == {"R_2[1]"}
    assert not kronecker_f2.complete


def test_composition_length_order(kronecker_f2):
    m = measure_dp(kronecker_f2.length_function(ell1(kronecker())))
    assert compare_values(m("P_1"), m("Q_1")) is CompareResult.EQUAL
    _assert_ascending(m.values, ELL1_ORDER)


def test_second_iterate_order(kronecker_f2):
    second = iterate_measure(kronecker_f2.length_function(ell1(kronecker())), 2)
    assert second.compare("P_1", "Q_1") is CompareResult.EQUAL
    _assert_ascending(second.values, SECOND_ORDER)


def test_third_iterate_is_equivalent_to_the_first(kronecker_f2):
    lam = kronecker_f2.length_function(ell1(kronecker()))
    assert are_equivalent(iterate_measure(lam, 3), iterate_measure(lam, 1))


def test_lemmas_over_f2(kronecker_f2):
    socle_heavy = category_length(kronecker(), {"1": 1, "2": 2})
    assert check_socle_lemma(kronecker_f2, socle_heavy).ok
    assert check_main_property(kronecker_f2, ell1(kronecker())).ok


def test_seventeen_classes_over_f3():
    ip = enumerate_ind(kronecker(), FieldSpec(3), 5)
    assert len(ip.classes) == 17
    assert sum(label.startswith("R_2[") for label in ip.labels) == 3


@pytest.mark.parametrize("seed", [None, 3, 17])
def test_main_property_up_to_length_five(kronecker_up_to_five, seed):
    q = kronecker()
    ell = ell1(q) if seed is None else random_length(q, random.Random(seed))
    report = check_main_property(kronecker_up_to_five, ell)
    assert report.ok
    assert report.checked_triples > 0


def test_simples_are_detected_up_to_length_five(kronecker_f2):
    result = detect_simples(kronecker_f2, advisory=True)
    assert not result.exact
    assert set(result.detected) == {"P_1", "Q_1"}


@pytest.mark.parametrize("simple_lengths", [{}, {"1": "1/2", "2": 3}])
def test_measure_does_not_depend_on_the_truncation(kronecker_f2, simple_lengths):
    ell = category_length(kronecker(), simple_lengths)
    short = enumerate_ind(kronecker(), FieldSpec(2), 3)
    mu_short = measure_dp(short.length_function(ell))
    mu_long = measure_dp(kronecker_f2.length_function(ell))
    for c in short.classes:
        assert mu_short(c.label) == mu_long(kronecker_f2.class_of(c.rep))
