from fractions import Fraction

import pytest

from gabriel_roiter.errors import InputError, InvalidFiltration, IterationBudgetExceeded
from gabriel_roiter.fixtures import (
    antichain_poset,
    zigzag_labeling,
)
from gabriel_roiter.gr_measure import (
    GRFiltration,
    all_filtrations,
    check_C_properties,
    check_equality_criterion,
    check_M_axioms,
    gr_filtration,
    gr_predecessors,
    is_filtration,
    iterate_measure,
    measure_dp,
    measure_from_filtration,
    measure_oracle,
    measure_output,
)
from gabriel_roiter.length_functions import (
    are_equivalent,
    make_length_function,
    order_classes,
    validate_length_function,
)
from gabriel_roiter.order_core import poset_from_relations


def _chain(*values):
    return tuple(Fraction(v) for v in values)


def test_measure_of_the_six_element_poset(lam0):
    m = measure_dp(lam0)
    assert m("a") == _chain(2, 4)
    assert m("b") == _chain(1, 5)
    assert m("c") == _chain(1, 6)
    assert m("d") == _chain(3)
    assert m("e") == _chain(2)
    assert m("f") == _chain(1)
    assert measure_output(m).order == ["d", "e", "a", "f", "c", "b"]
    assert measure_output(m).ties == []


def test_oracle_agrees_on_the_six_element_poset(lam0):
    m = measure_dp(lam0)
    for x in lam0.poset:
        assert measure_oracle(lam0, x) == m(x)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_iterates_match_their_integer_labelings(lam0, n):
    assert are_equivalent(iterate_measure(lam0, n), zigzag_labeling(n))


def test_iterates_settle_into_period_two(lam0):
    second = iterate_measure(lam0, 2)
    assert are_equivalent(second, iterate_measure(lam0, 4))
    assert not are_equivalent(iterate_measure(lam0, 1), iterate_measure(lam0, 3))
    assert second.depth == 2


def test_iteration_bounds(lam0):
    with pytest.raises(InputError):
        iterate_measure(lam0, -1)
    with pytest.raises(IterationBudgetExceeded):
        iterate_measure(lam0, 9)
    with pytest.raises(IterationBudgetExceeded):
        iterate_measure(lam0, 3, cap=2)


def test_filtrations(lam0):
    m = measure_dp(lam0)
    assert gr_filtration(m, "b").steps == ("f", "b")
    assert gr_filtration(m, "a").steps == ("e", "a")
    assert gr_filtration(m, "d").gamma == 1
    assert gr_predecessors(m, "b") == ("f",)
    assert measure_from_filtration(lam0, GRFiltration(("f", "b"))) == _chain(1, 5)


def test_non_filtrations_are_rejected(lam0):
    m = measure_dp(lam0)
    assert not is_filtration(m, GRFiltration(("e", "b")))
    assert not is_filtration(m, GRFiltration(("b",)))
    assert not is_filtration(m, GRFiltration(()))
    with pytest.raises(InvalidFiltration):
        measure_from_filtration(lam0, GRFiltration(("e", "b")))


def test_tied_predecessors_give_several_filtrations():
    p = poset_from_relations(["u", "v", "w"], [("u", "w"), ("v", "w")])
    lam = make_length_function(p, {"u": 1, "v": 1, "w": 2})
    m = measure_dp(lam)
    assert gr_predecessors(m, "w") == ("u", "v")
    assert [f.steps for f in all_filtrations(m, "w")] == [("u", "w"), ("v", "w")]
    assert order_classes(m.as_length_function()) == [["u", "v"], ["w"]]


def test_axiom_m3_catches_a_bad_candidate():
    p = antichain_poset(["u", "v"])
    lam = make_length_function(p, {"u": 2, "v": 1})
    report = check_M_axioms(lam, lam.values)
    assert [(v.axiom, v.witnesses) for v in report.violations] == [("M3", ("u", "v"))]
    assert report.satisfied == ["M1", "M2"]


def test_measure_satisfies_its_axioms(lam0):
    m = measure_dp(lam0)
    assert check_M_axioms(lam0, m.values).ok
    assert check_C_properties(lam0, m).ok
    assert check_equality_criterion(lam0, m).ok
    assert validate_length_function(lam0.poset, m.values).ok
