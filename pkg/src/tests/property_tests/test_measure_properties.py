import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import forests, graded_posets, length_functions, posets

from gabriel_roiter.fixtures import chain_poset
from gabriel_roiter.gr_measure import (
    all_filtrations,
    check_C_properties,
    check_equality_criterion,
    check_M_axioms,
    gr_filtration,
    iterate_measure,
    measure_dp,
    measure_from_filtration,
    measure_oracle,
)
from gabriel_roiter.length_functions import (
    are_equivalent,
    down_set_size_function,
    height_function,
    is_rank_function,
    make_length_function,
    relabel_by_rank,
)


def _cubed(lam):
    return make_length_function(lam.poset, {x: 3 * lam(x) ** 3 + 1 for x in lam.poset})


@given(length_functions(posets(max_size=8)))
def test_dp_agrees_with_the_oracle(lam):
    m = measure_dp(lam)
    for x in lam.poset:
        assert measure_oracle(lam, x) == m(x)
        assert measure_from_filtration(lam, gr_filtration(m, x)) == m(x)
    assert check_C_properties(lam, m).ok
    assert check_M_axioms(lam, m.values).ok
    assert check_equality_criterion(lam, m).ok


@given(length_functions())
def test_every_filtration_gives_the_same_values(lam):
    m = measure_dp(lam)
    for x in lam.poset:
        filtrations = all_filtrations(m, x)
        assert gr_filtration(m, x) in filtrations
        assert {measure_from_filtration(lam, f) for f in filtrations} == {m(x)}


@given(length_functions(), st.data())
def test_equivalence_is_an_equivalence_relation(lam, data):
    other = data.draw(length_functions(st.just(lam.poset)))
    functions = [lam, _cubed(lam), relabel_by_rank(lam), other]
    for f in functions:
        assert are_equivalent(f, f)
    for f, g in itertools.permutations(functions, 2):
        assert are_equivalent(f, g) == are_equivalent(g, f)
    for f, g, h in itertools.permutations(functions, 3):
        if are_equivalent(f, g) and are_equivalent(g, h):
            assert are_equivalent(f, h)
    assert are_equivalent(lam, _cubed(lam))


@given(length_functions())
def test_equivalent_inputs_give_equivalent_measures(lam):
    mu = iterate_measure(lam, 1)
    assert are_equivalent(mu, iterate_measure(_cubed(lam), 1))
    assert are_equivalent(mu, iterate_measure(relabel_by_rank(lam), 1))


@given(length_functions())
def test_monotone_relabelings_of_the_measure_pass_the_axioms(lam):
    mu = measure_dp(lam).as_length_function()
    ranked = relabel_by_rank(mu)
    shifted = {x: 2 * ranked(x) + Fraction(1, 3) for x in lam.poset}
    for values in (ranked.values, shifted):
        assert check_M_axioms(lam, values).ok
        assert are_equivalent(mu, make_length_function(lam.poset, values, validate=False))


@pytest.mark.parametrize("n", range(1, 7))
def test_down_set_size_on_chains(n):
    lam = down_set_size_function(chain_poset(n))
    assert are_equivalent(lam, iterate_measure(lam, 1))


@given(forests())
def test_down_set_size_on_forests(p):
    lam = down_set_size_function(p)
    assert are_equivalent(lam, iterate_measure(lam, 1))


@given(forests(max_size=8))
def test_height_measure_on_forests(p):
    # down-sets of a forest are chains, so the measure just lists the heights
    lam = height_function(p)
    m = measure_dp(lam)
    for x in p:
        assert m(x) == tuple(Fraction(k) for k in range(1, int(lam(x)) + 1))


@given(graded_posets())
def test_rank_functions_are_equivalent_to_their_measure(p):
    lam = height_function(p)
    assert is_rank_function(lam)
    assert are_equivalent(lam, iterate_measure(lam, 1))
