import functools

from hypothesis import given
from hypothesis import strategies as st
from strategies import simple_lengths

from gabriel_roiter.fixtures import A3_ORIENTATIONS, a3, kronecker
from gabriel_roiter.repcat import (
    FieldSpec,
    direct_sum,
    enumerate_ind,
    exists_mono,
    module_length,
)

QUIVERS = [a3(o) for o in sorted(A3_ORIENTATIONS)] + [kronecker()]


@functools.cache
def _mono_pairs(q):
    ip = enumerate_ind(q, FieldSpec(2), 3)
    return tuple(
        (x.rep, y.rep)
        for x in ip.classes
        for y in ip.classes
        if x.label != y.label and exists_mono(x.rep, y.rep)
    )


@given(st.sampled_from(QUIVERS), st.data())
def test_length_is_additive_on_direct_sums(q, data):
    ip = enumerate_ind(q, FieldSpec(2), 3)
    ell = data.draw(simple_lengths(q))
    x = data.draw(st.sampled_from(ip.classes)).rep
    y = data.draw(st.sampled_from(ip.classes)).rep
    assert module_length(direct_sum(x, y), ell) == module_length(x, ell) + module_length(y, ell)


@given(st.sampled_from(QUIVERS), st.data())
def test_proper_monomorphisms_raise_the_length(q, data):
    ell = data.draw(simple_lengths(q))
    pairs = _mono_pairs(q)
    assert pairs
    for x, y in pairs:
        assert module_length(x, ell) < module_length(y, ell)
