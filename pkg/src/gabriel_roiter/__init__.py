"""Chain length functions, the Gabriel-Roiter measure and quiver representations over F_p."""

from gabriel_roiter.gr_measure import (
    GRFiltration,
    Measure,
    gr_filtration,
    iterate_measure,
    measure_dp,
    measure_oracle,
)
from gabriel_roiter.length_functions import (
    LengthFunction,
    are_equivalent,
    make_length_function,
    validate_length_function,
)
from gabriel_roiter.order_core import (
    Chain,
    CompareResult,
    Poset,
    compare_values,
    lex_compare,
    make_chain,
    poset_from_relations,
)
from gabriel_roiter.repcat import (
    FieldSpec,
    IndPoset,
    Quiver,
    Representation,
    enumerate_ind,
    make_quiver,
    make_representation,
)

__all__ = [
    "Chain",
    "CompareResult",
    "FieldSpec",
    "GRFiltration",
    "IndPoset",
    "LengthFunction",
    "Measure",
    "Poset",
    "Quiver",
    "Representation",
    "are_equivalent",
    "compare_values",
    "enumerate_ind",
    "gr_filtration",
    "iterate_measure",
    "lex_compare",
    "make_chain",
    "make_length_function",
    "make_quiver",
    "make_representation",
    "measure_dp",
    "measure_oracle",
    "poset_from_relations",
    "validate_length_function",
]
