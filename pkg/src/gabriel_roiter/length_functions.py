"""Length functions on finite posets.

A length function is a map ``lam`` from a poset into chain values with

- (L1) ``x < y`` implies ``lam(x) < lam(y)``,
- (L2) any two values are comparable,
- (L3) finitely many values on every down-set, automatic here.

Two length functions are equivalent when they induce the same comparisons.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Any, Callable, Mapping, Optional

from gabriel_roiter.errors import (
    DepthMismatch,
    InputError,
    InvalidLengthFunction,
    NonIntegerValues,
    PosetMismatch,
    UnknownElement,
)
from gabriel_roiter.order_core import (
    ChainValue,
    CompareResult,
    ElementId,
    Poset,
    compare_values,
    enumerate_chains_ending_at,
    poset_from_json,
    poset_to_json,
    value_depth,
    value_from_json,
    value_key,
    value_to_json,
)
from gabriel_roiter.schemas import LengthFunctionSpec, ValidationReport, Violation

logger = logging.getLogger(__name__)

Comparator = Callable[[ChainValue, ChainValue], CompareResult]


@dataclass(frozen=True)
class LengthFunction:
    """A validated length function; build it with :func:`make_length_function`."""

    poset: Poset
    values: Mapping[ElementId, ChainValue] = field(repr=False)
    depth: int = 0

    def __call__(self, x: ElementId) -> ChainValue:
        try:
            return self.values[x]
        except KeyError:
            raise UnknownElement(x) from None

    def __hash__(self) -> int:
        return hash((self.poset, tuple(self.values[x] for x in self.poset.elements)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LengthFunction):
            return NotImplemented
        return self.poset == other.poset and dict(self.values) == dict(other.values)

    def compare(self, x: ElementId, y: ElementId) -> CompareResult:
        return compare_values(self(x), self(y))


def normalize_values(p: Poset, values: Mapping[ElementId, Any]) -> dict[ElementId, ChainValue]:
    for x in values:
        p.require(x)
    missing = [x for x in p.elements if x not in values]
    if missing:
        raise InputError(f"No value for {missing}")
    out = {}
    for x in p.elements:
        v = values[x]
        out[x] = v if isinstance(v, (Fraction, tuple)) else value_from_json(v)
    return out


def common_depth(values: Mapping[ElementId, ChainValue]) -> int:
    depths = {value_depth(v) for v in values.values()}
    if len(depths) > 1:
        raise DepthMismatch(f"Values of mixed depth {sorted(depths)}")
    return depths.pop() if depths else 0


def validate_length_function(
    p: Poset,
    values: Mapping[ElementId, Any],
    comparator: Optional[Comparator] = None,
) -> ValidationReport:
    """Check (L1)-(L3) and report every violation with its witnesses.

    Args:
        p: The poset.
        values: A value for every element.
        comparator: Order on the target; defaults to ``compare_values``. A
            partial comparator makes (L2) meaningful.
    """
    normalized = normalize_values(p, values)
    if comparator is None:
        common_depth(normalized)
        comparator = compare_values
    violations: list[Violation] = []
    elements = p.elements
    for x, y in sorted(p.leq_pairs, key=lambda e: (p.index(e[0]), p.index(e[1]))):
        if x != y and comparator(normalized[x], normalized[y]) is not CompareResult.LESS_THAN:
            violations.append(Violation(axiom="L1", witnesses=(x, y)))
    for i, x in enumerate(elements):
        for y in elements[i + 1 :]:
            if comparator(normalized[x], normalized[y]) is CompareResult.INCOMPARABLE:
                violations.append(Violation(axiom="L2", witnesses=(x, y)))
    return ValidationReport(violations=violations)


def make_length_function(
    p: Poset,
    values: Mapping[ElementId, Any],
    validate: bool = True,
) -> LengthFunction:
    """Build a length function, validating (L1)-(L3) eagerly.

    Raises:
        InvalidLengthFunction: With the report when an axiom fails.
    """
    normalized = normalize_values(p, values)
    depth = common_depth(normalized)
    if validate:
        report = validate_length_function(p, normalized)
        if not report.ok:
            raise InvalidLengthFunction(report)
    return LengthFunction(p, MappingProxyType(normalized), depth)


def lambda0(f: LengthFunction, x: ElementId) -> int:
    """Number of distinct values on the down-set of ``x``."""
    return len({f(y) for y in f.poset.down_set(x)})


def equivalence_witness(
    f: LengthFunction, g: LengthFunction
) -> Optional[tuple[ElementId, ElementId]]:
    """First pair, in input order, on which ``f`` and ``g`` compare differently."""
    if f.poset != g.poset:
        raise PosetMismatch("Length functions live on different posets")
    elements = f.poset.elements
    for i, x in enumerate(elements):
        for y in elements[i + 1 :]:
            if f.compare(x, y) is not g.compare(x, y):
                return (x, y)
    return None


def are_equivalent(f: LengthFunction, g: LengthFunction) -> bool:
    """Whether ``f(x) <= f(y)`` iff ``g(x) <= g(y)`` for all x, y."""
    return equivalence_witness(f, g) is None


def is_rank_function(f: LengthFunction) -> bool:
    """Minimal elements share a value and every cover raises the value by one.

    Raises:
        NonIntegerValues: If some value is nested or not an integer.
    """
    for x in f.poset.elements:
        v = f(x)
        if isinstance(v, tuple) or v.denominator != 1:
            raise NonIntegerValues(f"Value of {x!r} is not an integer")
    minimal = {f(x) for x in f.poset.minimal_elements()}
    if len(minimal) > 1:
        return False
    return all(f(x) == f(y) - 1 for x, y in f.poset.covers)


# ===== STOCK LENGTH FUNCTIONS =====


def height_function(p: Poset) -> LengthFunction:
    """Largest cardinality of a chain ending at each element."""
    values = {
        x: Fraction(max(len(c) for c in enumerate_chains_ending_at(p, x))) for x in p.elements
    }
    return make_length_function(p, values)


def down_set_size_function(p: Poset) -> LengthFunction:
    """Cardinality of the down-set of each element."""
    return make_length_function(p, {x: Fraction(len(p.down_set(x))) for x in p.elements})


def order_classes(f: LengthFunction) -> list[list[ElementId]]:
    """Tie groups of equal value in ascending order, input order inside a group."""
    ordered = sorted(f.poset.elements, key=lambda x: value_key(f(x)))
    groups: list[list[ElementId]] = []
    for x in ordered:
        if groups and f.compare(groups[-1][0], x) is CompareResult.EQUAL:
            groups[-1].append(x)
        else:
            groups.append([x])
    return groups


def relabel_by_rank(f: LengthFunction) -> LengthFunction:
    """Equivalent integer length function with values 1..k."""
    values = {
        x: Fraction(rank) for rank, group in enumerate(order_classes(f), start=1) for x in group
    }
    return make_length_function(f.poset, values, validate=False)


# ===== JSON =====


def length_function_from_json(data: Mapping[str, Any]) -> LengthFunction:
    """Read ``{"poset": {...}, "values": {"a": "4", ...}}`` and validate it."""
    spec = LengthFunctionSpec.model_validate(data)
    p = poset_from_json(spec.poset.model_dump())
    return make_length_function(p, spec.values)


def length_function_to_json(f: LengthFunction) -> dict[str, Any]:
    return {
        "poset": poset_to_json(f.poset),
        "values": {x: value_to_json(f(x)) for x in f.poset.elements},
    }
