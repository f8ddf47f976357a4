"""The chain length function and its iterates.

For a length function ``lam`` the chain length function sends ``x`` to the
lexicographic maximum of ``{lam(x') | x' in X}`` over all chains X with
maximum ``x``. It is computed in one topological pass:

    lam*(x) = max_{x' < x} lam*(x')  +  (lam(x),)

with the empty chain as maximum over no predecessors. On the poset of
indecomposables of a length category this is the Gabriel-Roiter measure.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Mapping, Optional

from gabriel_roiter.config import get_settings
from gabriel_roiter.errors import (
    InputError,
    InvalidFiltration,
    IterationBudgetExceeded,
    PosetMismatch,
)
from gabriel_roiter.length_functions import (
    LengthFunction,
    common_depth,
    make_length_function,
    normalize_values,
    order_classes,
)
from gabriel_roiter.order_core import (
    EMPTY_CHAIN,
    ChainValue,
    CompareResult,
    ElementId,
    Poset,
    compare_values,
    enumerate_chains_ending_at,
    max_value,
    value_to_json,
)
from gabriel_roiter.schemas import AxiomReport, MeasureOutput, Violation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Measure:
    """Values of the chain length function of ``base``."""

    base: LengthFunction
    values: Mapping[ElementId, ChainValue] = field(repr=False)

    @property
    def poset(self) -> Poset:
        return self.base.poset

    def __call__(self, x: ElementId) -> ChainValue:
        self.poset.require(x)
        return self.values[x]

    def as_length_function(self) -> LengthFunction:
        """The measure itself, which is again a length function."""
        return make_length_function(self.poset, self.values, validate=False)


@dataclass(frozen=True)
class GRFiltration:
    """A sequence x_1 < ... < x_gamma = x of maximal-measure predecessors."""

    steps: tuple[ElementId, ...]

    @property
    def gamma(self) -> int:
        return len(self.steps)


# ===== MEASURE =====


def measure_oracle(lam: LengthFunction, x: ElementId) -> ChainValue:
    """Lex-maximum of the value chains of all chains ending at ``x``."""
    chains = enumerate_chains_ending_at(lam.poset, x)
    # values along a chain already ascend strictly
    return max_value(tuple(lam(m) for m in chain.members) for chain in chains)


def measure_dp(lam: LengthFunction) -> Measure:
    """All values of the chain length function in one topological pass."""
    return _measure_dp(lam)


@functools.lru_cache(maxsize=256)
def _measure_dp(lam: LengthFunction) -> Measure:
    p = lam.poset
    values: dict[ElementId, ChainValue] = {}
    for x in p.topological_order():
        best = max_value((values[y] for y in p.strictly_below(x)), default=EMPTY_CHAIN)
        values[x] = best + (lam(x),)
    return Measure(lam, MappingProxyType(values))


def iterate_measure(lam: LengthFunction, n: int, cap: Optional[int] = None) -> LengthFunction:
    """Apply the chain length function ``n`` times.

    Raises:
        IterationBudgetExceeded: If ``n`` exceeds ``cap`` (default from settings).
    """
    if n < 0:
        raise InputError(f"Iteration count must be non-negative, got {n}")
    limit = get_settings().iteration_cap if cap is None else cap
    if n > limit:
        raise IterationBudgetExceeded(f"n={n} exceeds the iteration cap {limit}")
    current = lam
    for step in range(n):
        current = measure_dp(current).as_length_function()
        logger.debug("iteration %d done, depth %d", step + 1, current.depth)
    return current


# ===== FILTRATIONS =====


def gr_predecessors(m: Measure, x: ElementId) -> tuple[ElementId, ...]:
    """Strict predecessors of ``x`` of maximal measure, in input order."""
    below = m.poset.strictly_below(x)
    if not below:
        return ()
    best = max_value(m(y) for y in below)
    return tuple(y for y in below if compare_values(m(y), best) is CompareResult.EQUAL)


def gr_filtration(m: Measure, x: ElementId) -> GRFiltration:
    """The filtration that always picks the first attaining predecessor."""
    steps = [x]
    current = x
    while predecessors := gr_predecessors(m, current):
        current = predecessors[0]
        steps.append(current)
    return GRFiltration(tuple(reversed(steps)))


def all_filtrations(m: Measure, x: ElementId) -> list[GRFiltration]:
    """Every filtration ending at ``x``."""
    predecessors = gr_predecessors(m, x)
    if not predecessors:
        return [GRFiltration((x,))]
    return [
        GRFiltration(f.steps + (x,))
        for y in predecessors
        for f in all_filtrations(m, y)
    ]


def is_filtration(m: Measure, filt: GRFiltration) -> bool:
    """Whether ``filt`` is a filtration for ``m``."""
    steps = filt.steps
    p = m.poset
    if not steps or any(s not in p for s in steps):
        return False
    if p.strictly_below(steps[0]):
        return False
    return all(prev in gr_predecessors(m, nxt) for prev, nxt in zip(steps, steps[1:]))


def measure_from_filtration(lam: LengthFunction, filt: GRFiltration) -> ChainValue:
    """The chain of base values along a filtration.

    Raises:
        InvalidFiltration: If ``filt`` is not a filtration for the measure of ``lam``.
    """
    if not is_filtration(measure_dp(lam), filt):
        raise InvalidFiltration(f"{list(filt.steps)} is not a Gabriel-Roiter filtration")
    return tuple(lam(s) for s in filt.steps)


# ===== AXIOM CHECKERS =====


def _monotone_violations(
    lam: LengthFunction,
    mu: Mapping[ElementId, ChainValue],
    tags: tuple[str, str, str],
) -> list[Violation]:
    p = lam.poset
    elements = p.elements
    first, second, third = tags
    violations: list[Violation] = []
    for x in elements:
        for y in p.elements:
            if p.lt(x, y) and not compare_values(mu[x], mu[y]).is_leq:
                violations.append(Violation(axiom=first, witnesses=(x, y)))
    for i, x in enumerate(elements):
        for y in elements[i + 1 :]:
            if compare_values(mu[x], mu[y]) is CompareResult.EQUAL and lam(x) != lam(y):
                violations.append(Violation(axiom=second, witnesses=(x, y)))
    for x in elements:
        below_x = p.strictly_below(x)
        for y in elements:
            if x == y or not compare_values(lam(x), lam(y)).is_geq:
                continue
            if not all(
                compare_values(mu[z], mu[y]) is CompareResult.LESS_THAN for z in below_x
            ):
                continue
            if not compare_values(mu[x], mu[y]).is_leq:
                violations.append(Violation(axiom=third, witnesses=(x, y)))
    return violations


def check_M_axioms(lam: LengthFunction, mu: Mapping[ElementId, Any]) -> AxiomReport:
    """Check (M1)-(M3) for an arbitrary candidate map ``mu``.

    (M1) x <= y implies mu(x) <= mu(y); (M2) mu(x) = mu(y) implies
    lam(x) = lam(y); (M3) mu(x') < mu(y) for all x' < x together with
    lam(x) >= lam(y) implies mu(x) <= mu(y).
    """
    normalized = normalize_values(lam.poset, mu)
    common_depth(normalized)
    violations = _monotone_violations(lam, normalized, ("M1", "M2", "M3"))
    return AxiomReport(violations=violations, checked=["M1", "M2", "M3"])


def check_C_properties(lam: LengthFunction, m: Measure) -> AxiomReport:
    """Check (C0)-(C3) of a measure against its base length function.

    Raises:
        PosetMismatch: If ``m`` lives on another poset.
    """
    if m.poset != lam.poset:
        raise PosetMismatch("Measure and length function live on different posets")
    p = lam.poset
    violations: list[Violation] = []
    for x in p.elements:
        expected = max_value((m(y) for y in p.strictly_below(x)), default=EMPTY_CHAIN) + (lam(x),)
        if m(x) != expected:
            violations.append(Violation(axiom="C0", witnesses=(x,)))
    violations.extend(_monotone_violations(lam, m.values, ("C1", "C2", "C3")))
    return AxiomReport(violations=violations, checked=["C0", "C1", "C2", "C3"])


def check_equality_criterion(lam: LengthFunction, m: Measure) -> AxiomReport:
    """mu(x) = mu(y) iff the predecessor maxima agree and lam(x) = lam(y)."""
    p = lam.poset
    top = {x: max_value((m(y) for y in p.strictly_below(x)), default=EMPTY_CHAIN) for x in p}
    violations = []
    elements = p.elements
    for i, x in enumerate(elements):
        for y in elements[i + 1 :]:
            same = compare_values(m(x), m(y)) is CompareResult.EQUAL
            criterion = (
                compare_values(top[x], top[y]) is CompareResult.EQUAL and lam(x) == lam(y)
            )
            if same != criterion:
                violations.append(Violation(axiom="EQ", witnesses=(x, y)))
    return AxiomReport(violations=violations, checked=["EQ"])


# ===== OUTPUT =====


def measure_output(m: Measure) -> MeasureOutput:
    """Order, values and tie groups of a measure."""
    return length_function_output(m.as_length_function())


def length_function_output(f: LengthFunction) -> MeasureOutput:
    groups = order_classes(f)
    return MeasureOutput(
        order=[x for group in groups for x in group],
        values={x: value_to_json(f(x)) for x in f.poset.elements},
        ties=[group for group in groups if len(group) > 1],
    )
