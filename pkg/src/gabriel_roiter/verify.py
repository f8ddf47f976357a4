"""Exhaustive checks of measure statements on enumerated categories.

Given the poset of indecomposables of a quiver up to some length, this
module checks Gabriel's main property (a monomorphism X -> Y_1 + ... + Y_r
forces mu(X) <= max mu(Y_i), with X a summand in case of equality), detects
injective and simple indecomposables through the measure, compares socle
values against measures, and runs the seeded random property suite on
abstract posets.
"""

from __future__ import annotations

import functools
import itertools
import logging
import random
from typing import Optional

import numpy as np

from gabriel_roiter.errors import BoundTooTight, TruncatedCategory
from gabriel_roiter.fixtures import random_length_function, random_poset
from gabriel_roiter.gr_measure import (
    Measure,
    check_C_properties,
    check_equality_criterion,
    check_M_axioms,
    gr_filtration,
    measure_dp,
    measure_from_filtration,
    measure_oracle,
)
from gabriel_roiter.length_functions import validate_length_function
from gabriel_roiter.linalg_fp import solve
from gabriel_roiter.order_core import (
    CompareResult,
    compare_values,
    max_value,
    value_key,
    value_to_json,
)
from gabriel_roiter.repcat import (
    CategoryLengthFunction,
    FieldSpec,
    IndPoset,
    Morphism,
    Quiver,
    Representation,
    decompose,
    direct_sum,
    ell_S,
    ell_top,
    enumerate_ind,
    exists_mono,
    hom_space,
    is_isomorphic,
    iter_monos,
    socle_dimension,
    socle_simples,
)
from gabriel_roiter.schemas import (
    AxiomReport,
    DetectionResult,
    MainPropertyReport,
    MainPropertyViolation,
    SuiteFailure,
    SuiteReport,
    Violation,
)

logger = logging.getLogger(__name__)


def category_measure(ip: IndPoset, ell: CategoryLengthFunction) -> Measure:
    """The Gabriel-Roiter measure of ``ell`` on the enumerated classes."""
    return measure_dp(ip.length_function(ell))


# ===== MAIN PROPERTY =====


def check_main_property(
    ip: IndPoset,
    ell: CategoryLengthFunction,
    max_summands: int = 2,
    max_len: Optional[int] = None,
) -> MainPropertyReport:
    """Check the main property for every X and every multiset of r <= max_summands classes.

    Sums are limited to total dimension ``max_len`` (default: the enumeration
    bound), so that every indecomposable embedding into them is enumerated.

    Raises:
        BoundTooTight: If ``max_len`` exceeds the enumeration bound.
    """
    bound = ip.max_len if max_len is None else max_len
    if bound > ip.max_len:
        raise BoundTooTight(
            f"Sums of length {bound} exceed the enumeration bound {ip.max_len}"
        )
    mu = category_measure(ip, ell)
    classes = ip.classes
    report = MainPropertyReport(length_function=ell.to_json())

    for r in range(1, max_summands + 1):
        for ys in itertools.combinations_with_replacement(classes, r):
            if sum(y.length for y in ys) > bound:
                continue
            labels = [y.label for y in ys]
            total = direct_sum(*(y.rep for y in ys))
            top = max_value(mu(label) for label in labels)
            for x in classes:
                if x.length > total.total_dimension:
                    continue
                if r == 1:
                    embeds = ip.poset.leq(x.label, labels[0])
                else:
                    embeds = exists_mono(x.rep, total)
                if not embeds:
                    continue
                report.checked_triples += 1
                result = compare_values(mu(x.label), top)
                if result is CompareResult.GREATER_THAN:
                    report.violations.append(
                        MainPropertyViolation(x=x.label, ys=labels, kind="InequalityFailed")
                    )
                elif result is CompareResult.EQUAL and not any(
                    is_isomorphic(x.rep, part) for part in _summands(total)
                ):
                    report.violations.append(
                        MainPropertyViolation(x=x.label, ys=labels, kind="SummandFailed")
                    )
    logger.debug(
        "main property: %d triples, %d violations",
        report.checked_triples,
        len(report.violations),
    )
    return report


@functools.lru_cache(maxsize=1024)
def _summands(total: Representation) -> tuple[Representation, ...]:
    return tuple(decompose(total))


# ===== DETECTION =====


def _require_complete(ip: IndPoset, advisory: bool) -> None:
    if not ip.complete and not advisory:
        raise TruncatedCategory(
            "The enumeration does not contain every indecomposable; pass advisory=True"
        )


def detect_injectives(ip: IndPoset, advisory: bool = False) -> DetectionResult:
    """Classes Q with unique socle S whose measure under ell_S is the maximum.

    Raises:
        TruncatedCategory: On an incomplete enumeration unless ``advisory``.
    """
    _require_complete(ip, advisory)
    result = DetectionResult(exact=ip.complete)
    measures: dict[str, Measure] = {}
    for c in ip.classes:
        socle = socle_simples(c.rep)
        if len(socle) != 1:
            continue
        (vertex,) = socle
        if vertex not in measures:
            measures[vertex] = category_measure(ip, ell_S(ip.quiver, vertex))
        mu = measures[vertex]
        top = max_value(mu(label) for label in ip.labels)
        if compare_values(mu(c.label), top) is CompareResult.EQUAL:
            result.detected.append(c.label)
            result.witness_length_functions[c.label] = ell_S(ip.quiver, vertex).to_json()
    return result


def detect_simples(ip: IndPoset, advisory: bool = False) -> DetectionResult:
    """Classes of minimal measure for some length function 2 on one simple and 1 elsewhere.

    Raises:
        TruncatedCategory: On an incomplete enumeration unless ``advisory``.
    """
    _require_complete(ip, advisory)
    result = DetectionResult(exact=ip.complete)
    for vertex in ip.quiver.vertices:
        ell = ell_top(ip.quiver, vertex)
        mu = category_measure(ip, ell)
        values = [mu(label) for label in ip.labels]
        bottom = min(values, key=value_key)
        for label in ip.labels:
            if label in result.witness_length_functions:
                continue
            if compare_values(mu(label), bottom) is CompareResult.EQUAL:
                result.witness_length_functions[label] = ell.to_json()
    result.detected = [label for label in ip.labels if label in result.witness_length_functions]
    return result


def _splits(phi: Morphism) -> bool:
    """Whether some psi in Hom(target, source) has psi o phi = id."""
    source, target = phi.source, phi.target
    p = source.p
    basis = hom_space(target, source)
    identity = np.concatenate([np.eye(d, dtype=np.int64).ravel() for d in source.dims])
    if not basis:
        return not identity.size
    columns = [
        np.concatenate([b.ravel() for b in psi.compose(phi).blocks]) for psi in basis
    ]
    return solve(np.stack(columns, axis=1), identity, p) is not None


def _is_injective_object(q_rep: Representation, ip: IndPoset) -> bool:
    reach = socle_dimension(q_rep)
    for r in range(1, reach + 1):
        for ys in itertools.combinations_with_replacement(ip.classes, r):
            target = direct_sum(*(y.rep for y in ys))
            if any(not _splits(phi) for phi in iter_monos(q_rep, target)):
                return False
    return True


def oracle_injectives(
    q: Quiver, f: FieldSpec, max_len: int, advisory: bool = False
) -> list[str]:
    """Injective classes by a splitting test that does not look at measures.

    Q is injective iff every monomorphism from Q splits; a non-split one, if
    any, goes into the injective envelope, a sum of socle-dimension many
    indecomposables, so targets range over sums of that many classes.

    Raises:
        TruncatedCategory: On an incomplete enumeration unless ``advisory``.
    """
    ip = enumerate_ind(q, f, max_len)
    _require_complete(ip, advisory)
    return [c.label for c in ip.classes if _is_injective_object(c.rep, ip)]


def check_socle_lemma(ip: IndPoset, ell: CategoryLengthFunction) -> AxiomReport:
    """Smaller socle values force a larger measure.

    For X, Y such that every simple under X has smaller length than every
    simple under Y, checks mu(X) > mu(Y).
    """
    mu = category_measure(ip, ell)
    socle_values = {
        c.label: [ell.value(v) for v in socle_simples(c.rep)] for c in ip.classes
    }
    violations = []
    for x in ip.labels:
        for y in ip.labels:
            if x == y or max(socle_values[x]) >= min(socle_values[y]):
                continue
            if compare_values(mu(x), mu(y)) is not CompareResult.GREATER_THAN:
                violations.append(Violation(axiom="SOC", witnesses=(x, y)))
    return AxiomReport(violations=violations, checked=["SOC"])


def check_gr_axioms(ip: IndPoset, ell: CategoryLengthFunction) -> AxiomReport:
    """(GR1)-(GR3) for the measure on the enumerated classes.

    GR1 is checked against every monomorphism between listed classes.
    """
    lam = ip.length_function(ell)
    mu = measure_dp(lam)
    report = check_M_axioms(lam, mu.values)
    tags = {"M1": "GR1", "M2": "GR2", "M3": "GR3"}
    violations = [
        Violation(axiom=tags[v.axiom], witnesses=v.witnesses) for v in report.violations
    ]
    for x in ip.classes:
        for y in ip.classes:
            if x.label == y.label or not exists_mono(x.rep, y.rep):
                continue
            if not compare_values(mu(x.label), mu(y.label)).is_leq:
                violations.append(
                    Violation(axiom="GR1", witnesses=(x.label, y.label), detail="monomorphism")
                )
    return AxiomReport(violations=violations, checked=["GR1", "GR2", "GR3"])


# ===== RANDOM PROPERTY SUITE =====

SUITE_CHECKS = ("oracle", "C0-C3", "M1-M3", "L1-L3", "filtration", "EQ")


def run_property_suite(seed: int, instances: int = 100, max_size: int = 8) -> SuiteReport:
    """Random posets of up to ``max_size`` elements with random rational length functions.

    Each instance checks oracle/DP agreement, (C0)-(C3), (M1)-(M3) for the
    measure, that the measure is a length function, the filtration identity
    and the equality criterion.
    """
    rng = random.Random(seed)
    report = SuiteReport(seed=seed, instances=instances, checks=list(SUITE_CHECKS))

    def fail(check: str, instance: int, detail: str) -> None:
        report.failures.append(SuiteFailure(check=check, instance=instance, detail=detail))

    for i in range(instances):
        p = random_poset(rng, rng.randint(1, max_size))
        lam = random_length_function(rng, p)
        m = measure_dp(lam)
        for x in p.elements:
            if measure_oracle(lam, x) != m(x):
                fail("oracle", i, f"element {x}: {value_to_json(m(x))}")
            if measure_from_filtration(lam, gr_filtration(m, x)) != m(x):
                fail("filtration", i, f"element {x}")
        for check, axiom_report in (
            ("C0-C3", check_C_properties(lam, m)),
            ("M1-M3", check_M_axioms(lam, m.values)),
            ("L1-L3", validate_length_function(p, m.values)),
            ("EQ", check_equality_criterion(lam, m)),
        ):
            for v in axiom_report.violations:
                fail(check, i, f"{v.axiom} at {list(v.witnesses)}")
    logger.debug("property suite seed=%d: %d failures", seed, len(report.failures))
    return report
