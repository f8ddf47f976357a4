"""Exception hierarchy shared by every module of the package.

Input and validation problems derive from ``ValueError``; exhausted budgets
and bounds derive from ``RuntimeError``. The CLI maps both families onto its
exit-code contract.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:
    from gabriel_roiter.schemas import ValidationReport


class GabrielRoiterError(Exception):
    """Root of all errors raised by the library."""


# ===== INPUT AND VALIDATION ERRORS =====


class InputError(GabrielRoiterError, ValueError):
    """Malformed or inconsistent input data."""


class UnknownElement(InputError):
    """An element id is not part of the poset."""

    def __init__(self, element: str):
        super().__init__(f"Unknown element: {element!r}")
        self.element = element


class CycleDetected(InputError):
    """The reflexive-transitive closure of a relation is not antisymmetric."""

    def __init__(self, cycle: Sequence[str]):
        super().__init__(f"Relation is not antisymmetric, cycle through {list(cycle)}")
        self.cycle = tuple(cycle)


class NotAChain(InputError):
    """A claimed chain contains two incomparable (or repeated) members."""


class NotARational(InputError):
    """A scalar in the input is not an exact rational number."""


class DepthMismatch(InputError):
    """Two chain values of different nesting depth were compared."""


class NonPositiveMember(InputError):
    """Dyadic encoding was asked for a chain with a non-positive member."""


class PosetMismatch(InputError):
    """Two objects were expected to live on the same poset but do not."""


class NonIntegerValues(InputError):
    """A rank-function check was asked for non-integer or nested values."""


class InvalidLengthFunction(InputError):
    """A candidate map violates one of the length-function axioms."""

    def __init__(self, report: ValidationReport):
        tags = sorted({v.axiom for v in report.violations})
        super().__init__(f"Not a length function, violated: {', '.join(tags)}")
        self.report = report


class InvalidFiltration(InputError):
    """A sequence is not a Gabriel-Roiter filtration."""


class QuiverMismatch(InputError):
    """Representations over different quivers or fields were combined."""


class CyclicQuiver(InputError):
    """The quiver has an oriented cycle."""


class InvalidField(InputError):
    """The characteristic is not a prime within the supported range."""


class ZeroRepresentation(InputError):
    """An operation that needs a non-zero representation got the zero one."""


# ===== BUDGET ERRORS =====


class BudgetError(GabrielRoiterError, RuntimeError):
    """A computation would exceed one of the configured budgets."""


class IterationBudgetExceeded(BudgetError):
    """More iterations of the chain length function than the cap allows."""


class BudgetExceeded(BudgetError):
    """Orbit enumeration for a dimension vector exceeds the tuple budget."""

    def __init__(self, message: str, dims: Sequence[int] = ()):
        super().__init__(message)
        self.dims = tuple(dims)


class HomSpaceTooLarge(BudgetError):
    """A morphism space is too large to scan exhaustively."""


class BoundTooTight(BudgetError):
    """Direct sums would exceed the length bound of the enumeration."""


class TruncatedCategory(BudgetError):
    """An exact statement was requested on a truncated category."""
