"""Pydantic Schemas for the JSON surface and the verification reports.

This module defines the structured input files read by the CLI (posets,
length functions, quivers) and every report or result object the library
hands back in serializable form.
"""

from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator
from pydantic.alias_generators import to_camel

# ===== INPUT SCHEMAS =====


class PosetSpec(BaseModel):
    """Schema for a finite poset given by any generating relation."""

    elements: list[str] = Field(description="Element ids; input order is the tie-break order.")
    relations: list[tuple[str, str]] = Field(
        default_factory=list,
        description="Pairs (lower, upper); closure and covers are recomputed.",
    )


class LengthFunctionSpec(BaseModel):
    """Schema for a length function on a poset."""

    poset: PosetSpec
    values: dict[str, Any] = Field(
        description="Element id to rational string, or nested arrays for deeper values.",
    )


class QuiverSpec(BaseModel):
    """Schema for a quiver together with the field and enumeration bound."""

    model_config = ConfigDict(populate_by_name=True)

    vertices: list[str]
    arrows: list[tuple[str, str]] = Field(default_factory=list)
    p: int = Field(default=2, description="Characteristic of the prime field.")
    max_len: int = Field(default=5, alias="maxLen", description="Total dimension bound.")
    simple_lengths: Optional[dict[str, str]] = Field(
        default=None,
        alias="simpleLengths",
        description="Vertex to positive rational value of the simple; defaults to 1.",
    )


# ===== REPORT SCHEMAS =====

AxiomTag = Literal[
    "L1", "L2", "L3", "M1", "M2", "M3", "C0", "C1", "C2", "C3", "EQ", "GR1", "GR2", "GR3", "SOC"
]


class _Report(BaseModel):
    model_config = ConfigDict(alias_generator=to_camel, populate_by_name=True)


class Violation(_Report):
    """A single axiom violation together with the elements witnessing it."""

    axiom: AxiomTag
    witnesses: tuple[str, ...]
    detail: str = ""


class ValidationReport(_Report):
    """Outcome of checking the length-function axioms (L1)-(L3)."""

    violations: list[Violation] = Field(default_factory=list)
    checked: list[AxiomTag] = Field(default_factory=lambda: ["L1", "L2", "L3"])

    @property
    def ok(self) -> bool:
        """Whether no axiom is violated."""
        return not self.violations

    @property
    def satisfied(self) -> list[str]:
        """Checked axioms without any violation."""
        failed = {v.axiom for v in self.violations}
        return [tag for tag in self.checked if tag not in failed]


class AxiomReport(ValidationReport):
    """Outcome of an (M1)-(M3), (C0)-(C3) or lemma check."""

    checked: list[AxiomTag] = Field(default_factory=list)


class MainPropertyViolation(_Report):
    """A monomorphism X -> Y_1 + ... + Y_r contradicting the main property."""

    x: str
    ys: list[str]
    kind: Literal["InequalityFailed", "SummandFailed"]


class MainPropertyReport(_Report):
    """Result of checking Gabriel's main property over all small triples."""

    checked_triples: int = 0
    violations: list[MainPropertyViolation] = Field(default_factory=list)
    length_function: dict[str, str] = Field(default_factory=dict)

    @property
    def ok(self) -> bool:
        """Whether the property held for every checked triple."""
        return not self.violations


class DetectionResult(_Report):
    """Classes singled out by the measure, with the witnessing length functions."""

    detected: list[str] = Field(default_factory=list)
    witness_length_functions: dict[str, dict[str, str]] = Field(default_factory=dict)
    exact: bool = True


# ===== OUTPUT SCHEMAS =====


class MeasureOutput(BaseModel):
    """Values of a measure, the induced order and its tie groups."""

    order: list[str]
    values: dict[str, Any]
    ties: list[list[str]]


class IndPosetExport(_Report):
    """The poset of indecomposables with its length data."""

    elements: list[str]
    relations: list[tuple[str, str]]
    lengths: dict[str, str]
    dims: dict[str, list[int]]
    labels: dict[str, str]
    p: int
    max_len: int
    complete: bool


# ===== RUN CONFIGURATION =====


class RunConfig(BaseModel):
    """Validated command-line configuration."""

    command: str
    action: Optional[str] = None
    input: Optional[str] = None
    input2: Optional[str] = None
    output_format: Literal["json", "table", "dot"] = "json"
    n: int = Field(default=1, ge=0)
    max_len: Optional[int] = Field(default=None, ge=1)
    field: Optional[int] = None
    seed: Optional[int] = None
    max_summands: int = Field(default=2, ge=1)
    instances: int = Field(default=100, ge=1)

    @field_validator("n")
    @classmethod
    def _within_iteration_cap(cls, value: int) -> int:
        from gabriel_roiter.config import get_settings

        cap = get_settings().iteration_cap
        if value > cap:
            raise ValueError(f"n={value} exceeds the iteration cap {cap}")
        return value

    @field_validator("max_len")
    @classmethod
    def _within_length_cap(cls, value: Optional[int]) -> Optional[int]:
        from gabriel_roiter.config import get_settings

        cap = get_settings().max_len_cap
        if value is not None and value > cap:
            raise ValueError(f"max-len {value} exceeds the cap {cap}")
        return value

    @field_validator("field")
    @classmethod
    def _small_prime(cls, value: Optional[int]) -> Optional[int]:
        from gabriel_roiter.config import get_settings

        if value is None:
            return value
        if value < 2 or any(value % d == 0 for d in range(2, value)):
            raise ValueError(f"field characteristic {value} is not prime")
        if value > get_settings().max_prime:
            raise ValueError(f"field characteristic {value} exceeds {get_settings().max_prime}")
        return value


class SuiteFailure(_Report):
    """A property that failed on one random instance."""

    check: str
    instance: int
    detail: str = ""


class SuiteReport(_Report):
    """Outcome of the seeded random property suite."""

    seed: int
    instances: int
    checks: list[str] = Field(default_factory=list)
    failures: list[SuiteFailure] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures
