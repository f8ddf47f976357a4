"""Command-line front end.

Examples:
    gabriel-roiter measure --input zigzag.json -n 1
    gabriel-roiter equiv --input l1.json --input2 l3.json
    gabriel-roiter quiver measure --input kronecker.json --max-len 5 --format table
    gabriel-roiter quiver ind --input a3.json > ind.json && gabriel-roiter measure --input ind.json
    gabriel-roiter check --seed 7

Exit codes: 0 ok, 1 I/O or parse error, 2 validation failure, 3 not
equivalent, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from pydantic import ValidationError

from gabriel_roiter.config import get_settings
from gabriel_roiter.errors import BudgetError, InputError, InvalidLengthFunction, NotARational
from gabriel_roiter.gr_measure import iterate_measure, length_function_output
from gabriel_roiter.length_functions import (
    LengthFunction,
    equivalence_witness,
    length_function_from_json,
)
from gabriel_roiter.order_core import poset_to_dot
from gabriel_roiter.repcat import (
    FieldSpec,
    enumerate_ind,
    is_export,
    length_function_from_export,
    quiver_from_json,
    random_length,
    socle_simples,
)
from gabriel_roiter.schemas import MeasureOutput, RunConfig
from gabriel_roiter.utils import (
    configure_logging,
    emit_json,
    emit_text,
    format_value,
    show_failure,
    show_table,
)
from gabriel_roiter.verify import (
    check_main_property,
    detect_injectives,
    detect_simples,
    run_property_suite,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_NOT_EQUIVALENT = 3
EXIT_BUDGET = 4

QUIVER_ACTIONS = (
    "ind",
    "measure",
    "iterate",
    "verify-main",
    "detect-injectives",
    "detect-simples",
)


class ParseFailure(Exception):
    """An input file could not be read or does not match its schema."""


# ===== ARGUMENTS =====


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=["json", "table", "dot"], default="json")
    common.add_argument("--log-level", default=None, help="Overrides GR_LOG_LEVEL")

    parser = argparse.ArgumentParser(
        prog="gabriel-roiter",
        description="Chain length functions and the Gabriel-Roiter measure",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    measure = sub.add_parser("measure", parents=[common], help="Iterated chain length function")
    measure.add_argument("--input", required=True, help="Length function JSON or a quiver ind export")
    measure.add_argument("-n", type=int, default=1, help="Number of iterations")

    equiv = sub.add_parser("equiv", parents=[common], help="Compare two length functions")
    equiv.add_argument("--input", required=True)
    equiv.add_argument("--input2", required=True)

    quiver = sub.add_parser("quiver", parents=[common], help="Quiver representation commands")
    quiver.add_argument("action", choices=QUIVER_ACTIONS)
    quiver.add_argument("--input", required=True, help="Quiver JSON")
    quiver.add_argument("-n", type=int, default=1)
    quiver.add_argument("--max-len", type=int, default=None, help="Overrides maxLen")
    quiver.add_argument("--field", type=int, default=None, help="Overrides p")
    quiver.add_argument("--seed", type=int, default=None, help="Adds two random length functions")
    quiver.add_argument("--max-summands", type=int, default=2)
    quiver.add_argument(
        "--advisory", action="store_true", help="Allow detection on a truncated category"
    )

    check = sub.add_parser("check", parents=[common], help="Seeded random property suite")
    check.add_argument("--seed", type=int, default=0)
    check.add_argument("--instances", type=int, default=100)
    return parser


def _load_json(path: Optional[str]) -> Any:
    if path is None:
        raise ParseFailure("No input file given")
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseFailure(f"Cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseFailure(f"{path} is not valid JSON: {exc}") from exc


def _read_length_function(path: Optional[str]) -> LengthFunction:
    """Read a length function file or an exported poset of indecomposables."""
    data = _load_json(path)
    try:
        if is_export(data):
            return length_function_from_export(data)
        return length_function_from_json(data)
    except (ValidationError, NotARational) as exc:
        raise ParseFailure(f"{path}: {exc}") from exc


# ===== RENDERING =====


def _render_output(out: MeasureOutput, config: RunConfig, title: str, dot: Optional[str] = None) -> None:
    if config.output_format == "table":
        tie_of = {x: i for i, group in enumerate(out.ties, start=1) for x in group}
        rows = [
            (rank, x, format_value(out.values[x]), tie_of.get(x, ""))
            for rank, x in enumerate(out.order, start=1)
        ]
        show_table(title, ["#", "element", "value", "tie"], rows)
    elif config.output_format == "dot" and dot is not None:
        emit_text(dot)
    else:
        emit_json(out.model_dump())


# ===== COMMANDS =====


def cmd_measure(config: RunConfig) -> int:
    """Print the n-th iterate of the chain length function of a length function file."""
    lam = _read_length_function(config.input)
    result = iterate_measure(lam, config.n)
    out = length_function_output(result)
    labels = {x: format_value(out.values[x]) for x in out.order}
    _render_output(out, config, f"measure, n={config.n}", poset_to_dot(lam.poset, labels))
    return EXIT_OK


def cmd_equiv(config: RunConfig) -> int:
    """Exit 0 when the two length functions are equivalent, 3 otherwise."""
    f = _read_length_function(config.input)
    g = _read_length_function(config.input2)
    witness = equivalence_witness(f, g)
    if witness is None:
        emit_json({"equivalent": True})
        return EXIT_OK
    emit_json({"equivalent": False, "witness": list(witness)})
    return EXIT_NOT_EQUIVALENT


def cmd_quiver(config: RunConfig, advisory: bool = False) -> int:
    """Enumerate indecomposables of a quiver and run one of the quiver actions."""
    data = _load_json(config.input)
    try:
        q, f, max_len, ell = quiver_from_json(data)
    except (ValidationError, NotARational) as exc:
        raise ParseFailure(f"{config.input}: {exc}") from exc
    if config.field is not None:
        f = FieldSpec(config.field)
    if config.max_len is not None:
        max_len = config.max_len
    ip = enumerate_ind(q, f, max_len)
    action = config.action

    if action == "ind":
        if config.output_format == "dot":
            emit_text(ip.to_dot())
        elif config.output_format == "table":
            rows = [
                (c.label, list(c.dims), c.length, ",".join(socle_simples(c.rep)))
                for c in ip.classes
            ]
            show_table(f"ind, p={f.p}, maxLen={max_len}", ["class", "dims", "length", "socle"], rows)
        else:
            emit_json(ip.export(ell).model_dump(by_alias=True))
        return EXIT_OK

    if action in ("measure", "iterate"):
        n = 1 if action == "measure" else config.n
        result = iterate_measure(ip.length_function(ell), n)
        out = length_function_output(result)
        labels = {x: f"{x} {format_value(out.values[x])}" for x in out.order}
        _render_output(out, config, f"{action}, n={n}", poset_to_dot(ip.poset, labels, name="ind"))
        return EXIT_OK

    if action == "verify-main":
        lengths = [ell]
        if config.seed is not None:
            rng = random.Random(config.seed)
            lengths += [random_length(q, rng), random_length(q, rng)]
        reports = [check_main_property(ip, length, config.max_summands) for length in lengths]
        if config.output_format == "table":
            rows = [
                (json.dumps(r.length_function), r.checked_triples, len(r.violations))
                for r in reports
            ]
            show_table("main property", ["length function", "triples", "violations"], rows)
        else:
            emit_json({"reports": [r.model_dump(by_alias=True) for r in reports]})
        return EXIT_OK if all(r.ok for r in reports) else EXIT_VALIDATION

    detect = detect_injectives if action == "detect-injectives" else detect_simples
    result = detect(ip, advisory=advisory)
    if config.output_format == "table":
        rows = [(label, json.dumps(result.witness_length_functions[label])) for label in result.detected]
        show_table(action, ["class", "witness length function"], rows)
    else:
        emit_json(result.model_dump(by_alias=True))
    return EXIT_OK


def cmd_check(config: RunConfig) -> int:
    """Run the seeded random property suite; exit 2 on any failure."""
    report = run_property_suite(config.seed or 0, config.instances)
    if config.output_format == "table":
        rows = [(f.check, f.instance, f.detail) for f in report.failures]
        show_table(f"property suite, seed={report.seed}", ["check", "instance", "detail"], rows)
    else:
        emit_json(report.model_dump(by_alias=True))
    return EXIT_OK if report.ok else EXIT_VALIDATION


# ===== ENTRY POINT =====


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run the command and map failures onto exit codes."""
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level or get_settings().log_level)
    try:
        config = RunConfig(
            command=args.command,
            action=getattr(args, "action", None),
            input=getattr(args, "input", None),
            input2=getattr(args, "input2", None),
            output_format=args.output_format,
            n=getattr(args, "n", 1),
            max_len=getattr(args, "max_len", None),
            field=getattr(args, "field", None),
            seed=getattr(args, "seed", None),
            max_summands=getattr(args, "max_summands", 2),
            instances=getattr(args, "instances", 100),
        )
    except ValidationError as exc:
        show_failure(str(exc), title="Invalid arguments")
        return EXIT_VALIDATION

    try:
        if config.command == "measure":
            return cmd_measure(config)
        if config.command == "equiv":
            return cmd_equiv(config)
        if config.command == "quiver":
            return cmd_quiver(config, advisory=args.advisory)
        return cmd_check(config)
    except ParseFailure as exc:
        show_failure(str(exc), title="Input error")
        return EXIT_IO
    except InvalidLengthFunction as exc:
        emit_json(exc.report.model_dump(by_alias=True))
        show_failure(str(exc), title="Validation failed")
        return EXIT_VALIDATION
    except InputError as exc:
        show_failure(str(exc), title="Validation failed")
        return EXIT_VALIDATION
    except BudgetError as exc:
        show_failure(str(exc), title="Budget exceeded", border_style="yellow")
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
