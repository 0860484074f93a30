#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2025-02-07
# @Filename: cli.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import asyncio
import json
import pathlib
from dataclasses import asdict, dataclass
from enum import auto

from typing import Any, Callable

import numpy
import polars
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator
from strenum import LowercaseStrEnum
from typing_extensions import Self

from clonebound import config as package_config
from clonebound import log
from clonebound.bounds import (
    CloningScenario,
    asymptotics_check,
    criteria,
    discrimination_limits,
    multi_state_bound,
    perfect_cloning_possible,
    pure_state_bound,
    simplex_bound,
    simplex_program,
    two_state_bound,
)
from clonebound.circuit import build_circuit, simulate_and_verify
from clonebound.exceptions import CloneBoundError, InvariantViolation, ParseError
from clonebound.models import ProgramModel, ScenarioModel, SweepModel, load_model
from clonebound.optimize import (
    SimplexProgram,
    objective,
    pairwise_saturation_point,
    program_from_json,
    simplex_min,
)
from clonebound.utils import (
    Tolerances,
    get_exception_data,
    get_limits,
    get_tolerances,
    parse_tolerance_overrides,
)


__all__ = [
    "Command",
    "OutputFormat",
    "RunConfig",
    "RunResult",
    "make_run_config",
    "run",
    "format_report",
]


class Command(LowercaseStrEnum):
    """Commands available in the command line interface."""

    BOUND = auto()
    CRITERIA = auto()
    TABLE1 = auto()
    SIMULATE = auto()
    OPTIMIZE = auto()


class OutputFormat(LowercaseStrEnum):
    JSON = auto()
    CSV = auto()


#: Parameters that can be swept for each command.
SWEEPABLE: dict[Command, set[str]] = {
    Command.BOUND: {"f", "phi", "p_minus"},
    Command.CRITERIA: {"f"},
    Command.TABLE1: set(),
    Command.SIMULATE: {"alpha0", "theta"},
    Command.OPTIMIZE: set(),
}

PARAMETERS = ("N", "L", "alpha0", "theta", "f", "phi", "p_minus", "eps")


class RunConfig(BaseModel):
    """Configuration for a single command line run."""

    model_config = ConfigDict(frozen=True)

    command: Command
    input_path: pathlib.Path | None = None
    program_path: pathlib.Path | None = None
    output_format: OutputFormat = OutputFormat.JSON
    output_path: pathlib.Path | None = None
    sweep: SweepModel | None = None
    tolerances: dict[str, float] = Field(default_factory=dict)

    N: int | None = None
    L: int | None = None
    alpha0: float | None = None
    theta: float | None = None
    f: float | None = None
    phi: float | None = None
    p_minus: float | None = None
    eps: float | None = None

    @model_validator(mode="after")
    def check_config(self) -> Self:
        for path in (self.input_path, self.program_path):
            if path is not None and not path.is_file():
                raise ValueError(f"File {path!s} does not exist.")

        if self.output_path is not None and not self.output_path.parent.is_dir():
            raise ValueError(f"Cannot write to {self.output_path!s}.")

        if self.sweep is not None:
            if self.sweep.name not in SWEEPABLE[self.command]:
                valid = ", ".join(sorted(SWEEPABLE[self.command])) or "none"
                raise ValueError(
                    f"Cannot sweep {self.sweep.name!r} for command "
                    f"{self.command!s}. Valid parameters: {valid}."
                )
            if self.input_path is not None:
                raise ValueError("Sweeps cannot be combined with a scenario file.")

        return self

    def parameters(self) -> dict[str, Any]:
        """Returns the numerical parameters of the run."""

        return {name: getattr(self, name) for name in PARAMETERS}


@dataclass
class RunResult:
    """The result of :obj:`.run`."""

    exit_status: int
    report: polars.DataFrame | None = None
    error: dict[str, Any] | None = None


def make_run_config(**kwargs) -> RunConfig:
    """Builds a :obj:`.RunConfig`, raising :obj:`.ParseError` if it is invalid."""

    sweep = kwargs.pop("sweep", None)
    tolerances = kwargs.pop("tolerances", None)

    try:
        if isinstance(sweep, str):
            sweep = SweepModel.from_string(sweep)

        if isinstance(tolerances, str):
            tolerances = parse_tolerance_overrides(tolerances)
        else:
            tolerances = parse_tolerance_overrides(
                ",".join(f"{key}={value}" for key, value in (tolerances or {}).items())
            )

        return RunConfig(sweep=sweep, tolerances=tolerances, **kwargs)
    except ValidationError as err:
        raise ParseError(f"Invalid run configuration: {err}")
    except CloneBoundError as err:
        raise ParseError(str(err))


def _require(params: dict[str, Any], *names: str) -> list[Any]:
    missing = [name for name in names if params.get(name) is None]
    if len(missing) > 0:
        options = ", ".join("--" + name.replace("_", "-") for name in missing)
        raise ParseError(f"Missing required options: {options}.")

    return [params[name] for name in names]


def _get(params: dict[str, Any], name: str, default: float) -> float:
    value = params.get(name)
    return default if value is None else value


def _load_scenario(path: pathlib.Path, tolerances: Tolerances) -> CloningScenario:
    return CloningScenario.from_model(load_model(ScenarioModel, path), tolerances)


def _scenario_bound_row(sc: CloningScenario) -> dict[str, Any]:
    pairs = perfect_cloning_possible(sc)
    row: dict[str, Any] = {
        "m": sc.m,
        "N": sc.N,
        "L": sc.L,
        "two_state_bound": two_state_bound(sc).value if sc.m == 2 else None,
        "multi_state_bound": multi_state_bound(sc),
        "simplex_bound": None,
        "perfect_cloning_possible": any(pairs.values()),
    }

    if sc.m <= get_limits().max_simplex_states:
        row["simplex_bound"] = simplex_bound(sc)

    return row


def _bound_rows(
    config: RunConfig,
    params: dict[str, Any],
    tolerances: Tolerances,
) -> list[dict[str, Any]]:
    if config.input_path is not None:
        return [_scenario_bound_row(_load_scenario(config.input_path, tolerances))]

    f, N, L = _require(params, "f", "N", "L")
    phi = _get(params, "phi", 1.0)
    p_minus = _get(params, "p_minus", 0.5)

    result = pure_state_bound(f, phi, p_minus, N, L)
    limits = discrimination_limits(f, phi, N, p_minus)

    return [
        {
            "f": f,
            "phi": phi,
            "p_minus": p_minus,
            "N": N,
            "L": L,
            "bound": result.value,
            "perfect_cloning_possible": result.perfect_cloning_possible,
            **asdict(limits),
        }
    ]


def _criteria_rows(
    config: RunConfig,
    params: dict[str, Any],
    tolerances: Tolerances,
) -> list[dict[str, Any]]:
    f, N, L = _require(params, "f", "N", "L")

    return [asdict(criteria(f, N, L))]


def _simulate_rows(
    config: RunConfig,
    params: dict[str, Any],
    tolerances: Tolerances,
) -> list[dict[str, Any]]:
    N, L, alpha0 = _require(params, "N", "L", "alpha0")
    theta = _get(params, "theta", 0.0)
    p_minus = _get(params, "p_minus", 0.5)

    plan = build_circuit(N, L, alpha0, theta, tolerances=tolerances)
    report = simulate_and_verify(plan, p_minus=p_minus, tolerances=tolerances)

    if not report.saturated:
        raise InvariantViolation(
            f"Circuit relative error {report.achieved_R!r} does not saturate "
            f"the bound {report.bound_R!r}."
        )

    return [
        {
            "N": N,
            "L": L,
            "alpha0": plan.alpha0,
            "theta": plan.theta,
            "n_gates": len(plan.gates),
            **report.to_dict(),
        }
    ]


def _optimize_rows(
    config: RunConfig,
    params: dict[str, Any],
    tolerances: Tolerances,
) -> list[dict[str, Any]]:
    row: dict[str, Any] = {}

    prog: SimplexProgram
    if config.program_path is not None:
        prog = program_from_json(
            load_model(ProgramModel, config.program_path),
            tolerances,
        )
    elif config.input_path is not None:
        scenario = _load_scenario(config.input_path, tolerances)
        prog = simplex_program(scenario)
        row["multi_state_bound"] = multi_state_bound(scenario)
    else:
        raise ParseError("optimize requires --scenario or --program.")

    value, argmin = simplex_min(prog)
    saturation = objective(prog, pairwise_saturation_point(prog))

    row = {
        "m": prog.m,
        "simplex_min": value,
        "simplex_bound": 2 * value,
        "saturation_objective": saturation,
        **row,
        **{f"x_{ii}": xx for ii, xx in enumerate(argmin)},
    }

    return [row]


Evaluator = Callable[[RunConfig, dict[str, Any], Tolerances], list[dict[str, Any]]]

EVALUATORS: dict[Command, Evaluator] = {
    Command.BOUND: _bound_rows,
    Command.CRITERIA: _criteria_rows,
    Command.SIMULATE: _simulate_rows,
    Command.OPTIMIZE: _optimize_rows,
}


async def _sweep(config: RunConfig, tolerances: Tolerances) -> list[dict[str, Any]]:
    """Evaluates the command over the sweep values, preserving their order."""

    evaluator = EVALUATORS[config.command]
    params = config.parameters()

    if config.sweep is None:
        return evaluator(config, params, tolerances)

    sweep = config.sweep
    values = numpy.linspace(sweep.start, sweep.stop, sweep.steps)

    max_workers = int((package_config.get("sweep", None) or {}).get("max_workers", 4))
    semaphore = asyncio.Semaphore(max(max_workers, 1))

    async def evaluate(value: float):
        async with semaphore:
            return await asyncio.to_thread(
                evaluator,
                config,
                {**params, sweep.name: float(value)},
                tolerances,
            )

    log.debug(f"Sweeping {sweep.name} over {sweep.steps} values.")
    results = await asyncio.gather(*[evaluate(value) for value in values])

    return [row for rows in results for row in rows]


async def run(config: RunConfig) -> RunResult:
    """Runs a command and returns its exit status and report.

    Errors raised by the library are not propagated. Instead, the result carries
    the exit status associated with the error and a dictionary describing it.

    """

    try:
        tolerances = get_tolerances(config.tolerances)

        if config.command == Command.TABLE1:
            N, L, eps = _require(config.parameters(), "N", "L", "eps")
            report = asymptotics_check(N, L, eps)
        else:
            report = polars.DataFrame(await _sweep(config, tolerances))
    except CloneBoundError as err:
        log.error(f"{err.__class__.__name__}: {err}")
        return RunResult(
            exit_status=err.exit_status,
            error={"error": get_exception_data(err), "exit_status": err.exit_status},
        )

    return RunResult(exit_status=0, report=report)


def format_report(report: polars.DataFrame, output_format: OutputFormat | str) -> str:
    """Serialises a report as JSON or CSV."""

    if OutputFormat(output_format) == OutputFormat.CSV:
        return report.write_csv()

    return json.dumps(report.to_dicts(), indent=2)
