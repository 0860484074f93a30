#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2025-02-10
# @Filename: test_cli.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import asyncio
import io
import json
import math
import os
import pathlib

import click
import numpy
import polars
import pytest
import pytest_mock
from click.testing import CliRunner

from clonebound.__main__ import clonebound, execute
from clonebound.bounds import (
    BoundResult,
    criteria,
    pure_state_bound,
    two_state_bound,
)
from clonebound.cli import (
    Command,
    OutputFormat,
    format_report,
    make_run_config,
    run,
)
from clonebound.exceptions import ParseError

from .conftest import qubit_scenario_data


def _execute_kwargs(**kwargs) -> dict:
    defaults = {
        "n_originals": None,
        "l_copies": None,
        "sweep": None,
        "tolerances": None,
        "output_path": None,
        "output_format": "json",
    }

    return {**defaults, **kwargs}


async def test_run_criteria():
    result = await run(make_run_config(command="criteria", f=0.8, N=1, L=2))

    assert result.exit_status == 0
    assert result.error is None
    assert result.report is not None

    row = result.report.row(0, named=True)
    expected = criteria(0.8, 1, 2)

    assert row["max_P"] == pytest.approx(expected.max_P)
    assert row["min_R"] == pytest.approx(expected.min_R)


async def test_run_bound():
    config = make_run_config(command="bound", f=0.8, phi=0.9, p_minus=0.3, N=1, L=3)
    result = await run(config)

    assert result.exit_status == 0
    assert result.report is not None

    row = result.report.row(0, named=True)

    assert row["bound"] == pytest.approx(pure_state_bound(0.8, 0.9, 0.3, 1, 3).value)
    assert not row["perfect_cloning_possible"]
    for column in ("bound_limit", "inconclusive_probability", "helstrom_success"):
        assert column in row


async def test_run_bound_scenario(scenario_file: pathlib.Path):
    result = await run(make_run_config(command="bound", input_path=scenario_file))

    assert result.exit_status == 0
    assert result.report is not None

    row = result.report.row(0, named=True)

    assert row["m"] == 3
    assert row["two_state_bound"] is None
    assert row["simplex_bound"] >= row["multi_state_bound"] - 1e-12


async def test_run_bound_pair_scenario(pair_scenario_file: pathlib.Path):
    result = await run(make_run_config(command="bound", input_path=pair_scenario_file))

    assert result.report is not None

    row = result.report.row(0, named=True)
    expected = pure_state_bound(0.8, 1.0, 0.5, 1, 2).value

    assert row["two_state_bound"] == pytest.approx(expected, abs=1e-10)
    assert row["multi_state_bound"] == pytest.approx(expected, abs=1e-10)


async def test_run_bound_non_finite_scenario(tmp_path: pathlib.Path):
    data = qubit_scenario_data([0.0, math.pi / 8], [0.5, 0.5])
    data["states"][0]["re"][0][0] = math.nan

    path = tmp_path / "nan.json"
    path.write_text(json.dumps(data))

    result = await run(make_run_config(command="bound", input_path=path))

    assert result.exit_status == 1
    assert result.report is None
    assert result.error is not None
    assert result.error["error"]["type"] == "ParseError"


async def test_run_simulate():
    config = make_run_config(command=Command.SIMULATE, alpha0=0.3, theta=0.1, N=1, L=3)
    result = await run(config)

    assert result.exit_status == 0
    assert result.report is not None

    row = result.report.row(0, named=True)

    assert row["n_gates"] == 4
    assert row["saturated"]
    assert row["achieved_R"] == pytest.approx(row["bound_R"], abs=1e-8)


async def test_run_table1():
    result = await run(make_run_config(command="table1", N=1, L=2, eps=1e-3))

    assert result.exit_status == 0
    assert result.report is not None
    assert result.report.height == 8


async def test_run_optimize_scenario(scenario_file: pathlib.Path):
    result = await run(make_run_config(command="optimize", input_path=scenario_file))

    assert result.report is not None

    row = result.report.row(0, named=True)

    assert row["m"] == 3
    assert row["simplex_bound"] == pytest.approx(2 * row["simplex_min"])
    assert row["simplex_min"] <= row["saturation_objective"] + 1e-12
    assert {"x_0", "x_1", "x_2", "multi_state_bound"} <= set(row)


async def test_run_optimize_program(tmp_path: pathlib.Path):
    program = tmp_path / "program.json"
    program.write_text(
        json.dumps({"m": 2, "pair_bounds": [[0, 1, 0.7]], "weights": [0.3, 0.7]})
    )

    result = await run(make_run_config(command="optimize", program_path=program))

    assert result.report is not None

    row = result.report.row(0, named=True)

    assert row["simplex_min"] == pytest.approx(0.3 * numpy.sin(0.7))
    assert row["x_0"] == pytest.approx(0.7)
    assert row["x_1"] == 0.0
    assert "multi_state_bound" not in row


async def test_run_sweep_order():
    config = make_run_config(command="criteria", N=1, L=2, sweep="f:0.1:0.9:9")
    result = await run(config)

    assert result.report is not None
    assert result.report["f"].to_list() == pytest.approx(
        list(numpy.linspace(0.1, 0.9, 9))
    )


async def test_run_sweep_p_minus():
    config = make_run_config(
        command="bound",
        f=0.8,
        N=1,
        L=2,
        sweep="p-minus:0.1:0.5:5",
    )
    result = await run(config)

    assert result.report is not None

    bounds = result.report["bound"].to_list()
    assert len(bounds) == 5
    assert all(aa < bb for aa, bb in zip(bounds[:-1], bounds[1:]))


@pytest.mark.parametrize(
    "kwargs, missing",
    [
        ({"command": "criteria", "f": 0.8, "N": 1}, "--L"),
        ({"command": "bound", "N": 1, "L": 2}, "--f"),
        ({"command": "simulate", "N": 1, "L": 2}, "--alpha0"),
        ({"command": "table1", "N": 1, "L": 2}, "--eps"),
    ],
)
async def test_run_missing_options(kwargs: dict, missing: str):
    result = await run(make_run_config(**kwargs))

    assert result.exit_status == 1
    assert result.report is None
    assert result.error is not None
    assert result.error["error"]["type"] == "ParseError"
    assert missing in result.error["error"]["message"]


async def test_run_optimize_no_input():
    result = await run(make_run_config(command="optimize"))

    assert result.exit_status == 1


@pytest.mark.parametrize(
    "command, params, error",
    [
        ("simulate", {"alpha0": 0.6, "theta": 0.7}, "PerfectCloningRegime"),
        ("simulate", {"N": 2, "alpha0": 0.3}, "BadCounts"),
        ("bound", {"f": 1.5}, "InvariantViolation"),
    ],
)
async def test_run_library_errors(command: str, params: dict, error: str):
    result = await run(make_run_config(command=command, **{"N": 1, "L": 2, **params}))

    assert result.exit_status == 2
    assert result.error is not None
    assert result.error["error"]["type"] == error
    assert result.error["exit_status"] == 2


@pytest.mark.parametrize(
    "kwargs",
    [
        {"command": "criteria", "sweep": "phi:0:1:3"},
        {"command": "table1", "sweep": "eps:0.1:0.2:3"},
        {"command": "bound", "sweep": "f:0.1:0.9"},
        {"command": "bound", "sweep": "f:0.1:0.9:1"},
        {"command": "bound", "tolerances": "unknown=1"},
        {"command": "bound", "tolerances": "angle=abc"},
        {"command": "unknown"},
        {"command": "bound", "input_path": "/does/not/exist.json"},
        {"command": "bound", "output_path": "/does/not/exist/report.json"},
    ],
)
def test_make_run_config_errors(kwargs: dict):
    with pytest.raises(ParseError):
        make_run_config(**kwargs)


def test_make_run_config_sweep_with_scenario(scenario_file: pathlib.Path):
    with pytest.raises(ParseError):
        make_run_config(command="bound", input_path=scenario_file, sweep="f:0:1:3")


def test_make_run_config_tolerances():
    config = make_run_config(command="bound", tolerances="saturation=0.5,angle=1e-6")
    assert config.tolerances == {"saturation": 0.5, "angle": 1e-6}

    config = make_run_config(command="bound", tolerances={"saturation": 0.5})
    assert config.tolerances == {"saturation": 0.5}


def _shift_bound(mocker: pytest_mock.MockerFixture, shift: float):
    mocker.patch(
        "clonebound.circuit.two_state_bound",
        side_effect=lambda sc: BoundResult(two_state_bound(sc).value + shift),
    )


async def test_run_simulate_not_saturated(mocker: pytest_mock.MockerFixture):
    _shift_bound(mocker, -1e-3)

    result = await run(make_run_config(command="simulate", N=1, L=2, alpha0=0.3))

    assert result.exit_status == 2
    assert result.report is None
    assert result.error is not None
    assert result.error["error"]["type"] == "InvariantViolation"


async def test_run_simulate_below_bound(mocker: pytest_mock.MockerFixture):
    _shift_bound(mocker, 1e-3)

    result = await run(make_run_config(command="simulate", N=1, L=2, alpha0=0.3))

    assert result.exit_status == 2
    assert result.error is not None
    assert "below the bound" in result.error["error"]["message"]


async def test_run_tolerances_are_per_run(mocker: pytest_mock.MockerFixture):
    _shift_bound(mocker, -1e-3)

    sweep = "alpha0:0.2:0.3:3"
    strict = make_run_config(command="simulate", N=1, L=2, sweep=sweep)
    loose = make_run_config(
        command="simulate",
        N=1,
        L=2,
        sweep=sweep,
        tolerances="saturation=0.01",
    )

    results = await asyncio.gather(run(strict), run(loose), run(strict))

    assert [result.exit_status for result in results] == [2, 0, 2]
    assert "CLONEBOUND_TOL" not in os.environ


async def test_format_report():
    config = make_run_config(command="criteria", N=1, L=3, sweep="f:0.2:0.8:4")
    result = await run(config)

    assert result.report is not None

    from_json = json.loads(format_report(result.report, OutputFormat.JSON))
    from_csv = polars.read_csv(io.StringIO(format_report(result.report, "csv")))

    assert len(from_json) == 4
    assert from_csv.columns == list(from_json[0])

    for json_row, csv_row in zip(from_json, from_csv.to_dicts()):
        for key, value in json_row.items():
            assert csv_row[key] == pytest.approx(value, rel=1e-12)


async def test_execute(capsys: pytest.CaptureFixture):
    with pytest.raises(click.exceptions.Exit) as exc_info:
        await execute("criteria", **_execute_kwargs(f=0.8, n_originals=1, l_copies=2))

    assert exc_info.value.exit_code == 0

    data = json.loads(capsys.readouterr().out)
    assert len(data) == 1
    assert data[0]["min_R"] == pytest.approx(criteria(0.8, 1, 2).min_R)


async def test_execute_output_file(tmp_path: pathlib.Path):
    output = tmp_path / "report.csv"

    kwargs = _execute_kwargs(
        f=0.8,
        n_originals=1,
        l_copies=2,
        output_path=output,
        output_format="csv",
    )
    with pytest.raises(click.exceptions.Exit):
        await execute("criteria", **kwargs)

    report = polars.read_csv(output)
    assert report.height == 1
    assert report["N"].to_list() == [1]


@pytest.mark.parametrize(
    "kwargs, exit_code",
    [
        ({"f": 0.8, "n_originals": 1}, 1),
        ({"f": 0.8, "n_originals": 1, "l_copies": 2, "sweep": "x:0:1:3"}, 1),
        ({"f": 0.8, "n_originals": 3, "l_copies": 2}, 2),
    ],
)
async def test_execute_errors(
    kwargs: dict,
    exit_code: int,
    capsys: pytest.CaptureFixture,
):
    with pytest.raises(click.exceptions.Exit) as exc_info:
        await execute("criteria", **_execute_kwargs(**kwargs))

    assert exc_info.value.exit_code == exit_code

    # The error report is the last JSON document written to stderr.
    stderr = capsys.readouterr().err
    error = json.loads(stderr[stderr.rindex('{\n  "error"'):])
    assert error["exit_status"] == exit_code


def test_cli_help():
    runner = CliRunner()

    result = runner.invoke(clonebound, ["--help"])
    assert result.exit_code == 0
    for command in ("bound", "criteria", "table1", "simulate", "optimize"):
        assert command in result.output

    result = runner.invoke(clonebound, ["bound", "--help"])
    assert result.exit_code == 0
    assert "--p-minus" in result.output
    assert "--sweep" in result.output
