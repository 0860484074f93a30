#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2025-02-10
# @Filename: test_utils.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import pathlib

import pytest
import pytest_mock

import clonebound.utils
from clonebound.exceptions import (
    AlphaOutOfRange,
    CloneBoundError,
    ErrorCodes,
    InvariantViolation,
    ParseError,
    PerfectCloningRegime,
)
from clonebound.models import ScenarioModel, SweepModel, load_model
from clonebound.utils import (
    Limits,
    Tolerances,
    get_exception_data,
    get_limits,
    get_tolerances,
    parse_tolerance_overrides,
)


def test_get_tolerances_from_config():
    tolerances = get_tolerances()

    assert isinstance(tolerances, Tolerances)
    assert tolerances.angle == 1e-12
    assert tolerances.saturation == 1e-8


def test_get_tolerances_env(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setenv("CLONEBOUND_TOL", "angle=1e-9, dedupe=1e-7")

    tolerances = get_tolerances()
    assert tolerances.angle == 1e-9
    assert tolerances.dedupe == 1e-7

    assert get_tolerances({"angle": 1e-3}).angle == 1e-3


def test_get_tolerances_ignores_unknown_config(mocker: pytest_mock.MockerFixture):
    mocker.patch.object(
        clonebound.utils,
        "config",
        {"tolerances": {"angle": 1e-5, "not_a_tolerance": 1}},
    )

    tolerances = get_tolerances()

    assert tolerances.angle == 1e-5
    assert tolerances.trace == Tolerances().trace


def test_get_limits():
    limits = get_limits()

    assert isinstance(limits, Limits)
    assert limits.max_dimension == 4096
    assert limits.max_register_qubits == 16


@pytest.mark.parametrize(
    "value, result",
    [
        (None, {}),
        ("", {}),
        ("angle=1e-6", {"angle": 1e-6}),
        ("angle=1e-6,,trace=0.1", {"angle": 1e-6, "trace": 0.1}),
    ],
)
def test_parse_tolerance_overrides(value: str | None, result: dict):
    assert parse_tolerance_overrides(value) == result


@pytest.mark.parametrize("value", ["angle", "foo=1", "angle=x", "angle=-1"])
def test_parse_tolerance_overrides_errors(value: str):
    with pytest.raises(InvariantViolation):
        parse_tolerance_overrides(value)


def test_get_exception_data():
    try:
        raise AlphaOutOfRange("alpha is too large")
    except AlphaOutOfRange as err:
        data = get_exception_data(err)

    assert data is not None
    assert data["type"] == "AlphaOutOfRange"
    assert data["module"] == "clonebound.exceptions"
    assert data["message"] == "alpha is too large"
    assert pathlib.Path(data["filename"]).name == "test_utils.py"
    assert isinstance(data["lineno"], int)


def test_get_exception_data_none():
    assert get_exception_data(None) is None


@pytest.mark.parametrize(
    "error, code, exit_status",
    [
        (ParseError, 200, 1),
        (PerfectCloningRegime, 150, 2),
        (InvariantViolation, 201, 2),
        (CloneBoundError, 9999, 2),
    ],
)
def test_error_codes(error: type[CloneBoundError], code: int, exit_status: int):
    exception = error()

    assert exception.error_code.value.code == code
    assert exception.exit_status == exit_status
    assert exception.message == exception.error_code.value.description


def test_error_code_override():
    exception = CloneBoundError("custom", error_code=200)

    assert exception.error_code == ErrorCodes.PARSE_ERROR
    assert exception.exit_status == 1
    assert str(exception) == "custom"


def test_error_code_unknown():
    with pytest.raises(ValueError):
        ErrorCodes.get_error_code(12345)


def test_sweep_from_string():
    sweep = SweepModel.from_string("p-minus:0.1:0.5:5")

    assert sweep.name == "p_minus"
    assert (sweep.start, sweep.stop, sweep.steps) == (0.1, 0.5, 5)


@pytest.mark.parametrize("value", ["f:0:1", "f:a:1:3", "f:0:1:1.5", "f:0:1:1"])
def test_sweep_from_string_errors(value: str):
    with pytest.raises(ParseError):
        SweepModel.from_string(value)


def test_load_model_errors(tmp_path: pathlib.Path):
    with pytest.raises(ParseError):
        load_model(ScenarioModel, tmp_path / "missing.json")

    bad = tmp_path / "bad.json"
    bad.write_text('{"states": [], "priors": [], "N": 0, "L": 2}')

    with pytest.raises(ParseError):
        load_model(ScenarioModel, bad)


def test_load_model_non_finite(tmp_path: pathlib.Path):
    path = tmp_path / "nan.json"
    path.write_text(
        '{"states": [{"dim": 1, "re": [[NaN]]}, {"dim": 1, "re": [[1.0]]}], '
        '"priors": [0.5, 0.5], "N": 1, "L": 2}'
    )

    with pytest.raises(ParseError):
        load_model(ScenarioModel, path)
