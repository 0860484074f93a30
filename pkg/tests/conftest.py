#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2025-02-08
# @Filename: conftest.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import json
import math
import pathlib

import pytest

from clonebound import set_config
from clonebound.qstate import matrix_to_json, real_qubit_state


@pytest.fixture(scope="session", autouse=True)
def monkeypatch_config():
    test_config_path = pathlib.Path(__file__).parent / "data" / "test_config.yaml"
    set_config(test_config_path)


@pytest.fixture(autouse=True)
def clear_tolerance_env(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.delenv("CLONEBOUND_TOL", raising=False)


def qubit_scenario_data(
    angles: list[float],
    priors: list[float],
    N: int = 1,
    L: int = 2,
) -> dict:
    """Scenario JSON for real qubit states ``cos t |0> + sin t |1>``."""

    states = []
    for angle in angles:
        vector = [math.cos(angle), math.sin(angle)]
        matrix = [[aa * bb for bb in vector] for aa in vector]
        states.append(matrix_to_json(matrix))

    return {"states": states, "priors": priors, "ancillas": None, "N": N, "L": L}


@pytest.fixture()
def scenario_file(tmp_path: pathlib.Path):
    path = tmp_path / "scenario.json"
    path.write_text(
        json.dumps(qubit_scenario_data([0.0, math.pi / 8, math.pi / 4], [1 / 3] * 3))
    )

    return path


@pytest.fixture()
def pair_scenario_file(tmp_path: pathlib.Path):
    alpha0 = math.acos(0.8) / 2

    states = [
        matrix_to_json(real_qubit_state(alpha0, sign).to_density().matrix)
        for sign in "+-"
    ]
    data = {"states": states, "priors": [0.5, 0.5], "ancillas": None, "N": 1, "L": 2}

    path = tmp_path / "pair.json"
    path.write_text(json.dumps(data))

    return path
