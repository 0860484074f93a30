#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2025-02-09
# @Filename: test_optimize.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import json
import math

import numpy
import pytest

from clonebound.exceptions import (
    AngleOutOfRange,
    BadProbabilities,
    InvariantViolation,
    TooManyStates,
)
from clonebound.optimize import (
    SimplexProgram,
    grid_oracle,
    is_feasible,
    lemma4_min,
    objective,
    pairwise_saturation_point,
    program_from_json,
    program_to_json,
    simplex_min,
)


HALF_PI = math.pi / 2


def _random_program(rng: numpy.random.Generator, m: int) -> SimplexProgram:
    weights = rng.uniform(0.05, 1.0, m)
    weights /= weights.sum()

    pair_bounds = {
        (jj, kk): float(rng.uniform(0, HALF_PI))
        for jj in range(m)
        for kk in range(jj + 1, m)
    }

    return SimplexProgram(m=m, pair_bounds=pair_bounds, weights=tuple(weights))


@pytest.mark.parametrize(
    "p, a, value, point",
    [
        (0.5, HALF_PI, 0.5, (0.0, HALF_PI)),
        (0.5, 0.0, 0.0, (0.0, 0.0)),
        (0.3, math.pi / 3, 0.25981, (math.pi / 3, 0.0)),
        (0.8, 0.4, 0.2 * math.sin(0.4), (0.0, 0.4)),
    ],
)
def test_lemma4_min(p: float, a: float, value: float, point: tuple[float, float]):
    result, argmin = lemma4_min(p, 1 - p, a)

    assert result == pytest.approx(value, abs=1e-5)
    assert argmin == pytest.approx(point)


@pytest.mark.parametrize(
    "p, q, a, error",
    [
        (0.0, 1.0, 0.5, BadProbabilities),
        (0.3, 0.6, 0.5, BadProbabilities),
        (0.5, 0.5, 2.0, AngleOutOfRange),
        (0.5, 0.5, -0.1, AngleOutOfRange),
    ],
)
def test_lemma4_min_errors(p: float, q: float, a: float, error: type[Exception]):
    with pytest.raises(error):
        lemma4_min(p, q, a)


def test_lemma4_min_grid():
    rng = numpy.random.default_rng(4)

    for _ in range(100):
        p = float(rng.uniform(0.01, 0.99))
        a = float(rng.uniform(0, HALF_PI))

        value, _ = lemma4_min(p, 1 - p, a)

        prog = SimplexProgram(m=2, pair_bounds={(0, 1): a}, weights=(p, 1 - p))
        assert grid_oracle(prog, 1e-3) == pytest.approx(value, abs=2e-3)

        # The extreme of the objective along x + y = a is never below the minimum.
        segment = math.sqrt(p**2 - 2 * p * (1 - p) * math.cos(a) + (1 - p) ** 2)
        assert segment >= value - 1e-12
        assert segment >= max(p, 1 - p) * math.sin(a) - 1e-12


def test_simplex_min_no_constraints():
    prog = SimplexProgram(m=3, pair_bounds={(0, 1): 0.0}, weights=(0.2, 0.3, 0.5))

    value, point = simplex_min(prog)

    assert value == 0.0
    assert point == (0.0, 0.0, 0.0)


@pytest.mark.parametrize(
    "p, a",
    [(0.5, 0.7), (0.3, math.pi / 3), (0.9, 0.2), (0.5, HALF_PI)],
)
def test_simplex_min_two_states(p: float, a: float):
    prog = SimplexProgram(m=2, pair_bounds={(0, 1): a}, weights=(p, 1 - p))

    value, point = simplex_min(prog)
    expected, expected_point = lemma4_min(p, 1 - p, a)

    assert value == pytest.approx(expected, abs=1e-12)
    assert point == pytest.approx(expected_point, abs=1e-12)


def test_simplex_min_three_states():
    prog = SimplexProgram(
        m=3,
        pair_bounds={(0, 1): 0.5, (0, 2): 0.7, (1, 2): 0.9},
        weights=(0.2, 0.3, 0.5),
    )

    value, point = simplex_min(prog)

    assert is_feasible(prog, point)
    assert objective(prog, point) == pytest.approx(value, abs=1e-12)

    grid = grid_oracle(prog, 2e-3)
    assert grid >= value - 1e-12
    assert grid == pytest.approx(value, abs=5e-3)


def test_simplex_min_corner():
    prog = SimplexProgram(
        m=3,
        pair_bounds={(0, 1): HALF_PI, (0, 2): HALF_PI, (1, 2): HALF_PI},
        weights=(0.2, 0.3, 0.5),
    )

    value, point = simplex_min(prog)

    assert value == pytest.approx(0.5, abs=1e-12)
    assert point == pytest.approx((HALF_PI, HALF_PI, 0.0), abs=1e-12)
    assert is_feasible(prog, point)


@pytest.mark.parametrize("seed", range(50))
def test_simplex_min_random(seed: int):
    prog = _random_program(numpy.random.default_rng(seed), 3)

    value, point = simplex_min(prog)

    assert is_feasible(prog, point)
    assert value <= objective(prog, pairwise_saturation_point(prog)) + 1e-12

    grid = grid_oracle(prog, 1e-3)
    assert grid >= value - 1e-12
    assert grid == pytest.approx(value, abs=5e-3)


def test_pairwise_saturation_point():
    prog = SimplexProgram(
        m=3,
        pair_bounds={(0, 1): 0.5, (1, 2): 0.9},
        weights=(0.2, 0.3, 0.5),
    )

    point = pairwise_saturation_point(prog)

    assert point == (0.5, 0.9, 0.0)
    assert is_feasible(prog, point)


def test_is_feasible():
    prog = SimplexProgram(m=2, pair_bounds={(0, 1): 0.5}, weights=(0.5, 0.5))

    assert is_feasible(prog, (0.2, 0.3))
    assert not is_feasible(prog, (0.2, 0.2))
    assert not is_feasible(prog, (-0.1, 0.6))
    assert not is_feasible(prog, (0.5,))


def test_simplex_min_too_many_states():
    prog = SimplexProgram(m=9, pair_bounds={(0, 1): 0.5}, weights=(1 / 9,) * 9)

    with pytest.raises(TooManyStates):
        simplex_min(prog)


def test_grid_oracle_too_many_states():
    prog = SimplexProgram(m=5, pair_bounds={(0, 1): 0.5}, weights=(0.2,) * 5)

    with pytest.raises(TooManyStates):
        grid_oracle(prog, 0.1)


def test_grid_oracle_bad_step():
    prog = SimplexProgram(m=2, pair_bounds={(0, 1): 0.5}, weights=(0.5, 0.5))

    with pytest.raises(InvariantViolation):
        grid_oracle(prog, 0.0)


@pytest.mark.parametrize(
    "m, pair_bounds, weights, error",
    [
        (1, {}, (1.0,), InvariantViolation),
        (2, {(0, 0): 0.5}, (0.5, 0.5), InvariantViolation),
        (2, {(0, 2): 0.5}, (0.5, 0.5), InvariantViolation),
        (2, {(0, 1): 2.0}, (0.5, 0.5), AngleOutOfRange),
        (2, {(0, 1): 0.5}, (1.0,), InvariantViolation),
        (2, {(0, 1): 0.5}, (1.5, -0.5), BadProbabilities),
    ],
)
def test_simplex_program_errors(
    m: int,
    pair_bounds: dict,
    weights: tuple,
    error: type[Exception],
):
    with pytest.raises(error):
        SimplexProgram(m=m, pair_bounds=pair_bounds, weights=weights)


def test_simplex_program_normalises_pairs():
    prog = SimplexProgram(m=3, pair_bounds={(2, 0): 0.4}, weights=(0.2, 0.3, 0.5))

    assert prog.pair_bounds == {(0, 2): 0.4}
    assert prog.bound(2, 0) == 0.4
    assert prog.bound(0, 1) == 0.0


def test_program_json():
    data = {
        "m": 3,
        "pair_bounds": [[0, 1, 0.5], [1, 2, 0.9]],
        "weights": [0.2, 0.3, 0.5],
    }

    prog = program_from_json(json.dumps(data))

    assert prog.m == 3
    assert prog.bound(1, 2) == 0.9

    dumped = program_to_json(prog)
    assert dumped["pair_bounds"] == [(0, 1, 0.5), (1, 2, 0.9)]
    assert program_from_json(dumped) == prog
