#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# @Author: José Sánchez-Gallego (gallegoj@uw.edu)
# @Date: 2025-02-05
# @Filename: optimize.py
# @License: BSD 3-clause (http://www.opensource.org/licenses/BSD-3-Clause)

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import chain, combinations, islice

from typing import Iterable, Iterator, Mapping, Sequence

import numpy

from clonebound import log
from clonebound.exceptions import (
    AngleOutOfRange,
    BadProbabilities,
    InvariantViolation,
    TooManyStates,
)
from clonebound.models import ProgramModel
from clonebound.utils import Limits, Tolerances, get_limits, get_tolerances


__all__ = [
    "SimplexProgram",
    "lemma4_min",
    "simplex_min",
    "grid_oracle",
    "objective",
    "is_feasible",
    "pairwise_saturation_point",
    "program_from_json",
    "program_to_json",
]


HALF_PI = math.pi / 2

#: Number of active sets solved in a single batch.
BATCH_SIZE = 2**15


@dataclass(frozen=True)
class SimplexProgram:
    """Minimise :math:`\\sum_j w_j \\sin x_j` subject to :math:`x_j + x_k \\geq a_{jk}`
    and :math:`0 \\leq x_j \\leq \\pi/2`.

    Parameters
    ----------
    m
        Number of variables.
    pair_bounds
        Mapping of ``(j, k)`` to :math:`a_{jk}`, in radians. Missing pairs have
        :math:`a_{jk} = 0`. Keys are normalised to ``j < k``.
    weights
        The non-negative weights :math:`w_j`.

    """

    m: int
    pair_bounds: Mapping[tuple[int, int], float]
    weights: tuple[float, ...]
    tolerances: Tolerances = field(default_factory=get_tolerances, repr=False)

    def __post_init__(self):
        if self.m < 2:
            raise InvariantViolation("A program needs at least two variables.")

        tol = self.tolerances

        bounds: dict[tuple[int, int], float] = {}
        for (jj, kk), value in self.pair_bounds.items():
            if jj == kk or not (0 <= jj < self.m and 0 <= kk < self.m):
                raise InvariantViolation(f"Invalid pair ({jj}, {kk}).")

            if not (-tol.angle <= value <= HALF_PI + tol.angle):
                raise AngleOutOfRange(f"Pair bound {value!r} is not in [0, pi/2].")

            bounds[(min(jj, kk), max(jj, kk))] = min(max(float(value), 0.0), HALF_PI)

        weights = tuple(float(ww) for ww in self.weights)
        if len(weights) != self.m:
            raise InvariantViolation(f"Expected {self.m} weights, got {len(weights)}.")
        if any(ww < 0 for ww in weights):
            raise BadProbabilities("Weights cannot be negative.")

        object.__setattr__(self, "pair_bounds", bounds)
        object.__setattr__(self, "weights", weights)

    def bound(self, jj: int, kk: int) -> float:
        """Returns :math:`a_{jk}`."""

        return self.pair_bounds.get((min(jj, kk), max(jj, kk)), 0.0)

    def active_pairs(self) -> list[tuple[int, int, float]]:
        """Returns the pairs with a positive bound, sorted by index."""

        pairs = sorted(self.pair_bounds.items())

        return [(jj, kk, aa) for (jj, kk), aa in pairs if aa > 0]


def lemma4_min(
    p: float,
    q: float,
    a: float,
    tolerances: Tolerances | None = None,
) -> tuple[float, tuple[float, float]]:
    """Minimises :math:`p \\sin x + q \\sin y` over
    :math:`\\{x + y \\geq a,\\ 0 \\leq x, y \\leq \\pi/2\\}`.

    The minimum is reached when the variable with the lower weight takes the
    whole deviation ``a``. For ``p = q`` the point ``(0, a)`` is returned.

    Returns
    -------
    result
        A tuple with the minimum value and the point ``(x, y)``.

    Raises
    ------
    BadProbabilities
        If ``p`` or ``q`` are not positive or do not add up to one.
    AngleOutOfRange
        If ``a`` is not in :math:`[0, \\pi/2]`.

    """

    tol = tolerances or get_tolerances()

    if p <= 0 or q <= 0 or abs(p + q - 1) > tol.probability:
        raise BadProbabilities(f"Invalid weights p={p!r}, q={q!r}.")

    if not (-tol.angle <= a <= HALF_PI + tol.angle):
        raise AngleOutOfRange(f"a={a!r} is not in [0, pi/2].")

    a = min(max(a, 0.0), HALF_PI)
    value = min(p, q) * math.sin(a)

    if p < q:
        return value, (a, 0.0)

    return value, (0.0, a)


def objective(prog: SimplexProgram, point: Sequence[float]) -> float:
    """Evaluates :math:`\\sum_j w_j \\sin x_j`."""

    return float(numpy.dot(prog.weights, numpy.sin(numpy.asarray(point, dtype=float))))


def is_feasible(
    prog: SimplexProgram,
    point: Sequence[float],
    tolerance: float | None = None,
) -> bool:
    """Checks whether ``point`` satisfies the box and pair constraints."""

    if tolerance is None:
        tolerance = prog.tolerances.dedupe

    xx = numpy.asarray(point, dtype=float)
    if xx.shape != (prog.m,):
        return False

    if numpy.any(xx < -tolerance) or numpy.any(xx > HALF_PI + tolerance):
        return False

    return all(xx[jj] + xx[kk] >= aa - tolerance for jj, kk, aa in prog.active_pairs())


def _batched(iterable: Iterable[tuple[int, ...]], size: int) -> Iterator[numpy.ndarray]:
    """Yields arrays of at most ``BATCH_SIZE`` combinations of ``size`` indices."""

    iterator = iter(iterable)
    while True:
        chunk = numpy.fromiter(
            chain.from_iterable(islice(iterator, BATCH_SIZE)),
            dtype=numpy.intp,
        )
        if chunk.size == 0:
            return
        yield chunk.reshape(-1, size)


def _enumerate_vertices(prog: SimplexProgram, tol: Tolerances) -> numpy.ndarray:
    """Returns the candidate minimising vertices of the feasible polytope.

    A minimiser of a non-decreasing function cannot have a coordinate that can be
    lowered, so its active set is made of lower bounds ``x_j = 0`` (on a set of
    indices with no positive pair bound among them) and pair constraints touching
    the remaining coordinates. Upper bounds ``x_j = pi/2`` are never needed since
    they can only be active together with ``x_k = 0`` and ``a_jk = pi/2``. Each
    candidate active set is solved as a linear system and singular systems are
    skipped.

    """

    mm = prog.m
    pairs = prog.active_pairs()

    if len(pairs) == 0:
        return numpy.zeros((1, mm))

    pair_rows = numpy.zeros((len(pairs), mm))
    for ii, (jj, kk, _) in enumerate(pairs):
        pair_rows[ii, [jj, kk]] = 1.0
    pair_rhs = numpy.array([aa for _, _, aa in pairs])

    identity = numpy.eye(mm)
    vertices: list[numpy.ndarray] = []
    n_solved = 0

    for n_zero in range(mm - 1, -1, -1):
        n_pairs = mm - n_zero

        for zeros in combinations(range(mm), n_zero):
            zero_set = set(zeros)

            # Two coordinates at zero would violate a positive pair bound.
            if any(jj in zero_set and kk in zero_set for jj, kk, _ in pairs):
                continue

            candidates = [
                ii
                for ii, (jj, kk, _) in enumerate(pairs)
                if jj not in zero_set or kk not in zero_set
            ]
            if len(candidates) < n_pairs:
                continue

            for chunk in _batched(combinations(candidates, n_pairs), n_pairs):
                size = chunk.shape[0]

                matrices = numpy.empty((size, mm, mm))
                matrices[:, :n_zero, :] = identity[list(zeros)]
                matrices[:, n_zero:, :] = pair_rows[chunk]

                rhs = numpy.zeros((size, mm))
                rhs[:, n_zero:] = pair_rhs[chunk]

                # Rows have 0/1 entries so the determinant is an integer.
                regular = numpy.abs(numpy.linalg.det(matrices)) > 0.5
                if not regular.any():
                    continue

                solved = numpy.linalg.solve(matrices[regular], rhs[regular][..., None])
                vertices.append(solved[..., 0])
                n_solved += int(regular.sum())

    if len(vertices) == 0:
        return numpy.empty((0, mm))

    points = numpy.concatenate(vertices)

    feasible = numpy.all(points >= -tol.dedupe, axis=1)
    feasible &= numpy.all(points <= HALF_PI + tol.dedupe, axis=1)
    for jj, kk, aa in pairs:
        feasible &= points[:, jj] + points[:, kk] >= aa - tol.dedupe

    points = numpy.clip(points[feasible], 0.0, HALF_PI)

    _, unique = numpy.unique(
        numpy.round(points / tol.dedupe),
        axis=0,
        return_index=True,
    )
    points = points[numpy.sort(unique)]

    log.debug(f"Solved {n_solved} active sets, found {len(points)} vertices.")

    return points


def simplex_min(
    prog: SimplexProgram,
    limits: Limits | None = None,
) -> tuple[float, tuple[float, ...]]:
    """Minimises the sine-sum program by enumerating the vertices of its polytope.

    The objective is concave, so its minimum over the polytope is reached at a
    vertex. Ties are broken by returning the lexicographically smallest vertex.

    Returns
    -------
    result
        A tuple with the minimum value and the minimising vertex.

    Raises
    ------
    TooManyStates
        If ``prog.m`` is larger than the ``max_simplex_states`` limit.

    """

    max_states = (limits or get_limits()).max_simplex_states
    if prog.m > max_states:
        raise TooManyStates(f"Vertex enumeration is limited to {max_states} states.")

    tol = prog.tolerances

    points = _enumerate_vertices(prog, tol)
    if len(points) == 0:
        raise InvariantViolation("No feasible vertex found.")

    values = numpy.sin(points) @ numpy.asarray(prog.weights)
    best = float(values.min())

    ties = points[values <= best + tol.angle]
    order = numpy.lexsort(ties.T[::-1])
    argmin = ties[order[0]]

    return best, tuple(float(xx) for xx in argmin)


def grid_oracle(
    prog: SimplexProgram,
    step: float,
    limits: Limits | None = None,
) -> float:
    """Brute-force minimum of the program over a regular grid.

    The grid has spacing close to ``step`` on :math:`[0, \\pi/2]` for every
    coordinate. For each grid point of the first ``m - 1`` coordinates the last
    one takes the smallest feasible grid value, which is where the objective is
    minimal along that line. The result is the exact minimum over the feasible
    grid points.

    Raises
    ------
    TooManyStates
        If ``prog.m`` is larger than the ``max_grid_states`` limit.

    """

    max_states = (limits or get_limits()).max_grid_states
    if prog.m > max_states:
        raise TooManyStates(f"The grid oracle is limited to {max_states} states.")

    if step <= 0:
        raise InvariantViolation("The grid step must be positive.")

    mm = prog.m
    weights = numpy.asarray(prog.weights)

    grid = numpy.linspace(0.0, HALF_PI, math.ceil(HALF_PI / step) + 1)
    sines = numpy.sin(grid)

    last = mm - 1
    best = math.inf

    # The first coordinate is looped over to bound memory usage.
    for x0 in grid:
        if mm == 2:
            coords = [numpy.array([x0])]
        else:
            mesh = numpy.meshgrid(*([grid] * (mm - 2)), indexing="ij")
            coords = [numpy.full(mesh[0].size, x0)] + [xx.ravel() for xx in mesh]

        feasible = numpy.ones(coords[0].size, dtype=bool)
        required = numpy.zeros(coords[0].size)

        for jj, kk, aa in prog.active_pairs():
            if kk == last:
                required = numpy.maximum(required, aa - coords[jj])
            else:
                feasible &= coords[jj] + coords[kk] >= aa - 1e-12

        feasible &= required <= HALF_PI + 1e-12
        if not feasible.any():
            continue

        index = numpy.searchsorted(grid, required[feasible] - 1e-12, side="left")
        index = numpy.minimum(index, grid.size - 1)

        values = sines[index] * weights[last]
        for jj in range(last):
            values = values + weights[jj] * numpy.sin(coords[jj][feasible])

        best = min(best, float(values.min()))

    return best


def pairwise_saturation_point(prog: SimplexProgram) -> tuple[float, ...]:
    """Returns the feasible point obtained by saturating each pair independently.

    For every pair the lower-weight member takes the whole deviation
    :math:`a_{jk}` (the higher index on ties), as in the two-variable optimum, and
    each coordinate keeps the largest deviation assigned to it. The objective at
    this point is an upper bound of :obj:`.simplex_min`.

    """

    point = [0.0] * prog.m

    for jj, kk, aa in prog.active_pairs():
        target = jj if prog.weights[jj] < prog.weights[kk] else kk
        point[target] = max(point[target], aa)

    return tuple(point)


def program_from_json(
    data: ProgramModel | dict | str,
    tolerances: Tolerances | None = None,
) -> SimplexProgram:
    """Builds a :obj:`.SimplexProgram` from its JSON representation."""

    if isinstance(data, str):
        model = ProgramModel.model_validate_json(data)
    elif isinstance(data, ProgramModel):
        model = data
    else:
        model = ProgramModel.model_validate(data)

    return SimplexProgram(
        m=model.m,
        pair_bounds={(int(jj), int(kk)): float(aa) for jj, kk, aa in model.pair_bounds},
        weights=tuple(model.weights),
        tolerances=tolerances or get_tolerances(),
    )


def program_to_json(prog: SimplexProgram) -> dict:
    """Serialises a program as ``{"m": m, "pair_bounds": [[j, k, a]], "weights"}``."""

    return ProgramModel(
        m=prog.m,
        pair_bounds=[(jj, kk, aa) for (jj, kk), aa in sorted(prog.pair_bounds.items())],
        weights=list(prog.weights),
    ).model_dump()
